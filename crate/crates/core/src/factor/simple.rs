//! Small swaps, conjugacy of equal-type swaps, and the normal-closure chain
//! for nontrivial elements of the commutator group.

use crate::exact::{rat, SurdReal};
use crate::iet::{Iet, Interval, SwapSpec};
use crate::saf::saf;

use super::elementary::{
    conjugator_for_disjoint_swaps, small_swap_from_nontrivial, small_swap_product,
    swap_as_commutator, DisjointConjugator, SmallSwap, SwapCommutator,
};
use super::{FactorError, Factorization};

/// Smallest `n ≥ 1` with `a / n < eps`.
fn pieces_needed(a: &SurdReal, eps: &SurdReal) -> i64 {
    let guess = (a.to_f64() / eps.to_f64()).floor().max(0.0) as i64 + 1;
    let mut n = guess.max(1);
    while n > 1 && &a.scale(&rat(1, n - 1)) < eps {
        n -= 1;
    }
    while &a.scale(&rat(1, n)) >= eps {
        n += 1;
    }
    n
}

/// Splits a swap of type `a` into `n` swaps of type `a/n < eps` exchanging
/// matching pieces of the two blocks.
pub fn refine_swap(
    s: &SwapSpec,
    eps: &SurdReal,
    base: &Interval,
) -> Result<Factorization, FactorError> {
    if !eps.is_positive() {
        return Err(FactorError::NonPositiveEps);
    }
    let target = s.to_iet(base)?;
    let n = pieces_needed(&s.a, eps);
    let step = s.a.scale(&rat(1, n));
    let swaps = (0..n)
        .map(|i| {
            let off = step.scale_int(i);
            SwapSpec::new(step.clone(), &s.x + &off, &s.y + &off)
        })
        .collect();
    Ok(Factorization::from_swaps(base, swaps, target))
}

/// `s1 = g⁻¹ ∘ s2 ∘ g` with `g = g2 ∘ g1`, where `g1` carries `s1` to the
/// middle swap and `g2` carries the middle swap to `s2`. Both `g1` and `g2`
/// are products of two swaps, so `g` lies in the commutator group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugationCertificate {
    pub s1: SwapSpec,
    pub s2: SwapSpec,
    pub middle: SwapSpec,
    /// `middle = g1 ∘ s1 ∘ g1`.
    pub g1: DisjointConjugator,
    /// `s2 = g2 ∘ middle ∘ g2`.
    pub g2: DisjointConjugator,
    pub g: Iet,
}

impl ConjugationCertificate {
    pub fn verify(&self, base: &Interval) -> bool {
        let check = || -> Result<bool, FactorError> {
            let s1 = self.s1.to_iet(base)?;
            let s2 = self.s2.to_iet(base)?;
            let mid = self.middle.to_iet(base)?;
            let (g1, g2) = (&self.g1.g, &self.g2.g);
            let id = Iet::identity(base);
            let halves = [&self.g1.swaps, &self.g2.swaps]
                .into_iter()
                .zip([g1, g2])
                .map(|(sw, g)| Ok(&sw[0].to_iet(base)?.compose(&sw[1].to_iet(base)?)? == g))
                .collect::<Result<Vec<bool>, FactorError>>()?;
            Ok(halves.iter().all(|&b| b)
                && g1.compose(g1)? == id
                && g2.compose(g2)? == id
                && g1.compose(&s1)?.compose(g1)? == mid
                && g2.compose(&mid)?.compose(g2)? == s2
                && g2.compose(g1)? == self.g
                && self.g.inverse().compose(&s2)?.compose(&self.g)? == s1
                && saf(&self.g).is_zero())
        };
        check().unwrap_or(false)
    }
}

pub fn conjugate_same_type_small(
    s1: &SwapSpec,
    s2: &SwapSpec,
    base: &Interval,
) -> Result<ConjugationCertificate, FactorError> {
    if s1.a != s2.a {
        return Err(FactorError::TypeMismatch);
    }
    s1.to_iet(base)?;
    s2.to_iet(base)?;
    let a = &s1.a;
    let tenth = base.width().scale(&rat(1, 10));
    if a >= &tenth {
        return Err(FactorError::TypeTooLarge);
    }
    let (i1, j1) = s1.blocks()?;
    let (i2, j2) = s2.blocks()?;
    let avoid = [i1, j1, i2, j2];
    let free: Vec<Interval> = (0..10)
        .map(|p| {
            Interval::with_len(base.lo() + &tenth.scale_int(p), &tenth).expect("positive width")
        })
        .filter(|piece| avoid.iter().all(|b| !piece.overlaps(b)))
        .take(2)
        .collect();
    let [p1, p2] = free.as_slice() else {
        unreachable!("four short blocks meet at most eight tenths");
    };
    let middle = SwapSpec::new(a.clone(), p1.lo().clone(), p2.lo().clone());
    let g1 = conjugator_for_disjoint_swaps(s1, &middle, base)?;
    let g2 = conjugator_for_disjoint_swaps(&middle, s2, base)?;
    let g = g2.g.compose(&g1.g)?;
    Ok(ConjugationCertificate {
        s1: s1.clone(),
        s2: s2.clone(),
        middle,
        g1,
        g2,
        g,
    })
}

/// A swap of type `eps` written as a product of two conjugates of `f^±1`:
/// `swap = (g2⁻¹ ∘ f⁻¹ ∘ g2) ∘ (c⁻¹ ∘ f ∘ c)` with `c = g1 ∘ g2`. The swaps
/// `g1` and `g2` come with commutator certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallSwapDerivation {
    pub small: SmallSwap,
    pub g1_commutator: SwapCommutator,
    pub g2_commutator: SwapCommutator,
}

impl SmallSwapDerivation {
    pub fn new(f: &Iet, eps: &SurdReal) -> Result<Self, FactorError> {
        let small = small_swap_from_nontrivial(f, eps)?;
        let g1_commutator = swap_as_commutator(&small.g1, f.base())?;
        let g2_commutator = swap_as_commutator(&small.g2, f.base())?;
        Ok(SmallSwapDerivation {
            small,
            g1_commutator,
            g2_commutator,
        })
    }

    pub fn swap(&self) -> &SwapSpec {
        &self.small.swap
    }

    pub fn verify(&self, f: &Iet) -> bool {
        let base = f.base();
        let check = || -> Result<bool, FactorError> {
            let g1 = self.small.g1.to_iet(base)?;
            let g2 = self.small.g2.to_iet(base)?;
            let target = self.small.swap.to_iet(base)?;
            let c = g1.compose(&g2)?;
            let left = f.inverse().conjugate_by(&g2)?;
            let right = f.conjugate_by(&c)?;
            let commutes = [(&self.g1_commutator, &g1), (&self.g2_commutator, &g2)]
                .into_iter()
                .map(|(cert, g)| {
                    let (u, v) = (&cert.u, &cert.v);
                    let comm = u.inverse().compose(&v.inverse())?.compose(u)?.compose(v)?;
                    Ok(&comm == g)
                })
                .collect::<Result<Vec<bool>, FactorError>>()?;
            Ok(commutes.iter().all(|&b| b)
                && left.compose(&right)? == target
                && small_swap_product(f, &self.small.g1, &self.small.g2)? == target)
        };
        check().unwrap_or(false)
    }
}

/// Evidence that the normal closure of `f` in the commutator group contains
/// every swap, hence the whole group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityWitness {
    pub f: Iet,
    pub eps: SurdReal,
    /// Swap of type `eps` built from conjugates of `f^±1`.
    pub derivation: SmallSwapDerivation,
    /// A sample swap of type `eps` conjugate to the derived one.
    pub sample: ConjugationCertificate,
    /// A wide probe swap split into swaps of type `delta < eps`.
    pub probe: Factorization,
    pub delta: SurdReal,
    pub probe_derivation: SmallSwapDerivation,
    /// One conjugation per piece of `probe`, from the derived swap of type
    /// `delta`.
    pub probe_conjugations: Vec<ConjugationCertificate>,
}

impl SimplicityWitness {
    pub fn verify(&self) -> bool {
        let base = self.f.base();
        let d = &self.derivation;
        let pd = &self.probe_derivation;
        !self.f.is_identity()
            && saf(&self.f).is_zero()
            && d.swap().a == self.eps
            && d.verify(&self.f)
            && self.sample.s2 == *d.swap()
            && self.sample.verify(base)
            && self.probe.verify()
            && pd.swap().a == self.delta
            && pd.verify(&self.f)
            && self.probe.len() == self.probe_conjugations.len()
            && self
                .probe
                .swaps()
                .zip(&self.probe_conjugations)
                .all(|(piece, c)| c.s1 == *piece && c.s2 == *pd.swap() && c.verify(base))
    }
}

pub fn simplicity_witness(f: &Iet, eps: &SurdReal) -> Result<SimplicityWitness, FactorError> {
    if f.is_identity() {
        return Err(FactorError::IdentityInput);
    }
    let invariant = saf(f);
    if !invariant.is_zero() {
        return Err(FactorError::NonzeroSaf(invariant));
    }
    if !eps.is_positive() {
        return Err(FactorError::NonPositiveEps);
    }
    let base = f.base();
    let w = base.width();
    let eps1 = super::elementary::small_swap_bound(f)?;
    let tenth = w.scale(&rat(1, 10));
    let bound = if eps1 < tenth { eps1 } else { tenth };
    if eps >= &bound {
        return Err(FactorError::EpsTooLarge { eps0: bound });
    }
    let derivation = SmallSwapDerivation::new(f, eps)?;
    let sample_swap = SwapSpec::new(eps.clone(), base.lo().clone(), base.hi() - eps);
    let sample = conjugate_same_type_small(&sample_swap, derivation.swap(), base)?;

    let quarter = w.scale(&rat(1, 4));
    let probe_swap = SwapSpec::new(quarter.clone(), base.lo().clone(), base.lo() + &w.half());
    let probe = refine_swap(&probe_swap, eps, base)?;
    let delta = probe.swaps().next().expect("at least one piece").a.clone();
    let probe_derivation = SmallSwapDerivation::new(f, &delta)?;
    let probe_conjugations = probe
        .swaps()
        .map(|piece| conjugate_same_type_small(piece, probe_derivation.swap(), base))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicityWitness {
        f: f.clone(),
        eps: eps.clone(),
        derivation,
        sample,
        probe,
        delta,
        probe_derivation,
        probe_conjugations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SurdReal {
        text.parse().unwrap()
    }

    fn base(w: &str) -> Interval {
        Interval::new(SurdReal::zero(), s(w)).unwrap()
    }

    fn swap(a: &str, x: &str, y: &str) -> SwapSpec {
        SwapSpec::new(s(a), s(x), s(y))
    }

    #[test]
    fn refine_examples() {
        let b = base("10");
        let cert = refine_swap(&swap("1", "0", "2"), &s("1/3"), &b).unwrap();
        assert_eq!(cert.len(), 4);
        assert!(cert.swaps().all(|p| p.a == s("1/4")));
        assert!(cert.verify());
        let cert = refine_swap(&swap("1", "0", "2"), &s("2"), &b).unwrap();
        assert_eq!(
            cert.swaps().cloned().collect::<Vec<_>>(),
            vec![swap("1", "0", "2")]
        );
        // a = eps exactly needs two pieces
        let cert = refine_swap(&swap("sqrt(2)", "0", "3"), &s("sqrt(2)"), &b).unwrap();
        assert_eq!(cert.len(), 2);
        assert!(cert.verify());
        assert_eq!(pieces_needed(&s("1"), &s("1/1000")), 1001);
    }

    #[test]
    fn conjugation_far_apart() {
        let b = base("20");
        let cert =
            conjugate_same_type_small(&swap("1", "0", "2"), &swap("1", "15", "18"), &b).unwrap();
        assert!(cert.verify(&b));
        let same =
            conjugate_same_type_small(&swap("1", "0", "2"), &swap("1", "0", "2"), &b).unwrap();
        assert!(same.verify(&b));
        assert_eq!(
            conjugate_same_type_small(&swap("2", "0", "5"), &swap("2", "10", "15"), &b),
            Err(FactorError::TypeTooLarge)
        );
        assert_eq!(
            conjugate_same_type_small(&swap("1", "0", "5"), &swap("1/2", "10", "15"), &b),
            Err(FactorError::TypeMismatch)
        );
    }

    #[test]
    fn witness_two_unit_swaps() {
        let b = base("20");
        let f = swap("1", "0", "2")
            .to_iet(&b)
            .unwrap()
            .compose(&swap("1", "10", "15").to_iet(&b).unwrap())
            .unwrap();
        let w = simplicity_witness(&f, &s("1/8")).unwrap();
        assert!(w.verify());
        assert!(w.delta < s("1/8"));
        assert_eq!(
            simplicity_witness(&Iet::identity(&b), &s("1/8")),
            Err(FactorError::IdentityInput)
        );
        assert!(matches!(
            simplicity_witness(&f, &s("1")),
            Err(FactorError::EpsTooLarge { .. })
        ));
        let rot = crate::iet::RotationSpec::new(s("1"), s("sqrt(2)"), s("0"))
            .to_iet(&b)
            .unwrap();
        assert!(matches!(
            simplicity_witness(&rot, &s("1/8")),
            Err(FactorError::NonzeroSaf(_))
        ));
    }

    #[test]
    fn witness_irrational_swap() {
        let b = base("1 + sqrt(2)");
        let f = swap("1/4*sqrt(2)", "0", "1").to_iet(&b).unwrap();
        let eps = b.width().scale(&rat(1, 64));
        let w = simplicity_witness(&f, &eps).unwrap();
        assert!(w.verify());
    }
}
