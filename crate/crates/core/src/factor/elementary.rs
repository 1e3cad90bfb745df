//! Elementary constructions: rotations, swaps, commutators of involutions.

use crate::exact::{rat, SurdReal};
use crate::iet::{Iet, Interval, OrderResult, RotationSpec, SwapSpec};

use super::{FactorError, Factorization};

/// The rotation used to write the identity as `h ∘ h⁻¹`: type
/// `(w/3, 2w/3)` over the whole base.
pub fn default_rotation(base: &Interval) -> RotationSpec {
    let w = base.width();
    RotationSpec::new(w.scale(&rat(1, 3)), w.scale(&rat(2, 3)), base.lo().clone())
}

/// Writes a permutation as a product `σ_1 ∘ σ_2 ∘ ... ∘ σ_m` of adjacent
/// transpositions; entry `i` stands for the transposition of `i` and `i+1`.
///
/// Cycles `(n_1 ... n_m)` become `(n_1 n_2)(n_2 n_3)...(n_{m-1} n_m)` and each
/// `(n l)` with `n < l` becomes `τ_n τ_{n+1} ... τ_{l-1} ... τ_{n+1} τ_n`.
pub fn adjacent_transpositions(perm: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = perm[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        for w in cycle.windows(2) {
            let (n, l) = (w[0].min(w[1]), w[0].max(w[1]));
            out.extend(n..l);
            out.extend((n..l - 1).rev());
        }
    }
    out
}

/// Restricted rotations whose product is the map with description
/// `(lengths, perm)`. Every rotation type is a pair of entries of `lengths`
/// when there are at least two blocks.
pub fn rotations_from_description(
    base: &Interval,
    lengths: &[SurdReal],
    perm: &[usize],
) -> Vec<RotationSpec> {
    if lengths.len() < 2 {
        let h = default_rotation(base);
        return vec![h.clone(), h.inverse()];
    }
    let sigmas = adjacent_transpositions(perm);
    // arrangement[pos] = original block sitting at position pos before σ_j
    let mut arrangement: Vec<usize> = (0..lengths.len()).collect();
    let mut out = Vec::with_capacity(sigmas.len());
    for &i in sigmas.iter().rev() {
        let start = arrangement[..i]
            .iter()
            .fold(base.lo().clone(), |acc, &b| &acc + &lengths[b]);
        out.push(RotationSpec::new(
            lengths[arrangement[i]].clone(),
            lengths[arrangement[i + 1]].clone(),
            start,
        ));
        arrangement.swap(i, i + 1);
    }
    out.reverse();
    out
}

/// Product of restricted rotations equal to `f`, with types drawn from the
/// canonical block lengths of `f`.
pub fn rotations_factorization(f: &Iet) -> Factorization {
    let rotations = rotations_from_description(f.base(), f.lengths(), f.perm());
    Factorization::from_rotations(f.base(), rotations, f.clone())
}

/// Swap list for a finite-order map: its blocks are refined by the
/// breakpoints of all powers, and every cycle `J_1 → ... → J_k` is written as
/// `k - 1` swaps.
pub(crate) fn finite_order_swaps(f: &Iet, max_iter: u64) -> Result<Vec<SwapSpec>, FactorError> {
    match f.order(max_iter) {
        OrderResult::Finite(n) => cycle_swaps(f, n),
        OrderResult::Infinite => Err(FactorError::NotFiniteOrder),
        OrderResult::BoundExceeded(b) => Err(FactorError::BoundExceeded(b)),
    }
}

/// [`finite_order_swaps`] for a map already known to satisfy `f^n = id`.
pub(crate) fn cycle_swaps(f: &Iet, n: u64) -> Result<Vec<SwapSpec>, FactorError> {
    let mut points: Vec<SurdReal> = Vec::new();
    let mut power = f.clone();
    for _ in 1..n {
        points.extend(power.starts().iter().cloned());
        power = f.compose(&power)?;
    }
    points.sort();
    points.dedup();
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let m = points.len();
    let lens: Vec<SurdReal> = (0..m)
        .map(|i| points.get(i + 1).unwrap_or(f.base().hi()) - &points[i])
        .collect();
    let image: Vec<usize> = points
        .iter()
        .map(|p| {
            let q = f.apply(p).expect("partition point lies in base");
            points
                .binary_search(&q)
                .expect("refined partition is invariant")
        })
        .collect();
    let mut seen = vec![false; m];
    let mut swaps = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = image[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = image[next];
        }
        for w in cycle.windows(2) {
            swaps.push(SwapSpec::new(
                lens[w[0]].clone(),
                points[w[0]].clone(),
                points[w[1]].clone(),
            ));
        }
    }
    Ok(swaps)
}

/// Product of interval swaps equal to a finite-order map `f`.
pub fn finite_order_to_swaps(f: &Iet, max_iter: u64) -> Result<Factorization, FactorError> {
    let swaps = finite_order_swaps(f, max_iter)?;
    Ok(Factorization::from_swaps(f.base(), swaps, f.clone()))
}

/// A swap written as the commutator `g3⁻¹ ∘ g⁻¹ ∘ g3 ∘ g` of two involutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapCommutator {
    /// Exchanges the halves of the first block.
    pub g1: SwapSpec,
    /// Exchanges the halves of the second block.
    pub g2: SwapSpec,
    /// Exchanges the left halves of the two blocks.
    pub g3: SwapSpec,
    pub u: Iet,
    /// `g1 ∘ g2`.
    pub v: Iet,
}

pub fn swap_as_commutator(s: &SwapSpec, base: &Interval) -> Result<SwapCommutator, FactorError> {
    s.to_iet(base)?;
    let h = s.a.half();
    let g1 = SwapSpec::new(h.clone(), s.x.clone(), &s.x + &h);
    let g2 = SwapSpec::new(h.clone(), s.y.clone(), &s.y + &h);
    let g3 = SwapSpec::new(h, s.x.clone(), s.y.clone());
    let u = g3.to_iet(base)?;
    let v = g1.to_iet(base)?.compose(&g2.to_iet(base)?)?;
    Ok(SwapCommutator { g1, g2, g3, u, v })
}

/// An involution `g = g1 ∘ g2` with `s2 = g ∘ s1 ∘ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointConjugator {
    pub swaps: [SwapSpec; 2],
    pub g: Iet,
}

pub fn conjugator_for_disjoint_swaps(
    s1: &SwapSpec,
    s2: &SwapSpec,
    base: &Interval,
) -> Result<DisjointConjugator, FactorError> {
    if s1.a != s2.a {
        return Err(FactorError::TypeMismatch);
    }
    s1.to_iet(base)?;
    s2.to_iet(base)?;
    let (i1, j1) = s1.blocks()?;
    let (i2, j2) = s2.blocks()?;
    let blocks = [&i1, &j1, &i2, &j2];
    for (n, p) in blocks.iter().enumerate() {
        if blocks[n + 1..].iter().any(|q| p.overlaps(q)) {
            return Err(FactorError::OverlappingSupports);
        }
    }
    let g1 = SwapSpec::new(s1.a.clone(), i1.lo().clone(), i2.lo().clone());
    let g2 = SwapSpec::new(s1.a.clone(), j1.lo().clone(), j2.lo().clone());
    let g = g1.to_iet(base)?.compose(&g2.to_iet(base)?)?;
    Ok(DisjointConjugator { swaps: [g1, g2], g })
}

/// The three swaps `[g3, g2, g1]` with `r1⁻¹ ∘ r2 = g3 ∘ g2 ∘ g1`, for
/// rotations of equal type with non-overlapping supports.
pub(crate) fn disjoint_rotation_swaps(r1: &RotationSpec, r2: &RotationSpec) -> [SwapSpec; 3] {
    let (a, b) = (&r1.a, &r1.b);
    let (x, y) = (&r1.start, &r2.start);
    let g1 = SwapSpec::new(a.clone(), x + b, y.clone());
    let g2 = SwapSpec::new(b.clone(), x.clone(), y + a);
    let g3 = SwapSpec::new(a + b, x.clone(), y.clone());
    [g3, g2, g1]
}

pub fn disjoint_rotations_to_swaps(
    r1: &RotationSpec,
    r2: &RotationSpec,
    base: &Interval,
) -> Result<Factorization, FactorError> {
    if !r1.same_type(r2) {
        return Err(FactorError::TypeMismatch);
    }
    let f1 = r1.to_iet(base)?;
    let f2 = r2.to_iet(base)?;
    if r1.support()?.overlaps(&r2.support()?) {
        return Err(FactorError::OverlappingSupports);
    }
    let target = f1.inverse().compose(&f2)?;
    Ok(Factorization::from_swaps(
        base,
        disjoint_rotation_swaps(r1, r2).to_vec(),
        target,
    ))
}

/// For a rotation `f` of type `(a, b)` with `a > b`, returns `(g1, h, g2)`
/// where `h` has type `(a-b, b)` on `[x, x+a)` and `g1 ∘ f = h = f ∘ g2`.
pub fn rotation_step_reduce(
    r: &RotationSpec,
    base: &Interval,
) -> Result<(SwapSpec, RotationSpec, SwapSpec), FactorError> {
    if r.a <= r.b {
        return Err(FactorError::PreconditionAB);
    }
    r.to_iet(base)?;
    Ok(step_reduce(r))
}

pub(crate) fn step_reduce(r: &RotationSpec) -> (SwapSpec, RotationSpec, SwapSpec) {
    let x = &r.start;
    let xa = x + &r.a;
    let g1 = SwapSpec::new(r.b.clone(), x.clone(), xa.clone());
    let g2 = SwapSpec::new(r.b.clone(), &xa - &r.b, xa);
    let h = RotationSpec::new(&r.a - &r.b, r.b.clone(), x.clone());
    (g1, h, g2)
}

/// Outcome of [`small_swap_from_nontrivial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallSwap {
    pub g1: SwapSpec,
    pub g2: SwapSpec,
    /// `g2 ∘ f⁻¹ ∘ g1 ∘ f ∘ g1 ∘ g2`, a swap of type `eps`.
    pub swap: SwapSpec,
    pub eps0: SurdReal,
}

/// Leftmost moved block `[x, y)` of `f` with its translation `t`, and
/// `eps0 = min(y - x, |t|)`.
fn moved_block(f: &Iet) -> Result<(SurdReal, SurdReal, SurdReal), FactorError> {
    let i = f
        .shifts()
        .iter()
        .position(|t| !t.is_zero())
        .ok_or(FactorError::IdentityInput)?;
    let t = f.shifts()[i].clone();
    let len = &f.lengths()[i];
    let t_abs = t.abs();
    let eps0 = if len < &t_abs { len.clone() } else { t_abs };
    Ok((f.starts()[i].clone(), t, eps0))
}

/// Upper bound (exclusive) on the types reachable by
/// [`small_swap_from_nontrivial`].
pub fn small_swap_bound(f: &Iet) -> Result<SurdReal, FactorError> {
    moved_block(f).map(|(_, _, eps0)| eps0)
}

pub fn small_swap_from_nontrivial(f: &Iet, eps: &SurdReal) -> Result<SmallSwap, FactorError> {
    let (x, t, eps0) = moved_block(f)?;
    if !eps.is_positive() {
        return Err(FactorError::NonPositiveEps);
    }
    if eps >= &eps0 {
        return Err(FactorError::EpsTooLarge { eps0 });
    }
    let half = eps.half();
    let xt = &x + &t;
    let g1 = SwapSpec::new(half.clone(), xt.clone(), &xt + &half);
    let g2 = SwapSpec::new(half.clone(), &x + &half, xt.clone());
    let swap = SwapSpec::new(eps.clone(), x, xt);
    Ok(SmallSwap { g1, g2, swap, eps0 })
}

/// Recomposes `g2 ∘ f⁻¹ ∘ g1 ∘ f ∘ g1 ∘ g2`.
pub(crate) fn small_swap_product(
    f: &Iet,
    g1: &SwapSpec,
    g2: &SwapSpec,
) -> Result<Iet, FactorError> {
    let base = f.base();
    let g1 = g1.to_iet(base)?;
    let g2 = g2.to_iet(base)?;
    let out = g2
        .compose(&f.inverse())?
        .compose(&g1)?
        .compose(f)?
        .compose(&g1)?
        .compose(&g2)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::{perm_from_cycles, DEFAULT_MAX_ORDER};

    fn s(text: &str) -> SurdReal {
        text.parse().unwrap()
    }

    fn base(w: &str) -> Interval {
        Interval::new(SurdReal::zero(), s(w)).unwrap()
    }

    fn rot(a: &str, b: &str, x: &str) -> RotationSpec {
        RotationSpec::new(s(a), s(b), s(x))
    }

    fn swap(a: &str, x: &str, y: &str) -> SwapSpec {
        SwapSpec::new(s(a), s(x), s(y))
    }

    /// Composes adjacent transpositions as permutations, independently of
    /// any interval arithmetic.
    fn compose_transpositions(k: usize, sigmas: &[usize]) -> Vec<usize> {
        let mut p: Vec<usize> = (0..k).collect();
        for &i in sigmas.iter().rev() {
            for v in p.iter_mut() {
                if *v == i {
                    *v = i + 1;
                } else if *v == i + 1 {
                    *v = i;
                }
            }
        }
        p
    }

    #[test]
    fn transposition_expansion_multiplies_back() {
        for perm in [
            vec![1, 3, 0, 2],
            vec![0, 1, 2],
            vec![4, 3, 2, 1, 0],
            vec![2, 0, 1, 4, 3],
        ] {
            let sigmas = adjacent_transpositions(&perm);
            assert_eq!(compose_transpositions(perm.len(), &sigmas), perm);
        }
        // (1 3) in 1-based notation = τ1 τ2 τ1
        assert_eq!(adjacent_transpositions(&[2, 1, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn identity_uses_default_pair() {
        let b = base("3");
        let cert = rotations_factorization(&Iet::identity(&b));
        let h = default_rotation(&b);
        assert_eq!(
            cert.rotations().cloned().collect::<Vec<_>>(),
            vec![h.clone(), h.inverse()]
        );
        assert!(cert.verify());
    }

    #[test]
    fn two_interval_exchange_is_one_rotation() {
        let b = base("1 + sqrt(2)");
        let f = Iet::new(b.clone(), vec![s("1"), s("sqrt(2)")], vec![1, 0]).unwrap();
        let cert = rotations_factorization(&f);
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.rotations().next().unwrap(), &rot("1", "sqrt(2)", "0"));
        assert!(cert.verify());
    }

    #[test]
    fn figure_one_rotations() {
        let b = base("4 + sqrt(2)");
        let perm = perm_from_cycles(4, &[vec![1, 2, 4, 3]]).unwrap();
        let lengths = vec![s("1"), s("sqrt(2)"), s("2"), s("1")];
        let f = Iet::new(b, lengths.clone(), perm).unwrap();
        let cert = rotations_factorization(&f);
        assert!(cert.verify());
        for r in cert.rotations() {
            assert!(lengths.contains(&r.a) && lengths.contains(&r.b));
        }
    }

    #[test]
    fn finite_order_examples() {
        let b = base("3");
        let sw = swap("1", "0", "2");
        let cert = finite_order_to_swaps(&sw.to_iet(&b).unwrap(), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(cert.swaps().cloned().collect::<Vec<_>>(), vec![sw]);

        let r = rot("1", "1", "0").to_iet(&b).unwrap();
        let cert = finite_order_to_swaps(&r, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(cert.len(), 1);
        assert_eq!(cert.swaps().next().unwrap().a, s("1"));
        assert!(cert.verify());

        let r3 = rot("1", "2", "0").to_iet(&b).unwrap();
        let cert = finite_order_to_swaps(&r3, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(cert.len(), 2);
        assert!(cert.swaps().all(|sw| sw.a == s("1")));
        assert!(cert.verify());

        let irr = rot("1", "sqrt(2)", "0").to_iet(&b).unwrap();
        assert_eq!(
            finite_order_to_swaps(&irr, DEFAULT_MAX_ORDER),
            Err(FactorError::NotFiniteOrder)
        );
        let five = rot("1", "4", "0").to_iet(&base("5")).unwrap();
        assert_eq!(
            finite_order_to_swaps(&five, 3),
            Err(FactorError::BoundExceeded(3))
        );
        assert!(finite_order_to_swaps(&Iet::identity(&b), 5)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn swap_commutator_example() {
        let b = base("8");
        let sw = swap("2", "0", "4");
        let c = swap_as_commutator(&sw, &b).unwrap();
        assert_eq!(c.g1, swap("1", "0", "1"));
        assert_eq!(c.g2, swap("1", "4", "5"));
        assert_eq!(c.g3, swap("1", "0", "4"));
        let g3g = c.u.compose(&c.v).unwrap();
        assert_eq!(g3g.compose(&g3g).unwrap(), sw.to_iet(&b).unwrap());
        assert_eq!(c.u.order(10), OrderResult::Finite(2));
        assert_eq!(c.v.order(10), OrderResult::Finite(2));
        let comm = super::super::Factor::Commutator(c.u, c.v);
        assert_eq!(comm.to_iet(&b).unwrap(), sw.to_iet(&b).unwrap());
    }

    #[test]
    fn disjoint_swap_conjugator() {
        let b = base("8");
        let s1 = swap("1", "0", "2");
        let s2 = swap("1", "4", "6");
        let c = conjugator_for_disjoint_swaps(&s1, &s2, &b).unwrap();
        let f1 = s1.to_iet(&b).unwrap();
        let f2 = s2.to_iet(&b).unwrap();
        assert_eq!(c.g.compose(&f1).unwrap().compose(&c.g).unwrap(), f2);
        assert_eq!(c.g.order(10), OrderResult::Finite(2));
        assert_eq!(c.swaps, [swap("1", "0", "4"), swap("1", "2", "6")]);
        assert_eq!(
            conjugator_for_disjoint_swaps(&s1, &swap("2", "4", "6"), &b),
            Err(FactorError::TypeMismatch)
        );
        assert_eq!(
            conjugator_for_disjoint_swaps(&s1, &swap("1", "1/2", "6"), &b),
            Err(FactorError::OverlappingSupports)
        );
    }

    #[test]
    fn disjoint_rotations_three_swaps() {
        let b = base("10");
        let cert =
            disjoint_rotations_to_swaps(&rot("1", "2", "0"), &rot("1", "2", "5"), &b).unwrap();
        let types: Vec<SurdReal> = cert.swaps().map(|sw| sw.a.clone()).collect();
        assert_eq!(types, vec![s("3"), s("2"), s("1")]);
        assert!(cert.verify());
        assert_eq!(
            disjoint_rotations_to_swaps(&rot("1", "2", "0"), &rot("1", "2", "2"), &b),
            Err(FactorError::OverlappingSupports)
        );
        assert_eq!(
            disjoint_rotations_to_swaps(&rot("1", "2", "0"), &rot("2", "1", "5"), &b),
            Err(FactorError::TypeMismatch)
        );
    }

    #[test]
    fn step_reduce_identities() {
        let b = base("5");
        let r = rot("3", "1", "0");
        let (g1, h, g2) = rotation_step_reduce(&r, &b).unwrap();
        assert_eq!(h, rot("2", "1", "0"));
        assert_eq!(g1, swap("1", "0", "3"));
        let f = r.to_iet(&b).unwrap();
        let h = h.to_iet(&b).unwrap();
        assert_eq!(g1.to_iet(&b).unwrap().compose(&f).unwrap(), h);
        assert_eq!(f.compose(&g2.to_iet(&b).unwrap()).unwrap(), h);
        assert_eq!(
            rotation_step_reduce(&rot("1", "1", "0"), &b),
            Err(FactorError::PreconditionAB)
        );
    }

    #[test]
    fn small_swap_example() {
        let b = base("3");
        let f = rot("1", "2", "0").to_iet(&b).unwrap();
        let out = small_swap_from_nontrivial(&f, &s("1/2")).unwrap();
        assert_eq!(out.swap, swap("1/2", "0", "2"));
        assert_eq!(out.eps0, s("1"));
        let p = small_swap_product(&f, &out.g1, &out.g2).unwrap();
        assert_eq!(p, out.swap.to_iet(&b).unwrap());
        assert_eq!(
            small_swap_from_nontrivial(&f, &s("1")),
            Err(FactorError::EpsTooLarge { eps0: s("1") })
        );
        assert_eq!(
            small_swap_from_nontrivial(&Iet::identity(&b), &s("1/2")),
            Err(FactorError::IdentityInput)
        );
    }

    #[test]
    fn small_swap_negative_translation() {
        let b = base("3");
        let f = rot("2", "1", "0").to_iet(&b).unwrap();
        let eps = s("1/3");
        let out = small_swap_from_nontrivial(&f, &eps).unwrap();
        let p = small_swap_product(&f, &out.g1, &out.g2).unwrap();
        assert_eq!(p, out.swap.to_iet(&b).unwrap());
    }
}
