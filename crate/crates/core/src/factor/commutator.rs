//! Maps with zero SAF invariant as products of interval swaps.

use std::collections::{BTreeSet, HashMap};

use crate::exact::{rat, SurdReal};
use crate::iet::{Iet, Interval, RotationSpec, SwapSpec};
use crate::saf::{euclid_pairs, saf, EuclidTerminal};

use super::elementary::{
    cycle_swaps, disjoint_rotation_swaps, rotations_from_description, step_reduce,
    swap_as_commutator,
};
use super::rebase::rebase_nonneg_integer;
use super::{rotation_as_swap, rotation_product, Factor, FactorError, Factorization};

/// `rot(r) = rot(h) ∘ tail` with `h.a + h.b < eps` and `tail` made of swaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallRotation {
    pub h: RotationSpec,
    pub tail: Factorization,
}

/// Core of [`rotation_reduce_small`]: returns `h` and the tail swaps.
fn reduce_small(
    r: &RotationSpec,
    base: &Interval,
    eps: &SurdReal,
) -> Result<(RotationSpec, Vec<SwapSpec>), FactorError> {
    if !eps.is_positive() {
        return Err(FactorError::NonPositiveEps);
    }
    let trace = euclid_pairs(&r.a, &r.b, eps)?;
    let mut current = r.clone();
    // g_2, g_3, ..., g_n with f_{i-1} = f_i ∘ g_i
    let mut steps = Vec::with_capacity(trace.pairs.len());
    for _ in 1..trace.pairs.len() {
        if current.a > current.b {
            let (_, h, g2) = step_reduce(&current);
            steps.push(g2);
            current = h;
        } else {
            // f⁻¹ = g1 ∘ h̃, so f = h̃⁻¹ ∘ g1
            let (g1, h, _) = step_reduce(&current.inverse());
            steps.push(g1);
            current = h.inverse();
        }
    }
    debug_assert_eq!((&current.a, &current.b), (&trace.last().0, &trace.last().1));
    steps.reverse();
    match trace.terminal {
        EuclidTerminal::SumBelowEps => Ok((current, steps)),
        EuclidTerminal::EqualPair => {
            // f = h ∘ (h ∘ f) for an equal-type rotation h, which is a swap
            let w = base.width();
            let bound = if eps < &w { eps.clone() } else { w };
            let c = bound.scale(&rat(1, 4));
            let h = RotationSpec::new(c.clone(), c, base.lo().clone());
            let mut tail = vec![rotation_as_swap(&h), rotation_as_swap(&current)];
            tail.extend(steps);
            Ok((h, tail))
        }
    }
}

pub fn rotation_reduce_small(
    r: &RotationSpec,
    base: &Interval,
    eps: &SurdReal,
) -> Result<SmallRotation, FactorError> {
    let f = r.to_iet(base)?;
    let (h, tail) = reduce_small(r, base, eps)?;
    let target = h.to_iet(base)?.inverse().compose(&f)?;
    Ok(SmallRotation {
        h,
        tail: Factorization::from_swaps(base, tail, target),
    })
}

/// Leftmost of `pieces` equal parts of the base whose interior misses all
/// the given intervals.
fn free_piece(base: &Interval, pieces: i64, avoid: &[Interval]) -> Vec<Interval> {
    let step = base.width().scale(&rat(1, pieces));
    (0..pieces)
        .map(|p| {
            let lo = base.lo() + &step.scale_int(p);
            Interval::with_len(lo, &step).expect("positive width")
        })
        .filter(|piece| avoid.iter().all(|a| !piece.overlaps(a)))
        .collect()
}

/// Swaps with product `rot(r1)⁻¹ ∘ rot(r2)` for rotations of equal type.
pub(crate) fn pair_swaps(
    r1: &RotationSpec,
    r2: &RotationSpec,
    base: &Interval,
) -> Result<Vec<SwapSpec>, FactorError> {
    if !r1.same_type(r2) {
        return Err(FactorError::TypeMismatch);
    }
    let w = base.width();
    let span = &r1.a + &r1.b;
    if span.scale_int(5) <= w {
        let free = free_piece(base, 5, &[r1.support()?, r2.support()?]);
        let piece = free.first().expect("a fifth of the base is always free");
        let f0 = RotationSpec::new(r1.a.clone(), r1.b.clone(), piece.lo().clone());
        let mut out = disjoint_rotation_swaps(r1, &f0).to_vec();
        out.extend(disjoint_rotation_swaps(&f0, r2));
        return Ok(out);
    }
    let fifth = w.scale(&rat(1, 5));
    let (h1, t1) = reduce_small(r1, base, &fifth)?;
    let (h2, t2) = reduce_small(r2, base, &fifth)?;
    // f1⁻¹ f2 = t1⁻¹ (h1⁻¹ h2) t2
    let mut out: Vec<SwapSpec> = t1.into_iter().rev().collect();
    out.extend(pair_swaps(&h1, &h2, base)?);
    out.extend(t2);
    Ok(out)
}

pub fn rotation_pair_to_swaps(
    r1: &RotationSpec,
    r2: &RotationSpec,
    base: &Interval,
) -> Result<Factorization, FactorError> {
    let target = r1.to_iet(base)?.inverse().compose(&r2.to_iet(base)?)?;
    let swaps = pair_swaps(r1, r2, base)?;
    Ok(Factorization::from_swaps(base, swaps, target))
}

/// Swaps with product `rot(r)⁻¹ ∘ g⁻¹ ∘ rot(r) ∘ g`.
pub(crate) fn commutator_swaps(
    r: &RotationSpec,
    g: &Iet,
    base: &Interval,
) -> Result<Vec<SwapSpec>, FactorError> {
    let ginv = g.inverse();
    let support = r.support()?;
    let i = ginv.block_index(support.lo())?;
    if ginv.block(i).contains_interval(&support) {
        // g⁻¹ f g is the same rotation moved to g⁻¹(J)
        let moved = RotationSpec::new(r.a.clone(), r.b.clone(), &r.start + &ginv.shifts()[i]);
        return pair_swaps(r, &moved, base);
    }
    let widest = (0..ginv.num_blocks())
        .reduce(|best, j| {
            if ginv.lengths()[j] > ginv.lengths()[best] {
                j
            } else {
                best
            }
        })
        .expect("at least one block");
    let block = ginv.block(widest);
    let t = &ginv.shifts()[widest];
    // f = f0 ∘ g0 with f0 small enough to fit in the block
    let (f0, g0) = reduce_small(r, base, &ginv.lengths()[widest])?;
    let f1 = RotationSpec::new(f0.a.clone(), f0.b.clone(), block.lo().clone());
    let f1_moved = RotationSpec::new(f1.a.clone(), f1.b.clone(), &f1.start + t);
    // f⁻¹g⁻¹fg = g0⁻¹ (f0⁻¹f1) (f1⁻¹g⁻¹f1g) g⁻¹(f1⁻¹f0) g0 g
    let mut out: Vec<SwapSpec> = g0.iter().rev().cloned().collect();
    out.extend(pair_swaps(&f0, &f1, base)?);
    out.extend(pair_swaps(&f1, &f1_moved, base)?);
    let mut inner = pair_swaps(&f1, &f0, base)?;
    inner.extend(g0);
    for h in &inner {
        // a conjugate of a swap is an involution
        let conj = h.to_iet(base)?.conjugate_by(g)?;
        out.extend(cycle_swaps(&conj, 2)?);
    }
    Ok(out)
}

pub fn rotation_commutator_to_swaps(
    r: &RotationSpec,
    g: &Iet,
    base: &Interval,
) -> Result<Factorization, FactorError> {
    if g.base() != base {
        return Err(crate::iet::IetError::BaseMismatch.into());
    }
    let f = r.to_iet(base)?;
    let target = f.inverse().compose(&g.inverse())?.compose(&f)?.compose(g)?;
    let swaps = commutator_swaps(r, g, base)?;
    Ok(Factorization::from_swaps(base, swaps, target))
}

/// True when every type `(a, b)` occurs as often as `(b, a)`.
pub fn is_balanced(rotations: &[RotationSpec]) -> bool {
    let mut counts: HashMap<(&SurdReal, &SurdReal), i64> = HashMap::new();
    for r in rotations {
        *counts.entry((&r.a, &r.b)).or_default() += 1;
    }
    counts
        .iter()
        .all(|(&(a, b), &n)| counts.get(&(b, a)).copied().unwrap_or(0) == n)
}

/// Products of contiguous ranges of a list of maps, with removal.
struct ProductTree {
    size: usize,
    nodes: Vec<Iet>,
}

impl ProductTree {
    fn new(base: &Interval, leaves: Vec<Iet>) -> Result<Self, FactorError> {
        let size = leaves.len().next_power_of_two();
        let mut nodes = vec![Iet::identity(base); 2 * size];
        for (i, leaf) in leaves.into_iter().enumerate() {
            nodes[size + i] = leaf;
        }
        for i in (1..size).rev() {
            nodes[i] = nodes[2 * i].compose(&nodes[2 * i + 1])?;
        }
        Ok(ProductTree { size, nodes })
    }

    fn remove(&mut self, i: usize) -> Result<(), FactorError> {
        let mut n = self.size + i;
        self.nodes[n] = Iet::identity(self.nodes[n].base());
        while n > 1 {
            n /= 2;
            self.nodes[n] = self.nodes[2 * n].compose(&self.nodes[2 * n + 1])?;
        }
        Ok(())
    }

    /// Product of leaves `lo..hi` in order.
    fn range(&self, lo: usize, hi: usize) -> Result<Iet, FactorError> {
        let base = self.nodes[1].base();
        let mut left = Iet::identity(base);
        let mut right = Iet::identity(base);
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        while l < r {
            if l % 2 == 1 {
                left = left.compose(&self.nodes[l])?;
                l += 1;
            }
            if r % 2 == 1 {
                r -= 1;
                right = self.nodes[r].compose(&right)?;
            }
            l /= 2;
            r /= 2;
        }
        Ok(left.compose(&right)?)
    }
}

pub(crate) fn balanced_swaps(
    rotations: &[RotationSpec],
    base: &Interval,
) -> Result<Vec<SwapSpec>, FactorError> {
    if !is_balanced(rotations) {
        return Err(FactorError::NotBalanced);
    }
    let leaves = rotations
        .iter()
        .map(|r| r.to_iet(base))
        .collect::<Result<Vec<_>, _>>()?;
    let mut tree = ProductTree::new(base, leaves)?;
    let mut by_type: HashMap<(&SurdReal, &SurdReal), BTreeSet<usize>> = HashMap::new();
    for (i, r) in rotations.iter().enumerate() {
        by_type.entry((&r.a, &r.b)).or_default().insert(i);
    }
    let mut alive = vec![true; rotations.len()];
    let mut out = Vec::new();
    for h in 0..rotations.len() {
        if !alive[h] {
            continue;
        }
        let head = &rotations[h];
        alive[h] = false;
        by_type
            .get_mut(&(&head.a, &head.b))
            .expect("indexed")
            .remove(&h);
        // later ranges all start after `h`, so its leaf can stay in the tree
        if head.a == head.b {
            out.push(rotation_as_swap(head));
            continue;
        }
        let k = by_type
            .get_mut(&(&head.b, &head.a))
            .and_then(|set| set.pop_first())
            .expect("balanced product has a partner");
        alive[k] = false;
        let partner = &rotations[k];
        // f = (f1 fk)(fk⁻¹ g1 fk g1⁻¹)(g1 g2) with g1 = f2 ... f_{k-1}
        let g1 = tree.range(h + 1, k)?;
        out.extend(pair_swaps(&head.inverse(), partner, base)?);
        out.extend(commutator_swaps(partner, &g1.inverse(), base)?);
        tree.remove(k)?;
    }
    Ok(out)
}

pub fn balanced_to_swaps(
    rotations: &[RotationSpec],
    base: &Interval,
) -> Result<Factorization, FactorError> {
    let swaps = balanced_swaps(rotations, base)?;
    let target = rotation_product(base, rotations)?;
    Ok(Factorization::from_swaps(base, swaps, target))
}

/// Balanced list of restricted rotations with product `f`, using types
/// drawn from a ℚ-independent basis of the block lengths.
pub fn balanced_rotations(f: &Iet) -> Result<Vec<RotationSpec>, FactorError> {
    let invariant = saf(f);
    if !invariant.is_zero() {
        return Err(FactorError::NonzeroSaf(invariant));
    }
    let base = f.base();
    if f.is_identity() {
        return Ok(rotations_from_description(base, f.lengths(), f.perm()));
    }
    let rb = rebase_nonneg_integer(f.lengths())?;
    let counts: Vec<usize> = rb
        .coords
        .iter()
        .map(|row| row.iter().sum::<u64>() as usize)
        .collect();
    let k = f.num_blocks();
    let mut by_rank = vec![0; k];
    for (i, &r) in f.perm().iter().enumerate() {
        by_rank[r] = i;
    }
    let mut first_rank = vec![0; k];
    let mut at = 0;
    for &i in &by_rank {
        first_rank[i] = at;
        at += counts[i];
    }
    let mut lengths = Vec::with_capacity(at);
    let mut perm = Vec::with_capacity(at);
    for (i, row) in rb.coords.iter().enumerate() {
        let mut local = 0;
        for (j, &c) in row.iter().enumerate() {
            for _ in 0..c {
                lengths.push(rb.basis[j].clone());
                perm.push(first_rank[i] + local);
                local += 1;
            }
        }
    }
    let rotations = rotations_from_description(base, &lengths, &perm);
    debug_assert!(is_balanced(&rotations));
    Ok(rotations)
}

pub fn balanced_rotations_factorization(f: &Iet) -> Result<Factorization, FactorError> {
    let rotations = balanced_rotations(f)?;
    Ok(Factorization::from_rotations(
        f.base(),
        rotations,
        f.clone(),
    ))
}

/// Interval swaps with product `f`, for `f` with zero SAF invariant.
pub fn zero_saf_to_swaps(f: &Iet) -> Result<Factorization, FactorError> {
    if f.is_identity() {
        return Ok(Factorization::from_swaps(f.base(), Vec::new(), f.clone()));
    }
    let rotations = balanced_rotations(f)?;
    let swaps = balanced_swaps(&rotations, f.base())?;
    Ok(Factorization::from_swaps(f.base(), swaps, f.clone()))
}

/// Commutators of involutions with product `f`, for `f` with zero SAF
/// invariant.
pub fn zero_saf_to_commutators(f: &Iet) -> Result<Factorization, FactorError> {
    let swaps = zero_saf_to_swaps(f)?;
    let factors = swaps
        .swaps()
        .map(|s| {
            let c = swap_as_commutator(s, f.base())?;
            Ok(Factor::Commutator(c.u, c.v))
        })
        .collect::<Result<Vec<_>, FactorError>>()?;
    Ok(Factorization {
        base: f.base().clone(),
        factors,
        target: f.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iet::OrderResult;

    fn s(text: &str) -> SurdReal {
        text.parse().unwrap()
    }

    fn base(w: &str) -> Interval {
        Interval::new(SurdReal::zero(), s(w)).unwrap()
    }

    fn rot(a: &str, b: &str, x: &str) -> RotationSpec {
        RotationSpec::new(s(a), s(b), s(x))
    }

    #[test]
    fn reduce_small_sum_branch() {
        let b = base("10");
        let out = rotation_reduce_small(&rot("3", "1", "0"), &b, &s("3")).unwrap();
        assert_eq!(out.h, rot("1", "1", "0"));
        assert!(out.tail.verify());
        let out = rotation_reduce_small(&rot("1", "sqrt(2)", "2"), &b, &s("1/2")).unwrap();
        assert!(&out.h.a + &out.h.b < s("1/2"));
        assert!(out.tail.verify());
        assert_eq!(out.tail.len(), out.tail.swaps().count());
    }

    #[test]
    fn reduce_small_equal_branch() {
        let b = base("10");
        let out = rotation_reduce_small(&rot("1", "1", "0"), &b, &s("1")).unwrap();
        assert_eq!(out.h, rot("1/4", "1/4", "0"));
        let tail: Vec<SwapSpec> = out.tail.swaps().cloned().collect();
        assert_eq!(
            tail,
            vec![
                SwapSpec::new(s("1/4"), s("0"), s("1/4")),
                SwapSpec::new(s("1"), s("0"), s("1")),
            ]
        );
        assert!(out.tail.verify());
        assert_eq!(
            rotation_reduce_small(&rot("1", "1", "0"), &b, &s("0")),
            Err(FactorError::NonPositiveEps)
        );
    }

    #[test]
    fn pair_small_disjoint_is_six_swaps() {
        let b = base("10");
        let cert =
            rotation_pair_to_swaps(&rot("1/2", "1/2", "0"), &rot("1/2", "1/2", "8"), &b).unwrap();
        assert_eq!(cert.len(), 6);
        assert!(cert.verify());
        let cert = rotation_pair_to_swaps(
            &rot("1", "1/2*sqrt(2)", "1"),
            &rot("1", "1/2*sqrt(2)", "1/3"),
            &b,
        )
        .unwrap();
        assert_eq!(cert.len(), 6);
        assert!(cert.verify());
    }

    #[test]
    fn pair_identical_and_large() {
        let b = base("10");
        let r = rot("1", "sqrt(2)", "3");
        let cert = rotation_pair_to_swaps(&r, &r, &b).unwrap();
        assert!(cert.target.is_identity());
        assert!(cert.verify());
        let cert = rotation_pair_to_swaps(&rot("2", "3", "0"), &rot("2", "3", "4"), &b).unwrap();
        assert!(cert.verify());
        assert_eq!(
            rotation_pair_to_swaps(&rot("2", "3", "0"), &rot("3", "2", "4"), &b),
            Err(FactorError::TypeMismatch)
        );
    }

    #[test]
    fn commutator_cases() {
        let b = base("10");
        let r = rot("1", "sqrt(2)", "0");
        let id = Iet::identity(&b);
        let cert = rotation_commutator_to_swaps(&r, &id, &b).unwrap();
        assert!(cert.target.is_identity());
        assert!(cert.verify());
        // g translates the support rigidly
        let g = rot("3", "4", "0").to_iet(&b).unwrap();
        let cert = rotation_commutator_to_swaps(&r, &g, &b).unwrap();
        assert!(cert.verify());
        // g cuts the support
        let g = Iet::new(
            b.clone(),
            vec![s("1"), s("2"), s("sqrt(3)"), s("7 - sqrt(3)")],
            vec![2, 0, 3, 1],
        )
        .unwrap();
        let cert = rotation_commutator_to_swaps(&r, &g, &b).unwrap();
        assert!(cert.verify());
    }

    #[test]
    fn balanced_examples() {
        let b = base("10");
        let cert = balanced_to_swaps(&[rot("1", "1", "0")], &b).unwrap();
        assert_eq!(cert.len(), 1);
        assert!(cert.verify());
        let cert =
            balanced_to_swaps(&[rot("1", "sqrt(2)", "0"), rot("sqrt(2)", "1", "0")], &b).unwrap();
        assert!(cert.verify());
        assert_eq!(
            balanced_to_swaps(&[rot("1", "sqrt(2)", "0")], &b),
            Err(FactorError::NotBalanced)
        );
    }

    #[test]
    fn balanced_rotation_examples() {
        let b = base("10");
        let id = balanced_rotations_factorization(&Iet::identity(&b)).unwrap();
        assert_eq!(id.len(), 2);
        assert!(id.verify());
        let f = rot("1", "sqrt(2)", "0")
            .to_iet(&b)
            .unwrap()
            .compose(&rot("sqrt(2)", "1", "3").to_iet(&b).unwrap())
            .unwrap();
        let cert = balanced_rotations_factorization(&f).unwrap();
        assert!(cert.verify());
        let rs: Vec<RotationSpec> = cert.rotations().cloned().collect();
        assert!(is_balanced(&rs));
        let n12 = rs
            .iter()
            .filter(|r| r.a == s("1") && r.b == s("sqrt(2)"))
            .count();
        let n21 = rs
            .iter()
            .filter(|r| r.a == s("sqrt(2)") && r.b == s("1"))
            .count();
        assert_eq!(n12, n21);
    }

    #[test]
    fn pipelines() {
        let b = base("10");
        let sw = SwapSpec::new(s("sqrt(2)"), s("1"), s("5"))
            .to_iet(&b)
            .unwrap();
        let cert = zero_saf_to_swaps(&sw).unwrap();
        assert!(cert.verify());
        let cert = zero_saf_to_commutators(&sw).unwrap();
        assert!(cert.verify());
        let id = zero_saf_to_swaps(&Iet::identity(&b)).unwrap();
        assert!(id.verify());
        let irr = rot("1", "sqrt(2)", "0").to_iet(&b).unwrap();
        assert!(matches!(
            zero_saf_to_swaps(&irr),
            Err(FactorError::NonzeroSaf(_))
        ));
        for s in zero_saf_to_swaps(&sw).unwrap().swaps() {
            assert_eq!(s.to_iet(&b).unwrap().order(4), OrderResult::Finite(2));
        }
    }
}
