//! Interval exchange transformations as exact group elements.
//!
//! An [`Iet`] is stored in its canonical combinatorial description: the
//! minimal partition of the base interval into blocks that are translated
//! rigidly, the block lengths in left-to-right order, and the permutation
//! giving the left-to-right rank of every block's image. Permutations are
//! 0-based in this crate (`perm[i]` is the rank of the image of block `i`).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::exact::SurdReal;

/// Default bound for [`Iet::order`].
pub const DEFAULT_MAX_ORDER: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IetError {
    #[error("interval is empty: lo must be strictly less than hi")]
    EmptyInterval,
    #[error("length {0} is not positive")]
    NonPositiveLength(usize),
    #[error("lengths do not sum to the width of the base interval")]
    LengthSumMismatch,
    #[error("permutation is not a bijection on the block indices")]
    InvalidPermutation,
    #[error("translated blocks do not tile the base interval")]
    InvalidPieces,
    #[error("point lies outside the base interval")]
    PointOutsideDomain,
    #[error("transformations are defined on different base intervals")]
    BaseMismatch,
    #[error("support does not fit inside the base interval")]
    SupportOutsideBase,
    #[error("swapped blocks overlap")]
    OverlappingBlocks,
    #[error("type parameters must be positive")]
    NonPositiveType,
}

/// Half-closed interval `[lo, hi)` with `lo < hi`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: SurdReal,
    hi: SurdReal,
}

impl Interval {
    pub fn new(lo: SurdReal, hi: SurdReal) -> Result<Self, IetError> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IetError::EmptyInterval)
        }
    }

    /// `[start, start + len)`.
    pub fn with_len(start: SurdReal, len: &SurdReal) -> Result<Self, IetError> {
        let hi = &start + len;
        Self::new(start, hi)
    }

    pub fn lo(&self) -> &SurdReal {
        &self.lo
    }

    pub fn hi(&self) -> &SurdReal {
        &self.hi
    }

    pub fn width(&self) -> SurdReal {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &SurdReal) -> bool {
        &self.lo <= x && x < &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// True when the interiors intersect.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn translate(&self, t: &SurdReal) -> Interval {
        Interval {
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

/// Restricted rotation of type `(a, b)`: exchanges the neighbouring blocks
/// `[start, start+a)` and `[start+a, start+a+b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSpec {
    pub a: SurdReal,
    pub b: SurdReal,
    pub start: SurdReal,
}

impl RotationSpec {
    pub fn new(a: SurdReal, b: SurdReal, start: SurdReal) -> Self {
        RotationSpec { a, b, start }
    }

    pub fn support(&self) -> Result<Interval, IetError> {
        Interval::with_len(self.start.clone(), &(&self.a + &self.b))
    }

    pub fn inverse(&self) -> RotationSpec {
        RotationSpec::new(self.b.clone(), self.a.clone(), self.start.clone())
    }

    pub fn same_type(&self, other: &RotationSpec) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn to_iet(&self, base: &Interval) -> Result<Iet, IetError> {
        Iet::restricted_rotation(base, self)
    }
}

/// Interval swap of type `a`: interchanges `[x, x+a)` and `[y, y+a)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwapSpec {
    pub a: SurdReal,
    pub x: SurdReal,
    pub y: SurdReal,
}

impl SwapSpec {
    pub fn new(a: SurdReal, x: SurdReal, y: SurdReal) -> Self {
        SwapSpec { a, x, y }
    }

    /// The two swapped blocks, left one first.
    pub fn blocks(&self) -> Result<(Interval, Interval), IetError> {
        let first = Interval::with_len(self.x.clone(), &self.a)?;
        let second = Interval::with_len(self.y.clone(), &self.a)?;
        Ok(if first.lo <= second.lo {
            (first, second)
        } else {
            (second, first)
        })
    }

    pub fn to_iet(&self, base: &Interval) -> Result<Iet, IetError> {
        Iet::interval_swap(base, self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderResult {
    Finite(u64),
    Infinite,
    BoundExceeded(u64),
}

/// An interval exchange transformation in canonical form.
#[derive(Clone)]
pub struct Iet {
    base: Interval,
    lengths: Vec<SurdReal>,
    perm: Vec<usize>,
    starts: Vec<SurdReal>,
    shifts: Vec<SurdReal>,
}

impl PartialEq for Iet {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.perm == other.perm && self.lengths == other.lengths
    }
}

impl Eq for Iet {}

impl fmt::Debug for Iet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Iet")
            .field("base", &self.base)
            .field("lengths", &self.lengths)
            .field("perm", &self.perm)
            .finish()
    }
}

/// One translated block before canonicalization. `key` orders the images
/// left to right.
struct Piece<K> {
    len: SurdReal,
    shift: SurdReal,
    key: K,
}

impl Iet {
    /// Builds the map with description `(lengths, perm)`, where `perm[i]` is
    /// the 0-based rank of the image of the `i`-th block. The result is
    /// canonicalized.
    pub fn new(base: Interval, lengths: Vec<SurdReal>, perm: Vec<usize>) -> Result<Self, IetError> {
        let k = lengths.len();
        if k == 0 || perm.len() != k {
            return Err(IetError::InvalidPermutation);
        }
        let mut seen = vec![false; k];
        for &p in &perm {
            if p >= k || seen[p] {
                return Err(IetError::InvalidPermutation);
            }
            seen[p] = true;
        }
        if let Some(i) = lengths.iter().position(|l| !l.is_positive()) {
            return Err(IetError::NonPositiveLength(i));
        }
        let total = lengths.iter().fold(SurdReal::zero(), |acc, l| &acc + l);
        if total != base.width() {
            return Err(IetError::LengthSumMismatch);
        }
        let shifts = description_shifts(&base, &lengths, &perm);
        let pieces = lengths
            .into_iter()
            .zip(shifts)
            .zip(perm)
            .map(|((len, shift), key)| Piece { len, shift, key })
            .collect();
        Ok(Self::assemble(base, pieces))
    }

    pub fn identity(base: &Interval) -> Self {
        Iet {
            base: base.clone(),
            lengths: vec![base.width()],
            perm: vec![0],
            starts: vec![base.lo.clone()],
            shifts: vec![SurdReal::zero()],
        }
    }

    /// Builds a map from consecutive blocks given as `(length, translation)`
    /// pairs, checking that the translated blocks tile the base interval.
    pub fn from_pieces(
        base: &Interval,
        pieces: Vec<(SurdReal, SurdReal)>,
    ) -> Result<Self, IetError> {
        if pieces.is_empty() {
            return Err(IetError::InvalidPieces);
        }
        let mut starts = Vec::with_capacity(pieces.len());
        let mut at = base.lo.clone();
        for (i, (len, _)) in pieces.iter().enumerate() {
            if !len.is_positive() {
                return Err(IetError::NonPositiveLength(i));
            }
            starts.push(at.clone());
            at = &at + len;
        }
        if at != base.hi {
            return Err(IetError::LengthSumMismatch);
        }
        let images: Vec<SurdReal> = starts
            .iter()
            .zip(&pieces)
            .map(|(s, (_, t))| s + t)
            .collect();
        let mut order: Vec<usize> = (0..pieces.len()).collect();
        order.sort_by(|&i, &j| images[i].cmp(&images[j]));
        let mut at = base.lo.clone();
        for &i in &order {
            if images[i] != at {
                return Err(IetError::InvalidPieces);
            }
            at = &at + &pieces[i].0;
        }
        let mut rank = vec![0; pieces.len()];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let pieces = pieces
            .into_iter()
            .zip(rank)
            .map(|((len, shift), key)| Piece { len, shift, key })
            .collect();
        Ok(Self::assemble(base.clone(), pieces))
    }

    /// Merges neighbouring pieces with equal translation and renumbers ranks.
    fn assemble<K: Ord>(base: Interval, pieces: Vec<Piece<K>>) -> Self {
        let mut merged: Vec<Piece<K>> = Vec::with_capacity(pieces.len());
        for p in pieces {
            match merged.last_mut() {
                Some(last) if last.shift == p.shift => last.len = &last.len + &p.len,
                _ => merged.push(p),
            }
        }
        let mut order: Vec<usize> = (0..merged.len()).collect();
        order.sort_by(|&i, &j| merged[i].key.cmp(&merged[j].key));
        let mut perm = vec![0; merged.len()];
        for (r, &i) in order.iter().enumerate() {
            perm[i] = r;
        }
        let mut starts = Vec::with_capacity(merged.len());
        let mut at = base.lo.clone();
        let mut lengths = Vec::with_capacity(merged.len());
        let mut shifts = Vec::with_capacity(merged.len());
        for p in merged {
            starts.push(at.clone());
            at = &at + &p.len;
            lengths.push(p.len);
            shifts.push(p.shift);
        }
        Iet {
            base,
            lengths,
            perm,
            starts,
            shifts,
        }
    }

    /// The unique map with the given type and support, fixing the rest.
    pub fn restricted_rotation(base: &Interval, spec: &RotationSpec) -> Result<Self, IetError> {
        if !spec.a.is_positive() || !spec.b.is_positive() {
            return Err(IetError::NonPositiveType);
        }
        let support = spec.support()?;
        if !base.contains_interval(&support) {
            return Err(IetError::SupportOutsideBase);
        }
        let mut pieces = Vec::with_capacity(4);
        let left = &spec.start - &base.lo;
        if left.is_positive() {
            pieces.push((left, SurdReal::zero()));
        }
        pieces.push((spec.a.clone(), spec.b.clone()));
        pieces.push((spec.b.clone(), -&spec.a));
        let right = &base.hi - &support.hi;
        if right.is_positive() {
            pieces.push((right, SurdReal::zero()));
        }
        Self::from_pieces(base, pieces)
    }

    /// The unique swap with the given type and blocks, fixing the rest.
    pub fn interval_swap(base: &Interval, spec: &SwapSpec) -> Result<Self, IetError> {
        if !spec.a.is_positive() {
            return Err(IetError::NonPositiveType);
        }
        let (first, second) = spec.blocks()?;
        if !base.contains_interval(&first) || !base.contains_interval(&second) {
            return Err(IetError::SupportOutsideBase);
        }
        if first.overlaps(&second) {
            return Err(IetError::OverlappingBlocks);
        }
        let gap = &second.lo - &first.lo;
        let mut pieces = Vec::with_capacity(5);
        let left = &first.lo - &base.lo;
        if left.is_positive() {
            pieces.push((left, SurdReal::zero()));
        }
        pieces.push((spec.a.clone(), gap.clone()));
        let middle = &second.lo - &first.hi;
        if middle.is_positive() {
            pieces.push((middle, SurdReal::zero()));
        }
        pieces.push((spec.a.clone(), -&gap));
        let right = &base.hi - &second.hi;
        if right.is_positive() {
            pieces.push((right, SurdReal::zero()));
        }
        Self::from_pieces(base, pieces)
    }

    pub fn base(&self) -> &Interval {
        &self.base
    }

    pub fn lengths(&self) -> &[SurdReal] {
        &self.lengths
    }

    /// 0-based ranks of the block images.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Translation of every canonical block.
    pub fn shifts(&self) -> &[SurdReal] {
        &self.shifts
    }

    /// Left endpoints of the canonical blocks.
    pub fn starts(&self) -> &[SurdReal] {
        &self.starts
    }

    pub fn block(&self, i: usize) -> Interval {
        Interval {
            lo: self.starts[i].clone(),
            hi: &self.starts[i] + &self.lengths[i],
        }
    }

    /// Number of blocks in the minimal partition.
    pub fn num_blocks(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_identity(&self) -> bool {
        self.lengths.len() == 1
    }

    /// Index of the canonical block containing `x`.
    pub fn block_index(&self, x: &SurdReal) -> Result<usize, IetError> {
        if !self.base.contains(x) {
            return Err(IetError::PointOutsideDomain);
        }
        Ok(self.starts.partition_point(|s| s <= x) - 1)
    }

    pub fn apply(&self, x: &SurdReal) -> Result<SurdReal, IetError> {
        let i = self.block_index(x)?;
        Ok(x + &self.shifts[i])
    }

    /// `self ∘ g`, i.e. `x ↦ self(g(x))`.
    pub fn compose(&self, g: &Iet) -> Result<Iet, IetError> {
        if self.base != g.base {
            return Err(IetError::BaseMismatch);
        }
        if g.is_identity() {
            return Ok(self.clone());
        }
        if self.is_identity() {
            return Ok(g.clone());
        }
        let mut pieces = Vec::with_capacity(self.num_blocks() + g.num_blocks());
        for i in 0..g.num_blocks() {
            let img_lo = &g.starts[i] + &g.shifts[i];
            let img_hi = &img_lo + &g.lengths[i];
            let mut j = self.starts.partition_point(|s| s <= &img_lo) - 1;
            let mut at = img_lo;
            loop {
                let block_hi = &self.starts[j] + &self.lengths[j];
                let end = if block_hi < img_hi {
                    block_hi
                } else {
                    img_hi.clone()
                };
                pieces.push(Piece {
                    len: &end - &at,
                    shift: &g.shifts[i] + &self.shifts[j],
                    key: (self.perm[j], g.perm[i]),
                });
                if end == img_hi {
                    break;
                }
                at = end;
                j += 1;
            }
        }
        Ok(Self::assemble(self.base.clone(), pieces))
    }

    pub fn inverse(&self) -> Iet {
        let k = self.num_blocks();
        let mut inv = vec![0; k];
        for (i, &r) in self.perm.iter().enumerate() {
            inv[r] = i;
        }
        let pieces = inv
            .iter()
            .map(|&i| Piece {
                len: self.lengths[i].clone(),
                shift: -&self.shifts[i],
                key: i,
            })
            .collect();
        Self::assemble(self.base.clone(), pieces)
    }

    /// `self^n` for `n ≥ 0`.
    pub fn power(&self, n: u64) -> Iet {
        let mut acc = Iet::identity(&self.base);
        for _ in 0..n {
            acc = self.compose(&acc).expect("same base");
        }
        acc
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &Iet) -> Result<Iet, IetError> {
        g.inverse().compose(&self.compose(g)?)
    }

    /// Maximal intervals of moved points, left to right.
    pub fn support(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = Vec::new();
        for i in 0..self.num_blocks() {
            if self.shifts[i].is_zero() {
                continue;
            }
            let block = self.block(i);
            match out.last_mut() {
                Some(last) if last.hi == block.lo => last.hi = block.hi,
                _ => out.push(block),
            }
        }
        out
    }

    /// The blocks of an arbitrary refinement of the canonical partition by
    /// the given cut points, as `(length, translation)` pairs.
    pub fn refined_pieces(&self, cuts: &[SurdReal]) -> Vec<(SurdReal, SurdReal)> {
        let mut points: Vec<SurdReal> = self.starts.clone();
        points.extend(cuts.iter().filter(|c| self.base.contains(c)).cloned());
        points.sort();
        points.dedup();
        let mut out = Vec::with_capacity(points.len());
        for (n, p) in points.iter().enumerate() {
            let end = points.get(n + 1).unwrap_or(&self.base.hi);
            let i = self.starts.partition_point(|s| s <= p) - 1;
            out.push((end - p, self.shifts[i].clone()));
        }
        out
    }

    /// Order of the map. Maps with nonzero SAF invariant have infinite
    /// order; otherwise powers are iterated up to `max_iter`.
    pub fn order(&self, max_iter: u64) -> OrderResult {
        if !crate::saf::saf(self).is_zero() {
            return OrderResult::Infinite;
        }
        let mut acc = self.clone();
        for n in 1..=max_iter {
            if acc.is_identity() {
                return OrderResult::Finite(n);
            }
            acc = self.compose(&acc).expect("same base");
        }
        OrderResult::BoundExceeded(max_iter)
    }
}

/// Translations of the blocks of the description `(lengths, perm)`.
fn description_shifts(base: &Interval, lengths: &[SurdReal], perm: &[usize]) -> Vec<SurdReal> {
    let k = lengths.len();
    let mut by_rank = vec![0; k];
    for (i, &r) in perm.iter().enumerate() {
        by_rank[r] = i;
    }
    let mut image_start = vec![SurdReal::zero(); k];
    let mut at = base.lo.clone();
    for &i in &by_rank {
        image_start[i] = at.clone();
        at = &at + &lengths[i];
    }
    let mut at = base.lo.clone();
    let mut shifts = Vec::with_capacity(k);
    for i in 0..k {
        shifts.push(&image_start[i] - &at);
        at = &at + &lengths[i];
    }
    shifts
}

/// Converts a permutation given as cycles of 1-based indices into 0-based
/// one-line form. `(1 2 4 3)` sends 1 to 2, 2 to 4, 4 to 3 and 3 to 1.
pub fn perm_from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, IetError> {
    let mut perm: Vec<Option<usize>> = vec![None; k];
    for cycle in cycles {
        for (n, &from) in cycle.iter().enumerate() {
            let to = cycle[(n + 1) % cycle.len()];
            if from == 0 || from > k || to == 0 || to > k || perm[from - 1].is_some() {
                return Err(IetError::InvalidPermutation);
            }
            perm[from - 1] = Some(to - 1);
        }
    }
    Ok((0..k).map(|i| perm[i].unwrap_or(i)).collect())
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo.cmp(&other.lo).then_with(|| self.hi.cmp(&other.hi))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> SurdReal {
        text.parse().unwrap()
    }

    fn unit_base(w: i64) -> Interval {
        Interval::new(SurdReal::zero(), SurdReal::from_int(w)).unwrap()
    }

    fn ones(k: usize) -> Vec<SurdReal> {
        vec![SurdReal::one(); k]
    }

    #[test]
    fn figure_one_cycle() {
        let perm = perm_from_cycles(4, &[vec![1, 2, 4, 3]]).unwrap();
        assert_eq!(perm, vec![1, 3, 0, 2]);
        let f = Iet::new(unit_base(4), ones(4), perm.clone()).unwrap();
        assert_eq!(f.num_blocks(), 4);
        assert_eq!(f.perm(), perm.as_slice());
        // block 3 ([2,3)) lands in position 1, i.e. at [0,1).
        assert_eq!(f.apply(&SurdReal::from_int(2)).unwrap(), SurdReal::zero());
    }

    #[test]
    fn trivial_descriptions_collapse() {
        let id = Iet::new(unit_base(1), ones(1), vec![0]).unwrap();
        assert!(id.is_identity());
        let merged = Iet::new(unit_base(2), ones(2), vec![0, 1]).unwrap();
        assert_eq!(merged.num_blocks(), 1);
        assert_eq!(merged, Iet::identity(&unit_base(2)));
    }

    #[test]
    fn constructor_errors() {
        let base = unit_base(2);
        assert_eq!(
            Iet::new(
                base.clone(),
                vec![SurdReal::from_int(2), SurdReal::zero()],
                vec![0, 1]
            ),
            Err(IetError::NonPositiveLength(1))
        );
        assert_eq!(
            Iet::new(base.clone(), ones(3), vec![0, 1, 2]),
            Err(IetError::LengthSumMismatch)
        );
        assert_eq!(
            Iet::new(base, ones(2), vec![1, 1]),
            Err(IetError::InvalidPermutation)
        );
    }

    #[test]
    fn apply_examples() {
        let base = unit_base(3);
        let id = Iet::identity(&base);
        assert_eq!(id.apply(&s("1/2")).unwrap(), s("1/2"));
        let rot = Iet::restricted_rotation(
            &base,
            &RotationSpec::new(SurdReal::one(), SurdReal::from_int(2), SurdReal::zero()),
        )
        .unwrap();
        assert_eq!(rot.apply(&SurdReal::zero()).unwrap(), SurdReal::from_int(2));
        let swap = Iet::interval_swap(
            &base,
            &SwapSpec::new(SurdReal::one(), SurdReal::zero(), SurdReal::from_int(2)),
        )
        .unwrap();
        assert_eq!(swap.apply(&s("1/2")).unwrap(), s("5/2"));
        assert_eq!(
            swap.apply(&SurdReal::from_int(3)),
            Err(IetError::PointOutsideDomain)
        );
    }

    #[test]
    fn swap_is_involution() {
        let base = unit_base(5);
        let swap =
            Iet::interval_swap(&base, &SwapSpec::new(s("sqrt(2)"), s("1/3"), s("3"))).unwrap();
        assert!(swap.compose(&swap).unwrap().is_identity());
        assert_eq!(swap.inverse(), swap);
    }

    #[test]
    fn rotation_inverse_is_reversed_type() {
        let base = unit_base(3);
        let r = RotationSpec::new(SurdReal::one(), SurdReal::from_int(2), SurdReal::zero());
        let f = r.to_iet(&base).unwrap();
        assert_eq!(f.inverse(), r.inverse().to_iet(&base).unwrap());
        assert!(f.compose(&f.inverse()).unwrap().is_identity());
        assert_ne!(f, r.inverse().to_iet(&base).unwrap());
    }

    #[test]
    fn equal_type_rotation_is_swap() {
        let base = unit_base(5);
        let a = s("sqrt(3) - 1");
        let start = s("1/2");
        let rot = RotationSpec::new(a.clone(), a.clone(), start.clone());
        let swap = SwapSpec::new(a.clone(), start.clone(), &start + &a);
        assert_eq!(rot.to_iet(&base).unwrap(), swap.to_iet(&base).unwrap());
        let adjacent = SwapSpec::new(SurdReal::one(), SurdReal::zero(), SurdReal::one());
        let two = adjacent.to_iet(&unit_base(2)).unwrap();
        assert_eq!(two.num_blocks(), 2);
        assert_eq!(two.perm(), &[1, 0]);
    }

    #[test]
    fn rotation_with_fixed_tail() {
        let base = unit_base(3);
        let r = RotationSpec::new(SurdReal::one(), SurdReal::sqrt(2), SurdReal::zero());
        let f = r.to_iet(&base).unwrap();
        assert_eq!(f.num_blocks(), 3);
        assert!(f.shifts()[2].is_zero());
    }

    #[test]
    fn spec_errors() {
        let base = unit_base(3);
        let too_big = RotationSpec::new(
            SurdReal::from_int(2),
            SurdReal::from_int(2),
            SurdReal::zero(),
        );
        assert_eq!(too_big.to_iet(&base), Err(IetError::SupportOutsideBase));
        let overlap = SwapSpec::new(SurdReal::one(), SurdReal::zero(), s("1/2"));
        assert_eq!(overlap.to_iet(&base), Err(IetError::OverlappingBlocks));
    }

    #[test]
    fn refinement_gives_same_map() {
        let base = unit_base(3);
        let f = Iet::new(base.clone(), vec![s("1/2"), s("5/2")], vec![1, 0]).unwrap();
        let g = Iet::new(
            base,
            vec![s("1/4"), s("1/4"), s("1"), s("3/2")],
            vec![2, 3, 0, 1],
        )
        .unwrap();
        assert_eq!(f, g);
        let pieces = f.refined_pieces(&[s("1"), s("sqrt(2)")]);
        assert_eq!(pieces.len(), 4);
        assert_eq!(Iet::from_pieces(f.base(), pieces).unwrap(), f);
    }

    #[test]
    fn support_examples() {
        let base = unit_base(10);
        assert!(Iet::identity(&base).support().is_empty());
        let r = RotationSpec::new(s("1"), s("sqrt(2)"), s("2"));
        let f = r.to_iet(&base).unwrap();
        assert_eq!(f.support(), vec![r.support().unwrap()]);
        let sw = SwapSpec::new(s("1/2"), s("1"), s("4"));
        let g = sw.to_iet(&base).unwrap();
        let (b1, b2) = sw.blocks().unwrap();
        assert_eq!(g.support(), vec![b1, b2]);
    }

    #[test]
    fn order_examples() {
        let base = unit_base(3);
        let swap = SwapSpec::new(SurdReal::one(), SurdReal::zero(), SurdReal::from_int(2));
        assert_eq!(
            swap.to_iet(&base).unwrap().order(DEFAULT_MAX_ORDER),
            OrderResult::Finite(2)
        );
        let r = RotationSpec::new(SurdReal::one(), SurdReal::from_int(2), SurdReal::zero());
        assert_eq!(
            r.to_iet(&base).unwrap().order(DEFAULT_MAX_ORDER),
            OrderResult::Finite(3)
        );
        let irr = RotationSpec::new(SurdReal::one(), SurdReal::sqrt(2), SurdReal::zero());
        assert_eq!(
            irr.to_iet(&base).unwrap().order(DEFAULT_MAX_ORDER),
            OrderResult::Infinite
        );
        assert_eq!(Iet::identity(&base).order(10), OrderResult::Finite(1));
        let r5 = RotationSpec::new(SurdReal::one(), SurdReal::from_int(4), SurdReal::zero());
        let five = r5.to_iet(&unit_base(5)).unwrap();
        assert_eq!(five.order(3), OrderResult::BoundExceeded(3));
    }

    #[test]
    fn cycles_reject_bad_input() {
        assert!(perm_from_cycles(3, &[vec![1, 4]]).is_err());
        assert!(perm_from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert_eq!(perm_from_cycles(3, &[]).unwrap(), vec![0, 1, 2]);
    }
}
