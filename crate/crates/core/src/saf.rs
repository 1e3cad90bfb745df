//! The scissors congruence (Sah–Arnoux–Fathi) invariant.
//!
//! Elements of ℝ⊗_ℚℝ generated by surd reals are stored as sparse rational
//! coordinates over the basis `√d ⊗ √e`. Since the `√d` are independent over
//! ℚ, so are the `√d ⊗ √e`, and equality of tensors is equality of maps.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{rat, Rational, SurdReal};
use crate::iet::{Iet, Interval, RotationSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SafError {
    #[error("input must be positive")]
    NonPositiveInput,
}

/// Sparse element of ℝ⊗_ℚℝ: `Σ entries[(d, e)] · (√d ⊗ √e)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TensorQQ {
    entries: BTreeMap<(u64, u64), Rational>,
}

impl TensorQQ {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero coordinates sorted by `(d, e)`.
    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &Rational)> {
        self.entries.iter()
    }

    pub fn get(&self, d: u64, e: u64) -> Rational {
        self.entries
            .get(&(d, e))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn add_entry(&mut self, key: (u64, u64), q: Rational) {
        let slot = self.entries.entry(key).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &SurdReal, b: &SurdReal) -> Self {
        let mut t = Self::zero();
        t.add_tensor(a, b);
        t
    }

    fn add_tensor(&mut self, a: &SurdReal, b: &SurdReal) {
        for (d, u) in a.terms() {
            for (e, v) in b.terms() {
                self.add_entry((*d, *e), u * v);
            }
        }
    }

    pub fn add(&self, other: &TensorQQ) -> TensorQQ {
        let mut out = self.clone();
        for (k, q) in &other.entries {
            out.add_entry(*k, q.clone());
        }
        out
    }

    pub fn neg(&self) -> TensorQQ {
        TensorQQ {
            entries: self.entries.iter().map(|(k, q)| (*k, -q)).collect(),
        }
    }

    pub fn sub(&self, other: &TensorQQ) -> TensorQQ {
        self.add(&other.neg())
    }

    /// True when the element lies in ℝ∧_ℚℝ, i.e. its coordinate matrix is
    /// antisymmetric.
    pub fn is_antisymmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(d, e), q)| d != e && self.get(e, d) == -q)
    }
}

impl fmt::Display for TensorQQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((d, e), q)| format!("({d},{e}):{q}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for TensorQQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorQQ{self}")
    }
}

/// `a ∧ b = a ⊗ b − b ⊗ a`.
pub fn wedge(a: &SurdReal, b: &SurdReal) -> TensorQQ {
    let mut t = TensorQQ::zero();
    for (d, u) in a.terms() {
        for (e, v) in b.terms() {
            if d != e {
                let p = u * v;
                t.add_entry((*d, *e), p.clone());
                t.add_entry((*e, *d), -p);
            }
        }
    }
    t
}

/// `Σ λ_i ⊗ t_i` over blocks given as `(length, translation)`.
pub fn saf_of_pieces<'a, I>(pieces: I) -> TensorQQ
where
    I: IntoIterator<Item = (&'a SurdReal, &'a SurdReal)>,
{
    let mut t = TensorQQ::zero();
    for (len, shift) in pieces {
        t.add_tensor(len, shift);
    }
    t
}

/// SAF invariant of `f`, computed over its canonical partition.
pub fn saf(f: &Iet) -> TensorQQ {
    saf_of_pieces(f.lengths().iter().zip(f.shifts()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EuclidTerminal {
    SumBelowEps,
    EqualPair,
}

/// Pairs produced by repeatedly subtracting the smaller entry from the
/// larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidTrace {
    pub pairs: Vec<(SurdReal, SurdReal)>,
    pub terminal: EuclidTerminal,
}

impl EuclidTrace {
    pub fn last(&self) -> &(SurdReal, SurdReal) {
        self.pairs.last().expect("trace is never empty")
    }
}

/// Subtractive reduction of `(a, b)`: stops once `a_n + b_n < eps` (checked
/// first) or `a_n = b_n`.
pub fn euclid_pairs(a: &SurdReal, b: &SurdReal, eps: &SurdReal) -> Result<EuclidTrace, SafError> {
    if !a.is_positive() || !b.is_positive() || !eps.is_positive() {
        return Err(SafError::NonPositiveInput);
    }
    let mut pairs = vec![(a.clone(), b.clone())];
    loop {
        let (x, y) = pairs.last().expect("nonempty");
        if &(x + y) < eps {
            return Ok(EuclidTrace {
                pairs,
                terminal: EuclidTerminal::SumBelowEps,
            });
        }
        if x == y {
            return Ok(EuclidTrace {
                pairs,
                terminal: EuclidTerminal::EqualPair,
            });
        }
        let next = if x > y {
            (x - y, y.clone())
        } else {
            (x.clone(), y - x)
        };
        pairs.push(next);
    }
}

/// A positive pair `(a0, b0)` with `a0 + b0 < eps` and `a0 ∧ b0 = a ∧ b`.
/// A zero wedge (including `a = 0` or `b = 0`) gives `(eps/4, eps/4)`.
pub fn shrink_wedge(
    a: &SurdReal,
    b: &SurdReal,
    eps: &SurdReal,
) -> Result<(SurdReal, SurdReal), SafError> {
    if !eps.is_positive() {
        return Err(SafError::NonPositiveInput);
    }
    if wedge(a, b).is_zero() {
        let c = eps.scale(&rat(1, 4));
        return Ok((c.clone(), c));
    }
    let (x, y) = match (a.is_positive(), b.is_positive()) {
        (true, true) => (a.clone(), b.clone()),
        (false, false) => (-a, -b),
        // (-a)∧b = b∧a and a∧(-b) = b∧a
        (false, true) => (b.clone(), -a),
        (true, false) => (-b, a.clone()),
    };
    let trace = euclid_pairs(&x, &y, eps)?;
    debug_assert_eq!(trace.terminal, EuclidTerminal::SumBelowEps);
    Ok(trace.last().clone())
}

/// Restricted rotations at the left end of `base` whose product has SAF
/// invariant `Σ a_i ∧ b_i`.
pub fn realizing_rotations(base: &Interval, wedges: &[(SurdReal, SurdReal)]) -> Vec<RotationSpec> {
    let width = base.width();
    wedges
        .iter()
        .map(|(a, b)| {
            let (a0, b0) = shrink_wedge(a, b, &width).expect("width is positive");
            RotationSpec::new(a0, b0, base.lo().clone())
        })
        .collect()
}

/// A map on `base` whose SAF invariant is `Σ a_i ∧ b_i`.
pub fn realize_saf(base: &Interval, wedges: &[(SurdReal, SurdReal)]) -> Iet {
    realizing_rotations(base, wedges)
        .iter()
        .fold(Iet::identity(base), |acc, r| {
            let f = r.to_iet(base).expect("rotation fits in base");
            acc.compose(&f).expect("same base")
        })
}
