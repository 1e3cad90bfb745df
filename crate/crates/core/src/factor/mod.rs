//! Constructive factorizations with recomposable certificates.
//!
//! Every factorization is returned as a [`Factorization`]: an ordered list of
//! factors together with the map they are claimed to compose to. Factors are
//! listed in written order, so `[h1, h2, ..., hm]` stands for the product
//! `h1 ∘ h2 ∘ ... ∘ hm` and `hm` is applied first. [`Factorization::product`]
//! is the single recomposition routine used to check certificates.

use thiserror::Error;

use crate::exact::SurdReal;
use crate::iet::{Iet, IetError, Interval, RotationSpec, SwapSpec};
use crate::saf::{SafError, TensorQQ};

mod commutator;
mod elementary;
mod rebase;
mod simple;

pub use commutator::{
    balanced_rotations, balanced_rotations_factorization, balanced_to_swaps, is_balanced,
    rotation_commutator_to_swaps, rotation_pair_to_swaps, rotation_reduce_small,
    zero_saf_to_commutators, zero_saf_to_swaps, SmallRotation,
};
pub use elementary::{
    adjacent_transpositions, conjugator_for_disjoint_swaps, default_rotation,
    disjoint_rotations_to_swaps, finite_order_to_swaps, rotation_step_reduce,
    rotations_factorization, rotations_from_description, small_swap_bound,
    small_swap_from_nontrivial, swap_as_commutator, DisjointConjugator, SmallSwap, SwapCommutator,
};
pub use rebase::{rebase_nonneg_integer, solve_rational, Rebase};
pub use simple::{
    conjugate_same_type_small, refine_swap, simplicity_witness, ConjugationCertificate,
    SimplicityWitness, SmallSwapDerivation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error(transparent)]
    Iet(#[from] IetError),
    #[error(transparent)]
    Saf(#[from] SafError),
    #[error("SAF invariant is nonzero: {0}")]
    NonzeroSaf(TensorQQ),
    #[error("transformation does not have finite order")]
    NotFiniteOrder,
    #[error("order search exceeded the bound {0}")]
    BoundExceeded(u64),
    #[error("factors must have the same type")]
    TypeMismatch,
    #[error("supports overlap")]
    OverlappingSupports,
    #[error("rotation type (a, b) must satisfy a > b")]
    PreconditionAB,
    #[error("input is the identity")]
    IdentityInput,
    #[error("eps must be smaller than {eps0}")]
    EpsTooLarge { eps0: SurdReal },
    #[error("eps must be positive")]
    NonPositiveEps,
    #[error("lengths must be positive")]
    NonPositiveInput,
    #[error("rotation product is not balanced")]
    NotBalanced,
    #[error("swap type must be smaller than a tenth of the base width")]
    TypeTooLarge,
}

/// One certified factor.
#[derive(Debug, Clone, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Factor {
    Rotation(RotationSpec),
    Swap(SwapSpec),
    /// `u⁻¹ ∘ v⁻¹ ∘ u ∘ v`.
    Commutator(Iet, Iet),
}

impl Factor {
    pub fn to_iet(&self, base: &Interval) -> Result<Iet, IetError> {
        match self {
            Factor::Rotation(r) => r.to_iet(base),
            Factor::Swap(s) => s.to_iet(base),
            Factor::Commutator(u, v) => {
                let uv = u.compose(v)?;
                u.inverse().compose(&v.inverse())?.compose(&uv)
            }
        }
    }
}

/// Ordered factor list claimed to compose to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub base: Interval,
    pub factors: Vec<Factor>,
    pub target: Iet,
}

impl Factorization {
    pub fn from_swaps(base: &Interval, swaps: Vec<SwapSpec>, target: Iet) -> Self {
        Factorization {
            base: base.clone(),
            factors: swaps.into_iter().map(Factor::Swap).collect(),
            target,
        }
    }

    pub fn from_rotations(base: &Interval, rotations: Vec<RotationSpec>, target: Iet) -> Self {
        Factorization {
            base: base.clone(),
            factors: rotations.into_iter().map(Factor::Rotation).collect(),
            target,
        }
    }

    /// `factors[0] ∘ factors[1] ∘ ... ∘ factors[n-1]`.
    pub fn product(&self) -> Result<Iet, IetError> {
        product_of(
            &self.base,
            self.factors.iter().map(|f| f.to_iet(&self.base)),
        )
    }

    /// True when the factors recompose exactly to the target.
    pub fn verify(&self) -> bool {
        self.target.base() == &self.base && self.product().is_ok_and(|p| p == self.target)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn swaps(&self) -> impl Iterator<Item = &SwapSpec> {
        self.factors.iter().filter_map(|f| match f {
            Factor::Swap(s) => Some(s),
            _ => None,
        })
    }

    pub fn rotations(&self) -> impl Iterator<Item = &RotationSpec> {
        self.factors.iter().filter_map(|f| match f {
            Factor::Rotation(r) => Some(r),
            _ => None,
        })
    }
}

pub(crate) fn product_of<I>(base: &Interval, maps: I) -> Result<Iet, IetError>
where
    I: IntoIterator<Item = Result<Iet, IetError>>,
{
    // pairwise, so long lists never drag one large partial product along
    let mut level = maps.into_iter().collect::<Result<Vec<_>, _>>()?;
    if level.is_empty() {
        return Ok(Iet::identity(base));
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(f) = it.next() {
            next.push(match it.next() {
                Some(g) => f.compose(&g)?,
                None => f,
            });
        }
        level = next;
    }
    Ok(level.pop().unwrap())
}

pub(crate) fn rotation_product(
    base: &Interval,
    rotations: &[RotationSpec],
) -> Result<Iet, IetError> {
    product_of(base, rotations.iter().map(|r| r.to_iet(base)))
}

/// The swap a restricted rotation of type `(a, a)` coincides with.
pub(crate) fn rotation_as_swap(r: &RotationSpec) -> SwapSpec {
    SwapSpec::new(r.a.clone(), r.start.clone(), &r.start + &r.a)
}
