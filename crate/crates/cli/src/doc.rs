//! JSON documents. Every number is surd text, permutations are 1-based.

use iet_core::factor::{
    ConjugationCertificate, DisjointConjugator, Factor, Factorization, SimplicityWitness,
    SmallSwap, SmallSwapDerivation, SwapCommutator,
};
use iet_core::iet::perm_from_cycles;
use iet_core::{Iet, IetError, Interval, RotationSpec, SurdReal, SwapSpec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid document: {0}")]
    Iet(#[from] IetError),
}

mod surd_text {
    use iet_core::SurdReal;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &SurdReal, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SurdReal, D::Error> {
        let text = String::deserialize(d)?;
        text.parse()
            .map_err(|e| D::Error::custom(format!("surd text {text:?}: {e}")))
    }
}

mod surd_list {
    use iet_core::SurdReal;
    use serde::ser::SerializeSeq;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[SurdReal], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<SurdReal>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|text| {
                text.parse()
                    .map_err(|e| D::Error::custom(format!("surd text {text:?}: {e}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    #[serde(with = "surd_text")]
    pub lo: SurdReal,
    #[serde(with = "surd_text")]
    pub hi: SurdReal,
}

impl IntervalDoc {
    pub fn from_interval(base: &Interval) -> Self {
        IntervalDoc {
            lo: base.lo().clone(),
            hi: base.hi().clone(),
        }
    }

    pub fn to_interval(&self) -> Result<Interval, DocError> {
        Ok(Interval::new(self.lo.clone(), self.hi.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermDoc {
    OneLine(Vec<usize>),
    Cycles { cycles: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IetDocument {
    pub interval: IntervalDoc,
    #[serde(with = "surd_list")]
    pub lengths: Vec<SurdReal>,
    pub perm: PermDoc,
}

impl IetDocument {
    pub fn from_iet(f: &Iet) -> Self {
        IetDocument {
            interval: IntervalDoc::from_interval(f.base()),
            lengths: f.lengths().to_vec(),
            perm: PermDoc::OneLine(f.perm().iter().map(|&p| p + 1).collect()),
        }
    }

    pub fn to_iet(&self) -> Result<Iet, DocError> {
        let k = self.lengths.len();
        let perm = match &self.perm {
            PermDoc::OneLine(p) => {
                if p.len() != k || p.iter().any(|&i| i == 0 || i > k) {
                    return Err(IetError::InvalidPermutation.into());
                }
                p.iter().map(|&i| i - 1).collect()
            }
            PermDoc::Cycles { cycles } => perm_from_cycles(k, cycles)?,
        };
        Ok(Iet::new(
            self.interval.to_interval()?,
            self.lengths.clone(),
            perm,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapFields {
    #[serde(with = "surd_text")]
    pub a: SurdReal,
    #[serde(with = "surd_text")]
    pub x: SurdReal,
    #[serde(with = "surd_text")]
    pub y: SurdReal,
}

impl From<&SwapSpec> for SwapFields {
    fn from(s: &SwapSpec) -> Self {
        SwapFields {
            a: s.a.clone(),
            x: s.x.clone(),
            y: s.y.clone(),
        }
    }
}

impl SwapFields {
    pub fn spec(&self) -> SwapSpec {
        SwapSpec::new(self.a.clone(), self.x.clone(), self.y.clone())
    }
}

/// A swap `[x, x+a) ↔ [y, y+a)` on a base interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapDocument {
    pub interval: IntervalDoc,
    #[serde(with = "surd_text")]
    pub a: SurdReal,
    #[serde(with = "surd_text")]
    pub x: SurdReal,
    #[serde(with = "surd_text")]
    pub y: SurdReal,
}

impl SwapDocument {
    pub fn new(base: &Interval, s: &SwapSpec) -> Self {
        SwapDocument {
            interval: IntervalDoc::from_interval(base),
            a: s.a.clone(),
            x: s.x.clone(),
            y: s.y.clone(),
        }
    }

    pub fn to_swap(&self) -> Result<(Interval, SwapSpec), DocError> {
        let base = self.interval.to_interval()?;
        let s = SwapSpec::new(self.a.clone(), self.x.clone(), self.y.clone());
        s.to_iet(&base)?;
        Ok((base, s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FactorDoc {
    Rotation {
        #[serde(with = "surd_text")]
        a: SurdReal,
        #[serde(with = "surd_text")]
        b: SurdReal,
        #[serde(with = "surd_text")]
        start: SurdReal,
    },
    Swap {
        #[serde(with = "surd_text")]
        a: SurdReal,
        #[serde(with = "surd_text")]
        x: SurdReal,
        #[serde(with = "surd_text")]
        y: SurdReal,
    },
    /// `u⁻¹ ∘ v⁻¹ ∘ u ∘ v`.
    Commutator { u: IetDocument, v: IetDocument },
}

impl FactorDoc {
    fn from_factor(f: &Factor) -> Self {
        match f {
            Factor::Rotation(r) => FactorDoc::Rotation {
                a: r.a.clone(),
                b: r.b.clone(),
                start: r.start.clone(),
            },
            Factor::Swap(s) => FactorDoc::Swap {
                a: s.a.clone(),
                x: s.x.clone(),
                y: s.y.clone(),
            },
            Factor::Commutator(u, v) => FactorDoc::Commutator {
                u: IetDocument::from_iet(u),
                v: IetDocument::from_iet(v),
            },
        }
    }

    fn to_factor(&self) -> Result<Factor, DocError> {
        Ok(match self {
            FactorDoc::Rotation { a, b, start } => {
                Factor::Rotation(RotationSpec::new(a.clone(), b.clone(), start.clone()))
            }
            FactorDoc::Swap { a, x, y } => {
                Factor::Swap(SwapSpec::new(a.clone(), x.clone(), y.clone()))
            }
            FactorDoc::Commutator { u, v } => Factor::Commutator(u.to_iet()?, v.to_iet()?),
        })
    }
}

/// Factors are listed in written order: the target is `h1 ∘ h2 ∘ ... ∘ hm`,
/// so the last factor acts first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDocument {
    pub target: IetDocument,
    pub factors: Vec<FactorDoc>,
    pub verified: bool,
}

impl CertificateDocument {
    pub fn from_factorization(cert: &Factorization) -> Self {
        CertificateDocument {
            target: IetDocument::from_iet(&cert.target),
            factors: cert.factors.iter().map(FactorDoc::from_factor).collect(),
            verified: cert.verify(),
        }
    }

    pub fn to_factorization(&self) -> Result<Factorization, DocError> {
        let target = self.target.to_iet()?;
        let factors = self
            .factors
            .iter()
            .map(FactorDoc::to_factor)
            .collect::<Result<Vec<_>, _>>()?;
        for f in &factors {
            f.to_iet(target.base())?;
        }
        Ok(Factorization {
            base: target.base().clone(),
            factors,
            target,
        })
    }

    /// Recomposes the factors and compares against the target.
    pub fn check(&self) -> Result<bool, DocError> {
        Ok(self.to_factorization()?.verify())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugatorDoc {
    pub swaps: [SwapFields; 2],
    pub g: IetDocument,
}

impl ConjugatorDoc {
    fn new(c: &DisjointConjugator) -> Self {
        ConjugatorDoc {
            swaps: [(&c.swaps[0]).into(), (&c.swaps[1]).into()],
            g: IetDocument::from_iet(&c.g),
        }
    }

    fn load(&self) -> Result<DisjointConjugator, DocError> {
        Ok(DisjointConjugator {
            swaps: [self.swaps[0].spec(), self.swaps[1].spec()],
            g: self.g.to_iet()?,
        })
    }
}

/// `s1 = g⁻¹ ∘ s2 ∘ g` with `g = g2 ∘ g1` and each `gi` an involution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugationDocument {
    pub interval: IntervalDoc,
    pub s1: SwapFields,
    pub s2: SwapFields,
    pub middle: SwapFields,
    pub g1: ConjugatorDoc,
    pub g2: ConjugatorDoc,
    pub g: IetDocument,
    pub verified: bool,
}

impl ConjugationDocument {
    pub fn new(c: &ConjugationCertificate, base: &Interval) -> Self {
        ConjugationDocument {
            interval: IntervalDoc::from_interval(base),
            s1: (&c.s1).into(),
            s2: (&c.s2).into(),
            middle: (&c.middle).into(),
            g1: ConjugatorDoc::new(&c.g1),
            g2: ConjugatorDoc::new(&c.g2),
            g: IetDocument::from_iet(&c.g),
            verified: c.verify(base),
        }
    }

    pub fn load(&self) -> Result<(Interval, ConjugationCertificate), DocError> {
        let cert = ConjugationCertificate {
            s1: self.s1.spec(),
            s2: self.s2.spec(),
            middle: self.middle.spec(),
            g1: self.g1.load()?,
            g2: self.g2.load()?,
            g: self.g.to_iet()?,
        };
        Ok((self.interval.to_interval()?, cert))
    }

    pub fn check(&self) -> Result<bool, DocError> {
        let (base, cert) = self.load()?;
        Ok(cert.verify(&base))
    }
}

/// A swap written as `u⁻¹ ∘ v⁻¹ ∘ u ∘ v` with `u = g3`, `v = g1 ∘ g2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapCommutatorDoc {
    pub g1: SwapFields,
    pub g2: SwapFields,
    pub g3: SwapFields,
    pub u: IetDocument,
    pub v: IetDocument,
}

impl SwapCommutatorDoc {
    fn new(c: &SwapCommutator) -> Self {
        SwapCommutatorDoc {
            g1: (&c.g1).into(),
            g2: (&c.g2).into(),
            g3: (&c.g3).into(),
            u: IetDocument::from_iet(&c.u),
            v: IetDocument::from_iet(&c.v),
        }
    }

    fn load(&self) -> Result<SwapCommutator, DocError> {
        Ok(SwapCommutator {
            g1: self.g1.spec(),
            g2: self.g2.spec(),
            g3: self.g3.spec(),
            u: self.u.to_iet()?,
            v: self.v.to_iet()?,
        })
    }
}

/// `swap = (g2⁻¹ ∘ f⁻¹ ∘ g2) ∘ (c⁻¹ ∘ f ∘ c)` with `c = g1 ∘ g2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub swap: SwapFields,
    pub g1: SwapFields,
    pub g2: SwapFields,
    #[serde(with = "surd_text")]
    pub eps0: SurdReal,
    pub g1_commutator: SwapCommutatorDoc,
    pub g2_commutator: SwapCommutatorDoc,
}

impl DerivationDoc {
    fn new(d: &SmallSwapDerivation) -> Self {
        DerivationDoc {
            swap: (&d.small.swap).into(),
            g1: (&d.small.g1).into(),
            g2: (&d.small.g2).into(),
            eps0: d.small.eps0.clone(),
            g1_commutator: SwapCommutatorDoc::new(&d.g1_commutator),
            g2_commutator: SwapCommutatorDoc::new(&d.g2_commutator),
        }
    }

    fn load(&self) -> Result<SmallSwapDerivation, DocError> {
        Ok(SmallSwapDerivation {
            small: SmallSwap {
                g1: self.g1.spec(),
                g2: self.g2.spec(),
                swap: self.swap.spec(),
                eps0: self.eps0.clone(),
            },
            g1_commutator: self.g1_commutator.load()?,
            g2_commutator: self.g2_commutator.load()?,
        })
    }
}

/// Output of `iet simplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicityDocument {
    pub f: IetDocument,
    #[serde(with = "surd_text")]
    pub eps: SurdReal,
    pub derivation: DerivationDoc,
    pub sample: ConjugationDocument,
    pub probe: CertificateDocument,
    #[serde(with = "surd_text")]
    pub delta: SurdReal,
    pub probe_derivation: DerivationDoc,
    pub probe_conjugations: Vec<ConjugationDocument>,
    pub verified: bool,
}

impl SimplicityDocument {
    pub fn new(w: &SimplicityWitness) -> Self {
        let base = w.f.base();
        SimplicityDocument {
            f: IetDocument::from_iet(&w.f),
            eps: w.eps.clone(),
            derivation: DerivationDoc::new(&w.derivation),
            sample: ConjugationDocument::new(&w.sample, base),
            probe: CertificateDocument::from_factorization(&w.probe),
            delta: w.delta.clone(),
            probe_derivation: DerivationDoc::new(&w.probe_derivation),
            probe_conjugations: w
                .probe_conjugations
                .iter()
                .map(|c| ConjugationDocument::new(c, base))
                .collect(),
            verified: w.verify(),
        }
    }

    pub fn load(&self) -> Result<SimplicityWitness, DocError> {
        let f = self.f.to_iet()?;
        let conj = |c: &ConjugationDocument| -> Result<ConjugationCertificate, DocError> {
            let (base, cert) = c.load()?;
            if &base != f.base() {
                return Err(IetError::BaseMismatch.into());
            }
            Ok(cert)
        };
        Ok(SimplicityWitness {
            eps: self.eps.clone(),
            derivation: self.derivation.load()?,
            sample: conj(&self.sample)?,
            probe: self.probe.to_factorization()?,
            delta: self.delta.clone(),
            probe_derivation: self.probe_derivation.load()?,
            probe_conjugations: self
                .probe_conjugations
                .iter()
                .map(conj)
                .collect::<Result<_, _>>()?,
            f,
        })
    }

    pub fn check(&self) -> Result<bool, DocError> {
        Ok(self.load()?.verify())
    }
}

/// Any document `iet verify --certificate` knows how to re-check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum CheckableDocument {
    Certificate(CertificateDocument),
    Conjugation(ConjugationDocument),
    Simplicity(SimplicityDocument),
}

impl CheckableDocument {
    /// Re-verifies from scratch; the stored `verified` flag is ignored.
    pub fn check(&self) -> Result<bool, DocError> {
        match self {
            CheckableDocument::Certificate(c) => c.check(),
            CheckableDocument::Conjugation(c) => c.check(),
            CheckableDocument::Simplicity(c) => c.check(),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    text
}

pub fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, DocError> {
    Ok(serde_json::from_str(text)?)
}
