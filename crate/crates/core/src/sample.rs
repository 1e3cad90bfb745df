//! Random surd values and transformations for property tests and the
//! verification runner.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::exact::{rat, SurdReal};
use crate::iet::{Iet, Interval, RotationSpec, SwapSpec};
use crate::saf::saf;

/// Draws values from the lattice `(1/D)·(ℤ·√d_1 + ... + ℤ·√d_m)`, `D = max_den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdSampler {
    pub radicands: Vec<u64>,
    pub max_den: i64,
}

impl SurdSampler {
    pub fn new(radicands: &[u64]) -> Self {
        SurdSampler {
            radicands: radicands.to_vec(),
            max_den: 2,
        }
    }

    /// `[0, Σ √d)`, sometimes shifted by a small rational.
    pub fn base<R: Rng + ?Sized>(&self, rng: &mut R) -> Interval {
        let width = self
            .radicands
            .iter()
            .fold(SurdReal::zero(), |acc, &d| &acc + &SurdReal::sqrt(d));
        let lo = if rng.gen_bool(0.25) {
            SurdReal::from_rational(rat(rng.gen_range(-4..=4), rng.gen_range(1..=4)))
        } else {
            SurdReal::zero()
        };
        let hi = &lo + &width;
        Interval::new(lo, hi).expect("positive width")
    }

    fn fraction<R: Rng + ?Sized>(&self, rng: &mut R) -> (i64, i64) {
        (rng.gen_range(0..=self.max_den), self.max_den)
    }

    /// A value strictly between 0 and `span`.
    pub fn below<R: Rng + ?Sized>(&self, rng: &mut R, span: &SurdReal) -> SurdReal {
        for _ in 0..8 {
            let c = self.radicands.iter().fold(SurdReal::zero(), |acc, &d| {
                let (n, m) = self.fraction(rng);
                &acc + &SurdReal::term(rat(n, m), d)
            });
            if c.is_positive() && &c < span {
                return c;
            }
        }
        let den = rng.gen_range(2..=self.max_den);
        span.scale(&rat(rng.gen_range(1..den), den))
    }

    /// A value in `[0, span]`, hitting both ends now and then.
    fn upto<R: Rng + ?Sized>(&self, rng: &mut R, span: &SurdReal) -> SurdReal {
        match rng.gen_range(0..8) {
            0 => SurdReal::zero(),
            1 => span.clone(),
            _ => self.below(rng, span),
        }
    }

    /// Distinct sorted cut points inside the base, `k - 1` of them at most.
    fn cuts<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval, k: usize) -> Vec<SurdReal> {
        let w = base.width();
        let mut cuts: Vec<SurdReal> = (1..k).map(|_| base.lo() + &self.below(rng, &w)).collect();
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// Random IET with at most `max_k` blocks.
    pub fn iet<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval, max_k: usize) -> Iet {
        let k = rng.gen_range(1..=max_k.max(1));
        let mut points = vec![base.lo().clone()];
        points.extend(self.cuts(rng, base, k));
        points.push(base.hi().clone());
        let lengths: Vec<SurdReal> = points.windows(2).map(|p| &p[1] - &p[0]).collect();
        let mut perm: Vec<usize> = (0..lengths.len()).collect();
        perm.shuffle(rng);
        Iet::new(base.clone(), lengths, perm).expect("cuts tile the base")
    }

    pub fn swap<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval) -> SwapSpec {
        let w = base.width();
        let a = self.below(rng, &w.half());
        let slack = &w - &a.scale_int(2);
        let mut gaps = [self.upto(rng, &slack), self.upto(rng, &slack)];
        gaps.sort();
        let x = base.lo() + &gaps[0];
        let y = &(&x + &a) + &(&gaps[1] - &gaps[0]);
        SwapSpec::new(a, x, y)
    }

    pub fn rotation<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval) -> RotationSpec {
        let w = base.width();
        let span = self.below(rng, &w);
        let a = self.below(rng, &span);
        let b = &span - &a;
        let start = base.lo() + &self.upto(rng, &(&w - &span));
        RotationSpec::new(a, b, start)
    }

    /// A commutator of two random IETs with at most three blocks, times at
    /// most one random swap. Trivial commutators are redrawn a few times.
    pub fn zero_saf<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval) -> Iet {
        let mut f = Iet::identity(base);
        for _ in 0..8 {
            let u = self.iet(rng, base, 3);
            let v = self.iet(rng, base, 3);
            f = u
                .inverse()
                .compose(&v.inverse())
                .and_then(|x| x.compose(&u))
                .and_then(|x| x.compose(&v))
                .expect("shared base");
            if !f.is_identity() {
                break;
            }
        }
        if rng.gen_bool(0.5) {
            let s = self.swap(rng, base).to_iet(base).expect("valid swap");
            f.compose(&s).expect("shared base")
        } else {
            f
        }
    }

    /// Random IET with nonzero SAF invariant. Needs at least two radicands.
    pub fn nonzero_saf<R: Rng + ?Sized>(&self, rng: &mut R, base: &Interval) -> Iet {
        assert!(
            self.radicands.len() >= 2,
            "rational lengths always give zero SAF"
        );
        for _ in 0..16 {
            let f = self.iet(rng, base, 6);
            if !saf(&f).is_zero() {
                return f;
            }
        }
        // a rotation of type (1/8, √d/4) fits in any base built by `base`
        let a = SurdReal::from_rational(rat(1, 8));
        let b = SurdReal::term(rat(1, 4), self.radicands[1]);
        RotationSpec::new(a, b, base.lo().clone())
            .to_iet(base)
            .expect("fits in base")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_objects_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for radicands in [vec![1], vec![1, 2], vec![1, 2, 3]] {
            let s = SurdSampler::new(&radicands);
            for _ in 0..50 {
                let base = s.base(&mut rng);
                let f = s.iet(&mut rng, &base, 8);
                assert!(f.num_blocks() <= 8);
                s.swap(&mut rng, &base).to_iet(&base).unwrap();
                s.rotation(&mut rng, &base).to_iet(&base).unwrap();
                assert!(saf(&s.zero_saf(&mut rng, &base)).is_zero());
                if radicands.len() > 1 {
                    assert!(!saf(&s.nonzero_saf(&mut rng, &base)).is_zero());
                }
            }
        }
    }

    #[test]
    fn seeded_runs_repeat() {
        let s = SurdSampler::new(&[1, 2, 3]);
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = s.base(&mut rng);
            (0..10)
                .map(|_| s.iet(&mut rng, &base, 5))
                .collect::<Vec<_>>()
        };
        assert_eq!(run(9), run(9));
    }
}
