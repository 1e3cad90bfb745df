//! Every factorization recomposes exactly to its declared target.

use iet_core::exact::rat;
use iet_core::factor::*;
use iet_core::iet::DEFAULT_MAX_ORDER;
use iet_core::sample::SurdSampler;
use iet_core::{saf, Iet, Interval, OrderResult, SurdReal, SwapSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CASES: u64 = 200;
/// The zero-SAF pipelines are much slower per case.
const PIPELINE_CASES: u64 = 60;

/// Runs `body` on `CASES` seeded instances, cycling through the radicand
/// sets {1}, {1,2}, {1,2,3}.
fn each_case(salt: u64, body: impl FnMut(&mut ChaCha8Rng, &SurdSampler, &Interval)) {
    each_of(salt, CASES, body)
}

fn each_of(salt: u64, cases: u64, mut body: impl FnMut(&mut ChaCha8Rng, &SurdSampler, &Interval)) {
    let sets: [&[u64]; 3] = [&[1], &[1, 2], &[1, 2, 3]];
    for n in 0..cases {
        let mut rng = ChaCha8Rng::seed_from_u64(salt * 1_000_003 + n);
        let sm = SurdSampler::new(sets[(n % 3) as usize]);
        let base = sm.base(&mut rng);
        body(&mut rng, &sm, &base);
    }
}

fn type_set(f: &Iet) -> Vec<&SurdReal> {
    f.lengths().iter().collect()
}

#[test]
fn rotations_factorization_sound() {
    each_case(1, |rng, sm, base| {
        let f = sm.iet(rng, base, 8);
        let cert = rotations_factorization(&f);
        assert!(cert.verify());
        assert_eq!(cert.rotations().count(), cert.len());
        if f.num_blocks() >= 2 {
            let lengths = type_set(&f);
            for r in cert.rotations() {
                assert!(lengths.contains(&&r.a) && lengths.contains(&&r.b));
            }
        }
    });
}

#[test]
fn finite_order_to_swaps_sound() {
    each_case(2, |rng, sm, base| {
        // rational maps and conjugated swaps both have finite order
        let f = if sm.radicands == [1] {
            sm.iet(rng, base, 8)
        } else {
            let s = sm.swap(rng, base).to_iet(base).unwrap();
            s.conjugate_by(&sm.iet(rng, base, 5)).unwrap()
        };
        let cert = finite_order_to_swaps(&f, DEFAULT_MAX_ORDER).unwrap();
        assert!(cert.verify());
        for s in cert.swaps() {
            assert_eq!(s.to_iet(base).unwrap().order(4), OrderResult::Finite(2));
        }
    });
}

#[test]
fn swap_as_commutator_sound() {
    each_case(3, |rng, sm, base| {
        let s = sm.swap(rng, base);
        let c = swap_as_commutator(&s, base).unwrap();
        let id = Iet::identity(base);
        assert_eq!(c.u.compose(&c.u).unwrap(), id);
        assert_eq!(c.v.compose(&c.v).unwrap(), id);
        let comm = Factor::Commutator(c.u.clone(), c.v.clone())
            .to_iet(base)
            .unwrap();
        assert_eq!(comm, s.to_iet(base).unwrap());
    });
}

#[test]
fn disjoint_swap_conjugator_sound() {
    each_case(4, |rng, sm, base| {
        // two swaps of the same type inside the left and right halves
        let w = base.width();
        let a = sm.below(rng, &w.scale(&rat(1, 4)));
        let quarter = &w.scale(&rat(1, 4)) - &a;
        let x1 = base.lo() + &sm.below(rng, &quarter);
        let s1 = SwapSpec::new(a.clone(), x1.clone(), &x1 + &w.scale(&rat(1, 4)));
        let x2 = &(base.lo() + &w.half()) + &sm.below(rng, &quarter);
        let s2 = SwapSpec::new(a, x2.clone(), &x2 + &w.scale(&rat(1, 4)));
        let c = conjugator_for_disjoint_swaps(&s1, &s2, base).unwrap();
        assert!(c.g.compose(&c.g).unwrap().is_identity());
        let f1 = s1.to_iet(base).unwrap();
        assert_eq!(
            c.g.compose(&f1).unwrap().compose(&c.g).unwrap(),
            s2.to_iet(base).unwrap()
        );
    });
}

#[test]
fn rotation_steps_sound() {
    each_case(5, |rng, sm, base| {
        let r = sm.rotation(rng, base);
        let f = r.to_iet(base).unwrap();
        if r.a > r.b {
            let (g1, h, g2) = rotation_step_reduce(&r, base).unwrap();
            let h = h.to_iet(base).unwrap();
            assert_eq!(g1.to_iet(base).unwrap().compose(&f).unwrap(), h);
            assert_eq!(f.compose(&g2.to_iet(base).unwrap()).unwrap(), h);
        } else {
            assert_eq!(
                rotation_step_reduce(&r, base),
                Err(FactorError::PreconditionAB)
            );
        }
        let eps = sm.below(rng, &base.width());
        let small = rotation_reduce_small(&r, base, &eps).unwrap();
        assert!((&small.h.a + &small.h.b) < eps);
        assert!(small.tail.verify());
        let whole = small
            .h
            .to_iet(base)
            .unwrap()
            .compose(&small.tail.product().unwrap())
            .unwrap();
        assert_eq!(whole, f);
    });
}

#[test]
fn rotation_pairs_sound() {
    each_case(6, |rng, sm, base| {
        let r1 = sm.rotation(rng, base);
        let span = &r1.a + &r1.b;
        let start = base.lo() + &sm.below(rng, &(&base.width() - &span));
        let r2 = iet_core::RotationSpec::new(r1.a.clone(), r1.b.clone(), start);
        let cert = rotation_pair_to_swaps(&r1, &r2, base).unwrap();
        assert!(cert.verify());
        assert_eq!(cert.swaps().count(), cert.len());
        if !r1.support().unwrap().overlaps(&r2.support().unwrap()) {
            assert!(disjoint_rotations_to_swaps(&r1, &r2, base)
                .unwrap()
                .verify());
        }
    });
}

#[test]
fn rotation_commutators_sound() {
    each_case(7, |rng, sm, base| {
        let r = sm.rotation(rng, base);
        let g = sm.iet(rng, base, 6);
        let cert = rotation_commutator_to_swaps(&r, &g, base).unwrap();
        assert!(cert.verify());
        assert!(saf(&cert.target).is_zero());
    });
}

#[test]
fn balanced_pipeline_sound() {
    each_of(8, PIPELINE_CASES, |rng, sm, base| {
        let f = sm.zero_saf(rng, base);
        let rot = balanced_rotations_factorization(&f).unwrap();
        assert!(rot.verify());
        let list: Vec<_> = rot.rotations().cloned().collect();
        assert!(is_balanced(&list));
        let swaps = balanced_to_swaps(&list, base).unwrap();
        assert!(swaps.verify());
        assert_eq!(swaps.target, f);
    });
}

#[test]
fn zero_saf_pipelines_sound() {
    each_of(9, PIPELINE_CASES, |rng, sm, base| {
        let f = sm.zero_saf(rng, base);
        let swaps = zero_saf_to_swaps(&f).unwrap();
        assert!(swaps.verify());
        for s in swaps.swaps() {
            assert_eq!(s.to_iet(base).unwrap().order(4), OrderResult::Finite(2));
        }
        let comms = zero_saf_to_commutators(&f).unwrap();
        assert!(comms.verify());
        assert_eq!(comms.len(), swaps.len());
        if sm.radicands.len() > 1 {
            let g = sm.nonzero_saf(rng, base);
            assert!(matches!(
                zero_saf_to_swaps(&g),
                Err(FactorError::NonzeroSaf(_))
            ));
        }
    });
}

#[test]
fn refine_swap_sound() {
    each_case(10, |rng, sm, base| {
        let s = sm.swap(rng, base);
        let eps = sm.below(rng, &s.a.scale_int(2));
        let cert = refine_swap(&s, &eps, base).unwrap();
        assert!(cert.verify());
        let n = cert.len() as i64;
        assert!(cert.swaps().all(|p| p.a < eps));
        // no coarser split works
        if n > 1 {
            assert!(s.a.scale(&rat(1, n - 1)) >= eps);
        }
    });
}

#[test]
fn small_swaps_and_conjugation_sound() {
    each_case(11, |rng, sm, base| {
        let f = sm.iet(rng, base, 6);
        if f.is_identity() {
            assert_eq!(small_swap_bound(&f), Err(FactorError::IdentityInput));
            return;
        }
        let eps0 = small_swap_bound(&f).unwrap();
        let tenth = base.width().scale(&rat(1, 10));
        let cap = if eps0 < tenth { eps0 } else { tenth };
        let eps = sm.below(rng, &cap);
        let small = small_swap_from_nontrivial(&f, &eps).unwrap();
        let d = SmallSwapDerivation::new(&f, &eps).unwrap();
        assert!(d.verify(&f));
        assert_eq!(small.swap.a, eps);
        let other = SwapSpec::new(eps.clone(), base.lo().clone(), base.hi() - &eps);
        let c = conjugate_same_type_small(&other, &small.swap, base).unwrap();
        assert!(c.verify(base));
    });
}
