use iet_core::saf::{euclid_pairs, realize_saf, EuclidTerminal};
use iet_core::sample::SurdSampler;
use iet_core::{saf, wedge, Iet, Interval, RotationSpec, SurdReal, TensorQQ};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(text: &str) -> SurdReal {
    text.parse().unwrap()
}

fn sampler(rng: &mut ChaCha8Rng) -> SurdSampler {
    let choices: [&[u64]; 3] = [&[1], &[1, 2], &[1, 2, 3]];
    SurdSampler::new(choices[rng.gen_range(0..3)])
}

/// SAF recomputed over the canonical partition refined by random cuts.
fn saf_refined(f: &Iet, rng: &mut ChaCha8Rng, sm: &SurdSampler) -> TensorQQ {
    let base = f.base();
    let cuts: Vec<SurdReal> = (0..rng.gen_range(1..6))
        .map(|_| base.lo() + &sm.below(rng, &base.width()))
        .collect();
    let pieces = f.refined_pieces(&cuts);
    assert!(pieces.len() >= f.num_blocks());
    iet_core::saf::saf_of_pieces(pieces.iter().map(|(l, t)| (l, t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn saf_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = sampler(&mut rng);
        let base = sm.base(&mut rng);
        let f = sm.iet(&mut rng, &base, 8);
        let g = sm.iet(&mut rng, &base, 8);
        prop_assert_eq!(saf(&f.compose(&g).unwrap()), saf(&f).add(&saf(&g)));
        prop_assert_eq!(saf(&f.inverse()), saf(&f).neg());
        prop_assert!(saf(&f).is_antisymmetric());
    }

    #[test]
    fn saf_ignores_refinement(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = sampler(&mut rng);
        let base = sm.base(&mut rng);
        let f = sm.iet(&mut rng, &base, 8);
        let direct = saf(&f);
        for _ in 0..3 {
            prop_assert_eq!(&saf_refined(&f, &mut rng, &sm), &direct);
        }
    }

    #[test]
    fn commutators_have_zero_saf(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = sampler(&mut rng);
        let base = sm.base(&mut rng);
        prop_assert!(saf(&sm.zero_saf(&mut rng, &base)).is_zero());
    }

    #[test]
    fn realize_saf_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sm = SurdSampler::new(&[1, 2, 3]);
        let base = sm.base(&mut rng);
        let span = SurdReal::from_int(3);
        let wedges: Vec<(SurdReal, SurdReal)> = (0..rng.gen_range(0..4))
            .map(|_| {
                let a = &sm.below(&mut rng, &span) - &SurdReal::one();
                let b = &sm.below(&mut rng, &span) - &SurdReal::one();
                (a, b)
            })
            .collect();
        let want = wedges.iter().fold(TensorQQ::zero(), |acc, (a, b)| acc.add(&wedge(a, b)));
        prop_assert_eq!(saf(&realize_saf(&base, &wedges)), want);
    }
}

#[test]
fn rotation_saf_entries() {
    let base = Interval::new(s("0"), s("10")).unwrap();
    let f = RotationSpec::new(s("1"), s("sqrt(2)"), s("0"))
        .to_iet(&base)
        .unwrap();
    let t = saf(&f);
    assert_eq!(t.to_string(), "{(1,2):1, (2,1):-1}");
    assert_eq!(t, wedge(&s("1"), &s("sqrt(2)")));
}

#[test]
fn euclid_trace_invariants() {
    for (a, b) in [
        ("3", "1"),
        ("sqrt(2)", "1"),
        ("1 + sqrt(2)", "2"),
        ("5/7", "3/11"),
    ] {
        for eps in ["1/2", "1/10"] {
            let (a, b, eps) = (s(a), s(b), s(eps));
            let trace = euclid_pairs(&a, &b, &eps).unwrap();
            assert_eq!(trace.pairs[0], (a.clone(), b.clone()));
            for w in trace.pairs.windows(2) {
                let ((x, y), (x1, y1)) = (&w[0], &w[1]);
                if x > y {
                    assert_eq!((x1, y1), (&(x - y), y));
                } else {
                    assert_eq!((x1, y1), (x, &(y - x)));
                }
                assert_eq!(wedge(x1, y1), wedge(&a, &b));
            }
            let (x, y) = trace.last();
            match trace.terminal {
                EuclidTerminal::SumBelowEps => assert!((x + y) < eps),
                EuclidTerminal::EqualPair => assert_eq!(x, y),
            }
        }
    }
}
