//! Randomized invariant suites behind `iet verify`.

use std::fmt;

use iet_core::exact::rat;
use iet_core::factor::{
    balanced_rotations, conjugate_same_type_small, finite_order_to_swaps, is_balanced, refine_swap,
    rotation_reduce_small, rotations_factorization, small_swap_bound, swap_as_commutator,
    zero_saf_to_commutators, zero_saf_to_swaps, Factor, FactorError, Factorization,
    SmallSwapDerivation,
};
use iet_core::iet::DEFAULT_MAX_ORDER;
use iet_core::saf::{euclid_pairs, realize_saf, saf_of_pieces, EuclidTerminal};
use iet_core::sample::SurdSampler;
use iet_core::{
    saf, wedge, Iet, Interval, OrderResult, RotationSpec, SurdReal, SwapSpec, TensorQQ,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::doc::{
    from_json, to_json, CertificateDocument, ConjugationDocument, IetDocument, IntervalDoc,
    SwapDocument,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Group,
    Saf,
    Factor,
}

impl Suite {
    fn includes(self, name: &str) -> bool {
        match self {
            Suite::All => true,
            Suite::Group => name == "group",
            Suite::Saf => name == "saf",
            Suite::Factor => name == "factor",
        }
    }
}

/// Inputs of one generated case.
#[derive(Debug, Clone, Default)]
pub struct Case {
    pub iets: Vec<Iet>,
    pub swaps: Vec<SwapSpec>,
    pub rotations: Vec<RotationSpec>,
    pub eps: Option<SurdReal>,
}

impl Case {
    fn iets(iets: Vec<Iet>) -> Self {
        Case {
            iets,
            ..Case::default()
        }
    }

    fn eps(&self) -> &SurdReal {
        self.eps.as_ref().expect("case carries eps")
    }
}

type Gen = fn(&mut ChaCha8Rng, &SurdSampler, &Interval) -> Case;
type Check = fn(&Case) -> Result<(), String>;

struct Property {
    suite: &'static str,
    name: &'static str,
    gen: Gen,
    check: Check,
}

const PROPERTIES: &[Property] = &[
    Property {
        suite: "group",
        name: "associativity",
        gen: gen_three,
        check: associativity,
    },
    Property {
        suite: "group",
        name: "inverse-identity",
        gen: gen_one,
        check: inverse_identity,
    },
    Property {
        suite: "group",
        name: "pointwise",
        gen: gen_two,
        check: pointwise,
    },
    Property {
        suite: "group",
        name: "canonical-form",
        gen: gen_one,
        check: canonical_form,
    },
    Property {
        suite: "group",
        name: "document-round-trip",
        gen: gen_one,
        check: document_round_trip,
    },
    Property {
        suite: "group",
        name: "swap-involution",
        gen: gen_swap,
        check: swap_involution,
    },
    Property {
        suite: "saf",
        name: "homomorphism",
        gen: gen_two,
        check: homomorphism,
    },
    Property {
        suite: "saf",
        name: "refinement",
        gen: gen_one,
        check: refinement,
    },
    Property {
        suite: "saf",
        name: "commutator-zero",
        gen: gen_two,
        check: commutator_zero,
    },
    Property {
        suite: "saf",
        name: "realize-round-trip",
        gen: gen_one,
        check: realize_round_trip,
    },
    Property {
        suite: "saf",
        name: "euclid-trace",
        gen: gen_rotation_eps,
        check: euclid_trace,
    },
    Property {
        suite: "factor",
        name: "rotations",
        gen: gen_one,
        check: rotations,
    },
    Property {
        suite: "factor",
        name: "finite-order",
        gen: gen_finite_order,
        check: finite_order,
    },
    Property {
        suite: "factor",
        name: "swap-commutator",
        gen: gen_swap,
        check: swap_commutator,
    },
    Property {
        suite: "factor",
        name: "reduce-small",
        gen: gen_rotation_eps,
        check: reduce_small,
    },
    Property {
        suite: "factor",
        name: "zero-saf",
        gen: gen_zero_saf,
        check: zero_saf,
    },
    Property {
        suite: "factor",
        name: "nonzero-rejected",
        gen: gen_nonzero_saf,
        check: nonzero_rejected,
    },
    Property {
        suite: "factor",
        name: "refine",
        gen: gen_swap_eps,
        check: refine,
    },
    Property {
        suite: "factor",
        name: "small-swap",
        gen: gen_small_swap,
        check: small_swap,
    },
];

const RADICANDS: [&[u64]; 3] = [&[1], &[1, 2], &[1, 2, 3]];

fn case_rng(seed: u64, prop: usize, n: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((prop as u64) << 32) | (n & 0xffff_ffff));
    rng
}

fn generate(seed: u64, prop: usize, n: u64) -> Case {
    let mut rng = case_rng(seed, prop, n);
    let sm = SurdSampler::new(RADICANDS[(n % 3) as usize]);
    let base = sm.base(&mut rng);
    (PROPERTIES[prop].gen)(&mut rng, &sm, &base)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyTally {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Reproducer {
    pub suite: &'static str,
    pub property: &'static str,
    pub seed: u64,
    pub case: u64,
    pub message: String,
    pub iets: Vec<IetDocument>,
    pub swaps: Vec<SwapDocument>,
    pub rotations: Vec<RotationDoc>,
    pub eps: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RotationDoc {
    pub interval: IntervalDoc,
    pub a: String,
    pub b: String,
    pub start: String,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub tallies: Vec<PropertyTally>,
    /// First failure of each failing property, shrunk.
    pub reproducers: Vec<Reproducer>,
}

impl Report {
    pub fn passed(&self) -> u64 {
        self.tallies.iter().map(|t| t.passed).sum()
    }

    pub fn failed(&self) -> u64 {
        self.tallies.iter().map(|t| t.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tallies {
            writeln!(
                f,
                "{}/{}: {} passed, {} failed",
                t.suite, t.name, t.passed, t.failed
            )?;
        }
        writeln!(
            f,
            "total: {} passed, {} failed",
            self.passed(),
            self.failed()
        )
    }
}

pub fn run(suite: Suite, seed: u64, cases: u64) -> Report {
    let mut tallies = Vec::new();
    let mut reproducers = Vec::new();
    for (i, p) in PROPERTIES.iter().enumerate() {
        if !suite.includes(p.suite) {
            continue;
        }
        let mut tally = PropertyTally {
            suite: p.suite,
            name: p.name,
            passed: 0,
            failed: 0,
        };
        for n in 0..cases {
            let case = generate(seed, i, n);
            match run_check(p.check, &case) {
                Ok(()) => tally.passed += 1,
                Err(message) => {
                    tally.failed += 1;
                    if tally.failed == 1 {
                        let (case, message) = shrink(p.check, case, message);
                        reproducers.push(reproducer(p, seed, n, &case, message));
                    }
                }
            }
        }
        tallies.push(tally);
    }
    Report {
        tallies,
        reproducers,
    }
}

fn run_check(check: Check, case: &Case) -> Result<(), String> {
    match std::panic::catch_unwind(|| check(case)) {
        Ok(r) => r,
        Err(e) => Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".to_string())),
    }
}

/// Greedily replaces inputs by the identity while the check keeps failing.
fn shrink(check: Check, mut case: Case, mut message: String) -> (Case, String) {
    for i in 0..case.iets.len() {
        if case.iets[i].is_identity() {
            continue;
        }
        let mut smaller = case.clone();
        smaller.iets[i] = Iet::identity(case.iets[i].base());
        if let Err(m) = run_check(check, &smaller) {
            case = smaller;
            message = m;
        }
    }
    (case, message)
}

fn reproducer(p: &Property, seed: u64, n: u64, case: &Case, message: String) -> Reproducer {
    let base = base_of(case);
    Reproducer {
        suite: p.suite,
        property: p.name,
        seed,
        case: n,
        message,
        iets: case.iets.iter().map(IetDocument::from_iet).collect(),
        swaps: case
            .swaps
            .iter()
            .map(|s| SwapDocument::new(base, s))
            .collect(),
        rotations: case
            .rotations
            .iter()
            .map(|r| RotationDoc {
                interval: IntervalDoc::from_interval(base),
                a: r.a.to_string(),
                b: r.b.to_string(),
                start: r.start.to_string(),
            })
            .collect(),
        eps: case.eps.as_ref().map(|e| e.to_string()),
    }
}

/// Swap and rotation cases carry the identity on their base as first IET.
fn base_of(case: &Case) -> &Interval {
    case.iets[0].base()
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn lift<T, E: fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// generators

fn gen_one(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    Case::iets(vec![sm.iet(rng, base, 8)])
}

fn gen_two(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    Case::iets(vec![sm.iet(rng, base, 8), sm.iet(rng, base, 8)])
}

fn gen_three(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    Case::iets((0..3).map(|_| sm.iet(rng, base, 8)).collect())
}

fn gen_swap(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    Case {
        iets: vec![Iet::identity(base)],
        swaps: vec![sm.swap(rng, base)],
        ..Case::default()
    }
}

fn gen_swap_eps(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    let s = sm.swap(rng, base);
    let eps = sm.below(rng, &s.a.scale_int(2));
    Case {
        iets: vec![Iet::identity(base)],
        swaps: vec![s],
        eps: Some(eps),
        ..Case::default()
    }
}

fn gen_rotation_eps(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    let r = sm.rotation(rng, base);
    let eps = sm.below(rng, &base.width());
    Case {
        iets: vec![Iet::identity(base)],
        rotations: vec![r],
        eps: Some(eps),
        ..Case::default()
    }
}

fn gen_finite_order(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    let f = if sm.radicands == [1] {
        sm.iet(rng, base, 8)
    } else {
        let s = sm.swap(rng, base).to_iet(base).expect("valid swap");
        s.conjugate_by(&sm.iet(rng, base, 5)).expect("shared base")
    };
    Case::iets(vec![f])
}

fn gen_zero_saf(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    Case::iets(vec![sm.zero_saf(rng, base)])
}

fn gen_nonzero_saf(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    if sm.radicands.len() >= 2 {
        return Case::iets(vec![sm.nonzero_saf(rng, base)]);
    }
    let wider = SurdSampler::new(&[1, 2]);
    let base = wider.base(rng);
    Case::iets(vec![wider.nonzero_saf(rng, &base)])
}

fn gen_small_swap(rng: &mut ChaCha8Rng, sm: &SurdSampler, base: &Interval) -> Case {
    let f = sm.iet(rng, base, 6);
    let eps = match small_swap_bound(&f) {
        Ok(eps0) => {
            let tenth = base.width().scale(&rat(1, 10));
            let cap = if eps0 < tenth { eps0 } else { tenth };
            sm.below(rng, &cap)
        }
        Err(_) => base.width().scale(&rat(1, 20)),
    };
    Case {
        iets: vec![f],
        eps: Some(eps),
        ..Case::default()
    }
}

// group

fn associativity(c: &Case) -> Result<(), String> {
    let [f, g, h] = &c.iets[..] else {
        unreachable!()
    };
    let left = lift(f.compose(g).and_then(|fg| fg.compose(h)))?;
    let right = lift(g.compose(h).and_then(|gh| f.compose(&gh)))?;
    ensure(left == right, "(f∘g)∘h != f∘(g∘h)")
}

fn inverse_identity(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let id = Iet::identity(f.base());
    let inv = f.inverse();
    ensure(
        lift(f.compose(&inv))?.is_identity(),
        "f∘f⁻¹ is not the identity",
    )?;
    ensure(
        lift(inv.compose(f))?.is_identity(),
        "f⁻¹∘f is not the identity",
    )?;
    ensure(&inv.inverse() == f, "(f⁻¹)⁻¹ != f")?;
    ensure(&lift(f.compose(&id))? == f, "f∘id != f")?;
    ensure(&lift(id.compose(f))? == f, "id∘f != f")
}

/// Block starts and block midpoints of every input.
fn probe_points(fs: &[Iet]) -> Vec<SurdReal> {
    let mut xs = Vec::new();
    for f in fs {
        for i in 0..f.num_blocks() {
            let b = f.block(i);
            xs.push(b.lo().clone());
            xs.push((b.lo() + b.hi()).half());
        }
    }
    xs
}

fn pointwise(c: &Case) -> Result<(), String> {
    let [f, g] = &c.iets[..] else { unreachable!() };
    let fg = lift(f.compose(g))?;
    let finv = f.inverse();
    for x in probe_points(&c.iets) {
        let gx = lift(g.apply(&x))?;
        ensure(
            lift(fg.apply(&x))? == lift(f.apply(&gx))?,
            "(f∘g)(x) != f(g(x))",
        )?;
        let fx = lift(f.apply(&x))?;
        ensure(f.base().contains(&fx), "f(x) left the base")?;
        ensure(lift(finv.apply(&fx))? == x, "f⁻¹(f(x)) != x")?;
    }
    Ok(())
}

fn canonical_form(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let again = lift(Iet::new(
        f.base().clone(),
        f.lengths().to_vec(),
        f.perm().to_vec(),
    ))?;
    ensure(&again == f, "rebuilding from (λ, π) changed the map")?;
    ensure(
        f.shifts().windows(2).all(|w| w[0] != w[1]),
        "adjacent canonical blocks share a translation",
    )?;
    let pieces = f
        .lengths()
        .iter()
        .cloned()
        .zip(f.shifts().iter().cloned())
        .collect();
    ensure(
        &lift(Iet::from_pieces(f.base(), pieces))? == f,
        "from_pieces changed the map",
    )
}

fn document_round_trip(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let doc = IetDocument::from_iet(f);
    let text = to_json(&doc);
    let back: IetDocument = lift(from_json(&text))?;
    ensure(back == doc, "document changed on re-parse")?;
    ensure(
        &lift(back.to_iet())? == f,
        "document parses to a different map",
    )?;
    ensure(to_json(&back) == text, "re-emitted text differs")
}

fn swap_involution(c: &Case) -> Result<(), String> {
    let s = lift(c.swaps[0].to_iet(base_of(c)))?;
    ensure(
        lift(s.compose(&s))?.is_identity(),
        "swap∘swap is not the identity",
    )?;
    ensure(s.order(16) == OrderResult::Finite(2), "swap order is not 2")
}

// saf

fn homomorphism(c: &Case) -> Result<(), String> {
    let [f, g] = &c.iets[..] else { unreachable!() };
    let fg = lift(f.compose(g))?;
    ensure(
        saf(&fg) == saf(f).add(&saf(g)),
        "saf(f∘g) != saf(f) + saf(g)",
    )?;
    ensure(saf(&f.inverse()) == saf(f).neg(), "saf(f⁻¹) != -saf(f)")?;
    ensure(saf(f).is_antisymmetric(), "saf(f) is not antisymmetric")
}

fn refinement(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let direct = saf(f);
    for (num, den) in [(1, 2), (1, 3), (2, 3)] {
        let cuts: Vec<SurdReal> = (0..f.num_blocks())
            .map(|i| {
                let b = f.block(i);
                b.lo() + &b.width().scale(&rat(num, den))
            })
            .collect();
        let pieces = f.refined_pieces(&cuts);
        ensure(pieces.len() >= f.num_blocks(), "refinement lost pieces")?;
        ensure(
            saf_of_pieces(pieces.iter().map(|(l, t)| (l, t))) == direct,
            "saf depends on the partition",
        )?;
    }
    Ok(())
}

fn commutator_zero(c: &Case) -> Result<(), String> {
    let [u, v] = &c.iets[..] else { unreachable!() };
    let comm = Factor::Commutator(u.clone(), v.clone());
    ensure(
        saf(&lift(comm.to_iet(u.base()))?).is_zero(),
        "commutator has nonzero saf",
    )
}

fn realize_round_trip(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let wedges: Vec<(SurdReal, SurdReal)> = f
        .lengths()
        .iter()
        .cloned()
        .zip(f.shifts().iter().cloned())
        .collect();
    let want = wedges
        .iter()
        .fold(TensorQQ::zero(), |acc, (a, b)| acc.add(&wedge(a, b)));
    ensure(
        saf(&realize_saf(f.base(), &wedges)) == want,
        "saf(realize_saf(W)) != Σ wedge(W)",
    )
}

fn euclid_trace(c: &Case) -> Result<(), String> {
    let r = &c.rotations[0];
    let trace = lift(euclid_pairs(&r.a, &r.b, c.eps()))?;
    ensure(
        trace.pairs[0] == (r.a.clone(), r.b.clone()),
        "trace does not start at (a, b)",
    )?;
    let w = wedge(&r.a, &r.b);
    for p in trace.pairs.windows(2) {
        let ((x, y), next) = (&p[0], &p[1]);
        let want = if x > y {
            (x - y, y.clone())
        } else {
            (x.clone(), y - x)
        };
        ensure(next == &want, "step is not a subtraction")?;
        ensure(wedge(&next.0, &next.1) == w, "step changed the wedge")?;
    }
    let (x, y) = trace.last();
    match trace.terminal {
        EuclidTerminal::SumBelowEps => ensure(&(x + y) < c.eps(), "terminal sum is not below eps"),
        EuclidTerminal::EqualPair => ensure(x == y, "terminal pair is not equal"),
    }
}

// factor

/// Emits, re-parses and reloads a certificate; the reloaded factors must
/// match the verified ones exactly.
fn certificate_reloads(cert: &Factorization) -> Result<(), String> {
    let doc = CertificateDocument::from_factorization(cert);
    ensure(doc.verified, "certificate does not recompose")?;
    let back: CertificateDocument = lift(from_json(&to_json(&doc)))?;
    ensure(back == doc, "certificate changed on re-parse")?;
    ensure(
        &lift(back.to_factorization())? == cert,
        "reloaded certificate differs",
    )
}

fn rotations(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let cert = rotations_factorization(f);
    certificate_reloads(&cert)?;
    ensure(
        cert.rotations().count() == cert.len(),
        "non-rotation factor",
    )?;
    if f.num_blocks() >= 2 {
        ensure(
            cert.rotations()
                .all(|r| f.lengths().contains(&r.a) && f.lengths().contains(&r.b)),
            "rotation type outside the canonical lengths",
        )?;
    }
    Ok(())
}

fn all_order_two(cert: &Factorization) -> Result<(), String> {
    for s in cert.swaps() {
        let g = lift(s.to_iet(&cert.base))?;
        ensure(
            g.order(4) == OrderResult::Finite(2),
            "swap factor does not have order 2",
        )?;
    }
    Ok(())
}

fn finite_order(c: &Case) -> Result<(), String> {
    let cert = lift(finite_order_to_swaps(&c.iets[0], DEFAULT_MAX_ORDER))?;
    certificate_reloads(&cert)?;
    all_order_two(&cert)
}

fn swap_commutator(c: &Case) -> Result<(), String> {
    let base = base_of(c);
    let s = &c.swaps[0];
    let comm = lift(swap_as_commutator(s, base))?;
    let id = Iet::identity(base);
    ensure(
        lift(comm.u.compose(&comm.u))? == id,
        "u is not an involution",
    )?;
    ensure(
        lift(comm.v.compose(&comm.v))? == id,
        "v is not an involution",
    )?;
    let prod = lift(Factor::Commutator(comm.u, comm.v).to_iet(base))?;
    ensure(
        prod == lift(s.to_iet(base))?,
        "commutator differs from the swap",
    )
}

fn reduce_small(c: &Case) -> Result<(), String> {
    let base = base_of(c);
    let r = &c.rotations[0];
    let small = lift(rotation_reduce_small(r, base, c.eps()))?;
    ensure(
        &(&small.h.a + &small.h.b) < c.eps(),
        "reduced rotation is not small",
    )?;
    certificate_reloads(&small.tail)?;
    let whole = lift(
        small
            .h
            .to_iet(base)
            .and_then(|h| h.compose(&small.tail.target)),
    )?;
    ensure(
        whole == lift(r.to_iet(base))?,
        "h ∘ tail differs from the rotation",
    )
}

fn zero_saf(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let swaps = lift(zero_saf_to_swaps(f))?;
    ensure(
        &swaps.target == f,
        "certificate target differs from the input",
    )?;
    certificate_reloads(&swaps)?;
    all_order_two(&swaps)?;
    // the commutator certificate is checked factor by factor against the
    // verified swaps
    for s in swaps.swaps() {
        let w = lift(swap_as_commutator(s, f.base()))?;
        let comm = lift(Factor::Commutator(w.u, w.v).to_iet(f.base()))?;
        ensure(
            comm == lift(s.to_iet(f.base()))?,
            "commutator differs from its swap",
        )?;
    }
    let rots = lift(balanced_rotations(f))?;
    ensure(is_balanced(&rots), "rotation factorization is not balanced")
}

fn nonzero_rejected(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let t = saf(f);
    ensure(!t.is_zero(), "generator produced zero saf")?;
    let rejected = |r: Result<Factorization, FactorError>| matches!(r, Err(FactorError::NonzeroSaf(ref u)) if *u == t);
    ensure(rejected(zero_saf_to_swaps(f)), "swaps accepted nonzero saf")?;
    ensure(
        rejected(zero_saf_to_commutators(f)),
        "commutators accepted nonzero saf",
    )?;
    ensure(
        matches!(balanced_rotations(f), Err(FactorError::NonzeroSaf(_))),
        "balanced accepted nonzero saf",
    )
}

fn refine(c: &Case) -> Result<(), String> {
    let s = &c.swaps[0];
    let eps = c.eps();
    let cert = lift(refine_swap(s, eps, base_of(c)))?;
    certificate_reloads(&cert)?;
    ensure(cert.swaps().all(|p| &p.a < eps), "piece not below eps")?;
    let n = cert.len() as i64;
    ensure(
        n == 1 || &s.a.scale(&rat(1, n - 1)) >= eps,
        "refinement is not minimal",
    )
}

fn small_swap(c: &Case) -> Result<(), String> {
    let f = &c.iets[0];
    let eps = c.eps();
    if f.is_identity() {
        return ensure(
            matches!(
                SmallSwapDerivation::new(f, eps),
                Err(FactorError::IdentityInput)
            ),
            "identity accepted",
        );
    }
    let d = lift(SmallSwapDerivation::new(f, eps))?;
    ensure(d.verify(f), "small swap derivation does not recompose")?;
    ensure(&d.swap().a == eps, "small swap has the wrong type")?;
    let base = f.base();
    let sample = SwapSpec::new(eps.clone(), base.lo().clone(), base.hi() - eps);
    let conj = lift(conjugate_same_type_small(&sample, d.swap(), base))?;
    let doc = ConjugationDocument::new(&conj, base);
    ensure(doc.verified, "conjugation does not verify")?;
    let back: ConjugationDocument = lift(from_json(&to_json(&doc)))?;
    ensure(lift(back.check())?, "reloaded conjugation does not verify")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_repeat() {
        for p in 0..PROPERTIES.len() {
            let a = generate(3, p, 5);
            let b = generate(3, p, 5);
            assert_eq!(a.iets, b.iets);
            assert_eq!(a.swaps, b.swaps);
            assert_eq!(a.eps, b.eps);
        }
    }

    #[test]
    fn small_run_passes() {
        let report = run(Suite::All, 1, 6);
        assert!(report.ok(), "{report}");
        assert_eq!(report.tallies.len(), PROPERTIES.len());
    }

    #[test]
    fn failures_are_shrunk() {
        fn never(c: &Case) -> Result<(), String> {
            Err(format!("{} inputs", c.iets.len()))
        }
        let case = generate(2, 0, 1);
        let (small, msg) = shrink(never, case, String::new());
        assert!(small.iets.iter().all(Iet::is_identity));
        assert_eq!(msg, "3 inputs");
    }
}
