//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use micz_core::clifford::{casimir, clifford_relations_hold, gamma_matrices, rep_s2mu};
use micz_core::micz::suites::FLOAT_TOL;
use micz_core::micz::Mode;
use micz_core::radial::suite::GRAM_TOL;
use micz_core::radial::energy;
use micz_core::report::{Item, Report, Status, Strategy};
use micz_core::runner::{run_suite, SuiteConfig, SuiteName};
use micz_core::scalar::ring::ratio;

const SEED: u64 = 7;
const EXACT_POINTS: usize = 20;
const FLOAT_POINTS: usize = 200;
const MIN_PAIRS: usize = 60;
/// Relative residual every float identity must meet.
const FLOAT_REL_TOL: f64 = 1e-9;
const QUADRATURE_TOL: f64 = 1e-10;

const CONFIGS: [(usize, u32); 4] = [(2, 0), (2, 1), (3, 0), (3, 1)];
const ALGEBRA: [SuiteName; 3] = [SuiteName::ClosedForms, SuiteName::Commutation, SuiteName::Quadratic];

type Exact = Vec<(usize, u32, Report)>;
type Criterion = Box<dyn FnOnce(&mut Exact) -> Verdict>;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new() -> Self {
        Verdict { ok: true, detail: String::new() }
    }

    fn require(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            let what = what.into();
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what);
        }
    }

    fn note(&mut self, s: impl AsRef<str>) {
        if self.ok {
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(s.as_ref());
        }
    }
}

fn config(n: usize, two_mu: u32, suites: &[SuiteName], mode: Mode, points: usize) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(n, two_mu, suites.to_vec());
    cfg.mode = mode;
    cfg.points = points;
    cfg.seed = SEED;
    cfg.pairs = MIN_PAIRS;
    cfg
}

fn timed(cfg: &SuiteConfig) -> (Report, f64) {
    let t = Instant::now();
    let r = run_suite(cfg).unwrap_or_else(|e| panic!("{cfg:?}: {e}"));
    (r, t.elapsed().as_secs_f64())
}

fn failures(r: &Report) -> Vec<String> {
    r.items.iter().filter(|i| i.status != Status::Pass).map(|i| format!("{} {}", i.suite, i.id)).collect()
}

fn base_id(i: &Item) -> String {
    format!("{}/{}", i.suite, i.id.split('#').next().unwrap())
}

fn tag(n: usize, two_mu: u32) -> String {
    format!("n={n},μ={}", if two_mu == 0 { "0" } else { "1/2" })
}

fn clifford() -> Verdict {
    let mut v = Verdict::new();
    for n in 2..=4 {
        v.require(clifford_relations_hold(&gamma_matrices(n)), format!("Clifford relations fail for n={n}"));
    }
    for (n, want) in [(2, ratio(3, 4)), (3, ratio(5, 2))] {
        let got = casimir(&rep_s2mu(n, 1).unwrap()).unwrap();
        v.require(got == want, format!("casimir n={n}: {got} ≠ {want}"));
    }
    v.note("γ relations n=2,3,4; casimir 3/4, 5/2");
    v
}

fn gauge(exact: &mut Exact) -> Verdict {
    let mut v = Verdict::new();
    for (n, two_mu) in CONFIGS {
        let (r, secs) = timed(&config(n, two_mu, &[SuiteName::Gauge], Mode::Exact, EXACT_POINTS));
        let bad = failures(&r);
        v.require(bad.is_empty(), format!("{}: {bad:?}", tag(n, two_mu)));
        let ids: BTreeSet<String> = r.items.iter().map(base_id).collect();
        // seven identities plus the curvature agreement
        v.require(ids.len() == 8, format!("{}: {} identities", tag(n, two_mu), ids.len()));
        v.require(r.items.len() == 8 * EXACT_POINTS, format!("{}: {} items", tag(n, two_mu), r.items.len()));
        if n == 3 {
            v.require(secs < 60.0, format!("{}: {secs:.1} s ≥ 60 s", tag(n, two_mu)));
        }
        v.note(format!("{} {secs:.1} s", tag(n, two_mu)));
        exact.push((n, two_mu, r));
    }
    v
}

fn falsifier() -> Verdict {
    let mut v = Verdict::new();
    let (r, secs) = timed(&config(2, 2, &[SuiteName::Gauge], Mode::Exact, EXACT_POINTS));
    let by = |id: &str| r.items.iter().filter(move |i| i.id.split('#').next() == Some(id)).collect::<Vec<_>>();
    let broken = by("field-contraction");
    v.require(!broken.is_empty(), "no contraction items");
    v.require(
        broken.iter().all(|i| i.status == Status::ExpectedFail && i.residual.is_some()),
        "contraction identity unexpectedly holds",
    );
    for id in ["radial-potential", "radial-field"] {
        v.require(by(id).iter().all(|i| i.status == Status::Pass), format!("{id} fails"));
    }
    v.require(r.summary.fail == 0, format!("{:?}", failures(&r)));
    v.require(secs < 5.0, format!("{secs:.1} s ≥ 5 s"));
    v.note(format!("{} expected failures, {secs:.2} s", broken.len()));
    v
}

fn algebra(exact: &mut Exact) -> Verdict {
    let mut v = Verdict::new();
    let mut exact_secs = 0.0;
    let mut worst_float: f64 = 0.0;
    for (n, two_mu) in CONFIGS {
        let (r, secs) = timed(&config(n, two_mu, &ALGEBRA, Mode::Exact, EXACT_POINTS));
        exact_secs += secs;
        let bad = failures(&r);
        v.require(bad.is_empty(), format!("{}: {} failures, first {:?}", tag(n, two_mu), bad.len(), bad.first()));
        let plain: Vec<&Item> = r.items.iter().filter(|i| i.suite == "commutation" && !i.id.starts_with("hat")).collect();
        let quad = r.items.iter().filter(|i| i.suite == "quadratic").count();
        let closed = r.items.iter().filter(|i| i.suite == "closed-forms").count();
        v.require(closed > 0, format!("{}: no closed forms", tag(n, two_mu)));
        if n == 2 {
            v.require(plain.len() == 210, format!("{}: {} pairs", tag(n, two_mu), plain.len()));
            v.require(quad == 28, format!("{}: {quad} quadratic relations", tag(n, two_mu)));
        } else {
            v.require(plain.len() >= MIN_PAIRS, format!("{}: {} pairs", tag(n, two_mu), plain.len()));
            let sampled = plain.iter().all(|i| i.strategy == Strategy::ExactNormalForm)
                || plain.iter().all(|i| i.witness.as_deref() == Some(&format!("{EXACT_POINTS} points")[..]));
            v.require(sampled, format!("{}: pointwise items not at {EXACT_POINTS} points", tag(n, two_mu)));
        }
        exact.push((n, two_mu, r));

        let (f, fsecs) = timed(&config(n, two_mu, &ALGEBRA, Mode::Float, EXACT_POINTS));
        v.require(f.summary.fail == 0, format!("{} float: {:?}", tag(n, two_mu), failures(&f)));
        worst_float = worst_float.max(fsecs);
    }
    v.require(exact_secs < 600.0, format!("exact {exact_secs:.0} s ≥ 600 s"));
    v.require(worst_float < 10.0, format!("float {worst_float:.1} s ≥ 10 s"));
    v.note(format!("exact {exact_secs:.0} s total, slowest float {worst_float:.1} s"));
    v
}

fn radial() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    v.require(GRAM_TOL <= QUADRATURE_TOL, format!("quadrature tolerance {GRAM_TOL:e}"));
    for (n, two_mu) in CONFIGS {
        let mut cfg = config(n, two_mu, &[SuiteName::Radial], Mode::Exact, EXACT_POINTS);
        cfg.kmax = 4;
        cfg.lmax = 4;
        let r = run_suite(&cfg).unwrap();
        let bad = failures(&r);
        v.require(bad.is_empty(), format!("{}: {bad:?}", tag(n, two_mu)));
        for prefix in ["H-eigen", "Gamma-eigen", "twist", "lower", "raise", "gram-quadrature"] {
            v.require(r.items.iter().any(|i| i.id.starts_with(prefix)), format!("{}: no {prefix} items", tag(n, two_mu)));
        }
    }
    for (level, n, two_mu, want) in [(0, 2, 1, ratio(-1, 8)), (0, 2, 0, ratio(-2, 9)), (1, 3, 0, ratio(-2, 49))] {
        v.require(energy(level, n, two_mu) == want, format!("E_{level} for {} ≠ {want}", tag(n, two_mu)));
    }
    let secs = start.elapsed().as_secs_f64();
    v.require(secs < 30.0, format!("{secs:.1} s ≥ 30 s"));
    v.note(format!("k,l ≤ 4, four configurations, {secs:.2} s"));
    v
}

fn full_scalar() -> Verdict {
    let mut v = Verdict::new();
    let mut cfg = config(2, 0, &[SuiteName::FullScalar], Mode::Exact, EXACT_POINTS);
    cfg.kmax = 3;
    cfg.lmax = 3;
    let (r, secs) = timed(&cfg);
    v.require(r.summary.fail == 0, format!("{:?}", failures(&r)));
    let eigen = r.items.iter().filter(|i| i.id.starts_with("Gamma-eigen")).count();
    v.require(eigen == 3 * 4, format!("{eigen} eigenvalue items"));
    v.require(secs < 60.0, format!("{secs:.1} s ≥ 60 s"));
    v.note(format!("{eigen} sectors, {secs:.2} s"));
    v
}

fn representations() -> Verdict {
    let mut v = Verdict::new();
    let start = Instant::now();
    for (n, two_mu) in CONFIGS {
        let (r, _) = timed(&config(n, two_mu, &[SuiteName::Reps, SuiteName::Abstract], Mode::Exact, EXACT_POINTS));
        v.require(r.summary.fail == 0, format!("{}: {:?}", tag(n, two_mu), failures(&r)));
        let unique = r.items.iter().filter(|i| i.id.starts_with("unique[")).count();
        v.require(unique == 7, format!("{}: {unique} uniqueness items", tag(n, two_mu)));
        let roots = r.items.iter().filter(|i| i.id.starts_with("root[")).count();
        v.require(roots == 2 * (n + 1) * (n + 1), format!("{}: {roots} root items", tag(n, two_mu)));
        let witness = |id: &str| r.items.iter().find(|i| i.id == id).and_then(|i| i.witness.clone()).unwrap_or_default();
        if (n, two_mu) == (2, 0) {
            v.require(witness("dim[I=2]").contains("= 14"), "dim D² ≠ 14");
        }
        if (n, two_mu) == (2, 1) {
            v.require(witness("dim[I=1]").contains("= 16"), "dim D¹ ≠ 16");
        }
    }
    let secs = start.elapsed().as_secs_f64();
    v.require(secs < 10.0, format!("{secs:.1} s ≥ 10 s"));
    v.note(format!("I ≤ 6, dim D² = 14, dim D¹ = 16, {secs:.2} s"));
    v
}

fn determinism() -> Verdict {
    let mut v = Verdict::new();
    let all = SuiteName::ALL.to_vec();
    let a = config(2, 0, &all, Mode::Exact, EXACT_POINTS);
    let b = config(2, 1, &[SuiteName::Gauge, SuiteName::Radial, SuiteName::Reps, SuiteName::Abstract], Mode::Float, 50);
    for cfg in [a, b] {
        let first = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
        let second = serde_json::to_string(&run_suite(&cfg).unwrap()).unwrap();
        v.require(first == second, format!("{}: reports differ", tag(cfg.n, cfg.two_mu)));
    }
    v.note("two configurations, byte-identical JSON");
    v
}

fn float_agreement(exact: &[(usize, u32, Report)]) -> Verdict {
    let mut v = Verdict::new();
    v.require(FLOAT_TOL <= FLOAT_REL_TOL, format!("float tolerance {FLOAT_TOL:e}"));
    let mut checked = 0;
    for (n, two_mu) in CONFIGS {
        let mut suites = vec![SuiteName::Gauge];
        suites.extend(ALGEBRA);
        let mut cfg = config(n, two_mu, &suites, Mode::Float, FLOAT_POINTS);
        // cover every pair an exact normal-form run decided
        let normal_form = exact.iter().any(|(m, t, r)| {
            (*m, *t) == (n, two_mu) && r.items.iter().any(|i| i.suite == "commutation" && i.strategy == Strategy::ExactNormalForm)
        });
        if normal_form {
            cfg.pairs = usize::MAX;
        }
        let r = run_suite(&cfg).unwrap();
        v.require(r.summary.fail == 0, format!("{}: {:?}", tag(n, two_mu), failures(&r)));
        let float_ids: BTreeSet<String> = r.items.iter().map(base_id).collect();
        for (_, _, rep) in exact.iter().filter(|(m, t, _)| (*m, *t) == (n, two_mu)) {
            for id in rep.items.iter().filter(|i| i.status == Status::Pass).map(base_id).collect::<BTreeSet<_>>() {
                v.require(float_ids.contains(&id), format!("{}: {id} has no float check", tag(n, two_mu)));
                checked += 1;
            }
        }
    }
    v.note(format!("{checked} exact identities re-checked at {FLOAT_POINTS} points within {FLOAT_REL_TOL:e}"));
    v
}

fn main() -> ExitCode {
    let mut exact = Vec::new();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("clifford and casimir", Box::new(|_| clifford())),
        ("gauge identities", Box::new(gauge)),
        ("spin-one falsifier", Box::new(|_| falsifier())),
        ("symmetry algebra", Box::new(algebra)),
        ("radial eigensystem", Box::new(|_| radial())),
        ("full-dimensional scalar", Box::new(|_| full_scalar())),
        ("representation content", Box::new(|_| representations())),
        ("determinism", Box::new(|_| determinism())),
        ("float agreement", Box::new(|e| float_agreement(e))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let v = check(&mut exact);
        let status = if v.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!v.ok);
        println!("{status}  {}  {name:<24} {:>7.1} s  {}", k + 1, t.elapsed().as_secs_f64(), v.detail);
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
