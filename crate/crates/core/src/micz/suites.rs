//! Identity suites for the gauge field and the symmetry generators.
//!
//! Operator identities are written as `Σ c·P_i∘P_j + Σ c·P_k + c₀·I = 0`
//! over a list of operators and decided either by exact normal forms
//! (when no coefficient carries the `ρ²` denominator) or pointwise at
//! seeded generic points.

use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gauge::{c2, GaugeField};
use super::generators::{closed_forms, GenIndex, GeneratorSet, Op};
use super::{Mode, ProblemConfig};
use crate::diffop::{DerivTable, ExprPool, PointTable};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{format_point, Item, Residual, Strategy};
use crate::scalar::ring::imag;
use crate::scalar::{random_points, Coeff, RationalPoint, Ring, Scalar, ScalarExpr};
use crate::{ExactValue, FloatValue, Gaussian};

/// Relative tolerance for operator identities in floating point.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Pair sample size for pointwise commutation checks when `n ≥ 3`.
    pub pairs: usize,
    pub timings: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { pairs: 60, timings: false }
    }
}

/// Gauge field and lazily built generators for one configuration.
pub struct Problem {
    pub cfg: ProblemConfig,
    pub field: GaugeField,
    generators: OnceLock<GeneratorSet>,
    tables: [OnceLock<Vec<DerivTable<Gaussian>>>; 2],
}

impl Problem {
    pub fn new(cfg: ProblemConfig) -> Result<Self> {
        let field = GaugeField::new(&cfg)?;
        Ok(Problem { cfg, field, generators: OnceLock::new(), tables: Default::default() })
    }

    pub fn generators(&self) -> &GeneratorSet {
        self.generators
            .get_or_init(|| GeneratorSet::build(&self.cfg, &self.field).expect("generator orders stay within bounds"))
    }

    /// Second-order derivative tables of one generator family, in
    /// [`generator_ops`] order.
    pub fn tables(&self, hatted: bool) -> &[DerivTable<Gaussian>] {
        self.tables[hatted as usize].get_or_init(|| {
            let (_, ops) = generator_ops(self.generators(), hatted);
            DerivTable::family(&ops.iter().collect::<Vec<_>>(), 2)
        })
    }

    fn pointwise(&self) -> bool {
        self.cfg.mode == Mode::Float || self.generators().has_rho()
    }

    pub fn points(&self) -> Vec<RationalPoint> {
        random_points(self.cfg.dim(), self.cfg.points, self.cfg.seed)
    }
}

/// `Σ c·ops[i]∘ops[j] + Σ c·ops[k] + c₀·I = 0`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub products: Vec<(Gaussian, usize, usize)>,
    pub linear: Vec<(Gaussian, usize)>,
    pub constant: Gaussian,
}

impl Identity {
    pub fn new(id: impl Into<String>) -> Self {
        Identity { id: id.into(), products: Vec::new(), linear: Vec::new(), constant: Gaussian::zero() }
    }

    pub fn commutator(mut self, c: Gaussian, i: usize, j: usize) -> Self {
        self.products.push((c.clone(), i, j));
        self.products.push((c.negate(), j, i));
        self
    }

    pub fn anticommutator(mut self, c: Gaussian, i: usize, j: usize) -> Self {
        self.products.push((c.clone(), i, j));
        self.products.push((c, j, i));
        self
    }

    pub fn linear(mut self, c: Gaussian, i: usize) -> Self {
        if !c.is_zero() {
            self.linear.push((c, i));
        }
        self
    }

    pub fn constant(mut self, c: Gaussian) -> Self {
        self.constant = self.constant.plus(&c);
        self
    }

    fn uses(&self) -> impl Iterator<Item = usize> + '_ {
        self.products.iter().flat_map(|(_, i, j)| [*i, *j]).chain(self.linear.iter().map(|(_, k)| *k))
    }
}

/// Outcome for one identity: `None` on success, else `(witness, residual)`.
pub type Outcome = Option<(Option<String>, String)>;

fn symbolic(ops: &[Op], id: &Identity) -> Result<Outcome> {
    let (dim, nvars) = (ops[0].dim(), ops[0].nvars());
    let mut sum = Op::zero(dim, nvars);
    for (c, i, j) in &id.products {
        sum = sum.add(&ops[*i].compose(&ops[*j])?.scale(c))?;
    }
    for (c, k) in &id.linear {
        sum = sum.add(&ops[*k].scale(c))?;
    }
    if !id.constant.is_zero() {
        sum = sum.add(&Op::scalar(ScalarExpr::constant(id.constant.clone()), dim, nvars))?;
    }
    Ok(sum.terms().iter().next().map(|(m, c)| {
        let (idx, e) = c.entries().iter().enumerate().find(|(_, e)| !e.is_zero()).expect("nonzero matrix");
        (None, format!("∂^{m:?} entry ({},{}) = {e:?}", idx / c.cols(), idx % c.cols()))
    }))
}

fn pointwise<F: Scalar>(
    ops: &[Op],
    cached: Option<&[DerivTable<Gaussian>]>,
    ids: &[Identity],
    points: &[RationalPoint],
    tol: f64,
) -> Result<Vec<Outcome>> {
    let mut used: Vec<usize> = ids.iter().flat_map(Identity::uses).collect();
    let order = if ids.iter().any(|id| !id.products.is_empty()) { 2 } else { 0 };
    used.sort_unstable();
    used.dedup();
    let built: Vec<DerivTable<Gaussian>>;
    let tables: Vec<Option<&DerivTable<Gaussian>>> = match cached {
        Some(all) => (0..ops.len()).map(|k| used.binary_search(&k).ok().map(|_| &all[k])).collect(),
        None => {
            built = DerivTable::family(&used.iter().map(|&k| &ops[k]).collect::<Vec<_>>(), order);
            let mut t = vec![None; ops.len()];
            for (k, tab) in used.iter().zip(&built) {
                t[*k] = Some(tab);
            }
            t
        }
    };
    let dim = ops[0].dim();
    let per_point: Vec<Vec<Option<String>>> = points
        .par_iter()
        .map(|p| -> Result<Vec<Option<String>>> {
            let mut values: Vec<(&Arc<ExprPool<Gaussian>>, Vec<F>)> = Vec::new();
            let mut at: Vec<Option<PointTable<F>>> = Vec::with_capacity(tables.len());
            for t in &tables {
                let Some(t) = t else {
                    at.push(None);
                    continue;
                };
                let k = match values.iter().position(|(pool, _)| Arc::ptr_eq(pool, t.pool())) {
                    Some(k) => k,
                    None => {
                        values.push((t.pool(), t.pool().values::<F>(p)?));
                        values.len() - 1
                    }
                };
                at.push(Some(t.at(&values[k].1)));
            }
            ids.iter()
                .map(|id| {
                    let mut r = Residual::<F>::new();
                    for (c, i, j) in &id.products {
                        let prod = at[*i].as_ref().unwrap().compose(at[*j].as_ref().unwrap())?;
                        r.add_op(&prod, &F::from_gaussian(c));
                    }
                    for (c, k) in &id.linear {
                        r.add_op(&at[*k].as_ref().unwrap().value(), &F::from_gaussian(c));
                    }
                    if !id.constant.is_zero() {
                        r.add_matrix(&Matrix::identity(dim), &F::from_gaussian(&id.constant));
                    }
                    Ok(r.check(tol))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((0..ids.len())
        .map(|k| {
            per_point
                .iter()
                .zip(points)
                .find_map(|(res, p)| res[k].as_ref().map(|msg| (Some(format_point(p)), msg.clone())))
        })
        .collect())
}

/// Decide every identity with the strategy the configuration allows.
pub fn decide(
    ops: &[Op],
    cached: Option<&[DerivTable<Gaussian>]>,
    ids: &[Identity],
    mode: Mode,
    points: &[RationalPoint],
) -> Result<(Strategy, Vec<Outcome>)> {
    let rho = ids.iter().flat_map(Identity::uses).any(|k| ops[k].has_rho());
    match mode {
        Mode::Float => Ok((Strategy::Float, pointwise::<FloatValue>(ops, cached, ids, points, FLOAT_TOL)?)),
        Mode::Exact if rho => Ok((Strategy::ExactPointwise, pointwise::<ExactValue>(ops, cached, ids, points, 0.0)?)),
        Mode::Exact => {
            let out = ids.par_iter().map(|id| symbolic(ops, id)).collect::<Result<Vec<_>>>()?;
            Ok((Strategy::ExactNormalForm, out))
        }
    }
}

fn items_from(
    suite: &str,
    anchor: &str,
    ids: &[Identity],
    strategy: Strategy,
    outcomes: Vec<Outcome>,
    points: usize,
    start: Instant,
    timings: bool,
) -> Vec<Item> {
    ids.iter()
        .zip(outcomes)
        .map(|(id, out)| {
            let item = Item::new(suite, id.id.clone(), anchor, strategy);
            let item = match out {
                None if strategy == Strategy::ExactNormalForm => item,
                None => item.witness(format!("{points} points")),
                Some((w, r)) => {
                    let item = item.fail(r);
                    match w {
                        Some(w) => item.witness(w),
                        None => item,
                    }
                }
            };
            item.timed(start, timings)
        })
        .collect()
}

fn float_tol<F: Scalar>() -> f64 {
    if F::exact() {
        0.0
    } else {
        FLOAT_TOL
    }
}

/// The gauge identities at every sampled point, one item per identity
/// per point, plus the curvature-versus-closed-form agreement.
pub fn verify_gauge_identities(problem: &Problem, opts: &SuiteOptions) -> Result<Vec<Item>> {
    match problem.cfg.mode {
        Mode::Exact => gauge_items::<ExactValue>(problem, opts),
        Mode::Float => gauge_items::<FloatValue>(problem, opts),
    }
}

fn gauge_items<F: Scalar>(problem: &Problem, opts: &SuiteOptions) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = &problem.cfg;
    let field = &problem.field;
    let derivs = field.field_derivatives();
    let casimir = c2(field)?;
    let c = cfg.c();
    let strategy = Strategy::pointwise::<F>();
    let tol = float_tol::<F>();
    let falsifier = cfg.two_mu >= 2;
    let points = problem.points();
    let per_point: Vec<Vec<Item>> = points
        .par_iter()
        .enumerate()
        .map(|(k, p)| -> Result<Vec<Item>> {
            let t = Instant::now();
            let at = field.at::<F>(p, &derivs)?;
            let mut items = Vec::new();
            let agree = at.curvature_agrees(tol);
            if let Some(msg) = &agree {
                return Err(Error::ConventionMismatch(format!("{} at {}", msg, format_point(p))));
            }
            items.push(
                Item::new("gauge", format!("curvature-closed-form#{k}"), "∂_α𝒜_β − ∂_β𝒜_α + i[𝒜_α,𝒜_β] = F_αβ", strategy)
                    .at(p)
                    .timed(t, opts.timings),
            );
            for chk in at.identities(&casimir, &c, tol) {
                let mut item = Item::new("gauge", format!("{}#{k}", chk.id), chk.anchor, strategy)
                    .at(p)
                    .verdict(chk.residual);
                if falsifier && chk.id == "field-contraction" {
                    item = item.expect_failure();
                }
                items.push(item.timed(t, opts.timings));
            }
            Ok(items)
        })
        .collect::<Result<_>>()?;
    let _ = start;
    Ok(per_point.into_iter().flatten().collect())
}

fn gauss(re: i64, im: i64) -> Gaussian {
    Gaussian::new(crate::scalar::ring::rat(re), crate::scalar::ring::rat(im))
}

/// Definitional generators against their closed forms, exact normal forms
/// (or float values at the sampled points).
pub fn verify_closed_forms(problem: &Problem, opts: &SuiteOptions) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = &problem.cfg;
    let g = problem.generators();
    let d = g.d;
    let pi = &g.parts.pi;
    let cf = closed_forms(cfg, &problem.field, pi)?;
    let idx = |k: usize| GenIndex(k as i32 + 1);
    let top = GenIndex(d as i32 + 1);
    let (m1, zero) = (GenIndex(-1), GenIndex(0));

    let mut pairs: Vec<(String, &'static str, Op, Op)> = Vec::new();
    for ((a, b), op) in &cf.angular {
        pairs.push((format!("J[{},{}]", a + 1, b + 1), "J_αβ = x_απ_β − x_βπ_α + r²F_αβ", g.j(idx(*a), idx(*b)).clone(), op.clone()));
    }
    for a in 0..d {
        let anchor_a = "A_α = ½x_απ² − π_α(x·π) + r²F_αβπ_β − (c/2r²)x_α + (i/2)(D−3)π_α − ½x_α";
        let anchor_m = "M_α = ½x_απ² − π_α(x·π) + r²F_αβπ_β − (c/2r²)x_α + (i/2)(D−3)π_α + ½x_α";
        pairs.push((format!("A[{}]", a + 1), anchor_a, g.j(idx(a), top).clone(), cf.a[a].clone()));
        pairs.push((format!("M[{}]", a + 1), anchor_m, g.j(idx(a), m1).clone(), cf.m[a].clone()));
        pairs.push((format!("Gamma[{}]", a + 1), "Γ_α = rπ_α", g.j(idx(a), zero).clone(), cf.gamma[a].clone()));
        let x = Op::scalar(ScalarExpr::x(a, d), g.dim, d);
        pairs.push((format!("W[{}]", a + 1), "W_α = i[Γ_α, r] = x_α", g.parts.w[a].clone(), x));
    }
    pairs.push(("T".into(), "T = x·π − i(D−1)/2", g.j(top, m1).clone(), cf.t.clone()));
    pairs.push(("Gamma[-1]".into(), "Γ_{−1} = ½(rπ² + r + c/r)", g.j(m1, zero).clone(), cf.gamma_bottom.clone()));
    pairs.push(("Gamma[D+1]".into(), "Γ_{D+1} = ½(rπ² − r + c/r)", g.j(top, zero).clone(), cf.gamma_top.clone()));
    let minus_i = imag().negate();
    for a in 0..d {
        for b in a + 1..d {
            let lhs = pi[a].commutator(&pi[b])?;
            let f = Op::multiplication(problem.field.curvature(a, b).clone(), d).scale(&minus_i);
            pairs.push((format!("pi-bracket[{},{}]", a + 1, b + 1), "[π_α, π_β] = −iF_αβ", lhs, f));
        }
    }

    let mut ops = Vec::new();
    let mut ids = Vec::new();
    let mut anchors = Vec::new();
    for (label, anchor, lhs, rhs) in pairs {
        let k = ops.len();
        ops.push(lhs);
        ops.push(rhs);
        ids.push(Identity::new(label).linear(gauss(1, 0), k).linear(gauss(-1, 0), k + 1));
        anchors.push(anchor);
    }
    let points = problem.points();
    let (strategy, outcomes) = match cfg.mode {
        // Normal forms are canonical even with the ρ² denominator, so the
        // difference of two order-≤2 operators is decided symbolically.
        Mode::Exact => {
            let out = ids.par_iter().map(|id| symbolic(&ops, id)).collect::<Result<Vec<_>>>()?;
            (Strategy::ExactNormalForm, out)
        }
        Mode::Float => decide(&ops, None, &ids, Mode::Float, &points)?,
    };
    let mut items = Vec::new();
    for ((id, out), anchor) in ids.iter().zip(outcomes).zip(anchors) {
        items.extend(items_from("closed-forms", anchor, std::slice::from_ref(id), strategy, vec![out], points.len(), start, opts.timings));
    }
    Ok(items)
}

/// `[J_AB, J_A′B′] = −iη_AA′J_BB′ − iη_BB′J_AA′ + iη_AB′J_BA′ + iη_BA′J_AB′`.
fn bracket_identity(labels: &[(GenIndex, GenIndex)], x: usize, y: usize, pos: impl Fn(GenIndex, GenIndex) -> (usize, i64)) -> Identity {
    let (a, b) = labels[x];
    let (a2, b2) = labels[y];
    let eta = |p: GenIndex, q: GenIndex| if p == q { p.eta() } else { 0 };
    let mut id = Identity::new(format!("[J({a},{b}),J({a2},{b2})]")).commutator(gauss(1, 0), x, y);
    // Move the right-hand side over: + iη_AA′J_BB′ + iη_BB′J_AA′ − iη_AB′J_BA′ − iη_BA′J_AB′.
    for (k, (p, q)) in [(eta(a, a2), (b, b2)), (eta(b, b2), (a, a2)), (-eta(a, b2), (b, a2)), (-eta(b, a2), (a, b2))] {
        if k == 0 || p == q {
            continue;
        }
        let (slot, sign) = pos(p, q);
        id = id.linear(gauss(0, k * sign), slot);
    }
    id
}

/// Position of `J_PQ` in the label list, with the sign from antisymmetry.
fn slot(labels: &[(GenIndex, GenIndex)], p: GenIndex, q: GenIndex) -> (usize, i64) {
    let (lo, hi, sign) = if p < q { (p, q, 1) } else { (q, p, -1) };
    (labels.iter().position(|&l| l == (lo, hi)).expect("valid label"), sign)
}

pub fn generator_ops(g: &GeneratorSet, hatted: bool) -> (Vec<(GenIndex, GenIndex)>, Vec<Op>) {
    let labels = g.labels();
    let ops = labels.iter().map(|&(a, b)| if hatted { g.j_hat(a, b).clone() } else { g.j(a, b).clone() }).collect();
    (labels, ops)
}

fn sample<T: Clone>(all: Vec<T>, k: usize, seed: u64) -> Vec<T> {
    if k >= all.len() {
        return all;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = all;
    v.shuffle(&mut rng);
    v.truncate(k);
    v
}

/// All pairs when exact normal forms apply or `n = 2`; otherwise a seeded
/// sample of `opts.pairs` pairs. The hatted family is checked on a smaller
/// seeded sample.
pub fn verify_commutation_relations(problem: &Problem, opts: &SuiteOptions) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = &problem.cfg;
    let g = problem.generators();
    let points = problem.points();
    let anchor = "[J_AB, J_A′B′] = −iη_AA′J_BB′ − iη_BB′J_AA′ + iη_AB′J_BA′ + iη_BA′J_AB′";
    let mut items = Vec::new();
    for hatted in [false, true] {
        let (labels, ops) = generator_ops(g, hatted);
        let n = labels.len();
        let all: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
        let pointwise = problem.pointwise();
        let chosen = match (hatted, pointwise && cfg.n >= 3) {
            (false, false) => all,
            (false, true) => sample(all, opts.pairs, cfg.seed),
            (true, _) => sample(all, (opts.pairs / 2).max(1), cfg.seed ^ 0x5eed),
        };
        let ids: Vec<Identity> = chosen
            .iter()
            .map(|&(x, y)| {
                let mut id = bracket_identity(&labels, x, y, |p, q| slot(&labels, p, q));
                if hatted {
                    id.id = format!("hat{}", id.id);
                }
                id
            })
            .collect();
        let cached = pointwise.then(|| problem.tables(hatted));
        let (strategy, outcomes) = decide(&ops, cached, &ids, cfg.mode, &points)?;
        items.extend(items_from("commutation", anchor, &ids, strategy, outcomes, points.len(), start, opts.timings));
    }
    Ok(items)
}

/// `Σ_A η_AA {J_AB, J_AC} = −2a η_BC` for all `B ≤ C`.
pub fn verify_quadratic_relations(problem: &Problem, opts: &SuiteOptions) -> Result<Vec<Item>> {
    let start = Instant::now();
    let cfg = &problem.cfg;
    let g = problem.generators();
    let points = problem.points();
    let (labels, ops) = generator_ops(g, false);
    let idx = g.indices();
    let a2 = crate::scalar::ring::rat(2) * cfg.a();
    let mut slots: Vec<(GenIndex, GenIndex)> =
        idx.iter().flat_map(|&b| idx.iter().filter(move |&&c| c > b).map(move |&c| (b, c))).collect();
    if cfg.n >= 3 && problem.pointwise() {
        slots = sample(slots, opts.pairs / 4, cfg.seed ^ 0xb0c);
    }
    slots.extend(idx.iter().map(|&b| (b, b)));
    slots.sort();
    let mut ids = Vec::new();
    for (b, c) in slots {
        {
            let mut id = Identity::new(format!("{{J(A,{b}),J^A({c})}}"));
            for &a in &idx {
                if a == b || a == c {
                    continue;
                }
                let (x, sx) = slot(&labels, a, b);
                let (y, sy) = slot(&labels, a, c);
                id = id.anticommutator(gauss(a.eta() * sx * sy, 0), x, y);
            }
            if b == c {
                id = id.constant(Gaussian::from_rational(&a2 * crate::scalar::ring::rat(b.eta())));
            }
            ids.push(id);
        }
    }
    let anchor = "{J_AB, J^A_C} = −2a η_BC, a = n − ½ − c";
    let cached = problem.pointwise().then(|| problem.tables(false));
    let (strategy, outcomes) = decide(&ops, cached, &ids, cfg.mode, &points)?;
    Ok(items_from("quadratic", anchor, &ids, strategy, outcomes, points.len(), start, opts.timings))
}
