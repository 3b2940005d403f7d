//! Representation theory: weights, dimensions, the `B_n ↓ D_n` branching
//! rule, the abstract algebra `so(2, 2n+1)` and the suites built on them.

pub mod algebra;
pub mod freudenthal;
pub mod weight;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::radial::{radial_eigenfunction, radial_operator, RadialOperator, SpectralLabel};
use crate::report::{Item, Strategy};
use crate::scalar::ring::{rat, ratio};
use crate::scalar::{Ring, Scalar};
use crate::{ExactValue, Rational};

pub use weight::{branch_b_to_d, weyl_dimension, Series, Weight};

fn mu(two_mu: u32) -> Rational {
    ratio(two_mu as i64, 2)
}

/// `(I+μ, μ, …, μ)`.
pub fn level_weight(level: u32, n: usize, two_mu: u32) -> Weight {
    let mut e = vec![mu(two_mu); n];
    e[0] += rat(level as i64);
    Weight::new(Series::B, e)
}

/// The `D_n` constituents of angular momentum `l`: `(l+½, ½, …, ±½)` for
/// `μ = ½`, `(l, 0, …, 0)` for `μ = 0`.
pub fn angular_weights(l: u32, n: usize, two_mu: u32) -> Vec<Weight> {
    let base = level_weight(l, n, two_mu).entries;
    if two_mu == 0 {
        return vec![Weight::new(Series::D, base)];
    }
    [1, -1]
        .into_iter()
        .map(|s| {
            let mut e = base.clone();
            e[n - 1] *= rat(s);
            Weight::new(Series::D, e)
        })
        .collect()
}

fn sorted(mut ws: Vec<Weight>) -> Vec<Weight> {
    ws.sort();
    ws
}

fn target(level: u32, n: usize, two_mu: u32) -> Vec<Weight> {
    sorted((0..=level).flat_map(|l| angular_weights(l, n, two_mu)).collect())
}

/// Number of interlacing constituents, without enumerating them.
fn branch_count(lambda: &Weight) -> Rational {
    let e = &lambda.entries;
    let mut c = rat(2) * e.last().unwrap() + rat(1);
    for w in e.windows(2) {
        c *= &w[0] - &w[1] + rat(1);
    }
    c
}

/// Dominant `B_n` weights in the class of `μ` with `λ₁ ≤ bound` whose
/// restriction to `D_n` is exactly `{D_l : l ≤ I}`.
pub fn uniqueness_search(level: u32, n: usize, two_mu: u32, bound: u32) -> Result<(Vec<Weight>, usize)> {
    let want = target(level, n, two_mu);
    let start = mu(two_mu);
    let mut candidates: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..n {
        candidates = candidates
            .into_iter()
            .flat_map(|p| {
                let hi = p.last().cloned().unwrap_or_else(|| rat(bound as i64));
                let mut v = Vec::new();
                let mut x = start.clone();
                while x <= hi {
                    v.push([p.clone(), vec![x.clone()]].concat());
                    x += rat(1);
                }
                v
            })
            .collect();
    }
    let total = candidates.len();
    let mut hits = Vec::new();
    for c in candidates {
        let w = Weight::new(Series::B, c);
        if branch_count(&w) == rat(want.len() as i64) && sorted(branch_b_to_d(&w)?) == want {
            hits.push(w);
        }
    }
    Ok((hits, total))
}

fn dims(ws: &[Weight]) -> Result<Vec<u64>> {
    ws.iter().map(weyl_dimension).collect()
}

/// Decomposition, branching, uniqueness and degeneracy for `I ≤ imax`.
pub fn verify_decompositions(n: usize, two_mu: u32, imax: u32, timings: bool) -> Result<Vec<Item>> {
    if two_mu > 1 || n < 2 {
        return Err(Error::UnsupportedRep { n, two_mu });
    }
    let mut items = Vec::new();
    let suite = "reps";
    let normal = Strategy::ExactNormalForm;
    for level in 0..=imax {
        let start = Instant::now();
        let lambda = level_weight(level, n, two_mu);
        let parent = weyl_dimension(&lambda)?;
        let parts = dims(&target(level, n, two_mu))?;
        let sum: u64 = parts.iter().sum();
        let terms: Vec<String> = (0..=level)
            .map(|l| {
                let d = dims(&angular_weights(l, n, two_mu)).unwrap();
                d.iter().map(u64::to_string).collect::<Vec<_>>().join("+")
            })
            .collect();
        let item = Item::new(suite, format!("dim[I={level}]"), "dim D^I = Σ_{l≤I} dim D_l", normal)
            .witness(format!("dim {lambda} = {parent}; Σ = {}", terms.join(" + ")))
            .verdict((parent != sum).then(|| format!("{parent} ≠ {sum}")));
        items.push(item.timed(start, timings));

        let start = Instant::now();
        let got = sorted(branch_b_to_d(&lambda)?);
        let want = target(level, n, two_mu);
        let listed: Vec<String> = got.iter().map(ToString::to_string).collect();
        let item = Item::new(suite, format!("branch[I={level}]"), "D^I ↓ D_n = ⊕_{l≤I} D_l", normal)
            .witness(listed.join(" "))
            .verdict((got != want).then(|| format!("expected {} constituents, got {}", want.len(), got.len())));
        items.push(item.timed(start, timings));

        let start = Instant::now();
        let (hits, total) = uniqueness_search(level, n, two_mu, imax + 1)?;
        let residual = match hits.as_slice() {
            [w] if *w == lambda => None,
            [w] => Some(format!("unique solution {w} is not {lambda}")),
            _ => Some(format!("{} solutions", hits.len())),
        };
        let item = Item::new(suite, format!("unique[I={level}]"), "only one B_n weight restricts to ⊕_{l≤I} D_l", normal)
            .witness(format!("{} of {total} dominant weights with λ₁ ≤ {}", hits.len(), imax + 1))
            .verdict(residual);
        items.push(item.timed(start, timings));

        let start = Instant::now();
        let energy = crate::radial::energy(level, n, two_mu);
        let mut sectors = 0;
        let mut total_dim = 0;
        for k in 1..=level + 2 {
            for l in 0..=level + 1 {
                let label = SpectralLabel::new(k, l, n, two_mu)?;
                if label.energy() == energy {
                    sectors += 1;
                    total_dim += dims(&angular_weights(l, n, two_mu))?.iter().sum::<u64>();
                }
            }
        }
        let residual = if sectors != level + 1 {
            Some(format!("{sectors} sectors at E_{level}"))
        } else if total_dim != parent {
            Some(format!("{total_dim} ≠ {parent}"))
        } else {
            None
        };
        let item = Item::new(suite, format!("degeneracy[I={level}]"), "Σ_{k+l=I+1} dim D_l = dim D^I", normal)
            .witness(format!("{sectors} sectors, {total_dim} states at E = {energy}"))
            .verdict(residual);
        items.push(item.timed(start, timings));
    }
    Ok(items)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KTypeRow {
    pub l: u32,
    /// `−l_μ − 1`.
    pub spin2: Rational,
    pub weight: Weight,
    pub dim: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KTypeTable {
    pub rows: Vec<KTypeRow>,
    /// `(−(n+μ−½), μ, …, μ)`, ordered `(H₀, H₁, …, H_n)`.
    pub highest_weight: Weight,
}

pub fn k_type_table(n: usize, two_mu: u32, lmax: u32) -> Result<KTypeTable> {
    let rows = (0..=lmax)
        .map(|l| {
            let weight = level_weight(l, n, two_mu);
            let dim = weyl_dimension(&weight)?;
            let spin2 = -crate::radial::l_mu(l, n, two_mu) - rat(1);
            Ok(KTypeRow { l, spin2, weight, dim })
        })
        .collect::<Result<_>>()?;
    let mut hw = vec![-(rat(n as i64) + mu(two_mu) - ratio(1, 2))];
    hw.extend(std::iter::repeat_n(mu(two_mu), n));
    Ok(KTypeTable { rows, highest_weight: Weight::new(Series::G, hw) })
}

/// K-type rows against the radial sector: the `H₀ = −Γ̂_{−1}` eigenvalue of
/// the lowest state in each `l` is the tabulated `Spin(2)` weight.
pub fn verify_k_types(n: usize, two_mu: u32, lmax: u32, timings: bool) -> Result<Vec<Item>> {
    let table = k_type_table(n, two_mu, lmax)?;
    let mut items = Vec::new();
    let normal = Strategy::ExactNormalForm;
    for row in &table.rows {
        let start = Instant::now();
        let label = SpectralLabel::new(1, row.l, n, two_mu)?;
        let psi = radial_eigenfunction(&label, true)?;
        let image = radial_operator(RadialOperator::GammaBottom, row.l, n, two_mu, true).apply(&psi);
        let expect = ExactValue::from_rational(&row.spin2).negate();
        let residual = match image.ratio_to(&psi) {
            Some(v) if v == expect => None,
            Some(v) => Some(format!("−Γ̂_{{−1}} eigenvalue {} ≠ {}", v.negate(), row.spin2)),
            None => Some("lowest state is not an eigenfunction".into()),
        };
        let item = Item::new("reps", format!("k-type[l={}]", row.l), "D(−l_μ−1) ⊗ D^l", normal)
            .witness(format!("({}, {}, {}, {})", row.l, row.spin2, row.weight, row.dim))
            .verdict(residual);
        items.push(item.timed(start, timings));
    }
    let steps = table.rows.windows(2).all(|w| &w[1].spin2 - &w[0].spin2 == rat(-1));
    items.push(
        Item::new("reps", "k-type-steps", "Spin(2) weights step by −1 in l", normal)
            .verdict((!steps).then(|| "non-unit step".to_string())),
    );
    let hw = &table.highest_weight;
    let consistent = table.rows.first().is_some_and(|r| {
        r.spin2 == hw.entries[0] && r.weight.entries == hw.entries[1..]
    });
    items.push(
        Item::new("reps", "highest-weight", "(−(n+μ−1/2), μ, …, μ)", normal)
            .witness(hw.to_string())
            .verdict((!consistent).then(|| "disagrees with the l = 0 K-type".to_string())),
    );
    Ok(items)
}

fn combination_string(c: &algebra::Combination) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|(k, (a, b))| format!("({})M[{a},{b}]", crate::scalar::quad::fmt_gaussian(k)))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Structure constants, Jacobi, Cartan basis, root vectors and the `sl(2)`
/// ladder in the defining representation.
pub fn abstract_algebra_checks(n: usize, seed: u64, timings: bool) -> Result<Vec<Item>> {
    use algebra::*;
    if n < 2 {
        return Err(Error::UnsupportedRep { n, two_mu: 0 });
    }
    let suite = "abstract";
    let normal = Strategy::ExactNormalForm;
    let mut items = Vec::new();
    let labels = labels(n);
    let mats: Vec<_> = labels.iter().map(|&(a, b)| defining_matrix(n, a, b)).collect();

    let start = Instant::now();
    let expect = (2 * n + 3) * (2 * n + 2) / 2;
    let r = rank(&mats);
    items.push(
        Item::new(suite, "dimension", "dim g = (2n+3)(2n+2)/2", normal)
            .witness(format!("{} generators, rank {r}", labels.len()))
            .verdict((labels.len() != expect || r != expect).then(|| format!("expected {expect}")))
            .timed(start, timings),
    );

    let start = Instant::now();
    let mut bad = None;
    for (x, mx) in labels.iter().zip(&mats) {
        for (y, my) in labels.iter().zip(&mats) {
            let formula = bracket_formula(*x, *y);
            let ok = decompose(n, &mx.commutator(my)).is_some_and(|got| {
                let mut got = got;
                got.sort_by_key(|(_, k)| *k);
                got == formula
            });
            if !ok && bad.is_none() {
                bad = Some(format!("[M{x:?}, M{y:?}] ≠ {}", combination_string(&formula)));
            }
        }
    }
    items.push(
        Item::new(suite, "structure-constants", "[M_AB, M_A'B'] = i(η_AA' M_BB' + η_BB' M_AA' − η_AB' M_BA' − η_BA' M_AB')", normal)
            .witness(format!("{} ordered pairs", labels.len() * labels.len()))
            .verdict(bad)
            .timed(start, timings),
    );

    let start = Instant::now();
    let antisym = labels.iter().all(|x| {
        labels.iter().all(|y| {
            let fwd = bracket_formula(*x, *y);
            let back: Combination = bracket_formula(*y, *x).into_iter().map(|(c, k)| (c.negate(), k)).collect();
            fwd == back
        })
    });
    items.push(
        Item::new(suite, "antisymmetry", "[M_AB, M_A'B'] = −[M_A'B', M_AB]", normal)
            .verdict((!antisym).then(|| "bracket table is not antisymmetric".to_string()))
            .timed(start, timings),
    );

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for _ in 0..30 {
        let t: Vec<usize> = (0..3).map(|_| *(0..mats.len()).collect::<Vec<_>>().choose(&mut rng).unwrap()).collect();
        let (a, b, c) = (&mats[t[0]], &mats[t[1]], &mats[t[2]]);
        let sum = a.commutator(&b.commutator(c)).add(&b.commutator(&c.commutator(a))).add(&c.commutator(&a.commutator(b)));
        if !sum.is_zero() && bad.is_none() {
            bad = Some(format!("triple {:?} {:?} {:?}", labels[t[0]], labels[t[1]], labels[t[2]]));
        }
    }
    items.push(
        Item::new(suite, "jacobi", "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0", normal)
            .witness(format!("30 triples, seed {seed}"))
            .verdict(bad)
            .timed(start, timings),
    );

    let start = Instant::now();
    let hs = cartan(n);
    let commute = hs.iter().all(|a| hs.iter().all(|b| a.commutator(b).is_zero()));
    items.push(
        Item::new(suite, "cartan", "[H_i, H_j] = 0", normal)
            .witness("H₀ = M[-1,0], H_j = −M[2j−1,2j]")
            .verdict((!commute).then(|| "Cartan elements do not commute".to_string()))
            .timed(start, timings),
    );

    let roots = root_vectors(n);
    let hs_exact: Vec<Mat> = hs.iter().map(exact).collect();
    for rv in &roots {
        let start = Instant::now();
        let mut residual = None;
        for (i, h) in hs_exact.iter().enumerate() {
            let lhs = h.commutator(&rv.matrix);
            let rhs = rv.matrix.scale(&ExactValue::from_rational(&rat(rv.root[i])));
            if lhs != rhs && residual.is_none() {
                residual = Some(format!("[H{i}, E] ≠ {}·E", rv.root[i]));
            }
        }
        items.push(
            Item::new(suite, format!("root[{}]", rv.label()), "[H_i, E_α] = α_i E_α", normal)
                .witness(format!("α₀ = {}", rv.root[0]))
                .verdict(residual)
                .timed(start, timings),
        );
    }

    let start = Instant::now();
    let mut basis = hs.clone();
    let two = ExactValue::sqrt(&rat(2));
    for rv in &roots {
        // clear the 1/√2 so the span is taken over ℚ(i)
        let scaled = if rv.root.iter().filter(|&&c| c != 0).count() == 1 { rv.matrix.scale(&two) } else { rv.matrix.clone() };
        let g = scaled.try_map(|x| x.as_base().cloned().ok_or(()));
        match g {
            Ok(g) => basis.push(g),
            Err(()) => basis.push(crate::matrix::Matrix::zeros(1, 1)),
        }
    }
    let well_formed = basis.iter().all(|m| m.rows() == 2 * n + 3);
    let r = if well_formed { rank(&basis) } else { 0 };
    items.push(
        Item::new(suite, "cartan-basis", "{H_i, E_α} spans g", normal)
            .witness(format!("{} Cartan + {} root vectors, rank {r}", hs.len(), roots.len()))
            .verdict((r != expect).then(|| format!("rank {r} ≠ {expect}")))
            .timed(start, timings),
    );

    let h0 = &hs_exact[0];
    for (sign, tag) in [(1i64, "+"), (-1, "-")] {
        let start = Instant::now();
        let e = ladder(n, sign);
        let ok = h0.commutator(&e) == e.scale(&ExactValue::from_rational(&rat(sign)));
        items.push(
            Item::new(suite, format!("ladder[{tag}]"), "[M_{-1,0}, E_±] = ±E_±", normal)
                .witness("E_± = (M[-1,D+1] ± iM[0,D+1])/√2")
                .verdict((!ok).then(|| "wrong eigenvalue".to_string()))
                .timed(start, timings),
        );
    }
    Ok(items)
}
