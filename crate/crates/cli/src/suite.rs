//! The invariant suite behind `verify-all`, also reused by the acceptance
//! tests. Each check returns a short summary on success.

use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Result};
use itertools::Itertools;
use perdom::cohomology::{
    degree_inversion_check, dim_v, dim_v_checked, table_closed, table_open, trace_prediction, vanishing_check, RepKind, RepLabel,
};
use perdom::complexes::{build_stalk, quillen_witness, stalk_homology, verify_k_with, KReport, QuillenOutcome, SignRule};
use perdom::exactalg::{proper_subspaces, FieldSpec};
use perdom::flagenum::{bruhat_cell_count, count_points, for_each_flag, required_work};
use perdom::slopes::{self, ClosedFamily, SlopeFunction};
use perdom::weyl::{self, Cocharacter, ParabolicType, Permutation};
use perdom::Slope;
use rayon::prelude::*;

use crate::config::Mismatch;

/// Compositions of `d` into at least two parts.
fn compositions(d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=rest {
            cur.push(k);
            go(rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out.retain(|c| c.len() >= 2);
    out
}

/// Every cocharacter of dimension `d` whose distinct values are drawn
/// (before centering) from `-span..=span`, for every multiplicity pattern.
/// Covers regular and non-regular cases alike.
pub fn sample_cocharacters(d: usize, span: i64) -> Vec<Cocharacter> {
    let pool: Vec<i64> = (-span..=span).rev().collect();
    let mut out = Vec::new();
    for comp in compositions(d) {
        for picked in pool.iter().copied().combinations(comp.len()) {
            let sum: i64 = picked.iter().zip(&comp).map(|(&v, &m)| v * m as i64).sum();
            let entries: Vec<Slope> = picked
                .iter()
                .zip(&comp)
                .flat_map(|(&v, &m)| std::iter::repeat(Slope::from_integer(v * d as i64 - sum)).take(m))
                .collect();
            out.push(entries);
        }
    }
    // Centering forgets shifts, so different picks can coincide.
    out.sort();
    out.dedup();
    out.into_iter().map(|e| Cocharacter::new(e).expect("values are weakly decreasing")).collect()
}

/// `kappa_i` is a bijection onto the subfunctions of rank `i` and reverses
/// the orders (the library call fails otherwise). Returns the number of
/// pairs checked.
pub fn check_kappa(dmax: usize) -> Result<String> {
    let mut pairs = 0;
    let mut cochars = 0;
    for d in 2..=dmax {
        for mu in sample_cocharacters(d, 3) {
            cochars += 1;
            for i in 1..d {
                let labels = slopes::kappa(i, &mu)?;
                let expected = slopes::enumerate_b(mu.entries(), i)?.len();
                if labels.len() != expected {
                    bail!(Mismatch(format!("kappa_{i} for {mu:?}: {} labels, {expected} subfunctions", labels.len())));
                }
                pairs += labels.len();
            }
        }
    }
    Ok(format!("{cochars} cocharacters, {pairs} double cosets"))
}

/// For `w, s_a w ∈ W^mu` with `l(s_a w) = l(w) + 1`: `Δ_{s_a w} ⊆ Δ_w`
/// differing in at most `α_a`; and `#(S \ Δ_w) <= l(w)` throughout.
pub fn check_delta_monotonicity(dmax: usize, family: &ClosedFamily) -> Result<String> {
    let mut pairs = 0;
    let mut reps_seen = 0;
    for d in 2..=dmax {
        for mu in sample_cocharacters(d, 3) {
            let reps = weyl::kostant_reps(&mu);
            let deltas = reps.iter().map(|w| slopes::delta_w(w, &mu, family)).collect::<perdom::Result<Vec<_>>>()?;
            for (w, dw) in reps.iter().zip(&deltas) {
                reps_seen += 1;
                let missing = d - 1 - dw.len();
                ensure!(missing <= w.length(), Mismatch(format!("{mu:?}, w = {w}: {missing} missing roots > l(w)")));
                for a in 1..d {
                    let sw = Permutation::simple(d, a)?.compose(w)?;
                    if sw.length() != w.length() + 1 {
                        continue;
                    }
                    let Some(pos) = reps.iter().position(|x| *x == sw) else { continue };
                    let dsw = &deltas[pos];
                    pairs += 1;
                    ensure!(
                        dsw.is_subset(dw) && dw.len() - dsw.len() <= 1 && dsw.without(a) == dw.without(a),
                        Mismatch(format!("{mu:?}, w = {w}, a = {a}: Δ_w = {dw}, Δ_sw = {dsw}"))
                    );
                }
            }
        }
    }
    Ok(format!("{reps_seen} representatives, {pairs} (s, w) pairs"))
}

/// The expected open table for `g = (x_1, x_2^{d-1})`: for `i = 0..d`, the
/// summand `v_{P_(d-i,1,...,1)}` in degree `2(d-1) - i` with twist `i + 1 - d`.
pub fn drinfeld_expected(d: usize) -> Result<Vec<(usize, i64, RepLabel)>> {
    (0..d)
        .map(|i| {
            let mut comp = vec![d - i];
            comp.extend(std::iter::repeat(1).take(i));
            let p = ParabolicType::from_composition(&comp)?;
            Ok((2 * (d - 1) - i, i as i64 + 1 - d as i64, RepLabel::steinberg(p)))
        })
        .collect()
}

pub fn check_drinfeld(dmax: usize) -> Result<String> {
    for d in 2..=dmax {
        let table = table_open(&SlopeFunction::drinfeld(d)?, &ClosedFamily::semistable())?;
        let mut got: Vec<_> = table.entries.iter().map(|e| (e.degree, e.twist, e.rep)).collect();
        let mut want = drinfeld_expected(d)?;
        got.sort();
        want.sort();
        ensure!(got == want, Mismatch(format!("d = {d}: table {got:?}, formula {want:?}")));
    }
    Ok(format!("d = 2..{dmax}"))
}

/// Nothing below degree `d - 1`, and exactly `v_B` untwisted there.
pub fn check_vanishing(gs: &[SlopeFunction]) -> Result<String> {
    for g in gs {
        let table = table_open(g, &ClosedFamily::semistable())?;
        vanishing_check(&table).map_err(|e| Mismatch(format!("g = {g}: {e}")))?;
        let d = g.dim();
        let low: Vec<_> = table.entries.iter().filter(|e| e.degree < d - 1).collect();
        let middle: Vec<_> = table.in_degree(d - 1).collect();
        ensure!(
            low.is_empty()
                && middle.len() == 1
                && middle[0].twist == 0
                && middle[0].rep == RepLabel::steinberg(ParabolicType::borel(d))
                && middle[0].rep.kind == RepKind::SteinbergQuotient,
            Mismatch(format!("g = {g}: low degrees {low:?}, degree {} {middle:?}", d - 1))
        );
    }
    Ok(format!("{} slope functions", gs.len()))
}

pub fn check_degree_inversion() -> Result<String> {
    let mu = Cocharacter::from_integers(&[4, 3, 2, 1, -10])?;
    let pair = degree_inversion_check(&mu)?;
    ensure!(pair == (8, 7), Mismatch(format!("got {pair:?}, expected (8, 7)")));
    Ok("(8, 7)".into())
}

/// Point counts against traces: open, closed, and their sum against the
/// Bruhat cell count.
pub fn check_traces(g: &SlopeFunction, family: &ClosedFamily, q: u32, ns: &[u32], budget: u128) -> Result<Vec<(u32, u128, u128)>> {
    let open = table_open(g, family)?;
    let closed = table_closed(g, family)?;
    let mut rows = Vec::new();
    for &n in ns {
        let r = count_points(g, family, q, n, budget)?;
        let qn = (q as u128).pow(n);
        let cells = bruhat_cell_count(g, qn);
        let (po, pc) = (trace_prediction(&open, q as u128, n), trace_prediction(&closed, q as u128, n));
        ensure!(
            r.total == cells && r.in_open as i128 == po && r.in_y as i128 == pc,
            Mismatch(format!(
                "g = {g}, {family}, q = {q}, n = {n}: counted (Fl {}, Y {}, open {}), predicted (Fl {cells}, Y {pc}, open {po})",
                r.total, r.in_y, r.in_open
            ))
        );
        rows.push((n, r.in_open, r.in_y));
    }
    Ok(rows)
}

pub fn check_dims(dmax: usize, qs: &[u32]) -> Result<String> {
    let mut n = 0;
    for d in 2..=dmax {
        for &q in qs {
            for p in ParabolicType::all(d) {
                dim_v_checked(&p, q)?;
                n += 1;
            }
            let st = dim_v(&ParabolicType::borel(d), q as u128);
            let want = (q as u128).pow((d * (d - 1) / 2) as u32);
            ensure!(st == want, Mismatch(format!("Steinberg of GL_{d}(F_{q}): {st} vs {want}")));
        }
    }
    Ok(format!("{n} parabolic types"))
}

pub fn k_reports(d: usize, q: u32, rule: SignRule) -> Result<Vec<KReport>> {
    ParabolicType::all(d).filter(|p| !p.is_full()).map(|i0| Ok(verify_k_with(&i0, q, rule)?)).collect()
}

pub fn check_k(cases: &[(usize, u32)], rule: SignRule) -> Result<String> {
    let mut n = 0;
    for &(d, q) in cases {
        for r in k_reports(d, q, rule)? {
            ensure!(r.pass, Mismatch(format!("d = {d}, q = {q}, I0 = {}: homology {:?}, expected top {}", r.i0, r.homology, r.expected_top)));
            n += 1;
        }
    }
    Ok(format!("{n} complexes"))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StalkSummary {
    pub flags: usize,
    pub in_y: usize,
    pub largest_poset: usize,
}

/// For every flag over `F_{p^n}`: the stalk poset is empty exactly off `Y`,
/// and on `Y` it is acyclic with a contraction `U ↦ U + U_0`.
pub fn check_stalks(g: &SlopeFunction, family: &ClosedFamily, p: u32, n: u32, budget: u128) -> Result<StalkSummary> {
    family.require_within_semistable()?;
    let required = required_work(g, p, n);
    if required > budget {
        return Err(perdom::Error::BudgetExceeded { required, budget }.into());
    }
    let prime = FieldSpec::prime(p)?;
    let rational = proper_subspaces(&prime, g.dim());
    let field = FieldSpec::new(p, n)?;
    let mut summary = StalkSummary::default();
    let mut failure: Option<anyhow::Error> = None;
    for_each_flag(g, &field, |flag| {
        if failure.is_some() {
            return;
        }
        summary.flags += 1;
        let result = (|| -> Result<()> {
            let stalk = build_stalk(&flag, family, &rational)?;
            let in_y = !flag.in_open_stratum(family, &rational)?;
            ensure!(in_y != stalk.is_empty(), Mismatch(format!("{flag:?}: poset emptiness disagrees with the stratum")));
            if stalk.is_empty() {
                return Ok(());
            }
            summary.in_y += 1;
            summary.largest_poset = summary.largest_poset.max(stalk.len());
            let h = stalk_homology(&stalk)?;
            ensure!(h.iter().all(|&x| x == 0), Mismatch(format!("{flag:?}: reduced homology {h:?}")));
            if let QuillenOutcome::Counterexample(u) = quillen_witness(&stalk, &flag, family)? {
                bail!(Mismatch(format!("{flag:?}: U + U_0 leaves the poset for U = {u:?}")));
            }
            Ok(())
        })();
        if let Err(e) = result {
            failure = Some(e);
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(summary),
    }
}

pub fn sample_slope_functions() -> Vec<SlopeFunction> {
    let t = |v: &[(i64, i64, usize)]| SlopeFunction::from_triples(v).expect("fixture");
    vec![
        SlopeFunction::drinfeld(2).expect("fixture"),
        SlopeFunction::drinfeld(5).expect("fixture"),
        t(&[(2, 1, 1), (1, 1, 1), (-3, 1, 1)]),
        t(&[(1, 1, 2), (-2, 1, 1)]),
        t(&[(1, 1, 2), (-1, 1, 2)]),
        t(&[(4, 1, 1), (3, 1, 1), (2, 1, 1), (1, 1, 1), (-10, 1, 1)]),
        t(&[(1, 2, 2), (-1, 1, 1)]),
        t(&[(5, 1, 1), (2, 1, 2), (-1, 1, 1), (-4, 1, 2)]),
    ]
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub result: std::result::Result<String, String>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn pass(&self) -> bool {
        self.result.is_ok()
    }

    pub fn line(&self) -> String {
        let secs = self.elapsed.as_secs_f64();
        match &self.result {
            Ok(detail) => format!("PASS {:<16} {detail} ({secs:.2}s)", self.name),
            Err(why) => format!("FAIL {:<16} {why} ({secs:.2}s)", self.name),
        }
    }
}

pub struct SuiteOptions {
    pub family: ClosedFamily,
    pub sign_rule: SignRule,
    pub budget: u128,
}

type Check<'a> = (&'static str, Box<dyn Fn() -> Result<String> + Send + Sync + 'a>);

/// Runs every check (in parallel) and reports them in a fixed order.
pub fn run_suite(opts: &SuiteOptions) -> Vec<CheckOutcome> {
    let family = opts.family;
    let budget = opts.budget;
    let rule = opts.sign_rule;
    let t = |v: &[(i64, i64, usize)]| SlopeFunction::from_triples(v).expect("fixture");
    let g213 = t(&[(2, 1, 1), (1, 1, 1), (-3, 1, 1)]);
    let trace_cases: Vec<(SlopeFunction, u32, Vec<u32>)> = vec![
        (SlopeFunction::drinfeld(2).expect("fixture"), 2, vec![1, 2, 3]),
        (SlopeFunction::drinfeld(2).expect("fixture"), 3, vec![1, 2, 3]),
        (g213.clone(), 2, vec![1, 2, 3]),
        (t(&[(1, 1, 2), (-2, 1, 1)]), 2, vec![1, 2]),
        (t(&[(1, 1, 2), (-1, 1, 2)]), 2, vec![1, 2]),
        (SlopeFunction::drinfeld(3).expect("fixture"), 3, vec![1, 2]),
    ];
    let checks: Vec<Check> = vec![
        ("kappa", Box::new(|| check_kappa(5))),
        ("delta-monotone", Box::new(|| check_delta_monotonicity(5, &ClosedFamily::semistable()))),
        ("drinfeld", Box::new(|| check_drinfeld(6))),
        ("vanishing", Box::new(|| check_vanishing(&sample_slope_functions()))),
        ("degree-inversion", Box::new(check_degree_inversion)),
        (
            "traces",
            Box::new(move || {
                let mut n = 0;
                for (g, q, ns) in &trace_cases {
                    n += check_traces(g, &family, *q, ns, budget)?.len();
                }
                Ok(format!("{n} (g, q, n) cases"))
            }),
        ),
        ("dims", Box::new(|| check_dims(4, &[2, 3]))),
        ("k-complex", Box::new(move || check_k(&[(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)], rule))),
        (
            "stalks",
            Box::new(move || {
                let mut in_y = 0;
                for n in 1..=2 {
                    in_y += check_stalks(&g213, &family, 2, n, budget)?.in_y;
                }
                Ok(format!("{in_y} flags in the closed stratum"))
            }),
        ),
    ];
    checks
        .par_iter()
        .map(|(name, f)| {
            let start = Instant::now();
            let result = f().map_err(|e| format!("{e:#}"));
            CheckOutcome { name, result, elapsed: start.elapsed() }
        })
        .collect()
}
