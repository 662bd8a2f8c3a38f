//! Exhaustive enumeration of flags of a given type over `GF(p^n)` and
//! classification against a closed family of subfunctions.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{enumerate_subspaces, for_each_subspace, proper_subspaces, FieldSpec, SubspaceGF};
use crate::qcount::{gaussian_binomial, gaussian_multinomial};
use crate::slopes::{ClosedFamily, FilteredSpace, SlopeFunction, Subfunction};
use crate::weyl;

/// A point of the flag variety: a filtration of type `g` over `GF(p^n)`.
pub type FlagPoint = FilteredSpace;

/// Default limit on flag × rational-subspace tests.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// The budget from `PERDOM_BUDGET`, else [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("PERDOM_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// `#Fl_g(F_{q'})` from the Bruhat decomposition: `sum_{w ∈ W^mu} q'^{l(w)}`.
pub fn bruhat_cell_count(g: &SlopeFunction, q: u128) -> u128 {
    weyl::kostant_reps(&g.cocharacter()).iter().map(|w| q.pow(w.length() as u32)).sum()
}

/// `#Fl_g(F_{q'})` as a Gaussian multinomial.
pub fn flag_count(g: &SlopeFunction, q: u128) -> u128 {
    let mults: Vec<usize> = g.parts().iter().map(|(_, m)| *m).collect();
    gaussian_multinomial(&mults, q)
}

/// Number of proper nonzero subspaces of `F_p^d`.
pub fn rational_subspace_count(d: usize, p: u128) -> u128 {
    (1..d).map(|k| gaussian_binomial(d, k, p)).sum()
}

/// Flag × rational-subspace tests needed to classify all flags.
pub fn required_work(g: &SlopeFunction, p: u32, n: u32) -> u128 {
    let q = (p as u128).pow(n);
    flag_count(g, q).saturating_mul(rational_subspace_count(g.dim(), p as u128).max(1))
}

fn check_budget(g: &SlopeFunction, p: u32, n: u32, budget: u128) -> Result<()> {
    let required = required_work(g, p, n);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Calls `visit` with the proper steps (ascending) of every chain of
/// subspaces of `field^ambient` with the given strictly increasing proper
/// dimensions, each chain exactly once.
pub fn for_each_partial_flag(field: &FieldSpec, ambient: usize, dims: &[usize], visit: &mut dyn FnMut(Vec<SubspaceGF>)) {
    let Some((&top, rest)) = dims.split_last() else {
        visit(Vec::new());
        return;
    };
    for_each_subspace(field, ambient, top, |t| {
        chains_below(field, &t, rest, visit);
    });
}

/// Chains with top step `t`: sub-chains in coordinates of `t`, embedded.
fn chains_below(field: &FieldSpec, t: &SubspaceGF, rest: &[usize], visit: &mut dyn FnMut(Vec<SubspaceGF>)) {
    for_each_partial_flag(field, t.dim(), rest, &mut |sub| {
        let mut steps: Vec<SubspaceGF> = sub.iter().map(|s| t.embed(s).expect("coordinates fit")).collect();
        steps.push(t.clone());
        visit(steps);
    });
}

fn proper_step_dims(g: &SlopeFunction) -> Vec<usize> {
    let mut dims = g.step_dims();
    dims.pop();
    dims
}

/// Visits every flag of type `g` over `field`.
pub fn for_each_flag(g: &SlopeFunction, field: &FieldSpec, mut visit: impl FnMut(FlagPoint)) {
    for_each_partial_flag(field, g.dim(), &proper_step_dims(g), &mut |steps| {
        visit(flag_from_steps(g, field, steps));
    });
}

fn flag_from_steps(g: &SlopeFunction, field: &FieldSpec, mut steps: Vec<SubspaceGF>) -> FlagPoint {
    steps.push(SubspaceGF::full(field, g.dim()));
    FilteredSpace::from_steps(g, steps).expect("enumerated chains are flags of type g")
}

/// All flags of type `g` over `GF(p^n)`, refusing instances whose
/// classification would exceed `budget`.
pub fn enumerate_flags(g: &SlopeFunction, p: u32, n: u32, budget: u128) -> Result<Vec<FlagPoint>> {
    check_budget(g, p, n, budget)?;
    let field = FieldSpec::new(p, n)?;
    let mut out = Vec::new();
    for_each_flag(g, &field, |f| out.push(f));
    Ok(out)
}

/// Runs `f` on every flag, in parallel over the choice of the largest proper
/// step, and reduces the results with `merge`.
fn par_fold_flags<T: Send>(
    g: &SlopeFunction,
    field: &FieldSpec,
    init: impl Fn() -> T + Sync + Send,
    f: impl Fn(&mut T, FlagPoint) + Sync + Send,
    merge: impl Fn(T, T) -> T + Sync + Send,
) -> T {
    let dims = proper_step_dims(g);
    let Some((&top, rest)) = dims.split_last() else {
        let mut acc = init();
        f(&mut acc, flag_from_steps(g, field, Vec::new()));
        return acc;
    };
    enumerate_subspaces(field, g.dim(), top)
        .into_par_iter()
        .map(|t| {
            let mut acc = init();
            chains_below(field, &t, rest, &mut |steps| f(&mut acc, flag_from_steps(g, field, steps)));
            acc
        })
        .reduce(&init, merge)
}

/// Point counts of `Fl_g`, `Y(B')` and `Fl_g(B')` over `F_{p^n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub q: u32,
    pub n: u32,
    pub total: u128,
    pub in_y: u128,
    pub in_open: u128,
    /// `#Y(h)` for every subfunction `h` (membership in the family aside).
    pub per_h: BTreeMap<Subfunction, u128>,
}

#[derive(Default)]
struct Tally {
    total: u128,
    in_y: u128,
    per_h: BTreeMap<Subfunction, u128>,
}

/// Rational proper subspaces of `F_p^d`, read over `field`.
pub fn rational_subspaces_over(d: usize, field: &FieldSpec) -> Result<Vec<SubspaceGF>> {
    let prime = FieldSpec::prime(field.characteristic())?;
    proper_subspaces(&prime, d).iter().map(|u| u.extend_scalars(field)).collect()
}

/// Classifies every flag of type `g` over `F_{p^n}` against `family`.
pub fn count_points(g: &SlopeFunction, family: &ClosedFamily, p: u32, n: u32, budget: u128) -> Result<CountReport> {
    check_budget(g, p, n, budget)?;
    let field = FieldSpec::new(p, n)?;
    let rational = rational_subspaces_over(g.dim(), &field)?;
    let tally = par_fold_flags(
        g,
        &field,
        Tally::default,
        |acc, flag| {
            acc.total += 1;
            let types: std::collections::BTreeSet<Subfunction> =
                rational.iter().map(|u| flag.induced_type(u).expect("nonzero compatible subspace")).collect();
            if types.iter().any(|h| family.contains(h)) {
                acc.in_y += 1;
            }
            for h in types {
                *acc.per_h.entry(h).or_default() += 1;
            }
        },
        |mut a, b| {
            a.total += b.total;
            a.in_y += b.in_y;
            for (h, c) in b.per_h {
                *a.per_h.entry(h).or_default() += c;
            }
            a
        },
    );
    let mut per_h: BTreeMap<Subfunction, u128> = g.all_subfunctions().into_iter().map(|h| (h, 0)).collect();
    per_h.extend(tally.per_h);
    Ok(CountReport {
        q: p,
        n,
        total: tally.total,
        in_y: tally.in_y,
        in_open: tally.total - tally.in_y,
        per_h,
    })
}

/// `#Y(h)(F_{p^n})`: flags admitting a rational subspace of type exactly `h`.
pub fn count_yh(g: &SlopeFunction, h: &Subfunction, p: u32, n: u32, budget: u128) -> Result<u128> {
    if h.is_empty() || h.len() >= g.dim() || !h.is_sub_of(g) {
        return Err(Error::Precondition(format!("{h} is not a proper nonzero subfunction of {g}")));
    }
    check_budget(g, p, n, budget)?;
    let field = FieldSpec::new(p, n)?;
    let rational: Vec<SubspaceGF> = rational_subspaces_over(g.dim(), &field)?.into_iter().filter(|u| u.dim() == h.len()).collect();
    Ok(par_fold_flags(
        g,
        &field,
        || 0u128,
        |acc, flag| {
            let hit = rational.iter().any(|u| &flag.induced_type(u).expect("nonzero subspace") == h);
            *acc += u128::from(hit);
        },
        |a, b| a + b,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Slope;
    use std::collections::HashSet;

    fn g(triples: &[(i64, i64, usize)]) -> SlopeFunction {
        SlopeFunction::from_triples(triples).unwrap()
    }

    fn g213() -> SlopeFunction {
        g(&[(2, 1, 1), (1, 1, 1), (-3, 1, 1)])
    }

    #[test]
    fn flag_counts() {
        let cases = [
            (g213(), 2, 1, 21u128),
            (g(&[(1, 1, 1), (-1, 1, 1)]), 2, 2, 5),
            (g(&[(1, 1, 2), (-1, 1, 2)]), 2, 1, 35),
            (g(&[(3, 1, 1), (-1, 1, 3)]), 3, 1, 40),
        ];
        for (g, p, n, expected) in cases {
            let flags = enumerate_flags(&g, p, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(flags.len() as u128, expected);
            assert_eq!(bruhat_cell_count(&g, (p as u128).pow(n)), expected);
            assert_eq!(flag_count(&g, (p as u128).pow(n)), expected);
            let distinct: HashSet<_> = flags.iter().collect();
            assert_eq!(distinct.len(), flags.len());
        }
    }

    #[test]
    fn projective_line_counts() {
        let g = g(&[(1, 1, 1), (-1, 1, 1)]);
        let ss = ClosedFamily::semistable();
        for (n, open) in [(1, 0), (2, 2), (3, 6)] {
            let r = count_points(&g, &ss, 2, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.in_open, open);
            assert_eq!(r.total, r.in_y + r.in_open);
            assert_eq!(r.in_y, 3);
        }
        let h = Subfunction::new(vec![Slope::from_integer(1)]);
        assert_eq!(count_yh(&g, &h, 2, 1, DEFAULT_BUDGET).unwrap(), 3);
    }

    #[test]
    fn three_step_counts() {
        let ss = ClosedFamily::semistable();
        for (n, open) in [(1, 0), (2, 0), (3, 216)] {
            let r = count_points(&g213(), &ss, 2, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(r.in_open, open, "n = {n}");
        }
    }

    /// Planes over GF(8) meeting GF(2)^3 in no rational line, times the 9
    /// lines inside each such plane.
    #[test]
    fn three_step_hand_count() {
        let gf2 = FieldSpec::prime(2).unwrap();
        let gf8 = FieldSpec::new(2, 3).unwrap();
        let rational_lines: Vec<_> = enumerate_subspaces(&gf2, 3, 1).iter().map(|l| l.extend_scalars(&gf8).unwrap()).collect();
        let good = enumerate_subspaces(&gf8, 3, 2)
            .into_iter()
            .filter(|p| rational_lines.iter().all(|l| !l.is_subspace_of(p).unwrap()))
            .count();
        assert_eq!(good * 9, 216);
    }

    #[test]
    fn base_field_is_never_semistable_with_two_jumps() {
        let ss = ClosedFamily::semistable();
        for g in [g213(), g(&[(3, 1, 1), (-1, 1, 1), (-2, 1, 1)]), g(&[(2, 1, 1), (0, 1, 2), (-2, 1, 1)])] {
            assert_eq!(count_points(&g, &ss, 3, 1, DEFAULT_BUDGET).unwrap().in_open, 0);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_points(&g213(), &ClosedFamily::semistable(), 2, 3, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 100, .. }));
        assert_eq!(required_work(&g213(), 2, 1), 21 * 14);
    }

    #[test]
    fn lowering_the_threshold_grows_y() {
        let g = g213();
        let mut last = 0;
        for t in [4, 3, 2, 1] {
            let r = count_points(&g, &ClosedFamily::at_least(Slope::from_integer(t)), 2, 2, DEFAULT_BUDGET).unwrap();
            assert!(r.in_y >= last);
            last = r.in_y;
            let bound: u128 = r.per_h.iter().filter(|(h, _)| h.degree() >= Slope::from_integer(t)).map(|(_, c)| c).sum();
            assert!(r.in_y <= bound);
        }
    }
}
