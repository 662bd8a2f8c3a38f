use perdom::slopes::{self, ClosedFamily, SlopeFunction};
use perdom::weyl::{self, Cocharacter, Permutation};
use perdom::Slope;
use proptest::prelude::*;

/// Decreasing integer vectors shifted to sum zero, then scaled by `1/den`.
fn cocharacter(raw: Vec<i64>, den: i64) -> Cocharacter {
    let d = raw.len() as i64;
    let sum: i64 = raw.iter().sum();
    let mut v: Vec<Slope> = raw.iter().map(|&x| Slope::new(x * d - sum, den)).collect();
    v.sort_by(|a, b| b.cmp(a));
    Cocharacter::new(v).unwrap()
}

fn admissible(raw: &[i64]) -> bool {
    raw.iter().any(|&x| x != raw[0])
}

fn cocharacter_strategy(dmin: usize, dmax: usize) -> impl Strategy<Value = Cocharacter> {
    (dmin..=dmax)
        .prop_flat_map(|d| (prop::collection::vec(-4i64..=4, d), 1i64..=3))
        .prop_filter("at least two values", |(raw, _)| admissible(raw))
        .prop_map(|(raw, den)| cocharacter(raw, den))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kappa_is_an_order_reversing_bijection(mu in cocharacter_strategy(2, 5)) {
        for i in 1..mu.dim() {
            let pairs = slopes::kappa(i, &mu).unwrap();
            prop_assert_eq!(pairs.len(), slopes::enumerate_b(mu.entries(), i).unwrap().len());
        }
    }

    #[test]
    fn semistable_reflections_match_prefix_sums(mu in cocharacter_strategy(2, 6)) {
        let ss = ClosedFamily::semistable();
        for w in weyl::kostant_reps(&mu) {
            prop_assert_eq!(slopes::i_w(&w, &mu, &ss).unwrap(), slopes::i_w_semistable(&w, &mu).unwrap());
        }
    }

    /// `#(Δ \ Δ_w) <= l(w)` for every minimal coset representative.
    #[test]
    fn missing_roots_bounded_by_length(mu in cocharacter_strategy(2, 6)) {
        let ss = ClosedFamily::semistable();
        for w in weyl::kostant_reps(&mu) {
            let i_w = slopes::i_w(&w, &mu, &ss).unwrap();
            prop_assert!(i_w.len() <= w.length());
        }
    }

    /// For `w, s w ∈ W^mu` with `l(s w) = l(w) + 1`: `Δ_{sw} ⊆ Δ_w` and the
    /// two agree away from the root of `s`.
    #[test]
    fn left_multiplication_shrinks_delta(mu in cocharacter_strategy(2, 5)) {
        let ss = ClosedFamily::semistable();
        let d = mu.dim();
        let reps = weyl::kostant_reps(&mu);
        for w in &reps {
            for a in 1..d {
                let sw = Permutation::simple(d, a).unwrap().compose(w).unwrap();
                if sw.length() != w.length() + 1 || !reps.contains(&sw) {
                    continue;
                }
                let dw = slopes::delta_w(w, &mu, &ss).unwrap();
                let dsw = slopes::delta_w(&sw, &mu, &ss).unwrap();
                prop_assert!(dsw.is_subset(&dw));
                prop_assert_eq!(dsw.without(a), dw.without(a));
            }
        }
    }

    /// `w' <= w` in `W^mu` implies `Δ_w ⊆ Δ_{w'}`.
    #[test]
    fn delta_reverses_bruhat_order(mu in cocharacter_strategy(2, 5)) {
        let ss = ClosedFamily::semistable();
        let reps = weyl::kostant_reps(&mu);
        let deltas: Vec<_> = reps.iter().map(|w| slopes::delta_w(w, &mu, &ss).unwrap()).collect();
        for (a, u) in reps.iter().enumerate() {
            for (b, w) in reps.iter().enumerate() {
                if u.bruhat_leq(w).unwrap() {
                    prop_assert!(deltas[b].is_subset(&deltas[a]), "{} <= {}", u, w);
                }
            }
        }
    }

    #[test]
    fn length_is_subadditive(a in 0usize..120, b in 0usize..120) {
        let all: Vec<Permutation> = Permutation::all(5).collect();
        let (u, v) = (&all[a], &all[b]);
        prop_assert!(u.compose(v).unwrap().length() <= u.length() + v.length());
    }
}

#[test]
fn drinfeld_unstable_reflections() {
    let ss = ClosedFamily::semistable();
    for d in 2..=6 {
        let mu = SlopeFunction::drinfeld(d).unwrap().cocharacter();
        let reps = weyl::kostant_reps(&mu);
        assert_eq!(reps.len(), d);
        for (i, w) in reps.iter().enumerate() {
            assert_eq!(w.length(), i);
            let expected: Vec<usize> = (i + 1..d).collect();
            assert_eq!(slopes::delta_w(w, &mu, &ss).unwrap().indices(), expected);
        }
    }
}

#[test]
fn kappa_reverses_order_exhaustively() {
    for raw in [vec![2, 1, -3], vec![1, 1, -2], vec![3, 1, 0, -4], vec![1, 1, -1, -1], vec![4, 3, 2, 1, -10], vec![2, 2, 0, -2, -2]] {
        let mu = Cocharacter::from_integers(&raw).unwrap();
        for i in 1..mu.dim() {
            slopes::kappa(i, &mu).unwrap();
        }
    }
}
