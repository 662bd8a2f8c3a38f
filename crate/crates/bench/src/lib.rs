//! Shared fixtures for the benchmarks.

use perdom::slopes::SlopeFunction;

/// `(2, 1, -3)`: full flags in dimension 3.
pub fn three_step() -> SlopeFunction {
    SlopeFunction::from_triples(&[(2, 1, 1), (1, 1, 1), (-3, 1, 1)]).expect("valid fixture")
}

/// `(1^2, -1^2)`: planes in a 4-space.
pub fn planes_in_four() -> SlopeFunction {
    SlopeFunction::from_triples(&[(1, 1, 2), (-1, 1, 2)]).expect("valid fixture")
}

/// `(4, 3, 2, 1, -10)`: a regular cocharacter in dimension 5.
pub fn regular_five() -> SlopeFunction {
    SlopeFunction::from_triples(&[(4, 1, 1), (3, 1, 1), (2, 1, 1), (1, 1, 1), (-10, 1, 1)]).expect("valid fixture")
}
