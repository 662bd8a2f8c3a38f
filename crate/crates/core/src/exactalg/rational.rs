//! Exact rational matrices, rank by fraction-free elimination, and homology of
//! finite cochain complexes.
//!
//! Matrices are stored as sparse rows. The complexes built in this crate have
//! entries in {0, 1, -1} and a handful of nonzeros per row, so sparse storage
//! keeps a 2000 x 1500 incidence matrix cheap.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// A sparse matrix over the rationals. Each row holds `(column, value)` pairs
/// with strictly increasing columns and nonzero values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions add up.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {rows} x {cols}")));
            }
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(MatrixQ { rows, cols, data })
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, row)| row.into_iter().enumerate().map(move |(j, v)| (i, j, v)));
        Self::from_triplets(n, cols, entries)
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |(j, _)| *j)
            .map(|k| self.data[r][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        MatrixQ {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.data[*k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(MatrixQ {
            rows: self.rows,
            cols: rhs.cols,
            data,
        })
    }

    /// Rows scaled to primitive integer vectors (same row space).
    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|row| {
                let lcm = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
                let ints: Vec<(usize, BigInt)> =
                    row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
                primitive(ints)
            })
            .collect()
    }

    /// Rank over the rationals, computed by fraction-free sparse elimination
    /// on the integer-scaled rows.
    pub fn rank(&self) -> usize {
        let rows = self.integer_rows();
        let small: Option<Vec<Vec<(usize, i64)>>> = rows
            .iter()
            .map(|r| r.iter().map(|(c, v)| v.to_i64().map(|x| (*c, x))).collect())
            .collect();
        if let Some(small) = small {
            if let Some(r) = eliminate_rank(self.cols, small) {
                return r;
            }
        }
        eliminate_rank(self.cols, rows).expect("big-integer elimination cannot overflow")
    }

    /// Rank of the reduction modulo a prime `p` (< 2^31). Denominators divisible
    /// by `p` are rejected.
    pub fn rank_mod(&self, p: u64) -> Result<usize> {
        let modp = BigInt::from(p);
        let mut dense_rows: Vec<Vec<(usize, u64)>> = Vec::new();
        for row in &self.data {
            let mut out = Vec::with_capacity(row.len());
            for (c, v) in row {
                let den = v.denom().mod_floor(&modp).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::Precondition(format!("denominator divisible by {p}")));
                }
                let num = v.numer().mod_floor(&modp).to_u64().unwrap();
                let x = num * pow_mod(den, p - 2, p) % p;
                if x != 0 {
                    out.push((*c, x));
                }
            }
            dense_rows.push(out);
        }
        Ok(rank_mod_rows(self.cols, dense_rows, p))
    }
}

fn primitive(row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| Integer::gcd(&g, v));
    if Zero::is_zero(&g) || g.is_one() {
        return row;
    }
    row.into_iter().map(|(c, v)| (c, v / &g)).collect()
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Integer-like scalars for fraction-free elimination. Arithmetic returns
/// `None` on overflow so that a fixed-width pass can fall back to big integers.
trait ElimScalar: Clone + PartialEq {
    fn vanishes(&self) -> bool;
    fn mul(a: &Self, x: &Self) -> Option<Self>;
    fn sub(a: &Self, b: &Self) -> Option<Self>;
    fn neg(a: &Self) -> Option<Self>;
    fn gcd_with(&self, other: &Self) -> Self;
    fn div_exact(&self, g: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl ElimScalar for i64 {
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        a.checked_mul(*x)
    }
    fn sub(a: &Self, b: &Self) -> Option<Self> {
        a.checked_sub(*b)
    }
    fn neg(a: &Self) -> Option<Self> {
        a.checked_neg()
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl ElimScalar for BigInt {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(a: &Self, x: &Self) -> Option<Self> {
        Some(a * x)
    }
    fn sub(a: &Self, b: &Self) -> Option<Self> {
        Some(a - b)
    }
    fn neg(a: &Self) -> Option<Self> {
        Some(-a)
    }
    fn gcd_with(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, g: &Self) -> Self {
        self / g
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// `a * x - b * y` for sparse rows, dropping zeros.
fn combine_rows<T: ElimScalar>(a: &T, x: &[(usize, T)], b: &T, y: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (c, v) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, T::sub(&T::mul(a, vx)?, &T::mul(b, vy)?)?)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, T::mul(a, vx)?)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, T::mul(a, vx)?)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, T::neg(&T::mul(b, vy)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !v.vanishes() {
            out.push((c, v));
        }
    }
    Some(out)
}

fn make_primitive<T: ElimScalar>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd_with(v);
    }
    if g.is_unit() {
        return;
    }
    for (_, v) in row.iter_mut() {
        *v = v.div_exact(&g);
    }
}

/// Incremental echelon form: each incoming row is reduced against the stored
/// pivot rows until it either vanishes or opens a new pivot column. Row
/// updates are `b * r - a * p`, followed by removal of the row content.
fn eliminate_rank<T: ElimScalar>(cols: usize, mut rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    rows.sort_by_key(Vec::len);
    let mut pivots: Vec<Option<Vec<(usize, T)>>> = vec![None; cols];
    let mut rank = 0;
    for mut r in rows {
        loop {
            let Some((c, a)) = r.first().cloned() else { break };
            match &pivots[c] {
                None => {
                    pivots[c] = Some(r);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    let b = &p[0].1;
                    r = combine_rows(b, &r, &a, p)?;
                    make_primitive(&mut r);
                }
            }
        }
    }
    Some(rank)
}

fn rank_mod_rows(cols: usize, rows: Vec<Vec<(usize, u64)>>, p: u64) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; cols];
    let mut rank = 0;
    for mut r in rows {
        loop {
            let Some(&(c, a)) = r.first() else { break };
            match &pivots[c] {
                None => {
                    // Normalize to a monic pivot row.
                    let inv = pow_mod(a, p - 2, p);
                    for (_, v) in r.iter_mut() {
                        *v = *v * inv % p;
                    }
                    pivots[c] = Some(r);
                    rank += 1;
                    break;
                }
                Some(piv) => {
                    let mut out = Vec::with_capacity(r.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < r.len() || j < piv.len() {
                        let (col, v) = match (r.get(i), piv.get(j)) {
                            (Some(&(cx, vx)), Some(&(cy, vy))) if cx == cy => {
                                i += 1;
                                j += 1;
                                (cx, (vx + p - a * vy % p) % p)
                            }
                            (Some(&(cx, vx)), Some(&(cy, _))) if cx < cy => {
                                i += 1;
                                (cx, vx)
                            }
                            (Some(&(cx, vx)), None) => {
                                i += 1;
                                (cx, vx)
                            }
                            (_, Some(&(cy, vy))) => {
                                j += 1;
                                (cy, (p - a * vy % p) % p)
                            }
                            (None, None) => unreachable!(),
                        };
                        if v != 0 {
                            out.push((col, v));
                        }
                    }
                    r = out;
                }
            }
        }
    }
    rank
}

/// A finite cochain complex `C^lo -> C^{lo+1} -> ... -> C^hi` of rational
/// vector spaces. `differentials[k]` maps degree `lo + k` to `lo + k + 1` and
/// has shape `dims[k + 1] x dims[k]` (it acts on column vectors).
#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    lowest_degree: i32,
    dims: Vec<usize>,
    differentials: Vec<MatrixQ>,
}

impl ChainComplexQ {
    /// Validates shapes and `d^{k+1} d^k = 0`.
    pub fn new(lowest_degree: i32, dims: Vec<usize>, differentials: Vec<MatrixQ>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} terms need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                differentials.len()
            )));
        }
        for (k, m) in differentials.iter().enumerate() {
            if m.cols() != dims[k] || m.rows() != dims[k + 1] {
                return Err(Error::Shape(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    lowest_degree + k as i32,
                    m.rows(),
                    m.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for k in 1..differentials.len() {
            if !differentials[k].mul(&differentials[k - 1])?.is_zero() {
                return Err(Error::MalformedComplex {
                    degree: lowest_degree + k as i32,
                });
            }
        }
        Ok(ChainComplexQ {
            lowest_degree,
            dims,
            differentials,
        })
    }

    pub fn lowest_degree(&self) -> i32 {
        self.lowest_degree
    }

    pub fn highest_degree(&self) -> i32 {
        self.lowest_degree + self.dims.len() as i32 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, degree: i32) -> Option<&MatrixQ> {
        let k = degree - self.lowest_degree;
        (k >= 0).then(|| self.differentials.get(k as usize)).flatten()
    }

    /// `dim H^p = dim C^p - rank d^p - rank d^{p-1}`, with zero maps off the ends.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(MatrixQ::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| {
                let deg = self.lowest_degree + k as i32;
                if deg.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rank_examples() {
        let m = MatrixQ::from_integers(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.rank(), 1);
        let id = MatrixQ::from_integers(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(id.rank(), 3);
        assert_eq!(MatrixQ::zeros(3, 4).rank(), 0);
        let frac = MatrixQ::from_dense(vec![vec![q(1, 2), q(1, 3)], vec![q(3, 2), q(1, 1)]]).unwrap();
        assert_eq!(frac.rank(), 1);
    }

    #[test]
    fn homology_examples() {
        let id = MatrixQ::from_integers(&[vec![1]]).unwrap();
        let c = ChainComplexQ::new(0, vec![1, 1], vec![id]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);

        let sum = MatrixQ::from_integers(&[vec![1, 1]]).unwrap();
        let c = ChainComplexQ::new(0, vec![2, 1], vec![sum]).unwrap();
        assert_eq!(c.homology_dims(), vec![1, 0]);
    }

    #[test]
    fn malformed_complex_is_rejected() {
        let a = MatrixQ::from_integers(&[vec![1]]).unwrap();
        let err = ChainComplexQ::new(-1, vec![1, 1, 1], vec![a.clone(), a]).unwrap_err();
        assert_eq!(err, Error::MalformedComplex { degree: 0 });
        let bad = MatrixQ::from_integers(&[vec![1, 1]]).unwrap();
        assert!(matches!(ChainComplexQ::new(0, vec![1, 1], vec![bad]), Err(Error::Shape(_))));
    }

    #[test]
    fn big_integer_fallback() {
        // Entries near i64::MAX force the fixed-width pass to overflow.
        let big = i64::MAX / 2;
        let m = MatrixQ::from_integers(&[vec![big, 3, 1], vec![7, big, 2], vec![big + 7, big + 3, 3]]).unwrap();
        assert_eq!(m.rank(), 2);
        let m = MatrixQ::from_integers(&[vec![big, 3], vec![7, big]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    /// Dense Gaussian elimination over `BigRational`, independent of the sparse path.
    fn dense_rank(rows: &[Vec<i64>]) -> usize {
        let mut m: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(rank, p);
            for i in 0..m.len() {
                if i != rank && !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[rank][c];
                    for j in 0..cols {
                        let t = &f * &m[rank][j];
                        m[i][j] -= t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense_and_modular(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..7)
        ) {
            let m = MatrixQ::from_integers(&rows).unwrap();
            let r = m.rank();
            prop_assert_eq!(r, dense_rank(&rows));
            prop_assert_eq!(r, m.transpose().rank());
            // Rank mod a 30-bit prime agrees for these small entries.
            prop_assert_eq!(r, m.rank_mod(1_073_741_789).unwrap());
        }
    }
}
