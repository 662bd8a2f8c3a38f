//! Subspaces of `GF(p^n)^d` in canonical reduced row echelon form.

use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;

use super::field::{Elem, FieldSpec};
use crate::error::{Error, Result};

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns, strictly increasing.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(rows[r][c]);
        if inv != 1 {
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let factor = rows[i][c];
            for j in c..cols {
                let t = field.mul(factor, rows[r][j]);
                rows[i][j] = field.sub(rows[i][j], t);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Rank of the row span of `rows`.
pub fn rank(field: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut work = rows.to_vec();
    rref(field, &mut work).len()
}

/// A subspace of `field^ambient`, stored by its reduced echelon basis.
///
/// Two values compare equal exactly when their echelon bases coincide.
#[derive(Clone)]
pub struct SubspaceGF {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Elem>>,
}

impl SubspaceGF {
    /// Row span of `rows`, canonicalized.
    pub fn span(field: &FieldSpec, ambient: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        for row in &rows {
            if row.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, row.len()));
            }
            if row.iter().any(|&x| x >= field.order()) {
                return Err(Error::InvalidVector(format!("{row:?} has entries outside {field}")));
            }
        }
        let mut basis = rows;
        rref(field, &mut basis);
        Ok(SubspaceGF {
            field: field.clone(),
            ambient,
            basis,
        })
    }

    fn from_rref(field: &FieldSpec, ambient: usize, basis: Vec<Vec<Elem>>) -> Self {
        SubspaceGF {
            field: field.clone(),
            ambient,
            basis,
        }
    }

    pub fn zero(field: &FieldSpec, ambient: usize) -> Self {
        Self::from_rref(field, ambient, Vec::new())
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Self {
        Self::coordinate(field, ambient, &(0..ambient).collect::<Vec<_>>())
    }

    /// Span of the standard basis vectors `e_i`, `i` in `indices` (0-based).
    pub fn coordinate(field: &FieldSpec, ambient: usize, indices: &[usize]) -> Self {
        let rows = indices
            .iter()
            .map(|&i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Self::span(field, ambient, rows).expect("coordinate vectors are well formed")
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| row.iter().position(|&x| x != 0).expect("echelon rows are nonzero"))
            .collect()
    }

    fn check_compatible(&self, other: &SubspaceGF) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left_p: self.field.characteristic(),
                left_n: self.field.degree(),
                right_p: other.field.characteristic(),
                right_n: other.field.degree(),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceGF) -> Result<SubspaceGF> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        rref(&self.field, &mut rows);
        Ok(Self::from_rref(&self.field, self.ambient, rows))
    }

    /// `dim(self + other)` without materializing the sum.
    pub fn sum_dim(&self, other: &SubspaceGF) -> Result<usize> {
        self.check_compatible(other)?;
        if self.basis.is_empty() {
            return Ok(other.dim());
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(rref(&self.field, &mut rows).len())
    }

    pub fn intersection_dim(&self, other: &SubspaceGF) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// Intersection by the Zassenhaus construction: reduce `[[A, A], [B, 0]]`;
    /// rows whose left half vanishes span `A ∩ B` in their right half.
    pub fn intersect(&self, other: &SubspaceGF) -> Result<SubspaceGF> {
        self.check_compatible(other)?;
        let d = self.ambient;
        let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(self.dim() + other.dim());
        for a in &self.basis {
            rows.push(a.iter().chain(a.iter()).copied().collect());
        }
        for b in &other.basis {
            rows.push(b.iter().copied().chain(std::iter::repeat(0).take(d)).collect());
        }
        rref(&self.field, &mut rows);
        let meet: Vec<Vec<Elem>> = rows
            .into_iter()
            .filter(|r| r[..d].iter().all(|&x| x == 0))
            .map(|r| r[d..].to_vec())
            .collect();
        let out = Self::span(&self.field, d, meet)?;
        debug_assert_eq!(out.dim(), self.dim() + other.dim() - self.sum_dim(other)?);
        Ok(out)
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::AmbientMismatch(self.ambient, v.len()));
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(rref(&self.field, &mut rows).len() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &SubspaceGF) -> Result<bool> {
        Ok(self.dim() <= other.dim() && other.sum_dim(self)? == other.dim())
    }

    /// The same echelon basis read over a field extending the prime field.
    pub fn extend_scalars(&self, target: &FieldSpec) -> Result<SubspaceGF> {
        if !target.extends(&self.field) {
            return Err(Error::FieldMismatch {
                left_p: self.field.characteristic(),
                left_n: self.field.degree(),
                right_p: target.characteristic(),
                right_n: target.degree(),
            });
        }
        // Prime field elements keep their encoding, and an echelon basis
        // over GF(p) stays reduced over GF(p^n).
        Ok(Self::from_rref(target, self.ambient, self.basis.clone()))
    }

    /// Image of a subspace of `field^dim(self)` under the coordinate map given
    /// by this subspace's echelon basis.
    pub fn embed(&self, coords: &SubspaceGF) -> Result<SubspaceGF> {
        if coords.ambient != self.dim() {
            return Err(Error::AmbientMismatch(self.dim(), coords.ambient));
        }
        let f = &self.field;
        let rows = coords
            .basis
            .iter()
            .map(|c| {
                let mut v = vec![0; self.ambient];
                for (&coef, b) in c.iter().zip(&self.basis) {
                    if coef == 0 {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(coef, y));
                    }
                }
                v
            })
            .collect();
        Self::span(f, self.ambient, rows)
    }
}

impl PartialEq for SubspaceGF {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for SubspaceGF {}

impl Hash for SubspaceGF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

impl PartialOrd for SubspaceGF {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on (dimension, echelon basis); only meaningful for a fixed field.
impl Ord for SubspaceGF {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient, self.dim(), &self.basis).cmp(&(other.ambient, other.dim(), &other.basis))
    }
}

impl fmt::Debug for SubspaceGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row:?}")?;
        }
        write!(f, "> in {}^{}", self.field, self.ambient)
    }
}

/// Calls `visit` on every `dim`-dimensional subspace of `field^ambient`, each
/// exactly once, ordered by pivot set and then by free entries.
pub fn for_each_subspace(field: &FieldSpec, ambient: usize, dim: usize, mut visit: impl FnMut(SubspaceGF)) {
    if dim > ambient {
        return;
    }
    let q = field.order();
    for pivots in (0..ambient).combinations(dim) {
        // Free positions: right of the row's pivot, not in a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..ambient).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let mut template = vec![vec![0 as Elem; ambient]; dim];
        for (r, &pc) in pivots.iter().enumerate() {
            template[r][pc] = 1;
        }
        let mut counter = vec![0 as Elem; free.len()];
        loop {
            let mut rows = template.clone();
            for (&(r, c), &val) in free.iter().zip(&counter) {
                rows[r][c] = val;
            }
            visit(SubspaceGF::from_rref(field, ambient, rows));
            // Odometer increment.
            let mut k = 0;
            while k < counter.len() {
                counter[k] += 1;
                if counter[k] < q {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
            if k == counter.len() {
                break;
            }
        }
    }
}

pub fn enumerate_subspaces(field: &FieldSpec, ambient: usize, dim: usize) -> Vec<SubspaceGF> {
    let mut out = Vec::new();
    for_each_subspace(field, ambient, dim, |s| out.push(s));
    out
}

/// All proper nonzero subspaces of `field^ambient`, by increasing dimension.
pub fn proper_subspaces(field: &FieldSpec, ambient: usize) -> Vec<SubspaceGF> {
    (1..ambient).flat_map(|k| enumerate_subspaces(field, ambient, k)).collect()
}
