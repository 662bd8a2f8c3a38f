//! Slope functions, their subfunctions, closed families of subfunctions, and
//! filtered vector spaces of a given type.

use std::borrow::Cow;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::SubspaceGF;
use crate::weyl::{self, Cocharacter, ParabolicType, Permutation};
use crate::Slope;

/// A function `g` from slope values to positive multiplicities with
/// `sum g(x) = d` and `sum x g(x) = 0`, stored with values strictly
/// decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SlopeFunction {
    parts: Vec<(Slope, usize)>,
}

impl SlopeFunction {
    /// Validates and normalizes `(value, multiplicity)` pairs in any order.
    pub fn new(pairs: &[(Slope, usize)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidSlopeFunction("no slope values".into()));
        }
        if let Some((x, _)) = pairs.iter().find(|(_, m)| *m == 0) {
            return Err(Error::InvalidSlopeFunction(format!("multiplicity of {x} is not positive")));
        }
        let mut parts = pairs.to_vec();
        parts.sort_by(|a, b| b.0.cmp(&a.0));
        if let Some(w) = parts.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidSlopeFunction(format!("duplicate value {}", w[0].0)));
        }
        let weighted: Slope = parts.iter().map(|(x, m)| x * Slope::from_integer(*m as i64)).sum();
        if !weighted.is_zero() {
            return Err(Error::InvalidSlopeFunction(format!("weighted sum is {weighted}, not 0")));
        }
        Ok(SlopeFunction { parts })
    }

    /// From `[numerator, denominator, multiplicity]` triples.
    pub fn from_triples(triples: &[(i64, i64, usize)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(triples.len());
        for &(num, den, mult) in triples {
            if den == 0 {
                return Err(Error::InvalidSlopeFunction(format!("zero denominator in {num}/{den}")));
            }
            pairs.push((Slope::new(num, den), mult));
        }
        Self::new(&pairs)
    }

    /// `g` with `usupp(g) = values` (any order, repeats allowed).
    pub fn from_values(values: &[Slope]) -> Result<Self> {
        let pairs: Vec<(Slope, usize)> = values.iter().copied().counts().into_iter().collect();
        Self::new(&pairs)
    }

    /// The Drinfeld type `(d-1, -1, ..., -1)` for `d >= 2`.
    pub fn drinfeld(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidSlopeFunction("Drinfeld type needs d >= 2".into()));
        }
        Self::from_triples(&[(d as i64 - 1, 1, 1), (-1, 1, d - 1)])
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    /// `(value, multiplicity)` with values strictly decreasing.
    pub fn parts(&self) -> &[(Slope, usize)] {
        &self.parts
    }

    /// `[numerator, denominator, multiplicity]` triples, values decreasing.
    pub fn to_triples(&self) -> Vec<(i64, i64, usize)> {
        self.parts.iter().map(|(x, m)| (*x.numer(), *x.denom(), *m)).collect()
    }

    /// Cumulative multiplicities: the dimensions of the filtration steps.
    pub fn step_dims(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, (_, m)| {
                *acc += m;
                Some(*acc)
            })
            .collect()
    }

    /// The weakly decreasing vector `(x_1 >= ... >= x_d)`.
    pub fn values(&self) -> Vec<Slope> {
        self.parts.iter().flat_map(|(x, m)| std::iter::repeat(*x).take(*m)).collect()
    }

    pub fn cocharacter(&self) -> Cocharacter {
        Cocharacter::new(self.values()).expect("values are sorted")
    }

    /// Subfunctions of length `i`.
    pub fn subfunctions(&self, i: usize) -> Result<Vec<Subfunction>> {
        enumerate_b(&self.values(), i)
    }

    /// All subfunctions of lengths `1..d`.
    pub fn all_subfunctions(&self) -> Vec<Subfunction> {
        (1..self.dim()).flat_map(|i| self.subfunctions(i).expect("length in range")).collect()
    }
}

impl fmt::Display for SlopeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().map(|(x, m)| if *m == 1 { x.to_string() } else { format!("{x}^{m}") }).join(","))
    }
}

/// A subfunction `h <= g`, stored as its weakly decreasing multiset of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subfunction(Vec<Slope>);

impl Subfunction {
    pub fn new(mut values: Vec<Slope>) -> Self {
        values.sort_by(|a, b| b.cmp(a));
        Subfunction(values)
    }

    pub fn empty() -> Self {
        Subfunction(Vec::new())
    }

    pub fn values(&self) -> &[Slope] {
        &self.0
    }

    /// `||h|| = sum h(x)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `deg h = sum x h(x)`.
    pub fn degree(&self) -> Slope {
        self.0.iter().sum()
    }

    /// `self >= other`: equal lengths and componentwise domination of the
    /// sorted values.
    pub fn geq(&self, other: &Subfunction) -> Result<bool> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    pub fn leq(&self, other: &Subfunction) -> Result<bool> {
        other.geq(self)
    }

    /// Whether `h(x) <= g(x)` for every `x`.
    pub fn is_sub_of(&self, g: &SlopeFunction) -> bool {
        let counts = self.0.iter().counts();
        counts
            .into_iter()
            .all(|(x, c)| g.parts.iter().any(|(y, m)| y == x && c <= *m))
    }
}

impl fmt::Display for Subfunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// All distinct length-`i` submultisets of `values`, `1 <= i <= len - 1`,
/// in decreasing lexicographic order.
pub fn enumerate_b(values: &[Slope], i: usize) -> Result<Vec<Subfunction>> {
    let d = values.len();
    if i == 0 || i >= d {
        return Err(Error::IndexOutOfRange { index: i, lo: 1, hi: d.saturating_sub(1) });
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut out: Vec<Subfunction> = sorted.into_iter().combinations(i).map(Subfunction).collect();
    out.sort_by(|a, b| b.cmp(a));
    out.dedup();
    Ok(out)
}

/// A closed family given by a degree threshold: `h` belongs iff
/// `deg h > threshold` (strict) or `deg h >= threshold`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosedFamily {
    pub threshold: Slope,
    pub strict: bool,
}

impl ClosedFamily {
    /// Subfunctions of positive degree: the complement of the semistable locus.
    pub fn semistable() -> Self {
        ClosedFamily { threshold: Slope::zero(), strict: true }
    }

    pub fn at_least(threshold: Slope) -> Self {
        ClosedFamily { threshold, strict: false }
    }

    pub fn greater_than(threshold: Slope) -> Self {
        ClosedFamily { threshold, strict: true }
    }

    pub fn contains_degree(&self, degree: Slope) -> bool {
        if self.strict {
            degree > self.threshold
        } else {
            degree >= self.threshold
        }
    }

    pub fn contains(&self, h: &Subfunction) -> bool {
        self.contains_degree(h.degree())
    }

    /// Whether every member has positive degree.
    pub fn within_semistable(&self) -> bool {
        self.threshold.is_positive() || (self.threshold.is_zero() && self.strict)
    }

    pub fn is_semistable(&self) -> bool {
        *self == Self::semistable()
    }

    /// Errors unless every member has positive degree.
    pub fn require_within_semistable(&self) -> Result<()> {
        if self.within_semistable() {
            Ok(())
        } else {
            Err(Error::FamilyNotSemistable(self.to_string()))
        }
    }
}

impl fmt::Display for ClosedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_semistable() {
            return write!(f, "ss");
        }
        let op = if self.strict { "gt" } else { "ge" };
        write!(f, "{op}:{}/{}", self.threshold.numer(), self.threshold.denom())
    }
}

/// Parses a rational `a`, `a/b`, or `-a/b`.
pub fn parse_slope(s: &str) -> Result<Slope> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Slope::new(num, den))
}

impl FromStr for ClosedFamily {
    type Err = Error;

    /// `ss`, `ge:NUM/DEN` or `gt:NUM/DEN`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ss" {
            return Ok(Self::semistable());
        }
        match s.split_once(':') {
            Some(("ge", t)) => Ok(Self::at_least(parse_slope(t)?)),
            Some(("gt", t)) => Ok(Self::greater_than(parse_slope(t)?)),
            _ => Err(Error::Parse(format!("unknown family {s:?}; expected ss, ge:NUM/DEN or gt:NUM/DEN"))),
        }
    }
}

/// `h^i_w`: the multiset `{x_{w^{-1}(1)}, ..., x_{w^{-1}(i)}}`.
pub fn h_w_i(mu: &Cocharacter, w: &Permutation, i: usize) -> Result<Subfunction> {
    if i > mu.dim() {
        return Err(Error::IndexOutOfRange { index: i, lo: 0, hi: mu.dim() });
    }
    let v = mu.act(w)?;
    Ok(Subfunction::new(v[..i].to_vec()))
}

/// The map from `W_î \ W / W_mu` (by minimal representatives) to
/// subfunctions of length `i`, checked to be a bijection that reverses order:
/// `u <= w` in Bruhat order implies `κ(u) >= κ(w)`.
pub fn kappa(i: usize, mu: &Cocharacter) -> Result<Vec<(Permutation, Subfunction)>> {
    let reps = weyl::double_coset_reps(i, mu)?;
    let pairs: Vec<(Permutation, Subfunction)> = reps
        .into_iter()
        .map(|w| {
            let h = h_w_i(mu, &w, i)?;
            Ok((w, h))
        })
        .collect::<Result<_>>()?;
    let mut images: Vec<Subfunction> = pairs.iter().map(|(_, h)| h.clone()).collect();
    images.sort();
    let mut targets = enumerate_b(mu.entries(), i)?;
    targets.sort();
    if images != targets {
        return Err(Error::KappaFailure(format!("double cosets do not map bijectively onto subfunctions of length {i}")));
    }
    for (u, hu) in &pairs {
        for (w, hw) in &pairs {
            if u.bruhat_leq(w)? && !hu.geq(hw)? {
                return Err(Error::KappaFailure(format!("{u} <= {w} but {hu} is not >= {hw}")));
            }
        }
    }
    Ok(pairs)
}

fn require_kostant(w: &Permutation, mu: &Cocharacter) -> Result<()> {
    if w.size() != mu.dim() {
        return Err(Error::SizeMismatch(w.size(), mu.dim()));
    }
    if !weyl::is_min_coset_rep(w, &weyl::stabilizer_type(mu)) {
        return Err(Error::NotKostantRep(w.to_string()));
    }
    Ok(())
}

/// `I_w = {s_i : h^i_w not in the family}` for a minimal coset representative `w`.
pub fn i_w(w: &Permutation, mu: &Cocharacter, family: &ClosedFamily) -> Result<ParabolicType> {
    require_kostant(w, mu)?;
    let d = mu.dim();
    let v = mu.act(w)?;
    let mut idx = Vec::new();
    for i in 1..d {
        let h = Subfunction::new(v[..i].to_vec());
        if !family.contains(&h) {
            idx.push(i);
        }
    }
    ParabolicType::from_indices(d.max(1), &idx)
}

/// `Δ_w`: indices of the simple roots `α_i` with `s_i ∉ I_w`.
pub fn delta_w(w: &Permutation, mu: &Cocharacter, family: &ClosedFamily) -> Result<ParabolicType> {
    Ok(i_w(w, mu, family)?.complement())
}

/// `I_w` for the semistable family via the prefix sums of `w mu`:
/// `{s_i : <w mu, ω_i> <= 0}`.
pub fn i_w_semistable(w: &Permutation, mu: &Cocharacter) -> Result<ParabolicType> {
    require_kostant(w, mu)?;
    let idx: Vec<usize> = mu
        .fundamental_pairings(w)?
        .iter()
        .enumerate()
        .filter(|(_, s)| !s.is_positive())
        .map(|(k, _)| k + 1)
        .collect();
    ParabolicType::from_indices(mu.dim().max(1), &idx)
}

/// A descending filtration `F^{x_1} ⊂ F^{x_2} ⊂ ... ⊂ F^{x_r} = V` of type
/// `g`, one step per distinct slope value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilteredSpace {
    g: SlopeFunction,
    steps: Vec<SubspaceGF>,
}

impl FilteredSpace {
    /// From the proper steps `F^{x_1}, ..., F^{x_{r-1}}`; the last step `V`
    /// is added.
    pub fn new(g: &SlopeFunction, proper_steps: Vec<SubspaceGF>) -> Result<Self> {
        let d = g.dim();
        let dims = g.step_dims();
        if proper_steps.len() + 1 != dims.len() {
            return Err(Error::LengthMismatch(dims.len() - 1, proper_steps.len()));
        }
        let field = match proper_steps.first() {
            Some(s) => s.field().clone(),
            None => crate::exactalg::FieldSpec::prime(2)?,
        };
        let mut steps = proper_steps;
        steps.push(SubspaceGF::full(&field, d));
        Self::from_steps(g, steps)
    }

    /// From all steps including the whole space.
    pub fn from_steps(g: &SlopeFunction, steps: Vec<SubspaceGF>) -> Result<Self> {
        let dims = g.step_dims();
        if steps.len() != dims.len() {
            return Err(Error::LengthMismatch(dims.len(), steps.len()));
        }
        for (s, &k) in steps.iter().zip(&dims) {
            if s.ambient_dim() != g.dim() {
                return Err(Error::AmbientMismatch(g.dim(), s.ambient_dim()));
            }
            if s.dim() != k {
                return Err(Error::Shape(format!("filtration step has dimension {} instead of {k}", s.dim())));
            }
        }
        for w in steps.windows(2) {
            if !w[0].is_subspace_of(&w[1])? {
                return Err(Error::NotNested(format!("{:?}", w[0]), format!("{:?}", w[1])));
            }
        }
        Ok(FilteredSpace { g: g.clone(), steps })
    }

    pub fn slope_function(&self) -> &SlopeFunction {
        &self.g
    }

    pub fn steps(&self) -> &[SubspaceGF] {
        &self.steps
    }

    pub fn field(&self) -> &crate::exactalg::FieldSpec {
        self.steps[0].field()
    }

    fn scalar_extended<'a>(&self, u: &'a SubspaceGF) -> Result<Cow<'a, SubspaceGF>> {
        if u.field() == self.field() {
            Ok(Cow::Borrowed(u))
        } else {
            Ok(Cow::Owned(u.extend_scalars(self.field())?))
        }
    }

    /// `dim(U_K ∩ F^{x_j})` for each step `j`.
    fn meet_dims(&self, u: &SubspaceGF) -> Result<Vec<usize>> {
        let u = self.scalar_extended(u)?;
        let mut out = Vec::with_capacity(self.steps.len());
        for s in &self.steps[..self.steps.len() - 1] {
            out.push(u.intersection_dim(s)?);
        }
        out.push(u.dim());
        Ok(out)
    }

    /// The type `h_U` of the filtration induced on `U`.
    pub fn induced_type(&self, u: &SubspaceGF) -> Result<Subfunction> {
        if u.dim() == 0 {
            return Err(Error::ZeroSubspace);
        }
        let meets = self.meet_dims(u)?;
        let mut values = Vec::with_capacity(u.dim());
        let mut prev = 0;
        for ((x, _), m) in self.g.parts.iter().zip(meets) {
            values.extend(std::iter::repeat(*x).take(m - prev));
            prev = m;
        }
        Ok(Subfunction(values))
    }

    /// `deg h_U`, the degree of `U` for this filtration.
    pub fn degree_of(&self, u: &SubspaceGF) -> Result<Slope> {
        if u.dim() == 0 {
            return Ok(Slope::zero());
        }
        let meets = self.meet_dims(u)?;
        let mut deg = Slope::zero();
        let mut prev = 0;
        for ((x, _), m) in self.g.parts.iter().zip(meets) {
            deg += x * Slope::from_integer((m - prev) as i64);
            prev = m;
        }
        Ok(deg)
    }

    /// No rational subspace has positive degree.
    pub fn is_semistable(&self, rational_subspaces: &[SubspaceGF]) -> Result<bool> {
        for u in rational_subspaces {
            if self.degree_of(u)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// No rational subspace has induced type in the family.
    pub fn in_open_stratum(&self, family: &ClosedFamily, rational_subspaces: &[SubspaceGF]) -> Result<bool> {
        for u in rational_subspaces {
            if family.contains_degree(self.degree_of(u)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
