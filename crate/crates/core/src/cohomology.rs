//! Cohomology tables of the open stratum `Fl_g(B')` (compact support) and of
//! its closed complement `Y(B')`, as sums of parabolically induced
//! representations `i_P` and generalized Steinberg representations `v_P` of
//! `GL_d(F_q)` with Tate twists, together with dimension formulas and the
//! point counts they predict.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::qcount::gaussian_multinomial;
use crate::slopes::{self, ClosedFamily, SlopeFunction};
use crate::weyl::{self, Cocharacter, ParabolicType, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepKind {
    /// `i_P`: functions on `G(F_q)/P(F_q)`.
    Induced,
    /// `v_P`: the quotient of `i_P` by the images of all `i_Q`, `Q ⊋ P`.
    SteinbergQuotient,
}

/// `i_{P_I}` or `v_{P_I}`. The trivial representation `v_G = i_G` is always
/// labelled as induced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepLabel {
    pub kind: RepKind,
    pub parabolic: ParabolicType,
}

impl RepLabel {
    pub fn induced(parabolic: ParabolicType) -> Self {
        RepLabel { kind: RepKind::Induced, parabolic }
    }

    pub fn steinberg(parabolic: ParabolicType) -> Self {
        let kind = if parabolic.is_full() { RepKind::Induced } else { RepKind::SteinbergQuotient };
        RepLabel { kind, parabolic }
    }

    pub fn trivial(d: usize) -> Self {
        Self::induced(ParabolicType::full(d))
    }

    pub fn is_trivial(&self) -> bool {
        self.parabolic.is_full()
    }

    pub fn dim_at(&self, q: u128) -> u128 {
        match self.kind {
            RepKind::Induced => dim_induced(&self.parabolic, q),
            RepKind::SteinbergQuotient => dim_v(&self.parabolic, q),
        }
    }

    /// Name of the parabolic: `B`, `G`, or `P{s1,s3}`.
    pub fn parabolic_name(&self) -> String {
        parabolic_name(&self.parabolic)
    }
}

pub fn parabolic_name(p: &ParabolicType) -> String {
    if p.is_full() {
        "G".into()
    } else if p.is_empty() {
        "B".into()
    } else {
        format!("P{p}")
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.kind {
            RepKind::Induced => "i",
            RepKind::SteinbergQuotient => "v",
        };
        write!(f, "{prefix}_{}", self.parabolic_name())
    }
}

/// `R(m)` rendered as `R` or `R(m)`.
pub fn twisted(rep: &RepLabel, twist: i64) -> String {
    if twist == 0 {
        rep.to_string()
    } else {
        format!("{rep}({twist})")
    }
}

/// One summand `R(twist)[-degree]`, attributed to the Weyl element `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohEntry {
    pub w: Permutation,
    pub length: usize,
    pub i_w: ParabolicType,
    pub delta_w: ParabolicType,
    pub degree: usize,
    pub twist: i64,
    pub rep: RepLabel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Compactly supported cohomology of the open stratum.
    Open,
    /// Cohomology of the closed complement.
    Closed,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Open => "open",
            Variant::Closed => "closed",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohTable {
    pub variant: Variant,
    pub g: SlopeFunction,
    pub family: ClosedFamily,
    /// Sorted by degree, then by the order of `W^mu` (length, one-line).
    pub entries: Vec<CohEntry>,
}

impl CohTable {
    pub fn d(&self) -> usize {
        self.g.dim()
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(|e| e.degree).max().unwrap_or(0)
    }

    pub fn in_degree(&self, degree: usize) -> impl Iterator<Item = &CohEntry> {
        self.entries.iter().filter(move |e| e.degree == degree)
    }

    /// The summands of `H^degree` joined by `⊕`, or `0`.
    pub fn degree_summary(&self, degree: usize) -> String {
        let parts: Vec<String> = self.in_degree(degree).map(|e| twisted(&e.rep, e.twist)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ⊕ ")
        }
    }
}

struct WeylData {
    w: Permutation,
    length: usize,
    i_w: ParabolicType,
}

fn weyl_data(g: &SlopeFunction, family: &ClosedFamily) -> Result<Vec<WeylData>> {
    family.require_within_semistable()?;
    let mu = g.cocharacter();
    weyl::kostant_reps(&mu)
        .into_iter()
        .map(|w| {
            let i_w = slopes::i_w(&w, &mu, family)?;
            Ok(WeylData { length: w.length(), w, i_w })
        })
        .collect()
}

fn finish(variant: Variant, g: &SlopeFunction, family: &ClosedFamily, mut entries: Vec<CohEntry>) -> CohTable {
    // Stable: ties keep the W^mu order.
    entries.sort_by_key(|e| e.degree);
    CohTable { variant, g: g.clone(), family: *family, entries }
}

/// `H*_c(Fl_g(B'))`: one summand `v_{P_{I_w}}(-l(w))[-2l(w) - #(S \ I_w)]`
/// per `w ∈ W^mu`.
pub fn table_open(g: &SlopeFunction, family: &ClosedFamily) -> Result<CohTable> {
    let entries = weyl_data(g, family)?
        .into_iter()
        .map(|wd| CohEntry {
            degree: 2 * wd.length + wd.i_w.complement().len(),
            twist: -(wd.length as i64),
            rep: RepLabel::steinberg(wd.i_w),
            delta_w: wd.i_w.complement(),
            i_w: wd.i_w,
            length: wd.length,
            w: wd.w,
        })
        .collect();
    Ok(finish(Variant::Open, g, family, entries))
}

/// `H*(Y(B'))`: for `#(S \ I_w) = 1` the summand `i_{P_{I_w}}(-l)[-2l]`;
/// for `#(S \ I_w) > 1` both `i_G(-l)[-2l]` and
/// `v_{P_{I_w}}(-l)[-2l - #(S \ I_w) + 1]`; nothing for `I_w = S`.
pub fn table_closed(g: &SlopeFunction, family: &ClosedFamily) -> Result<CohTable> {
    let d = g.dim();
    let mut entries = Vec::new();
    for wd in weyl_data(g, family)? {
        let missing = wd.i_w.complement().len();
        let twist = -(wd.length as i64);
        let entry = |degree, rep| CohEntry {
            w: wd.w.clone(),
            length: wd.length,
            i_w: wd.i_w,
            delta_w: wd.i_w.complement(),
            degree,
            twist,
            rep,
        };
        match missing {
            0 => {}
            1 => entries.push(entry(2 * wd.length, RepLabel::induced(wd.i_w))),
            _ => {
                entries.push(entry(2 * wd.length, RepLabel::trivial(d)));
                entries.push(entry(2 * wd.length + missing - 1, RepLabel::steinberg(wd.i_w)));
            }
        }
    }
    Ok(finish(Variant::Closed, g, family, entries))
}

pub fn table(variant: Variant, g: &SlopeFunction, family: &ClosedFamily) -> Result<CohTable> {
    match variant {
        Variant::Open => table_open(g, family),
        Variant::Closed => table_closed(g, family),
    }
}

/// `dim i_{P_I} = #(G/P_I)(F_q)`.
pub fn dim_induced(parabolic: &ParabolicType, q: u128) -> u128 {
    gaussian_multinomial(&parabolic.composition(), q)
}

/// `dim v_{P_I} = sum_{J ⊇ I} (-1)^{#(J \ I)} dim i_{P_J}`.
pub fn dim_v(parabolic: &ParabolicType, q: u128) -> u128 {
    let d = parabolic.rank_dim();
    let total: i128 = ParabolicType::all(d)
        .filter(|j| parabolic.is_subset(j))
        .map(|j| {
            let sign = if (j.len() - parabolic.len()) % 2 == 0 { 1 } else { -1 };
            sign * dim_induced(&j, q) as i128
        })
        .sum();
    u128::try_from(total).expect("generalized Steinberg dimensions are positive")
}

/// `dim v_{P_I}` computed twice: by inclusion-exclusion and as
/// `dim i_{P_I}` minus the rank of all functions pulled back from
/// `G/P_J`, `J = I ∪ {s}`. Errors if the two disagree.
pub fn dim_v_checked(parabolic: &ParabolicType, q: u32) -> Result<u128> {
    let formula = dim_v(parabolic, q as u128);
    let oracle = crate::complexes::dim_v_by_rank(parabolic, q)?;
    if formula != oracle {
        return Err(Error::MethodDisagreement(format!(
            "dim v_{} at q = {q}: inclusion-exclusion {formula}, rank {oracle}",
            parabolic_name(parabolic)
        )));
    }
    Ok(formula)
}

/// Lefschetz trace of Frobenius over `F_{q^n}`: each `R(m)[-D]` contributes
/// `(-1)^D dim R q^{-m n}`.
pub fn trace_prediction(table: &CohTable, q: u128, n: u32) -> i128 {
    table
        .entries
        .iter()
        .map(|e| {
            let sign = if e.degree % 2 == 0 { 1 } else { -1 };
            let frob = q.pow(n * (-e.twist) as u32) as i128;
            sign * e.rep.dim_at(q) as i128 * frob
        })
        .sum()
}

/// Checks that `H^i_c` vanishes for `i < d - 1` and that `H^{d-1}_c` is
/// exactly `v_B` without twist.
pub fn vanishing_check(table: &CohTable) -> Result<()> {
    if table.variant != Variant::Open || !table.family.is_semistable() {
        return Err(Error::Precondition("vanishing applies to the open semistable table".into()));
    }
    let d = table.d();
    if d == 1 {
        return Ok(());
    }
    if let Some(e) = table.entries.iter().find(|e| e.degree < d - 1) {
        return Err(Error::Precondition(format!("H^{} contains {}", e.degree, twisted(&e.rep, e.twist))));
    }
    let top: Vec<&CohEntry> = table.in_degree(d - 1).collect();
    let borel = RepLabel::steinberg(ParabolicType::borel(d));
    if top.len() != 1 || top[0].rep != borel || top[0].twist != 0 {
        return Err(Error::Precondition(format!("H^{} is {}, expected v_B", d - 1, table.degree_summary(d - 1))));
    }
    Ok(())
}

/// A term `coeff · R(twist)` of the Euler characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerTerm {
    pub coeff: i64,
    pub rep: RepLabel,
    pub twist: i64,
}

impl fmt::Display for EulerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = twisted(&self.rep, self.twist);
        match self.coeff {
            1 => write!(f, "+{body}"),
            -1 => write!(f, "-{body}"),
            c => write!(f, "{c:+}·{body}"),
        }
    }
}

/// `sum_i (-1)^i [H^i]` as a formal sum, terms with equal representation and
/// twist combined, cancelled terms dropped.
pub fn euler_characteristic(table: &CohTable) -> Vec<EulerTerm> {
    let mut acc: BTreeMap<(i64, RepLabel), i64> = BTreeMap::new();
    for e in &table.entries {
        let sign = if e.degree % 2 == 0 { 1 } else { -1 };
        *acc.entry((-e.twist, e.rep)).or_default() += sign;
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((neg_twist, rep), coeff)| EulerTerm { coeff, rep, twist: -neg_twist })
        .collect()
}

/// Evaluates a formal Euler characteristic at `q` over `F_{q^n}`.
pub fn evaluate_euler(terms: &[EulerTerm], q: u128, n: u32) -> i128 {
    terms
        .iter()
        .map(|t| t.coeff as i128 * t.rep.dim_at(q) as i128 * q.pow(n * (-t.twist) as u32) as i128)
        .sum()
}

/// For `d = 5` and strictly decreasing `mu` with zero sum and `x_4 > 0`:
/// the cycles `w' = (2,3,4) < w = (2,3,4,5)` have degrees
/// `2l + #Δ` of `(8, 7)`, so degree is not monotone in the Bruhat order.
pub fn degree_inversion_check(mu: &Cocharacter) -> Result<(usize, usize)> {
    let x = mu.entries();
    let strictly = x.windows(2).all(|p| p[0] > p[1]);
    let zero_sum = x.iter().sum::<crate::Slope>() == crate::Slope::from_integer(0);
    if x.len() != 5 || !strictly || !zero_sum || x[3] <= crate::Slope::from_integer(0) {
        return Err(Error::Precondition(format!(
            "need 5 strictly decreasing values with zero sum and fourth value positive, got ({})",
            x.iter().join(",")
        )));
    }
    let ss = ClosedFamily::semistable();
    let w_small = Permutation::from_cycle(5, &[2, 3, 4])?;
    let w_big = Permutation::from_cycle(5, &[2, 3, 4, 5])?;
    if !(w_small.bruhat_leq(&w_big)? && w_small != w_big) {
        return Err(Error::Precondition(format!("{w_small} is not below {w_big}")));
    }
    let degree = |w: &Permutation| -> Result<usize> { Ok(2 * w.length() + slopes::delta_w(w, mu, &ss)?.len()) };
    Ok((degree(&w_small)?, degree(&w_big)?))
}

/// Markdown rendering of a table, one row per nonzero degree.
pub fn to_markdown(table: &CohTable) -> String {
    let title = match table.variant {
        Variant::Open => "compactly supported cohomology of the open stratum",
        Variant::Closed => "cohomology of the closed complement",
    };
    let mut out = format!("## {title}\n\ng = ({}), family = {}\n\n", table.g, table.family);
    out.push_str("| degree | cohomology |\n|---|---|\n");
    for k in 0..=table.max_degree() {
        out.push_str(&format!("| H^{k} | {} |\n", table.degree_summary(k)));
    }
    out.push_str("\n| w | l(w) | I_w | Δ_w | degree | summand |\n|---|---|---|---|---|---|\n");
    for e in &table.entries {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            e.w,
            e.length,
            e.i_w,
            e.delta_w.indices().iter().map(|i| format!("α{i}")).join(","),
            e.degree,
            twisted(&e.rep, e.twist)
        ));
    }
    out
}
