//! JSON and markdown renderings. Object keys are sorted by `serde_json`, and
//! every list is built in a fixed order, so output is byte-stable.

use perdom::cohomology::{trace_prediction, CohTable, RepKind};
use perdom::complexes::KReport;
use perdom::flagenum::CountReport;
use perdom::slopes::{ClosedFamily, SlopeFunction};
use perdom::weyl::ParabolicType;
use serde_json::{json, Map, Value};

pub fn g_json(g: &SlopeFunction) -> Value {
    json!(g.to_triples().iter().map(|&(n, d, m)| json!([n, d, m])).collect::<Vec<_>>())
}

pub fn family_json(family: &ClosedFamily) -> Value {
    json!({
        "name": family.to_string(),
        "threshold": [*family.threshold.numer(), *family.threshold.denom()],
        "strict": family.strict,
    })
}

fn parabolic_json(p: &ParabolicType) -> Value {
    json!(p.indices())
}

pub fn table_json(table: &CohTable, q: u32, ns: &[u32]) -> Value {
    let q128 = q as u128;
    let entries: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            json!({
                "w": e.w.one_line(),
                "length": e.length,
                "I_w": parabolic_json(&e.i_w),
                "Delta_w": parabolic_json(&e.delta_w),
                "degree": e.degree,
                "twist": e.twist,
                "rep": {
                    "kind": match e.rep.kind {
                        RepKind::Induced => "i",
                        RepKind::SteinbergQuotient => "v",
                    },
                    "parabolic": parabolic_json(&e.rep.parabolic),
                    "label": e.rep.to_string(),
                },
                "dim_at_q": e.rep.dim_at(q128).to_string(),
            })
        })
        .collect();
    let mut traces = Map::new();
    for &n in ns {
        traces.insert(n.to_string(), json!(trace_prediction(table, q128, n).to_string()));
    }
    json!({
        "d": table.d(),
        "q": q,
        "g": g_json(&table.g),
        "family": family_json(&table.family),
        "variant": table.variant.name(),
        "entries": entries,
        "traces": traces,
    })
}

/// One row of the zeta comparison.
#[derive(Clone, Debug)]
pub struct ZetaRow {
    pub n: u32,
    pub counts: CountReport,
    pub cells: u128,
    pub predicted_open: i128,
    pub predicted_closed: i128,
}

impl ZetaRow {
    pub fn pass(&self) -> bool {
        self.counts.total == self.cells
            && self.counts.in_open as i128 == self.predicted_open
            && self.counts.in_y as i128 == self.predicted_closed
    }
}

pub fn zeta_json(g: &SlopeFunction, family: &ClosedFamily, q: u32, rows: &[ZetaRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "flags": {"predicted": r.cells.to_string(), "counted": r.counts.total.to_string()},
                "closed": {"predicted": r.predicted_closed.to_string(), "counted": r.counts.in_y.to_string()},
                "open": {"predicted": r.predicted_open.to_string(), "counted": r.counts.in_open.to_string()},
                "pass": r.pass(),
            })
        })
        .collect();
    json!({"d": g.dim(), "q": q, "g": g_json(g), "family": family_json(family), "rows": rows})
}

pub fn zeta_markdown(g: &SlopeFunction, family: &ClosedFamily, q: u32, rows: &[ZetaRow]) -> String {
    let mut out = format!("## point counts over F_{q}^n\n\ng = ({g}), family = {family}\n\n");
    out.push_str("| n | Fl predicted | Fl counted | Y predicted | Y counted | open predicted | open counted | ok |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.n,
            r.cells,
            r.counts.total,
            r.predicted_closed,
            r.counts.in_y,
            r.predicted_open,
            r.counts.in_open,
            if r.pass() { "yes" } else { "NO" }
        ));
    }
    out
}

pub fn k_json(r: &KReport) -> Value {
    json!({
        "complex": "K",
        "I0": parabolic_json(&r.i0),
        "q": r.q,
        "dims": r.dims,
        "homology": r.homology,
        "expected_top": r.expected_top.to_string(),
        "pass": r.pass,
    })
}

pub fn k_line(r: &KReport) -> String {
    format!(
        "K I0={} q={} dims={:?} homology={:?} expected top {} {}",
        r.i0,
        r.q,
        r.dims,
        r.homology,
        r.expected_top,
        if r.pass { "ok" } else { "FAIL" }
    )
}
