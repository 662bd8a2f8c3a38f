use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use perdom::cohomology::{dim_induced, dim_v, dim_v_checked, table, to_markdown, trace_prediction, Variant};
use perdom::complexes::{dim_v_by_rank, verify_k_with, SignRule};
use perdom::exactalg::FieldSpec;
use perdom::flagenum::{budget_from_env, bruhat_cell_count, count_points};
use perdom::slopes::{ClosedFamily, SlopeFunction};
use perdom::weyl::ParabolicType;
use perdom_cli::config::{exit_code, parse_g, parse_n_range, parse_parabolic, FileConfig, InvalidConfig, Mismatch};
use perdom_cli::report::{self, ZetaRow};
use perdom_cli::suite::{self, SuiteOptions};
use rayon::prelude::*;
use serde_json::{json, Value};

/// Cohomology tables of period domains over finite fields, with brute-force
/// cross-checks.
#[derive(Parser)]
#[command(name = "perdom", version)]
struct Cli {
    /// Worker threads for enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the cohomology table(s) of a period domain.
    Table {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        /// Extension degrees for the trace column: N or A..B.
        #[arg(long, default_value = "3")]
        n: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compare predicted point counts with brute-force enumeration.
    Zeta {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value = "3")]
        n: String,
        #[arg(long)]
        budget: Option<u128>,
        #[command(flatten)]
        out: Output,
    },
    /// Dimensions of induced and generalized Steinberg representations.
    Dims {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Only this parabolic type, e.g. "1,3" (empty for the Borel).
        #[arg(long)]
        i0: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Build the complex of parabolic inductions and compute its homology.
    Kcomplex {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        /// Only this parabolic type; default is every proper one.
        #[arg(long)]
        i0: Option<String>,
        #[arg(long, hide = true)]
        corrupt_signs: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Check acyclicity of the stalk complexes at every flag of the closed stratum.
    Stalk {
        #[command(flatten)]
        problem: Problem,
        #[arg(long, default_value = "2")]
        n: String,
        #[arg(long)]
        budget: Option<u128>,
        #[command(flatten)]
        out: Output,
    },
    /// Run the whole verification suite.
    VerifyAll {
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, hide = true)]
        corrupt_signs: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Problem {
    /// Slope values, comma separated, e.g. "2,1,-3" or "1/2,1/2,-1".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "drinfeld")]
    g: Option<String>,
    /// Use g = (d-1, -1, ..., -1) of dimension D.
    #[arg(long)]
    drinfeld: Option<usize>,
    /// JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    q: Option<u32>,
    /// ss, ge:NUM/DEN or gt:NUM/DEN.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct Output {
    /// Write JSON here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write markdown here (it is always printed to stdout too).
    #[arg(long)]
    md: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Open,
    Closed,
    Both,
}

struct Resolved {
    g: SlopeFunction,
    q: u32,
    family: ClosedFamily,
    file: FileConfig,
}

impl Problem {
    fn resolve(&self) -> Result<Resolved> {
        let file = match &self.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let g = if let Some(s) = &self.g {
            parse_g(s)?
        } else if let Some(d) = self.drinfeld.or(file.drinfeld) {
            SlopeFunction::drinfeld(d)?
        } else if let Some(t) = &file.g {
            SlopeFunction::from_triples(t)?
        } else {
            return Err(InvalidConfig("no slope function: pass --g, --drinfeld or --config".into()).into());
        };
        let q = self.q.or(file.q).unwrap_or(2);
        if q < 2 {
            return Err(InvalidConfig(format!("q must be at least 2, got {q}")).into());
        }
        let family = match &self.family {
            Some(s) => s.parse()?,
            None => file.family()?.unwrap_or_else(ClosedFamily::semistable),
        };
        family.require_within_semistable()?;
        Ok(Resolved { g, q, family, file })
    }

    fn n_range(&self, flag: &str, file: &FileConfig, default: &str) -> Result<Vec<u32>> {
        match file.n {
            Some((lo, hi)) if flag == default => Ok(parse_n_range(&format!("{lo}..{hi}"))?),
            _ => Ok(parse_n_range(flag)?),
        }
    }
}

fn budget(flag: Option<u128>, file: &FileConfig) -> u128 {
    flag.or(file.budget.map(u128::from)).unwrap_or_else(budget_from_env)
}

fn require_prime(q: u32) -> Result<()> {
    FieldSpec::prime(q)?;
    Ok(())
}

fn write_outputs(out: &Output, json: &Value, markdown: &str) -> Result<()> {
    print!("{markdown}");
    if let Some(path) = &out.md {
        write_file(path, markdown)?;
    }
    if let Some(path) = &out.json {
        let mut text = serde_json::to_string_pretty(json)?;
        text.push('\n');
        write_file(path, &text)?;
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn cmd_table(problem: &Problem, variant: VariantArg, n: &str, out: &Output) -> Result<()> {
    let r = problem.resolve()?;
    let ns = problem.n_range(n, &r.file, "3")?;
    let variants: &[Variant] = match variant {
        VariantArg::Open => &[Variant::Open],
        VariantArg::Closed => &[Variant::Closed],
        VariantArg::Both => &[Variant::Open, Variant::Closed],
    };
    let mut markdown = String::new();
    let mut values = Vec::new();
    for &v in variants {
        let t = table(v, &r.g, &r.family)?;
        markdown.push_str(&to_markdown(&t));
        markdown.push_str(&format!("\ndimensions at q = {}:\n\n", r.q));
        for k in 0..=t.max_degree() {
            let dims: Vec<String> = t.in_degree(k).map(|e| format!("{} (twist {})", e.rep.dim_at(r.q as u128), e.twist)).collect();
            if !dims.is_empty() {
                markdown.push_str(&format!("- H^{k}: {}\n", dims.join(" ⊕ ")));
            }
        }
        let traces: Vec<String> = ns.iter().map(|&n| format!("n={n}: {}", trace_prediction(&t, r.q as u128, n))).collect();
        markdown.push_str(&format!("\npredicted point counts: {}\n\n", traces.join(", ")));
        values.push(report::table_json(&t, r.q, &ns));
    }
    let json = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
    write_outputs(out, &json, &markdown)
}

fn cmd_zeta(problem: &Problem, n: &str, budget_flag: Option<u128>, out: &Output) -> Result<()> {
    let r = problem.resolve()?;
    require_prime(r.q)?;
    let ns = problem.n_range(n, &r.file, "3")?;
    let budget = budget(budget_flag, &r.file);
    let open = table(Variant::Open, &r.g, &r.family)?;
    let closed = table(Variant::Closed, &r.g, &r.family)?;
    let rows = ns
        .par_iter()
        .map(|&n| {
            let counts = count_points(&r.g, &r.family, r.q, n, budget)?;
            Ok(ZetaRow {
                n,
                cells: bruhat_cell_count(&r.g, (r.q as u128).pow(n)),
                predicted_open: trace_prediction(&open, r.q as u128, n),
                predicted_closed: trace_prediction(&closed, r.q as u128, n),
                counts,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    write_outputs(out, &report::zeta_json(&r.g, &r.family, r.q, &rows), &report::zeta_markdown(&r.g, &r.family, r.q, &rows))?;
    if let Some(bad) = rows.iter().find(|row| !row.pass()) {
        return Err(Mismatch(format!("point counts differ from the prediction at n = {}", bad.n)).into());
    }
    Ok(())
}

fn parabolics(d: usize, i0: Option<&str>, proper_only: bool) -> Result<Vec<ParabolicType>> {
    if d < 2 {
        return Err(InvalidConfig(format!("d must be at least 2, got {d}")).into());
    }
    Ok(match i0 {
        Some(s) => vec![parse_parabolic(d, s)?],
        None => ParabolicType::all(d).filter(|p| !(proper_only && p.is_full())).collect(),
    })
}

fn cmd_dims(d: usize, q: u32, i0: Option<&str>, out: &Output) -> Result<()> {
    require_prime(q)?;
    let types = parabolics(d, i0, false)?;
    let rows = types
        .par_iter()
        .map(|p| Ok((*p, dim_induced(p, q as u128), dim_v(p, q as u128), dim_v_by_rank(p, q)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut markdown = format!("## representation dimensions, GL_{d}(F_{q})\n\n| I | dim i_P | dim v_P | dim v_P by rank |\n|---|---|---|---|\n");
    let mut entries = Vec::new();
    for (p, di, dv, dr) in &rows {
        markdown.push_str(&format!("| {p} | {di} | {dv} | {dr} |\n"));
        entries.push(json!({"I": p.indices(), "dim_i": di.to_string(), "dim_v": dv.to_string(), "dim_v_rank": dr.to_string(), "pass": dv == dr}));
    }
    write_outputs(out, &json!({"d": d, "q": q, "entries": entries}), &markdown)?;
    for (p, ..) in &rows {
        dim_v_checked(p, q)?;
    }
    Ok(())
}

fn cmd_kcomplex(d: usize, q: u32, i0: Option<&str>, corrupt: bool, out: &Output) -> Result<()> {
    require_prime(q)?;
    let rule = if corrupt { SignRule::ReflectionIndex } else { SignRule::Positional };
    let types = parabolics(d, i0, true)?;
    if types.iter().any(|p| p.is_full()) {
        return Err(InvalidConfig("I0 must be a proper subset of the simple reflections".into()).into());
    }
    let reports = types.par_iter().map(|p| Ok(verify_k_with(p, q, rule)?)).collect::<Result<Vec<_>>>()?;
    let markdown: String = reports.iter().map(|r| report::k_line(r) + "\n").collect();
    let json = Value::Array(reports.iter().map(report::k_json).collect());
    write_outputs(out, &json, &markdown)?;
    if let Some(bad) = reports.iter().find(|r| !r.pass) {
        return Err(Mismatch(format!("K complex for I0 = {} is not concentrated in the top degree", bad.i0)).into());
    }
    Ok(())
}

fn cmd_stalk(problem: &Problem, n: &str, budget_flag: Option<u128>, out: &Output) -> Result<()> {
    let r = problem.resolve()?;
    require_prime(r.q)?;
    let ns = problem.n_range(n, &r.file, "2")?;
    let budget = budget(budget_flag, &r.file);
    let mut markdown = format!("## stalk complexes\n\ng = ({}), family = {}, q = {}\n\n", r.g, r.family, r.q);
    let mut rows = Vec::new();
    for &n in &ns {
        let s = suite::check_stalks(&r.g, &r.family, r.q, n, budget)?;
        markdown.push_str(&format!(
            "- n = {n}: {} flags, {} in the closed stratum, all acyclic with a contraction; largest poset {}\n",
            s.flags, s.in_y, s.largest_poset
        ));
        rows.push(json!({"n": n, "flags": s.flags, "in_y": s.in_y, "largest_poset": s.largest_poset, "pass": true}));
    }
    let json = json!({"d": r.g.dim(), "q": r.q, "g": report::g_json(&r.g), "family": report::family_json(&r.family), "rows": rows});
    write_outputs(out, &json, &markdown)
}

fn cmd_verify_all(family: Option<&str>, budget_flag: Option<u128>, corrupt: bool, out: &Output) -> Result<()> {
    let family: ClosedFamily = match family {
        Some(s) => s.parse()?,
        None => ClosedFamily::semistable(),
    };
    family.require_within_semistable()?;
    let opts = SuiteOptions {
        family,
        sign_rule: if corrupt { SignRule::ReflectionIndex } else { SignRule::Positional },
        budget: budget(budget_flag, &FileConfig::default()),
    };
    let outcomes = suite::run_suite(&opts);
    let markdown: String = outcomes.iter().map(|o| o.line() + "\n").collect();
    // Timings are left out of the JSON so that it stays reproducible.
    let checks: Vec<Value> = outcomes
        .iter()
        .map(|o| match &o.result {
            Ok(detail) => json!({"name": o.name, "pass": true, "detail": detail}),
            Err(why) => json!({"name": o.name, "pass": false, "detail": why}),
        })
        .collect();
    let failed = outcomes.iter().filter(|o| !o.pass()).count();
    write_outputs(out, &json!({"family": report::family_json(&family), "checks": checks, "pass": failed == 0}), &markdown)?;
    if failed > 0 {
        return Err(Mismatch(format!("{failed} of {} checks failed", outcomes.len())).into());
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("configuring the thread pool")?;
    }
    match &cli.command {
        Command::Table { problem, variant, n, out } => cmd_table(problem, *variant, n, out),
        Command::Zeta { problem, n, budget, out } => cmd_zeta(problem, n, *budget, out),
        Command::Dims { d, q, i0, out } => cmd_dims(*d, *q, i0.as_deref(), out),
        Command::Kcomplex { d, q, i0, corrupt_signs, out } => cmd_kcomplex(*d, *q, i0.as_deref(), *corrupt_signs, out),
        Command::Stalk { problem, n, budget, out } => cmd_stalk(problem, n, *budget, out),
        Command::VerifyAll { family, budget, corrupt_signs, out } => cmd_verify_all(family.as_deref(), *budget, *corrupt_signs, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
