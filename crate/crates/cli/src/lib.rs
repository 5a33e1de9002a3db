pub mod config;
pub mod golden;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use qcag::aut::{orbit_partition, Orbit};
use qcag::census::{census_for, crosscheck};
use qcag::code::{build_code, build_gqc_with_short_orbits, parse_matrix_text, verify_shift_invariance, CodeError, CodeReport, QcCode, DEFAULT_BUDGET};
use qcag::curve::Point;
use qcag::gf::{prime_power, Fe, FieldCtx};
use qcag::rrspace::rr_basis;

use config::{parse_t_range, resolve, Format, JobConfig, Resolved, SelectKind};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Constraint(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// Exit status for a command that ran but found a mismatch.
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "qcag", version, about = "Quasi-cyclic AG codes from curves x^m = B(y)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML job file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Named curve and automorphism, e.g. hyper-31 or hermitian-3.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    #[arg(long, global = true)]
    pub t: Option<u64>,
    /// `A..B` or `A..=B`.
    #[arg(long = "t-range", global = true)]
    pub t_range: Option<String>,
    /// Candidate budget for the distance search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List rational points.
    Points,
    /// Orbit partition of the affine points.
    Orbits,
    /// Monomial basis of L(t P_inf).
    Basis,
    /// Build codes and report their parameters; --out writes generator matrices.
    Build,
    /// Check block-shift invariance of built codes or of a matrix file.
    VerifyQc {
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Minimum distance, exact or bounded.
    Distance,
    /// Compare predicted orbit censuses with computed partitions.
    Census,
    /// Re-run a named example against its golden values.
    Reproduce { id: String },
}

/// Rendered command output with the outcome of any checks it ran.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

struct Rendered {
    table: String,
    records: Value,
    ok: bool,
}

struct Ctx {
    cfg: JobConfig,
    preset: Option<String>,
    ts: Option<Vec<u64>>,
    budget: u64,
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    fn from_cli(cli: &Cli) -> Result<Ctx, CliError> {
        let cfg = match &cli.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                JobConfig::parse(&text)?
            }
            None => JobConfig::default(),
        };
        let ts = match (cli.t, &cli.t_range, cfg.job.t, &cfg.job.t_range) {
            (Some(t), _, _, _) => Some(vec![t]),
            (None, Some(r), _, _) => Some(parse_t_range(r)?),
            (None, None, Some(t), _) => Some(vec![t]),
            (None, None, None, Some(r)) => Some(parse_t_range(r)?),
            _ => None,
        };
        Ok(Ctx {
            preset: cli.preset.clone(),
            ts,
            budget: cli.budget.or(cfg.job.budget).unwrap_or(DEFAULT_BUDGET),
            format: cli.format.or(cfg.job.format).unwrap_or_default(),
            out: cli.out.clone().or_else(|| cfg.job.out.clone()),
            cfg,
        })
    }

    fn resolve(&self) -> Result<Resolved, CliError> {
        resolve(&self.cfg, self.preset.as_deref())
    }

    fn ts(&self) -> Result<&[u64], CliError> {
        self.ts.as_deref().ok_or_else(|| CliError::Config("no t given (use --t, --t-range or job.t)".into()))
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let ctx = Ctx::from_cli(cli)?;
    let rendered = match &cli.command {
        Command::Points => cmd_points(&ctx)?,
        Command::Orbits => cmd_orbits(&ctx)?,
        Command::Basis => cmd_basis(&ctx)?,
        Command::Build => cmd_build(&ctx)?,
        Command::VerifyQc { matrix } => cmd_verify_qc(&ctx, matrix.as_deref())?,
        Command::Distance => cmd_distance(&ctx)?,
        Command::Census => cmd_census(&ctx)?,
        Command::Reproduce { id } => golden::reproduce(id, ctx.budget)?,
    };
    let text = match ctx.format {
        Format::Table => rendered.table,
        Format::Records => serde_json::to_string_pretty(&rendered.records).expect("json values serialize") + "\n",
    };
    let writes_matrices = matches!(cli.command, Command::Build);
    if let (Some(path), false) = (&ctx.out, writes_matrices) {
        std::fs::write(path, &text)?;
    }
    Ok(Output { text, ok: rendered.ok })
}

fn constraint(e: impl std::fmt::Display) -> CliError {
    CliError::Constraint(e.to_string())
}

fn elem_record(f: &FieldCtx, a: Fe) -> Value {
    json!(f.coeffs(a))
}

fn point_record(f: &FieldCtx, p: &Point) -> Value {
    json!([elem_record(f, p.x), elem_record(f, p.y)])
}

fn point_text(f: &FieldCtx, p: &Point) -> String {
    format!("({}, {})", f.display(p.x), f.display(p.y))
}

fn cmd_points(ctx: &Ctx) -> Result<Rendered, CliError> {
    let r = ctx.resolve()?;
    let f = r.curve.field();
    let pts = r.curve.points();
    let mut table = format!("{}\ngenus {}\n{} rational points ({} affine + P_inf)\n", r.curve.describe(), r.curve.genus(), pts.count(), pts.affine.len());
    for p in &pts.affine {
        writeln!(table, "  {}", point_text(f, p)).unwrap();
    }
    let records = json!({
        "curve": r.curve.describe(),
        "genus": r.curve.genus(),
        "count": pts.count(),
        "infinity": pts.has_infinity,
        "points": pts.affine.iter().map(|p| point_record(f, p)).collect::<Vec<_>>(),
    });
    Ok(Rendered { table, records, ok: true })
}

fn sigma_of(r: &Resolved) -> Result<&qcag::Automorphism, CliError> {
    r.sigma.as_ref().ok_or_else(|| CliError::Config("missing [automorphism] section".into()))
}

fn cmd_orbits(ctx: &Ctx) -> Result<Rendered, CliError> {
    let r = ctx.resolve()?;
    let s = sigma_of(&r)?;
    let f = r.curve.field();
    let part = orbit_partition(s, &r.curve.points()).map_err(constraint)?;
    let mut table = format!("{}\n{}\norder {}\n", r.curve.describe(), s.describe(), part.order);
    let census: Vec<String> = part.length_census().iter().map(|(l, c)| format!("{c} x {l}")).collect();
    writeln!(table, "orbit lengths: {}", census.join(", ")).unwrap();
    let mut orbits = Vec::new();
    for (i, o) in part.orbits.iter().enumerate() {
        let tag = if o.long { "long" } else { "short" };
        let pts: Vec<String> = o.points.iter().map(|p| point_text(f, p)).collect();
        writeln!(table, "  #{i:<3} len {:<4} {tag:<5} {}", o.len(), pts.join(" ")).unwrap();
        orbits.push(json!({
            "id": i,
            "length": o.len(),
            "long": o.long,
            "points": o.points.iter().map(|p| point_record(f, p)).collect::<Vec<_>>(),
        }));
    }
    let records = json!({
        "curve": r.curve.describe(),
        "automorphism": s.describe(),
        "order": part.order,
        "lengths": part.length_census(),
        "orbits": orbits,
    });
    Ok(Rendered { table, records, ok: true })
}

fn cmd_basis(ctx: &Ctx) -> Result<Rendered, CliError> {
    let r = ctx.resolve()?;
    let mut table = String::new();
    let mut records = Vec::new();
    for &t in ctx.ts()? {
        let b = rr_basis(&r.curve, t);
        let mons: Vec<String> = b.monomials.iter().map(|m| format!("x^{} y^{}", m.a, m.b)).collect();
        writeln!(table, "t = {t}: dim {} (genus {}): {}", b.dim(), b.genus, mons.join(", ")).unwrap();
        records.push(serde_json::to_value(&b).expect("basis serializes"));
    }
    Ok(Rendered { table, records: Value::Array(records), ok: true })
}

fn selected_orbits(ctx: &Ctx, r: &Resolved) -> Result<Option<Vec<Orbit>>, CliError> {
    let s = sigma_of(r)?;
    let part = orbit_partition(s, &r.curve.points()).map_err(constraint)?;
    let sel = &ctx.cfg.orbits;
    Ok(Some(match sel.select {
        SelectKind::AllLong => part.long_orbits().map_err(constraint)?,
        SelectKind::Lengths => {
            let lengths = sel.lengths.as_ref().ok_or_else(|| CliError::Config("select = \"lengths\" needs lengths".into()))?;
            part.orbits_by_length(lengths).map_err(constraint)?
        }
        SelectKind::Explicit => {
            let ids = sel.ids.as_ref().ok_or_else(|| CliError::Config("select = \"explicit\" needs ids".into()))?;
            ids.iter()
                .map(|&i| {
                    part.orbits
                        .get(i)
                        .cloned()
                        .ok_or_else(|| CliError::Config(format!("orbit id {i} out of range (0..{})", part.orbits.len())))
                })
                .collect::<Result<_, _>>()?
        }
        SelectKind::Gqc => return Ok(None),
    }))
}

fn build_codes(ctx: &Ctx) -> Result<(Resolved, Vec<QcCode>), CliError> {
    let r = ctx.resolve()?;
    let orbits = selected_orbits(ctx, &r)?;
    let s = sigma_of(&r)?;
    let codes = ctx
        .ts()?
        .iter()
        .map(|&t| match &orbits {
            Some(o) => build_code(s, o, t),
            None => build_gqc_with_short_orbits(s, t),
        })
        .collect::<Result<Vec<_>, CodeError>>()
        .map_err(constraint)?;
    Ok((r, codes))
}

fn report_row(rep: &CodeReport) -> String {
    let d = if rep.exact { rep.d_lower.to_string() } else { format!("{}..{}", rep.d_lower, rep.d_upper) };
    let s = rep.singleton_defect.map(|s| s.to_string()).unwrap_or_else(|| "-".into());
    format!(
        "{:>5} {:>5} {:>5} {:>8} {:>4} {:<13} {:<8} {:<5} {}",
        rep.t,
        rep.n,
        rep.k,
        d,
        s,
        label(&rep.strategy),
        label(&rep.classification),
        rep.qc_verified,
        rep.co_index
    )
}

/// The serialized name of a unit enum variant.
fn label<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

const REPORT_HEADER: &str = "    t     n     k        d    s strategy      class    qc    co-index";

fn matrix_path(out: &Path, t: u64, many: bool) -> PathBuf {
    if many {
        let mut name = out.as_os_str().to_owned();
        name.push(format!(".t{t}"));
        PathBuf::from(name)
    } else {
        out.to_path_buf()
    }
}

fn cmd_build(ctx: &Ctx) -> Result<Rendered, CliError> {
    let (r, codes) = build_codes(ctx)?;
    let mut table = format!("{}\n{}\n{REPORT_HEADER}\n", r.curve.describe(), sigma_of(&r)?.describe());
    let mut records = Vec::new();
    let mut ok = true;
    for code in &codes {
        let rep = code.report(ctx.budget);
        ok &= rep.qc_verified;
        writeln!(table, "{}", report_row(&rep)).unwrap();
        if let Some(out) = &ctx.out {
            let path = matrix_path(out, code.t, codes.len() > 1);
            std::fs::write(&path, code.to_text())?;
            writeln!(table, "      generator matrix written to {}", path.display()).unwrap();
        }
        records.push(serde_json::to_value(&rep).expect("report serializes"));
    }
    Ok(Rendered { table, records: Value::Array(records), ok })
}

fn cmd_verify_qc(ctx: &Ctx, matrix: Option<&Path>) -> Result<Rendered, CliError> {
    if let Some(path) = matrix {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let f = match ctx.resolve() {
            Ok(r) => r.curve.field().clone(),
            Err(_) if ctx.cfg.curve.is_none() && ctx.preset.is_none() && ctx.cfg.preset.is_none() => {
                // no job given: take the default field of the order in the header
                let q: u64 = text
                    .split_whitespace()
                    .nth(2)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| CliError::Config("matrix header lacks a field order".into()))?;
                let (p, h) = prime_power(q).ok_or_else(|| CliError::Config(format!("{q} is not a prime power")))?;
                FieldCtx::new(p, h, 1, None).map_err(|e| CliError::Config(e.to_string()))?
            }
            Err(e) => return Err(e),
        };
        let parsed = parse_matrix_text(&f, &text).map_err(|e| CliError::Config(e.to_string()))?;
        let qc = verify_shift_invariance(&f, &parsed.matrix, &parsed.blocks).map_err(constraint)?;
        let co = qcag::code::co_index(&parsed.blocks);
        let table = format!(
            "{}: [{}, {}] over F_{}, co-index {co}: {}\n",
            path.display(),
            parsed.matrix.cols(),
            parsed.matrix.rows(),
            parsed.q,
            if qc { "shift-invariant" } else { "NOT shift-invariant" }
        );
        let records = json!({"file": path.display().to_string(), "n": parsed.matrix.cols(), "k": parsed.matrix.rows(), "q": parsed.q, "co_index": co, "qc_verified": qc});
        return Ok(Rendered { table, records, ok: qc });
    }
    let (_, codes) = build_codes(ctx)?;
    let mut table = String::new();
    let mut records = Vec::new();
    let mut ok = true;
    for code in &codes {
        let qc = code.verify_shift_invariance();
        ok &= qc;
        writeln!(table, "t = {}: [{}, {}] co-index {}: {}", code.t, code.n, code.k, code.co_index(), if qc { "shift-invariant" } else { "NOT shift-invariant" }).unwrap();
        records.push(json!({"t": code.t, "n": code.n, "k": code.k, "co_index": code.co_index(), "qc_verified": qc}));
    }
    Ok(Rendered { table, records: Value::Array(records), ok })
}

fn cmd_distance(ctx: &Ctx) -> Result<Rendered, CliError> {
    let (_, codes) = build_codes(ctx)?;
    let mut table = String::from("    t     n     k  lower  upper  exact  strategy\n");
    let mut records = Vec::new();
    for code in &codes {
        let d = code.minimum_distance(ctx.budget);
        writeln!(table, "{:>5} {:>5} {:>5} {:>6} {:>6}  {:<5}  {}", code.t, code.n, code.k, d.lower, d.upper, d.exact, label(&d.strategy)).unwrap();
        records.push(json!({"t": code.t, "n": code.n, "k": code.k, "distance": d}));
    }
    Ok(Rendered { table, records: Value::Array(records), ok: true })
}

fn cmd_census(ctx: &Ctx) -> Result<Rendered, CliError> {
    let r = ctx.resolve()?;
    let s = sigma_of(&r)?;
    let mut maps = if r.family_preset { qcag::catalog::sample_maps(&r.curve) } else { Vec::new() };
    if maps.is_empty() {
        maps.push(s.clone());
    }
    let points = r.curve.points();
    let mut table = format!("{}\n", r.curve.describe());
    let mut records = Vec::new();
    let mut ok = true;
    for map in &maps {
        let cen = census_for(map).map_err(constraint)?;
        let part = orbit_partition(map, &points).map_err(constraint)?;
        let rep = crosscheck(&cen, &part);
        ok &= rep.pass;
        let fmt = |m: &BTreeMap<usize, usize>| m.iter().map(|(l, c)| format!("{c}x{l}")).collect::<Vec<_>>().join(" ");
        writeln!(table, "{} {}: {}", if rep.pass { "PASS" } else { "FAIL" }, rep.case, map.describe()).unwrap();
        writeln!(table, "    orbit lengths (count x length): predicted [{}], computed [{}]", fmt(&rep.predicted), fmt(&rep.computed)).unwrap();
        for d in &rep.diffs {
            writeln!(table, "    diff: {d}").unwrap();
        }
        for n in &rep.notes {
            writeln!(table, "    note: {n}").unwrap();
        }
        for p in &cen.params {
            let range = p.t_range();
            writeln!(table, "    {} code: n = {}, co-index {}, k = t + 1 - {}, {} <= t < {}", p.kind, p.n, p.co_index(), p.genus, range.start, range.end).unwrap();
        }
        records.push(json!({"automorphism": map.describe(), "crosscheck": rep, "params": cen.params}));
    }
    Ok(Rendered { table, records: Value::Array(records), ok })
}
