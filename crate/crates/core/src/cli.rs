//! Command-line front end. Output is JSON by default, CSV with
//! `--format csv`. Exit codes: 0 success, 2 usage error, 3 numerical failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks;
use crate::error::{Error, Result};
use crate::flow::{check_invariants, k_transform_d3, phi, reduce};
use crate::grid::{emit_grid, grid_rows, write_csv, Figure};
use crate::json::{flat_to_value, parse_poly, parse_roots, partition_to_value, poly_to_value, scalar_to_value, ScalarJson};
use crate::partitions::{
    deg_dmu, down1, dual_degree_bound, dual_dims, gamma, reduced_resolutions, up1, uplus,
    Partition,
};
use crate::poly::{roots, Field, MonicPoly, Scalar, DEFAULT_TOL};
use crate::strata::{
    distinct_root_stratum, limit_tangent_flats, mu_of, solve_by_tangency, stratify,
    tangent_cone, tangent_count_through, tangent_space_dmu,
};
use crate::viete::{discriminant, real_cubic_chamber, viete_map, Chamber};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Absolute discriminant threshold for the real cubic boundary.
const CHAMBER_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "polystrata", version, about = "Discriminant strata of monic polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Relative clustering radius for numerical root multiplicities.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL, allow_hyphen_values = true)]
    tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = FieldArg::Complex)]
    field: FieldArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FigureArg {
    ParabolaTangents,
    CubicCuspTangents,
    Swallowtail,
}

impl From<FigureArg> for Figure {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::ParabolaTangents => Figure::ParabolaTangents,
            FigureArg::CubicCuspTangents => Figure::CubicCuspTangents,
            FigureArg::Swallowtail => Figure::Swallowtail,
        }
    }
}

/// A polynomial given by coefficients or by its roots.
#[derive(Args, Debug)]
struct PolyInput {
    /// `{"degree": d, "coeffs": [a_1, ..., a_d]}`; coefficients are numbers or `[re, im]`.
    #[arg(long, conflicts_with = "roots")]
    poly: Option<String>,

    /// JSON array of roots, repeated according to multiplicity.
    #[arg(long)]
    roots: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots with their tangent hyperplanes.
    Solve(PolyInput),
    /// Discriminant value, with the chamber of a real cubic.
    Discriminant(PolyInput),
    /// Multiplicity partition and coarse strata memberships.
    Stratify(PolyInput),
    /// Tangent space of the stratum; with `--mu`, the limiting tangent
    /// spaces of a finer stratum; with `--k`, the tangent cone of `D_{d,k}`.
    TangentSpace {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        mu: Option<Partition>,
        #[arg(long, conflicts_with = "mu")]
        k: Option<usize>,
    },
    /// Number of tangent spaces of `D_mu` through the polynomial.
    TangentCount {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long)]
        mu: Partition,
    },
    /// Applies the translation flow and reports its invariants.
    Flow {
        #[command(flatten)]
        input: PolyInput,
        /// A number or `[re, im]`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Moves the polynomial onto the slice `a_1 = 0`.
    Reduce(PolyInput),
    /// Partition calculators.
    Partition {
        #[command(subcommand)]
        op: PartitionOp,
    },
    /// Writes a sampled figure as CSV.
    Grid {
        #[arg(long, value_enum)]
        figure: FigureArg,
        #[arg(long, default_value_t = 41)]
        samples: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the seeded invariant suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PartitionOp {
    Down1 {
        #[arg(long)]
        mu: Partition,
    },
    Up1 {
        #[arg(long)]
        mu: Partition,
    },
    Uplus {
        #[arg(long)]
        mu: Partition,
        #[arg(long)]
        kappa: Partition,
    },
    Gamma {
        #[arg(long)]
        kappa: Partition,
        #[arg(long)]
        tau: Partition,
    },
    Deg {
        #[arg(long)]
        mu: Partition,
    },
    Dualdim {
        #[arg(long)]
        mu: Partition,
    },
    Resdown1 {
        #[arg(long)]
        nu: Partition,
        #[arg(long)]
        mu: Partition,
    },
}

/// A table for CSV output.
struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

enum Output {
    Json(Value),
    JsonWithTable(Value, Table),
    /// Already-written CSV, for grids sent to standard output.
    Raw(Vec<u8>),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::RootFinderDiverged { .. }
        | Error::SingularSystem
        | Error::CrossCheckMismatch(_)
        | Error::RepeatedRoot => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn load_poly(input: &PolyInput, field: Field) -> Result<MonicPoly> {
    match (&input.poly, &input.roots) {
        (Some(text), None) => parse_poly(text, field),
        (None, Some(text)) => {
            let rs = parse_roots(text)?;
            if rs.is_empty() {
                return Err(Error::InvalidInput("empty root list".into()));
            }
            let p = viete_map(&rs)?;
            if field == Field::Real && p.coeffs().iter().any(|a| a.im.abs() > 1e-12 * p.norm_inf().max(1.0)) {
                return Err(Error::InvalidInput("roots do not give a real polynomial".into()));
            }
            Ok(p.with_field_lossy(field))
        }
        _ => Err(Error::InvalidInput("give exactly one of --poly or --roots".into())),
    }
}

fn fmt_scalar(z: Scalar) -> [String; 2] {
    [z.re.to_string(), z.im.to_string()]
}

fn chamber_name(ch: Chamber) -> &'static str {
    match ch {
        Chamber::U3 => "U3",
        Chamber::U1 => "U1",
        Chamber::Boundary => "boundary",
    }
}

fn cmd_solve(p: &MonicPoly, tol: f64) -> Result<Output> {
    let rc = roots(p, tol)?;
    let planes = solve_by_tangency(p, tol)?;
    let mut records = Vec::new();
    let mut rows = Vec::new();
    for h in &planes {
        let m = rc
            .entries()
            .iter()
            .find(|e| e.0 == h.root)
            .map(|e| e.1)
            .unwrap_or(1);
        let normal = h.hyperplane.constraints()[0].normal.components();
        records.push(json!({
            "root": scalar_to_value(h.root),
            "multiplicity": m,
            "normal": normal.iter().map(|&z| scalar_to_value(z)).collect::<Vec<_>>(),
        }));
        let [re, im] = fmt_scalar(h.root);
        rows.push(vec![re, im, m.to_string()]);
    }
    Ok(Output::JsonWithTable(
        json!({ "degree": p.degree(), "count": planes.len(), "roots": records }),
        Table {
            header: vec!["root_re".into(), "root_im".into(), "multiplicity".into()],
            rows,
        },
    ))
}

fn cmd_discriminant(p: &MonicPoly) -> Result<Output> {
    let delta = discriminant(p)?;
    let mut out = json!({ "degree": p.degree(), "discriminant": scalar_to_value(delta) });
    if p.degree() == 3 && p.field() == Field::Real {
        out["chamber"] = json!(chamber_name(real_cubic_chamber(p, CHAMBER_TOL)?));
    }
    Ok(Output::Json(out))
}

fn cmd_stratify(p: &MonicPoly, tol: f64) -> Result<Output> {
    let label = stratify(p, tol)?;
    let (_, rc) = mu_of(p, tol)?;
    let members: Vec<Value> = label
        .dk_memberships
        .iter()
        .map(|&(k, member)| json!({ "k": k, "member": member, "open": label.in_open(k) }))
        .collect();
    let mut out = json!({
        "degree": p.degree(),
        "mu": partition_to_value(&label.mu),
        "roots": rc.entries().iter().map(|&(u, m)| json!({"root": scalar_to_value(u), "multiplicity": m})).collect::<Vec<_>>(),
        "dk_memberships": members,
        "distinct_roots": distinct_root_stratum(p, tol)?,
    });
    if p.degree() == 3 && p.field() == Field::Real {
        out["chamber"] = json!(chamber_name(real_cubic_chamber(p, CHAMBER_TOL)?));
    }
    let rows = label
        .dk_memberships
        .iter()
        .map(|&(k, member)| vec![k.to_string(), member.to_string(), label.in_open(k).to_string()])
        .collect();
    Ok(Output::JsonWithTable(
        out,
        Table {
            header: vec!["k".into(), "member".into(), "open".into()],
            rows,
        },
    ))
}

fn cmd_tangent_space(p: &MonicPoly, mu: Option<&Partition>, k: Option<usize>, tol: f64) -> Result<Output> {
    if let Some(k) = k {
        let cone = tangent_cone(p, k, tol)?;
        return Ok(Output::Json(json!({
            "k": k,
            "count": cone.len(),
            "flats": cone.iter().map(flat_to_value).collect::<Vec<_>>(),
        })));
    }
    if let Some(mu) = mu {
        let limits = limit_tangent_flats(p, mu, tol)?;
        let flats: Vec<Value> = limits
            .iter()
            .map(|l| {
                json!({
                    "divisor": l.divisor.coeffs().iter().map(|&z| scalar_to_value(z)).collect::<Vec<_>>(),
                    "exponents": l.parents.iter().zip(&l.exponents).map(|(&(x, _), &e)| json!({"root": scalar_to_value(x), "exponent": e})).collect::<Vec<_>>(),
                    "dim": l.flat.dim(),
                    "flat": flat_to_value(&l.flat),
                })
            })
            .collect();
        return Ok(Output::Json(json!({
            "mu": partition_to_value(mu),
            "count": limits.len(),
            "limits": flats,
        })));
    }
    let space = tangent_space_dmu(p, tol)?;
    Ok(Output::Json(json!({
        "mu": partition_to_value(&space.mu),
        "divisor": space.divisor.coeffs().iter().map(|&z| scalar_to_value(z)).collect::<Vec<_>>(),
        "dim": space.flat.dim(),
        "full_space": space.full_space,
        "ill_conditioned": space.ill_conditioned,
        "flat": flat_to_value(&space.flat),
    })))
}

fn parse_scalar(text: &str) -> Result<Scalar> {
    serde_json::from_str::<ScalarJson>(text)
        .map(ScalarJson::value)
        .map_err(|e| Error::InvalidInput(format!("bad scalar {text:?}: {e}")))
}

fn cmd_flow(p: &MonicPoly, t: &str, tol: f64) -> Result<Output> {
    let t = parse_scalar(t)?;
    let moved = phi(p, t);
    let mut out = json!({ "t": scalar_to_value(t), "poly": poly_to_value(&moved) });
    if p.degree() >= 2 {
        let rep = check_invariants(p, t, tol)?;
        out["invariants"] = json!({
            "discriminant_drift": rep.discriminant_drift,
            "linear_part_det_exact": rep.linear_part_det_exact.to_string(),
            "linear_part_det_numeric": scalar_to_value(rep.linear_part_det_numeric),
            "mu_before": partition_to_value(&rep.mu_before),
            "mu_after": partition_to_value(&rep.mu_after),
            "mu_preserved": rep.mu_preserved(),
        });
    }
    let rows = moved
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let [re, im] = fmt_scalar(a);
            vec![(i + 1).to_string(), re, im]
        })
        .collect();
    Ok(Output::JsonWithTable(
        out,
        Table {
            header: vec!["k".into(), "re".into(), "im".into()],
            rows,
        },
    ))
}

fn cmd_reduce(p: &MonicPoly) -> Result<Output> {
    let (red, t_star) = reduce(p);
    let mut out = json!({ "reduced": poly_to_value(&red), "t_star": scalar_to_value(t_star) });
    if p.degree() == 3 {
        let k = k_transform_d3(p)?;
        out["k_transform"] = json!({
            "constructive": poly_to_value(&k.constructive),
            "literal": poly_to_value(&k.literal),
            "mismatch": k.mismatch,
        });
    }
    Ok(Output::Json(out))
}

fn cmd_partition(op: &PartitionOp) -> Result<Output> {
    let value = match op {
        PartitionOp::Down1 { mu } => partition_to_value(&down1(mu)),
        PartitionOp::Up1 { mu } => partition_to_value(&up1(mu)),
        PartitionOp::Uplus { mu, kappa } => partition_to_value(&uplus(mu, kappa)),
        PartitionOp::Gamma { kappa, tau } => json!(gamma(kappa, tau) as u64),
        PartitionOp::Deg { mu } => json!(deg_dmu(mu) as u64),
        PartitionOp::Dualdim { mu } => {
            let (dual, gauss) = dual_dims(mu, mu.weight())?;
            json!({
                "dual_dim": dual,
                "gauss_image_dim": gauss,
                "dual_degree_bound": dual_degree_bound(mu) as u64,
            })
        }
        PartitionOp::Resdown1 { nu, mu } => {
            let classes = reduced_resolutions(nu, mu)?;
            json!({ "count": classes.len(), "classes": classes })
        }
    };
    Ok(Output::Json(value))
}

fn cmd_grid(figure: Figure, samples: usize, out: Option<&PathBuf>) -> Result<Output> {
    match out {
        Some(path) => {
            let summary = emit_grid(figure, samples, path)?;
            Ok(Output::Json(json!({
                "figure": figure.name(),
                "rows": summary.rows,
                "max_residual": summary.max_residual,
                "out": path.display().to_string(),
            })))
        }
        None => {
            let rows = grid_rows(figure, samples)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            Ok(Output::Raw(buf))
        }
    }
}

fn cmd_check(suite: &str, seed: u64, samples: usize) -> Result<(Output, bool)> {
    let results = checks::run_suite(suite, seed, samples)?;
    let all_passed = results.iter().all(|c| c.passed);
    let rows = results
        .iter()
        .map(|c| {
            vec![
                c.suite.to_string(),
                c.name.to_string(),
                c.passed.to_string(),
                c.cases.to_string(),
                c.worst.to_string(),
            ]
        })
        .collect();
    let value = json!({ "seed": seed, "passed": all_passed, "results": results });
    Ok((
        Output::JsonWithTable(
            value,
            Table {
                header: ["suite", "name", "passed", "cases", "worst"].map(String::from).to_vec(),
                rows,
            },
        ),
        all_passed,
    ))
}

/// Flattens a JSON value into `(path, value)` pairs for CSV output of
/// commands without a natural table.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        other => out.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn write_table(table: &Table, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&table.header).map_err(io)?;
    for row in &table.rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

fn emit(output: Output, format: Format, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match (output, format) {
        (Output::Raw(bytes), _) => out.write_all(&bytes).map_err(io),
        (Output::Json(v), Format::Json) | (Output::JsonWithTable(v, _), Format::Json) => {
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable")).map_err(io)
        }
        (Output::JsonWithTable(_, table), Format::Csv) => write_table(&table, out),
        (Output::Json(v), Format::Csv) => {
            let mut rows = Vec::new();
            flatten("", &v, &mut rows);
            write_table(
                &Table {
                    header: vec!["key".into(), "value".into()],
                    rows,
                },
                out,
            )
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Output, bool)> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {}", cli.tol)));
    }
    let field: Field = cli.field.into();
    let ok = |o: Output| Ok((o, true));
    match &cli.command {
        Command::Solve(input) => ok(cmd_solve(&load_poly(input, field)?, cli.tol)?),
        Command::Discriminant(input) => ok(cmd_discriminant(&load_poly(input, field)?)?),
        Command::Stratify(input) => ok(cmd_stratify(&load_poly(input, field)?, cli.tol)?),
        Command::TangentSpace { input, mu, k } => ok(cmd_tangent_space(
            &load_poly(input, field)?,
            mu.as_ref(),
            *k,
            cli.tol,
        )?),
        Command::TangentCount { input, mu } => {
            let q = load_poly(input, field)?;
            let count = tangent_count_through(&q, mu, cli.tol)?;
            ok(Output::Json(json!({ "mu": partition_to_value(mu), "count": count as u64 })))
        }
        Command::Flow { input, t } => ok(cmd_flow(&load_poly(input, field)?, t, cli.tol)?),
        Command::Reduce(input) => ok(cmd_reduce(&load_poly(input, field)?)?),
        Command::Partition { op } => ok(cmd_partition(op)?),
        Command::Grid { figure, samples, out } => ok(cmd_grid((*figure).into(), *samples, out.as_ref())?),
        Command::Check { suite, samples } => cmd_check(suite, cli.seed, *samples),
    }
}

/// Parses `argv` (including the program name), runs the command and
/// writes its result to `out`; diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli).and_then(|(o, passed)| emit(o, cli.format, out).map(|_| passed)) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_NUMERICAL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
