use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tetra_core::complexes::{
    build_c, build_cyclic, build_e, build_w, build_w_from_c, check_gamma, check_twist_homomorphism, ell_hat,
    verify_chain_equivalence, FieldComplex, GammaVariant, GroupComplex,
};
use tetra_core::geometry::{
    basic_facets, facet_census, fundamental_domain, fundamental_facets, induced_decomposition, verify_facets,
    OrbitPolytope,
};
use tetra_core::group::{check_ell, orbit, phi_ell, verify_automorphism};
use tetra_core::homology::ring::ring_relations_check;
use tetra_core::homology::tables::{cohomology_table, homology_table, resolution_check, Coefficients, Table};
use tetra_core::interval::PRECISION_CAP_ENV;
use tetra_core::torsion::{distinguish_space_forms, independence_check, torsion_field, torsion_report};
use tetra_core::{Error, GroupParams};

const SCHEMA: &str = "tetra-report";
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "tetra", version, about = "Verification reports for the generalized binary tetrahedral groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Precision cap in bits for certified sign decisions; overrides the
    /// TETRA_PRECISION_CAP environment variable.
    #[arg(long, global = true)]
    precision_cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Group order, presentation and the automorphisms φ_ℓ.
    Group(SArg),
    /// Facet certificates for the orbit polytope.
    VerifyFacets(FacetArgs),
    /// The fundamental domain and its three verification steps.
    FundamentalDomain(SArg),
    /// Build or verify the equivariant chain complexes.
    Complex {
        #[command(subcommand)]
        command: ComplexCommand,
    },
    /// Group homology with Z or Z/3 coefficients.
    Homology(TableArgs),
    /// Group cohomology with Z or Z/3 coefficients.
    Cohomology(TableArgs),
    /// The cup product x̄² in H^4 and the annihilators.
    Ring(SArg),
    /// Reidemeister torsion of the space forms.
    Torsion(TorsionArgs),
    /// Every check for one s.
    ReportAll(SArg),
}

#[derive(Args)]
struct SArg {
    #[arg(long)]
    s: u32,
}

#[derive(Args)]
struct FacetArgs {
    #[arg(long)]
    s: u32,
    /// Every O(h) and admissible T(h,k), and the facet census.
    #[arg(long, conflicts_with = "orbit_reps")]
    all: bool,
    /// The facets of the fundamental domain (default).
    #[arg(long)]
    orbit_reps: bool,
    /// The action α_ℓ; defaults to the base action (3^(s-1)+1)/2.
    #[arg(long, allow_negative_numbers = true)]
    ell: Option<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    C,
    E,
    Zcyc,
    W,
}

#[derive(Subcommand)]
enum ComplexCommand {
    /// Boundary matrices of one complex.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        s: u32,
        /// Comma-separated ℓ-list, one period per entry (C, E, W).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        ells: Vec<i64>,
        /// Top degree of the cyclic resolution.
        #[arg(long, default_value_t = 8)]
        degrees: usize,
    },
    /// ∂² = 0, the resolution property, φ'φ = Id, φφ' ≃ Id and γ.
    Verify {
        #[arg(long)]
        s: u32,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        ells: Vec<i64>,
        /// all, square, resolution, equivalence or gamma.
        #[arg(long, default_value = "all")]
        identities: String,
    },
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    s: u32,
    #[arg(long, default_value = "Z")]
    coeffs: String,
    /// Degree range such as 0..8 (exclusive end), 0..=7, or a top degree.
    #[arg(long, default_value = "0..8")]
    degrees: String,
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct TorsionArgs {
    #[command(subcommand)]
    command: Option<TorsionCommand>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    ells: Vec<i64>,
    /// Any of closed, detU, detV, detW.
    #[arg(long, value_delimiter = ',', default_value = "closed,detU,detV")]
    pipelines: Vec<String>,
}

#[derive(Subcommand)]
enum TorsionCommand {
    /// Torsion equality against ±-normalized multisets of ℓ's.
    Distinguish {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
    },
    /// Circulant rank, norms and the certified log-embedding rank.
    Independence {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 256)]
        precision: u32,
    },
}

/// Failure categories, each with its own exit status.
enum Failure {
    Usage(String),
    Verification(String),
    Precision(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Verification(_) => 3,
            Failure::Precision(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Param(_) | Error::Parse(_) | Error::Config(_) => Failure::Usage(e.to_string()),
            Error::PrecisionCap { .. } => Failure::Precision(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    schema_version: u32,
    tool_version: &'static str,
    command: String,
    ok: bool,
    result: Value,
}

struct Outcome {
    ok: bool,
    result: Value,
    table: Option<Vec<Table>>,
}

impl Outcome {
    fn new(ok: bool, result: Value) -> Self {
        Outcome { ok, result, table: None }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn params(s: u32) -> Result<GroupParams, Failure> {
    Ok(GroupParams::new(s)?)
}

fn nonempty(ells: &[i64]) -> Result<(), Failure> {
    if ells.is_empty() {
        return Err(Failure::Usage("the ℓ-list is empty; pass --ells with at least one entry".into()));
    }
    Ok(())
}

fn parse_degrees(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Usage(format!("cannot parse degree range {text:?}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = text.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = text.split_once("..") {
        let b = num(b)?;
        (num(a)?, b.checked_sub(1).ok_or_else(bad)?)
    } else {
        (0, num(text)?)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn cmd_group(s: u32) -> Result<Outcome, Failure> {
    let p = params(s)?;
    let elems = p.elements();
    let mut orders: BTreeMap<u32, usize> = BTreeMap::new();
    for g in &elems {
        *orders.entry(g.order()).or_default() += 1;
    }
    let (pp, q, z, one, minus) = (p.p(), p.q(), p.z(), p.one(), p.minus_one());
    let zi = z.inverse();
    let relations = [
        ("p^2 = -1", pp * pp == minus),
        ("q^2 = -1", q * q == minus),
        ("(pq)^2 = -1", p.pq() * p.pq() == minus),
        ("zpz^-1 = q", z * pp * zi == q),
        ("zqz^-1 = pq", z * q * zi == p.pq()),
        ("z^(3^s) = 1", z.pow(p.t() as i64) == one),
    ];
    let t = p.t() as i64;
    let mut automorphisms = Vec::new();
    for ell in (1..t).filter(|l| l % 3 != 0) {
        let phi = phi_ell(p, ell)?;
        automorphisms.push(json!({ "ell": ell, "automorphism": verify_automorphism(&phi) }));
    }
    let x_orbit = orbit(&[p.x()], one, |g, v| *g * *v, elems.len())?.len();
    let ok = relations.iter().all(|r| r.1)
        && elems.len() == p.order()
        && automorphisms.iter().all(|a| a["automorphism"] == json!(true))
        && x_orbit == p.x_order() as usize;
    let result = json!({
        "s": s,
        "order": { "expected": 8 * p.t(), "actual": elems.len() },
        "element_orders": orders,
        "relations": relations.iter().map(|(n, v)| json!({ "relation": n, "holds": v })).collect::<Vec<_>>(),
        "x_orbit": { "expected": p.x_order(), "actual": x_orbit },
        "phi_ell": automorphisms,
    });
    Ok(Outcome::new(ok, result))
}

fn cmd_facets(a: &FacetArgs) -> Result<Outcome, Failure> {
    let p = params(a.s)?;
    let ell = match a.ell {
        Some(l) => check_ell(p, l)?,
        None => ell_hat(p),
    };
    let poly = OrbitPolytope::new(p, ell)?;
    let labels = if a.all { basic_facets(p) } else { fundamental_facets(p) };
    let certs = verify_facets(&poly, &labels)?;
    let mut ok = certs.iter().all(|c| c.ok);
    let checks = json!({
        "eigenvector": poly.eigen_check(),
        "on_sphere": poly.on_sphere(),
        "kernel_relations": poly.kernel_relations_check(),
        "projection_equivariance": poly.projection_equivariance_check(),
    });
    ok &= checks.as_object().expect("object").values().all(|v| *v == json!(true));
    let mut result = json!({
        "s": a.s,
        "ell": ell,
        "scope": if a.all { "all" } else { "orbit-reps" },
        "checks": checks,
        "certificates": certs,
    });
    if a.all {
        let census = facet_census(p)?;
        ok &= census.ok();
        result["census"] = to_value(&census);
    }
    Ok(Outcome::new(ok, result))
}

fn cmd_fundamental_domain(s: u32) -> Result<Outcome, Failure> {
    let p = params(s)?;
    let fd = fundamental_domain(p)?;
    let poly = OrbitPolytope::base(p)?;
    let certs = verify_facets(&poly, &fundamental_facets(p))?;
    let facets_ok = certs.iter().all(|c| c.ok);
    let decomposition = induced_decomposition(p, ell_hat(p))?;
    let ok = fd.ok() && facets_ok;
    Ok(Outcome::new(
        ok,
        json!({
            "domain": fd,
            "facets_certified": facets_ok,
            "induced_decomposition": decomposition,
        }),
    ))
}

fn group_complex_json(c: &GroupComplex) -> Value {
    let d: Vec<Value> =
        c.d.iter()
            .enumerate()
            .skip(1)
            .map(|(k, m)| {
                let rows: Vec<Vec<String>> =
                    (0..m.rows).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect();
                json!({ "degree": k, "matrix": rows })
            })
            .collect();
    json!({ "kind": c.kind, "ells": c.ells, "ranks": c.ranks, "labels": c.labels, "boundaries": d })
}

fn field_complex_json(c: &FieldComplex) -> Value {
    let d: Vec<Value> =
        c.d.iter()
            .enumerate()
            .skip(1)
            .map(|(k, m)| {
                let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                json!({ "degree": k, "matrix": rows })
            })
            .collect();
    json!({ "kind": "W", "ranks": c.ranks, "labels": c.labels, "boundaries": d })
}

fn cmd_complex(c: &ComplexCommand) -> Result<Outcome, Failure> {
    match c {
        ComplexCommand::Build { kind, s, ells, degrees } => {
            let p = params(*s)?;
            let value = match kind {
                Kind::Zcyc => group_complex_json(&build_cyclic(p, *degrees)),
                Kind::C => {
                    nonempty(ells)?;
                    group_complex_json(&build_c(p, ells)?)
                }
                Kind::E => {
                    nonempty(ells)?;
                    group_complex_json(&build_e(p, ells)?)
                }
                Kind::W => {
                    nonempty(ells)?;
                    field_complex_json(&build_w(p, ells, &torsion_field(p)?)?)
                }
            };
            Ok(Outcome::new(true, value))
        }
        ComplexCommand::Verify { s, ells, identities } => {
            let p = params(*s)?;
            let ells = if ells.is_empty() { vec![ell_hat(p); 2] } else { ells.clone() };
            let which: Vec<&str> = match identities.as_str() {
                "all" => vec!["square", "resolution", "equivalence", "gamma"],
                other => other.split(',').collect(),
            };
            let mut ok = true;
            let mut result = json!({ "s": s, "ells": ells });
            for w in which {
                match w {
                    "square" => {
                        let c = build_c(p, &ells)?.square_failure();
                        let e = build_e(p, &ells)?.square_failure();
                        let z = build_cyclic(p, 4 * ells.len()).square_failure();
                        ok &= c.is_none() && e.is_none() && z.is_none();
                        result["square"] = json!({ "C": c, "E": e, "Zcyc": z });
                    }
                    "resolution" => {
                        let r = resolution_check(p, &ells)?;
                        ok &= r.ok();
                        result["resolution"] = to_value(&r);
                    }
                    "equivalence" => {
                        let r = verify_chain_equivalence(p, &ells)?;
                        let field = torsion_field(p)?;
                        let w_ok = build_w(p, &ells, &field)?.d == build_w_from_c(p, &ells, &field)?.d;
                        ok &= r.ok() && w_ok;
                        result["equivalence"] = to_value(&r);
                        result["w_is_quotient_of_c"] = json!(w_ok);
                    }
                    "gamma" => {
                        let corrected = check_gamma(p, 2, GammaVariant::Corrected)?;
                        let printed = check_gamma(p, 2, GammaVariant::Printed)?;
                        let twist = check_twist_homomorphism(p);
                        ok &= corrected.is_none() && twist;
                        result["gamma"] = json!({
                            "twist_homomorphism": twist,
                            "corrected_failure": corrected,
                            "printed_failure": printed,
                        });
                    }
                    other => return Err(Failure::Usage(format!("unknown identity group {other:?}"))),
                }
            }
            Ok(Outcome::new(ok, result))
        }
    }
}

fn cmd_table(a: &TableArgs, cohomology: bool) -> Result<Outcome, Failure> {
    let p = params(a.s)?;
    let coeffs: Coefficients = a.coeffs.parse()?;
    let (lo, hi) = parse_degrees(&a.degrees)?;
    let mut t = if cohomology { cohomology_table(p, coeffs, hi)? } else { homology_table(p, coeffs, hi)? };
    t.rows.retain(|r| r.degree >= lo);
    Ok(Outcome { ok: t.ok(), result: to_value(&t), table: Some(vec![t]) })
}

fn cmd_ring(s: u32) -> Result<Outcome, Failure> {
    let p = params(s)?;
    let r = ring_relations_check(p)?;
    let t = p.t() as u64;
    let ok = r.gamma_chain_map
        && r.diagonal_compatible
        && r.c_gamma == r.c_yoneda
        && r.annihilators_ok(p)
        && r.presentation_holds;
    let result = json!({
        "report": r,
        "comparisons": [
            { "quantity": "order of x", "expected": t, "actual": r.order_x, "ok": r.order_x == t },
            { "quantity": "order of y", "expected": 8 * t, "actual": r.order_y, "ok": r.order_y == 8 * t },
            { "quantity": "c with x^2 = c*y (literal)", "expected": 8, "actual": r.c_yoneda, "ok": r.x2_is_8y },
            { "quantity": "x^2 = 8y' for some generator y'", "expected": true, "actual": r.presentation_holds, "ok": r.presentation_holds },
        ],
    });
    Ok(Outcome::new(ok, result))
}

fn cmd_torsion(a: &TorsionArgs) -> Result<Outcome, Failure> {
    match &a.command {
        Some(TorsionCommand::Distinguish { s, max_n }) => {
            let r = distinguish_space_forms(params(*s)?, *max_n)?;
            Ok(Outcome::new(r.ok(), to_value(&r)))
        }
        Some(TorsionCommand::Independence { s, precision }) => {
            let r = independence_check(params(*s)?, *precision)?;
            Ok(Outcome::new(r.ok(), to_value(&r)))
        }
        None => {
            let s = a.s.ok_or_else(|| Failure::Usage("torsion needs --s".into()))?;
            let p = params(s)?;
            nonempty(&a.ells)?;
            let r = torsion_report(p, &a.ells)?;
            let mut values = serde_json::Map::new();
            for name in &a.pipelines {
                let v = match name.as_str() {
                    "closed" => &r.closed,
                    "detU" => &r.det_u,
                    "detV" => &r.det_v,
                    "detW" => &r.det_w,
                    other => return Err(Failure::Usage(format!("unknown pipeline {other:?}"))),
                };
                values.insert(name.clone(), to_value(v));
            }
            let result = json!({
                "s": s,
                "ells": r.ells,
                "values": values,
                "agreement": {
                    "closed_eq_detU": r.closed_eq_u,
                    "closed_eq_detV": r.closed_eq_v,
                    "detU_eq_detV": r.u_eq_v,
                    "detW_trivial": r.w_trivial,
                    "u_determinants_match": r.u_determinants_match,
                },
            });
            Ok(Outcome::new(r.ok(), result))
        }
    }
}

fn cmd_report_all(s: u32) -> Result<Outcome, Failure> {
    let p = params(s)?;
    let t = p.t() as i64;
    let all_ells: Vec<i64> = (1..t).filter(|l| l % 3 != 0).collect();
    let mut sections: Vec<(&str, Outcome)> = vec![
        ("group", cmd_group(s)?),
        ("verify_facets", cmd_facets(&FacetArgs { s, all: false, orbit_reps: true, ell: None })?),
        ("fundamental_domain", cmd_fundamental_domain(s)?),
        ("complex_verify", cmd_complex(&ComplexCommand::Verify { s, ells: vec![1, 2], identities: "all".into() })?),
    ];
    for (name, coh, c) in [
        ("homology_Z", false, "Z"),
        ("homology_Z3", false, "Z3"),
        ("cohomology_Z", true, "Z"),
        ("cohomology_Z3", true, "Z3"),
    ] {
        sections.push((name, cmd_table(&TableArgs { s, coeffs: c.into(), degrees: "0..8".into() }, coh)?));
    }
    sections.push(("ring", cmd_ring(s)?));
    let torsion: Vec<Outcome> = all_ells
        .iter()
        .map(|&l| {
            cmd_torsion(&TorsionArgs {
                command: None,
                s: Some(s),
                ells: vec![l],
                pipelines: vec!["closed".into(), "detU".into(), "detV".into(), "detW".into()],
            })
        })
        .collect::<Result<_, _>>()?;
    let torsion_ok = torsion.iter().all(|o| o.ok);
    sections.push(("torsion", Outcome::new(torsion_ok, Value::Array(torsion.into_iter().map(|o| o.result).collect()))));
    sections.push((
        "torsion_independence",
        cmd_torsion(&TorsionArgs {
            command: Some(TorsionCommand::Independence { s, precision: 256 }),
            s: None,
            ells: Vec::new(),
            pipelines: Vec::new(),
        })?,
    ));
    if s == 2 {
        sections.push((
            "torsion_distinguish",
            cmd_torsion(&TorsionArgs {
                command: Some(TorsionCommand::Distinguish { s, max_n: 2 }),
                s: None,
                ells: Vec::new(),
                pipelines: Vec::new(),
            })?,
        ));
    }
    let ok = sections.iter().all(|(_, o)| o.ok);
    let mut result = serde_json::Map::new();
    let mut summary = serde_json::Map::new();
    for (name, o) in sections {
        summary.insert(name.into(), json!(o.ok));
        result.insert(name.into(), json!({ "ok": o.ok, "result": o.result }));
    }
    result.insert("summary".into(), Value::Object(summary));
    Ok(Outcome::new(ok, Value::Object(result)))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group(_) => "group",
        Command::VerifyFacets(_) => "verify-facets",
        Command::FundamentalDomain(_) => "fundamental-domain",
        Command::Complex { command: ComplexCommand::Build { .. } } => "complex build",
        Command::Complex { command: ComplexCommand::Verify { .. } } => "complex verify",
        Command::Homology(_) => "homology",
        Command::Cohomology(_) => "cohomology",
        Command::Ring(_) => "ring",
        Command::Torsion(TorsionArgs { command: Some(TorsionCommand::Distinguish { .. }), .. }) => {
            "torsion distinguish"
        }
        Command::Torsion(TorsionArgs { command: Some(TorsionCommand::Independence { .. }), .. }) => {
            "torsion independence"
        }
        Command::Torsion(_) => "torsion",
        Command::ReportAll(_) => "report-all",
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Group(a) => cmd_group(a.s),
        Command::VerifyFacets(a) => cmd_facets(a),
        Command::FundamentalDomain(a) => cmd_fundamental_domain(a.s),
        Command::Complex { command } => cmd_complex(command),
        Command::Homology(a) => cmd_table(a, false),
        Command::Cohomology(a) => cmd_table(a, true),
        Command::Ring(a) => cmd_ring(a.s),
        Command::Torsion(a) => cmd_torsion(a),
        Command::ReportAll(a) => cmd_report_all(a.s),
    }
}

/// `path = value` lines for any JSON document.
fn flatten(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(x, &p, out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::String(s) => {
            let _ = writeln!(out, "{prefix} = {s}");
        }
        other => {
            let _ = writeln!(out, "{prefix} = {other}");
        }
    }
}

fn render_table(tables: &[Table], csv: bool) -> String {
    let mut out = String::new();
    for t in tables {
        let coeffs = match t.coefficients {
            Coefficients::Z => "Z",
            Coefficients::Z3 => "Z/3",
        };
        if csv {
            out.push_str("kind,s,coefficients,degree,expected,actual,ok\n");
            for r in &t.rows {
                let _ = writeln!(out, "{},{},{coeffs},{},{},{},{}", t.kind, t.s, r.degree, r.expected, r.actual, r.ok);
            }
        } else {
            let _ = writeln!(out, "{} of P'(8*3^{}) with {coeffs} coefficients", t.kind, t.s);
            let _ = writeln!(out, "{:>6}  {:<10}  {:<10}  ok", "degree", "expected", "actual");
            for r in &t.rows {
                let _ = writeln!(out, "{:>6}  {:<10}  {:<10}  {}", r.degree, r.expected, r.actual, r.ok);
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.precision_cap {
        std::env::set_var(PRECISION_CAP_ENV, cap.to_string());
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(f) => {
            let code = f.exit_code();
            let (kind, msg) = match f {
                Failure::Usage(m) => ("usage", m),
                Failure::Verification(m) => ("verification", m),
                Failure::Precision(m) => ("precision", m),
            };
            eprintln!("tetra: {kind} error: {msg}");
            return ExitCode::from(code);
        }
    };
    let report = Report {
        schema: SCHEMA,
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        command: command_name(&cli.command).into(),
        ok: outcome.ok,
        result: outcome.result,
    };
    let text = match (cli.format, &outcome.table) {
        (Format::Json, _) => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        (Format::Table, Some(t)) => render_table(t, false),
        (Format::Csv, Some(t)) => render_table(t, true),
        (Format::Csv, None) => {
            eprintln!("tetra: usage error: csv output is only available for homology and cohomology");
            return ExitCode::from(2);
        }
        (Format::Table, None) => {
            let mut out = String::new();
            flatten(&to_value(&report), "", &mut out);
            out
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("tetra: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::Param("s".into())).exit_code(), 2);
        assert_eq!(Failure::from(Error::Parse("x".into())).exit_code(), 2);
        assert_eq!(Failure::from(Error::Verification("v".into())).exit_code(), 3);
        assert_eq!(Failure::from(Error::PrecisionCap { cap: 64 }).exit_code(), 4);
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("0..8").ok(), Some((0, 7)));
        assert_eq!(parse_degrees("2..=5").ok(), Some((2, 5)));
        assert_eq!(parse_degrees("7").ok(), Some((0, 7)));
        assert!(parse_degrees("5..2").is_err());
        assert!(parse_degrees("a..b").is_err());
    }
}
