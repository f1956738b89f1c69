//! Argument definitions and the subcommand implementations.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lieinv::liealg::{adjoint_data, check_automorphism};
use lieinv::series::{check_functional_equation, expand_series, hilbert_series_from_degrees, molien_coefficients_su2};
use lieinv::solver::{delta, expand_in_invariants};
use lieinv::torus::weights_from_cartan;
use lieinv::weyl::{closure_set, CLOSURE_BOUND};
use lieinv::{Integer, Invariant, Monomial, Poly, RationalSeriesForm};
use serde_json::{json, Value};

use crate::algebra_file::{resolve, LoadedAlgebra};
use crate::pipeline::{self, scope_algebra, Options, Run};
use crate::report::{InvariantReport, Timing};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "lieinv", version, about = "Exact polynomial invariants of adjoint Lie group actions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis, brackets, Killing matrix and torus weights of an algebra.
    Show {
        /// Built-in name (sl2, sl3) or path to an algebra JSON file.
        algebra: String,
        #[arg(long, value_enum, default_value_t = ShowFormat::Text)]
        format: ShowFormat,
    },
    /// Run the full pipeline and emit a report.
    Invariants(InvariantArgs),
    /// Molien coefficients of an SU(2) action given by its weights.
    Molien(SeriesArgs),
    /// Hilbert series coefficients of a free module over primary invariants.
    Hilbert(SeriesArgs),
    /// Relations among the computed invariants.
    Syzygies(InvariantArgs),
    /// Run every consistency check on an algebra and all its embeddings.
    Verify {
        algebra: String,
        #[arg(long, default_value_t = 3)]
        degree_cap: u32,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct InvariantArgs {
    /// Built-in name (sl2, sl3) or path to an algebra JSON file.
    pub algebra: String,
    /// Restrict to a subgroup declared in the algebra file.
    #[arg(long)]
    pub embedding: Option<String>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Degree cap for the torus Hilbert basis.
    #[arg(long, default_value_t = 3)]
    pub degree_cap: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Sum over the whole generated group rather than the lifted Weyl words.
    #[arg(long)]
    pub closure_reynolds: bool,
    /// Weighted-degree bound for syzygies (0 disables); default twice the max degree.
    #[arg(long)]
    pub syzygy_cap: Option<u32>,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct SeriesArgs {
    /// Comma-separated integer weights.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,
    /// Comma-separated primary degrees.
    #[arg(long)]
    pub primaries: Option<String>,
    /// Comma-separated secondary degrees.
    #[arg(long, default_value = "")]
    pub secondaries: String,
    #[arg(long, default_value_t = 20)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value_t = ShowFormat::Text)]
    pub format: ShowFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShowFormat {
    Text,
    Json,
}

/// Runs a command and writes its output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let out = render(&cli.command)?;
    match &cli.output {
        Some(path) => {
            std::fs::write(path, out).map_err(|source| CliError::Output { path: path.display().to_string(), source })
        }
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

/// The output text of a command.
pub fn render(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Show { algebra, format } => show(&resolve(algebra)?, *format),
        Command::Invariants(args) => invariants(args),
        Command::Molien(args) => {
            if args.weights.is_none() {
                return Err(CliError::Input("molien: --weights is required".into()));
            }
            series(args)
        }
        Command::Hilbert(args) => {
            if args.primaries.is_none() {
                return Err(CliError::Input("hilbert: --primaries is required".into()));
            }
            series(args)
        }
        Command::Syzygies(args) => syzygies(args),
        Command::Verify { algebra, degree_cap, max_degree } => verify(algebra, *degree_cap, *max_degree),
    }
}

fn options(args: &InvariantArgs) -> Options {
    Options {
        max_degree: args.max_degree,
        degree_cap: args.degree_cap,
        closure_reynolds: args.closure_reynolds,
        syzygy_cap: args.syzygy_cap,
    }
}

pub fn show(loaded: &LoadedAlgebra, format: ShowFormat) -> Result<String, CliError> {
    let g = &loaded.algebra;
    let ad = adjoint_data(g).map_err(|e| CliError::Pipeline(e.into()))?;
    let torus = weights_from_cartan(g).map_err(|e| CliError::Pipeline(e.into()))?;
    let labels = g.labels();
    let n = g.dim();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = g.bracket(i, j);
            if v.iter().any(|c| !num_traits::Zero::is_zero(c)) {
                let p = Poly::from_terms(
                    g.variables().clone(),
                    v.into_iter().enumerate().map(|(k, c)| (Monomial::var(n, k), c)),
                );
                brackets.push((labels[i].clone(), labels[j].clone(), p.to_string()));
            }
        }
    }
    let killing: Vec<Vec<String>> = (0..n).map(|i| ad.chi.row(i).iter().map(|c| c.to_string()).collect()).collect();
    match format {
        ShowFormat::Json => {
            let value = json!({
                "name": g.name(),
                "dim": n,
                "labels": labels,
                "cartan": g.cartan().iter().map(|&c| &labels[c]).collect::<Vec<_>>(),
                "triples": g.triples().iter().map(|t| [&labels[t.x], &labels[t.y], &labels[t.h]]).collect::<Vec<_>>(),
                "brackets": brackets.iter().map(|(a, b, v)| json!({"left": a, "right": b, "value": v})).collect::<Vec<_>>(),
                "killing": killing,
                "weights": labels.iter().enumerate().map(|(j, l)| json!({"label": l, "weight": torus.weight(j)})).collect::<Vec<_>>(),
                "embeddings": loaded.embeddings.iter().map(|e| &e.name).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&value).expect("values serialize") + "\n")
        }
        ShowFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} (dimension {})", g.name(), n);
            let _ = writeln!(s, "basis: {}", labels.join(" "));
            let cartan: Vec<&str> = g.cartan().iter().map(|&c| labels[c].as_str()).collect();
            let _ = writeln!(s, "cartan: {}", cartan.join(" "));
            for t in g.triples() {
                let _ = writeln!(s, "triple: x={} y={} h={}", labels[t.x], labels[t.y], labels[t.h]);
            }
            s.push_str("brackets:\n");
            for (a, b, v) in &brackets {
                let _ = writeln!(s, "  [{a}, {b}] = {v}");
            }
            s.push_str("killing matrix Tr(ad ad):\n");
            for row in &killing {
                let _ = writeln!(s, "  {}", row.join(" "));
            }
            s.push_str("weights:\n");
            for (j, l) in labels.iter().enumerate() {
                let w: Vec<String> = torus.weight(j).iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "  {l}: ({})", w.join(", "));
            }
            for e in &loaded.embeddings {
                let _ = writeln!(s, "embedding: {}", e.name);
            }
            Ok(s)
        }
    }
}

fn run_with_timing(args: &InvariantArgs) -> Result<(Run, Option<Timing>), CliError> {
    let start = Instant::now();
    let loaded = resolve(&args.algebra)?;
    let run = pipeline::run(&loaded, args.embedding.as_deref(), &options(args))?;
    let timing = args.timing.then(|| Timing { total_ms: start.elapsed().as_secs_f64() * 1e3 });
    Ok((run, timing))
}

pub fn invariants(args: &InvariantArgs) -> Result<String, CliError> {
    let (run, timing) = run_with_timing(args)?;
    let report = InvariantReport::from_run(&run, timing)?;
    match args.format {
        Format::Json => Ok(report.to_json()),
        Format::Latex => report.to_latex(),
        Format::Text => Ok(report.to_text()),
    }
}

pub fn syzygies(args: &InvariantArgs) -> Result<String, CliError> {
    let (run, _) = run_with_timing(args)?;
    let new: Vec<Invariant> = run.invariants().cloned().collect();
    let mut entries = Vec::new();
    for z in &run.syzygies {
        let expanded = expand_in_invariants(&z.relation, &new).map_err(|e| CliError::Pipeline(e.into()))?;
        if !expanded.is_zero() {
            return Err(CliError::Verification(format!("relation {} does not vanish", z.relation)));
        }
        entries.push((z.degree, z.relation.to_string()));
    }
    match args.format {
        Format::Json => {
            let value = json!({
                "algebra": run.algebra_name,
                "scope": run.scope,
                "cap": run.syzygy_cap,
                "invariants": new.iter().map(|i| json!({"name": i.name, "degree": i.degree, "poly": i.poly.to_string()})).collect::<Vec<_>>(),
                "syzygies": entries.iter().map(|(d, r)| json!({"degree": d, "relation": r})).collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&value).expect("values serialize") + "\n")
        }
        Format::Latex => {
            let mut s = String::from("\\begin{align*}\n");
            for z in &run.syzygies {
                let _ = writeln!(s, "0 &= {} \\\\", z.relation.to_latex());
            }
            s.push_str("\\end{align*}\n");
            Ok(s)
        }
        Format::Text => {
            let mut s = String::new();
            for i in &new {
                let _ = writeln!(s, "{} (degree {}) = {}", i.name, i.degree, i.poly);
            }
            if entries.is_empty() {
                let _ = writeln!(s, "no relations up to weighted degree {}", run.syzygy_cap);
            }
            for (d, r) in &entries {
                let _ = writeln!(s, "degree {d}: {r} = 0");
            }
            Ok(s)
        }
    }
}

fn parse_csv<T: std::str::FromStr>(flag: &str, text: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Input(format!("--{flag}: `{t}` is not an integer"))))
        .collect()
}

/// The exponent `n` with `f(1/q) = ±q^n f(q)`, if there is one.
pub fn functional_equation_degree(f: &RationalSeriesForm) -> Option<i64> {
    let top = f.numerator.iter().rposition(|c| !num_traits::Zero::is_zero(c))?;
    let shift: i64 = f.denominator_factors.iter().map(|&(a, m)| a as i64 * m as i64).sum();
    let n = shift - top as i64;
    check_functional_equation(f, n).then_some(n)
}

fn number(x: &Integer) -> Value {
    match num_traits::ToPrimitive::to_i64(x) {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Coefficient tables for `molien` and `hilbert`; with both sides present,
/// a per-degree equality column.
pub fn series(args: &SeriesArgs) -> Result<String, CliError> {
    let n = args.max_degree;
    let molien = match &args.weights {
        Some(w) => Some(molien_coefficients_su2::<Integer>(&parse_csv::<i64>("weights", w)?, n)),
        None => None,
    };
    let form = match &args.primaries {
        Some(p) => {
            let primaries = parse_csv::<u32>("primaries", p)?;
            let secondaries = parse_csv::<u32>("secondaries", &args.secondaries)?;
            if primaries.iter().chain(&secondaries).any(|&d| d == 0) {
                return Err(CliError::Input("degrees must be positive".into()));
            }
            Some(hilbert_series_from_degrees::<Integer>(&primaries, &secondaries))
        }
        None => None,
    };
    let hilbert = form.as_ref().map(|f| expand_series(f, n));
    let equal: Option<Vec<bool>> = match (&molien, &hilbert) {
        (Some(m), Some(h)) => Some(m.iter().zip(h).map(|(a, b)| a == b).collect()),
        _ => None,
    };
    match args.format {
        ShowFormat::Json => {
            let mut value = json!({ "max_degree": n });
            if let Some(m) = &molien {
                value["molien"] = m.iter().map(number).collect();
            }
            if let (Some(f), Some(h)) = (&form, &hilbert) {
                value["hilbert"] = h.iter().map(number).collect();
                value["form"] = json!(f.to_string());
                value["functional_equation"] = json!(functional_equation_degree(f));
            }
            if let Some(e) = &equal {
                value["equal"] = json!(e);
                value["all_equal"] = json!(e.iter().all(|&b| b));
            }
            Ok(serde_json::to_string_pretty(&value).expect("values serialize") + "\n")
        }
        ShowFormat::Text => {
            let mut s = String::new();
            if let Some(f) = &form {
                let _ = writeln!(s, "H(q) = {f}");
                match functional_equation_degree(f) {
                    Some(k) => {
                        let _ = writeln!(s, "functional equation: H(1/q) = (-1)^{} q^{k} H(q)", f.pole_order());
                    }
                    None => s.push_str("functional equation: none\n"),
                }
            }
            let mut header = vec!["n"];
            if molien.is_some() {
                header.push("molien");
            }
            if hilbert.is_some() {
                header.push("hilbert");
            }
            if equal.is_some() {
                header.push("equal");
            }
            let _ = writeln!(s, "{}", header.join("\t"));
            for d in 0..=n {
                let mut row = vec![d.to_string()];
                if let Some(m) = &molien {
                    row.push(m[d].to_string());
                }
                if let Some(h) = &hilbert {
                    row.push(h[d].to_string());
                }
                if let Some(e) = &equal {
                    row.push(e[d].to_string());
                }
                let _ = writeln!(s, "{}", row.join("\t"));
            }
            Ok(s)
        }
    }
}

/// Every check, per scope. Fails if any check fails.
pub fn verify(algebra: &str, degree_cap: u32, max_degree: Option<u32>) -> Result<String, CliError> {
    let loaded = resolve(algebra)?;
    let mut s = String::new();
    let mut failures = Vec::new();
    let _ = writeln!(s, "{}: structure constants valid (antisymmetry, Jacobi, Cartan, triples)", loaded.algebra.name());
    let opts = Options { max_degree, degree_cap, ..Options::default() };
    let scopes: Vec<Option<&str>> =
        std::iter::once(None).chain(loaded.embeddings.iter().map(|e| Some(e.name.as_str()))).collect();
    for scope in scopes {
        let run = pipeline::run(&loaded, scope, &opts)?;
        let name = scope.unwrap_or(pipeline::FULL);
        let mut check = |label: String, ok: bool| {
            let _ = writeln!(s, "[{}] {name}: {label}", if ok { "ok" } else { "FAIL" });
            if !ok {
                failures.push(format!("{name}: {label}"));
            }
        };
        let (g, gens) = scope_algebra(&loaded, scope)?;
        let group = closure_set(&run.operators, CLOSURE_BOUND).map_err(|e| CliError::Pipeline(e.into()))?;
        check(
            format!("{} group elements are automorphisms", group.len()),
            group.ops.iter().all(|o| check_automorphism(&g, &o.matrix)),
        );
        check("Cartan restrictions consistent".into(), run.consistency.ok());
        let count = run.degrees.iter().map(|d| d.kernel.len()).sum::<usize>();
        let killed = run
            .degrees
            .iter()
            .flat_map(|d| &d.kernel)
            .all(|inv| gens.iter().all(|&k| delta(&run.ad, k, &inv.poly).is_zero()));
        check(format!("{count} kernel invariants annihilated by {} generators", gens.len()), killed);
        let new: Vec<Invariant> = run.invariants().cloned().collect();
        for z in &run.syzygies {
            let zero = expand_in_invariants(&z.relation, &new).map(|p| p.is_zero()).unwrap_or(false);
            check(format!("syzygy {} vanishes", z.relation), zero);
        }
        for r in &run.references {
            let reachable = r.degree <= run.max_degree;
            if reachable {
                check(format!("reference {} in computed span", r.name), r.in_span);
            }
        }
        if let Some(series) = &run.series {
            check("kernel dimensions match Molien coefficients".into(), series.agrees());
        }
    }
    if failures.is_empty() {
        Ok(s)
    } else {
        print!("{s}");
        Err(CliError::Verification(failures.join("; ")))
    }
}
