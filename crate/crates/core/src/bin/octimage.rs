use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use octimage::classifier::{classify_multilinear, realize_target, sample_consistency, ScanOptions, DEFAULT_MAX_VARS};
use octimage::malcev::{classify_malcev, realize_malcev_target};
use octimage::orbit::map_pure;
use octimage::polynomial::{degree_profile, parse_with_warnings};
use octimage::sampling::{random_real_octonion, rng_for};
use octimage::selfcheck::run_selfcheck;
use octimage::semihomog::{classify_semihomogeneous, excluded_ratio_check};
use octimage::{Algebra, AlgebraParams, Error, FieldMode, Octonion, Polynomial, Rational, Result, Verdict};

/// Image classification for nonassociative polynomials on the octonions.
#[derive(Parser, Debug)]
#[command(name = "octimage", version)]
struct Cli {
    /// Doubling parameters a1,a2,a3 (the division octonions are -1,-1,-1)
    #[arg(long, global = true, default_value = "-1,-1,-1", allow_hyphen_values = true)]
    params: String,
    /// Field for numeric work; defaults to real for `orbit` and rational otherwise
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Zero tolerance in real mode
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random samples for cross-checks and ratio statistics
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,
    /// Worker threads (default: all cores); never affects results
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Rational,
    Real,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct PolyInput {
    /// Polynomial, e.g. "x1*x2 - x2*x1"
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// File with one polynomial per line (blank lines and # comments skipped)
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify the image of a multilinear polynomial as 0, F, V or O
    Classify {
        #[command(flatten)]
        input: PolyInput,
        /// Visit all 8^n basic tuples instead of stopping at the first two witnesses
        #[arg(long)]
        full_scan: bool,
        /// Assume every pure norm is a square in the base field
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        assume_property_p: bool,
        /// Largest number of variables to scan
        #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
        max_vars: usize,
        /// Also construct an assignment hitting this octonion (full images only)
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// Classify a semihomogeneous polynomial through its norm ratio
    Semi {
        #[command(flatten)]
        input: PolyInput,
        /// Eigenvalue ratio statistics to count hits on, e.g. "-2,2"
        #[arg(long, allow_hyphen_values = true)]
        excluded: Option<String>,
    },
    /// Evaluate with the Malcev product on pure octonions
    Malcev {
        #[command(flatten)]
        input: PolyInput,
        /// Also construct an assignment hitting this pure octonion
        #[arg(long, allow_hyphen_values = true)]
        target: Option<String>,
    },
    /// Build an automorphism and scalar taking one pure octonion to another
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Print the multiplication table of the basis
    Table,
    /// Check the algebra's invariants on seeded random inputs
    Selfcheck,
    /// Parse a polynomial and report its shape
    Parse {
        #[command(flatten)]
        input: PolyInput,
    },
}

struct Context {
    params: AlgebraParams<Rational>,
    tol: f64,
    mode: Option<Mode>,
    seed: u64,
    samples: usize,
}

impl Context {
    fn exact(&self) -> Algebra<Rational> {
        Algebra::new(self.params.clone(), self.tol)
    }

    /// Refuses an explicit `--mode rational` for work that needs square roots.
    fn real(&self, what: &str) -> Result<Algebra<f64>> {
        if self.mode == Some(Mode::Rational) {
            return Err(Error::ModeMismatch(format!("{what} needs --mode real")));
        }
        Ok(Algebra::new(self.params.convert::<f64>(), self.tol))
    }
}

/// A command outcome: JSON payload, text rendering, and whether it signals a
/// mathematical violation.
struct Outcome {
    json: Value,
    text: String,
    violation: bool,
}

fn outcome(value: impl Serialize, text: String) -> Outcome {
    Outcome { json: serde_json::to_value(value).expect("serializable"), text, violation: false }
}

fn read_inputs(input: &PolyInput) -> Result<Vec<String>> {
    match (&input.poly, &input.file) {
        (Some(p), _) => Ok(vec![p.clone()]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(String::from)
                .collect())
        }
        (None, None) => unreachable!("clap enforces one input"),
    }
}

fn parse_octonion(text: &str) -> Result<Octonion<Rational>> {
    text.parse()
}

/// Drops coordinates at rounding-noise level relative to the largest one.
fn show_real(x: &Octonion<f64>) -> String {
    let scale = x.coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    x.map(|&c| if c.abs() <= 1e-14 * scale { 0.0 } else { c }).to_string()
}

fn hint(e: &Error) -> Option<&'static str> {
    match e {
        Error::NotMultilinear => Some("use `semi` for semihomogeneous polynomials or `malcev` for arbitrary ones"),
        Error::NotSemihomogeneous => Some("no variable weights give every term the same nonzero degree"),
        _ => None,
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": e.kind(), "message": e.to_string() });
    if let Some(h) = hint(e) {
        v["hint"] = json!(h);
    }
    v
}

fn error_text(e: &Error) -> String {
    match hint(e) {
        Some(h) => format!("error: {} ({e}); {h}", e.kind()),
        None => format!("error: {} ({e})", e.kind()),
    }
}

fn exit_code(r: &Result<Outcome>) -> u8 {
    match r {
        Ok(o) if o.violation => 2,
        Ok(_) => 0,
        Err(e) if e.is_math_violation() => 2,
        Err(_) => 1,
    }
}

fn classify(ctx: &Context, text: &str, opts: ScanOptions, target: Option<&str>) -> Result<Outcome> {
    let (p, mut warnings) = parse_with_warnings(text)?;
    let alg = ctx.exact();
    let c = classify_multilinear(&alg, &p, opts)?;
    let consistency = sample_consistency(&alg, &p, &c.class, ctx.samples, ctx.seed)?;
    warnings.extend(c.warnings.iter().cloned());
    let realization = match target {
        Some(t) => {
            let q = parse_octonion(t)?.to_f64();
            Some(realize_target(&ctx.real("realization")?, &p, &c.class, &q, ctx.seed)?)
        }
        None => None,
    };
    let mut out = format!("polynomial: {p}\nverdict: {}\n", c.class.verdict);
    for e in &c.class.evidence {
        let args: Vec<String> = e.tuple.iter().map(|i| format!("e{i}")).collect();
        out += &format!("witness: p({}) = {}*e{}\n", args.join(", "), e.coefficient, e.basis_index);
    }
    out += &format!("tuples scanned: {}\n", c.tuples_scanned);
    out += &format!("samples checked: {}, span dimension: {}\n", consistency.samples_checked, consistency.span_dimension);
    if let Some(r) = &realization {
        let args: Vec<String> = r.assignment.iter().map(show_real).collect();
        out += &format!("realization: p({}) with residual {:e}\n", args.join(", "), r.residual);
    }
    for w in &warnings {
        out += &format!("warning: {w}\n");
    }
    let mut json = json!({
        "polynomial": p.to_string(),
        "verdict": c.class.verdict,
        "evidence": c.class.evidence,
        "tuples_scanned": c.tuples_scanned,
        "samples_checked": consistency.samples_checked,
        "span_dimension": consistency.span_dimension,
        "warnings": warnings,
    });
    if let Some(r) = realization {
        json["realization"] = serde_json::to_value(r).expect("serializable");
    }
    Ok(Outcome { json, text: out, violation: false })
}

fn semi(ctx: &Context, text: &str, excluded: Option<&[Rational]>) -> Result<Outcome> {
    let (p, mut warnings) = parse_with_warnings(text)?;
    let alg = ctx.exact();
    let c = classify_semihomogeneous(&alg, &p, ctx.samples, ctx.seed)?;
    let report = excluded.map(|ex| excluded_ratio_check(&alg, &p, ex, ctx.samples, ctx.seed)).transpose()?;
    warnings.extend(c.warnings.iter().cloned());
    let statement = match c.class.verdict {
        Verdict::Zero => "p vanishes identically",
        Verdict::Scalars => "image is F (f = 0 identically)",
        Verdict::Pure => "image is V (scalar part vanishes identically)",
        Verdict::Dense => "image is Zariski dense in O (f takes two distinct values)",
        _ => "f is a nonzero constant; impossible for the division octonions",
    };
    let weights = degree_profile(&p).weighted;
    let mut out = format!("polynomial: {p}\nverdict: {}\n{statement}\n", c.class.verdict);
    for s in &c.ratio_witnesses {
        let args: Vec<String> = s.point.iter().map(ToString::to_string).collect();
        out += &format!("f({}) = {}\n", args.join(", "), s.f);
    }
    out += &format!("samples: {} ({} undefined)\n", c.samples_checked, c.undefined);
    if let Some(r) = &report {
        for h in &r.hits {
            out += &format!("excluded {}: {} hits\n", h.value, h.hits);
        }
        for b in &r.histogram {
            out += &format!("  {:>12}: {}\n", b.label, b.count);
        }
    }
    for w in &warnings {
        out += &format!("warning: {w}\n");
    }
    let mut json = json!({
        "polynomial": p.to_string(),
        "weights": weights,
        "verdict": c.class.verdict,
        "statement": statement,
        "ratio_witnesses": c.ratio_witnesses,
        "constant": c.constant,
        "certificate": c.certificate,
        "samples_checked": c.samples_checked,
        "undefined": c.undefined,
        "warnings": warnings,
    });
    if let Some(r) = report {
        json["excluded"] = serde_json::to_value(r).expect("serializable");
    }
    Ok(Outcome { json, text: out, violation: c.class.verdict == Verdict::Anomalous })
}

fn malcev(ctx: &Context, text: &str, target: Option<&str>) -> Result<Outcome> {
    let (p, warnings) = parse_with_warnings(text)?;
    let c = classify_malcev(&ctx.exact(), &p, ctx.samples, ctx.seed);
    let realization = match target {
        Some(t) => {
            let q = parse_octonion(t)?.to_f64();
            Some(realize_malcev_target(&ctx.real("realization")?, &p, c.verdict, &q, ctx.seed)?)
        }
        None => None,
    };
    let mut out = format!("polynomial: {p}\nverdict: {}\n{}\n", c.verdict, c.statement);
    if let Some(w) = &c.witness {
        let args: Vec<String> = w.assignment.iter().map(ToString::to_string).collect();
        out += &format!("witness: p({}) = {}\n", args.join(", "), w.value);
    }
    if let Some(cert) = &c.certificate {
        out += &format!("certificate: {} grid points over {} components\n", cert.points, cert.components);
    }
    if let Some(r) = &realization {
        let args: Vec<String> = r.assignment.iter().map(show_real).collect();
        out += &format!("realization: p({}) with residual {:e}\n", args.join(", "), r.residual);
    }
    for w in &warnings {
        out += &format!("warning: {w}\n");
    }
    let mut json = serde_json::to_value(&c).expect("serializable");
    json["polynomial"] = json!(p.to_string());
    json["warnings"] = json!(warnings);
    if let Some(r) = realization {
        json["realization"] = serde_json::to_value(r).expect("serializable");
    }
    Ok(Outcome { json, text: out, violation: false })
}

fn orbit(ctx: &Context, from: &str, to: &str) -> Result<Outcome> {
    let alg = ctx.real("orbit")?;
    let x = parse_octonion(from)?.to_f64();
    let y = parse_octonion(to)?.to_f64();
    let m = map_pure(&alg, &x, &y, ctx.seed)?;
    let pts: Vec<Octonion<f64>> = {
        let mut rng = rng_for(ctx.seed, 0, 0);
        (0..200).map(|_| random_real_octonion(&mut rng)).collect()
    };
    let sampled = m.phi.multiplicativity_residual(&alg, pts[..100].iter().zip(&pts[100..]));
    let basis = m.phi.basis_residual(&alg);
    let mut out = format!("c = {}\nresidual |y - c*phi(x)| = {:e}\n", m.c, m.residual);
    out += &format!("multiplicativity residual: basis {basis:e}, sampled {sampled:e}\nmatrix:\n");
    for row in &m.phi.matrix {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.6}")).collect();
        out += &format!("  {}\n", cells.join(" "));
    }
    let json = json!({
        "from": x,
        "to": y,
        "c": m.c,
        "matrix": m.phi.matrix,
        "residual": m.residual,
        "basis_multiplicativity_residual": basis,
        "sampled_multiplicativity_residual": sampled,
    });
    Ok(Outcome { json, text: out, violation: false })
}

fn table(ctx: &Context) -> Outcome {
    let alg = ctx.exact();
    let cell = |i: usize, j: usize| {
        let e = alg.table().get(i, j);
        let one = Rational::integer(1);
        if e.coeff == one {
            format!("e{}", e.index)
        } else if e.coeff == -one {
            format!("-e{}", e.index)
        } else {
            format!("{}*e{}", e.coeff, e.index)
        }
    };
    let rows: Vec<Vec<String>> = (0..8).map(|i| (0..8).map(|j| cell(i, j)).collect()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(3).max(3);
    let mut out = format!("{:>width$} |", "");
    for j in 0..8 {
        out += &format!(" {:>width$}", format!("e{j}"));
    }
    out += &format!("\n{}\n", "-".repeat((width + 1) * 9 + 1));
    for (i, row) in rows.iter().enumerate() {
        out += &format!("{:>width$} |", format!("e{i}"));
        for c in row {
            out += &format!(" {c:>width$}");
        }
        out += "\n";
    }
    outcome(json!({ "params": ctx.params.to_string(), "table": rows }), out)
}

fn selfcheck(ctx: &Context) -> Outcome {
    let r = run_selfcheck(ctx.seed, ctx.samples);
    let mut out = String::new();
    for p in &r.properties {
        let status = if p.passed { "pass" } else { "FAIL" };
        out += &format!("{status}  {} ({} checked)", p.name, p.checked);
        if let Some(res) = p.max_residual {
            out += &format!(", max residual {res:e}");
        }
        if let Some(f) = &p.failure {
            out += &format!(": {f}");
        }
        out += "\n";
    }
    out += &format!("{} of {} properties passed\n", r.properties.iter().filter(|p| p.passed).count(), r.properties.len());
    let violation = !r.passed;
    Outcome { violation, ..outcome(r, out) }
}

fn parse_cmd(text: &str) -> Result<Outcome> {
    let (p, warnings): (Polynomial, Vec<String>) = parse_with_warnings(text)?;
    let prof = degree_profile(&p);
    let mut out = format!("polynomial: {p}\nvariables: {}\nterms: {}\n", p.num_vars(), p.len());
    out += &format!("multilinear: {}\n", prof.is_multilinear);
    match &prof.weighted {
        Some(w) => out += &format!("semihomogeneous: weights {:?}, degree {}\n", w.weights, w.degree),
        None => out += "semihomogeneous: no\n",
    }
    for w in &warnings {
        out += &format!("warning: {w}\n");
    }
    let json = json!({
        "polynomial": p.to_string(),
        "parsed": p,
        "degree_vectors": prof.degree_vectors,
        "multilinear": prof.is_multilinear,
        "weights": prof.weighted,
        "warnings": warnings,
    });
    Ok(Outcome { json, text: out, violation: false })
}

fn parse_excluded(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let mode_name = cli.mode.unwrap_or(if matches!(cli.command, Command::Orbit { .. }) { Mode::Real } else { Mode::Rational });
    let config = json!({
        "params": cli.params,
        "mode": mode_name,
        "tol": cli.tol,
        "seed": cli.seed,
        "samples": cli.samples,
    });

    let setup = (|| -> Result<Context> {
        FieldMode::real(cli.tol)?;
        Ok(Context {
            params: AlgebraParams::parse(&cli.params)?,
            tol: cli.tol,
            mode: cli.mode,
            seed: cli.seed,
            samples: cli.samples,
        })
    })();
    let ctx = match setup {
        Ok(c) => c,
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "config": config, "error": error_json(&e) }));
            } else {
                eprintln!("{}", error_text(&e));
            }
            return ExitCode::from(1);
        }
    };

    let input = match &cli.command {
        Command::Classify { input, .. } | Command::Semi { input, .. } | Command::Malcev { input, .. } | Command::Parse { input } => {
            Some(input)
        }
        _ => None,
    };
    let inputs = match input.map(read_inputs).transpose() {
        Ok(Some(list)) if list.is_empty() => Err(Error::InvalidParams("input file contains no polynomials".to_string())),
        Ok(list) => Ok(list.unwrap_or_else(|| vec![String::new()])),
        Err(e) => Err(e),
    };
    type Runner<'a> = Box<dyn Fn(&str) -> Result<Outcome> + 'a>;
    let (command, run): (&str, Runner) = match &cli.command {
        Command::Classify { full_scan, assume_property_p, max_vars, target, .. } => {
            let opts = ScanOptions { assume_property_p: *assume_property_p, full_scan: *full_scan, max_vars: *max_vars };
            ("classify", Box::new(move |t| classify(&ctx, t, opts, target.as_deref())))
        }
        Command::Semi { excluded, .. } => {
            let excluded = excluded.as_deref().map(parse_excluded).transpose();
            ("semi", Box::new(move |t| semi(&ctx, t, excluded.clone()?.as_deref())))
        }
        Command::Malcev { target, .. } => ("malcev", Box::new(move |t| malcev(&ctx, t, target.as_deref()))),
        Command::Parse { .. } => ("parse", Box::new(parse_cmd)),
        Command::Orbit { from, to } => ("orbit", Box::new(move |_| orbit(&ctx, from, to))),
        Command::Table => ("table", Box::new(move |_| Ok(table(&ctx)))),
        Command::Selfcheck => ("selfcheck", Box::new(move |_| Ok(selfcheck(&ctx)))),
    };
    let inputs = match inputs {
        Ok(i) => i,
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "command": command, "config": config, "error": error_json(&e) }));
            } else {
                eprintln!("{}", error_text(&e));
            }
            return ExitCode::from(1);
        }
    };

    let batch = input.is_some_and(|i| i.file.is_some());

    let results: Vec<Result<Outcome>> = inputs.iter().map(|t| run(t)).collect();
    let code = results.iter().map(exit_code).max().unwrap_or(0);

    if cli.json {
        let render = |r: &Result<Outcome>| match r {
            Ok(o) => o.json.clone(),
            Err(e) => json!({ "error": error_json(e) }),
        };
        let report = if batch {
            let items: Vec<Value> = inputs
                .iter()
                .zip(&results)
                .map(|(t, r)| {
                    let mut v = render(r);
                    v["input"] = json!(t);
                    v
                })
                .collect();
            json!({ "command": command, "config": config, "results": items })
        } else {
            let mut v = json!({ "command": command, "config": config });
            match &results[0] {
                Ok(o) => v["result"] = o.json.clone(),
                Err(e) => v["error"] = error_json(e),
            }
            v
        };
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        for (t, r) in inputs.iter().zip(&results) {
            if batch {
                println!("== {t}");
            }
            match r {
                Ok(o) => print!("{}", o.text),
                Err(e) if batch => println!("{}", error_text(e)),
                Err(e) => eprintln!("{}", error_text(e)),
            }
        }
    }
    ExitCode::from(code)
}
