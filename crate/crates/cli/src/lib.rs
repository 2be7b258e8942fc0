//! Command-line front end for `finmet`.
//!
//! Exit codes: 0 success or property true, 1 property false or validation
//! failed, 2 malformed input or unmet precondition.

pub mod document;
mod render;
pub mod workspace;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use finmet::corelation::gamma_from_labels;
use finmet::idempotent::PairFactor;
use finmet::pushout::pushout_gamma;
use finmet::quotient::validate_submetric;
use finmet::selftest::run_suite;
use finmet::{
    cokernel_pair, coproduct, equalizer, kernel_metric, product, pushout_along_embedding,
    pushout_closure_oracle, quotient_leq, FinMap,
};
use serde_json::{json, Value};

use render::{blocks_json, blocks_text, map_json, map_text, rows_json, space_json, space_text, square_table};
use workspace::Workspace;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("duplicate {kind} named `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("no {kind} named `{name}`")]
    Missing { kind: &'static str, name: String },
    #[error("this command needs --file")]
    NoFile,
    #[error(transparent)]
    Lib(#[from] finmet::Error),
}

#[derive(Debug, Parser)]
#[command(name = "finmet", version, about = "Finite Lawvere metric spaces: constructions and checks")]
struct Cli {
    /// Document with the named objects.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Space,
    Submetric,
    Map,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a space, submetric or map and list every violation.
    Validate { kind: Kind, name: String },
    /// Product with the sup metric.
    Product { a: String, b: String },
    /// Disjoint union, with infinite distance between the summands.
    Coproduct { a: String, b: String },
    /// Subspace where two parallel maps agree.
    Equalizer { f: String, g: String },
    /// Pushout of a map along an embedding.
    Pushout {
        #[arg(long)]
        embedding: String,
        #[arg(long)]
        along: String,
        /// Also compute the glued matrix by shortest-path closure and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Pushout of an embedding along itself.
    CokernelPair { i: String },
    /// Factor a map as a surjection followed by an embedding.
    Factorize { f: String },
    /// Distances of the target pulled back to the source.
    KernelMetric { f: String },
    /// Quotient of a space by a submetric.
    Quotient { gamma: String },
    /// Whether g factors through f, with the mediator when it does.
    QuotientLeq { f: String, g: String },
    /// Block metrics on X + X.
    #[command(subcommand)]
    Corelation(CorelationCommand),
    /// Min-plus idempotent cost matrices.
    #[command(subcommand)]
    Idempotent(IdempotentCommand),
    /// Idempotent boolean relations.
    #[command(subcommand)]
    Relation(RelationCommand),
    /// Run a property suite by name or number.
    Selftest {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Debug, Subcommand)]
enum CorelationCommand {
    /// Submetric validity and the equivalence axioms, with witnesses.
    Check { name: String },
    /// Whether an equivalence is the kernel of its own quotient.
    Effective { name: String },
    /// The corelation routed through a comma-separated subset.
    FromSubset { space: String, points: String },
}

#[derive(Debug, Subcommand)]
enum IdempotentCommand {
    /// Compare a cost matrix with its min-plus square.
    Check { name: String },
    /// Route every pair through a zero-diagonal point.
    Factor { name: String },
}

#[derive(Debug, Subcommand)]
enum RelationCommand {
    /// A point a with x R a, a R a and a R y.
    Witness { name: String, x: String, y: String },
}

/// Text report, JSON report and exit code of one command.
struct Outcome {
    code: i32,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { code: 0, text, json }
    }

    fn verdict(holds: bool, text: String, json: Value) -> Self {
        Outcome {
            code: if holds { 0 } else { 1 },
            text,
            json,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the report to `out`. Returns the exit code.
pub fn run_command<W: Write>(argv: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli);
    let (code, text, json) = match result {
        Ok(o) => (o.code, o.text, o.json),
        Err(e) => (2, format!("error: {e}\n"), json!({ "error": e.to_string() })),
    };
    let written = if cli.json {
        let mut doc = json;
        if let Value::Object(map) = &mut doc {
            map.insert("exit".into(), json!(code));
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))
    } else {
        write!(out, "{text}")
    };
    if written.is_err() {
        return 2;
    }
    code
}

fn load(cli: &Cli) -> Result<Workspace, CliError> {
    let path = cli.file.as_ref().ok_or(CliError::NoFile)?;
    Workspace::load(path)
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    if let Command::Selftest { suite } = &cli.command {
        let outcome = run_suite(suite, cli.seed)?;
        let json = json!({
            "suite": outcome.name,
            "id": outcome.id,
            "seed": cli.seed,
            "checks": outcome.checks,
            "failed": outcome.failed,
            "failures": outcome.failures,
            "notes": outcome.notes,
            "passed": outcome.passed(),
        });
        return Ok(Outcome::verdict(outcome.passed(), format!("{outcome}\n"), json));
    }
    let ws = load(cli)?;
    match &cli.command {
        Command::Validate { kind, name } => validate(&ws, *kind, name),
        Command::Product { a, b } => {
            let (p, _, _) = product(&ws.space(a)?, &ws.space(b)?);
            Ok(Outcome::ok(space_text(&format!("product {a} x {b}"), &p), space_json(&p)))
        }
        Command::Coproduct { a, b } => {
            let (s, _, _) = coproduct(&ws.space(a)?, &ws.space(b)?);
            Ok(Outcome::ok(space_text(&format!("coproduct {a} + {b}"), &s), space_json(&s)))
        }
        Command::Equalizer { f, g } => {
            let e = equalizer(&ws.map(f)?, &ws.map(g)?)?;
            let text = format!("{}{}", space_text(&format!("equalizer of {f}, {g}"), e.source()), map_text("inclusion", &e));
            Ok(Outcome::ok(text, json!({ "space": space_json(e.source()), "inclusion": map_json(&e) })))
        }
        Command::Pushout {
            embedding,
            along,
            oracle,
        } => pushout(&ws, embedding, along, *oracle),
        Command::CokernelPair { i } => {
            let cp = cokernel_pair(&ws.map(i)?)?;
            let text = format!(
                "{}{}{}",
                space_text(&format!("cokernel pair of {i}"), cp.apex()),
                map_text("q0", &cp.q0),
                map_text("q1", &cp.q1)
            );
            let json = json!({ "apex": space_json(cp.apex()), "q0": map_json(&cp.q0), "q1": map_json(&cp.q1) });
            Ok(Outcome::ok(text, json))
        }
        Command::Factorize { f } => {
            let fac = ws.map(f)?.factorize()?;
            let text = format!(
                "{}{}{}",
                space_text(&format!("image of {f}"), fac.embedding.source()),
                map_text("surjection", &fac.surjection),
                map_text("embedding", &fac.embedding)
            );
            let json = json!({
                "image": space_json(fac.embedding.source()),
                "surjection": map_json(&fac.surjection),
                "embedding": map_json(&fac.embedding),
            });
            Ok(Outcome::ok(text, json))
        }
        Command::KernelMetric { f } => {
            let k = kernel_metric(&ws.map(f)?);
            let text = format!("kernel metric of {f}\n{}", square_table(k.base().labels(), k.gamma()));
            Ok(Outcome::ok(text, json!({ "base": k.base().labels(), "gamma": rows_json(k.gamma()) })))
        }
        Command::Quotient { gamma } => {
            let p = ws.submetric(gamma)?.quotient()?;
            let text = format!("{}{}", space_text(&format!("quotient by {gamma}"), p.target()), map_text("projection", &p));
            Ok(Outcome::ok(text, json!({ "space": space_json(p.target()), "projection": map_json(&p) })))
        }
        Command::QuotientLeq { f, g } => quotient_order(&ws, f, g),
        Command::Corelation(c) => corelation(&ws, c),
        Command::Idempotent(c) => idempotent(&ws, c),
        Command::Relation(RelationCommand::Witness { name, x, y }) => {
            let r = ws.relation(name)?;
            let index = |l: &str| {
                r.points()
                    .iter()
                    .position(|p| p == l)
                    .ok_or_else(|| finmet::Error::UnknownLabel(l.to_string()))
            };
            let (xi, yi) = (index(x)?, index(y)?);
            let w = r.density_witness(xi, yi)?;
            let label = w.map(|a| r.points()[a].clone());
            let text = match &label {
                Some(a) => format!("{x} R {a}, {a} R {a}, {a} R {y}\nwitness: {a}\n"),
                None => "witness: none\n".to_string(),
            };
            Ok(Outcome::verdict(w.is_some(), text, json!({ "relation": name, "x": x, "y": y, "witness": label })))
        }
        Command::Selftest { .. } => unreachable!("handled above"),
    }
}

fn report_outcome(title: String, report: &finmet::Report, extra: Vec<(String, Value)>) -> Outcome {
    let mut text = format!("{title}: {}\n", if report.is_valid() { "valid" } else { "invalid" });
    for line in report.lines() {
        text.push_str(&format!("  {line}\n"));
    }
    let mut json = json!({ "valid": report.is_valid(), "violations": report.lines() });
    for (k, v) in extra {
        if let Some(b) = v.as_bool() {
            text.push_str(&format!("{k}: {}\n", yes(b)));
        }
        json[k] = v;
    }
    Outcome::verdict(report.is_valid(), text, json)
}

fn validate(ws: &Workspace, kind: Kind, name: &str) -> Result<Outcome, CliError> {
    Ok(match kind {
        Kind::Space => {
            let report = ws.validate_space(name)?;
            let extra = if report.is_valid() {
                vec![("separated".to_string(), json!(ws.space(name)?.is_separated()))]
            } else {
                vec![]
            };
            report_outcome(format!("space {name}"), &report, extra)
        }
        Kind::Submetric => {
            let (base, gamma) = ws.raw_submetric(name)?;
            let report = validate_submetric(&base, &gamma)?;
            report_outcome(format!("submetric {name}"), &report, vec![])
        }
        Kind::Map => {
            let f = ws.map_candidate(name)?;
            let report = f.check_nonexpansive();
            let extra = if report.is_valid() {
                vec![
                    ("surjective".to_string(), json!(f.is_surjective())),
                    ("embedding".to_string(), json!(f.is_embedding())),
                ]
            } else {
                vec![]
            };
            report_outcome(format!("map {name}"), &report, extra)
        }
    })
}

fn pushout(ws: &Workspace, embedding: &str, along: &str, oracle: bool) -> Result<Outcome, CliError> {
    let (i, f) = (ws.map(embedding)?, ws.map(along)?);
    let po = pushout_along_embedding(&i, &f)?;
    let gamma = pushout_gamma(&i, &f)?;
    let labels = gamma.base().labels();
    let mut text = format!("glued submetric on B + X\n{}", square_table(labels, gamma.gamma()));
    text.push_str(&space_text("pushout", po.apex()));
    text.push_str(&map_text("into_b", &po.into_b));
    text.push_str(&map_text("into_x", &po.into_x));
    text.push_str(&format!("into_b embedding: {}\n", yes(po.into_b.is_embedding())));
    let mut json = json!({
        "gamma": { "points": labels, "dist": rows_json(gamma.gamma()) },
        "pushout": space_json(po.apex()),
        "into_b": map_json(&po.into_b),
        "into_x": map_json(&po.into_x),
        "into_b_embedding": po.into_b.is_embedding(),
    });
    let mut agree = true;
    if oracle {
        let closure = pushout_closure_oracle(&i, &f)?;
        agree = closure.gamma() == gamma.gamma();
        text.push_str(&format!("closure oracle\n{}", square_table(labels, closure.gamma())));
        text.push_str(if agree { "AGREE\n" } else { "DISAGREE\n" });
        json["oracle"] = json!({ "dist": rows_json(closure.gamma()), "agree": agree });
    }
    Ok(Outcome::verdict(agree, text, json))
}

fn quotient_order(ws: &Workspace, f: &str, g: &str) -> Result<Outcome, CliError> {
    let (fm, gm) = (ws.map(f)?, ws.map(g)?);
    let leq = quotient_leq(&fm, &gm)?;
    let mut text = format!("{f} <= {g}: {}\n", yes(leq));
    let mut json = json!({ "leq": leq });
    if leq {
        let mut assignment = vec![0; fm.target().len()];
        for x in 0..fm.source().len() {
            assignment[fm.apply(x)] = gm.apply(x);
        }
        let h = FinMap::new(fm.target().clone(), gm.target().clone(), assignment)?;
        text.push_str(&map_text(&format!("h with h . {f} = {g}"), &h));
        json["h"] = map_json(&h);
    } else {
        let (kf, kg) = (kernel_metric(&fm), kernel_metric(&gm));
        let n = fm.source().len();
        let (x, y) = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| kg.gamma().get(x, y) > kf.gamma().get(x, y))
            .expect("kernel test failed somewhere");
        let (lx, ly) = (fm.source().label(x), fm.source().label(y));
        let line = format!(
            "kernel of {g} at ({lx},{ly}) = {} > {} = kernel of {f} at ({lx},{ly})",
            kg.gamma().get(x, y),
            kf.gamma().get(x, y)
        );
        text.push_str(&format!("  {line}\n"));
        json["witness"] = json!(line);
    }
    Ok(Outcome::verdict(leq, text, json))
}

fn corelation(ws: &Workspace, c: &CorelationCommand) -> Result<Outcome, CliError> {
    match c {
        CorelationCommand::Check { name } => {
            let g = ws.corelation(name)?;
            let report = g.validate();
            if !report.is_valid() {
                return Ok(report_outcome(format!("corelation {name} submetric"), &report, vec![]));
            }
            let mut text = format!("corelation {name} submetric: valid\n");
            let mut json = json!({ "valid": true });
            let refl = g.reflexivity_violation();
            text.push_str(&format!("reflexive: {}\n", yes(refl.is_none())));
            if let Some(v) = &refl {
                text.push_str(&format!("  {}\n", g.describe_reflexivity(v)));
            }
            json["reflexive"] = json!({ "holds": refl.is_none(), "witness": refl.as_ref().map(|v| g.describe_reflexivity(v)) });
            let sym = g.symmetry_violation();
            text.push_str(&format!("symmetric: {}\n", yes(sym.is_none())));
            if let Some(v) = &sym {
                text.push_str(&format!("  {}\n", g.describe_symmetry(v)));
            }
            json["symmetric"] = json!({ "holds": sym.is_none(), "witness": sym.as_ref().map(|v| g.describe_symmetry(v)) });
            match g.transitivity_violation() {
                Ok(t) => {
                    text.push_str(&format!("transitive: {}\n", yes(t.is_none())));
                    if let Some(v) = &t {
                        text.push_str(&format!("  {}\n", g.describe_transitivity(v)));
                    }
                    json["transitive"] = json!({ "holds": t.is_none(), "witness": t.as_ref().map(|v| g.describe_transitivity(v)) });
                }
                Err(_) => {
                    text.push_str("transitive: undefined (not reflexive)\n");
                    json["transitive"] = json!({ "holds": Value::Null, "witness": Value::Null });
                }
            }
            let eq = g.is_equivalence();
            text.push_str(&format!("equivalence: {}\n", yes(eq)));
            json["equivalence"] = json!(eq);
            Ok(Outcome::verdict(eq, text, json))
        }
        CorelationCommand::Effective { name } => {
            let g = ws.corelation(name)?;
            let report = g.validate();
            if !report.is_valid() {
                return Ok(report_outcome(format!("corelation {name} submetric"), &report, vec![]));
            }
            if !g.is_equivalence() {
                let text = format!("corelation {name}: not an equivalence\neffective: false\n");
                return Ok(Outcome::verdict(false, text, json!({ "equivalence": false, "effective": false })));
            }
            let a = g.zero_locus()?;
            let labels: Vec<&str> = a.iter().map(|&p| g.base().label(p)).collect();
            let eff = g.is_effective()?;
            let text = format!("corelation {name}\nzero locus: {{{}}}\neffective: {}\n", labels.join(", "), yes(eff));
            Ok(Outcome::verdict(eff, text, json!({ "equivalence": true, "zero_locus": labels, "effective": eff })))
        }
        CorelationCommand::FromSubset { space, points } => {
            let x = ws.space(space)?;
            let labels: Vec<&str> = points.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let g = gamma_from_labels(&x, &labels)?;
            let text = format!("corelation through {{{}}} on {space}\n{}", labels.join(", "), blocks_text(&g));
            Ok(Outcome::ok(text, blocks_json(&g)))
        }
    }
}

fn idempotent(ws: &Workspace, c: &IdempotentCommand) -> Result<Outcome, CliError> {
    let (IdempotentCommand::Check { name } | IdempotentCommand::Factor { name }) = c;
    let rho = ws.cost(name)?;
    let square = rho.minplus_square()?;
    let pts = rho.points();
    let n = pts.len();
    let diff = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| square.rho().get(x, y) != rho.rho().get(x, y));
    if let Some((x, y)) = diff {
        let line = format!(
            "T(rho)({0},{1}) = {2} != {3} = rho({0},{1})",
            pts[x],
            pts[y],
            square.rho().get(x, y),
            rho.rho().get(x, y)
        );
        let text = format!("cost {name}\nidempotent: false\n  {line}\n");
        return Ok(Outcome::verdict(false, text, json!({ "idempotent": false, "witness": line })));
    }
    if let IdempotentCommand::Check { .. } = c {
        return Ok(Outcome::ok(format!("cost {name}\nidempotent: true\n"), json!({ "idempotent": true })));
    }
    let report = rho.factor_through_zero_diagonal()?;
    let zero: Vec<&str> = report.zero_set.iter().map(|&a| pts[a].as_str()).collect();
    let mut text = format!("cost {name}\nidempotent: true\nzero diagonal: {{{}}}\n", zero.join(", "));
    let mut rows = Vec::new();
    for &((x, y), w) in &report.pairs {
        let (lx, ly) = (&pts[x], &pts[y]);
        let (line, via) = match w {
            PairFactor::Witness(a) => (
                format!(
                    "rho({lx},{ly}) = {} = {} + {} via {}",
                    rho.rho().get(x, y),
                    rho.rho().get(x, a),
                    rho.rho().get(a, y),
                    pts[a]
                ),
                json!(pts[a]),
            ),
            PairFactor::Vacuous => (format!("rho({lx},{ly}) = inf, vacuous"), json!("vacuous")),
            PairFactor::Missing => (format!("rho({lx},{ly}) = {} has no witness", rho.rho().get(x, y)), Value::Null),
        };
        text.push_str(&format!("  {line}\n"));
        rows.push(json!({ "x": lx, "y": ly, "via": via }));
    }
    let full = report.full_coverage();
    text.push_str(&format!("full coverage: {}\n", yes(full)));
    Ok(Outcome::verdict(
        full,
        text,
        json!({ "idempotent": true, "zero_diagonal": zero, "pairs": rows, "full_coverage": full }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String) {
        let argv: Vec<String> = std::iter::once("finmet").chain(args.iter().copied()).map(String::from).collect();
        let mut out = Vec::new();
        let code = run_command(&argv, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(&["frobnicate"]).0, 2);
        assert_eq!(run(&["product", "A"]).0, 2);
        assert_eq!(run(&["validate", "space", "X"]).0, 2);
        assert_eq!(run(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, text) = run(&["--file", "/nonexistent/doc.json", "product", "A", "B"]);
        assert_eq!(code, 2);
        assert!(text.starts_with("error: cannot read"));
    }

    #[test]
    fn selftest_unknown_suite() {
        let (code, text) = run(&["selftest", "--suite", "nope"]);
        assert_eq!(code, 2);
        assert_eq!(text, "error: unknown suite `nope`\n");
    }

    #[test]
    fn selftest_json() {
        let (code, text) = run(&["selftest", "--suite", "fixtures", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["exit"], json!(0));
    }
}
