//! Subcommand implementations.
//!
//! Exit codes: 0 success/verified, 1 identity or check failed, 2 parse or
//! usage error, 3 degree guard exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value as Json};

use motivic_steenrod::cartan::CartanElement;
use motivic_steenrod::coalgebra::coproduct_element;
use motivic_steenrod::engine::AlgebraConfig;
use motivic_steenrod::proof::LemmaVariant;
use motivic_steenrod::scalar::HScalar;
use motivic_steenrod::steenrod::{q, sq, Identity, MilnorMonomial, SteenrodElement};
use motivic_steenrod::{Algebra, AlgebraError};

use crate::format::{self, Format};
use crate::parser::{self, EvalError, Value};
use crate::verify::{self, Range};

#[derive(Debug, Parser)]
#[command(
    name = "motivic",
    version,
    about = "Milnor-basis computations in the mod 2 motivic Steenrod algebra"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,

    /// Largest generator index used in enumerations (hard cap 63).
    #[arg(long, default_value_t = 16, global = true)]
    pub max_index: u32,

    /// Hard bound on the topological degree of any product target.
    #[arg(long, default_value_t = 300, global = true)]
    pub degree_guard: i32,

    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,

    /// Worker threads for independent cases.
    #[arg(long, default_value_t = 1, global = true)]
    pub parallel: usize,

    /// Optional on-disk product memo; absence never changes results.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two elements in the Milnor basis.
    Product { e1: String, e2: String },
    /// The Milnor primitive Q_n.
    Qn {
        n: u32,
        /// Output basis.
        #[arg(long, default_value = "milnor")]
        basis: Basis,
        /// Build through the bracket recursion instead of the constructor.
        #[arg(long)]
        recursive: bool,
    },
    /// P^n computed through the bracket recursion.
    Pn { n: u32 },
    /// A single motivic Steenrod square in the Milnor basis.
    Sq { k: u32 },
    /// Normalized coproduct of a dual-algebra element.
    Coproduct { element: String },
    /// Rewrite a composition of squares into the admissible basis.
    Adem { word: String },
    /// Number of admissible terms of Q_n.
    CartanCount { n: u32 },
    /// Verify a named identity (or `all`) over a parameter range.
    Verify {
        identity: String,
        /// Inclusive range `a..b` (or a single value) for n.
        #[arg(long)]
        n: Option<String>,
        /// Inclusive range `a..b` (or a single value) for i.
        #[arg(long)]
        i: Option<String>,
    },
    /// Specialization comparison against the classical oracle.
    ClassicalCheck {
        /// Exhaustive monomial pairs up to this total degree.
        #[arg(long, default_value_t = 14)]
        degree: i32,
        /// Seeded random homogeneous pairs.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Degree cap for the random pairs.
        #[arg(long, default_value_t = 24)]
        random_degree: i32,
    },
    /// Replay a collapsing lemma over all hypothesis-satisfying sequences.
    LemmaCheck {
        /// Which lemma: 2 or 3.
        variant: u32,
        /// Inclusive range for n.
        #[arg(long, default_value = "2..4")]
        n: String,
        /// Maximal sequence length.
        #[arg(long, default_value_t = 4)]
        maxlen: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Basis {
    Milnor,
    Cartan,
}

/// A finished command: exit code plus the text to print.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn ok(stdout: String) -> Outcome {
    Outcome { code: 0, stdout }
}

fn exit_code_for(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::DegreeGuardExceeded { .. } | AlgebraError::IndexOverflow { .. } => 3,
        AlgebraError::UnknownIdentity { .. } | AlgebraError::HypothesisViolated { .. } => 2,
        AlgebraError::SolveFailure { .. } => 1,
    }
}

fn fail(e: &AlgebraError) -> Outcome {
    Outcome {
        code: exit_code_for(e),
        stdout: format!("error: {e}\n"),
    }
}

fn usage(msg: &str) -> Outcome {
    Outcome {
        code: 2,
        stdout: format!("error: {msg}\n"),
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let alg = Algebra::new(AlgebraConfig {
        max_index: cli.max_index.min(motivic_steenrod::MAX_GENERATOR_INDEX),
        degree_guard: cli.degree_guard,
    });
    if let Some(dir) = &cli.cache_dir {
        load_cache(&alg, dir);
    }
    let outcome = dispatch(cli, &alg);
    if let Some(dir) = &cli.cache_dir {
        save_cache(&alg, dir);
    }
    outcome
}

fn dispatch(cli: &Cli, alg: &Algebra) -> Outcome {
    match &cli.command {
        Command::Product { e1, e2 } => cmd_product(cli, alg, e1, e2),
        Command::Qn { n, basis, recursive } => cmd_qn(cli, alg, *n, *basis, *recursive),
        Command::Pn { n } => cmd_pn(cli, alg, *n),
        Command::Sq { k } => match sq(*k) {
            Ok(x) => ok(render_milnor(cli.format, &x)),
            Err(e) => fail(&e),
        },
        Command::Coproduct { element } => cmd_coproduct(cli, alg, element),
        Command::Adem { word } => cmd_adem(cli, alg, word),
        Command::CartanCount { n } => cmd_cartan_count(cli, alg, *n),
        Command::Verify { identity, n, i } => cmd_verify(cli, alg, identity, n.as_deref(), i.as_deref()),
        Command::ClassicalCheck {
            degree,
            samples,
            random_degree,
        } => cmd_classical(cli, alg, *degree, *samples, *random_degree),
        Command::LemmaCheck { variant, n, maxlen } => cmd_lemma(cli, alg, *variant, n, *maxlen),
    }
}

fn parse_eval(alg: &Algebra, input: &str) -> Result<Value, Outcome> {
    let expr = parser::parse(input).map_err(|e| Outcome {
        code: 2,
        stdout: format!("error: {e}\n"),
    })?;
    parser::eval(alg, &expr).map_err(|e| match e {
        EvalError::Algebra(ref ae) => fail(ae),
        EvalError::KindMismatch(_) => Outcome {
            code: 2,
            stdout: format!("error: {e}\n"),
        },
    })
}

fn render_milnor(format: Format, x: &SteenrodElement) -> String {
    match format {
        Format::Text => format!("{x}\n"),
        Format::Json => format!("{}\n", format::milnor_json(x)),
        Format::Latex => format!("{}\n", format::milnor_latex(x)),
    }
}

fn render_cartan(format: Format, x: &CartanElement) -> String {
    match format {
        Format::Text => format!("{x}\n"),
        Format::Json => format!("{}\n", format::cartan_json(x)),
        Format::Latex => format!("{}\n", format::cartan_latex(x)),
    }
}

fn render_value(format: Format, v: &Value) -> String {
    match (format, v) {
        (Format::Text, Value::Scalar(h)) => format!("{h}\n"),
        (Format::Text, Value::Dual(x)) => format!("{x}\n"),
        (Format::Text, Value::Milnor(x)) => format!("{x}\n"),
        (Format::Json, Value::Scalar(h)) => format!("{}\n", format::scalar_json(h)),
        (Format::Json, Value::Dual(x)) => format!("{}\n", format::dual_json(x)),
        (Format::Json, Value::Milnor(x)) => format!("{}\n", format::milnor_json(x)),
        (Format::Latex, Value::Scalar(h)) => format!("{}\n", format::scalar_latex(h)),
        (Format::Latex, Value::Dual(x)) => format!("{}\n", format::dual_latex(x)),
        (Format::Latex, Value::Milnor(x)) => format!("{}\n", format::milnor_latex(x)),
    }
}

fn cmd_product(cli: &Cli, alg: &Algebra, e1: &str, e2: &str) -> Outcome {
    let v1 = match parse_eval(alg, e1) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let v2 = match parse_eval(alg, e2) {
        Ok(v) => v,
        Err(o) => return o,
    };
    // dual-algebra inputs multiply in the dual; everything else is the
    // Milnor-basis product
    if matches!(v1, Value::Dual(_)) || matches!(v2, Value::Dual(_)) {
        let (x, y) = match (v1.into_dual(), v2.into_dual()) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(e), _) | (_, Err(e)) => return usage(&e.to_string()),
        };
        return match motivic_steenrod::dual::multiply_elements(&x, &y) {
            Ok(p) => ok(render_value(cli.format, &Value::Dual(p))),
            Err(e) => fail(&e),
        };
    }
    let (x, y) = match (v1.into_milnor(), v2.into_milnor()) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(e), _) | (_, Err(e)) => return usage(&e.to_string()),
    };
    match alg.product(&x, &y) {
        Ok(p) => ok(render_milnor(cli.format, &p)),
        Err(e) => fail(&e),
    }
}

fn cmd_qn(cli: &Cli, alg: &Algebra, n: u32, basis: Basis, recursive: bool) -> Outcome {
    let elem = if recursive {
        alg.milnor_q_recursive(n)
    } else {
        q(n)
    };
    let elem = match elem {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    match basis {
        Basis::Milnor => ok(render_milnor(cli.format, &elem)),
        Basis::Cartan => match alg.milnor_to_cartan(&elem) {
            Ok(c) => ok(render_cartan(cli.format, &c)),
            Err(e) => fail(&e),
        },
    }
}

fn cmd_pn(cli: &Cli, alg: &Algebra, n: u32) -> Outcome {
    if n < 1 {
        return usage("pn needs n >= 1");
    }
    match alg.milnor_p_recursive(n) {
        Ok(x) => ok(render_milnor(cli.format, &x)),
        Err(e) => fail(&e),
    }
}

fn cmd_coproduct(cli: &Cli, alg: &Algebra, element: &str) -> Outcome {
    let v = match parse_eval(alg, element) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let x = match v.into_dual() {
        Ok(x) => x,
        Err(e) => return usage(&e.to_string()),
    };
    for (m, _) in x.terms() {
        let d = m.degree();
        if d.p > alg.degree_guard() {
            return fail(&AlgebraError::DegreeGuardExceeded {
                degree: d.p,
                guard: alg.degree_guard(),
            });
        }
    }
    match coproduct_element(&x) {
        Ok(t) => ok(match cli.format {
            Format::Text => format!("{t}\n"),
            Format::Json => format!("{}\n", format::tensor_json(&t)),
            Format::Latex => format!("{}\n", format::tensor_latex(&t)),
        }),
        Err(e) => fail(&e),
    }
}

fn cmd_adem(cli: &Cli, alg: &Algebra, word: &str) -> Outcome {
    let v = match parse_eval(alg, word) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let x = match v.into_milnor() {
        Ok(x) => x,
        Err(e) => return usage(&e.to_string()),
    };
    match alg.milnor_to_cartan(&x) {
        Ok(c) => ok(render_cartan(cli.format, &c)),
        Err(e) => fail(&e),
    }
}

fn cmd_cartan_count(cli: &Cli, alg: &Algebra, n: u32) -> Outcome {
    let elem = match q(n) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    match alg.cartan_term_count(&elem) {
        Ok(count) => ok(match cli.format {
            Format::Text | Format::Latex => format!("{count}\n"),
            Format::Json => format!("{}\n", json!({"n": n, "count": count})),
        }),
        Err(e) => fail(&e),
    }
}

fn parse_range(label: &str, s: Option<&str>) -> Result<Option<Range>, Outcome> {
    match s {
        None => Ok(None),
        Some(s) => match Range::parse(s) {
            Some(r) => Ok(Some(r)),
            None => Err(usage(&format!(
                "invalid {label} range `{s}`; use `a..b` (inclusive) or a single value"
            ))),
        },
    }
}

fn cmd_verify(cli: &Cli, alg: &Algebra, identity: &str, n: Option<&str>, i: Option<&str>) -> Outcome {
    let n_range = match parse_range("n", n) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let i_range = match parse_range("i", i) {
        Ok(r) => r,
        Err(o) => return o,
    };
    let plan: Vec<(Identity, Range, Option<Range>)> = if identity == "all" {
        verify::acceptance_plan()
            .into_iter()
            .map(|(id, r)| (id, r, None))
            .collect()
    } else {
        let id: Identity = match identity.parse() {
            Ok(id) => id,
            Err(e) => return fail(&e),
        };
        let default_range = verify::acceptance_plan()
            .into_iter()
            .find(|(pid, _)| *pid == id)
            .map(|(_, r)| r)
            .expect("every identity is in the plan");
        (vec![(id, n_range.unwrap_or(default_range), i_range)]) as Vec<_>
    };

    let mut text = String::new();
    let mut reports = Vec::new();
    for (id, nr, ir) in plan {
        match verify::run_identity(alg, id, nr, ir, cli.parallel) {
            Ok(report) => {
                for case in &report.cases {
                    let params = match case.i {
                        Some(i) => format!("n={} i={i}", case.n),
                        None => format!("n={}", case.n),
                    };
                    let _ = writeln!(
                        text,
                        "{:14} {params}: {} ({:.3} ms)",
                        id.name(),
                        if case.pass { "pass" } else { "FAIL" },
                        case.wall.as_secs_f64() * 1e3,
                    );
                    if let Some(diff) = &case.diff {
                        let _ = writeln!(text, "  difference: {diff}");
                    }
                }
                reports.push(report);
            }
            Err(e) => return fail(&e),
        }
    }
    let total: usize = reports.iter().map(|r| r.cases.len()).sum();
    let failures: usize = reports
        .iter()
        .map(|r| r.cases.iter().filter(|c| !c.pass).count())
        .sum();
    let all_pass = failures == 0;
    let _ = writeln!(
        text,
        "{}: {total} cases, {failures} failures",
        if all_pass { "VERIFIED" } else { "FAILED" }
    );
    let stdout = match cli.format {
        Format::Text | Format::Latex => text,
        Format::Json => {
            let reports: Vec<Json> = reports
                .iter()
                .map(|r| {
                    json!({
                        "identity": r.identity.name(),
                        "cases": r.cases.iter().map(|c| {
                            json!({
                                "n": c.n,
                                "i": c.i,
                                "pass": c.pass,
                                "ms": c.wall.as_secs_f64() * 1e3,
                                "diff": c.diff.as_ref().map(format::milnor_json),
                            })
                        }).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({"reports": reports, "cases": total, "failures": failures, "verified": all_pass})
            )
        }
    };
    Outcome {
        code: i32::from(!all_pass),
        stdout,
    }
}

fn cmd_classical(cli: &Cli, alg: &Algebra, degree: i32, samples: usize, random_degree: i32) -> Outcome {
    match verify::run_classical_check(alg, degree, samples, random_degree, 4, cli.seed) {
        Ok(cases) => {
            let all_pass = cases.iter().all(|c| c.pass);
            let stdout = match cli.format {
                Format::Text | Format::Latex => {
                    let mut text = String::new();
                    for c in &cases {
                        let _ = writeln!(text, "{}: {}", c.label, if c.pass { "pass" } else { "FAIL" });
                    }
                    let _ = writeln!(text, "{}", if all_pass { "VERIFIED" } else { "FAILED" });
                    text
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "cases": cases.iter().map(|c| json!({"label": c.label, "pass": c.pass})).collect::<Vec<_>>(),
                        "verified": all_pass,
                    })
                ),
            };
            Outcome {
                code: i32::from(!all_pass),
                stdout,
            }
        }
        Err(e) => fail(&e),
    }
}

fn cmd_lemma(cli: &Cli, alg: &Algebra, variant: u32, n: &str, maxlen: usize) -> Outcome {
    let variant = match variant {
        2 => LemmaVariant::Section2,
        3 => LemmaVariant::Section3,
        _ => return usage("lemma variant must be 2 or 3"),
    };
    let Some(n_range) = Range::parse(n) else {
        return usage(&format!("invalid n range `{n}`"));
    };
    match verify::run_lemma_sweep(variant, n_range, maxlen, alg.max_index(), cli.parallel) {
        Ok(checks) => {
            let mismatches = checks.iter().filter(|c| !c.matches()).count();
            let stdout = match cli.format {
                Format::Text | Format::Latex => {
                    let mut text = String::new();
                    for c in &checks {
                        let _ = writeln!(
                            text,
                            "n={} js={:?}: computed {} predicted {} -> {}",
                            c.n,
                            c.js,
                            c.computed,
                            c.predicted,
                            if c.matches() { "match" } else { "MISMATCH" }
                        );
                    }
                    let _ = writeln!(
                        text,
                        "{}: {} sequences, {} mismatches",
                        if mismatches == 0 { "VERIFIED" } else { "FAILED" },
                        checks.len(),
                        mismatches
                    );
                    text
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "variant": variant.to_string(),
                        "cases": checks.iter().map(|c| json!({
                            "n": c.n,
                            "js": c.js,
                            "computed": c.computed.to_string(),
                            "predicted": c.predicted.to_string(),
                            "match": c.matches(),
                        })).collect::<Vec<_>>(),
                        "mismatches": mismatches,
                        "verified": mismatches == 0,
                    })
                ),
            };
            Outcome {
                code: i32::from(mismatches != 0),
                stdout,
            }
        }
        Err(e) => fail(&e),
    }
}

/// On-disk memo of basis products; purely a speed device.
fn cache_file(dir: &Path) -> PathBuf {
    dir.join("products.json")
}

fn load_cache(alg: &Algebra, dir: &Path) {
    let Ok(data) = std::fs::read_to_string(cache_file(dir)) else {
        return;
    };
    let Ok(parsed) = serde_json::from_str::<Json>(&data) else {
        return;
    };
    let Some(items) = parsed.as_array() else {
        return;
    };
    let mut products = Vec::new();
    for item in items {
        let Some((a, b, v)) = decode_cache_entry(item) else {
            return; // corrupt cache: ignore entirely
        };
        products.push((a, b, v));
    }
    alg.import_products(products);
}

fn save_cache(alg: &Algebra, dir: &Path) {
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let items: Vec<Json> = alg
        .export_products()
        .iter()
        .map(|(a, b, v)| {
            json!({
                "a": format::milnor_json(&SteenrodElement::from_monomial(a.clone())),
                "b": format::milnor_json(&SteenrodElement::from_monomial(b.clone())),
                "value": format::milnor_json(v),
            })
        })
        .collect();
    let _ = std::fs::write(cache_file(dir), Json::Array(items).to_string());
}

fn decode_cache_entry(item: &Json) -> Option<(MilnorMonomial, MilnorMonomial, SteenrodElement)> {
    let a = decode_milnor(&item["a"])?;
    let b = decode_milnor(&item["b"])?;
    let v = decode_milnor(&item["value"])?;
    let single = |x: &SteenrodElement| -> Option<MilnorMonomial> {
        let mut it = x.terms();
        let (m, h) = it.next()?;
        (h.is_one() && it.next().is_none()).then(|| m.clone())
    };
    Some((single(&a)?, single(&b)?, v))
}

/// Decode the milnor JSON schema back into an element.
pub fn decode_milnor(j: &Json) -> Option<SteenrodElement> {
    if j["basis"] != "milnor" {
        return None;
    }
    let mut out = SteenrodElement::zero();
    for term in j["terms"].as_array()? {
        let e: Vec<u32> = term["E"]
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()?;
        let r: Vec<u32> = term["R"]
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|x| x as u32))
            .collect::<Option<_>>()?;
        let mut coeff = HScalar::zero();
        for pair in term["coeff"].as_array()? {
            let a = pair[0].as_u64()? as u32;
            let b = pair[1].as_u64()? as u32;
            coeff.toggle(a, b);
        }
        out.add_term(MilnorMonomial::new(&e, &r).ok()?, coeff);
    }
    Some(out)
}
