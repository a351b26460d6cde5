mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use torimult::corpus::{corpus, Family, Instance};
use torimult::error::Error;
use torimult::exact::{format_rational, parse_rational, LatticeVector, Rational};
use torimult::ideal::{monomial, newton_polyhedron};
use torimult::multiplier::{
    jumping_numbers, lct, multiplier_ideal, multiplier_ideal_membership, multiplier_module,
    IdealResult,
};
use torimult::test_ideal::{test_ideal, test_ideal_membership};
use torimult::toric::{make_pair, omega_generators, q_gorenstein_weight, Pair};
use torimult::verify::{check_instance, Oracle};

use problem::{Problem, ProblemFile};
use report::Document;

/// A failure with its exit code: 1 mismatch, 2 parse or usage, 3 validation.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: String) -> Self {
        CliError { code: 2, message }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) => 2,
            Error::Internal(_) => 1,
            _ => 3,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "torimult",
    version,
    about = "Multiplier ideals, test ideals and thresholds of monomial ideals on affine toric varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Ideal,
    Module,
    Test,
}

#[derive(clap::Args)]
struct Input {
    /// Problem file (JSON)
    file: PathBuf,
    /// Exponent, overriding "c" in the file
    #[arg(long)]
    c: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Cone, semigroup and canonical-module data
    Info { file: PathBuf },
    /// Generators of the multiplier ideal of the pair
    MultIdeal(Input),
    /// Generators of the multiplier module
    MultModule(Input),
    /// Generators of the test ideal
    TestIdeal(Input),
    /// Log canonical threshold of the pair
    Lct { file: PathBuf },
    /// Jumping numbers in (0, max]
    Jumps {
        file: PathBuf,
        #[arg(long)]
        max: String,
    },
    /// Whether one monomial lies in an ideal or module
    Membership {
        #[command(flatten)]
        input: Input,
        /// Exponent vector, comma separated
        #[arg(long, allow_hyphen_values = true)]
        monomial: String,
        #[arg(long, value_enum, default_value = "ideal")]
        of: Target,
    },
    /// Compare the engines against an independent oracle
    Verify {
        /// Problem file; omit together with --corpus
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        oracle: String,
    },
}

/// Output of a command: the document, a one-paragraph summary, and
/// whether verification found a mismatch.
struct Outcome {
    doc: Document,
    summary: String,
    mismatch: bool,
}

impl Outcome {
    fn ok(doc: Document, summary: String) -> Self {
        Outcome {
            doc,
            summary,
            mismatch: false,
        }
    }
}

fn load(path: &PathBuf, c: Option<&str>) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let mut file = ProblemFile::from_json(&text)?;
    if let Some(c) = c {
        file.c = Some(c.to_string());
    }
    file.load()
}

fn echo(p: &Problem) -> Value {
    serde_json::to_value(&p.file).expect("problem files serialize")
}

fn pair(p: &Problem) -> Result<Pair, CliError> {
    Ok(make_pair(p.variety.clone(), p.delta_or_zero())?)
}

fn show(vs: &[LatticeVector]) -> String {
    vs.iter().map(monomial).collect::<Vec<_>>().join(", ")
}

fn diagnostics(p: &Problem, r: &IdealResult) -> Value {
    json!({
        "weight": report::rational_vector(&r.weight_used),
        "newton_facets": report::facets(&newton_polyhedron(&p.ideal)),
        "q_gorenstein": q_gorenstein_weight(&p.variety).is_some(),
    })
}

fn ideal_document(op: &str, p: &Problem, r: &IdealResult) -> Document {
    Document::new(op, echo(p))
        .set("c", report::rational(&r.c))
        .set("generators", report::generators(&r.generators))
        .set("diagnostics", diagnostics(p, r))
}

fn info(p: &Problem) -> Result<Outcome, CliError> {
    let x = &p.variety;
    let qg = q_gorenstein_weight(x);
    let doc = Document::new("info", echo(p))
        .set("rays", report::vectors(x.rays()))
        .set("rays_primitivized", json!(x.was_primitivized()))
        .set("dual_cone_rays", report::vectors(x.sigma_dual().rays()))
        .set(
            "dual_hilbert_basis",
            report::vectors(x.dual_hilbert_basis().elements()),
        )
        .set("smooth", json!(x.is_smooth()))
        .set(
            "q_gorenstein",
            match &qg {
                Some((w, r)) => {
                    json!({ "weight": report::rational_vector(w), "index": report::int(r) })
                }
                None => Value::Null,
            },
        )
        .set(
            "omega_generators",
            report::generators(&omega_generators(x)?),
        )
        .set("ideal_generators", report::generators(p.ideal.exponents()))
        .set(
            "newton_facets",
            report::facets(&newton_polyhedron(&p.ideal)),
        );
    let summary = format!(
        "rank {}, {} rays, smooth {}, {}; dual Hilbert basis has {} elements",
        x.rank(),
        x.rays().len(),
        x.is_smooth(),
        match &qg {
            Some((w, r)) => format!("ℚ-Gorenstein with w_0 = {w} and index {r}"),
            None => "not ℚ-Gorenstein".into(),
        },
        x.dual_hilbert_basis().elements().len()
    );
    Ok(Outcome::ok(doc, summary))
}

fn mult_ideal(p: &Problem) -> Result<Outcome, CliError> {
    let c = p.require_c()?;
    let r = multiplier_ideal(&pair(p)?, &p.ideal, c)?;
    let summary = format!("𝒥 at c = {}: {}", format_rational(c), show(&r.generators));
    Ok(Outcome::ok(ideal_document("mult-ideal", p, &r), summary))
}

fn mult_module(p: &Problem) -> Result<Outcome, CliError> {
    p.forbid_delta("mult-module")?;
    let c = p.require_c()?;
    let r = multiplier_module(&p.variety, &p.ideal, c)?;
    let summary = format!("𝒥_ω at c = {}: {}", format_rational(c), show(&r.generators));
    Ok(Outcome::ok(ideal_document("mult-module", p, &r), summary))
}

fn cmd_test_ideal(p: &Problem) -> Result<Outcome, CliError> {
    p.forbid_delta("test-ideal")?;
    let c = p.require_c()?;
    let r = test_ideal(&p.variety, &p.ideal, c)?;
    let mut doc = ideal_document("test-ideal", p, &r);
    let mut summary = format!("τ at c = {}: {}", format_rational(c), show(&r.generators));
    let mut mismatch = false;
    if q_gorenstein_weight(&p.variety).is_some() {
        let j = multiplier_ideal(&pair(p)?, &p.ideal, c)?;
        let note = if j.generators == r.generators {
            "Q-Gorenstein: agrees with multiplier ideal".to_string()
        } else {
            mismatch = true;
            format!(
                "Q-Gorenstein: DISAGREES with multiplier ideal {}",
                show(&j.generators)
            )
        };
        summary = format!("{summary}\n{note}");
        doc = doc.set("note", json!(note));
    }
    Ok(Outcome {
        doc,
        summary,
        mismatch,
    })
}

fn cmd_lct(p: &Problem) -> Result<Outcome, CliError> {
    let l = lct(&pair(p)?, &p.ideal);
    let doc = Document::new("lct", echo(p)).set("lct", json!(l.to_string()));
    Ok(Outcome::ok(doc, format!("lct = {l}")))
}

fn jumps(p: &Problem, max: &str) -> Result<Outcome, CliError> {
    let c_max = parse_rational(max)?;
    if c_max <= Rational::from_integer(0.into()) {
        return Err(Error::NonPositive(c_max).into());
    }
    let r = jumping_numbers(&pair(p)?, &p.ideal, &c_max)?;
    let values: Vec<String> = r.jump_values().iter().map(format_rational).collect();
    let doc = Document::new("jumps", echo(p))
        .set("max", report::rational(&r.c_max))
        .set("jumps", json!(values))
        .set("initial", report::generators(&r.initial))
        .set(
            "ideals",
            Value::Array(
                r.jumps
                    .iter()
                    .map(|(c, g)| json!({ "c": report::rational(c), "generators": report::generators(g) }))
                    .collect(),
            ),
        )
        .set("candidates", Value::Array(r.candidates.iter().map(report::rational).collect()))
        .set("rejected", Value::Array(r.rejected().iter().map(report::rational).collect()));
    let summary = format!(
        "jumping numbers in (0, {}]: {{{}}}; {} candidate(s) tested",
        format_rational(&r.c_max),
        values.join(", "),
        r.candidates.len()
    );
    Ok(Outcome::ok(doc, summary))
}

fn parse_monomial(s: &str, rank: usize) -> Result<LatticeVector, CliError> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            CliError::parse(format!(
                "--monomial must be comma-separated integers, got {s:?}"
            ))
        })?;
    if coords.len() != rank {
        return Err(CliError::parse(format!(
            "--monomial has {} entries, expected {rank}",
            coords.len()
        )));
    }
    Ok(LatticeVector::from_i64s(&coords))
}

fn membership(p: &Problem, m: &str, of: Target) -> Result<Outcome, CliError> {
    let m = parse_monomial(m, p.variety.rank())?;
    let c = p.require_c()?;
    let mut doc = Document::new("membership", echo(p)).set("monomial", report::vector(&m));
    let (name, member) = match of {
        Target::Ideal => (
            "multiplier ideal",
            multiplier_ideal_membership(&pair(p)?, &p.ideal, c, &m)?,
        ),
        Target::Module => {
            p.forbid_delta("membership --of module")?;
            let r = multiplier_module(&p.variety, &p.ideal, c)?;
            (
                "multiplier module",
                p.variety.in_semigroup(&m) && r.defining_system.contains_lattice(&m),
            )
        }
        Target::Test => {
            p.forbid_delta("membership --of test")?;
            let w = test_ideal_membership(&p.variety, &p.ideal, c, &m)?;
            if let Some(w) = &w.witness {
                doc = doc.set("witness_weight", report::rational_vector(w));
            }
            ("test ideal", w.member)
        }
    };
    let doc = doc.set("of", json!(name)).set("member", json!(member));
    let summary = format!(
        "{} {} in the {name} at c = {}",
        monomial(&m),
        if member { "is" } else { "is not" },
        format_rational(c)
    );
    Ok(Outcome::ok(doc, summary))
}

fn verify(
    file: Option<&PathBuf>,
    use_corpus: bool,
    seed: u64,
    count: usize,
    oracle: &str,
) -> Result<Outcome, CliError> {
    let oracle: Oracle = oracle.parse()?;
    let (input, instances): (Value, Vec<Instance>) = match (file, use_corpus) {
        (Some(_), true) => {
            return Err(CliError::parse(
                "give either a file or --corpus, not both".into(),
            ))
        }
        (None, false) => {
            return Err(CliError::parse(
                "verify needs a problem file or --corpus".into(),
            ))
        }
        (None, true) => (
            json!({ "corpus": family_name(oracle.family()), "seed": seed, "count": count }),
            corpus(oracle.family(), seed, count),
        ),
        (Some(path), false) => {
            let p = load(path, None)?;
            (echo(&p), vec![p.instance()?])
        }
    };
    let mut failures = Vec::new();
    for (i, inst) in instances.iter().enumerate() {
        let found =
            check_instance(oracle, inst, seed.wrapping_add(i as u64)).map_err(|e| match e {
                Error::Precondition(m) => {
                    CliError::parse(format!("wrong oracle for this instance: {m}"))
                }
                other => other.into(),
            })?;
        for d in found {
            failures.push(json!({
                "instance": inst.to_string(),
                "problem": serde_json::to_value(ProblemFile::from_instance(inst)).expect("serializable"),
                "discrepancy": d,
            }));
        }
    }
    let summary = if failures.is_empty() {
        format!("{oracle}: {} instance(s) agree", instances.len())
    } else {
        let lines: Vec<String> = failures
            .iter()
            .map(|f| {
                format!(
                    "  {} :: {}",
                    f["instance"].as_str().unwrap_or(""),
                    f["discrepancy"].as_str().unwrap_or("")
                )
            })
            .collect();
        format!(
            "{oracle}: {} discrepancy(ies)\n{}",
            failures.len(),
            lines.join("\n")
        )
    };
    let doc = Document::new("verify", input)
        .set("oracle", json!(oracle.name()))
        .set("checked", json!(instances.len()))
        .set("passed", json!(failures.is_empty()))
        .set("failures", Value::Array(failures.clone()));
    Ok(Outcome {
        doc,
        summary,
        mismatch: !failures.is_empty(),
    })
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Plane => "plane",
        Family::AffineSpace => "affine-space",
        Family::Simplicial => "simplicial",
    }
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Info { file } => info(&load(&file, None)?),
        Command::MultIdeal(i) => mult_ideal(&load(&i.file, i.c.as_deref())?),
        Command::MultModule(i) => mult_module(&load(&i.file, i.c.as_deref())?),
        Command::TestIdeal(i) => cmd_test_ideal(&load(&i.file, i.c.as_deref())?),
        Command::Lct { file } => cmd_lct(&load(&file, None)?),
        Command::Jumps { file, max } => jumps(&load(&file, None)?, &max),
        Command::Membership {
            input,
            monomial,
            of,
        } => membership(&load(&input.file, input.c.as_deref())?, &monomial, of),
        Command::Verify {
            file,
            corpus,
            seed,
            count,
            oracle,
        } => verify(file.as_ref(), corpus, seed, count, &oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(out) => {
            println!("{}", out.doc.render());
            eprintln!("{}", out.summary);
            ExitCode::from(if out.mismatch { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
