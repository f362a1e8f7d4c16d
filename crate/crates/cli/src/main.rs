use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use pontryagin::algebra::{parse_rational, Rational};
use pontryagin::charnum::{char_vector, spec_char_vector, Basis};
use pontryagin::json::{char_vector_to_json, lgenus_to_json};
use pontryagin::lsolver::{classify_combo, solve_l, Classification, Combo, GeneratorAssignment};
use pontryagin::manifolds::ManifoldSpec;
use pontryagin::oracle::oracle_l;
use pontryagin::partitions::Partition;
use pontryagin::verify::{run, VerifyOptions};
use pontryagin::Error;

#[derive(Parser)]
#[command(name = "pontryagin", version, about = "Exact Pontryagin numbers and the L-genus")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Generator constants as `j:c` pairs, e.g. `2:1,3:-3/2` (default 1).
    #[arg(long, global = true, value_name = "LIST")]
    c_assignment: Option<String>,

    /// Largest tensor-model basis allowed.
    #[arg(long, global = true, value_name = "N", default_value_t = pontryagin::cohomology::DEFAULT_BASIS_GUARD)]
    max_basis: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Solver,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of L_i.
    Lgenus {
        i: u32,
        #[arg(long, value_enum, default_value = "solver")]
        source: Source,
    },
    /// Pontryagin numbers of a manifold, e.g. `cp:m=1*xc:k=1,c=@c`.
    Charnum {
        #[arg(long)]
        manifold: String,
        /// A single partition such as `[2,1]`; all of them if omitted.
        #[arg(long)]
        partition: Option<String>,
    },
    /// Monomial-symmetric numbers s_J of a manifold.
    Svector {
        #[arg(long)]
        manifold: String,
    },
    /// Checks whether a manifold is a polynomial generator (s-number nonzero).
    Certify {
        #[arg(long)]
        manifold: String,
        /// Parameter values, e.g. `c=2,c1=-1`.
        #[arg(long, value_name = "LIST")]
        set: Option<String>,
    },
    /// Decides whether a combination such as `7*p[2]-p[1]^2` is a multiple
    /// of the signature.
    Classify {
        combo: String,
        #[arg(long)]
        i: Option<u32>,
    },
    /// Runs the self-check report.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_i: u32,
        #[arg(long, default_value_t = 8)]
        max_k: u32,
        #[arg(long, hide = true)]
        corrupt_relation: bool,
    },
}

enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::WeightMismatch { .. }
            | Error::MissingParameter(_)
            | Error::ZeroConstant(_)
            | Error::ZeroCombo
            | Error::Shape(_) => Failure::Usage(e.to_string()),
            Error::Singular { .. } | Error::NotConfluent(_) | Error::BasisGuard { .. } => {
                Failure::Math(e.to_string())
            }
        }
    }
}

fn parse_spec(s: &str) -> Result<ManifoldSpec, Failure> {
    Ok(s.parse::<ManifoldSpec>()?)
}

fn parse_values(s: &str) -> Result<BTreeMap<String, Rational>, Failure> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected `name=value`, got `{item}`")))?;
        out.insert(k.trim().to_string(), parse_rational(v.trim())?);
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let assignment = match &cli.c_assignment {
        Some(s) => GeneratorAssignment::parse(s)?,
        None => GeneratorAssignment::default(),
    };
    match &cli.command {
        Command::Lgenus { i, source } => {
            if *i == 0 {
                return Err(Failure::Usage("i must be at least 1".into()));
            }
            let solver = || solve_l(*i, &assignment);
            match source {
                Source::Solver => {
                    let l = solver()?;
                    println!("{}", if cli.json { lgenus_to_json(&l, None) } else { l.pretty() });
                }
                Source::Oracle => {
                    let l = oracle_l(*i)?;
                    println!("{}", if cli.json { lgenus_to_json(&l, Some("oracle")) } else { l.pretty() });
                }
                Source::Both => {
                    let s = solver()?;
                    let o = oracle_l(*i)?;
                    if cli.json {
                        println!("{}", lgenus_to_json(&s, None));
                        println!("{}", lgenus_to_json(&o, Some("oracle")));
                    } else {
                        println!("solver: {}", s.pretty());
                        println!("oracle: {}", o.pretty());
                        println!("{}", if s == o { "MATCH" } else { "MISMATCH" });
                    }
                    if s != o {
                        return Err(Failure::Math(format!("solver and oracle disagree for i = {i}")));
                    }
                }
            }
        }
        Command::Charnum { manifold, partition } => {
            let spec = parse_spec(manifold)?;
            let model = spec.build(cli.max_basis)?;
            let v = char_vector(&model, Basis::P);
            match partition {
                Some(p) => {
                    let j: Partition = p.parse()?;
                    let value = v.get(&j)?;
                    if cli.json {
                        println!("{}", json!({"partition": j.parts(), "value": value.to_string()}));
                    } else {
                        println!("p{j}({spec}) = {value}");
                    }
                }
                None if cli.json => println!("{}", char_vector_to_json(&v)),
                None => {
                    for (j, value) in &v.values {
                        println!("p{j} = {value}");
                    }
                }
            }
        }
        Command::Svector { manifold } => {
            let v = spec_char_vector(&parse_spec(manifold)?, Basis::S)?;
            if cli.json {
                println!("{}", char_vector_to_json(&v));
            } else {
                for (j, value) in &v.values {
                    println!("s{j} = {value}");
                }
            }
        }
        Command::Certify { manifold, set } => {
            let spec = parse_spec(manifold)?;
            if spec.dim4() == 0 {
                return Err(Failure::Usage("a point has no s-number".into()));
            }
            let v = spec_char_vector(&spec, Basis::S)?;
            let s = v.get(&Partition::single(spec.dim4()))?.clone();
            let values = match set {
                Some(text) => parse_values(text)?,
                None => BTreeMap::new(),
            };
            let specialized = s.substitute(&values);
            let generator = !specialized.is_zero();
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "dim4": spec.dim4(),
                        "s_number": s.to_string(),
                        "specialized": specialized.to_string(),
                        "generator": generator,
                    })
                );
            } else {
                println!("s_{}({spec}) = {s}", spec.dim4());
                if !values.is_empty() {
                    println!("at the given values: {specialized}");
                }
                if generator && !specialized.params().is_empty() {
                    println!("GENERATOR wherever {specialized} is nonzero");
                } else if generator {
                    println!("GENERATOR");
                } else {
                    println!("NOT A GENERATOR");
                }
            }
            if !generator {
                return Err(Failure::Math("s-number vanishes".into()));
            }
        }
        Command::Classify { combo, i } => {
            let f = match i {
                Some(i) => Combo::parse(combo, *i)?,
                None => Combo::parse_inferred(combo)?,
            };
            let result = classify_combo(&f)?;
            match (&result, cli.json) {
                (Classification::MultipleOfSignature { ratio }, true) => println!(
                    "{}",
                    json!({"i": f.i, "kind": "multiple", "ratio": ratio.to_string()})
                ),
                (Classification::MultipleOfSignature { ratio }, false) => {
                    println!("{f} = {ratio} * L_{}: a multiple of the signature", f.i)
                }
                (Classification::Witness { partition, value }, true) => println!(
                    "{}",
                    json!({"i": f.i, "kind": "witness", "partition": partition.parts(), "value": value.to_string()})
                ),
                (Classification::Witness { partition, value }, false) => println!(
                    "not a multiple of the signature: on alpha{partition} it equals {value}"
                ),
            }
        }
        Command::Verify { max_i, max_k, corrupt_relation } => {
            let opts = VerifyOptions {
                max_i: *max_i,
                max_k: *max_k,
                assignment: assignment.clone(),
                corrupt_relation: *corrupt_relation,
            };
            let report = run(&opts);
            if cli.json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail, "millis": c.millis}))
                    .collect();
                println!("{}", json!({"passed": report.all_passed(), "checks": checks}));
            } else {
                for c in &report.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        println!("{mark} {} ({} ms)", c.name, c.millis);
                    } else {
                        println!("{mark} {} ({} ms): {}", c.name, c.millis, c.detail);
                    }
                }
            }
            if !report.all_passed() {
                return Err(Failure::Math("verification failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
