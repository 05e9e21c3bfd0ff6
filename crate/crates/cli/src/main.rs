//! `pmeasure`: command-line front end for exact partial measures.
//!
//! Exit codes: 0 success, 1 I/O or schema error, 2 domain error (or fuzz
//! failures), 64 usage error.

mod input;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use pmeasure::example3::hahn_failure_check;
use pmeasure::json::{
    InstanceDesc, InstanceFile, MaximalDesc, MeasureDesc, PartialDesc, ProbabilityDesc, RandomVariableDesc, SpaceDesc,
};
use pmeasure::laws::run_suite;
use pmeasure::random::FuzzConfig;
use pmeasure::{ess_sup, positive_split, rn_derivative, ExtReal, MeasurableSet};

use input::{decode, load, read_object, BANNER_FIELD};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Schema(String),
    Domain(pmeasure::Error),
}

impl From<pmeasure::Error> for CliError {
    fn from(e: pmeasure::Error) -> Self {
        match e {
            pmeasure::Error::Parse(detail) => CliError::Schema(detail),
            other => CliError::Domain(other),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Schema(_) => 1,
            CliError::Domain(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (code, detail) = match self {
            CliError::Io(d) => ("Io", d.clone()),
            CliError::Schema(d) => ("Schema", d.clone()),
            CliError::Domain(e) => (e.code(), e.to_string()),
        };
        json!({"error": {"code": code, "detail": detail}})
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "pmeasure",
    version,
    about = "Exact partial measures on finite sigma-algebras"
)]
struct Cli {
    /// Omit the "generator" field from output objects.
    #[arg(long, global = true)]
    no_banner: bool,

    /// Write the result to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

/// `atom=value,...` pairs for `maximalize --fill`.
#[derive(Clone, Debug)]
struct Fill(Vec<(String, ExtReal)>);

fn parse_fill(s: &str) -> Result<Fill, String> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (atom, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected atom=value, got {pair:?}"))?;
            let value: ExtReal = value.trim().parse().map_err(|e| format!("{value:?}: {e}"))?;
            Ok((atom.trim().to_owned(), value))
        })
        .collect::<Result<_, _>>()
        .map(Fill)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an instance file and print its normalized form.
    Validate { file: PathBuf },
    /// Extend a partial measure to a maximal one.
    Maximalize {
        file: PathBuf,
        /// Values for undetermined atoms, e.g. `c=2,d=-inf`; others get 0.
        #[arg(long, value_parser = parse_fill)]
        fill: Vec<Fill>,
    },
    /// Jordan-type decomposition of a maximal partial measure.
    Jordan { file: PathBuf },
    /// Hahn split of a measure or maximal partial measure; with a
    /// probability, the split `ess sup F⁺` of an absolutely continuous one.
    Hahn { file: PathBuf, prob: Option<PathBuf> },
    /// Witnesses `A′ ∈ F⁺`, `A″ ∈ F⁻` inside a set outside the domain.
    Corollary1 {
        file: PathBuf,
        /// Comma-joined points of the set.
        #[arg(long)]
        set: String,
    },
    /// The partial measure `A ↦ E[ξ; A]` of a random variable.
    Musxi { rv: PathBuf, prob: PathBuf },
    /// Radon-Nikodym density of a maximal partial measure.
    Rn { maximal: PathBuf, prob: PathBuf },
    /// Essential supremum of a family of sets.
    Esssup {
        prob: PathBuf,
        /// A member of the family (repeatable).
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Symbolic check that the infinite counterexample admits no Hahn split.
    Example3 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Run every property on seeded random instances.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 6)]
        max_atoms: usize,
        /// Worker threads; results do not depend on this.
        #[arg(long)]
        threads: Option<usize>,
        /// Where counterexample files go when a property fails.
        #[arg(long, default_value = "counterexamples")]
        counterexample_dir: PathBuf,
    },
}

fn points(set: &MeasurableSet) -> Value {
    json!(set.points())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("descriptions serialize")
}

/// `(outcome, exit code)`; fuzz failures still print a report.
fn run(command: Command) -> CliResult<(Value, u8)> {
    let value = match command {
        Command::Validate { file } => validate(&file)?,
        Command::Maximalize { file, fill } => {
            let pm = load::<PartialDesc>(&file, "partial")?.build()?;
            let mut by_atom = BTreeMap::new();
            for (label, v) in fill.into_iter().flat_map(|f| f.0) {
                by_atom.insert(pm.space().atom_by_label(&label)?, v);
            }
            let mx = pm.maximalize(&by_atom)?;
            to_value(&InstanceFile::Maximal((&mx).into()))
        }
        Command::Jordan { file } => {
            let mu = load::<MaximalDesc>(&file, "maximal")?.build()?;
            let j = mu.jordan_decompose()?;
            let space = mu.space();
            let attaining = |sets: &[MeasurableSet]| -> Map<String, Value> {
                sets.iter()
                    .enumerate()
                    .map(|(a, s)| (space.atom_label(a).to_owned(), points(s)))
                    .collect()
            };
            json!({
                "mu_plus": MeasureDesc::from(j.mu_plus.as_measure()),
                "mu_minus": MeasureDesc::from(j.mu_minus.as_measure()),
                "attaining_sets": {
                    "plus": attaining(&j.attaining_plus),
                    "minus": attaining(&j.attaining_minus),
                },
            })
        }
        Command::Hahn { file, prob } => {
            let (kind, obj) = read_object(&file)?;
            let is_measure = kind.as_deref() == Some("measure") || (kind.is_none() && obj.contains_key("values"));
            let (p, n) = if is_measure {
                if prob.is_some() {
                    return Err(CliError::Schema(
                        "a probability applies only to maximal partial measures".into(),
                    ));
                }
                decode::<MeasureDesc>(&file, obj)?.build()?.hahn_decomposition()
            } else {
                if let Some(k) = kind.filter(|k| k != "maximal") {
                    return Err(CliError::Schema(format!(
                        "{}: expected measure or maximal, found {k:?}",
                        file.display()
                    )));
                }
                let mu = decode::<MaximalDesc>(&file, obj)?.build()?;
                match prob {
                    None => mu.hahn_partial(),
                    Some(pf) => {
                        let prob = load::<ProbabilityDesc>(&pf, "probability")?.build()?;
                        positive_split(&mu, &prob)?
                    }
                }
            };
            json!({"positive": points(&p), "negative": points(&n)})
        }
        Command::Corollary1 { file, set } => {
            let mu = load::<MaximalDesc>(&file, "maximal")?.build()?;
            let a = mu.space().parse_set_key(&set)?;
            let (plus, minus) = mu.corollary1_witness(&a)?;
            json!({
                "set": points(&a),
                "a_plus": points(&plus),
                "a_minus": points(&minus),
                "value_plus": mu.evaluate(&plus)?,
                "value_minus": mu.evaluate(&minus)?,
            })
        }
        Command::Musxi { rv, prob } => {
            let xi = load::<RandomVariableDesc>(&rv, "randomvariable")?.build()?;
            let prob = load::<ProbabilityDesc>(&prob, "probability")?.build()?;
            let mu = xi.mu_xi(&prob)?;
            to_value(&InstanceFile::Maximal((&mu).into()))
        }
        Command::Rn { maximal, prob } => {
            let mu = load::<MaximalDesc>(&maximal, "maximal")?.build()?;
            let prob = load::<ProbabilityDesc>(&prob, "probability")?.build()?;
            let xi = rn_derivative(&mu, &prob)?;
            to_value(&InstanceFile::RandomVariable((&xi).into()))
        }
        Command::Esssup { prob, sets } => {
            let prob = load::<ProbabilityDesc>(&prob, "probability")?.build()?;
            let family = sets
                .iter()
                .map(|k| prob.space().parse_set_key(k))
                .collect::<pmeasure::Result<Vec<_>>>()?;
            json!({"ess_sup": points(&ess_sup(&family, &prob)?)})
        }
        Command::Example3 { seed, trials } => to_value(&hahn_failure_check(seed, trials)),
        Command::Fuzz {
            seed,
            trials,
            max_atoms,
            threads,
            counterexample_dir,
        } => return fuzz(seed, trials, max_atoms, threads, &counterexample_dir),
    };
    Ok((value, 0))
}

fn validate(file: &Path) -> CliResult<Value> {
    let (kind, obj) = read_object(file)?;
    let kind = kind.unwrap_or_else(|| "partial".to_owned());
    let mut report = Map::new();
    report.insert("valid".into(), json!(true));
    report.insert("kind".into(), json!(kind));
    let instance = match kind.as_str() {
        "space" => InstanceFile::Space((&decode::<SpaceDesc>(file, obj)?.build()?).into()),
        "measure" => InstanceFile::Measure((&decode::<MeasureDesc>(file, obj)?.build()?).into()),
        "partial" => {
            let pm = decode::<PartialDesc>(file, obj)?.build()?;
            report.insert("maximal".into(), json!(pm.is_maximal()));
            report.insert("domain_size".into(), json!(pm.domain()?.len()));
            InstanceFile::Partial((&pm).into())
        }
        "maximal" => InstanceFile::Maximal((&decode::<MaximalDesc>(file, obj)?.build()?).into()),
        "probability" => InstanceFile::Probability((&decode::<ProbabilityDesc>(file, obj)?.build()?).into()),
        "randomvariable" => InstanceFile::RandomVariable((&decode::<RandomVariableDesc>(file, obj)?.build()?).into()),
        other => return Err(CliError::Schema(format!("{}: unknown kind {other:?}", file.display()))),
    };
    report.insert("instance".into(), to_value(&instance));
    Ok(Value::Object(report))
}

fn fuzz(seed: u64, trials: u64, max_atoms: usize, threads: Option<usize>, dir: &Path) -> CliResult<(Value, u8)> {
    let cfg = FuzzConfig {
        seed,
        trials,
        max_atoms,
        ..FuzzConfig::default()
    };
    let threads = threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run_suite(&cfg, threads)?;
    let mut files = Vec::new();
    if !report.failures.is_empty() {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    for f in &report.failures {
        let path = dir.join(format!("seed{seed}-trial{}-{}.json", f.trial, f.law));
        let body = json!({
            "seed": seed,
            "trial": f.trial,
            "max_atoms": max_atoms,
            "law": f.law,
            "detail": f.detail,
            "instance": InstanceDesc::from(&f.instance),
        });
        write_json(Some(&path), &body)?;
        files.push(path.display().to_string());
    }
    let properties: Vec<Value> = report
        .laws
        .iter()
        .map(|l| json!({"name": l.name, "checked": l.checked, "failed": l.failed}))
        .collect();
    let out = json!({
        "seed": seed,
        "trials": report.trials,
        "max_atoms": max_atoms,
        "failures": report.failures.len(),
        "properties": properties,
        "counterexamples": files,
    });
    let code = if report.failures.is_empty() { 0 } else { 2 };
    Ok((out, code))
}

fn write_json(path: Option<&Path>, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let (value, code) = match run(cli.command) {
        Ok((mut value, code)) => {
            if !cli.no_banner {
                if let Value::Object(obj) = &mut value {
                    obj.insert(
                        BANNER_FIELD.into(),
                        json!(format!("pmeasure {}", env!("CARGO_PKG_VERSION"))),
                    );
                }
            }
            (value, code)
        }
        Err(e) => {
            let code = e.exit_code();
            return match write_json(None, &e.to_json()) {
                Ok(()) => ExitCode::from(code),
                Err(_) => ExitCode::from(1),
            };
        }
    };
    match write_json(cli.output.as_deref(), &value) {
        Ok(()) => ExitCode::from(code),
        Err(e) => {
            let _ = write_json(None, &e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
