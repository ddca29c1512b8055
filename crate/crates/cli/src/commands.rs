//! The `schext` subcommands. Each returns what to print and the exit code;
//! `main` only does the printing.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use schext::action::{point_action, to_semimodule, Semimodule};
use schext::cofib::{
    baer_sum, cohomology_monoid, crossed_product, extract_factor_system, orbit_minimum,
    ClassifyMode, CofibError, CohomologyMonoid, FACTOR_SYSTEM_BOUND,
};
use schext::direction::{df_by_coequalizer, df_by_semidirect, DirectionError};
use schext::extension::{fibre_isomorphism, ExtMorphism, Extension};
use schext::finmon::enumerate_monoids;

use crate::corpus::{
    build_corpus, Bounds, Corpus, DEFAULT_MAX_CARRIER, DEFAULT_MAX_ORDER, MAX_ORDER_LIMIT,
};
use crate::doc::{
    parse, parse_extension, parse_semimodule, CorpusDoc, ExtensionDoc, MonoidDoc, ParseError,
    PointDoc, SemimoduleDoc,
};
use crate::harness::{a4_report, run_all, Context};
use crate::report::{render_table, CorpusCounts, Report};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "schext",
    version,
    about = "Schreier extensions of monoids: checks and classifications"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every statement check over a corpus and report the verdicts.
    Verify(VerifyArgs),
    /// Classify the extensions with a given induced action, with their Baer sum table.
    H2(H2Args),
    /// Compute the direction point of an extension.
    Direction(DirectionArgs),
    /// Baer sum of two extensions in the same fibre.
    Baer(BaerArgs),
    /// Write one classification file per (M, K, action) triple.
    Census(CensusArgs),
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    /// Largest monoid order in the generated corpus.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    pub max_order: usize,
    /// Largest extension carrier in the generated corpus.
    #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
    pub max_carrier: usize,
    /// Write the JSON report here; the table then goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Check the extensions of a corpus document instead of generating one.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum H2Mode {
    Fs,
    Bf,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct H2Args {
    #[arg(long)]
    pub semimodule: PathBuf,
    #[arg(long, value_enum, default_value_t = H2Mode::Fs)]
    pub mode: H2Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionMethod {
    Coeq,
    Semidirect,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct DirectionArgs {
    #[arg(long)]
    pub ext: PathBuf,
    #[arg(long, value_enum, default_value_t = DirectionMethod::Coeq)]
    pub method: DirectionMethod,
}

#[derive(Debug, clap::Args)]
pub struct BaerArgs {
    #[arg(long)]
    pub ext1: PathBuf,
    #[arg(long)]
    pub ext2: PathBuf,
}

#[derive(Debug, clap::Args)]
pub struct CensusArgs {
    #[arg(long, default_value_t = 3)]
    pub max_order: usize,
    /// Largest |K| * |M| classified.
    #[arg(long, default_value_t = DEFAULT_MAX_CARRIER)]
    pub max_carrier: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// What a command prints, and its exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn json(v: &Value, code: u8) -> Self {
        Outcome {
            stdout: line(v),
            stderr: String::new(),
            code,
        }
    }
}

/// Command output is one JSON line, like the documents.
fn line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Verify(a) => verify(a),
        Command::H2(a) => h2(a),
        Command::Direction(a) => direction(a),
        Command::Baer(a) => baer(a),
        Command::Census(a) => census(a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    parse(&read(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

fn cofib_err(e: CofibError) -> CliError {
    match e {
        CofibError::BoundExceeded { .. } => CliError::BoundExceeded(e.to_string()),
        CofibError::NotWellDefined(_) => CliError::Verification(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

fn direction_err(e: DirectionError) -> CliError {
    match e {
        DirectionError::NotCommutative
        | DirectionError::NotCancellative
        | DirectionError::Extension(_)
        | DirectionError::Mismatch => CliError::Input(e.to_string()),
        _ => CliError::Verification(e.to_string()),
    }
}

fn morphism_json(m: &ExtMorphism) -> Value {
    json!({ "alpha1": m.alpha1().map(), "alpha2": m.alpha2().map() })
}

fn ext_json(e: &Extension) -> Value {
    serde_json::to_value(ExtensionDoc::with_schreier(e)).expect("serializable")
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs)
        .build()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    pool.install(|| verify_in_pool(args))
}

fn verify_in_pool(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (bounds, corpus) = match &args.corpus {
        Some(path) => {
            let doc: CorpusDoc = load(path, parse)?;
            let extensions = doc.to_extensions().map_err(|source| CliError::Parse {
                path: path.display().to_string(),
                source,
            })?;
            (None, Corpus::from_extensions(extensions))
        }
        None => {
            let b = Bounds {
                max_order: args.max_order,
                max_carrier: args.max_carrier,
            };
            (Some(b), build_corpus(b)?)
        }
    };
    let ctx = Context::new(&corpus);
    let verdicts = run_all(&ctx);
    let a4 = a4_report(&ctx);
    let report = Report::new(bounds, CorpusCounts::of(&corpus, &ctx), &verdicts, &a4);
    let elapsed: Vec<_> = verdicts.iter().map(|v| v.elapsed).collect();
    let table = render_table(&report, &elapsed, start.elapsed());
    let json = report.to_json();
    let code = if report.passed { 0 } else { 1 };
    Ok(match &args.out {
        Some(path) => {
            write(path, &json)?;
            Outcome {
                stdout: table,
                stderr: String::new(),
                code,
            }
        }
        None => Outcome {
            stdout: json,
            stderr: table,
            code,
        },
    })
}

fn h2_json(cm: &CohomologyMonoid) -> Result<Value, CliError> {
    let witnesses: Vec<Value> = cm.extensions.iter().map(ext_json).collect();
    let factor_systems: Vec<_> = cm.classification.classes.iter().map(|g| g.rows()).collect();
    Ok(json!({
        "classes": cm.len(),
        "table": cm.table,
        "unit": cm.unit,
        "sizes": cm.classification.sizes,
        "factor_systems": factor_systems,
        "witnesses": witnesses,
    }))
}

pub fn h2(args: &H2Args) -> Result<Outcome, CliError> {
    let s = load(&args.semimodule, parse_semimodule)?;
    let classify = |mode| cohomology_monoid(&s, mode).map_err(cofib_err);
    match args.mode {
        H2Mode::Fs => Ok(Outcome::json(
            &h2_json(&classify(ClassifyMode::FactorSystem)?)?,
            0,
        )),
        H2Mode::Bf => Ok(Outcome::json(
            &h2_json(&classify(ClassifyMode::BruteForce)?)?,
            0,
        )),
        H2Mode::Both => {
            let fs = classify(ClassifyMode::FactorSystem)?;
            let bf = classify(ClassifyMode::BruteForce)?;
            let agree = fs.classification.classes == bf.classification.classes
                && fs.table == bf.table
                && fs.unit == bf.unit;
            let mut v = h2_json(&fs)?;
            v["agree"] = json!(agree);
            if !agree {
                v["brute_force"] = h2_json(&bf)?;
            }
            let mut out = Outcome::json(&v, if agree { 0 } else { 1 });
            if !agree {
                out.stderr = "factor-system and brute-force classifications disagree\n".into();
            }
            Ok(out)
        }
    }
}

pub fn direction(args: &DirectionArgs) -> Result<Outcome, CliError> {
    let e = load(&args.ext, parse_extension)?;
    let action = to_semimodule(&e).map_err(|err| CliError::Input(err.to_string()))?;
    let action_doc = SemimoduleDoc::from_semimodule(&action);
    match args.method {
        DirectionMethod::Semidirect => {
            let p = df_by_semidirect(&e).map_err(direction_err)?;
            Ok(Outcome::json(
                &json!({
                    "method": "semidirect",
                    "order": p.carrier().order(),
                    "point": PointDoc::from_point(&p),
                    "action": action_doc,
                }),
                0,
            ))
        }
        DirectionMethod::Coeq | DirectionMethod::Both => {
            let b = df_by_coequalizer(&e).map_err(direction_err)?;
            let p = b.point();
            let coincides =
                point_action(p).map_err(|err| CliError::Verification(err.to_string()))? == action;
            let mut v = json!({
                "method": "coeq",
                "order": p.carrier().order(),
                "point": PointDoc::from_point(p),
                "action": action_doc,
                "action_coincides": coincides,
            });
            let mut code = if coincides { 0 } else { 1 };
            if args.method == DirectionMethod::Both {
                let sd = df_by_semidirect(&e).map_err(direction_err)?;
                v["method"] = json!("both");
                v["semidirect"] = json!(PointDoc::from_point(&sd));
                match b.iso_from_semidirect() {
                    Ok(iso) => {
                        v["iso"] =
                            json!({ "alpha1": iso.alpha1().map(), "alpha": iso.alpha().map() })
                    }
                    Err(err) => {
                        v["iso"] = Value::Null;
                        v["iso_error"] = json!(err.to_string());
                        code = 1;
                    }
                }
            }
            Ok(Outcome::json(&v, code))
        }
    }
}

pub fn baer(args: &BaerArgs) -> Result<Outcome, CliError> {
    let e1 = load(&args.ext1, parse_extension)?;
    let e2 = load(&args.ext2, parse_extension)?;
    let sum = baer_sum(&e1, &e2).map_err(cofib_err)?;
    let action: Semimodule = to_semimodule(&e1).map_err(|err| CliError::Input(err.to_string()))?;
    let same_fibre = to_semimodule(&sum).as_ref() == Ok(&action);
    let mut certificates = json!({
        "semimodule": SemimoduleDoc::from_semimodule(&action),
        "schreier": sum.is_schreier(),
        "same_fibre": same_fibre,
    });
    if let (Ok(g1), Ok(g2), Ok(g)) = (
        extract_factor_system(&e1),
        extract_factor_system(&e2),
        extract_factor_system(&sum),
    ) {
        let class = orbit_minimum(&g);
        let representative = crossed_product(&class).map_err(cofib_err)?;
        certificates["factor_systems"] = json!({
            "ext1": g1.rows(),
            "ext2": g2.rows(),
            "sum": g.rows(),
            "class": class.rows(),
        });
        certificates["class_witness"] =
            json!(fibre_isomorphism(&sum, &representative).map(|m| morphism_json(&m)));
        if let Ok(direct) = g1.add(&g2).and_then(|h| crossed_product(&h)) {
            certificates["sum_of_factor_systems"] =
                json!(fibre_isomorphism(&sum, &direct).map(|m| morphism_json(&m)));
        }
    }
    let ok = same_fibre
        && sum.is_schreier()
        && certificates
            .get("class_witness")
            .is_none_or(|w| !w.is_null())
        && certificates
            .get("sum_of_factor_systems")
            .is_none_or(|w| !w.is_null());
    Ok(Outcome::json(
        &json!({ "sum": ext_json(&sum), "certificates": certificates }),
        if ok { 0 } else { 1 },
    ))
}

pub fn census(args: &CensusArgs) -> Result<Outcome, CliError> {
    if args.max_order > MAX_ORDER_LIMIT {
        return Err(CliError::BoundExceeded(format!(
            "--max-order {} exceeds the limit {MAX_ORDER_LIMIT}",
            args.max_order
        )));
    }
    if args.max_carrier > FACTOR_SYSTEM_BOUND {
        return Err(CliError::BoundExceeded(format!(
            "--max-carrier {} exceeds the limit {FACTOR_SYSTEM_BOUND}",
            args.max_carrier
        )));
    }
    let mut monoids = Vec::new();
    for n in 1..=args.max_order {
        let found = enumerate_monoids(n).map_err(|e| CliError::Internal(e.to_string()))?;
        monoids.extend(
            found
                .into_iter()
                .enumerate()
                .map(|(i, m)| (format!("{n}.{i}"), m)),
        );
    }
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.display().to_string(),
        source,
    })?;
    let mut index = Vec::new();
    for (mname, m) in &monoids {
        for (kname, k) in monoids.iter().filter(|(_, k)| k.is_commutative()) {
            if k.order() * m.order() > args.max_carrier {
                continue;
            }
            for (eta, s) in schext::action::enumerate_semimodules(m, k)
                .iter()
                .enumerate()
            {
                let cm = cohomology_monoid(s, ClassifyMode::FactorSystem).map_err(cofib_err)?;
                let file = format!("M{mname}_K{kname}_eta{eta}.json");
                let doc = json!({
                    "base": MonoidDoc::from_monoid(m),
                    "kernel": MonoidDoc::from_monoid(k),
                    "semimodule": SemimoduleDoc::from_semimodule(s),
                    "classes": cm.len(),
                    "sizes": cm.classification.sizes,
                    "table": cm.table,
                    "unit": cm.unit,
                    "factor_systems": cm.classification.classes.iter().map(|g| g.rows()).collect::<Vec<_>>(),
                });
                write(&args.out.join(&file), &line(&doc))?;
                index.push(json!({
                    "file": file,
                    "base": mname,
                    "kernel": kname,
                    "eta": eta,
                    "classes": cm.len(),
                }));
            }
        }
    }
    let summary = json!({
        "max_order": args.max_order,
        "max_carrier": args.max_carrier,
        "files": index.len(),
        "triples": index,
    });
    write(&args.out.join("index.json"), &line(&summary))?;
    Ok(Outcome::json(&summary, 0))
}
