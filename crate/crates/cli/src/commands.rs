//! Command dispatch. Every command returns a JSON report and an exit code:
//! `0` on success, `1` when the input is well formed but the operation fails
//! on it, `2` when the input cannot be read or parsed.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

use schreier::cohomology::{baer_sum, factor_set_of, h2, Setting};
use schreier::extension::{artin_glueing, check_extension, find_extension_isomorphism};
use schreier::iso::find_isomorphism_map;
use schreier::oracle::{self, census_check, enumerate_extensions, enumerate_monoids, CensusMode};
use schreier::relaxed::{
    extract_relaxed_action, extract_ws_factor_system, relaxed_crossed_product, relaxed_semidirect,
};
use schreier::strict::{crossed_product, extract_action, extract_factor_system, semidirect};
use schreier::{classify, Error, ExtensionDiagram, MonoidRef};

use crate::document::{self, load_document, Document, DocumentError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Classify,
    Semidirect,
    Crossed,
    RelaxedSemidirect,
    RelaxedCrossed,
    Extract,
    H2,
    BaerSum,
    Iso,
    Enumerate,
    CensusCheck,
    Glue,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    #[default]
    Strict,
    Relaxed,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub inputs: Vec<PathBuf>,
    pub mode: Mode,
    /// `(h, u_h)` overrides of the default generators.
    pub generators: Vec<(usize, usize)>,
    pub max_size: Option<usize>,
    pub split: bool,
}

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    Parse { location: String, message: String },
    Usage(String),
    Domain(Error),
    /// A check ran and reported failures; the report is still printed.
    Report(Value),
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Parse(p) => Failure::Parse { location: p.location, message: p.message },
            DocumentError::Invariant(e) => Failure::Domain(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

/// Runs a command and returns its exit code and report.
pub fn run(command: Command, opts: &Options) -> (i32, Value) {
    let name = command.to_possible_value().expect("no skipped variants").get_name().to_string();
    match dispatch(command, opts) {
        Ok(mut report) => {
            report["status"] = json!("ok");
            report["command"] = json!(name);
            (0, report)
        }
        Err(Failure::Report(mut report)) => {
            report["status"] = json!("failed");
            report["command"] = json!(name);
            (1, report)
        }
        Err(Failure::Domain(e)) => (1, domain_report(&name, &e)),
        Err(Failure::Parse { location, message }) => (
            2,
            json!({"status": "error", "command": name, "error": "ParseError", "location": location, "message": message}),
        ),
        Err(Failure::Usage(message)) => {
            (2, json!({"status": "error", "command": name, "error": "UsageError", "message": message}))
        }
    }
}

fn domain_report(command: &str, e: &Error) -> Value {
    let mut report = json!({
        "status": "error",
        "command": command,
        "error": error_name(e),
        "message": e.to_string(),
    });
    match e {
        Error::ActionInvalid(v)
        | Error::FactorSystemInvalid(v)
        | Error::InvalidRelaxation(v)
        | Error::InvalidRelaxedAction(v)
        | Error::InvalidWSFactorSystem(v) => {
            report["violation"] = serde_json::to_value(v).expect("violations serialize");
        }
        Error::NotAHom(v) => report["violation"] = serde_json::to_value(v).expect("violations serialize"),
        Error::NotAnExtension(v) => report["violation"] = json!(v.to_string()),
        _ => {}
    }
    report
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::Shape(_) => "Shape",
        Error::OutOfRange { .. } => "OutOfRange",
        Error::BadIdentity(_) => "BadIdentity",
        Error::NotAssociative { .. } => "NotAssociative",
        Error::NotAHom(_) => "NotAHom",
        Error::Incompatible(_) => "Incompatible",
        Error::NotAnExtension(_) => "NotAnExtension",
        Error::NotSchreierSplit => "NotSchreierSplit",
        Error::NotSchreier => "NotSchreier",
        Error::NotWeaklySchreierSplit => "NotWeaklySchreierSplit",
        Error::NotWeaklySchreier => "NotWeaklySchreier",
        Error::NotSpecial => "NotSpecial",
        Error::BadGeneratorChoice(_) => "BadGeneratorChoice",
        Error::ActionInvalid(_) => "ActionInvalid",
        Error::FactorSystemInvalid(_) => "FactorSystemInvalid",
        Error::InvalidRelaxation(_) => "InvalidRelaxation",
        Error::InvalidRelaxedAction(_) => "InvalidRelaxedAction",
        Error::InvalidWSFactorSystem(_) => "InvalidWSFactorSystem",
        Error::KernelNotAbelianGroup => "KernelNotAbelianGroup",
        Error::ActionsDiffer => "ActionsDiffer",
        Error::NotASemilattice => "NotASemilattice",
        Error::NotMeetPreserving(..) => "NotMeetPreserving",
        Error::OrderTooLarge(_) => "OrderTooLarge",
    }
}

fn dispatch(command: Command, opts: &Options) -> Outcome {
    match command {
        Command::Validate => validate(opts),
        Command::Classify => {
            let d = one_extension(opts)?;
            Ok(json!({"classification": classify(&d)?}))
        }
        Command::Semidirect => match one(opts)? {
            Document::Action(a) => built(&semidirect(&a)?),
            other => wrong_kind(&other, "action"),
        },
        Command::Crossed => match one(opts)? {
            Document::FactorSystem(fs) => built(&crossed_product(&fs)?),
            other => wrong_kind(&other, "factor_system"),
        },
        Command::RelaxedSemidirect => match one(opts)? {
            Document::RelaxedAction(a) => built(&relaxed_semidirect(&a)?),
            other => wrong_kind(&other, "relaxed_action"),
        },
        Command::RelaxedCrossed => match one(opts)? {
            Document::WsFactorSystem(fs) => built(&relaxed_crossed_product(&fs)?),
            other => wrong_kind(&other, "ws_factor_system"),
        },
        Command::Extract => extract(opts),
        Command::H2 => cohomology(opts),
        Command::BaerSum => {
            let [a, b] = inputs::<2>(opts)?;
            let (a, b) = (as_extension(a)?, as_extension(b)?);
            built(&baer_sum(&a, &b)?)
        }
        Command::Iso => iso(opts),
        Command::Enumerate => enumerate(opts),
        Command::CensusCheck => {
            let [n, h] = inputs::<2>(opts)?;
            let (n, h) = (as_monoid(n)?, as_monoid(h)?);
            check_oracle_order(&n)?;
            check_oracle_order(&h)?;
            let report = census_check(&n, &h);
            let passed = report.passed();
            let value = json!({"passed": passed, "report": report});
            if passed {
                Ok(value)
            } else {
                Err(Failure::Report(value))
            }
        }
        Command::Glue => match one(opts)? {
            Document::Hom(f) => built(&artin_glueing(&f.domain, &f.codomain, &f.map)?),
            other => wrong_kind(&other, "hom"),
        },
    }
}

fn load_all(opts: &Options) -> Result<Vec<Document>, Failure> {
    opts.inputs.iter().map(|p| load_document(p).map_err(Failure::from)).collect()
}

fn inputs<const K: usize>(opts: &Options) -> Result<[Document; K], Failure> {
    let docs = load_all(opts)?;
    let found = docs.len();
    docs.try_into().map_err(|_| Failure::Usage(format!("expected {K} --input documents, found {found}")))
}

fn one(opts: &Options) -> Result<Document, Failure> {
    let [d] = inputs::<1>(opts)?;
    Ok(d)
}

fn wrong_kind<T>(doc: &Document, expected: &str) -> Result<T, Failure> {
    Err(Failure::Usage(format!("expected a {expected} document, found {}", doc.kind())))
}

fn as_extension(doc: Document) -> Result<ExtensionDiagram, Failure> {
    match doc {
        Document::Extension(d) => Ok(d),
        other => wrong_kind(&other, "extension"),
    }
}

fn as_monoid(doc: Document) -> Result<MonoidRef, Failure> {
    match doc {
        Document::Monoid(m) => Ok(m),
        other => wrong_kind(&other, "monoid"),
    }
}

fn one_extension(opts: &Options) -> Result<ExtensionDiagram, Failure> {
    as_extension(one(opts)?)
}

fn built(d: &ExtensionDiagram) -> Outcome {
    Ok(json!({"extension": document::extension_value(d)}))
}

fn check_oracle_order(m: &MonoidRef) -> Result<(), Failure> {
    if m.size() > oracle::MAX_MONOID_ORDER {
        return Err(Error::OrderTooLarge(m.size()).into());
    }
    Ok(())
}

fn validate(opts: &Options) -> Outcome {
    if opts.inputs.is_empty() {
        return Err(Failure::Usage("expected at least one --input document".into()));
    }
    let mut docs = Vec::new();
    for (path, doc) in opts.inputs.iter().zip(load_all(opts)?) {
        let mut entry = json!({"input": display(path), "kind": doc.kind()});
        match &doc {
            Document::Monoid(m) => entry["size"] = json!(m.size()),
            Document::Extension(d) => {
                check_extension(d).map_err(Error::NotAnExtension)?;
                entry["total_size"] = json!(d.total().size());
            }
            _ => {}
        }
        docs.push(entry);
    }
    Ok(json!({"documents": docs}))
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

/// Default generators for the mode, with the `--generator` overrides applied.
fn generators(d: &ExtensionDiagram, opts: &Options) -> Result<Option<Vec<usize>>, Failure> {
    if opts.generators.is_empty() {
        return Ok(None);
    }
    let hs = d.quotient().size();
    let mut gens: Vec<Option<usize>> = match d.default_generators(opts.mode == Mode::Strict) {
        Some(g) => g.into_iter().map(Some).collect(),
        None => vec![None; hs],
    };
    for &(h, u) in &opts.generators {
        if h >= hs || u >= d.total().size() {
            return Err(Failure::Usage(format!("generator {h}:{u} is out of range")));
        }
        gens[h] = Some(u);
    }
    match gens.iter().position(Option::is_none) {
        Some(h) => Err(Error::BadGeneratorChoice(h).into()),
        None => Ok(Some(gens.into_iter().flatten().collect())),
    }
}

fn extract(opts: &Options) -> Outcome {
    let d = one_extension(opts)?;
    let gens = generators(&d, opts)?;
    let class = classify(&d)?;
    match opts.mode {
        Mode::Strict => {
            let fs = extract_factor_system(&d, gens.as_deref())?;
            let mut report = json!({"factor_system": document::factor_system_value(&fs)});
            if class.is_schreier_split == Some(true) {
                report["action"] = document::action_value(&extract_action(&d)?);
            }
            Ok(report)
        }
        Mode::Relaxed => {
            let fs = extract_ws_factor_system(&d, gens.as_deref())?;
            let mut report = json!({"ws_factor_system": document::ws_factor_system_value(&fs)});
            if class.is_weakly_schreier_split == Some(true) {
                report["relaxed_action"] = document::relaxed_action_value(&extract_relaxed_action(&d)?);
            }
            Ok(report)
        }
    }
}

fn cohomology(opts: &Options) -> Outcome {
    let (setting, chi) = match one(opts)? {
        Document::Action(a) => (Setting::Strict(a), None),
        Document::RelaxedAction(a) => (Setting::Relaxed(a), None),
        Document::Extension(d) => {
            let gens = generators(&d, opts)?;
            let (s, chi) = factor_set_of(&d, gens.as_deref())?;
            (s, Some(chi))
        }
        other => return wrong_kind(&other, "action, relaxed_action or extension"),
    };
    let result = h2(&setting)?;
    let hs = setting.quotient().size();
    let classes: Vec<Value> =
        result.h2_classes.iter().map(|chi| json!(chi.chunks(hs).collect::<Vec<_>>())).collect();
    let mut report = json!({
        "h2_order": result.h2_order,
        "cocycle_count": result.cocycle_count,
        "coboundary_count": result.coboundary_count,
        "classes": classes,
        "group_table": result.group_table,
    });
    if let Some(chi) = chi {
        report["class_index"] = json!(result.class_index(&chi));
    }
    Ok(report)
}

fn iso(opts: &Options) -> Outcome {
    let [a, b] = inputs::<2>(opts)?;
    match (a, b) {
        (Document::Monoid(a), Document::Monoid(b)) => {
            let map = find_isomorphism_map(&a, &b);
            Ok(json!({"isomorphic": map.is_some(), "map": map}))
        }
        (Document::Extension(a), Document::Extension(b)) => {
            let split = a.splitting().is_some() && b.splitting().is_some();
            let map = find_extension_isomorphism(&a, &b, split);
            Ok(json!({"isomorphic": map.is_some(), "respects_splitting": split, "map": map}))
        }
        (a, b) => Err(Failure::Usage(format!(
            "iso compares two monoids or two extensions, found {} and {}",
            a.kind(),
            b.kind()
        ))),
    }
}

fn enumerate(opts: &Options) -> Outcome {
    let docs = load_all(opts)?;
    match <[Document; 2]>::try_from(docs) {
        Ok([n, h]) => {
            let (n, h) = (as_monoid(n)?, as_monoid(h)?);
            let max = opts.max_size.unwrap_or((n.size() * h.size()).min(oracle::MAX_TOTAL_SIZE));
            let mode = if opts.split { CensusMode::Split } else { CensusMode::All };
            let census = enumerate_extensions(&n, &h, mode, max)?;
            let entries: Vec<Value> = census
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "iso_class_id": e.iso_class_id,
                        "classification": e.class,
                        "extension": document::extension_value(&e.diagram),
                    })
                })
                .collect();
            Ok(json!({"max_size": max, "split": opts.split, "count": entries.len(), "classes": entries}))
        }
        Err(docs) if docs.is_empty() => {
            let Some(order) = opts.max_size else {
                return Err(Failure::Usage("enumerate needs --max-size or a kernel and a quotient".into()));
            };
            let catalog = enumerate_monoids(order)?;
            let monoids: Vec<Value> = catalog.monoids.iter().map(document::monoid_value).collect();
            Ok(json!({"order": order, "count": monoids.len(), "monoids": monoids}))
        }
        Err(docs) => Err(Failure::Usage(format!("enumerate takes 0 or 2 --input documents, found {}", docs.len()))),
    }
}
