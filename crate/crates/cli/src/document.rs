//! JSON documents for monoids, homs, extensions, actions and factor systems.
//!
//! Monoids nested in another document are written inline or as a path to a
//! monoid document, resolved against the directory of the referring file.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use schreier::relaxed::{Relaxation, RelaxedAction, WSFactorSystem};
use schreier::strict::{Action, FactorSystem};
use schreier::{ExtensionDiagram, FiniteMonoid, MonoidHom, MonoidRef};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Monoid(MonoidRef),
    Hom(MonoidHom),
    Extension(ExtensionDiagram),
    Action(Action),
    RelaxedAction(RelaxedAction),
    FactorSystem(FactorSystem),
    WsFactorSystem(WSFactorSystem),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Monoid(_) => "monoid",
            Document::Hom(_) => "hom",
            Document::Extension(_) => "extension",
            Document::Action(_) => "action",
            Document::RelaxedAction(_) => "relaxed_action",
            Document::FactorSystem(_) => "factor_system",
            Document::WsFactorSystem(_) => "ws_factor_system",
        }
    }
}

/// Malformed input: bad JSON, a missing or mistyped field, a wrong length or
/// an index out of range. `location` is a path such as `$.table[1][0]`,
/// prefixed by the file it occurs in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocumentError {
    Parse(ParseError),
    /// Well-formed input that breaks an axiom of the target type.
    Invariant(schreier::Error),
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocumentError::Parse(e) => write!(f, "parse error at {e}"),
            DocumentError::Invariant(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DocumentError {}

impl From<schreier::Error> for DocumentError {
    fn from(e: schreier::Error) -> Self {
        DocumentError::Invariant(e)
    }
}

type Parsed<T> = Result<T, DocumentError>;

#[derive(Clone)]
struct Cursor<'a> {
    value: &'a Value,
    file: Option<&'a str>,
    path: String,
    base: Option<&'a Path>,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Parsed<T> {
        let location = match self.file {
            Some(f) => format!("{f}: {}", self.path),
            None => self.path.clone(),
        };
        Err(DocumentError::Parse(ParseError { location, message: message.into() }))
    }

    fn field(&self, key: &str) -> Parsed<Cursor<'a>> {
        match self.value.as_object() {
            None => self.err("expected an object"),
            Some(obj) => match obj.get(key) {
                None => self.err(format!("missing field `{key}`")),
                Some(value) => Ok(Cursor { value, path: format!("{}.{key}", self.path), ..self.clone() }),
            },
        }
    }

    fn optional(&self, key: &str) -> Parsed<Option<Cursor<'a>>> {
        match self.value.as_object() {
            None => self.err("expected an object"),
            Some(obj) => Ok(obj
                .get(key)
                .filter(|v| !v.is_null())
                .map(|value| Cursor { value, path: format!("{}.{key}", self.path), ..self.clone() })),
        }
    }

    fn items(&self, len: Option<usize>) -> Parsed<Vec<Cursor<'a>>> {
        let Some(arr) = self.value.as_array() else {
            return self.err("expected an array");
        };
        if let Some(len) = len {
            if arr.len() != len {
                return self.err(format!("expected {len} entries, found {}", arr.len()));
            }
        }
        Ok(arr
            .iter()
            .enumerate()
            .map(|(i, value)| Cursor { value, path: format!("{}[{i}]", self.path), ..self.clone() })
            .collect())
    }

    fn index(&self, bound: usize) -> Parsed<usize> {
        match self.value.as_u64() {
            None => self.err("expected a non-negative integer"),
            Some(v) if (v as usize) < bound => Ok(v as usize),
            Some(v) => self.err(format!("index {v} is out of range (must be below {bound})")),
        }
    }

    fn count(&self) -> Parsed<usize> {
        match self.value.as_u64() {
            Some(v) if v > 0 => Ok(v as usize),
            _ => self.err("expected a positive integer"),
        }
    }

    fn indices(&self, len: usize, bound: usize) -> Parsed<Vec<usize>> {
        self.items(Some(len))?.iter().map(|c| c.index(bound)).collect()
    }

    /// A `rows x cols` matrix flattened row-major.
    fn matrix(&self, rows: usize, cols: usize, bound: usize) -> Parsed<Vec<usize>> {
        let mut out = Vec::with_capacity(rows * cols);
        for row in self.items(Some(rows))? {
            out.extend(row.indices(cols, bound)?);
        }
        Ok(out)
    }
}

/// Parses a document. `base` is the file the text was read from; relative
/// monoid references are resolved against its directory.
pub fn parse_document(text: &str, base: Option<&Path>) -> Parsed<Document> {
    let label = base.map(|p| p.display().to_string());
    let value: Value = serde_json::from_str(text).map_err(|e| {
        DocumentError::Parse(ParseError {
            location: match &label {
                Some(f) => format!("{f}: line {} column {}", e.line(), e.column()),
                None => format!("line {} column {}", e.line(), e.column()),
            },
            message: e.to_string(),
        })
    })?;
    let dir = base.and_then(Path::parent);
    let c = Cursor { value: &value, file: label.as_deref(), path: "$".into(), base: dir };
    parse_value(&c)
}

pub fn load_document(path: &Path) -> Parsed<Document> {
    let text = read(path, None)?;
    parse_document(&text, Some(path))
}

fn read(path: &Path, at: Option<&Cursor>) -> Parsed<String> {
    std::fs::read_to_string(path).map_err(|e| {
        let location = match at {
            Some(c) => match c.file {
                Some(f) => format!("{f}: {}", c.path),
                None => c.path.clone(),
            },
            None => path.display().to_string(),
        };
        DocumentError::Parse(ParseError { location, message: format!("cannot read {}: {e}", path.display()) })
    })
}

fn parse_value(c: &Cursor) -> Parsed<Document> {
    let kind = c.field("kind")?;
    let Some(name) = kind.value.as_str() else {
        return kind.err("expected a string");
    };
    Ok(match name {
        "monoid" => Document::Monoid(parse_monoid(c)?),
        "hom" => Document::Hom(parse_hom(c)?),
        "extension" => Document::Extension(parse_extension(c)?),
        "action" => Document::Action(parse_action(c)?),
        "relaxed_action" => Document::RelaxedAction(parse_relaxed_action(c)?),
        "factor_system" => Document::FactorSystem(parse_factor_system(c)?),
        "ws_factor_system" => Document::WsFactorSystem(parse_ws_factor_system(c)?),
        other => return kind.err(format!("unknown kind `{other}`")),
    })
}

fn parse_monoid(c: &Cursor) -> Parsed<MonoidRef> {
    if let Some(kind) = c.optional("kind")? {
        if kind.value.as_str() != Some("monoid") {
            return kind.err("expected kind `monoid`");
        }
    }
    let size = c.field("size")?.count()?;
    let identity = c.field("identity")?.index(size)?;
    let table = c.field("table")?.matrix(size, size, size)?;
    let mut m = FiniteMonoid::from_flat(size, identity, table)?;
    if let Some(names) = c.optional("names")? {
        let names = names
            .items(Some(size))?
            .iter()
            .map(|n| match n.value.as_str() {
                Some(s) => Ok(s.to_string()),
                None => n.err("expected a string"),
            })
            .collect::<Parsed<Vec<String>>>()?;
        m = m.with_names(names)?;
    }
    Ok(m.shared())
}

/// A monoid given inline or as a path to a monoid document.
fn monoid_ref(c: &Cursor, key: &str) -> Parsed<MonoidRef> {
    let f = c.field(key)?;
    match f.value {
        Value::String(p) => {
            let path: PathBuf = match f.base {
                Some(dir) => dir.join(p),
                None => PathBuf::from(p),
            };
            let text = read(&path, Some(&f))?;
            match parse_document(&text, Some(&path))? {
                Document::Monoid(m) => Ok(m),
                other => f.err(format!("{} refers to a {} document, expected a monoid", p, other.kind())),
            }
        }
        Value::Object(_) => parse_monoid(&f),
        _ => f.err("expected a monoid object or a path"),
    }
}

fn parse_hom(c: &Cursor) -> Parsed<MonoidHom> {
    let domain = monoid_ref(c, "domain")?;
    let codomain = monoid_ref(c, "codomain")?;
    let map = c.field("map")?.indices(domain.size(), codomain.size())?;
    Ok(MonoidHom::new(domain, codomain, map)?)
}

fn parse_extension(c: &Cursor) -> Parsed<ExtensionDiagram> {
    let kernel = monoid_ref(c, "kernel")?;
    let total = monoid_ref(c, "total")?;
    let quotient = monoid_ref(c, "quotient")?;
    let k = c.field("k")?.indices(kernel.size(), total.size())?;
    let e = c.field("e")?.indices(total.size(), quotient.size())?;
    let s = match c.optional("s")? {
        Some(s) => Some(s.indices(quotient.size(), total.size())?),
        None => None,
    };
    Ok(ExtensionDiagram::from_parts(kernel, total, quotient, k, e, s)?)
}

fn alpha_field(c: &Cursor, h: &MonoidRef, n: &MonoidRef) -> Parsed<Vec<usize>> {
    c.field("alpha")?.matrix(h.size(), n.size(), n.size())
}

fn chi_field(c: &Cursor, h: &MonoidRef, n: &MonoidRef) -> Parsed<Vec<usize>> {
    c.field("chi")?.matrix(h.size(), h.size(), n.size())
}

fn relaxation_field(c: &Cursor, h: &MonoidRef, n: &MonoidRef) -> Parsed<Relaxation> {
    let f = c.field("relaxation")?;
    let mut labels = Vec::with_capacity(h.size());
    for row in f.items(Some(h.size()))? {
        labels.push(row.indices(n.size(), usize::MAX)?);
    }
    Ok(Relaxation::from_labels(h.clone(), n.clone(), &labels)?)
}

fn parse_action(c: &Cursor) -> Parsed<Action> {
    let h = monoid_ref(c, "quotient")?;
    let n = monoid_ref(c, "kernel")?;
    let alpha = alpha_field(c, &h, &n)?;
    Ok(Action::new(h, n, alpha)?)
}

fn parse_relaxed_action(c: &Cursor) -> Parsed<RelaxedAction> {
    let h = monoid_ref(c, "quotient")?;
    let n = monoid_ref(c, "kernel")?;
    let r = relaxation_field(c, &h, &n)?;
    let alpha = alpha_field(c, &h, &n)?;
    Ok(RelaxedAction::new(r, alpha)?)
}

fn parse_factor_system(c: &Cursor) -> Parsed<FactorSystem> {
    let h = monoid_ref(c, "quotient")?;
    let n = monoid_ref(c, "kernel")?;
    let alpha = alpha_field(c, &h, &n)?;
    let chi = chi_field(c, &h, &n)?;
    Ok(FactorSystem::new(h, n, alpha, chi)?)
}

fn parse_ws_factor_system(c: &Cursor) -> Parsed<WSFactorSystem> {
    let h = monoid_ref(c, "quotient")?;
    let n = monoid_ref(c, "kernel")?;
    let r = relaxation_field(c, &h, &n)?;
    let alpha = alpha_field(c, &h, &n)?;
    let chi = chi_field(c, &h, &n)?;
    Ok(WSFactorSystem::new(r, alpha, chi)?)
}

fn rows(flat: &[usize], cols: usize) -> Value {
    Value::Array(flat.chunks(cols.max(1)).map(|r| json!(r)).collect())
}

pub fn monoid_value(m: &FiniteMonoid) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("monoid"));
    obj.insert("size".into(), json!(m.size()));
    obj.insert("identity".into(), json!(m.identity()));
    obj.insert("table".into(), rows(m.table(), m.size()));
    if let Some(names) = m.names() {
        obj.insert("names".into(), json!(names));
    }
    Value::Object(obj)
}

pub fn extension_value(d: &ExtensionDiagram) -> Value {
    let mut v = json!({
        "kind": "extension",
        "kernel": monoid_value(d.kernel()),
        "total": monoid_value(d.total()),
        "quotient": monoid_value(d.quotient()),
        "k": d.k_map(),
        "e": d.e_map(),
    });
    if let Some(s) = d.splitting() {
        v["s"] = json!(s);
    }
    v
}

pub fn action_value(a: &Action) -> Value {
    json!({
        "kind": "action",
        "quotient": monoid_value(&a.quotient),
        "kernel": monoid_value(&a.kernel),
        "alpha": rows(&a.alpha, a.kernel.size()),
    })
}

pub fn relaxed_action_value(a: &RelaxedAction) -> Value {
    let r = &a.relaxation;
    json!({
        "kind": "relaxed_action",
        "quotient": monoid_value(&r.quotient),
        "kernel": monoid_value(&r.kernel),
        "relaxation": r.labels(),
        "alpha": rows(&a.alpha, r.kernel.size()),
    })
}

pub fn factor_system_value(fs: &FactorSystem) -> Value {
    json!({
        "kind": "factor_system",
        "quotient": monoid_value(&fs.quotient),
        "kernel": monoid_value(&fs.kernel),
        "alpha": rows(&fs.alpha, fs.kernel.size()),
        "chi": rows(&fs.chi, fs.quotient.size()),
    })
}

pub fn ws_factor_system_value(fs: &WSFactorSystem) -> Value {
    let r = &fs.relaxation;
    json!({
        "kind": "ws_factor_system",
        "quotient": monoid_value(&r.quotient),
        "kernel": monoid_value(&r.kernel),
        "relaxation": r.labels(),
        "alpha": rows(&fs.alpha, r.kernel.size()),
        "chi": rows(&fs.chi, r.quotient.size()),
    })
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::Monoid(m) => monoid_value(m),
        Document::Hom(f) => json!({
            "kind": "hom",
            "domain": monoid_value(&f.domain),
            "codomain": monoid_value(&f.codomain),
            "map": f.map,
        }),
        Document::Extension(d) => extension_value(d),
        Document::Action(a) => action_value(a),
        Document::RelaxedAction(a) => relaxed_action_value(a),
        Document::FactorSystem(fs) => factor_system_value(fs),
        Document::WsFactorSystem(fs) => ws_factor_system_value(fs),
    }
}

/// Pretty-printed JSON with monoid references inlined and relaxation labels
/// renumbered by first occurrence.
pub fn serialize(doc: &Document) -> String {
    serde_json::to_string_pretty(&to_value(doc)).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use schreier::catalog;

    fn parse(text: &str) -> Parsed<Document> {
        parse_document(text, None)
    }

    fn location(r: Parsed<Document>) -> String {
        match r {
            Err(DocumentError::Parse(e)) => e.location,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn meet_monoid_document() {
        let doc = parse(r#"{"kind":"monoid","size":2,"identity":0,"table":[[0,1],[1,1]]}"#).unwrap();
        assert_eq!(doc, Document::Monoid(catalog::meet_two().shared()));
    }

    #[test]
    fn out_of_range_entry_is_located() {
        let r = parse(r#"{"kind":"monoid","size":2,"identity":0,"table":[[0,1],[1,5]]}"#);
        assert_eq!(location(r), "$.table[1][1]");
        let r = parse(r#"{"kind":"monoid","size":2,"identity":0}"#);
        assert_eq!(location(r), "$");
        let r = parse(r#"{"kind":"group"}"#);
        assert_eq!(location(r), "$.kind");
        assert!(location(parse("{")).starts_with("line 1"));
    }

    #[test]
    fn broken_axioms_are_invariant_violations() {
        let r = parse(r#"{"kind":"monoid","size":2,"identity":0,"table":[[0,1],[0,1]]}"#);
        assert!(matches!(r, Err(DocumentError::Invariant(_))));
        let z2 = monoid_value(&catalog::cyclic_group(2));
        let bad = json!({"kind":"action","quotient":z2,"kernel":z2,"alpha":[[0,1],[1,1]]});
        let r = parse(&bad.to_string());
        assert!(matches!(r, Err(DocumentError::Invariant(schreier::Error::ActionInvalid(_)))));
    }

    #[test]
    fn documents_round_trip() {
        let z2 = catalog::cyclic_group(2).shared();
        let two = catalog::meet_two().shared();
        let action = Action::trivial(two.clone(), z2.clone());
        let docs = vec![
            Document::Monoid(z2.clone()),
            Document::Hom(MonoidHom::identity_on(&two)),
            Document::Extension(schreier::strict::semidirect(&action).unwrap()),
            Document::FactorSystem(FactorSystem::from_action(&action)),
            Document::RelaxedAction(RelaxedAction::from_action(&action)),
            Document::WsFactorSystem(WSFactorSystem::from_strict(&FactorSystem::from_action(&action))),
            Document::Action(action),
        ];
        for doc in docs {
            let text = serialize(&doc);
            let back = parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn relative_monoid_paths() {
        let dir = std::env::temp_dir().join(format!("schreier-doc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("z2.json"), serialize(&Document::Monoid(catalog::cyclic_group(2).shared()))).unwrap();
        let hom = dir.join("hom.json");
        std::fs::write(&hom, r#"{"kind":"hom","domain":"z2.json","codomain":"z2.json","map":[0,1]}"#).unwrap();
        let doc = load_document(&hom).unwrap();
        assert_eq!(doc.kind(), "hom");
        std::fs::write(&hom, r#"{"kind":"hom","domain":"missing.json","codomain":"z2.json","map":[0,1]}"#).unwrap();
        let loc = location(load_document(&hom));
        assert!(loc.ends_with("$.domain"), "{loc}");
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
