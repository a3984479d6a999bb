//! Input file formats. All files are JSON objects with a fixed set of fields;
//! unknown fields are rejected. Group and type references are either inline
//! objects or paths relative to the referencing file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use grcat::cohomology::Cochain;
use grcat::linalg::IntMatrix;
use grcat::{FiniteAbelianGroup, FiniteGroup, PiModule};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(PathBuf),
    Inline(GroupFile),
}

/// Sparse cochain entries keyed by `"x,y,z"`.
pub type Entries = BTreeMap<String, Vec<i64>>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub group: GroupRef,
    pub coefficients: Vec<i64>,
    /// One matrix (as rows) per group element; trivial action when absent.
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrTypeFile {
    pub group: GroupRef,
    pub coefficients: Vec<i64>,
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub h: Entries,
    #[serde(default)]
    pub eta: Option<Entries>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum GrTypeRef {
    Path(PathBuf),
    Inline(Box<GrTypeFile>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelFile {
    pub pi: GroupRef,
    pub g: GroupRef,
    /// Index in `Out(G)` of `ψ(x)` for each `x ∈ Π`.
    pub psi: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: GrTypeRef,
    pub target: GrTypeRef,
    pub phi: Vec<usize>,
    /// Matrix of `f: A → A′` as rows, one per generator of `A′`.
    pub f: Vec<Vec<i64>>,
    #[serde(default)]
    pub g: Option<Entries>,
}

/// A parsed file together with its text, for locating fields in messages.
pub struct Loaded<T> {
    pub path: PathBuf,
    pub text: String,
    pub value: T,
}

impl<T> Loaded<T> {
    /// An input error pointing at the first line mentioning `field`.
    pub fn error(&self, field: &str, message: impl std::fmt::Display) -> CliError {
        let needle = format!("\"{field}\"");
        let line = self.text.lines().position(|l| l.contains(&needle)).map(|i| i + 1);
        CliError::input(&self.path, line, format!("{field}: {message}"))
    }

    fn dir(&self) -> PathBuf {
        self.path.parent().map(Path::to_path_buf).unwrap_or_default()
    }
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<Loaded<T>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::input(path, None, format!("cannot read: {e}")))?;
    let value = serde_json::from_str(&text).map_err(|e| {
        let message = e.to_string();
        let message = message.rsplit_once(" at line ").map_or(message.as_str(), |(m, _)| m);
        CliError::input(path, Some(e.line()), format!("{message} (column {})", e.column()))
    })?;
    Ok(Loaded { path: path.to_path_buf(), text, value })
}

pub fn group_from_file(file: &Loaded<GroupFile>) -> Result<FiniteGroup, CliError> {
    let gf = &file.value;
    let g = FiniteGroup::from_table(gf.table.clone()).map_err(|e| file.error("table", format!("invalid group: {e}")))?;
    if gf.elements.len() != g.order() {
        return Err(file.error("elements", format!("{} labels for a group of order {}", gf.elements.len(), g.order())));
    }
    let mut seen = gf.elements.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != gf.elements.len() {
        return Err(file.error("elements", "labels are not distinct"));
    }
    Ok(g.with_names(gf.elements.clone()))
}

/// Resolves a group reference made from within `parent`.
pub fn resolve_group<P>(parent: &Loaded<P>, field: &str, r: &GroupRef) -> Result<(FiniteGroup, String), CliError> {
    match r {
        GroupRef::Path(p) => {
            let loaded = load::<GroupFile>(&parent.dir().join(p))?;
            Ok((group_from_file(&loaded)?, loaded.value.name))
        }
        GroupRef::Inline(gf) => {
            let inline = Loaded { path: parent.path.clone(), text: parent.text.clone(), value: gf.clone() };
            let g = group_from_file(&inline).map_err(|e| e.context(field))?;
            Ok((g, gf.name.clone()))
        }
    }
}

fn coefficients<P>(file: &Loaded<P>, factors: &[i64]) -> Result<FiniteAbelianGroup, CliError> {
    FiniteAbelianGroup::new(factors.to_vec()).map_err(|e| file.error("coefficients", e))
}

fn module<P>(
    file: &Loaded<P>,
    pi: FiniteGroup,
    factors: &[i64],
    action: &Option<Vec<Vec<Vec<i64>>>>,
) -> Result<PiModule, CliError> {
    let coeff = coefficients(file, factors)?;
    match action {
        None => Ok(PiModule::trivial(pi, coeff)),
        Some(mats) => {
            let rank = coeff.rank();
            let mut matrices = Vec::with_capacity(mats.len());
            for (x, rows) in mats.iter().enumerate() {
                if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                    return Err(file.error("action", format!("matrix of element {x} is not {rank}x{rank}")));
                }
                matrices.push(IntMatrix::from_rows(rows));
            }
            PiModule::new(pi, coeff, matrices).map_err(|e| file.error("action", e))
        }
    }
}

pub fn load_module(path: &Path) -> Result<(PiModule, String), CliError> {
    let file = load::<ModuleFile>(path)?;
    let (pi, name) = resolve_group(&file, "group", &file.value.group)?;
    let m = module(&file, pi, &file.value.coefficients, &file.value.action)?;
    Ok((m, name))
}

pub fn parse_entries<P>(file: &Loaded<P>, field: &str, m: &PiModule, degree: usize, entries: &Entries) -> Result<Cochain, CliError> {
    let n = m.pi().order();
    let mut parsed = Vec::with_capacity(entries.len());
    for (key, value) in entries {
        let args: Vec<usize> = key
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| file.error(field, format!("key {key:?} is not a comma-separated index list")))?;
        if args.len() != degree {
            return Err(file.error(field, format!("key {key:?} should have {degree} indices")));
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= n) {
            return Err(file.error(field, format!("index {bad} in {key:?} is out of range")));
        }
        if value.len() != m.coeff().rank() {
            return Err(file.error(field, format!("value at {key:?} should have {} coordinates", m.coeff().rank())));
        }
        parsed.push((args, value.clone()));
    }
    Cochain::from_entries(m, degree, parsed).map_err(|e| file.error(field, e))
}

/// A GrType file resolved to its module, associator and optional braiding.
pub struct GrTypeData {
    pub name: String,
    pub module: PiModule,
    pub h: Cochain,
    pub eta: Option<Cochain>,
    pub file: Loaded<GrTypeFile>,
}

fn grtype_from_loaded(file: Loaded<GrTypeFile>) -> Result<GrTypeData, CliError> {
    let (pi, name) = resolve_group(&file, "group", &file.value.group)?;
    let m = module(&file, pi, &file.value.coefficients, &file.value.action)?;
    let h = parse_entries(&file, "h", &m, 3, &file.value.h)?;
    let eta = match &file.value.eta {
        Some(e) => Some(parse_entries(&file, "eta", &m, 2, e)?),
        None => None,
    };
    Ok(GrTypeData { name, module: m, h, eta, file })
}

pub fn load_grtype(path: &Path) -> Result<GrTypeData, CliError> {
    grtype_from_loaded(load(path)?)
}

pub fn resolve_grtype<P>(parent: &Loaded<P>, r: &GrTypeRef) -> Result<GrTypeData, CliError> {
    match r {
        GrTypeRef::Path(p) => load_grtype(&parent.dir().join(p)),
        GrTypeRef::Inline(t) => {
            grtype_from_loaded(Loaded { path: parent.path.clone(), text: parent.text.clone(), value: (**t).clone() })
        }
    }
}

/// Renders a cochain in the sparse input syntax.
pub fn entries_of(c: &Cochain) -> Entries {
    c.entries()
        .iter()
        .map(|(args, v)| (args.iter().map(usize::to_string).collect::<Vec<_>>().join(","), v.clone()))
        .collect()
}
