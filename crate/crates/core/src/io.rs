//! File formats. Every document is UTF-8 JSON carrying `format_version` and a
//! `kind` tag; rationals are strings `"p/q"` (or `"p"`), matrices are sparse
//! `{rows, cols, entries: [[row, col, value], …]}`. The canonical form is
//! pretty-printed with sorted keys, only nonzero matrices listed and a final
//! newline, so parsing and re-serializing a canonical file is byte-identical.
//!
//! Group tables are plain text: one row of the multiplication table per line,
//! entries separated by whitespace, `#` starting a comment.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::chain::{ChainComplex, ChainMap, GradedMap};
use crate::error::{Error, Result};
use crate::exactla::{format_q, parse_q, SparseMatrix};
use crate::groupcyc::FiniteGroup;
use crate::obstruct::{HomotopyChainObject, HomotopySimplicialMap};
use crate::simpfilt::{Bicomplex, FilteredComplex, SimplicialChainObject};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixData {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeMatrix {
    degree: i64,
    matrix: MatrixData,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexData {
    /// `[lo, hi]`; `hi < lo` for the zero complex.
    support: (i64, i64),
    dims: Vec<usize>,
    differentials: Vec<DegreeMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainMapData {
    source: ComplexData,
    target: ComplexData,
    components: Vec<DegreeMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BicomplexData {
    columns: Vec<ComplexData>,
    /// Entry `c − 1` is the horizontal map from column `c` to column `c − 1`.
    d_horizontal: Vec<Vec<DegreeMatrix>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SimplicialData {
    #[serde(rename = "N")]
    top: usize,
    objects: Vec<ComplexData>,
    /// `faces[n][i]`, with `faces[0]` empty.
    faces: Vec<Vec<Vec<DegreeMatrix>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degeneracies: Option<Vec<Vec<Vec<DegreeMatrix>>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyMapData {
    source: BicomplexData,
    target: BicomplexData,
    columns: Vec<Vec<DegreeMatrix>>,
    /// Entry `c − 1` is the degree `+1` witness at column `c`.
    witnesses: Vec<Vec<DegreeMatrix>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomotopyChainData {
    objects: Vec<ComplexData>,
    /// Entry `n − 1` is `d_n`.
    maps: Vec<Vec<DegreeMatrix>>,
    /// Entry `n − 2` is `h_n`.
    homotopies: Vec<Vec<DegreeMatrix>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeLevels {
    degree: i64,
    levels: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FilteredData {
    complex: ComplexData,
    /// Filtration level of each basis vector, per degree.
    levels: Vec<DegreeLevels>,
}

/// A parsed document.
#[derive(Clone, Debug)]
pub enum Document {
    Complex(Arc<ChainComplex>),
    ChainMap(ChainMap),
    Bicomplex(Bicomplex),
    Simplicial(SimplicialChainObject),
    HomotopyMap(HomotopySimplicialMap),
    HomotopyChain(HomotopyChainObject),
    Filtered(FilteredComplex),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Complex(_) => "chain_complex",
            Document::ChainMap(_) => "chain_map",
            Document::Bicomplex(_) => "bicomplex",
            Document::Simplicial(_) => "simplicial_object",
            Document::HomotopyMap(_) => "homotopy_simplicial_map",
            Document::HomotopyChain(_) => "homotopy_chain_object",
            Document::Filtered(_) => "filtered_complex",
        }
    }
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Parse(format!("at {path}: {e}")))
}

fn write_matrix(m: &SparseMatrix) -> MatrixData {
    MatrixData {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.triplets().into_iter().map(|(r, c, v)| (r, c, format_q(&v))).collect(),
    }
}

fn read_matrix(path: &str, m: &MatrixData) -> Result<SparseMatrix> {
    let mut triplets = Vec::with_capacity(m.entries.len());
    for (k, (r, c, v)) in m.entries.iter().enumerate() {
        triplets.push((*r, *c, at(&format!("{path}.entries[{k}]"), parse_q(v))?));
    }
    at(path, SparseMatrix::from_triplets(m.rows, m.cols, triplets))
}

fn write_components<'a>(comps: impl IntoIterator<Item = (i64, &'a SparseMatrix)>) -> Vec<DegreeMatrix> {
    comps
        .into_iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(degree, m)| DegreeMatrix { degree, matrix: write_matrix(m) })
        .collect()
}

fn read_components(path: &str, comps: &[DegreeMatrix]) -> Result<BTreeMap<i64, SparseMatrix>> {
    let mut out = BTreeMap::new();
    for (k, c) in comps.iter().enumerate() {
        let p = format!("{path}[{k}]");
        if out.insert(c.degree, read_matrix(&format!("{p}.matrix"), &c.matrix)?).is_some() {
            return Err(Error::Parse(format!("at {p}: degree {} listed twice", c.degree)));
        }
    }
    Ok(out)
}

fn write_complex(c: &ChainComplex) -> ComplexData {
    let diffs: Vec<(i64, SparseMatrix)> = (c.lo() + 1..=c.hi()).map(|n| (n, c.d(n))).collect();
    ComplexData {
        support: (c.lo(), c.hi()),
        dims: c.dims().to_vec(),
        differentials: write_components(diffs.iter().map(|(n, m)| (*n, m))),
    }
}

fn read_complex(path: &str, c: &ComplexData) -> Result<Arc<ChainComplex>> {
    let (lo, hi) = c.support;
    if hi - lo + 1 != c.dims.len() as i64 && !(c.dims.is_empty() && hi < lo) {
        return Err(Error::Parse(format!("at {path}.support: [{lo}, {hi}] does not match {} dims", c.dims.len())));
    }
    let diffs = read_components(&format!("{path}.differentials"), &c.differentials)?;
    Ok(Arc::new(at(path, ChainComplex::new(lo, c.dims.clone(), diffs))?))
}

fn write_graded(g: &GradedMap) -> Vec<DegreeMatrix> {
    write_components(g.components().iter().map(|(n, m)| (*n, m)))
}

fn read_chain_map(path: &str, s: &Arc<ChainComplex>, t: &Arc<ChainComplex>, comps: &[DegreeMatrix]) -> Result<ChainMap> {
    at(path, ChainMap::new(s.clone(), t.clone(), read_components(path, comps)?))
}

fn read_graded(
    path: &str,
    s: &Arc<ChainComplex>,
    t: &Arc<ChainComplex>,
    degree: i64,
    comps: &[DegreeMatrix],
) -> Result<GradedMap> {
    at(path, GradedMap::new(s.clone(), t.clone(), degree, read_components(path, comps)?))
}

fn read_complexes(path: &str, cs: &[ComplexData]) -> Result<Vec<Arc<ChainComplex>>> {
    cs.iter().enumerate().map(|(k, c)| read_complex(&format!("{path}[{k}]"), c)).collect()
}

fn write_bicomplex(b: &Bicomplex) -> BicomplexData {
    BicomplexData {
        columns: b.columns().iter().map(|c| write_complex(c)).collect(),
        d_horizontal: (1..=b.top()).map(|n| write_graded(b.horizontal(n).graded())).collect(),
    }
}

fn read_bicomplex(path: &str, b: &BicomplexData) -> Result<Bicomplex> {
    let columns = read_complexes(&format!("{path}.columns"), &b.columns)?;
    if columns.is_empty() || b.d_horizontal.len() + 1 != columns.len() {
        return Err(Error::Parse(format!("at {path}: need one horizontal map per column after the first")));
    }
    let horizontal = b
        .d_horizontal
        .iter()
        .enumerate()
        .map(|(k, comps)| read_chain_map(&format!("{path}.d_horizontal[{k}]"), &columns[k + 1], &columns[k], comps))
        .collect::<Result<Vec<_>>>()?;
    at(path, Bicomplex::new(columns, horizontal))
}

fn body(doc: &Document) -> Value {
    let v = match doc {
        Document::Complex(c) => serde_json::to_value(write_complex(c)),
        Document::ChainMap(f) => serde_json::to_value(ChainMapData {
            source: write_complex(f.source()),
            target: write_complex(f.target()),
            components: write_graded(f.graded()),
        }),
        Document::Bicomplex(b) => serde_json::to_value(write_bicomplex(b)),
        Document::Simplicial(x) => {
            let top = x.top();
            let faces = (0..=top).map(|n| (0..n + usize::from(n > 0)).map(|i| write_graded(x.face(n, i).graded())).collect()).collect();
            let degeneracies = x.has_degeneracies().then(|| {
                (0..top)
                    .map(|n| (0..=n).map(|j| write_graded(x.degeneracy(n, j).expect("present").graded())).collect())
                    .collect()
            });
            serde_json::to_value(SimplicialData {
                top,
                objects: x.objects().iter().map(|c| write_complex(c)).collect(),
                faces,
                degeneracies,
            })
        }
        Document::HomotopyMap(m) => serde_json::to_value(HomotopyMapData {
            source: write_bicomplex(m.source()),
            target: write_bicomplex(m.target()),
            columns: (0..=m.top()).map(|c| write_graded(m.f(c).graded())).collect(),
            witnesses: (1..=m.top()).map(|c| write_graded(m.witness(c).s())).collect(),
        }),
        Document::HomotopyChain(x) => serde_json::to_value(HomotopyChainData {
            objects: (0..=x.top()).map(|n| write_complex(x.object(n))).collect(),
            maps: (1..=x.top()).map(|n| write_graded(x.d(n).graded())).collect(),
            homotopies: (2..=x.top()).map(|n| write_graded(x.h(n))).collect(),
        }),
        Document::Filtered(f) => serde_json::to_value(FilteredData {
            complex: write_complex(f.total()),
            levels: f.all_levels().iter().map(|(d, l)| DegreeLevels { degree: *d, levels: l.clone() }).collect(),
        }),
    };
    v.expect("plain data serializes")
}

/// The canonical text of a document.
pub fn to_canonical_string(doc: &Document) -> String {
    let mut v = body(doc);
    let obj = v.as_object_mut().expect("documents are objects");
    obj.insert("format_version".into(), Value::from(FORMAT_VERSION));
    obj.insert("kind".into(), Value::from(doc.kind()));
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn typed<T: DeserializeOwned>(v: Value) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        Error::Parse(format!("at {path}: {}", e.into_inner()))
    })
}

/// Parses a document, reporting syntax errors by line and column and schema
/// or consistency errors by JSON path.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut v: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    let Some(obj) = v.as_object_mut() else {
        return Err(Error::Parse("top level must be an object".into()));
    };
    match obj.remove("format_version") {
        Some(Value::Number(n)) if n.as_u64() == Some(FORMAT_VERSION) => {}
        Some(other) => return Err(Error::Parse(format!("at format_version: unsupported version {other}"))),
        None => return Err(Error::Parse("missing format_version".into())),
    }
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => s,
        _ => return Err(Error::Parse("missing or non-string kind".into())),
    };
    Ok(match kind.as_str() {
        "chain_complex" => Document::Complex(read_complex("$", &typed(v)?)?),
        "chain_map" => {
            let d: ChainMapData = typed(v)?;
            let s = read_complex("source", &d.source)?;
            let t = read_complex("target", &d.target)?;
            Document::ChainMap(read_chain_map("components", &s, &t, &d.components)?)
        }
        "bicomplex" => Document::Bicomplex(read_bicomplex("$", &typed(v)?)?),
        "simplicial_object" => {
            let d: SimplicialData = typed(v)?;
            let objects = read_complexes("objects", &d.objects)?;
            if objects.len() != d.top + 1 || d.faces.len() != d.top + 1 {
                return Err(Error::Parse(format!("N = {} needs N + 1 objects and face lists", d.top)));
            }
            let mut faces = Vec::new();
            for (n, fs) in d.faces.iter().enumerate() {
                let mut level = Vec::new();
                for (i, comps) in fs.iter().enumerate() {
                    if n == 0 {
                        return Err(Error::Parse("at faces[0]: level 0 has no faces".into()));
                    }
                    level.push(read_chain_map(&format!("faces[{n}][{i}]"), &objects[n], &objects[n - 1], comps)?);
                }
                faces.push(level);
            }
            let degeneracies = match &d.degeneracies {
                None => None,
                Some(ds) => {
                    let mut out = Vec::new();
                    for (n, level) in ds.iter().enumerate() {
                        if n + 1 >= objects.len() {
                            return Err(Error::Parse(format!("at degeneracies[{n}]: no level {}", n + 1)));
                        }
                        let maps = level
                            .iter()
                            .enumerate()
                            .map(|(j, c)| read_chain_map(&format!("degeneracies[{n}][{j}]"), &objects[n], &objects[n + 1], c))
                            .collect::<Result<Vec<_>>>()?;
                        out.push(maps);
                    }
                    Some(out)
                }
            };
            Document::Simplicial(at("$", SimplicialChainObject::new(objects, faces, degeneracies))?)
        }
        "homotopy_simplicial_map" => {
            let d: HomotopyMapData = typed(v)?;
            let source = read_bicomplex("source", &d.source)?;
            let target = read_bicomplex("target", &d.target)?;
            if d.columns.len() != source.top() + 1 || d.columns.len() != target.top() + 1 || d.witnesses.len() != source.top()
            {
                return Err(Error::Parse("one column map per column and one witness per column after the first".into()));
            }
            let f = d
                .columns
                .iter()
                .enumerate()
                .map(|(c, comps)| read_chain_map(&format!("columns[{c}]"), source.column(c), target.column(c), comps))
                .collect::<Result<Vec<_>>>()?;
            let ws = d
                .witnesses
                .iter()
                .enumerate()
                .map(|(k, comps)| read_graded(&format!("witnesses[{k}]"), source.column(k + 1), target.column(k), 1, comps))
                .collect::<Result<Vec<_>>>()?;
            Document::HomotopyMap(at("$", HomotopySimplicialMap::new(source, target, f, ws))?)
        }
        "homotopy_chain_object" => {
            let d: HomotopyChainData = typed(v)?;
            let objects = read_complexes("objects", &d.objects)?;
            if objects.is_empty() || d.maps.len() + 1 != objects.len() || d.homotopies.len() + 2 != objects.len().max(2) {
                return Err(Error::Parse("need N maps and N − 1 homotopies for N + 1 objects".into()));
            }
            let maps = d
                .maps
                .iter()
                .enumerate()
                .map(|(k, c)| read_chain_map(&format!("maps[{k}]"), &objects[k + 1], &objects[k], c))
                .collect::<Result<Vec<_>>>()?;
            let homotopies = d
                .homotopies
                .iter()
                .enumerate()
                .map(|(k, c)| read_graded(&format!("homotopies[{k}]"), &objects[k + 2], &objects[k], 1, c))
                .collect::<Result<Vec<_>>>()?;
            Document::HomotopyChain(at("$", HomotopyChainObject::new(objects, maps, homotopies))?)
        }
        "filtered_complex" => {
            let d: FilteredData = typed(v)?;
            let total = read_complex("complex", &d.complex)?;
            let levels = d.levels.into_iter().map(|l| (l.degree, l.levels)).collect();
            Document::Filtered(at("levels", FilteredComplex::new(total, levels))?)
        }
        other => return Err(Error::Parse(format!("at kind: unknown kind {other:?}"))),
    })
}

/// Reads a document, prefixing errors with the file name.
pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    parse_document(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => Error::Input(format!("{}: {other}", path.display())),
    })
}

pub fn write_document(path: &Path, doc: &Document) -> Result<()> {
    std::fs::write(path, to_canonical_string(doc)).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// Parses a multiplication table.
pub fn parse_group_table(text: &str) -> Result<FiniteGroup> {
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("line {}: not an element index: {t:?}", k + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    FiniteGroup::new(rows).map_err(|e| Error::Parse(format!("group table: {e}")))
}

pub fn format_group_table(g: &FiniteGroup) -> String {
    let width = g.order().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for row in g.table() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
