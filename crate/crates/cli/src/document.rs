//! The `fforge-v1` instance format: a header line followed by one JSON object.
//!
//! ```text
//! fforge-v1
//! {
//!   "problem": "bounded",
//!   "vertices": ["a", "b", "c"],
//!   "hyperedges": [["a", "b"], ["b", "c"], ["a", "b", "c"]],
//!   "roots": [{"token": "s", "vertex": "a"}, {"token": "t", "vertex": "b"}],
//!   "matroid": {"type": "uniform", "rank": 1},
//!   "bounds": {"lower": {"a": 1}, "upper": {"b": "inf"}},
//!   "k": 1
//! }
//! ```
//!
//! Token `i` of the core spec is the `i`-th entry of `roots`. Rank tables are
//! indexed by token bit pattern. A `spanning` document takes only `vertices`,
//! `hyperedges` and `k`; its tokens are named `t0`, `t1`, ...

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use fforge_core::matroid::{free, uniform, GenPartitionMatroid, GenPartitionSpec, TableMatroid};
use fforge_core::oracle::verify_matroid_axioms;
use fforge_core::{Bound, DynMatroid, ElementSet, Hypergraph, ProblemKind, ProblemSpec, RootMultiset, VertexSet};

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "fforge-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub problem: String,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub hyperedges: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roots: Vec<RootEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matroid: Option<MatroidDoc>,
    #[serde(default, skip_serializing_if = "Bounds::is_empty")]
    pub bounds: Bounds,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootEntry {
    pub token: String,
    pub vertex: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum MatroidDoc {
    Free,
    Uniform { rank: usize },
    GenPartition { parts: Vec<Vec<String>>, lower: Vec<usize>, upper: Vec<usize>, size: usize },
    Table { ranks: Vec<usize> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lower: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub upper: BTreeMap<String, BoundDoc>,
}

impl Bounds {
    pub fn is_empty(&self) -> bool {
        self.lower.is_empty() && self.upper.is_empty()
    }
}

/// A non-negative integer, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundDoc(pub Bound);

impl Serialize for BoundDoc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Bound::Finite(x) => s.serialize_u64(x as u64),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for BoundDoc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct BoundVisitor;
        impl Visitor<'_> for BoundVisitor {
            type Value = BoundDoc;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BoundDoc, E> {
                usize::try_from(v).map(|v| BoundDoc(Bound::Finite(v))).map_err(E::custom)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<BoundDoc, E> {
                if v == "inf" {
                    Ok(BoundDoc(Bound::Infinite))
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(BoundVisitor)
    }
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub doc: InstanceDocument,
    pub kind: ProblemKind,
    pub spec: ProblemSpec,
    pub vertex_names: Vec<String>,
    pub token_names: Vec<String>,
}

impl Instance {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn token_index(&self, name: &str) -> Option<usize> {
        self.token_names.iter().position(|t| t == name)
    }

    pub fn vertex_set(&self, x: VertexSet) -> String {
        let names: Vec<&str> = x.iter().map(|v| self.vertex_names[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Header check, JSON decoding, then semantic validation.
pub fn parse_instance(text: &str) -> CliResult<Instance> {
    let (first, body) = text.split_once('\n').unwrap_or((text, ""));
    if first.trim_end() != HEADER {
        return Err(CliError::Syntax { line: 1, column: 1, message: format!("expected header line `{HEADER}`") });
    }
    let doc: InstanceDocument = serde_json::from_str(body).map_err(|e| CliError::Syntax {
        line: e.line() + 1,
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    build(doc)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

pub fn render_instance(doc: &InstanceDocument) -> String {
    let body = serde_json::to_string_pretty(doc).expect("documents always serialize");
    format!("{HEADER}\n{body}\n")
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn name_table(names: &[String], path: &str) -> CliResult<HashMap<String, usize>> {
    let mut table = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if !valid_name(name) {
            return Err(CliError::field(format!("{path}[{i}]"), format!("name `{name}` must be nonempty ASCII letters, digits or `_`")));
        }
        if table.insert(name.clone(), i).is_some() {
            return Err(CliError::field(format!("{path}[{i}]"), format!("duplicate name `{name}`")));
        }
    }
    Ok(table)
}

fn lookup(table: &HashMap<String, usize>, name: &str, path: String, what: &str) -> CliResult<usize> {
    table.get(name).copied().ok_or_else(|| CliError::field(path, format!("undeclared {what} `{name}`")))
}

fn build(doc: InstanceDocument) -> CliResult<Instance> {
    let kind = ProblemKind::from_name(&doc.problem).ok_or_else(|| {
        let known: Vec<&str> = ProblemKind::ALL.iter().map(|k| k.name()).collect();
        CliError::field("problem", format!("unknown problem `{}`; expected one of {}", doc.problem, known.join(", ")))
    })?;
    let vertices = name_table(&doc.vertices, "vertices")?;
    let n = doc.vertices.len();
    if n == 0 {
        return Err(CliError::field("vertices", "at least one vertex is required"));
    }
    let mut edges = Vec::with_capacity(doc.hyperedges.len());
    for (i, e) in doc.hyperedges.iter().enumerate() {
        let mut set = VertexSet::empty();
        for (j, name) in e.iter().enumerate() {
            let v = lookup(&vertices, name, format!("hyperedges[{i}][{j}]"), "vertex")?;
            if set.contains(v) {
                return Err(CliError::field(format!("hyperedges[{i}][{j}]"), format!("vertex `{name}` repeated")));
            }
            set.insert(v);
        }
        if set.len() < 2 {
            return Err(CliError::field(format!("hyperedges[{i}]"), "a hyperedge needs at least two distinct vertices"));
        }
        edges.push(set);
    }
    let instance = Hypergraph::from_sets(n, edges)?;

    if kind == ProblemKind::Spanning {
        let unused = [
            ("roots", !doc.roots.is_empty()),
            ("matroid", doc.matroid.is_some()),
            ("bounds", !doc.bounds.is_empty()),
            ("alpha", doc.alpha.is_some()),
            ("beta", doc.beta.is_some()),
            ("gamma", doc.gamma.is_some()),
        ];
        if let Some((field, _)) = unused.iter().find(|(_, set)| *set) {
            return Err(CliError::field(*field, "not used by problem `spanning`; roots are k tokens at the first vertex"));
        }
        let k = doc.k.ok_or_else(|| CliError::field("k", "problem `spanning` needs `k`"))?;
        let spec = ProblemSpec::spanning(instance, k)?;
        let token_names = (0..k).map(|i| format!("t{i}")).collect();
        return Ok(Instance { vertex_names: doc.vertices.clone(), token_names, kind, spec, doc });
    }

    let token_names: Vec<String> = doc.roots.iter().map(|r| r.token.clone()).collect();
    let tokens = name_table(&token_names, "roots")?;
    let mut placements = Vec::with_capacity(doc.roots.len());
    for (i, r) in doc.roots.iter().enumerate() {
        placements.push(lookup(&vertices, &r.vertex, format!("roots[{i}].vertex"), "vertex")?);
    }
    let roots = RootMultiset::new(n, placements)?;
    let matroid = build_matroid(doc.matroid.as_ref().unwrap_or(&MatroidDoc::Free), roots.all(), &tokens)?;
    let mut spec = ProblemSpec::new(instance, roots, matroid)?;

    let mut lower = vec![0; n];
    let mut upper = vec![Bound::Infinite; n];
    for (name, &f) in &doc.bounds.lower {
        lower[lookup(&vertices, name, format!("bounds.lower.{name}"), "vertex")?] = f;
    }
    for (name, g) in &doc.bounds.upper {
        upper[lookup(&vertices, name, format!("bounds.upper.{name}"), "vertex")?] = g.0;
    }
    spec = spec.with_bounds(lower, upper)?;
    let beta = doc.beta.unwrap_or(spec.roots.len());
    spec = spec.with_limits(doc.alpha.unwrap_or(0), beta);
    if let Some(k) = doc.k {
        spec = spec.with_tree_count(k);
    }
    if let Some(gamma) = doc.gamma {
        spec = spec.with_budget(gamma);
    }
    if kind == ProblemKind::Bounded && doc.k.is_none() {
        return Err(CliError::field("k", "problem `bounded` needs `k`"));
    }
    if kind == ProblemKind::Augment && doc.gamma.is_none() {
        return Err(CliError::field("gamma", "problem `augment` needs `gamma`"));
    }
    Ok(Instance { vertex_names: doc.vertices.clone(), token_names, kind, spec, doc })
}

fn build_matroid(doc: &MatroidDoc, ground: ElementSet, tokens: &HashMap<String, usize>) -> CliResult<DynMatroid> {
    Ok(match doc {
        MatroidDoc::Free => Arc::new(free(ground)),
        MatroidDoc::Uniform { rank } => Arc::new(uniform(ground, *rank).map_err(|e| CliError::field("matroid.rank", e.to_string()))?),
        MatroidDoc::GenPartition { parts, lower, upper, size } => {
            let mut sets = Vec::with_capacity(parts.len());
            for (i, part) in parts.iter().enumerate() {
                let mut set = ElementSet::empty();
                for (j, name) in part.iter().enumerate() {
                    set.insert(lookup(tokens, name, format!("matroid.parts[{i}][{j}]"), "token")?);
                }
                sets.push(set);
            }
            let spec = GenPartitionSpec { parts: sets, lower: lower.clone(), upper: upper.clone(), size: *size };
            let m = GenPartitionMatroid::new(spec).map_err(|e| CliError::field("matroid", e.to_string()))?;
            Arc::new(m)
        }
        MatroidDoc::Table { ranks } => {
            let table = TableMatroid::new(ground.len(), ranks.clone()).map_err(|e| CliError::field("matroid.ranks", e.to_string()))?;
            let report = verify_matroid_axioms(&table).map_err(|e| CliError::field("matroid.ranks", e.to_string()))?;
            if let Some(f) = report.failures.first() {
                return Err(CliError::field("matroid.ranks", format!("not a matroid rank function ({}: {})", f.rule, f.witness)));
            }
            Arc::new(table)
        }
    })
}
