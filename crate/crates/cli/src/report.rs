//! The result format: a machine section between `fforge-result v1` and
//! `end`, one `key value...` record per line, then free prose.
//!
//! ```text
//! fforge-result v1
//! command pack
//! problem spanning
//! status solved
//! trees 2
//! tree 0 roots t0@a edges 0:a-b 2:a-c 4:b-d
//! tree 1 roots t1@a edges 1:a-c 3:a-d 5:c-d
//! end
//!
//! 2 trees using 6 of 6 edges.
//! ```
//!
//! Names are the instance's vertex and token names; edge ids index the
//! instance's `hyperedges`, with added edges numbered after them.

use fforge_core::{Condition, PackedEdge, Packing, Partition, Root, RootedForest, VertexSet, Violation, Witness};

use crate::document::Instance;
use crate::error::{CliError, CliResult};

pub const RESULT_HEADER: &str = "fforge-result v1";

/// Exit status 0: solved, feasible or verified.
pub const EXIT_OK: u8 = 0;
/// Exit status 1: infeasible (a certificate is printed) or verification failed.
pub const EXIT_NEGATIVE: u8 = 1;
/// Exit status 2: usage, input or cap errors.
pub const EXIT_ERROR: u8 = 2;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<String>,
    pub prose: Vec<String>,
    pub exit: u8,
}

impl Report {
    pub fn new(command: &str, problem: &str) -> Self {
        Self { records: vec![format!("command {command}"), format!("problem {problem}")], prose: Vec::new(), exit: EXIT_OK }
    }

    pub fn record(&mut self, line: impl Into<String>) {
        self.records.push(line.into());
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.prose.push(line.into());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(RESULT_HEADER);
        out.push('\n');
        for r in &self.records {
            out.push_str(r);
            out.push('\n');
        }
        out.push_str("end\n");
        if !self.prose.is_empty() {
            out.push('\n');
            for p in &self.prose {
                out.push_str(p);
                out.push('\n');
            }
        }
        out
    }

    /// Records `status infeasible` and the certificate; sets exit status 1.
    pub fn violation(&mut self, inst: &Instance, v: &Violation) {
        self.record("status infeasible");
        self.record(format!("condition {}", v.condition));
        self.record(format!("witness {}", witness(inst, &v.witness)));
        self.record(format!("deficit {}", v.deficit));
        self.say(format!(
            "Condition {} ({}) fails at {} by {}.",
            v.condition,
            v.condition.statement(),
            witness(inst, &v.witness),
            v.deficit
        ));
        self.exit = EXIT_NEGATIVE;
    }

    pub fn packing(&mut self, inst: &Instance, p: &Packing) {
        self.record(format!("trees {}", p.members.len()));
        for (i, m) in p.members.iter().enumerate() {
            let mut line = format!("tree {i} roots");
            for r in &m.roots {
                line.push_str(&format!(" {}@{}", inst.token_names[r.token], inst.vertex_names[r.vertex]));
            }
            line.push_str(" edges");
            for e in &m.edges {
                line.push_str(&format!(" {}:{}-{}", e.edge, inst.vertex_names[e.ends.0], inst.vertex_names[e.ends.1]));
            }
            self.record(line);
        }
    }
}

pub fn witness(inst: &Instance, w: &Witness) -> String {
    match w {
        Witness::Global => "global".to_string(),
        Witness::Vertex(v) => format!("vertex {}", inst.vertex_names[*v]),
        Witness::Subset(y) => format!("subset {}", inst.vertex_set(*y)),
        Witness::Partition(p) => {
            let blocks: Vec<String> = p.blocks().iter().map(|&b| inst.vertex_set(b)).collect();
            format!("partition {}", blocks.join(" "))
        }
    }
}

/// The machine section of a result, as `(line number, record)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedResult {
    pub records: Vec<(usize, String)>,
}

impl ParsedResult {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        match lines.next() {
            Some((_, RESULT_HEADER)) => {}
            _ => return Err(CliError::Result { line: 1, message: format!("expected `{RESULT_HEADER}`") }),
        }
        let mut records = Vec::new();
        for (line, text) in lines {
            if text == "end" {
                return Ok(Self { records });
            }
            records.push((line, text.to_string()));
        }
        Err(CliError::Result { line: text.lines().count(), message: "missing `end`".into() })
    }

    /// Values of every record whose key is `key`.
    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
        self.records.iter().filter_map(move |(line, r)| {
            let (k, rest) = r.split_once(' ').unwrap_or((r.as_str(), ""));
            (k == key).then_some((*line, rest))
        })
    }

    pub fn one<'a>(&'a self, key: &'a str) -> CliResult<(usize, &'a str)> {
        self.all(key).next().ok_or_else(|| CliError::Result { line: 0, message: format!("missing `{key}` record") })
    }

    pub fn violation(&self, inst: &Instance) -> CliResult<Violation> {
        let (line, name) = self.one("condition")?;
        let condition =
            Condition::from_name(name).ok_or_else(|| CliError::Result { line, message: format!("unknown condition `{name}`") })?;
        let (line, w) = self.one("witness")?;
        let witness = parse_witness(inst, w).map_err(|message| CliError::Result { line, message })?;
        let (line, d) = self.one("deficit")?;
        let deficit = d.parse().map_err(|_| CliError::Result { line, message: format!("bad deficit `{d}`") })?;
        Ok(Violation { condition, witness, deficit })
    }

    pub fn packing(&self, inst: &Instance) -> CliResult<Packing> {
        let mut members = Vec::new();
        for (line, rest) in self.all("tree") {
            members.push(parse_tree(inst, rest).map_err(|message| CliError::Result { line, message })?);
        }
        Ok(Packing { members })
    }

    /// `add u-v` records as vertex pairs.
    pub fn added(&self, inst: &Instance) -> CliResult<Vec<(usize, usize)>> {
        self.all("add").map(|(line, pair)| parse_pair(inst, pair).map_err(|message| CliError::Result { line, message })).collect()
    }
}

fn vertex(inst: &Instance, name: &str) -> Result<usize, String> {
    inst.vertex_index(name).ok_or_else(|| format!("unknown vertex `{name}`"))
}

fn parse_pair(inst: &Instance, pair: &str) -> Result<(usize, usize), String> {
    let (u, v) = pair.split_once('-').ok_or_else(|| format!("expected `u-v`, found `{pair}`"))?;
    Ok((vertex(inst, u)?, vertex(inst, v)?))
}

fn parse_set(inst: &Instance, text: &str) -> Result<VertexSet, String> {
    let inner = text.strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or_else(|| format!("expected `{{...}}`, found `{text}`"))?;
    inner.split(',').filter(|s| !s.is_empty()).map(|name| vertex(inst, name)).collect()
}

fn parse_witness(inst: &Instance, text: &str) -> Result<Witness, String> {
    let (kind, rest) = text.split_once(' ').unwrap_or((text, ""));
    match kind {
        "global" => Ok(Witness::Global),
        "vertex" => Ok(Witness::Vertex(vertex(inst, rest)?)),
        "subset" => Ok(Witness::Subset(parse_set(inst, rest)?)),
        "partition" => {
            let blocks = rest.split_whitespace().map(|b| parse_set(inst, b)).collect::<Result<Vec<_>, _>>()?;
            Partition::new(inst.vertex_names.len(), blocks).map(Witness::Partition).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown witness kind `{other}`")),
    }
}

fn parse_tree(inst: &Instance, text: &str) -> Result<RootedForest, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let roots_at = words.iter().position(|&w| w == "roots").ok_or("missing `roots`")?;
    let edges_at = words.iter().position(|&w| w == "edges").ok_or("missing `edges`")?;
    if roots_at != 1 || edges_at < roots_at {
        return Err("expected `tree <i> roots ... edges ...`".into());
    }
    let mut forest = RootedForest::default();
    for r in &words[roots_at + 1..edges_at] {
        let (token, v) = r.split_once('@').ok_or_else(|| format!("expected `token@vertex`, found `{r}`"))?;
        let token = inst.token_index(token).ok_or_else(|| format!("unknown token `{token}`"))?;
        forest.roots.push(Root { vertex: vertex(inst, v)?, token });
    }
    for e in &words[edges_at + 1..] {
        let (id, pair) = e.split_once(':').ok_or_else(|| format!("expected `id:u-v`, found `{e}`"))?;
        let edge = id.parse().map_err(|_| format!("bad edge id `{id}`"))?;
        forest.edges.push(PackedEdge { edge, ends: parse_pair(inst, pair)? });
    }
    Ok(forest)
}
