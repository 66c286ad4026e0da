use crate::bits::{ElementSet, VertexSet};
use crate::feasibility::ProblemSpec;
use crate::matroid::RankOracle;
use crate::oracle::ValidationReport;
use crate::solvers::{Packing, RootedForest};

/// Checks `packing` against every packing property `spec` demands.
///
/// Rules, in report order: `trim`, `forest`, `one-root-per-component`,
/// `edge-disjoint`, `roots-in-S`, `basis`, `bounds`, `limits`, `count`.
pub fn validate_packing(packing: &Packing, spec: &ProblemSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let g = &spec.instance;
    let n = g.vertex_count();

    for (i, m) in packing.members.iter().enumerate() {
        for e in &m.edges {
            let (u, v) = e.ends;
            let fits = e.edge < g.edge_count() && u != v && u < n && v < n && g.edge(e.edge).contains(u) && g.edge(e.edge).contains(v);
            if !fits {
                report.fail("trim", format!("member {i}, edge {} trimmed to {u}-{v}", e.edge));
            }
        }
        for r in &m.roots {
            if r.vertex >= n {
                report.fail("trim", format!("member {i}, root at vertex {}", r.vertex));
            }
        }
    }
    if !report.ok() {
        return report;
    }

    let components: Vec<Option<Vec<VertexSet>>> = packing.members.iter().map(|m| components(m, n)).collect();
    for (i, c) in components.iter().enumerate() {
        if c.is_none() {
            report.fail("forest", format!("member {i} has a cycle"));
        }
    }
    for (i, (m, c)) in packing.members.iter().zip(&components).enumerate() {
        let Some(c) = c else { continue };
        for comp in c {
            let roots = m.roots.iter().filter(|r| comp.contains(r.vertex)).count();
            if roots != 1 {
                report.fail("one-root-per-component", format!("member {i}, component {comp} has {roots} roots"));
            }
        }
    }

    let mut used = ElementSet::empty();
    for (i, m) in packing.members.iter().enumerate() {
        for e in &m.edges {
            if used.contains(e.edge) {
                report.fail("edge-disjoint", format!("edge {} reused by member {i}", e.edge));
            }
            used.insert(e.edge);
        }
    }

    let mut tokens = ElementSet::empty();
    let mut roots_ok = true;
    for (i, m) in packing.members.iter().enumerate() {
        for r in &m.roots {
            let known = r.token < spec.roots.len() && spec.roots.vertex_of(r.token) == r.vertex;
            if !known || tokens.contains(r.token) {
                roots_ok = false;
                report.fail("roots-in-S", format!("member {i}, token {} at vertex {}", r.token, r.vertex));
            }
            if r.token < ElementSet::CAPACITY {
                tokens.insert(r.token);
            }
        }
    }

    if roots_ok {
        let rank_s = spec.matroid.rank(spec.matroid.ground());
        for v in 0..n {
            let through: ElementSet = packing
                .members
                .iter()
                .zip(&components)
                .filter_map(|(m, c)| {
                    let comp = c.as_ref()?.iter().find(|comp| comp.contains(v))?;
                    m.roots.iter().find(|r| comp.contains(r.vertex)).map(|r| r.token)
                })
                .collect();
            if !(spec.matroid.is_independent(through) && through.len() == rank_s) {
                report.fail("basis", format!("vertex {v}, roots {through}"));
            }
        }
    }

    let mut at = vec![0usize; n];
    for m in &packing.members {
        for r in &m.roots {
            at[r.vertex] += 1;
        }
    }
    for (v, &count) in at.iter().enumerate() {
        if count < spec.lower[v] || !spec.upper[v].admits(count) {
            report.fail("bounds", format!("vertex {v} roots {count} outside [{}, {}]", spec.lower[v], spec.upper[v]));
        }
    }
    let total = packing.root_count();
    if total < spec.min_total || total > spec.max_total {
        report.fail("limits", format!("{total} roots outside [{}, {}]", spec.min_total, spec.max_total));
    }
    if let Some(k) = spec.tree_count {
        if total != k {
            report.fail("count", format!("{total} roots, {k} required"));
        }
    }
    report
}

/// Vertex sets of the components of `m`, isolated roots included; `None`
/// if the trimmed edges contain a cycle.
fn components(m: &RootedForest, n: usize) -> Option<Vec<VertexSet>> {
    let mut label: Vec<usize> = (0..n).collect();
    fn find(label: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while label[x] != x {
            label[x] = label[label[x]];
            x = label[x];
        }
        x
    }
    for e in &m.edges {
        let (a, b) = (find(&mut label, e.ends.0), find(&mut label, e.ends.1));
        if a == b {
            return None;
        }
        label[a] = b;
    }
    let present = m.vertices();
    let mut out: Vec<VertexSet> = Vec::new();
    let mut seen = VertexSet::empty();
    for v in present {
        if seen.contains(v) {
            continue;
        }
        let rv = find(&mut label, v);
        let comp: VertexSet = present.iter().filter(|&u| find(&mut label, u) == rv).collect();
        seen = seen | comp;
        out.push(comp);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::ProblemKind;
    use crate::instance::{Hypergraph, RootMultiset};
    use crate::matroid::uniform;
    use crate::solvers::{PackedEdge, Root};
    use std::sync::Arc;

    fn tree(token: usize, edges: &[(usize, (usize, usize))]) -> RootedForest {
        RootedForest {
            roots: vec![Root { vertex: 0, token }],
            edges: edges.iter().map(|&(edge, ends)| PackedEdge { edge, ends }).collect(),
        }
    }

    fn triangle_spec(k: usize) -> ProblemSpec {
        let g = Hypergraph::graph(3, &[(0, 1), (1, 2), (0, 2), (0, 1), (1, 2)]).unwrap();
        ProblemSpec::spanning(g, k).unwrap().normalized(ProblemKind::Spanning).unwrap()
    }

    #[test]
    fn spanning_packing_ok() {
        let p = Packing { members: vec![tree(0, &[(0, (0, 1)), (1, (1, 2))]), tree(1, &[(2, (0, 2)), (3, (0, 1))])] };
        assert!(validate_packing(&p, &triangle_spec(2)).ok());
    }

    #[test]
    fn shared_edge_reported() {
        let p = Packing { members: vec![tree(0, &[(0, (0, 1)), (1, (1, 2))]), tree(1, &[(2, (0, 2)), (0, (0, 1))])] };
        let r = validate_packing(&p, &triangle_spec(2));
        assert!(r.has("edge-disjoint"));
        assert_eq!(r.failures.iter().find(|f| f.rule == "edge-disjoint").unwrap().witness, "edge 0 reused by member 1");
    }

    #[test]
    fn cycle_reported() {
        let p = Packing { members: vec![tree(0, &[(0, (0, 1)), (1, (1, 2)), (2, (0, 2))])] };
        assert!(validate_packing(&p, &triangle_spec(1)).has("forest"));
    }

    #[test]
    fn dependent_roots_through_a_vertex() {
        // Tree 0 spans both vertices and tree 1 is a lone root at 1, so
        // vertex 1 sees {0,1}, dependent in the rank-1 uniform matroid.
        let g = Hypergraph::graph(2, &[(0, 1)]).unwrap();
        let roots = RootMultiset::new(2, vec![0, 1]).unwrap();
        let m = Arc::new(uniform(roots.all(), 1).unwrap());
        let spec = ProblemSpec::new(g, roots, m).unwrap();
        let p = Packing {
            members: vec![
                RootedForest { roots: vec![Root { vertex: 0, token: 0 }], edges: vec![PackedEdge { edge: 0, ends: (0, 1) }] },
                RootedForest { roots: vec![Root { vertex: 1, token: 1 }], edges: vec![] },
            ],
        };
        let r = validate_packing(&p, &spec);
        assert!(r.has("basis"));
        assert_eq!(r.failures[0].witness, "vertex 1, roots {0,1}");
        let single = Packing { members: vec![p.members[0].clone()] };
        assert!(validate_packing(&single, &spec).ok());
    }

    #[test]
    fn bad_trim_stops_early() {
        let p = Packing { members: vec![tree(0, &[(0, (0, 2))])] };
        let r = validate_packing(&p, &triangle_spec(1));
        assert_eq!(r.failures.len(), 1);
        assert!(r.has("trim"));
    }

    #[test]
    fn root_count_enforced() {
        let p = Packing { members: vec![tree(0, &[(0, (0, 1)), (1, (1, 2))])] };
        let r = validate_packing(&p, &triangle_spec(2));
        assert!(r.has("basis") && r.has("limits") && r.has("count"));
    }
}
