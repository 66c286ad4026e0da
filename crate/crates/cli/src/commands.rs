use rand::Rng;

use fforge_core::oracle::{brute_exists_packing, brute_min_augmentation, validate_packing};
use fforge_core::random::{Generator, SpecShape};
use fforge_core::solvers::{augment_hypergraph, min_augmentation, solve, trim_hypergraph, Augmentation};
use fforge_core::{check, Condition, Error, Evaluator, Outcome, Packing, ProblemKind, ProblemSpec, ValidationReport, Verdict, Violation};

use crate::document::Instance;
use crate::error::{CliError, CliResult};
use crate::report::{ParsedResult, Report, EXIT_NEGATIVE};

/// Shape of the instances drawn by `verify --random`.
pub const RANDOM_SHAPE: SpecShape =
    SpecShape { max_vertices: 4, max_edges: 5, max_edge_size: 3, max_tokens: 3, max_bound: 2, max_total: 3 };

fn require(inst: &Instance, command: &str, kinds: &[ProblemKind]) -> CliResult<()> {
    if kinds.contains(&inst.kind) {
        return Ok(());
    }
    let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
    Err(CliError::Usage(format!("`{command}` needs problem {}; the instance has `{}`", names.join(" or "), inst.kind)))
}

const LIMITED_KINDS: [ProblemKind; 3] = [ProblemKind::Limited, ProblemKind::LimitedHyper, ProblemKind::Augment];

pub fn run_check(inst: &Instance) -> CliResult<Report> {
    let mut r = Report::new("check", inst.kind.name());
    match check(&inst.spec, inst.kind)? {
        Verdict::Feasible => {
            r.record("status feasible");
            r.say(format!("Every {} condition holds.", inst.kind));
        }
        Verdict::Violated(v) => r.violation(inst, &v),
    }
    Ok(r)
}

pub fn run_pack(inst: &Instance) -> CliResult<Report> {
    if inst.kind == ProblemKind::Augment {
        let mut r = augment_report(inst, "pack", inst.spec.budget_required()?)?;
        r.records[0] = "command pack".into();
        return Ok(r);
    }
    let mut r = Report::new("pack", inst.kind.name());
    match solve(&inst.spec, inst.kind)? {
        Outcome::Solved(p) => {
            r.record("status solved");
            r.packing(inst, &p);
            r.say(format!(
                "{} with {} using {} of {} edges.",
                count(p.members.len(), "tree"),
                count(p.root_count(), "root"),
                p.edge_ids().len(),
                inst.spec.instance.edge_count()
            ));
        }
        Outcome::Infeasible(v) => r.violation(inst, &v),
    }
    Ok(r)
}

/// With `gamma` set, adds exactly that many edges; otherwise the fewest possible.
pub fn run_augment(inst: &Instance) -> CliResult<Report> {
    require(inst, "augment", &LIMITED_KINDS)?;
    if let Some(gamma) = inst.spec.budget {
        return augment_report(inst, "augment", gamma);
    }
    match min_augmentation(&inst.spec)? {
        Some(gamma) => augment_report(inst, "augment", gamma),
        None => {
            let probe = inst.spec.clone().with_budget(0);
            let mut r = Report::new("augment", inst.kind.name());
            match check(&probe, ProblemKind::Augment)? {
                Verdict::Violated(v) => r.violation(inst, &v),
                Verdict::Feasible => return Err(Error::Internal("no augmentation exists but every condition holds".into()).into()),
            }
            r.say("No number of added edges can repair this condition.");
            Ok(r)
        }
    }
}

fn augment_report(inst: &Instance, command: &str, gamma: usize) -> CliResult<Report> {
    let mut r = Report::new(command, inst.kind.name());
    match augment_hypergraph(&inst.spec.clone().with_budget(gamma))? {
        Outcome::Solved(Augmentation { added, packing, .. }) => {
            r.record("status solved");
            r.record(format!("gamma {gamma}"));
            for &(u, v) in &added {
                r.record(format!("add {}-{}", inst.vertex_names[u], inst.vertex_names[v]));
            }
            r.packing(inst, &packing);
            r.say(format!(
                "Added {}; {} with {}.",
                count(added.len(), "edge"),
                count(packing.members.len(), "tree"),
                count(packing.root_count(), "root")
            ));
        }
        Outcome::Infeasible(v) => r.violation(inst, &v),
    }
    Ok(r)
}

/// Trims every hyperedge against the limited-packing cut functions of the instance.
pub fn run_trim(inst: &Instance) -> CliResult<Report> {
    require(inst, "trim", &LIMITED_KINDS)?;
    let spec = inst.spec.normalized(ProblemKind::LimitedHyper)?;
    let ev = Evaluator::new(&spec)?;
    let mut r = Report::new("trim", inst.kind.name());
    match trim_hypergraph(&spec.instance, |p| ev.p1(p), |p| ev.p2(p))? {
        Outcome::Solved(t) => {
            r.record("status solved");
            for (i, &(u, v)) in t.ends.iter().enumerate() {
                r.record(format!("edge {i} {} {}-{}", inst.vertex_set(spec.instance.edge(i)), inst.vertex_names[u], inst.vertex_names[v]));
            }
            let trimmed = spec.instance.edges().iter().filter(|e| e.len() > 2).count();
            r.say(format!("{} trimmed; the graph keeps e(P) >= max(p1(P), p2(P)) for every partition.", count(trimmed, "hyperedge")));
        }
        Outcome::Infeasible(v) => r.violation(inst, &v),
    }
    Ok(r)
}

/// Solver, checker and brute-force oracles must all agree on `spec`.
pub fn oracle_suite(spec: &ProblemSpec, kind: ProblemKind) -> CliResult<(ValidationReport, Vec<String>)> {
    let mut report = ValidationReport::default();
    let mut notes = Vec::new();
    let verdict = check(spec, kind)?;
    let (outcome, packed_in) = if kind == ProblemKind::Augment {
        match augment_hypergraph(spec)? {
            Outcome::Solved(a) => {
                let extended = ProblemSpec { instance: a.instance, budget: None, ..spec.clone() };
                (Outcome::Solved(a.packing), Some(extended.normalized(ProblemKind::LimitedHyper)?))
            }
            Outcome::Infeasible(v) => (Outcome::Infeasible(v), None),
        }
    } else {
        (solve(spec, kind)?, Some(spec.normalized(kind)?))
    };
    if verdict.is_feasible() != outcome.is_solved() {
        report.fail(
            "solver-agrees-with-check",
            format!("check feasible = {}, solver solved = {}", verdict.is_feasible(), outcome.is_solved()),
        );
    }
    if let (Outcome::Solved(p), Some(target)) = (&outcome, &packed_in) {
        for f in validate_packing(p, target).failures {
            report.fail("packing-valid", format!("{}: {}", f.rule, f.witness));
        }
    }
    if let Verdict::Violated(v) = &verdict {
        certify(&mut report, spec, v)?;
    }
    match brute_exists_packing(spec, kind) {
        Ok(exists) => {
            notes.push("brute-force packing search ran".into());
            if exists != verdict.is_feasible() {
                report.fail("oracle-agrees", format!("brute force says {exists}, check says {}", verdict.is_feasible()));
            }
        }
        Err(Error::CapExceeded { what, got, cap }) => notes.push(format!("brute-force packing search skipped: {what} is {got}, cap {cap}")),
        Err(e) => return Err(e.into()),
    }
    if LIMITED_KINDS.contains(&kind) {
        match brute_min_augmentation(spec) {
            Ok(brute) => {
                notes.push("brute-force augmentation search ran".into());
                let formula = min_augmentation(spec)?;
                if brute != formula {
                    report.fail("augmentation-minimum", format!("brute force {brute:?}, solver {formula:?}"));
                }
            }
            Err(Error::CapExceeded { what, got, cap }) => {
                notes.push(format!("brute-force augmentation skipped: {what} is {got}, cap {cap}"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((report, notes))
}

fn certify(report: &mut ValidationReport, spec: &ProblemSpec, v: &Violation) -> CliResult<()> {
    match v.reverify(spec) {
        Ok(d) if d == v.deficit && d > 0 => {}
        Ok(d) => report.fail("certificate", format!("{v} recomputes to deficit {d}")),
        Err(e) => report.fail("certificate", format!("{v} cannot be recomputed: {e}")),
    }
    Ok(())
}

fn finish(mut r: Report, report: ValidationReport, notes: Vec<String>) -> Report {
    if report.ok() {
        r.record("report ok");
    } else {
        r.record("report failed");
        for f in &report.failures {
            r.record(format!("failure {} {}", f.rule, f.witness));
        }
        r.exit = EXIT_NEGATIVE;
    }
    r.prose.extend(notes);
    r
}

pub fn run_verify(inst: &Instance) -> CliResult<Report> {
    let (report, notes) = oracle_suite(&inst.spec, inst.kind)?;
    Ok(finish(Report::new("verify", inst.kind.name()), report, notes))
}

/// Re-checks a printed result of `check`, `pack`, `augment` or `trim` against the instance.
pub fn run_verify_against(inst: &Instance, result: &str) -> CliResult<Report> {
    let parsed = ParsedResult::parse(result)?;
    let (_, command) = parsed.one("command")?;
    let (_, status) = parsed.one("status")?;
    let mut report = ValidationReport::default();
    let mut r = Report::new("verify", inst.kind.name());
    r.record(format!("against {command}"));
    match status {
        "infeasible" => {
            let v = parsed.violation(inst)?;
            if v.condition == Condition::TrimCover {
                let spec = inst.spec.normalized(ProblemKind::LimitedHyper)?;
                let ev = Evaluator::new(&spec)?;
                let fforge_core::Witness::Partition(p) = &v.witness else {
                    return Err(CliError::Result { line: 0, message: "trim-cover needs a partition witness".into() });
                };
                let d = ev.p1(p).max(ev.p2(p)) - ev.e(p);
                if d != v.deficit || d <= 0 {
                    report.fail("certificate", format!("{v} recomputes to deficit {d}"));
                }
            } else {
                let spec = if v.condition.depends_on_budget() {
                    inst.spec.clone().with_budget(gamma_of(inst, &parsed)?)
                } else {
                    inst.spec.clone()
                };
                certify(&mut report, &spec, &v)?;
            }
        }
        "feasible" => {
            if !check(&inst.spec, inst.kind)?.is_feasible() {
                report.fail("verdict", "the instance violates a condition");
            }
        }
        "solved" if command == "trim" => verify_trim(inst, &parsed, &mut report)?,
        "solved" => {
            let packing = parsed.packing(inst)?;
            let target = if parsed.all("gamma").next().is_some() {
                let added = parsed.added(inst)?;
                let instance = inst.spec.instance.with_extra_edges(added.iter().map(|&(u, v)| [u, v].into_iter().collect()))?;
                let (_, g) = parsed.one("gamma")?;
                if g.parse::<usize>().ok() != Some(added.len()) {
                    report.fail("gamma", format!("gamma {g} but {} edges added", added.len()));
                }
                ProblemSpec { instance, budget: None, ..inst.spec.clone() }.normalized(ProblemKind::LimitedHyper)?
            } else {
                inst.spec.normalized(inst.kind)?
            };
            check_tree_count(&parsed, &packing, &mut report);
            for f in validate_packing(&packing, &target).failures {
                report.fail("packing-valid", format!("{}: {}", f.rule, f.witness));
            }
        }
        other => return Err(CliError::Result { line: 0, message: format!("unknown status `{other}`") }),
    }
    Ok(finish(r, report, Vec::new()))
}

fn gamma_of(inst: &Instance, parsed: &ParsedResult) -> CliResult<usize> {
    match parsed.all("gamma").next() {
        Some((line, g)) => g.parse().map_err(|_| CliError::Result { line, message: format!("bad gamma `{g}`") }),
        None => Ok(inst.spec.budget_required()?),
    }
}

fn check_tree_count(parsed: &ParsedResult, packing: &Packing, report: &mut ValidationReport) {
    if let Some((_, n)) = parsed.all("trees").next() {
        if n.parse::<usize>().ok() != Some(packing.members.len()) {
            report.fail("tree-count", format!("`trees {n}` but {} tree records", packing.members.len()));
        }
    }
}

fn verify_trim(inst: &Instance, parsed: &ParsedResult, report: &mut ValidationReport) -> CliResult<()> {
    let spec = inst.spec.normalized(ProblemKind::LimitedHyper)?;
    let h = &spec.instance;
    let mut pairs = Vec::with_capacity(h.edge_count());
    for (line, rest) in parsed.all("edge") {
        let words: Vec<&str> = rest.split_whitespace().collect();
        let bad = |message: String| CliError::Result { line, message };
        let [id, _, pair] = words[..] else { return Err(bad(format!("expected `edge <id> <set> <u-v>`, found `{rest}`"))) };
        let id: usize = id.parse().map_err(|_| bad(format!("bad edge id `{id}`")))?;
        let (u, v) = pair.split_once('-').ok_or_else(|| bad(format!("bad pair `{pair}`")))?;
        let u = inst.vertex_index(u).ok_or_else(|| bad(format!("unknown vertex `{u}`")))?;
        let v = inst.vertex_index(v).ok_or_else(|| bad(format!("unknown vertex `{v}`")))?;
        if id != pairs.len() || id >= h.edge_count() {
            report.fail("trim-order", format!("edge record {id} out of order"));
            return Ok(());
        }
        if u == v || !h.edge(id).contains(u) || !h.edge(id).contains(v) {
            report.fail(
                "trim-ends",
                format!("edge {id}: {}-{} is not a pair inside the hyperedge", inst.vertex_names[u], inst.vertex_names[v]),
            );
        }
        pairs.push((u, v));
    }
    if pairs.len() != h.edge_count() {
        report.fail("trim-order", format!("{} edge records for {} hyperedges", pairs.len(), h.edge_count()));
        return Ok(());
    }
    let ev = Evaluator::new(&spec)?;
    let graph = fforge_core::Hypergraph::graph(spec.vertex_count(), &pairs)?;
    for p in fforge_core::partition::enumerate_partitions(spec.vertex_count())? {
        let gap = ev.p1(&p).max(ev.p2(&p)) - graph.crossing_count(&p) as i64;
        if gap > 0 {
            report.fail("trim-cover", format!("partition {p} short by {gap}"));
            break;
        }
    }
    Ok(())
}

/// Runs [`oracle_suite`] on `count` generated instances for every applicable kind.
pub fn run_verify_random(count: usize, seed: u64) -> CliResult<Report> {
    let mut gen = Generator::new(seed);
    let mut r = Report::new("verify", "random");
    r.record(format!("seed {seed}"));
    let mut all = ValidationReport::default();
    let mut runs = 0;
    for i in 0..count {
        let spec = gen.spec(RANDOM_SHAPE)?;
        let gamma = gen.rng().gen_range(0..=2);
        let graph = spec.instance.is_graph();
        for kind in ProblemKind::ALL {
            if kind == ProblemKind::Spanning || (kind.needs_graph() && !graph) {
                continue;
            }
            let spec = if kind == ProblemKind::Augment { spec.clone().with_budget(gamma) } else { spec.clone() };
            let (report, _) = oracle_suite(&spec, kind)?;
            runs += 1;
            let status = if report.ok() { "ok" } else { "failed" };
            r.record(format!("instance {i} {kind} {status}"));
            for f in report.failures {
                all.fail(f.rule, format!("instance {i} {kind}: {}", f.witness));
            }
        }
    }
    r.say(format!("{runs} solver/checker/oracle comparisons on {count} instances from seed {seed}."));
    Ok(finish(r, all, Vec::new()))
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}
