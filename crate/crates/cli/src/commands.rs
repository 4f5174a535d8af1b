//! Subcommand bodies. Each returns the exit code, or a message for exit 2.

use std::fs;
use std::path::{Path, PathBuf};

use une_core::cnf::{normalize, parse_dimacs};
use une_core::formats::{parse_instance, parse_witness, to_dot, write_graph, write_role_map, write_witness, Instance};
use une_core::game::check_uniform_equilibrium;
use une_core::planarizer::{planarize, GadgetRegistry};
use une_core::reduction::build_reduction_graph;
use une_core::search::find_undominated_out_regular;
use une_core::{Budget, CnfFormula, Outcome, Role, Verdict, VertexSet, WeightedBipartiteDigraph};
use une_harness::{corpus, crosscheck_equivalence, end_to_end, RandomGameSpec, VerificationReport};

use crate::{EXIT_BUDGET, EXIT_NEGATIVE};

type CmdResult = Result<u8, String>;

pub const REDUCTION_STAGES: &[&str] = &[
    "structure",
    "sat-oracle",
    "finder-g",
    "witness-g",
    "equilibrium-g",
    "positive-out-weight",
];
pub const PLANAR_STAGES: &[&str] = &["planarity", "lift-h", "equilibrium-h", "project", "finder-h"];

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

/// Fails unless the file's directory exists, so that nothing is computed
/// for an output that cannot be written.
fn check_writable(path: &Path) -> Result<(), String> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if dir.is_dir() && !path.is_dir() {
        Ok(())
    } else {
        Err(format!("{}: cannot write here", path.display()))
    }
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn in_file<T>(path: &Path, r: une_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn load_formula(path: &Path) -> Result<(CnfFormula, une_core::cnf::NormalizationReport), String> {
    let text = read(path)?;
    let raw = in_file(path, parse_dimacs(&text))?;
    in_file(path, normalize(&raw))
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    let text = read(path)?;
    in_file(path, parse_instance(&text))
}

fn as_graph(path: &Path, instance: &Instance) -> Result<WeightedBipartiteDigraph, String> {
    in_file(path, instance.clone().into_graph())
}

pub fn reduce(cnf: &Path, output: &Path, planar: bool, normalization: Option<&Path>) -> CmdResult {
    let roles_path = output.with_extension("roles");
    let planar_paths = ["planar.graph", "planar.roles", "planar.registry"].map(|ext| output.with_extension(ext));
    let mut outputs: Vec<&Path> = vec![output, &roles_path];
    if planar {
        outputs.extend(planar_paths.iter().map(PathBuf::as_path));
    }
    outputs.extend(normalization);
    for p in &outputs {
        check_writable(p)?;
    }

    let (formula, report) = load_formula(cnf)?;
    if !report.is_identity() {
        eprintln!(
            "normalized: {} -> {} variables, {} -> {} clauses, {} edits",
            report.vars_before,
            report.vars_after,
            report.clauses_before,
            report.clauses_after,
            report.edits.len()
        );
    }
    if let Some(p) = normalization {
        write(p, &report.to_text())?;
    }
    let rg = in_file(cnf, build_reduction_graph(&formula))?;
    let g = rg.graph();
    write(output, &write_graph(g))?;
    let roles: Vec<(String, String)> = (0..g.num_vertices())
        .map(|v| (g.name(v).to_string(), rg.role(v).to_string()))
        .collect();
    write(&roles_path, &write_role_map(&roles))?;
    println!(
        "G: {} vertices, {} arcs, heavy weight {}",
        g.num_vertices(),
        g.num_arcs(),
        rg.heavy_weight()
    );

    if planar {
        let pr = in_file(cnf, planarize(&rg))?;
        let h = pr.graph();
        write(&planar_paths[0], &write_graph(h))?;
        let roles: Vec<(String, String)> = (0..h.num_vertices())
            .map(|v| (h.name(v).to_string(), pr.role(v).to_string()))
            .collect();
        write(&planar_paths[1], &write_role_map(&roles))?;
        write(&planar_paths[2], &pr.registry().to_text())?;
        println!(
            "H: {} vertices, {} arcs, {} gadgets",
            h.num_vertices(),
            h.num_arcs(),
            pr.gadgets().len()
        );
    }
    Ok(0)
}

pub fn solve(instance_path: &Path, output: Option<&Path>, budget: Budget) -> CmdResult {
    if let Some(p) = output {
        check_writable(p)?;
    }
    let instance = load_instance(instance_path)?;
    let graph = as_graph(instance_path, &instance)?;
    match in_file(instance_path, find_undominated_out_regular(&graph, budget))? {
        Outcome::Complete(Some(w)) => {
            let mut text = format!("# (alpha,beta)=({},{})\n", w.alpha, w.beta);
            if let Instance::Game(game) = &instance {
                let pair = in_file(instance_path, graph.support_pair(&w.subset))?;
                text.push_str(&format!("# support {}\n", pair.describe(game)));
            }
            text.push_str(&write_witness(&graph, &w.subset));
            print!("{text}");
            if let Some(p) = output {
                write(p, &text)?;
            }
            Ok(0)
        }
        Outcome::Complete(None) => {
            println!("none");
            Ok(0)
        }
        Outcome::Exhausted { expanded } => {
            println!("budget-exhausted");
            eprintln!("stopped after {expanded} search nodes");
            Ok(EXIT_BUDGET)
        }
    }
}

pub fn check(instance_path: &Path, witness_path: &Path) -> CmdResult {
    let instance = load_instance(instance_path)?;
    let witness_text = read(witness_path)?;
    let graph = as_graph(instance_path, &instance)?;
    let set = in_file(witness_path, parse_witness(&graph, &witness_text))?;
    let verdict = in_file(instance_path, graph.verify(&set))?;
    println!("{}", verdict.describe(&graph));
    let mut ok = matches!(verdict, Verdict::Accepted { .. });
    if let Instance::Game(game) = &instance {
        let pair = in_file(instance_path, graph.support_pair(&set))?;
        let ne = in_file(instance_path, check_uniform_equilibrium(game, &pair))?;
        println!(
            "{} {}",
            pair.describe(game),
            if ne { "is a uniform Nash equilibrium" } else { "is not a uniform Nash equilibrium" }
        );
        ok &= ne;
    }
    Ok(if ok { 0 } else { EXIT_NEGATIVE })
}

pub struct VerifyOptions<'a> {
    pub equivalence: bool,
    /// Stages kept from the formula pipeline; `None` keeps all, an empty
    /// slice skips the formulas.
    pub stages: Option<&'a [&'a str]>,
    pub seed: Option<u64>,
    pub trials: usize,
    pub max_size: usize,
    pub cnf: &'a [PathBuf],
    pub report: Option<&'a Path>,
    pub budget: Budget,
}

pub fn verify(opts: &VerifyOptions) -> CmdResult {
    if let Some(p) = opts.report {
        check_writable(p)?;
    }
    let seed = match (opts.equivalence, opts.seed) {
        (true, None) => return Err("--seed is required for randomized suites".into()),
        (true, s) => s,
        (false, _) => None,
    };
    if opts.equivalence && !(1..=5).contains(&opts.max_size) {
        return Err("--max-size must be between 1 and 5".into());
    }
    let formulas: Vec<(String, CnfFormula)> = match opts.stages {
        Some([]) => Vec::new(),
        _ if opts.cnf.is_empty() => corpus().into_iter().map(|e| (e.name.to_string(), e.formula())).collect(),
        _ => opts
            .cnf
            .iter()
            .map(|p| load_formula(p).map(|(f, _)| (p.display().to_string(), f)))
            .collect::<Result<_, _>>()?,
    };

    let mut reports: Vec<VerificationReport> = Vec::new();
    if let Some(seed) = seed {
        for (i, weights) in [&[1i64][..], &[1, 2][..]].into_iter().enumerate() {
            let spec = RandomGameSpec::square(opts.max_size, weights, 0.5, seed.wrapping_add(i as u64));
            reports.push(crosscheck_equivalence(&spec, opts.trials));
        }
    }
    for (name, f) in &formulas {
        let full = in_file(Path::new(name), end_to_end(name, f, opts.budget))?;
        reports.push(match opts.stages {
            Some(stages) => full.restricted(stages),
            None => full,
        });
    }

    for r in &reports {
        print!("{}", r.to_text());
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    println!(
        "{} reports, {} failed: {}",
        reports.len(),
        failed,
        if failed == 0 { "pass" } else { "fail" }
    );
    if let Some(p) = opts.report {
        let text: Vec<String> = reports.iter().map(VerificationReport::to_key_value).collect();
        write(p, &text.join("\n"))?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_NEGATIVE })
}

fn require(graph: &WeightedBipartiteDigraph, role: Role) -> Result<usize, String> {
    let name = role.name();
    graph
        .index_of(&name)
        .ok_or_else(|| format!("no vertex `{name}`; gadget selection needs a compiled formula graph"))
}

fn variable_gadget(graph: &WeightedBipartiteDigraph, var: usize) -> Result<VertexSet, String> {
    let roles = [Role::X, Role::NotX, Role::Y, Role::NotY, Role::Z1, Role::Z2].map(|r| r(var));
    let mut members = roles.iter().map(|&r| require(graph, r)).collect::<Result<Vec<_>, _>>()?;
    members.push(require(graph, Role::A)?);
    VertexSet::from_indices(graph.num_vertices(), members).map_err(|e| e.to_string())
}

/// `C_j`, `a`, each `v_jk` and `u_jk`, and the literals the `u_jk` point at.
fn clause_gadget(graph: &WeightedBipartiteDigraph, clause: usize) -> Result<VertexSet, String> {
    let mut set = VertexSet::empty(graph.num_vertices());
    set.insert(require(graph, Role::Clause(clause))?);
    set.insert(require(graph, Role::A)?);
    for k in 0..3 {
        set.insert(require(graph, Role::V(clause, k))?);
        let u = require(graph, Role::U(clause, k))?;
        set.insert(u);
        for (t, _) in graph.out_arcs(u) {
            if matches!(Role::from_name(graph.name(*t)), Some(Role::X(_) | Role::NotX(_))) {
                set.insert(*t);
            }
        }
    }
    Ok(set)
}

/// Gadget index of a vertex named `g<index>_<role>`, if the registry has it.
fn gadget_cluster(name: &str, registry: &GadgetRegistry) -> Option<usize> {
    let rest = name.strip_prefix('g')?;
    let (index, _) = rest.split_once('_')?;
    let index: usize = index.parse().ok()?;
    registry.entries.iter().any(|e| e.index == index).then_some(index)
}

pub fn export(
    instance_path: &Path,
    output: &Path,
    variable: Option<usize>,
    clause: Option<usize>,
    registry: Option<&Path>,
) -> CmdResult {
    check_writable(output)?;
    let instance = load_instance(instance_path)?;
    let registry = match registry {
        Some(p) => Some(in_file(p, GadgetRegistry::parse(&read(p)?))?),
        None => None,
    };
    let mut graph = as_graph(instance_path, &instance)?;
    let one_based = |i: usize, what: &str| {
        i.checked_sub(1)
            .ok_or_else(|| format!("{what} indices start at 1"))
    };
    let selection = match (variable, clause) {
        (Some(i), _) => Some(variable_gadget(&graph, one_based(i, "variable")?)?),
        (_, Some(j)) => Some(clause_gadget(&graph, one_based(j, "clause")?)?),
        _ => None,
    };
    if let Some(set) = selection {
        graph = in_file(instance_path, graph.induced(&set))?;
    }
    let clusters: Vec<Option<usize>> = match &registry {
        Some(r) => (0..graph.num_vertices()).map(|v| gadget_cluster(graph.name(v), r)).collect(),
        None => Vec::new(),
    };
    write(output, &to_dot(&graph, &clusters))?;
    Ok(0)
}
