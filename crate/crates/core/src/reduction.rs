//! Compilation of a normalized 3-CNF formula into the weighted bipartite
//! digraph `G_phi`, and the two witness translations between satisfying
//! assignments and undominated out-regular subsets.
//!
//! Indices inside [`Role`] are 0-based; vertex names are 1-based
//! (`x1`, `nx1`, `y1`, `ny1`, `z1_1`, `z1_2`, `Cl1`, `v1_2`, `u1_2`, `a`).

use std::collections::HashMap;
use std::fmt;

use crate::cnf::{Assignment, CnfFormula, Literal};
use crate::error::{Error, Result};
use crate::graph::{Part, Verdict, VertexSet, WeightedBipartiteDigraph};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    X(usize),
    NotX(usize),
    Y(usize),
    NotY(usize),
    Z1(usize),
    Z2(usize),
    Clause(usize),
    V(usize, usize),
    U(usize, usize),
    A,
}

impl Role {
    pub fn name(self) -> String {
        match self {
            Role::X(i) => format!("x{}", i + 1),
            Role::NotX(i) => format!("nx{}", i + 1),
            Role::Y(i) => format!("y{}", i + 1),
            Role::NotY(i) => format!("ny{}", i + 1),
            Role::Z1(i) => format!("z{}_1", i + 1),
            Role::Z2(i) => format!("z{}_2", i + 1),
            Role::Clause(j) => format!("Cl{}", j + 1),
            Role::V(j, k) => format!("v{}_{}", j + 1, k + 1),
            Role::U(j, k) => format!("u{}_{}", j + 1, k + 1),
            Role::A => "a".into(),
        }
    }

    /// Inverse of [`Role::name`].
    pub fn from_name(name: &str) -> Option<Role> {
        fn index(s: &str) -> Option<usize> {
            if s.starts_with('0') || s.starts_with('+') {
                return None;
            }
            s.parse::<usize>().ok().filter(|&i| i >= 1).map(|i| i - 1)
        }
        fn pair(s: &str) -> Option<(usize, usize)> {
            let (a, b) = s.split_once('_')?;
            Some((index(a)?, index(b)?))
        }
        if name == "a" {
            return Some(Role::A);
        }
        let role = if let Some(rest) = name.strip_prefix("nx") {
            Role::NotX(index(rest)?)
        } else if let Some(rest) = name.strip_prefix("ny") {
            Role::NotY(index(rest)?)
        } else if let Some(rest) = name.strip_prefix("Cl") {
            Role::Clause(index(rest)?)
        } else if let Some(rest) = name.strip_prefix('x') {
            Role::X(index(rest)?)
        } else if let Some(rest) = name.strip_prefix('y') {
            Role::Y(index(rest)?)
        } else if let Some(rest) = name.strip_prefix('z') {
            match pair(rest)? {
                (i, 0) => Role::Z1(i),
                (i, 1) => Role::Z2(i),
                _ => return None,
            }
        } else if let Some(rest) = name.strip_prefix('v') {
            let (j, k) = pair(rest)?;
            Role::V(j, k)
        } else {
            let (j, k) = pair(name.strip_prefix('u')?)?;
            Role::U(j, k)
        };
        Some(role)
    }

    pub fn part(self) -> Part {
        match self {
            Role::Y(_) | Role::NotY(_) | Role::Z1(_) | Role::Clause(_) | Role::U(..) => Part::Row,
            _ => Part::Column,
        }
    }

    pub fn of_literal(literal: Literal) -> Role {
        if literal.negated {
            Role::NotX(literal.var)
        } else {
            Role::X(literal.var)
        }
    }
}

impl fmt::Display for Role {
    /// Kind followed by 1-based indices, e.g. `v 1 2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Role::X(i) => write!(f, "x {}", i + 1),
            Role::NotX(i) => write!(f, "nx {}", i + 1),
            Role::Y(i) => write!(f, "y {}", i + 1),
            Role::NotY(i) => write!(f, "ny {}", i + 1),
            Role::Z1(i) => write!(f, "z1 {}", i + 1),
            Role::Z2(i) => write!(f, "z2 {}", i + 1),
            Role::Clause(j) => write!(f, "C {}", j + 1),
            Role::V(j, k) => write!(f, "v {} {}", j + 1, k + 1),
            Role::U(j, k) => write!(f, "u {} {}", j + 1, k + 1),
            Role::A => f.write_str("a"),
        }
    }
}

/// `G_phi` together with the role of every vertex.
#[derive(Debug, Clone)]
pub struct ReductionGraph {
    graph: WeightedBipartiteDigraph,
    roles: Vec<Role>,
    by_role: HashMap<Role, usize>,
    formula: CnfFormula,
}

impl ReductionGraph {
    pub fn graph(&self) -> &WeightedBipartiteDigraph {
        &self.graph
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn num_vars(&self) -> usize {
        self.formula.num_vars()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    /// `m + n`.
    pub fn heavy_weight(&self) -> usize {
        self.num_vars() + self.num_clauses()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn role(&self, v: usize) -> Role {
        self.roles[v]
    }

    pub fn try_vertex(&self, role: Role) -> Option<usize> {
        self.by_role.get(&role).copied()
    }

    /// Panics if the role does not exist in this graph.
    pub fn vertex(&self, role: Role) -> usize {
        self.by_role[&role]
    }

    pub fn literal_vertex(&self, literal: Literal) -> usize {
        self.vertex(Role::of_literal(literal))
    }

    /// `x_i`, `nx_i`, `y_i`, `ny_i`, `z_i1`, `z_i2` and `a` (0-based `i`).
    pub fn variable_gadget(&self, var: usize) -> Result<VertexSet> {
        if var >= self.num_vars() {
            return Err(Error::invalid(format!("no variable x{}", var + 1)));
        }
        let roles = [
            Role::X(var),
            Role::NotX(var),
            Role::Y(var),
            Role::NotY(var),
            Role::Z1(var),
            Role::Z2(var),
            Role::A,
        ];
        VertexSet::from_indices(self.graph.num_vertices(), roles.map(|r| self.vertex(r)))
    }

    /// `C_j`, its `v`/`u` vertices, its literal vertices and `a`.
    pub fn clause_gadget(&self, clause: usize) -> Result<VertexSet> {
        if clause >= self.num_clauses() {
            return Err(Error::invalid(format!("no clause {}", clause + 1)));
        }
        let mut set = VertexSet::empty(self.graph.num_vertices());
        set.insert(self.vertex(Role::Clause(clause)));
        set.insert(self.vertex(Role::A));
        for (k, &l) in self.formula.clauses()[clause].iter().enumerate() {
            set.insert(self.vertex(Role::V(clause, k)));
            set.insert(self.vertex(Role::U(clause, k)));
            set.insert(self.literal_vertex(l));
        }
        Ok(set)
    }
}

/// Builds `G_phi`. Rows come first: per variable `y, ny, z_1`, then per
/// clause `Cl, u_1..u_3`; columns: per variable `x, nx, z_2`, per clause
/// `v_1..v_3`, then `a`.
pub fn build_reduction_graph(formula: &CnfFormula) -> Result<ReductionGraph> {
    if let Some(gap) = formula.normalization_gap() {
        return Err(Error::invalid(format!("formula is not normalized: {gap}")));
    }
    let n = formula.num_vars();
    let m = formula.num_clauses();
    let mut rows = Vec::with_capacity(3 * n + 4 * m);
    let mut cols = Vec::with_capacity(3 * n + 3 * m + 1);
    for i in 0..n {
        rows.extend([Role::Y(i), Role::NotY(i), Role::Z1(i)]);
        cols.extend([Role::X(i), Role::NotX(i), Role::Z2(i)]);
    }
    for j in 0..m {
        rows.push(Role::Clause(j));
        for k in 0..3 {
            rows.push(Role::U(j, k));
            cols.push(Role::V(j, k));
        }
    }
    cols.push(Role::A);

    let mut graph = WeightedBipartiteDigraph::new(
        rows.iter().map(|r| r.name()).collect(),
        cols.iter().map(|r| r.name()).collect(),
    )?;
    let roles: Vec<Role> = rows.into_iter().chain(cols).collect();
    let by_role: HashMap<Role, usize> = roles.iter().enumerate().map(|(v, &r)| (r, v)).collect();
    let light = int(1);
    let heavy = Rational::from_integer((n + m).into());
    let mut arc = |s: Role, t: Role, w: &Rational| graph.add_arc(by_role[&s], by_role[&t], w.clone());

    for (j, clause) in formula.clauses().iter().enumerate() {
        for (k, &l) in clause.iter().enumerate() {
            arc(Role::Clause(j), Role::V(j, k), &light)?;
            arc(Role::V(j, k), Role::U(j, k), &heavy)?;
            arc(Role::U(j, k), Role::of_literal(l), &light)?;
        }
        arc(Role::A, Role::Clause(j), &light)?;
    }
    for i in 0..n {
        arc(Role::X(i), Role::Y(i), &heavy)?;
        arc(Role::Y(i), Role::A, &light)?;
        arc(Role::NotX(i), Role::NotY(i), &heavy)?;
        arc(Role::NotY(i), Role::A, &light)?;
        arc(Role::A, Role::Z1(i), &light)?;
        arc(Role::Z1(i), Role::Z2(i), &light)?;
        arc(Role::Z2(i), Role::Y(i), &heavy)?;
        arc(Role::Z2(i), Role::NotY(i), &heavy)?;
    }
    Ok(ReductionGraph {
        graph,
        roles,
        by_role,
        formula: formula.clone(),
    })
}

/// `a`, every `C_j`, every `z`, the pair `{x_i, y_i}` or `{nx_i, ny_i}`
/// matching the assignment, and per clause the `{v, u}` pair of its first
/// true literal.
pub fn assignment_to_witness(rg: &ReductionGraph, xi: &Assignment) -> Result<VertexSet> {
    let n = rg.num_vars();
    if xi.len() != n {
        return Err(Error::invalid(format!(
            "assignment has {} values but the formula has {n} variables",
            xi.len()
        )));
    }
    let mut set = VertexSet::empty(rg.graph.num_vertices());
    set.insert(rg.vertex(Role::A));
    for i in 0..n {
        set.insert(rg.vertex(Role::Z1(i)));
        set.insert(rg.vertex(Role::Z2(i)));
        if xi.value(i) {
            set.insert(rg.vertex(Role::X(i)));
            set.insert(rg.vertex(Role::Y(i)));
        } else {
            set.insert(rg.vertex(Role::NotX(i)));
            set.insert(rg.vertex(Role::NotY(i)));
        }
    }
    for (j, clause) in rg.formula.clauses().iter().enumerate() {
        set.insert(rg.vertex(Role::Clause(j)));
        let k = clause.iter().position(|l| l.is_true_under(xi)).ok_or_else(|| {
            let lits: Vec<String> = clause.iter().map(ToString::to_string).collect();
            Error::WitnessConstruction(format!(
                "clause {} ({}) is not satisfied by {xi}",
                j + 1,
                lits.join(" v ")
            ))
        })?;
        set.insert(rg.vertex(Role::V(j, k)));
        set.insert(rg.vertex(Role::U(j, k)));
    }
    Ok(set)
}

/// Reads `xi_i = 1` iff `x_i` is in the witness; the witness is checked first
/// and the assignment is verified against the formula.
pub fn witness_to_assignment(rg: &ReductionGraph, set: &VertexSet) -> Result<Assignment> {
    if set.universe() != rg.graph.num_vertices() {
        return Err(Error::invalid("vertex set does not belong to this graph"));
    }
    match rg.graph.verify(set)? {
        Verdict::Accepted { .. } => {}
        other => {
            return Err(Error::invalid(format!(
                "not an undominated out-regular subset: {}",
                other.describe(&rg.graph)
            )))
        }
    }
    let xi = Assignment::new(
        (0..rg.num_vars())
            .map(|i| set.contains(rg.vertex(Role::X(i))))
            .collect(),
    );
    if let Some(j) = rg.formula.first_unsatisfied(&xi) {
        return Err(Error::Internal(format!(
            "witness decodes to {xi}, which falsifies clause {}",
            j + 1
        )));
    }
    Ok(xi)
}
