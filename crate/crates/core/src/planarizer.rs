//! Planarization of `G_phi`: orthogonal grid routing of the clause-to-literal
//! arcs, crossing detection, clause-variable gadget insertion producing
//! `H_phi`, and the witness translations between the two graphs.
//!
//! Grid layout. Clause coordinating vertex `u_jk` sits at `(0, 3j + k + 1)`
//! (0-based `j`, `k`). The literal boxes `x_1, nx_1, ..., x_n, nx_n` lie on
//! the bottom row; box `p` owns connection points `c = p*m + 1 ..= p*m + m`,
//! and point `c` is split into three lanes so that repeated literals inside
//! one clause never share a segment. The arc of `u_jk` to literal box `p`
//! runs right along its row, bends at `x = 3(c - 1) + k + 1` with
//! `c = p*m + j + 1`, and drops to `y = 0`. The remaining vertices of
//! `G_phi` live in a margin left of and below the grid and take part in no
//! crossing.

use std::fmt;

use crate::cnf::Literal;
use crate::error::{Error, Result};
use crate::graph::{Part, Verdict, VertexSet, WeightedBipartiteDigraph};
use crate::rational::{int, Rational};
use crate::reduction::{ReductionGraph, Role};

/// Lanes per connection point.
pub const LANES: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64) -> Self {
        GridPoint { x, y }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// One `u_jk -> literal` arc drawn as a horizontal then a vertical segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutedArc {
    pub clause: usize,
    pub slot: usize,
    pub source: usize,
    pub target: usize,
    pub literal: Literal,
    /// 1-based connection point on the bottom row.
    pub connection: usize,
    pub start: GridPoint,
    pub bend: GridPoint,
    pub end: GridPoint,
}

impl RoutedArc {
    /// Bend point on the coarse `3m x 2mn` grid, lanes collapsed.
    pub fn coarse_bend(&self) -> (usize, usize) {
        (self.connection, 3 * self.clause + self.slot + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEmbedding {
    rows: usize,
    cols: usize,
    placements: Vec<GridPoint>,
    arcs: Vec<RoutedArc>,
}

impl GridEmbedding {
    /// `(3m, 2mn)`.
    pub fn extent(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn placement(&self, v: usize) -> GridPoint {
        self.placements[v]
    }

    pub fn arcs(&self) -> &[RoutedArc] {
        &self.arcs
    }

    /// Fine x coordinates of the `m` connection points of a literal vertex,
    /// first lane of each.
    pub fn connection_points(&self, literal_box: usize, m: usize) -> Vec<i64> {
        (1..=m).map(|j| LANES * ((literal_box * m + j) as i64 - 1) + 1).collect()
    }
}

fn literal_box(literal: Literal) -> usize {
    2 * literal.var + usize::from(literal.negated)
}

pub fn route_arcs(rg: &ReductionGraph) -> GridEmbedding {
    let n = rg.num_vars();
    let m = rg.num_clauses();
    let mut placements = vec![GridPoint::new(0, 0); rg.graph().num_vertices()];
    for (v, role) in rg.roles().iter().enumerate() {
        let bottom = |i: usize, neg: bool| LANES * ((2 * i + usize::from(neg)) * m) as i64 + 1;
        placements[v] = match *role {
            Role::U(j, k) => GridPoint::new(0, (3 * j + k + 1) as i64),
            Role::V(j, k) => GridPoint::new(-1, (3 * j + k + 1) as i64),
            Role::Clause(j) => GridPoint::new(-2, (3 * j + 2) as i64),
            Role::X(i) => GridPoint::new(bottom(i, false), 0),
            Role::NotX(i) => GridPoint::new(bottom(i, true), 0),
            Role::Y(i) => GridPoint::new(bottom(i, false), -1),
            Role::NotY(i) => GridPoint::new(bottom(i, true), -1),
            Role::Z2(i) => GridPoint::new(bottom(i, true) - 1, -2),
            Role::Z1(i) => GridPoint::new(bottom(i, true) - 1, -3),
            Role::A => GridPoint::new(-3, -4),
        };
    }
    let mut arcs = Vec::with_capacity(3 * m);
    for (j, clause) in rg.formula().clauses().iter().enumerate() {
        for (k, &literal) in clause.iter().enumerate() {
            let connection = literal_box(literal) * m + j + 1;
            let x = LANES * (connection as i64 - 1) + k as i64 + 1;
            let y = (3 * j + k + 1) as i64;
            arcs.push(RoutedArc {
                clause: j,
                slot: k,
                source: rg.vertex(Role::U(j, k)),
                target: rg.literal_vertex(literal),
                literal,
                connection,
                start: GridPoint::new(0, y),
                bend: GridPoint::new(x, y),
                end: GridPoint::new(x, 0),
            });
        }
    }
    GridEmbedding {
        rows: 3 * m,
        cols: 2 * m * n,
        placements,
        arcs,
    }
}

/// Transversal intersection of the vertical segment of one routed arc with
/// the horizontal segment of another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub vertical: usize,
    pub horizontal: usize,
    pub point: GridPoint,
}

/// All crossings, ordered by vertical arc and then top to bottom.
pub fn detect_crossings(embedding: &GridEmbedding) -> Result<Vec<Crossing>> {
    let arcs = &embedding.arcs;
    for (a, first) in arcs.iter().enumerate() {
        if first.start.y != first.bend.y || first.bend.x != first.end.x || first.end.y != 0 || first.bend.x <= 0 {
            return Err(Error::Embedding(format!("arc {} is not a right-then-down route", a + 1)));
        }
        for (b, second) in arcs.iter().enumerate().skip(a + 1) {
            if first.bend.y == second.bend.y {
                return Err(Error::Embedding(format!(
                    "arcs {} and {} overlap on row {}",
                    a + 1,
                    b + 1,
                    first.bend.y
                )));
            }
            if first.bend.x == second.bend.x {
                return Err(Error::Embedding(format!(
                    "arcs {} and {} overlap on column {}",
                    a + 1,
                    b + 1,
                    first.bend.x
                )));
            }
        }
    }
    let mut crossings = Vec::new();
    for (v, vertical) in arcs.iter().enumerate() {
        let mut column: Vec<Crossing> = arcs
            .iter()
            .enumerate()
            .filter(|(h, horizontal)| {
                *h != v && vertical.bend.x < horizontal.bend.x && horizontal.bend.y < vertical.bend.y
            })
            .map(|(h, horizontal)| Crossing {
                vertical: v,
                horizontal: h,
                point: GridPoint::new(vertical.bend.x, horizontal.bend.y),
            })
            .collect();
        column.sort_by_key(|c| std::cmp::Reverse(c.point.y));
        crossings.extend(column);
    }
    Ok(crossings)
}

/// Position of a vertex inside a clause-variable gadget. `k` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GadgetRole {
    Eps,
    Alpha1,
    Alpha2,
    Beta1,
    Beta2,
    Gamma1(usize),
    Gamma2(usize),
    Gamma3,
    Delta1(usize),
    Delta2(usize),
    Delta3,
}

impl GadgetRole {
    pub fn suffix(self) -> String {
        match self {
            GadgetRole::Eps => "eps".into(),
            GadgetRole::Alpha1 => "alpha1".into(),
            GadgetRole::Alpha2 => "alpha2".into(),
            GadgetRole::Beta1 => "beta1".into(),
            GadgetRole::Beta2 => "beta2".into(),
            GadgetRole::Gamma1(k) => format!("gamma1_{k}"),
            GadgetRole::Gamma2(k) => format!("gamma2_{k}"),
            GadgetRole::Gamma3 => "gamma3".into(),
            GadgetRole::Delta1(k) => format!("delta1_{k}"),
            GadgetRole::Delta2(k) => format!("delta2_{k}"),
            GadgetRole::Delta3 => "delta3".into(),
        }
    }

    /// Rectangles of the drawing are row vertices, circles column vertices.
    pub fn part(self) -> Part {
        match self {
            GadgetRole::Eps
            | GadgetRole::Alpha2
            | GadgetRole::Beta2
            | GadgetRole::Gamma2(_)
            | GadgetRole::Delta2(_) => Part::Column,
            _ => Part::Row,
        }
    }

    /// All roles of a gadget with fan width `width`, rows first.
    fn all(width: usize) -> Vec<GadgetRole> {
        let mut roles = vec![GadgetRole::Alpha1, GadgetRole::Beta1];
        roles.extend((1..=width).map(GadgetRole::Gamma1));
        roles.push(GadgetRole::Gamma3);
        roles.extend((1..=width).map(GadgetRole::Delta1));
        roles.push(GadgetRole::Delta3);
        roles.extend([GadgetRole::Eps, GadgetRole::Alpha2, GadgetRole::Beta2]);
        roles.extend((1..=width).map(GadgetRole::Gamma2));
        roles.extend((1..=width).map(GadgetRole::Delta2));
        roles
    }
}

/// Number of vertices in one gadget for fan width `m + n`.
pub fn gadget_size(heavy: usize) -> usize {
    4 * heavy + 7
}

/// Vertex indices (in `H_phi`) of one inserted gadget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetInstance {
    pub crossing: Crossing,
    pub eps: usize,
    pub alpha1: usize,
    pub alpha2: usize,
    pub beta1: usize,
    pub beta2: usize,
    /// Index `k - 1` holds `gamma1^k`; likewise for the other fans.
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    pub gamma3: usize,
    pub delta1: Vec<usize>,
    pub delta2: Vec<usize>,
    pub delta3: usize,
}

impl GadgetInstance {
    pub fn vertices(&self) -> Vec<usize> {
        let mut all = vec![self.eps, self.alpha1, self.alpha2, self.beta1, self.beta2, self.gamma3, self.delta3];
        all.extend(self.gamma1.iter().chain(&self.gamma2).chain(&self.delta1).chain(&self.delta2));
        all
    }

    fn entry(&self, way: Traversal) -> usize {
        match way {
            Traversal::Vertical => self.alpha2,
            Traversal::Horizontal => self.beta2,
        }
    }

    fn exit(&self, way: Traversal) -> usize {
        match way {
            Traversal::Vertical => self.gamma3,
            Traversal::Horizontal => self.delta3,
        }
    }

    /// The vertices a lift adds for one traversal.
    fn traversal_set(&self, way: Traversal) -> [usize; 6] {
        match way {
            Traversal::Vertical => [
                self.alpha2,
                self.alpha1,
                self.eps,
                *self.gamma1.last().unwrap(),
                *self.gamma2.last().unwrap(),
                self.gamma3,
            ],
            Traversal::Horizontal => [
                self.beta2,
                self.beta1,
                self.eps,
                *self.delta1.last().unwrap(),
                *self.delta2.last().unwrap(),
                self.delta3,
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Traversal {
    Vertical,
    Horizontal,
}

/// Role of a vertex of `H_phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanarRole {
    Base(Role),
    /// 1-based gadget index.
    Gadget(usize, GadgetRole),
}

impl fmt::Display for PlanarRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanarRole::Base(r) => r.fmt(f),
            PlanarRole::Gadget(g, r) => write!(f, "gadget {g} {}", r.suffix()),
        }
    }
}

/// `H_phi` with the bookkeeping needed to move witnesses across.
#[derive(Debug, Clone)]
pub struct PlanarReduction {
    graph: WeightedBipartiteDigraph,
    roles: Vec<PlanarRole>,
    base: Vec<usize>,
    embedding: GridEmbedding,
    gadgets: Vec<GadgetInstance>,
    paths: Vec<Vec<(usize, Traversal)>>,
}

impl PlanarReduction {
    pub fn graph(&self) -> &WeightedBipartiteDigraph {
        &self.graph
    }

    pub fn embedding(&self) -> &GridEmbedding {
        &self.embedding
    }

    pub fn gadgets(&self) -> &[GadgetInstance] {
        &self.gadgets
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        self.gadgets.iter().map(|g| g.crossing).collect()
    }

    pub fn role(&self, v: usize) -> PlanarRole {
        self.roles[v]
    }

    /// Index in `H_phi` of a vertex of `G_phi`.
    pub fn lift_vertex(&self, v: usize) -> usize {
        self.base[v]
    }

    /// 1-based gadget containing `v`, if any.
    pub fn gadget_of(&self, v: usize) -> Option<usize> {
        match self.roles[v] {
            PlanarRole::Gadget(g, _) => Some(g),
            PlanarRole::Base(_) => None,
        }
    }

    /// Gadgets crossed by routed arc `arc`, in travel order.
    pub fn path(&self, arc: usize) -> &[(usize, Traversal)] {
        &self.paths[arc]
    }

    pub fn registry(&self) -> GadgetRegistry {
        let arcs = self.embedding.arcs();
        let endpoints = |a: usize| {
            (
                self.graph.name(self.base[arcs[a].source]).to_string(),
                self.graph.name(self.base[arcs[a].target]).to_string(),
            )
        };
        GadgetRegistry {
            entries: self
                .gadgets
                .iter()
                .enumerate()
                .map(|(i, g)| RegistryEntry {
                    index: i + 1,
                    vertical: endpoints(g.crossing.vertical),
                    horizontal: endpoints(g.crossing.horizontal),
                    point: g.crossing.point,
                })
                .collect(),
        }
    }
}

/// Replaces every crossing by a clause-variable gadget. Along each routed
/// arc the gadgets are chained in travel order (first the horizontal
/// segment left to right, then the vertical one top to bottom); the arc's
/// source feeds the first gadget's entry and each exit feeds the next entry
/// or, finally, the literal.
pub fn insert_gadgets(rg: &ReductionGraph, embedding: &GridEmbedding, crossings: &[Crossing]) -> Result<PlanarReduction> {
    let arcs = embedding.arcs();
    for (i, c) in crossings.iter().enumerate() {
        let consistent = c.vertical < arcs.len()
            && c.horizontal < arcs.len()
            && c.vertical != c.horizontal
            && c.point == GridPoint::new(arcs[c.vertical].bend.x, arcs[c.horizontal].bend.y)
            && c.point.x < arcs[c.horizontal].bend.x
            && c.point.y < arcs[c.vertical].bend.y;
        if !consistent {
            return Err(Error::Internal(format!("crossing {} does not match the embedding", i + 1)));
        }
    }
    let g = rg.graph();
    let width = rg.heavy_weight();
    let gadget_roles = GadgetRole::all(width);
    let rows_per = gadget_roles.iter().filter(|r| r.part() == Part::Row).count();
    let cols_per = gadget_roles.len() - rows_per;
    let h_rows = g.num_rows() + rows_per * crossings.len();

    let mut row_names: Vec<String> = g.row_names().to_vec();
    let mut col_names: Vec<String> = g.col_names().to_vec();
    let mut roles: Vec<PlanarRole> = (0..g.num_rows()).map(|v| PlanarRole::Base(rg.role(v))).collect();
    let mut col_roles: Vec<PlanarRole> = (g.num_rows()..g.num_vertices()).map(|v| PlanarRole::Base(rg.role(v))).collect();
    let mut gadgets = Vec::with_capacity(crossings.len());
    for (i, &crossing) in crossings.iter().enumerate() {
        let idx = i + 1;
        let row0 = g.num_rows() + i * rows_per;
        let col0 = h_rows + g.num_cols() + i * cols_per;
        let (mut r, mut c) = (0, 0);
        let mut at = std::collections::HashMap::new();
        for &role in &gadget_roles {
            let name = format!("g{idx}_{}", role.suffix());
            let v = match role.part() {
                Part::Row => {
                    row_names.push(name);
                    roles.push(PlanarRole::Gadget(idx, role));
                    r += 1;
                    row0 + r - 1
                }
                Part::Column => {
                    col_names.push(name);
                    col_roles.push(PlanarRole::Gadget(idx, role));
                    c += 1;
                    col0 + c - 1
                }
            };
            at.insert(role, v);
        }
        let fan = |f: fn(usize) -> GadgetRole| (1..=width).map(|k| at[&f(k)]).collect::<Vec<_>>();
        gadgets.push(GadgetInstance {
            crossing,
            eps: at[&GadgetRole::Eps],
            alpha1: at[&GadgetRole::Alpha1],
            alpha2: at[&GadgetRole::Alpha2],
            beta1: at[&GadgetRole::Beta1],
            beta2: at[&GadgetRole::Beta2],
            gamma1: fan(GadgetRole::Gamma1),
            gamma2: fan(GadgetRole::Gamma2),
            gamma3: at[&GadgetRole::Gamma3],
            delta1: fan(GadgetRole::Delta1),
            delta2: fan(GadgetRole::Delta2),
            delta3: at[&GadgetRole::Delta3],
        });
    }
    roles.extend(col_roles);
    let mut h = WeightedBipartiteDigraph::new(row_names, col_names)?;
    let base: Vec<usize> = (0..g.num_vertices())
        .map(|v| if v < g.num_rows() { v } else { v - g.num_rows() + h_rows })
        .collect();

    let mut paths: Vec<Vec<(usize, Traversal)>> = vec![Vec::new(); arcs.len()];
    for (a, path) in paths.iter_mut().enumerate() {
        let mut across: Vec<(i64, usize)> = (0..crossings.len())
            .filter(|&i| crossings[i].horizontal == a)
            .map(|i| (crossings[i].point.x, i))
            .collect();
        across.sort();
        let mut down: Vec<(i64, usize)> = (0..crossings.len())
            .filter(|&i| crossings[i].vertical == a)
            .map(|i| (-crossings[i].point.y, i))
            .collect();
        down.sort();
        path.extend(across.into_iter().map(|(_, i)| (i, Traversal::Horizontal)));
        path.extend(down.into_iter().map(|(_, i)| (i, Traversal::Vertical)));
    }

    let light = int(1);
    let heavy = Rational::from_integer(width.into());
    let rerouted: std::collections::HashSet<(usize, usize)> = arcs
        .iter()
        .zip(&paths)
        .filter(|(_, p)| !p.is_empty())
        .map(|(a, _)| (a.source, a.target))
        .collect();
    for (s, t, w) in g.arcs() {
        if !rerouted.contains(&(s, t)) {
            h.add_arc(base[s], base[t], w.clone())?;
        }
    }
    for gi in &gadgets {
        h.add_arc(gi.alpha2, gi.alpha1, heavy.clone())?;
        h.add_arc(gi.alpha1, gi.eps, light.clone())?;
        h.add_arc(gi.beta2, gi.beta1, heavy.clone())?;
        h.add_arc(gi.beta1, gi.eps, light.clone())?;
        for k in 0..width {
            h.add_arc(gi.eps, gi.gamma1[k], light.clone())?;
            h.add_arc(gi.gamma1[k], gi.gamma2[k], light.clone())?;
            h.add_arc(gi.gamma2[k], gi.gamma3, heavy.clone())?;
            h.add_arc(gi.eps, gi.delta1[k], light.clone())?;
            h.add_arc(gi.delta1[k], gi.delta2[k], light.clone())?;
            h.add_arc(gi.delta2[k], gi.delta3, heavy.clone())?;
        }
        h.add_arc(gi.beta2, gi.gamma1[0], light.clone())?;
        h.add_arc(gi.alpha2, gi.delta1[0], light.clone())?;
    }
    for (arc, path) in arcs.iter().zip(&paths) {
        if path.is_empty() {
            continue;
        }
        let mut from = base[arc.source];
        for &(gi, way) in path {
            h.add_arc(from, gadgets[gi].entry(way), light.clone())?;
            from = gadgets[gi].exit(way);
        }
        h.add_arc(from, base[arc.target], light.clone())?;
    }
    Ok(PlanarReduction {
        graph: h,
        roles,
        base,
        embedding: embedding.clone(),
        gadgets,
        paths,
    })
}

/// Route, detect crossings and insert gadgets.
pub fn planarize(rg: &ReductionGraph) -> Result<PlanarReduction> {
    let embedding = route_arcs(rg);
    let crossings = detect_crossings(&embedding)?;
    insert_gadgets(rg, &embedding, &crossings)
}

fn require_witness(graph: &WeightedBipartiteDigraph, set: &VertexSet, what: &str) -> Result<()> {
    if set.universe() != graph.num_vertices() {
        return Err(Error::invalid(format!("vertex set does not belong to {what}")));
    }
    match graph.verify(set)? {
        Verdict::Accepted { .. } => Ok(()),
        other => Err(Error::invalid(format!(
            "not an undominated out-regular subset of {what}: {}",
            other.describe(graph)
        ))),
    }
}

/// Extends a witness on `G_phi` to one on `H_phi`.
pub fn lift_witness(rg: &ReductionGraph, pr: &PlanarReduction, s: &VertexSet) -> Result<VertexSet> {
    require_witness(rg.graph(), s, "G_phi")?;
    let h = &pr.graph;
    let width = rg.heavy_weight();
    let mut t = VertexSet::empty(h.num_vertices());
    for v in s.iter() {
        t.insert(pr.base[v]);
    }
    for (arc, path) in pr.embedding.arcs().iter().zip(&pr.paths) {
        if !s.contains(arc.source) {
            continue;
        }
        for &(gi, way) in path {
            for v in pr.gadgets[gi].traversal_set(way) {
                t.insert(v);
            }
        }
    }
    let target = Rational::from_integer(width.into());
    for gi in &pr.gadgets {
        if !t.contains(gi.eps) {
            continue;
        }
        let mut kappa = 1;
        while h.out_weight_into(gi.eps, &t)? < target {
            if kappa >= width {
                return Err(Error::Internal(format!(
                    "gadget at {} cannot reach out-weight {width} at its hub",
                    gi.crossing.point
                )));
            }
            if t.contains(gi.beta1) {
                t.insert(gi.delta1[width - kappa - 1]);
                t.insert(gi.delta2[width - kappa - 1]);
            }
            if t.contains(gi.alpha1) && h.out_weight_into(gi.eps, &t)? < target {
                t.insert(gi.gamma1[width - kappa - 1]);
                t.insert(gi.gamma2[width - kappa - 1]);
            }
            kappa += 1;
        }
    }
    match h.verify(&t)? {
        Verdict::Accepted { .. } => Ok(t),
        other => Err(Error::Internal(format!("lifted subset rejected: {}", other.describe(h)))),
    }
}

/// Restricts a witness on `H_phi` to one on `G_phi`.
///
/// Besides `a`, the clause vertices, the selected literal pairs and the
/// `{u, v}` pairs kept in `T`, the variable coordinating vertices `z_i1`,
/// `z_i2` are always included, and `y_i` / `ny_i` follow their membership in
/// `T` as well as that of `x_i` / `nx_i`.
pub fn project_witness(rg: &ReductionGraph, pr: &PlanarReduction, t: &VertexSet) -> Result<VertexSet> {
    require_witness(&pr.graph, t, "H_phi")?;
    let g = rg.graph();
    let in_t = |role: Role| t.contains(pr.base[rg.vertex(role)]);
    let mut s = VertexSet::empty(g.num_vertices());
    s.insert(rg.vertex(Role::A));
    for j in 0..rg.num_clauses() {
        s.insert(rg.vertex(Role::Clause(j)));
    }
    for i in 0..rg.num_vars() {
        s.insert(rg.vertex(Role::Z1(i)));
        s.insert(rg.vertex(Role::Z2(i)));
        for (x, y) in [(Role::X(i), Role::Y(i)), (Role::NotX(i), Role::NotY(i))] {
            if in_t(x) {
                s.insert(rg.vertex(x));
                s.insert(rg.vertex(y));
            } else if in_t(y) {
                s.insert(rg.vertex(y));
            }
        }
    }
    for j in 0..rg.num_clauses() {
        for k in 0..3 {
            if in_t(Role::U(j, k)) && in_t(Role::V(j, k)) {
                s.insert(rg.vertex(Role::U(j, k)));
                s.insert(rg.vertex(Role::V(j, k)));
            }
        }
    }
    match g.verify(&s)? {
        Verdict::Accepted { .. } => Ok(s),
        other => Err(Error::Internal(format!("projected subset rejected: {}", other.describe(g)))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub index: usize,
    /// `(source, target)` names of the arc crossing vertically.
    pub vertical: (String, String),
    pub horizontal: (String, String),
    pub point: GridPoint,
}

/// Sidecar listing each gadget with the two arcs it replaces. Gadget `i`
/// owns the vertices named `g<i>_*`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GadgetRegistry {
    pub entries: Vec<RegistryEntry>,
}

impl GadgetRegistry {
    pub fn to_text(&self) -> String {
        let mut out = format!("registry {}\n", self.entries.len());
        for e in &self.entries {
            out.push_str(&format!(
                "gadget {} vertical {} {} horizontal {} {} point {} {}\n",
                e.index, e.vertical.0, e.vertical.1, e.horizontal.0, e.horizontal.1, e.point.x, e.point.y
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut entries = Vec::new();
        let mut last = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            last = line_no;
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["registry", count] if declared.is_none() => {
                    declared = Some(
                        count
                            .parse()
                            .map_err(|_| Error::parse(line_no, format!("bad gadget count `{count}`")))?,
                    );
                }
                ["gadget", idx, "vertical", vs, vt, "horizontal", hs, ht, "point", x, y] if declared.is_some() => {
                    let num = |s: &str| s.parse::<i64>().map_err(|_| Error::parse(line_no, format!("`{s}` is not a number")));
                    let index = num(idx)?;
                    if index != entries.len() as i64 + 1 {
                        return Err(Error::parse(line_no, format!("expected gadget {}", entries.len() + 1)));
                    }
                    entries.push(RegistryEntry {
                        index: index as usize,
                        vertical: (vs.to_string(), vt.to_string()),
                        horizontal: (hs.to_string(), ht.to_string()),
                        point: GridPoint::new(num(x)?, num(y)?),
                    });
                }
                _ => return Err(Error::parse(line_no, format!("unexpected line `{line}`"))),
            }
        }
        match declared {
            None => Err(Error::parse(last.max(1), "missing `registry` header")),
            Some(d) if d != entries.len() => Err(Error::parse(
                last.max(1),
                format!("header declares {d} gadgets but {} are listed", entries.len()),
            )),
            Some(_) => Ok(GadgetRegistry { entries }),
        }
    }
}
