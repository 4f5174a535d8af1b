//! Edge-weighted bipartite digraphs and the out-regular subgraph
//! characterization of uniform Nash equilibria.
//!
//! Vertices are indexed with the row part first (`0..num_rows`) followed by
//! the column part. An arc `(r, c)` carries `M_R(r, c)` and an arc `(c, r)`
//! carries `M_C(r, c)`; zero payoffs are simply missing arcs.

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{default_ids, BimatrixGame, SupportPair};
use crate::planarity;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    Row,
    Column,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::Row => f.write_str("row"),
            Part::Column => f.write_str("column"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBipartiteDigraph {
    names: Vec<String>,
    num_rows: usize,
    // Sorted by target; at most one arc per ordered pair.
    out_arcs: Vec<Vec<(usize, Rational)>>,
    index: HashMap<String, usize>,
}

impl WeightedBipartiteDigraph {
    /// An arcless graph on the given parts. Vertex names must be unique
    /// across both parts.
    pub fn new(row_names: Vec<String>, col_names: Vec<String>) -> Result<Self> {
        let num_rows = row_names.len();
        let names: Vec<String> = row_names.into_iter().chain(col_names).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("invalid vertex name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex `{name}`")));
            }
        }
        Ok(WeightedBipartiteDigraph {
            out_arcs: vec![Vec::new(); names.len()],
            names,
            num_rows,
            index,
        })
    }

    /// Vertices named `r1..r<rows>` and `c1..c<cols>`.
    pub fn with_default_names(rows: usize, cols: usize) -> Self {
        Self::new(default_ids('r', rows), default_ids('c', cols)).expect("default names are unique")
    }

    pub fn add_arc(&mut self, source: usize, target: usize, weight: Rational) -> Result<()> {
        let n = self.num_vertices();
        if source >= n || target >= n {
            return Err(Error::invalid(format!("arc ({source}, {target}) references an unknown vertex")));
        }
        if self.part(source) == self.part(target) {
            return Err(Error::invalid(format!(
                "arc ({}, {}) stays inside the {} part",
                self.names[source],
                self.names[target],
                self.part(source)
            )));
        }
        if !weight.is_positive() {
            return Err(Error::invalid(format!(
                "arc ({}, {}) has non-positive weight {weight}",
                self.names[source], self.names[target]
            )));
        }
        let arcs = &mut self.out_arcs[source];
        match arcs.binary_search_by_key(&target, |(t, _)| *t) {
            Ok(_) => Err(Error::invalid(format!(
                "parallel arc ({}, {})",
                self.names[source], self.names[target]
            ))),
            Err(pos) => {
                arcs.insert(pos, (target, weight));
                Ok(())
            }
        }
    }

    pub fn add_arc_by_name(&mut self, source: &str, target: &str, weight: Rational) -> Result<()> {
        let s = self.require(source)?;
        let t = self.require(target)?;
        self.add_arc(s, t, weight)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.names.len() - self.num_rows
    }

    pub fn num_arcs(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).sum()
    }

    pub fn part(&self, v: usize) -> Part {
        if v < self.num_rows {
            Part::Row
        } else {
            Part::Column
        }
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn row_names(&self) -> &[String] {
        &self.names[..self.num_rows]
    }

    pub fn col_names(&self) -> &[String] {
        &self.names[self.num_rows..]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::invalid(format!("unknown vertex `{name}`")))
    }

    pub fn out_arcs(&self, v: usize) -> &[(usize, Rational)] {
        &self.out_arcs[v]
    }

    pub fn weight(&self, source: usize, target: usize) -> Option<&Rational> {
        let arcs = &self.out_arcs[source];
        arcs.binary_search_by_key(&target, |(t, _)| *t)
            .ok()
            .map(|pos| &arcs[pos].1)
    }

    /// All arcs ordered by (source, target).
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.out_arcs
            .iter()
            .enumerate()
            .flat_map(|(s, arcs)| arcs.iter().map(move |(t, w)| (s, *t, w)))
    }

    pub fn in_arcs(&self) -> Vec<Vec<(usize, Rational)>> {
        let mut incoming = vec![Vec::new(); self.num_vertices()];
        for (s, t, w) in self.arcs() {
            incoming[t].push((s, w.clone()));
        }
        incoming
    }

    /// Builds a set from vertex names.
    pub fn vertex_set<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        let mut set = VertexSet::empty(self.num_vertices());
        for name in names {
            set.insert(self.require(name)?);
        }
        Ok(set)
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<&str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    fn check_universe(&self, set: &VertexSet) -> Result<()> {
        if set.universe() != self.num_vertices() {
            return Err(Error::invalid(format!(
                "vertex set over {} vertices used with a graph of {}",
                set.universe(),
                self.num_vertices()
            )));
        }
        Ok(())
    }

    /// Sum of `w(v, u)` over out-neighbors `u` of `v` that lie in `set`.
    pub fn out_weight_into(&self, v: usize, set: &VertexSet) -> Result<Rational> {
        self.check_universe(set)?;
        if v >= self.num_vertices() {
            return Err(Error::invalid(format!("unknown vertex index {v}")));
        }
        Ok(self.weight_into_unchecked(v, set))
    }

    fn weight_into_unchecked(&self, v: usize, set: &VertexSet) -> Rational {
        self.out_arcs[v]
            .iter()
            .filter(|(u, _)| set.contains(*u))
            .map(|(_, w)| w)
            .sum()
    }

    fn split_check(&self, set: &VertexSet) -> Result<()> {
        self.check_universe(set)?;
        let has_row = set.iter().any(|v| self.part(v) == Part::Row);
        let has_col = set.iter().any(|v| self.part(v) == Part::Column);
        if !has_row || !has_col {
            return Err(Error::invalid("the subset must meet both the row part and the column part"));
        }
        Ok(())
    }

    /// `(alpha, beta)` when every row-side member has out-weight `alpha`
    /// into `set` and every column-side member has `beta`.
    pub fn check_out_regular(&self, set: &VertexSet) -> Result<Option<(Rational, Rational)>> {
        self.split_check(set)?;
        let mut alpha: Option<Rational> = None;
        let mut beta: Option<Rational> = None;
        for v in set.iter() {
            let w = self.weight_into_unchecked(v, set);
            let slot = match self.part(v) {
                Part::Row => &mut alpha,
                Part::Column => &mut beta,
            };
            match slot {
                Some(existing) if *existing != w => return Ok(None),
                Some(_) => {}
                None => *slot = Some(w),
            }
        }
        Ok(alpha.zip(beta))
    }

    /// Vertices outside the witness whose out-weight into it exceeds the
    /// parameter of their side, in index order.
    pub fn find_dominators(&self, witness: &OutRegularWitness) -> Result<Vec<usize>> {
        self.check_universe(&witness.subset)?;
        Ok((0..self.num_vertices())
            .filter(|&v| !witness.subset.contains(v))
            .filter(|&v| {
                let w = self.weight_into_unchecked(v, &witness.subset);
                w > *witness.threshold(self.part(v))
            })
            .collect())
    }

    /// The polynomial-time certificate check.
    pub fn is_undominated_out_regular(&self, set: &VertexSet) -> Result<bool> {
        Ok(matches!(self.verify(set)?, Verdict::Accepted { .. }))
    }

    /// Like [`Self::is_undominated_out_regular`], but names the first
    /// violated condition.
    pub fn verify(&self, set: &VertexSet) -> Result<Verdict> {
        self.split_check(set)?;
        let weights: Vec<Rational> = (0..self.num_vertices())
            .map(|v| self.weight_into_unchecked(v, set))
            .collect();
        let mut params: [Option<Rational>; 2] = [None, None];
        for v in set.iter() {
            let slot = &mut params[self.part(v) as usize];
            match slot {
                None => *slot = Some(weights[v].clone()),
                Some(expected) if *expected != weights[v] => {
                    return Ok(Verdict::Irregular {
                        vertex: v,
                        weight: weights[v].clone(),
                        expected: expected.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        let [Some(alpha), Some(beta)] = params else {
            unreachable!("split_check guarantees both parts are present")
        };
        for v in (0..self.num_vertices()).filter(|&v| !set.contains(v)) {
            let threshold = match self.part(v) {
                Part::Row => &alpha,
                Part::Column => &beta,
            };
            if weights[v] > *threshold {
                return Ok(Verdict::Dominated {
                    vertex: v,
                    weight: weights[v].clone(),
                    threshold: threshold.clone(),
                });
            }
        }
        Ok(Verdict::Accepted { alpha, beta })
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let forward: Vec<Vec<usize>> = self
            .out_arcs
            .iter()
            .map(|arcs| arcs.iter().map(|(t, _)| *t).collect())
            .collect();
        let mut backward = vec![Vec::new(); n];
        for (s, t, _) in self.arcs() {
            backward[t].push(s);
        }
        reaches_all(&forward) && reaches_all(&backward)
    }

    /// Planarity of the underlying undirected simple graph.
    pub fn is_planar(&self) -> bool {
        planarity::is_planar(self.num_vertices(), self.arcs().map(|(s, t, _)| (s, t)))
    }

    /// Subgraph induced by `set`, keeping names and parts.
    pub fn induced(&self, set: &VertexSet) -> Result<Self> {
        self.check_universe(set)?;
        let rows = set.iter().filter(|&v| v < self.num_rows).map(|v| self.names[v].clone()).collect();
        let cols = set.iter().filter(|&v| v >= self.num_rows).map(|v| self.names[v].clone()).collect();
        let mut sub = Self::new(rows, cols)?;
        for (s, t, w) in self.arcs() {
            if set.contains(s) && set.contains(t) {
                sub.add_arc_by_name(&self.names[s], &self.names[t], w.clone())?;
            }
        }
        Ok(sub)
    }

    /// Splits a vertex set into the support pair of the corresponding game.
    pub fn support_pair(&self, set: &VertexSet) -> Result<SupportPair> {
        self.check_universe(set)?;
        let rows = set.iter().filter(|&v| v < self.num_rows);
        let cols = set.iter().filter(|&v| v >= self.num_rows).map(|v| v - self.num_rows);
        SupportPair::new(rows, cols)
    }

    pub fn set_from_support(&self, pair: &SupportPair) -> Result<VertexSet> {
        let cols = pair.cols().iter().map(|c| c + self.num_rows);
        VertexSet::from_indices(self.num_vertices(), pair.rows().iter().copied().chain(cols))
    }
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == adj.len()
}

/// Outcome of the witness checker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted {
        alpha: Rational,
        beta: Rational,
    },
    /// A member whose out-weight differs from the first member of its part.
    Irregular {
        vertex: usize,
        weight: Rational,
        expected: Rational,
    },
    /// A non-member whose out-weight strictly exceeds its part's parameter.
    Dominated {
        vertex: usize,
        weight: Rational,
        threshold: Rational,
    },
}

impl Verdict {
    pub fn describe(&self, graph: &WeightedBipartiteDigraph) -> String {
        match self {
            Verdict::Accepted { alpha, beta } => format!("(alpha,beta)=({alpha},{beta})"),
            Verdict::Irregular { vertex, weight, expected } => format!(
                "not out-regular: {} has out-weight {weight} into the subset, expected {expected}",
                graph.name(*vertex)
            ),
            Verdict::Dominated { vertex, weight, threshold } => format!(
                "dominated by {}: out-weight {weight} > {threshold}",
                graph.name(*vertex)
            ),
        }
    }
}

/// Membership vector over the vertices of one graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<bool>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            members: vec![false; universe],
        }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet {
            members: vec![true; universe],
        }
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(universe);
        for v in indices {
            if v >= universe {
                return Err(Error::invalid(format!("vertex index {v} out of range")));
            }
            set.members[v] = true;
        }
        Ok(set)
    }

    pub(crate) fn from_members(members: Vec<bool>) -> Self {
        VertexSet { members }
    }

    pub fn universe(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: usize) -> bool {
        !std::mem::replace(&mut self.members[v], true)
    }

    pub fn remove(&mut self, v: usize) -> bool {
        std::mem::replace(&mut self.members[v], false)
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

/// An `(alpha, beta)` out-regular subset `S = S_R + S_C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutRegularWitness {
    pub subset: VertexSet,
    pub alpha: Rational,
    pub beta: Rational,
}

impl OutRegularWitness {
    pub fn threshold(&self, part: Part) -> &Rational {
        match part {
            Part::Row => &self.alpha,
            Part::Column => &self.beta,
        }
    }
}

/// Arc `(r_i, c_j)` for every positive `M_R(r_i, c_j)` and arc `(c_j, r_i)`
/// for every positive `M_C(r_i, c_j)`.
pub fn game_to_graph(game: &BimatrixGame) -> Result<WeightedBipartiteDigraph> {
    let all_zero = |m: &[Vec<Rational>]| m.iter().flatten().all(Zero::is_zero);
    if all_zero(game.payoff_row()) {
        return Err(Error::DegenerateGame("the row payoff matrix is all zero".into()));
    }
    if all_zero(game.payoff_col()) {
        return Err(Error::DegenerateGame("the column payoff matrix is all zero".into()));
    }
    let rows = game.num_rows();
    let mut graph = WeightedBipartiteDigraph::new(game.row_ids().to_vec(), game.col_ids().to_vec())?;
    for i in 0..rows {
        for j in 0..game.num_cols() {
            let mr = &game.payoff_row()[i][j];
            if mr.is_positive() {
                graph.add_arc(i, rows + j, mr.clone())?;
            }
            let mc = &game.payoff_col()[i][j];
            if mc.is_positive() {
                graph.add_arc(rows + j, i, mc.clone())?;
            }
        }
    }
    Ok(graph)
}

/// The reverse transformation: missing arcs become zero payoffs.
pub fn graph_to_game(graph: &WeightedBipartiteDigraph) -> Result<BimatrixGame> {
    let (rows, cols) = (graph.num_rows(), graph.num_cols());
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("both parts of the graph must be non-empty"));
    }
    let mut payoff_row = vec![vec![Rational::zero(); cols]; rows];
    let mut payoff_col = vec![vec![Rational::zero(); cols]; rows];
    for (s, t, w) in graph.arcs() {
        if s < rows {
            payoff_row[s][t - rows] = w.clone();
        } else {
            payoff_col[t][s - rows] = w.clone();
        }
    }
    BimatrixGame::with_ids(
        graph.row_names().to_vec(),
        graph.col_names().to_vec(),
        payoff_row,
        payoff_col,
    )
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    pub(crate) fn two_cycle() -> WeightedBipartiteDigraph {
        let mut g = WeightedBipartiteDigraph::with_default_names(1, 1);
        g.add_arc(0, 1, int(1)).unwrap();
        g.add_arc(1, 0, int(1)).unwrap();
        g
    }

    /// r1 -> c1 -> r2 -> c2 -> r1
    pub(crate) fn four_cycle() -> WeightedBipartiteDigraph {
        let mut g = WeightedBipartiteDigraph::with_default_names(2, 2);
        for (s, t) in [("r1", "c1"), ("c1", "r2"), ("r2", "c2"), ("c2", "r1")] {
            g.add_arc_by_name(s, t, int(1)).unwrap();
        }
        g
    }

    fn set(g: &WeightedBipartiteDigraph, names: &[&str]) -> VertexSet {
        g.vertex_set(names.iter().copied()).unwrap()
    }

    #[test]
    fn arc_validation() {
        let mut g = WeightedBipartiteDigraph::with_default_names(2, 1);
        assert!(g.add_arc(0, 1, int(1)).is_err(), "row to row");
        assert!(g.add_arc(0, 2, int(0)).is_err(), "zero weight");
        assert!(g.add_arc(0, 2, ratio(-1, 2)).is_err());
        g.add_arc(0, 2, int(1)).unwrap();
        assert!(g.add_arc(0, 2, int(2)).is_err(), "parallel");
        assert!(g.add_arc(0, 7, int(2)).is_err());
        assert!(WeightedBipartiteDigraph::new(vec!["a".into()], vec!["a".into()]).is_err());
    }

    #[test]
    fn game_to_graph_examples() {
        let g = game_to_graph(&BimatrixGame::from_integers(&[vec![1]], &[vec![1]]).unwrap()).unwrap();
        assert_eq!(g, two_cycle());

        let pennies =
            BimatrixGame::from_integers(&[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(game_to_graph(&pennies).unwrap(), four_cycle());

        let g = BimatrixGame::new(
            vec![vec![int(0), ratio(3, 2)]],
            vec![vec![int(1), int(0)]],
        )
        .unwrap();
        let graph = game_to_graph(&g).unwrap();
        assert_eq!(graph.weight(0, 2), Some(&ratio(3, 2)));
        assert_eq!(graph.num_arcs(), 2);
    }

    #[test]
    fn degenerate_games_are_rejected() {
        let g = BimatrixGame::from_integers(&[vec![0, 0]], &[vec![1, 0]]).unwrap();
        assert!(matches!(game_to_graph(&g), Err(Error::DegenerateGame(_))));
        let g = BimatrixGame::from_integers(&[vec![1, 0]], &[vec![0, 0]]).unwrap();
        assert!(matches!(game_to_graph(&g), Err(Error::DegenerateGame(_))));
    }

    #[test]
    fn graph_to_game_examples() {
        let game = graph_to_game(&two_cycle()).unwrap();
        assert_eq!(game, BimatrixGame::from_integers(&[vec![1]], &[vec![1]]).unwrap());
        let empty = WeightedBipartiteDigraph::with_default_names(0, 2);
        assert!(graph_to_game(&empty).is_err());
    }

    #[test]
    fn out_weight_examples() {
        let g = four_cycle();
        let lonely = WeightedBipartiteDigraph::with_default_names(1, 1);
        assert_eq!(lonely.out_weight_into(0, &VertexSet::full(2)).unwrap(), int(0));
        assert_eq!(g.out_weight_into(0, &set(&g, &["c1"])).unwrap(), int(1));
        let c2 = g.index_of("c2").unwrap();
        assert_eq!(g.out_weight_into(c2, &set(&g, &["c1", "r2"])).unwrap(), int(0));
        assert!(g.out_weight_into(9, &VertexSet::full(4)).is_err());
        assert!(g.out_weight_into(0, &VertexSet::full(3)).is_err());
    }

    #[test]
    fn out_regularity_examples() {
        let g = two_cycle();
        assert_eq!(g.check_out_regular(&VertexSet::full(2)).unwrap(), Some((int(1), int(1))));
        let g = four_cycle();
        assert_eq!(g.check_out_regular(&VertexSet::full(4)).unwrap(), Some((int(1), int(1))));
        assert_eq!(
            g.check_out_regular(&set(&g, &["r1", "c1"])).unwrap(),
            Some((int(1), int(0)))
        );
        assert_eq!(g.check_out_regular(&set(&g, &["r1", "r2", "c1"])).unwrap(), None);
        assert!(matches!(
            g.check_out_regular(&set(&g, &["r1", "r2"])),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn dominator_examples() {
        let g = four_cycle();
        let full = OutRegularWitness {
            subset: VertexSet::full(4),
            alpha: int(1),
            beta: int(1),
        };
        assert!(g.find_dominators(&full).unwrap().is_empty());
        let w = OutRegularWitness {
            subset: set(&g, &["r1", "c1"]),
            alpha: int(1),
            beta: int(0),
        };
        assert_eq!(g.find_dominators(&w).unwrap(), vec![g.index_of("c2").unwrap()]);
    }

    #[test]
    fn undominated_examples() {
        let g = four_cycle();
        assert!(g.is_undominated_out_regular(&VertexSet::full(4)).unwrap());
        let s = set(&g, &["r1", "c1"]);
        assert!(!g.is_undominated_out_regular(&s).unwrap());
        let verdict = g.verify(&s).unwrap();
        assert_eq!(verdict.describe(&g), "dominated by c2: out-weight 1 > 0");
        let verdict = g.verify(&set(&g, &["r1", "r2", "c1"])).unwrap();
        assert!(matches!(verdict, Verdict::Irregular { .. }));
    }

    #[test]
    fn strong_connectivity() {
        assert!(two_cycle().is_strongly_connected());
        assert!(four_cycle().is_strongly_connected());
        let mut g = WeightedBipartiteDigraph::with_default_names(1, 1);
        g.add_arc(0, 1, int(1)).unwrap();
        assert!(!g.is_strongly_connected());
    }

    #[test]
    fn planarity_of_small_graphs() {
        assert!(four_cycle().is_planar());
        let mut k33 = WeightedBipartiteDigraph::with_default_names(3, 3);
        for r in 0..3 {
            for c in 3..6 {
                if (r + c) % 2 == 0 {
                    k33.add_arc(r, c, int(1)).unwrap();
                } else {
                    k33.add_arc(c, r, int(2)).unwrap();
                }
            }
        }
        assert!(!k33.is_planar());
    }

    #[test]
    fn support_pair_conversion() {
        let g = four_cycle();
        let s = set(&g, &["r2", "c1", "c2"]);
        let pair = g.support_pair(&s).unwrap();
        assert_eq!(pair, SupportPair::new([1], [0, 1]).unwrap());
        assert_eq!(g.set_from_support(&pair).unwrap(), s);
    }

    #[test]
    fn induced_subgraph_keeps_inner_arcs() {
        let g = four_cycle();
        let sub = g.induced(&set(&g, &["r1", "c1", "c2"])).unwrap();
        assert_eq!(sub.num_vertices(), 3);
        assert_eq!(sub.num_arcs(), 2);
    }
}
