//! Uniform Nash equilibria of bimatrix games through edge-weighted bipartite
//! digraphs, and the 3-SAT reduction that compiles formulas into planar
//! `<1,2>` games.
//!
//! - [`game`]: bimatrix games with exact rational payoffs, uniform strategies
//!   and the definition-level equilibrium checks.
//! - [`graph`]: weighted bipartite digraphs, the game/graph correspondence and
//!   the undominated out-regular subgraph checker.
//! - [`search`]: the pruned witness finder and the naive exhaustive oracle.
//! - [`planarity`]: left-right planarity test on the underlying simple graph.
//! - [`cnf`]: DIMACS parsing, normalization and the brute-force SAT oracle.
//! - [`reduction`]: compilation of a normalized 3-CNF formula into `G_phi`.
//! - [`planarizer`]: grid routing, crossing detection, clause-variable gadgets
//!   and witness lifting/projection between `G_phi` and `H_phi`.
//! - [`formats`]: the plain-text file formats and DOT export.

pub mod budget;
pub mod cnf;
pub mod error;
pub mod formats;
pub mod game;
pub mod graph;
pub mod planarity;
pub mod planarizer;
pub mod rational;
pub mod reduction;
pub mod search;

pub use budget::{Budget, Outcome};
pub use cnf::{Assignment, CnfFormula, Literal};
pub use error::{Error, Result};
pub use game::{BimatrixGame, MixedStrategy, Side, SupportPair, WeightClassProfile};
pub use graph::{OutRegularWitness, Part, Verdict, VertexSet, WeightedBipartiteDigraph};
pub use rational::Rational;
pub use reduction::{ReductionGraph, Role};
