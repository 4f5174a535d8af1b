//! Bimatrix games with exact rational payoffs.
//!
//! A uniform strategy is fully determined by its support, so the uniform
//! equilibrium questions reduce to checks over [`SupportPair`]s. Deviations
//! are only tested against pure strategies: expected payoff is linear in the
//! deviating player's mixed strategy, so the best mixed deviation is never
//! better than the best pure one.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::budget::{Budget, Outcome};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Row,
    Column,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Row => f.write_str("row"),
            Side::Column => f.write_str("column"),
        }
    }
}

/// Two payoff matrices `M_R`, `M_C` over the same `R x C` index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BimatrixGame {
    row_ids: Vec<String>,
    col_ids: Vec<String>,
    payoff_row: Vec<Vec<Rational>>,
    payoff_col: Vec<Vec<Rational>>,
}

pub fn default_ids(prefix: char, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

impl BimatrixGame {
    /// Builds a game with the implicit strategy names `r1..` and `c1..`.
    pub fn new(payoff_row: Vec<Vec<Rational>>, payoff_col: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = payoff_row.len();
        let cols = payoff_row.first().map_or(0, Vec::len);
        Self::with_ids(
            default_ids('r', rows),
            default_ids('c', cols),
            payoff_row,
            payoff_col,
        )
    }

    pub fn with_ids(
        row_ids: Vec<String>,
        col_ids: Vec<String>,
        payoff_row: Vec<Vec<Rational>>,
        payoff_col: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if row_ids.is_empty() || col_ids.is_empty() {
            return Err(Error::invalid("a game needs at least one strategy per player"));
        }
        for (ids, side) in [(&row_ids, Side::Row), (&col_ids, Side::Column)] {
            let distinct: BTreeSet<&String> = ids.iter().collect();
            if distinct.len() != ids.len() {
                return Err(Error::invalid(format!("duplicate {side} strategy identifier")));
            }
        }
        for (name, matrix) in [("M_R", &payoff_row), ("M_C", &payoff_col)] {
            if matrix.len() != row_ids.len() || matrix.iter().any(|r| r.len() != col_ids.len()) {
                return Err(Error::invalid(format!(
                    "{name} must be {}x{}",
                    row_ids.len(),
                    col_ids.len()
                )));
            }
            if matrix.iter().flatten().any(Signed::is_negative) {
                return Err(Error::invalid(format!("{name} has a negative entry")));
            }
        }
        Ok(BimatrixGame {
            row_ids,
            col_ids,
            payoff_row,
            payoff_col,
        })
    }

    /// Convenience constructor from integer matrices.
    pub fn from_integers(payoff_row: &[Vec<i64>], payoff_col: &[Vec<i64>]) -> Result<Self> {
        let lift = |m: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            m.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect()
        };
        Self::new(lift(payoff_row), lift(payoff_col))
    }

    pub fn num_rows(&self) -> usize {
        self.row_ids.len()
    }

    pub fn num_cols(&self) -> usize {
        self.col_ids.len()
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    pub fn col_ids(&self) -> &[String] {
        &self.col_ids
    }

    pub fn ids(&self, side: Side) -> &[String] {
        match side {
            Side::Row => &self.row_ids,
            Side::Column => &self.col_ids,
        }
    }

    pub fn payoff_row(&self) -> &[Vec<Rational>] {
        &self.payoff_row
    }

    pub fn payoff_col(&self) -> &[Vec<Rational>] {
        &self.payoff_col
    }

    pub fn strategy_index(&self, side: Side, id: &str) -> Option<usize> {
        self.ids(side).iter().position(|s| s == id)
    }

    /// Multiplies both payoff matrices by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::invalid("scaling factor must be positive"));
        }
        let scale = |m: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
            m.iter()
                .map(|row| row.iter().map(|v| v * factor).collect())
                .collect()
        };
        Ok(BimatrixGame {
            row_ids: self.row_ids.clone(),
            col_ids: self.col_ids.clone(),
            payoff_row: scale(&self.payoff_row),
            payoff_col: scale(&self.payoff_col),
        })
    }

    fn len(&self, side: Side) -> usize {
        self.ids(side).len()
    }
}

/// A probability vector over one player's pure strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedStrategy {
    side: Side,
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(side: Side, weights: Vec<Rational>) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::invalid("negative probability"));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        Ok(MixedStrategy { side, weights })
    }

    /// Pure strategy `index` out of `len`.
    pub fn pure(side: Side, len: usize, index: usize) -> Result<Self> {
        uniform_strategy(side, len, &[index])
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> &Rational {
        &self.weights[index]
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&i| self.weights[i].is_positive())
            .collect()
    }

    pub fn is_uniform(&self) -> bool {
        let support = self.support();
        let expected = Rational::new(1.into(), support.len().into());
        support.iter().all(|&i| self.weights[i] == expected)
    }
}

/// Uniform distribution over `support` (indices into a strategy set of size
/// `len`).
pub fn uniform_strategy(side: Side, len: usize, support: &[usize]) -> Result<MixedStrategy> {
    let members: BTreeSet<usize> = support.iter().copied().collect();
    if members.is_empty() {
        return Err(Error::invalid("uniform strategy over an empty support"));
    }
    if let Some(&bad) = members.iter().find(|&&i| i >= len) {
        return Err(Error::invalid(format!(
            "strategy index {bad} out of range for {side} player with {len} strategies"
        )));
    }
    let share = Rational::new(1.into(), members.len().into());
    let weights = (0..len)
        .map(|i| {
            if members.contains(&i) {
                share.clone()
            } else {
                Rational::zero()
            }
        })
        .collect();
    Ok(MixedStrategy { side, weights })
}

/// Non-empty supports for both players, stored as sorted strategy indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportPair {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

impl SupportPair {
    pub fn new(rows: impl IntoIterator<Item = usize>, cols: impl IntoIterator<Item = usize>) -> Result<Self> {
        let rows: Vec<usize> = rows.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let cols: Vec<usize> = cols.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::invalid("both supports must be non-empty"));
        }
        Ok(SupportPair { rows, cols })
    }

    pub(crate) fn from_masks(row_mask: u64, col_mask: u64) -> Self {
        let bits = |mask: u64| (0..64).filter(|b| mask >> b & 1 == 1).collect();
        SupportPair {
            rows: bits(row_mask),
            cols: bits(col_mask),
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    fn fits(&self, game: &BimatrixGame) -> Result<()> {
        let row_ok = self.rows.last().is_some_and(|&r| r < game.num_rows());
        let col_ok = self.cols.last().is_some_and(|&c| c < game.num_cols());
        if row_ok && col_ok {
            Ok(())
        } else {
            Err(Error::invalid("support pair does not fit the game"))
        }
    }

    /// Renders the pair with the game's strategy identifiers,
    /// e.g. `({r1,r2},{c1})`.
    pub fn describe(&self, game: &BimatrixGame) -> String {
        let names = |idx: &[usize], ids: &[String]| {
            idx.iter()
                .map(|&i| ids.get(i).map_or("?", String::as_str))
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "({{{}}},{{{}}})",
            names(&self.rows, game.row_ids()),
            names(&self.cols, game.col_ids())
        )
    }
}

fn check_dimensions(game: &BimatrixGame, x_row: &MixedStrategy, x_col: &MixedStrategy) -> Result<()> {
    if x_row.side != Side::Row || x_col.side != Side::Column {
        return Err(Error::invalid("strategies must be (row, column) in that order"));
    }
    if x_row.weights.len() != game.len(Side::Row) || x_col.weights.len() != game.len(Side::Column) {
        return Err(Error::invalid(format!(
            "strategy dimensions {}x{} do not match the {}x{} game",
            x_row.weights.len(),
            x_col.weights.len(),
            game.num_rows(),
            game.num_cols()
        )));
    }
    Ok(())
}

/// Payoff of every pure row strategy against `x_col`, i.e. `M x_C`.
fn row_pure_payoffs(matrix: &[Vec<Rational>], x_col: &MixedStrategy) -> Vec<Rational> {
    let support = x_col.support();
    matrix
        .iter()
        .map(|row| {
            support
                .iter()
                .filter(|&&j| !row[j].is_zero())
                .map(|&j| &row[j] * &x_col.weights[j])
                .sum()
        })
        .collect()
}

/// Payoff of every pure column strategy against `x_row`, i.e. `x_R^T M`.
fn col_pure_payoffs(matrix: &[Vec<Rational>], x_row: &MixedStrategy, cols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cols];
    for i in x_row.support() {
        let p = &x_row.weights[i];
        for (j, v) in matrix[i].iter().enumerate() {
            if !v.is_zero() {
                out[j] += v * p;
            }
        }
    }
    out
}

fn dot(x: &MixedStrategy, values: &[Rational]) -> Rational {
    x.support().into_iter().map(|i| &x.weights[i] * &values[i]).sum()
}

/// `(x_R^T M_R x_C, x_R^T M_C x_C)`, exactly.
pub fn expected_payoffs(
    game: &BimatrixGame,
    x_row: &MixedStrategy,
    x_col: &MixedStrategy,
) -> Result<(Rational, Rational)> {
    check_dimensions(game, x_row, x_col)?;
    let row = dot(x_row, &row_pure_payoffs(&game.payoff_row, x_col));
    let col = dot(x_row, &row_pure_payoffs(&game.payoff_col, x_col));
    Ok((row, col))
}

/// True iff no pure deviation strictly improves either player.
pub fn is_nash_equilibrium(game: &BimatrixGame, x_row: &MixedStrategy, x_col: &MixedStrategy) -> Result<bool> {
    check_dimensions(game, x_row, x_col)?;
    let row_values = row_pure_payoffs(&game.payoff_row, x_col);
    let row_current = dot(x_row, &row_values);
    if row_values.iter().any(|v| *v > row_current) {
        return Ok(false);
    }
    let col_values = col_pure_payoffs(&game.payoff_col, x_row, game.num_cols());
    let col_current = dot(x_col, &col_values);
    Ok(col_values.iter().all(|v| *v <= col_current))
}

/// Builds the uniform strategies on `pair` and tests the equilibrium
/// condition.
pub fn check_uniform_equilibrium(game: &BimatrixGame, pair: &SupportPair) -> Result<bool> {
    pair.fits(game)?;
    let x_row = uniform_strategy(Side::Row, game.num_rows(), &pair.rows)?;
    let x_col = uniform_strategy(Side::Column, game.num_cols(), &pair.cols)?;
    is_nash_equilibrium(game, &x_row, &x_col)
}

/// Largest strategy set the support-mask enumeration accepts.
pub const MAX_ENUMERATION_SIDE: usize = 30;

/// Every support pair whose uniform strategies form a Nash equilibrium,
/// ordered by `(row mask, column mask)` where strategy `i` is bit `i`.
pub fn enumerate_uniform_equilibria(game: &BimatrixGame, budget: Budget) -> Result<Outcome<Vec<SupportPair>>> {
    let (rows, cols) = (game.num_rows(), game.num_cols());
    if rows > MAX_ENUMERATION_SIDE || cols > MAX_ENUMERATION_SIDE {
        return Err(Error::invalid(format!(
            "support enumeration is limited to {MAX_ENUMERATION_SIDE} strategies per player"
        )));
    }
    let mut meter = budget.meter();
    let mut found = Vec::new();
    for row_mask in 1..(1u64 << rows) {
        for col_mask in 1..(1u64 << cols) {
            if !meter.tick() {
                return Ok(Outcome::Exhausted {
                    expanded: meter.used() - 1,
                });
            }
            let pair = SupportPair::from_masks(row_mask, col_mask);
            if check_uniform_equilibrium(game, &pair)? {
                found.push(pair);
            }
        }
    }
    Ok(Outcome::Complete(found))
}

/// Distinct non-zero payoffs of each player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightClassProfile {
    pub rho_row: usize,
    pub rho_col: usize,
    pub class_row: BTreeSet<Rational>,
    pub class_col: BTreeSet<Rational>,
}

impl WeightClassProfile {
    /// An all-zero payoff matrix has an empty class; such games have no arcs
    /// on that side of the digraph.
    pub fn is_degenerate(&self) -> bool {
        self.rho_row == 0 || self.rho_col == 0
    }

    pub fn classes(&self) -> (usize, usize) {
        (self.rho_row, self.rho_col)
    }
}

pub fn weight_class_profile(game: &BimatrixGame) -> WeightClassProfile {
    let distinct = |m: &[Vec<Rational>]| -> BTreeSet<Rational> {
        m.iter().flatten().filter(|v| !v.is_zero()).cloned().collect()
    };
    let class_row = distinct(&game.payoff_row);
    let class_col = distinct(&game.payoff_col);
    WeightClassProfile {
        rho_row: class_row.len(),
        rho_col: class_col.len(),
        class_row,
        class_col,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn matching_pennies() -> BimatrixGame {
        BimatrixGame::from_integers(&[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    fn trivial() -> BimatrixGame {
        BimatrixGame::from_integers(&[vec![1]], &[vec![1]]).unwrap()
    }

    #[test]
    fn uniform_weights_are_exact() {
        let s = uniform_strategy(Side::Row, 1, &[0]).unwrap();
        assert_eq!(s.weights(), &[int(1)]);
        let s = uniform_strategy(Side::Row, 2, &[0, 1]).unwrap();
        assert_eq!(s.weights(), &[ratio(1, 2), ratio(1, 2)]);
        let s = uniform_strategy(Side::Column, 3, &[0, 1, 2]).unwrap();
        assert!(s.weights().iter().all(|w| *w == ratio(1, 3)));
        assert!(s.is_uniform());
    }

    #[test]
    fn uniform_rejects_empty_and_out_of_range() {
        assert!(matches!(
            uniform_strategy(Side::Row, 3, &[]),
            Err(Error::InvalidArgument(_))
        ));
        assert!(uniform_strategy(Side::Row, 3, &[3]).is_err());
    }

    #[test]
    fn mixed_strategy_validation() {
        assert!(MixedStrategy::new(Side::Row, vec![ratio(1, 2), ratio(1, 3)]).is_err());
        assert!(MixedStrategy::new(Side::Row, vec![ratio(3, 2), ratio(-1, 2)]).is_err());
        let s = MixedStrategy::new(Side::Row, vec![ratio(1, 4), ratio(3, 4)]).unwrap();
        assert!(!s.is_uniform());
    }

    #[test]
    fn game_validation() {
        assert!(BimatrixGame::from_integers(&[vec![1, 0]], &[vec![1]]).is_err());
        assert!(BimatrixGame::from_integers(&[vec![-1]], &[vec![1]]).is_err());
        assert!(BimatrixGame::from_integers(&[], &[]).is_err());
        let dup = BimatrixGame::with_ids(
            vec!["r".into(), "r".into()],
            vec!["c".into()],
            vec![vec![int(1)], vec![int(1)]],
            vec![vec![int(1)], vec![int(1)]],
        );
        assert!(dup.is_err());
    }

    #[test]
    fn expected_payoffs_examples() {
        let g = trivial();
        let x = MixedStrategy::pure(Side::Row, 1, 0).unwrap();
        let y = MixedStrategy::pure(Side::Column, 1, 0).unwrap();
        assert_eq!(expected_payoffs(&g, &x, &y).unwrap(), (int(1), int(1)));

        let g = matching_pennies();
        let x = uniform_strategy(Side::Row, 2, &[0, 1]).unwrap();
        let y = uniform_strategy(Side::Column, 2, &[0, 1]).unwrap();
        assert_eq!(expected_payoffs(&g, &x, &y).unwrap(), (ratio(1, 2), ratio(1, 2)));
    }

    #[test]
    fn column_concentrated_payoff_is_column_average() {
        let g = BimatrixGame::new(
            vec![
                vec![int(3), ratio(1, 2), int(0)],
                vec![int(1), int(2), int(5)],
                vec![ratio(7, 3), int(0), int(1)],
            ],
            vec![vec![int(1); 3]; 3],
        )
        .unwrap();
        for j in 0..3 {
            let support = [0, 2];
            let x = uniform_strategy(Side::Row, 3, &support).unwrap();
            let y = MixedStrategy::pure(Side::Column, 3, j).unwrap();
            let (row, _) = expected_payoffs(&g, &x, &y).unwrap();
            let direct: Rational = support.iter().map(|&i| g.payoff_row()[i][j].clone()).sum::<Rational>()
                / Rational::from_integer(2.into());
            assert_eq!(row, direct);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = matching_pennies();
        let x = uniform_strategy(Side::Row, 3, &[0]).unwrap();
        let y = uniform_strategy(Side::Column, 2, &[0]).unwrap();
        assert!(expected_payoffs(&g, &x, &y).is_err());
        assert!(is_nash_equilibrium(&g, &x, &y).is_err());
        assert!(is_nash_equilibrium(&g, &y, &x).is_err());
    }

    #[test]
    fn nash_examples() {
        let g = trivial();
        let x = MixedStrategy::pure(Side::Row, 1, 0).unwrap();
        let y = MixedStrategy::pure(Side::Column, 1, 0).unwrap();
        assert!(is_nash_equilibrium(&g, &x, &y).unwrap());

        let g = matching_pennies();
        let x = uniform_strategy(Side::Row, 2, &[0, 1]).unwrap();
        let y = uniform_strategy(Side::Column, 2, &[0, 1]).unwrap();
        assert!(is_nash_equilibrium(&g, &x, &y).unwrap());

        let x = MixedStrategy::pure(Side::Row, 2, 0).unwrap();
        let y = MixedStrategy::pure(Side::Column, 2, 0).unwrap();
        assert!(!is_nash_equilibrium(&g, &x, &y).unwrap());
    }

    #[test]
    fn uniform_equilibrium_checks() {
        assert!(check_uniform_equilibrium(&trivial(), &SupportPair::new([0], [0]).unwrap()).unwrap());
        let g = matching_pennies();
        assert!(check_uniform_equilibrium(&g, &SupportPair::new([0, 1], [0, 1]).unwrap()).unwrap());
        assert!(!check_uniform_equilibrium(&g, &SupportPair::new([0], [0]).unwrap()).unwrap());
        assert!(check_uniform_equilibrium(&g, &SupportPair::new([0, 2], [0]).unwrap()).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let all = enumerate_uniform_equilibria(&trivial(), Budget::unlimited()).unwrap();
        assert_eq!(all, Outcome::Complete(vec![SupportPair::new([0], [0]).unwrap()]));

        let g = matching_pennies();
        let all = enumerate_uniform_equilibria(&g, Budget::unlimited()).unwrap();
        assert_eq!(all, Outcome::Complete(vec![SupportPair::new([0, 1], [0, 1]).unwrap()]));
        assert_eq!(
            SupportPair::new([0, 1], [0, 1]).unwrap().describe(&g),
            "({r1,r2},{c1,c2})"
        );
    }

    #[test]
    fn enumeration_budget_is_distinguishable() {
        let g = matching_pennies();
        let out = enumerate_uniform_equilibria(&g, Budget::nodes(4)).unwrap();
        assert_eq!(out, Outcome::Exhausted { expanded: 4 });
        let out = enumerate_uniform_equilibria(&g, Budget::nodes(9)).unwrap();
        assert!(!out.is_exhausted());
    }

    #[test]
    fn weight_classes() {
        let g = BimatrixGame::from_integers(&[vec![1, 0], vec![1, 1]], &[vec![0, 1], vec![1, 0]]).unwrap();
        let p = weight_class_profile(&g);
        assert_eq!(p.classes(), (1, 1));
        assert_eq!(p.class_row, BTreeSet::from([int(1)]));

        let g = BimatrixGame::new(
            vec![vec![int(0), ratio(1, 2)], vec![int(3), int(0)]],
            vec![vec![int(0), int(2)], vec![int(2), int(0)]],
        )
        .unwrap();
        assert_eq!(weight_class_profile(&g).classes(), (2, 1));

        let zero = BimatrixGame::from_integers(&[vec![0]], &[vec![1]]).unwrap();
        let p = weight_class_profile(&zero);
        assert!(p.is_degenerate());
        assert_eq!(p.classes(), (0, 1));
    }

    #[test]
    fn scaling_rejects_non_positive() {
        assert!(matching_pennies().scaled(&int(0)).is_err());
        let g = matching_pennies().scaled(&ratio(5, 3)).unwrap();
        assert_eq!(g.payoff_row()[0][0], ratio(5, 3));
    }
}
