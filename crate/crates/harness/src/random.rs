//! Seeded random bimatrix games.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use une_core::rational::int;
use une_core::{BimatrixGame, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct RandomGameSpec {
    /// Inclusive bounds on the number of row strategies.
    pub rows: (usize, usize),
    pub cols: (usize, usize),
    /// Non-zero payoffs of the row player are drawn from this set.
    pub row_weights: Vec<Rational>,
    pub col_weights: Vec<Rational>,
    /// Probability that an entry is non-zero.
    pub density: f64,
    pub seed: u64,
}

impl RandomGameSpec {
    /// Games between 1x1 and `max x max` with both players' weights from `weights`.
    pub fn square(max: usize, weights: &[i64], density: f64, seed: u64) -> Self {
        let w: Vec<Rational> = weights.iter().map(|&v| int(v)).collect();
        RandomGameSpec {
            rows: (1, max),
            cols: (1, max),
            row_weights: w.clone(),
            col_weights: w,
            density,
            seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        RandomGameSpec { seed, ..self.clone() }
    }
}

fn draw_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize, weights: &[Rational], density: f64) -> Vec<Vec<Rational>> {
    (0..r)
        .map(|_| {
            (0..c)
                .map(|_| {
                    if rng.random_bool(density) {
                        weights[rng.random_range(0..weights.len())].clone()
                    } else {
                        int(0)
                    }
                })
                .collect()
        })
        .collect()
}

/// Deterministic in `spec`. Each matrix is redrawn until it has a non-zero
/// entry; after 64 failed draws a single random cell is set instead.
///
/// Panics if a weight set is empty, contains a non-positive value, or the
/// bounds are empty or start at 0.
pub fn generate_random_game(spec: &RandomGameSpec) -> BimatrixGame {
    assert!(spec.rows.0 >= 1 && spec.rows.0 <= spec.rows.1, "bad row bounds");
    assert!(spec.cols.0 >= 1 && spec.cols.0 <= spec.cols.1, "bad column bounds");
    for w in [&spec.row_weights, &spec.col_weights] {
        assert!(!w.is_empty() && w.iter().all(|v| *v > int(0)), "weights must be positive");
    }
    let density = spec.density.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r = rng.random_range(spec.rows.0..=spec.rows.1);
    let c = rng.random_range(spec.cols.0..=spec.cols.1);
    let mut draw = |weights: &[Rational]| {
        for _ in 0..64 {
            let m = draw_matrix(&mut rng, r, c, weights, density);
            if m.iter().flatten().any(|v| *v != int(0)) {
                return m;
            }
        }
        let mut m = vec![vec![int(0); c]; r];
        let (i, j) = (rng.random_range(0..r), rng.random_range(0..c));
        m[i][j] = weights[rng.random_range(0..weights.len())].clone();
        m
    };
    let mr = draw(&spec.row_weights);
    let mc = draw(&spec.col_weights);
    BimatrixGame::new(mr, mc).expect("dimensions and signs are valid by construction")
}
