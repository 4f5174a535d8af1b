//! The verification suites.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use une_core::cnf::{brute_force_sat, satisfying_assignments, Assignment, CnfFormula};
use une_core::formats::write_game;
use une_core::game::{check_uniform_equilibrium, enumerate_uniform_equilibria, weight_class_profile};
use une_core::graph::{game_to_graph, graph_to_game};
use une_core::planarizer::{gadget_size, lift_witness, planarize, project_witness, GridEmbedding, GridPoint};
use une_core::rational::int;
use une_core::reduction::{assignment_to_witness, build_reduction_graph, witness_to_assignment};
use une_core::search::{enumerate_witnesses_naive, find_undominated_out_regular, members_have_positive_out_weight};
use une_core::{Budget, Outcome, Part, Rational, Result, SupportPair, Verdict, VertexSet, WeightedBipartiteDigraph};

use crate::random::{generate_random_game, RandomGameSpec};
use crate::report::{StageStatus, VerificationReport};

/// Per-trial seeds are drawn from a generator seeded with `spec.seed`.
pub fn trial_seeds(seed: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

fn render_pairs(pairs: &[SupportPair], game: &une_core::BimatrixGame) -> String {
    let shown: Vec<String> = pairs.iter().map(|p| p.describe(game)).collect();
    format!("[{}]", shown.join(" "))
}

/// Compares, game by game, the uniform equilibria found by support
/// enumeration with the undominated out-regular subsets found by running
/// the graph checker on every vertex subset; also checks the pruned finder
/// against the latter and the positive out-weight property on strongly
/// connected instances.
pub fn crosscheck_equivalence(spec: &RandomGameSpec, trials: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!(
        "random games: seed {} trials {} rows {}..={} cols {}..={} density {}",
        spec.seed, trials, spec.rows.0, spec.rows.1, spec.cols.0, spec.cols.1, spec.density
    ));
    let mut agree = 0;
    let mut finder_agree = 0;
    let mut equilibria = 0;
    let mut connected = 0;
    let mut lemma_checked = 0;
    let mut lemma_ok = true;
    let mut first_bad: Option<String> = None;
    for (t, seed) in trial_seeds(spec.seed, trials).into_iter().enumerate() {
        let game = generate_random_game(&spec.with_seed(seed));
        let graph = game_to_graph(&game).expect("generated games are non-degenerate");
        let by_game = enumerate_uniform_equilibria(&game, Budget::unlimited())
            .map(|o| o.complete().unwrap_or_default());
        let naive = enumerate_witnesses_naive(&graph, Budget::unlimited()).map(|o| o.complete().unwrap_or_default());
        let found = find_undominated_out_regular(&graph, Budget::unlimited()).map(Outcome::complete);
        let (Ok(by_game), Ok(naive), Ok(Some(found))) = (by_game, naive, found) else {
            first_bad.get_or_insert_with(|| format!("trial {t} seed {seed}: a computation returned an error"));
            continue;
        };
        let by_graph: Vec<SupportPair> = naive
            .iter()
            .map(|w| graph.support_pair(&w.subset).expect("witnesses meet both parts"))
            .collect();
        equilibria += by_game.len();
        if by_game == by_graph {
            agree += 1;
        } else {
            first_bad.get_or_insert_with(|| {
                format!(
                    "trial {t} seed {seed}\n{}equilibria {}\nwitnesses {}",
                    write_game(&game),
                    render_pairs(&by_game, &game),
                    render_pairs(&by_graph, &game)
                )
            });
        }
        if found.as_ref() == naive.first() {
            finder_agree += 1;
        } else {
            first_bad.get_or_insert_with(|| format!("trial {t} seed {seed}: finder disagrees\n{}", write_game(&game)));
        }
        if graph.is_strongly_connected() {
            connected += 1;
            for w in &naive {
                lemma_checked += 1;
                if !members_have_positive_out_weight(&graph, &w.subset).unwrap_or(false) {
                    lemma_ok = false;
                    first_bad.get_or_insert_with(|| {
                        format!("trial {t} seed {seed}: member with zero out-weight\n{}", write_game(&game))
                    });
                }
            }
        }
    }
    report.check(
        "equivalence",
        agree == trials,
        format!("{agree}/{trials} trials: equilibrium supports equal witness sets ({equilibria} equilibria)"),
    );
    report.check(
        "finder",
        finder_agree == trials,
        format!("{finder_agree}/{trials} trials: finder returns the least naive witness"),
    );
    report.check(
        "positive-out-weight",
        lemma_ok,
        format!("{lemma_checked} witnesses on {connected} strongly connected games"),
    );
    if first_bad.is_some() {
        report.counterexample = first_bad;
    }
    report
}

/// Proper crossings between segments of different routed arcs, by
/// orientation tests over every segment pair.
pub fn count_segment_crossings(embedding: &GridEmbedding) -> usize {
    type Segment = (GridPoint, GridPoint);
    fn orient(a: GridPoint, b: GridPoint, c: GridPoint) -> i64 {
        ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)).signum()
    }
    fn proper(s: Segment, t: Segment) -> bool {
        orient(s.0, s.1, t.0) * orient(s.0, s.1, t.1) < 0 && orient(t.0, t.1, s.0) * orient(t.0, t.1, s.1) < 0
    }
    let segments: Vec<[Segment; 2]> = embedding
        .arcs()
        .iter()
        .map(|a| [(a.start, a.bend), (a.bend, a.end)])
        .collect();
    let mut count = 0;
    for (i, a) in segments.iter().enumerate() {
        for b in &segments[i + 1..] {
            for s in a {
                for t in b {
                    count += usize::from(proper(*s, *t));
                }
            }
        }
    }
    count
}

/// Most satisfying assignments walked per instance.
pub const MAX_ASSIGNMENTS: usize = 256;

fn weight_classes(graph: &WeightedBipartiteDigraph, part: Part) -> Vec<Rational> {
    let mut ws: Vec<Rational> = graph
        .arcs()
        .filter(|(s, _, _)| graph.part(*s) == part)
        .map(|(_, _, w)| w.clone())
        .collect();
    ws.sort();
    ws.dedup();
    ws
}

fn uniform_ne(graph: &WeightedBipartiteDigraph, set: &VertexSet) -> Result<bool> {
    let game = graph_to_game(graph)?;
    check_uniform_equilibrium(&game, &graph.support_pair(set)?)
}

/// The full reduction pipeline on one normalized formula.
pub fn end_to_end(name: &str, formula: &CnfFormula, budget: Budget) -> Result<VerificationReport> {
    let rg = build_reduction_graph(formula)?;
    let (n, m) = (formula.num_vars(), formula.num_clauses());
    let heavy = Rational::from_integer(((m + n) as i64).into());
    let g = rg.graph();
    let mut report = VerificationReport::new(format!("{name} (n={n}, m={m})"));

    let structure_ok = g.num_vertices() == 6 * n + 7 * m + 1
        && g.num_arcs() == 8 * n + 10 * m
        && weight_classes(g, Part::Row) == [int(1)]
        && weight_classes(g, Part::Column) == [int(1), heavy.clone()]
        && g.is_strongly_connected()
        && weight_class_profile(&graph_to_game(g)?).classes() == (1, 2);
    report.check(
        "structure",
        structure_ok,
        format!("|V|={} |E|={} heavy={} strongly connected={}", g.num_vertices(), g.num_arcs(), m + n, g.is_strongly_connected()),
    );

    let sat = match brute_force_sat(formula) {
        Outcome::Complete(Some(xi)) => {
            report.record("sat-oracle", StageStatus::Pass, format!("satisfiable, least assignment {xi}"));
            Some(true)
        }
        Outcome::Complete(None) => {
            report.record("sat-oracle", StageStatus::Pass, "unsatisfiable");
            Some(false)
        }
        Outcome::Exhausted { .. } => {
            report.record("sat-oracle", StageStatus::Skipped, format!("{n} variables is beyond brute force"));
            None
        }
    };

    let mut lemma_sets = 0;
    let mut lemma_ok = true;
    match find_undominated_out_regular(g, budget)? {
        Outcome::Complete(Some(w)) => {
            let decoded = witness_to_assignment(&rg, &w.subset);
            let ok = sat != Some(false) && decoded.as_ref().is_ok_and(|xi| formula.evaluate(xi));
            lemma_sets += 1;
            lemma_ok &= members_have_positive_out_weight(g, &w.subset)?;
            let detail = match decoded {
                Ok(xi) => format!("witness of size {} decodes to {xi}", w.subset.len()),
                Err(e) => format!("witness of size {} does not decode: {e}", w.subset.len()),
            };
            report.check("finder-g", ok, detail);
        }
        Outcome::Complete(None) => report.check("finder-g", sat != Some(true), "no undominated out-regular subset"),
        Outcome::Exhausted { expanded } => {
            report.record("finder-g", StageStatus::Skipped, format!("budget exhausted after {expanded} nodes"))
        }
    }

    let pr = planarize(&rg)?;
    let h = pr.graph();
    let crossings = pr.gadgets().len();
    let oracle = count_segment_crossings(pr.embedding());
    let planar_ok = h.is_planar()
        && crossings == oracle
        && h.num_vertices() == g.num_vertices() + gadget_size(m + n) * crossings
        && weight_classes(h, Part::Row) == [int(1)]
        && weight_classes(h, Part::Column) == [int(1), heavy.clone()]
        && weight_class_profile(&graph_to_game(h)?).classes() == (1, 2);
    report.check(
        "planarity",
        planar_ok,
        format!(
            "H: |V|={} planar={} crossings={crossings} segment oracle={oracle}",
            h.num_vertices(),
            h.is_planar()
        ),
    );

    if sat == Some(true) {
        let all = satisfying_assignments(formula).complete().unwrap_or_default();
        let walked: Vec<Assignment> = all.iter().take(MAX_ASSIGNMENTS).cloned().collect();
        let (mut wg, mut ng, mut lh, mut nh, mut pj) = (true, true, true, true, true);
        let mut bad: Option<String> = None;
        for xi in &walked {
            let s = assignment_to_witness(&rg, xi)?;
            let expected = Verdict::Accepted { alpha: int(1), beta: heavy.clone() };
            if g.verify(&s)? != expected {
                wg = false;
                bad.get_or_insert(format!("{xi}: {}", g.verify(&s)?.describe(g)));
                continue;
            }
            lemma_sets += 1;
            lemma_ok &= members_have_positive_out_weight(g, &s)?;
            ng &= uniform_ne(g, &s)?;
            let t = match lift_witness(&rg, &pr, &s) {
                Ok(t) => t,
                Err(e) => {
                    lh = false;
                    bad.get_or_insert(format!("{xi}: lift failed: {e}"));
                    continue;
                }
            };
            if h.is_strongly_connected() {
                lemma_sets += 1;
                lemma_ok &= members_have_positive_out_weight(h, &t)?;
            }
            nh &= uniform_ne(h, &t)?;
            match project_witness(&rg, &pr, &t) {
                Ok(back) => {
                    let round = back == s && witness_to_assignment(&rg, &back).is_ok_and(|a| a == *xi);
                    if !round {
                        bad.get_or_insert(format!("{xi}: projection differs"));
                    }
                    pj &= round;
                }
                Err(e) => {
                    pj = false;
                    bad.get_or_insert(format!("{xi}: project failed: {e}"));
                }
            }
        }
        let k = walked.len();
        let total = all.len();
        let tail = |what: &str| format!("{k} of {total} satisfying assignments: {what}");
        report.check("witness-g", wg, tail(&format!("(alpha,beta)=(1,{})", m + n)));
        report.check("equilibrium-g", ng, tail("uniform Nash equilibrium on the game of G"));
        report.check("lift-h", lh, tail(&format!("lifted subsets accepted on H ({crossings} gadgets)")));
        report.check("equilibrium-h", nh, tail("uniform Nash equilibrium on the game of H"));
        report.check("project", pj, tail("project(lift(S)) = S and decodes to the assignment"));
        if let Some(b) = bad {
            report.counterexample.get_or_insert(b);
        }

        match find_undominated_out_regular(h, budget)? {
            Outcome::Complete(Some(w)) => {
                if h.is_strongly_connected() {
                    lemma_sets += 1;
                    lemma_ok &= members_have_positive_out_weight(h, &w.subset)?;
                }
                let decoded = project_witness(&rg, &pr, &w.subset).and_then(|s| witness_to_assignment(&rg, &s));
                let ok = decoded.as_ref().is_ok_and(|xi| formula.evaluate(xi));
                let detail = match decoded {
                    Ok(xi) => format!("witness of size {} projects and decodes to {xi}", w.subset.len()),
                    Err(e) => format!("witness of size {} fails to project: {e}", w.subset.len()),
                };
                report.check("finder-h", ok, detail);
            }
            Outcome::Complete(None) => report.check("finder-h", false, "no witness on H for a satisfiable formula"),
            Outcome::Exhausted { expanded } => {
                report.record("finder-h", StageStatus::Skipped, format!("budget exhausted after {expanded} nodes"))
            }
        }
    }
    report.check(
        "positive-out-weight",
        lemma_ok,
        format!("{lemma_sets} witnesses on strongly connected graphs"),
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::find;
    use une_core::cnf::normalize;

    #[test]
    fn reference_formula_passes() {
        let f = find("fig2").unwrap().formula();
        let r = end_to_end("fig2", &f, Budget::nodes(1_000_000)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        for stage in ["witness-g", "lift-h", "project", "finder-g", "finder-h", "planarity"] {
            assert_eq!(r.stage(stage).unwrap().status, StageStatus::Pass, "{stage}");
        }
    }

    #[test]
    fn contradiction_takes_the_unsat_path() {
        let f = find("unsat_1x2").unwrap().formula();
        let r = end_to_end("unsat_1x2", &f, Budget::nodes(1_000_000)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.stage("finder-g").unwrap().status, StageStatus::Pass);
        assert!(r.stage("witness-g").is_none());
    }

    #[test]
    fn tautology_passes() {
        let (f, _) = normalize(&CnfFormula::from_dimacs_clauses(1, &[&[1, -1, 1]]).unwrap()).unwrap();
        assert!(end_to_end("taut", &f, Budget::nodes(100_000)).unwrap().passed());
    }

    #[test]
    fn tiny_budget_skips_instead_of_failing() {
        let f = find("unsat_2x4").unwrap().formula();
        let r = end_to_end("unsat_2x4", &f, Budget::nodes(1)).unwrap();
        assert_eq!(r.stage("finder-g").unwrap().status, StageStatus::Skipped);
        assert!(r.passed());
    }

    #[test]
    fn unnormalized_input_is_an_error() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        assert!(end_to_end("raw", &f, Budget::unlimited()).is_err());
    }

    #[test]
    fn small_crosschecks_pass() {
        let r = crosscheck_equivalence(&RandomGameSpec::square(3, &[1, 2], 0.5, 7), 40);
        assert!(r.passed(), "{}", r.to_text());
        let one = RandomGameSpec {
            rows: (1, 1),
            cols: (1, 1),
            ..RandomGameSpec::square(1, &[1], 0.5, 3)
        };
        assert!(crosscheck_equivalence(&one, 10).passed());
    }

    #[test]
    fn seeds_are_reproducible() {
        assert_eq!(trial_seeds(5, 4), trial_seeds(5, 4));
        let spec = RandomGameSpec::square(3, &[1], 0.5, 11);
        assert_eq!(crosscheck_equivalence(&spec, 5), crosscheck_equivalence(&spec, 5));
    }
}
