//! Small DIMACS instances shipped with the crate. Names starting with
//! `unsat_` are unsatisfiable.

use une_core::cnf::{parse_dimacs, CnfFormula};

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
}

impl CorpusEntry {
    pub fn formula(&self) -> CnfFormula {
        parse_dimacs(self.text).expect("bundled instances parse")
    }

    pub fn expected_satisfiable(&self) -> bool {
        !self.name.starts_with("unsat_")
    }
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            text: include_str!(concat!("../corpus/", $name, ".cnf")),
        }
    };
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry!("fig2"),
        entry!("taut1"),
        entry!("dup2"),
        entry!("chain3"),
        entry!("rev3"),
        entry!("six4"),
        entry!("mix5"),
        entry!("unsat_1x2"),
        entry!("unsat_1x3a"),
        entry!("unsat_1x3b"),
        entry!("unsat_1x4"),
        entry!("unsat_2x3"),
        entry!("unsat_2x4"),
        entry!("unsat_3x8"),
    ]
}

pub fn find(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
