//! CNF formulas: DIMACS input, normalization to the reduction's input shape
//! and the brute-force satisfiability oracle.

use std::fmt;

use crate::budget::Outcome;
use crate::error::{Error, Result};

/// A variable (0-based) with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: usize) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// From a non-zero DIMACS integer.
    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = usize::try_from(value.unsigned_abs()).ok()? - 1;
        Some(Literal {
            var,
            negated: value < 0,
        })
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn complement(self) -> Self {
        Literal {
            var: self.var,
            negated: !self.negated,
        }
    }

    pub fn is_true_under(self, assignment: &Assignment) -> bool {
        assignment.value(self.var) != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "~x{}", self.var + 1)
        } else {
            write!(f, "x{}", self.var + 1)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::invalid(format!("clause {} is empty", j + 1)));
            }
            if let Some(l) = clause.iter().find(|l| l.var >= num_vars) {
                return Err(Error::invalid(format!(
                    "clause {} mentions {l} but the formula has {num_vars} variables",
                    j + 1
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// From DIMACS-style integer clauses.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| Literal::from_dimacs(v).ok_or_else(|| Error::invalid("literal 0 inside a clause")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn occurs(&self, literal: Literal) -> bool {
        self.clauses.iter().flatten().any(|&l| l == literal)
    }

    /// At least one clause, exactly three literals per clause and every one
    /// of the `2n` literals present somewhere.
    pub fn is_normalized(&self) -> bool {
        self.normalization_gap().is_none()
    }

    pub(crate) fn normalization_gap(&self) -> Option<String> {
        if self.clauses.is_empty() {
            return Some("the formula has no clauses".into());
        }
        if let Some(j) = self.clauses.iter().position(|c| c.len() != 3) {
            return Some(format!("clause {} does not have exactly three literals", j + 1));
        }
        let mut seen = vec![[false; 2]; self.num_vars];
        for l in self.clauses.iter().flatten() {
            seen[l.var][usize::from(l.negated)] = true;
        }
        for (var, [pos, neg]) in seen.iter().enumerate() {
            if !pos || !neg {
                let missing = Literal {
                    var,
                    negated: *pos,
                };
                return Some(format!("literal {missing} occurs in no clause"));
            }
        }
        None
    }

    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        self.first_unsatisfied(assignment).is_none()
    }

    /// Index of the first clause with no true literal.
    pub fn first_unsatisfied(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.is_true_under(assignment)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", lits.join(" v "))
            })
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    bits: Vec<bool>,
}

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment { bits }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Assignment {
            bits: bits.iter().map(|&b| b != 0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn value(&self, var: usize) -> bool {
        self.bits[var]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parses DIMACS CNF. Clauses may span lines and are terminated by `0`;
/// `c` lines are comments and a `%` line ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        last_line = line_no;
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line_no, "second problem line"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", n, m] => n.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
                _ => None,
            };
            let (n, m) = parsed.ok_or_else(|| Error::parse(line_no, format!("malformed header `{line}`")))?;
            header = Some((n, m, line_no));
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(Error::parse(line_no, "clause before the `p cnf` header"));
        };
        for token in line.split_whitespace() {
            let value: i64 = token
                .parse()
                .map_err(|_| Error::parse(line_no, format!("`{token}` is not an integer literal")))?;
            match Literal::from_dimacs(value) {
                None => {
                    if current.is_empty() {
                        return Err(Error::parse(line_no, "empty clause"));
                    }
                    clauses.push(std::mem::take(&mut current));
                }
                Some(l) if l.var >= num_vars => {
                    return Err(Error::parse(
                        line_no,
                        format!("variable {} out of range 1..={num_vars}", l.var + 1),
                    ));
                }
                Some(l) => current.push(l),
            }
        }
    }
    let Some((num_vars, declared, header_line)) = header else {
        return Err(Error::parse(last_line.max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(Error::parse(last_line, "clause not terminated by 0"));
    }
    if clauses.len() != declared {
        return Err(Error::parse(
            header_line,
            format!("header declares {declared} clauses but {} were given", clauses.len()),
        ));
    }
    CnfFormula::new(num_vars, clauses).map_err(|e| Error::parse(header_line, e.to_string()))
}

/// One edit made by [`normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Edit {
    /// A short clause padded by repeating its first literal.
    Padded {
        clause: usize,
        original: Vec<Literal>,
        padded: Vec<Literal>,
    },
    /// A variable with a missing literal, covered by a fresh variable `t`
    /// and the clauses `(x v ~x v t)` and `(x v ~x v ~t)`.
    Covered {
        var: usize,
        fresh: usize,
        clauses: [usize; 2],
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationReport {
    pub vars_before: usize,
    pub vars_after: usize,
    pub clauses_before: usize,
    pub clauses_after: usize,
    pub edits: Vec<Edit>,
}

impl NormalizationReport {
    pub fn is_identity(&self) -> bool {
        self.edits.is_empty()
    }

    /// Line-oriented `key value` text.
    pub fn to_text(&self) -> String {
        let dimacs = |c: &[Literal]| {
            c.iter().map(|l| l.to_dimacs().to_string()).collect::<Vec<_>>().join(" ")
        };
        let mut out = format!(
            "vars {} {}\nclauses {} {}\nedits {}\n",
            self.vars_before,
            self.vars_after,
            self.clauses_before,
            self.clauses_after,
            self.edits.len()
        );
        for edit in &self.edits {
            match edit {
                Edit::Padded {
                    clause,
                    original,
                    padded,
                } => out.push_str(&format!(
                    "pad {} : {} 0 -> {} 0\n",
                    clause + 1,
                    dimacs(original),
                    dimacs(padded)
                )),
                Edit::Covered { var, fresh, clauses } => out.push_str(&format!(
                    "cover {} fresh {} clauses {} {}\n",
                    var + 1,
                    fresh + 1,
                    clauses[0] + 1,
                    clauses[1] + 1
                )),
            }
        }
        out
    }
}

/// Brings a formula into the shape the reduction expects: every clause has
/// exactly three literals and every literal occurs. The result is
/// satisfiable exactly when the input is.
pub fn normalize(formula: &CnfFormula) -> Result<(CnfFormula, NormalizationReport)> {
    if formula.clauses.is_empty() {
        return Err(Error::invalid("cannot normalize a formula with no clauses"));
    }
    if let Some(j) = formula.clauses.iter().position(|c| c.len() > 3) {
        return Err(Error::invalid(format!(
            "clause {} has {} literals; only clauses of at most three literals are supported",
            j + 1,
            formula.clauses[j].len()
        )));
    }
    let mut edits = Vec::new();
    let mut clauses = Vec::with_capacity(formula.clauses.len());
    for (j, clause) in formula.clauses.iter().enumerate() {
        if clause.len() < 3 {
            let mut padded = vec![clause[0]; 3 - clause.len()];
            padded.extend_from_slice(clause);
            edits.push(Edit::Padded {
                clause: j,
                original: clause.clone(),
                padded: padded.clone(),
            });
            clauses.push(padded);
        } else {
            clauses.push(clause.clone());
        }
    }
    let mut num_vars = formula.num_vars;
    for var in 0..formula.num_vars {
        let pos = Literal::positive(var);
        if formula.occurs(pos) && formula.occurs(pos.complement()) {
            continue;
        }
        let fresh = num_vars;
        num_vars += 1;
        let first = clauses.len();
        clauses.push(vec![pos, pos.complement(), Literal::positive(fresh)]);
        clauses.push(vec![pos, pos.complement(), Literal::negative(fresh)]);
        edits.push(Edit::Covered {
            var,
            fresh,
            clauses: [first, first + 1],
        });
    }
    let report = NormalizationReport {
        vars_before: formula.num_vars,
        vars_after: num_vars,
        clauses_before: formula.clauses.len(),
        clauses_after: clauses.len(),
        edits,
    };
    let normalized = CnfFormula::new(num_vars, clauses)?;
    debug_assert!(normalized.is_normalized());
    Ok((normalized, report))
}

/// Largest variable count the brute-force oracle accepts.
pub const MAX_BRUTE_FORCE_VARS: usize = 25;

fn assignment_at(n: usize, k: u64) -> Assignment {
    Assignment {
        bits: (0..n).map(|i| k >> (n - 1 - i) & 1 == 1).collect(),
    }
}

/// Least satisfying assignment in binary order (`x1` most significant).
pub fn brute_force_sat(formula: &CnfFormula) -> Outcome<Option<Assignment>> {
    let n = formula.num_vars;
    if n > MAX_BRUTE_FORCE_VARS {
        return Outcome::Exhausted { expanded: 0 };
    }
    Outcome::Complete(
        (0..1u64 << n)
            .map(|k| assignment_at(n, k))
            .find(|a| formula.evaluate(a)),
    )
}

/// Every satisfying assignment in binary order.
pub fn satisfying_assignments(formula: &CnfFormula) -> Outcome<Vec<Assignment>> {
    let n = formula.num_vars;
    if n > MAX_BRUTE_FORCE_VARS {
        return Outcome::Exhausted { expanded: 0 };
    }
    Outcome::Complete(
        (0..1u64 << n)
            .map(|k| assignment_at(n, k))
            .filter(|a| formula.evaluate(a))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const FIG2: &str = "p cnf 4 3\n1 -2 3 0\n2 -3 4 0\n-1 3 -4 0\n";

    fn lits(values: &[i64]) -> Vec<Literal> {
        values.iter().map(|&v| Literal::from_dimacs(v).unwrap()).collect()
    }

    #[test]
    fn parses_the_reference_instance() {
        let f = parse_dimacs(FIG2).unwrap();
        assert_eq!(f.num_vars(), 4);
        assert_eq!(f.clauses(), &[lits(&[1, -2, 3]), lits(&[2, -3, 4]), lits(&[-1, 3, -4])]);
        assert_eq!(f.to_string(), "(x1 v ~x2 v x3) & (x2 v ~x3 v x4) & (~x1 v x3 v ~x4)");
    }

    #[test]
    fn parses_repeated_and_short_clauses() {
        let f = parse_dimacs("p cnf 1 1\n1 1 1 0\n").unwrap();
        assert_eq!(f.clauses(), &[lits(&[1, 1, 1])]);
        let f = parse_dimacs("c short\np cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(f.clauses(), &[lits(&[1, -2])]);
    }

    #[test]
    fn clauses_may_span_lines_and_percent_ends_input() {
        let f = parse_dimacs("p cnf 3 2\n1 2\n3 0 -1\n-2 -3 0\n%\n0\n").unwrap();
        assert_eq!(f.clauses(), &[lits(&[1, 2, 3]), lits(&[-1, -2, -3])]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = |text: &str| match parse_dimacs(text) {
            Err(Error::Parse { line, message }) => (line, message),
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(err("p cnf x 1\n1 0\n").0, 1);
        assert_eq!(err("c hi\np dnf 1 1\n1 0\n").0, 2);
        let (line, msg) = err("p cnf 2 1\n1 3 0\n");
        assert_eq!(line, 2);
        assert!(msg.contains("out of range"));
        let (line, msg) = err("p cnf 2 1\n1 2\n");
        assert_eq!(line, 2);
        assert!(msg.contains("not terminated"));
        let (line, msg) = err("p cnf 2 2\n1 2 0\n0\n");
        assert_eq!(line, 3);
        assert!(msg.contains("empty clause"));
        assert!(err("1 2 0\n").1.contains("before"));
        assert!(err("c nothing\n").1.contains("missing"));
        assert!(err("p cnf 2 2\n1 2 0\n").1.contains("declares 2"));
        assert_eq!(err("p cnf 2 1\n1 a 0\n").0, 2);
    }

    #[test]
    fn normalization_leaves_normalized_input_alone() {
        let f = parse_dimacs(FIG2).unwrap();
        let (g, report) = normalize(&f).unwrap();
        assert_eq!(f, g);
        assert!(report.is_identity());
    }

    #[test]
    fn normalization_pads_and_covers() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let (g, report) = normalize(&f).unwrap();
        assert_eq!(g.num_vars(), 4);
        assert_eq!(
            g.clauses(),
            &[
                lits(&[1, 1, 2]),
                lits(&[1, -1, 3]),
                lits(&[1, -1, -3]),
                lits(&[2, -2, 4]),
                lits(&[2, -2, -4]),
            ]
        );
        assert!(g.is_normalized());
        assert_eq!(report.edits.len(), 3);
        assert_eq!(
            report.to_text(),
            "vars 2 4\nclauses 1 5\nedits 3\npad 1 : 1 2 0 -> 1 1 2 0\ncover 1 fresh 3 clauses 2 3\ncover 2 fresh 4 clauses 4 5\n"
        );
    }

    #[test]
    fn normalization_preserves_satisfiability_on_small_inputs() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        let (g, _) = normalize(&f).unwrap();
        assert_eq!(
            brute_force_sat(&f).complete().unwrap().is_some(),
            brute_force_sat(&g).complete().unwrap().is_some()
        );
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1], &[-1], &[2]]).unwrap();
        let (g, _) = normalize(&f).unwrap();
        assert!(brute_force_sat(&f).complete().unwrap().is_none());
        assert!(brute_force_sat(&g).complete().unwrap().is_none());
    }

    #[test]
    fn normalization_rejects_empty_and_wide_formulas() {
        let empty = CnfFormula::new(1, vec![]).unwrap();
        assert!(matches!(normalize(&empty), Err(Error::InvalidArgument(_))));
        let wide = CnfFormula::from_dimacs_clauses(4, &[&[1, 2, 3, 4]]).unwrap();
        assert!(normalize(&wide).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let f = parse_dimacs(FIG2).unwrap();
        assert!(f.evaluate(&Assignment::from_bits(&[1, 1, 1, 1])));
        let first = brute_force_sat(&f).complete().unwrap().unwrap();
        assert!(f.evaluate(&first));
        assert_eq!(first.to_string(), "0000");

        let contradiction = CnfFormula::from_dimacs_clauses(1, &[&[1, 1, 1], &[-1, -1, -1]]).unwrap();
        assert_eq!(brute_force_sat(&contradiction), Outcome::Complete(None));

        let taut = CnfFormula::from_dimacs_clauses(2, &[&[1, -1, 2], &[2, -2, 1]]).unwrap();
        assert_eq!(
            brute_force_sat(&taut).complete().unwrap().unwrap(),
            Assignment::from_bits(&[0, 0])
        );

        let big = CnfFormula::new(26, vec![vec![Literal::positive(0)]]).unwrap();
        assert!(brute_force_sat(&big).is_exhausted());
    }

    #[test]
    fn satisfying_assignments_are_ordered() {
        let f = CnfFormula::from_dimacs_clauses(2, &[&[1, 2, 2]]).unwrap();
        let all = satisfying_assignments(&f).complete().unwrap();
        let rendered: Vec<String> = all.iter().map(ToString::to_string).collect();
        assert_eq!(rendered, ["01", "10", "11"]);
    }

    #[test]
    fn dimacs_round_trip() {
        let f = parse_dimacs(FIG2).unwrap();
        assert_eq!(f.to_dimacs(), FIG2);
        assert_eq!(parse_dimacs(&f.to_dimacs()).unwrap(), f);
    }
}
