//! DIMACS CNF reading and writing.
//!
//! Clause order in the file is clause order in the [`Formula`]; nothing is
//! simplified or reordered. Legacy files that end with a `%` line (followed
//! by a lone `0`) are accepted: everything from the `%` on is ignored.

use gubin_core::{Clause, Formula, Literal};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: malformed problem line {text:?}, expected \"p cnf <vars> <clauses>\"")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: second problem line")]
    DuplicateHeader { line: usize },
    #[error("missing \"p cnf\" problem line")]
    MissingHeader,
    #[error("line {line}: clause data before the problem line")]
    ClauseBeforeHeader { line: usize },
    #[error("line {line}: invalid literal {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {literal} exceeds declared variable count {vars}")]
    LiteralOutOfRange { line: usize, literal: i64, vars: u32 },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("last clause is not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { declared: usize, found: usize },
}

pub fn parse_dimacs(text: &str) -> Result<Formula, DimacsError> {
    let mut header: Option<(u32, usize)> = None;
    let mut clauses: Vec<Clause> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::DuplicateHeader { line });
            }
            header = Some(parse_header(trimmed).ok_or_else(|| DimacsError::MalformedHeader {
                line,
                text: trimmed.to_string(),
            })?);
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(DimacsError::ClauseBeforeHeader { line });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                if pending.is_empty() {
                    return Err(DimacsError::EmptyClause { line });
                }
                clauses.push(Clause::new(std::mem::take(&mut pending)).expect("nonempty"));
                continue;
            }
            if value.unsigned_abs() > u64::from(vars) || value.unsigned_abs() > i32::MAX as u64 {
                return Err(DimacsError::LiteralOutOfRange {
                    line,
                    literal: value,
                    vars,
                });
            }
            let literal = Literal::from_dimacs(value as i32).expect("nonzero and in range");
            pending.push(literal);
        }
    }

    let (vars, declared) = header.ok_or(DimacsError::MissingHeader)?;
    if !pending.is_empty() {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != declared {
        return Err(DimacsError::ClauseCountMismatch {
            declared,
            found: clauses.len(),
        });
    }
    Ok(Formula::with_var_count(clauses, vars).expect("literals checked against header"))
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let vars = parts.next()?.parse().ok()?;
    let clauses = parts.next()?.parse().ok()?;
    parts.next().is_none().then_some((vars, clauses))
}

/// One clause per line, header first.
pub fn serialize_dimacs(f: &Formula) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clause_count());
    for clause in f.clauses() {
        for lit in clause.literals() {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}
