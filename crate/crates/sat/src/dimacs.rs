use std::io::{self, Write};

use crate::{Cnf, Lit, SatError};

/// Parses DIMACS CNF text. Comment lines (`c ...`) are ignored and clauses
/// may span lines; each is terminated by `0`.
pub fn parse_dimacs(text: &str) -> Result<Cnf, SatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut cnf = Cnf::new(0);
    let mut current: Vec<Lit> = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(SatError::Dimacs {
                    line: lineno + 1,
                    message: format!("bad header `{line}`"),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| SatError::Dimacs {
                    line: lineno + 1,
                    message: format!("bad header count `{s}`"),
                })
            };
            let (v, c) = (parse(parts[2])?, parse(parts[3])?);
            header = Some((v, c));
            cnf = Cnf::new(v);
            continue;
        }
        if header.is_none() {
            return Err(SatError::Dimacs {
                line: lineno + 1,
                message: "clause before `p cnf` header".into(),
            });
        }
        for tok in line.split_whitespace() {
            let v: i32 = tok.parse().map_err(|_| SatError::Dimacs {
                line: lineno + 1,
                message: format!("bad literal `{tok}`"),
            })?;
            if v == 0 {
                cnf.add_clause(std::mem::take(&mut current));
            } else {
                current.push(Lit::from_dimacs(v));
            }
        }
    }
    if !current.is_empty() {
        cnf.add_clause(current);
    }
    let (_, declared) = header.ok_or(SatError::Dimacs {
        line: 0,
        message: "missing `p cnf` header".into(),
    })?;
    if declared != cnf.num_clauses() {
        return Err(SatError::Dimacs {
            line: 0,
            message: format!(
                "header declares {declared} clauses, found {}",
                cnf.num_clauses()
            ),
        });
    }
    cnf.validate()?;
    Ok(cnf)
}

/// Writes `cnf` in DIMACS form. Each entry of `comments` becomes a `c` line
/// ahead of the header.
pub fn write_dimacs<W: Write>(cnf: &Cnf, comments: &[String], mut out: W) -> io::Result<()> {
    for c in comments {
        writeln!(out, "c {c}")?;
    }
    writeln!(out, "p cnf {} {}", cnf.num_vars(), cnf.num_clauses())?;
    for clause in cnf.clauses() {
        for lit in clause {
            write!(out, "{} ", lit.to_dimacs())?;
        }
        writeln!(out, "0")?;
    }
    Ok(())
}
