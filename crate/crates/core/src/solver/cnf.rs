//! DIMACS CNF export of a coloring problem.
//!
//! Variable `cell * |A| + symbol + 1` is true iff the cell carries the symbol.
//! Each cell gets one at-least-one clause and pairwise at-most-one clauses;
//! each forbidden placement becomes one all-negative clause.

use std::fmt::Write as _;

use super::engine::Problem;
use crate::config::{cell_coords, Domain};
use crate::error::Result;
use crate::sft::Sft;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
    pub comments: Vec<String>,
}

impl Cnf {
    pub fn var(num_symbols: usize, cell: usize, symbol: usize) -> i64 {
        (cell * num_symbols + symbol + 1) as i64
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for clause in &self.clauses {
            for lit in clause {
                let _ = write!(out, "{lit} ");
            }
            out.push_str("0\n");
        }
        out
    }
}

pub fn export_cnf(x: &Sft, domain: &Domain) -> Result<Cnf> {
    let problem = Problem::compile(x, domain)?;
    let k = problem.num_symbols();
    let n = problem.num_cells();
    let mut clauses = Vec::new();
    for cell in 0..n {
        clauses.push((0..k).map(|s| Cnf::var(k, cell, s)).collect());
        for a in 0..k {
            for b in a + 1..k {
                clauses.push(vec![-Cnf::var(k, cell, a), -Cnf::var(k, cell, b)]);
            }
        }
    }
    for p in problem.placements() {
        clauses.push(p.iter().map(|&(c, s)| -Cnf::var(k, c, s)).collect());
    }
    let mut comments = vec![format!("cells {n} symbols {k}")];
    for (i, coords) in cell_coords(domain).iter().enumerate() {
        let cs: Vec<String> = coords.iter().map(i64::to_string).collect();
        comments.push(format!("cell {i} = ({})", cs.join(",")));
    }
    Ok(Cnf {
        num_vars: n * k,
        clauses,
        comments,
    })
}
