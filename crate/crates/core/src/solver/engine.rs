//! Backtracking search with forward checking over a compiled coloring problem.
//!
//! A problem is a set of cells, a symbol count, and a list of forbidden
//! placements (each a conjunction of `cell = symbol` literals). Search picks the
//! unassigned cell with the fewest remaining symbols (lowest index on ties), tries
//! symbols in increasing order, and after each assignment removes every symbol that
//! would complete a forbidden placement.

use crate::config::{cell_coords, placements, CellIndex, Domain};
use crate::error::Result;
use crate::group::ensure_same_group;
use crate::sft::Sft;

#[derive(Debug, Clone)]
pub struct Problem {
    pub(crate) num_cells: usize,
    pub(crate) num_symbols: usize,
    pub(crate) placements: Vec<Vec<(usize, usize)>>,
}

impl Problem {
    /// Compiles every in-domain placement of every forbidden pattern.
    pub fn compile(x: &Sft, domain: &Domain) -> Result<Self> {
        if let Domain::Ball { elements, .. } = domain {
            if let Some(e) = elements.first() {
                ensure_same_group(e.group(), x.group())?;
            }
        }
        let index = CellIndex::new(domain);
        let mut out = Vec::new();
        for p in x.forbidden() {
            'placement: for cells in placements(x.group(), domain, &index, p) {
                let mut lits: Vec<(usize, usize)> = Vec::with_capacity(cells.len());
                for (&cell, (_, sym)) in cells.iter().zip(p.entries()) {
                    match lits.iter().find(|(c, _)| *c == cell) {
                        // folded onto one torus cell with conflicting symbols: never matches
                        Some((_, s)) if s != sym => continue 'placement,
                        Some(_) => {}
                        None => lits.push((cell, *sym)),
                    }
                }
                out.push(lits);
            }
        }
        out.sort();
        out.dedup();
        Ok(Problem {
            num_cells: cell_coords(domain).len(),
            num_symbols: x.alphabet().len(),
            placements: out,
        })
    }

    pub fn num_cells(&self) -> usize {
        self.num_cells
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn placements(&self) -> &[Vec<(usize, usize)>] {
        &self.placements
    }

    /// True iff no placement is fully matched by `values`.
    pub fn satisfied_by(&self, values: &[usize]) -> bool {
        self.placements
            .iter()
            .all(|p| !p.iter().all(|&(c, s)| values[c] == s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<usize>),
    Exhausted,
    BudgetExceeded,
}

const UNASSIGNED: usize = usize::MAX;

struct Frame {
    cell: usize,
    trail_mark: usize,
    next_symbol: usize,
}

pub struct Engine<'a> {
    problem: &'a Problem,
    words: usize,
    domains: Vec<u64>,
    sizes: Vec<u32>,
    assigned: Vec<usize>,
    // placement ids containing literal (cell, symbol), indexed cell * k + symbol
    watch: Vec<Vec<u32>>,
    trail: Vec<(usize, usize)>,
    nodes: u64,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &'a Problem) -> Self {
        let k = problem.num_symbols;
        let words = k.div_ceil(64).max(1);
        let n = problem.num_cells;
        let mut domains = vec![0u64; n * words];
        for cell in 0..n {
            for s in 0..k {
                domains[cell * words + s / 64] |= 1 << (s % 64);
            }
        }
        let mut watch = vec![Vec::new(); n * k];
        for (pid, p) in problem.placements.iter().enumerate() {
            for &(c, s) in p {
                watch[c * k + s].push(pid as u32);
            }
        }
        Engine {
            problem,
            words,
            domains,
            sizes: vec![k as u32; n],
            assigned: vec![UNASSIGNED; n],
            watch,
            trail: Vec::new(),
            nodes: 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn has(&self, cell: usize, s: usize) -> bool {
        self.domains[cell * self.words + s / 64] & (1 << (s % 64)) != 0
    }

    fn remove(&mut self, cell: usize, s: usize) -> bool {
        if !self.has(cell, s) {
            return true;
        }
        self.domains[cell * self.words + s / 64] &= !(1 << (s % 64));
        self.sizes[cell] -= 1;
        self.trail.push((cell, s));
        self.sizes[cell] > 0
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (cell, s) = self.trail.pop().expect("trail entry");
            self.domains[cell * self.words + s / 64] |= 1 << (s % 64);
            self.sizes[cell] += 1;
        }
    }

    /// Unit placements: forbid their symbol outright. Returns false on a wipe-out.
    fn root_propagate(&mut self) -> bool {
        let units: Vec<(usize, usize)> = self
            .problem
            .placements
            .iter()
            .filter(|p| p.len() == 1)
            .map(|p| p[0])
            .collect();
        units.into_iter().all(|(c, s)| self.remove(c, s))
    }

    /// Forward checking after `cell = s`. Returns false on a conflict.
    fn propagate(&mut self, cell: usize, s: usize) -> bool {
        let k = self.problem.num_symbols;
        let problem = self.problem;
        for i in 0..self.watch[cell * k + s].len() {
            let pid = self.watch[cell * k + s][i] as usize;
            let mut open: Option<(usize, usize)> = None;
            let mut open_count = 0;
            let mut live = true;
            for &(c, t) in &problem.placements[pid] {
                let a = self.assigned[c];
                if a == UNASSIGNED {
                    open_count += 1;
                    open = Some((c, t));
                } else if a != t {
                    live = false;
                    break;
                }
            }
            if !live {
                continue;
            }
            match open_count {
                0 => return false,
                1 => {
                    let (c, t) = open.expect("one open literal");
                    if !self.remove(c, t) {
                        return false;
                    }
                }
                _ => {}
            }
        }
        true
    }

    fn choose_cell(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..self.problem.num_cells {
            if self.assigned[c] != UNASSIGNED {
                continue;
            }
            match best {
                Some(b) if self.sizes[b] <= self.sizes[c] => {}
                _ => best = Some(c),
            }
            if self.sizes[c] == 0 {
                break;
            }
        }
        best
    }

    /// Visits solutions in search order until `visit` returns false.
    /// Returns `Err(())` when the node budget runs out first.
    pub fn run(&mut self, budget: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> std::result::Result<(), ()> {
        if !self.root_propagate() {
            return Ok(());
        }
        let k = self.problem.num_symbols;
        let mut stack: Vec<Frame> = Vec::new();
        let mut descend = true;
        loop {
            if descend {
                match self.choose_cell() {
                    None => {
                        if !visit(&self.assigned) {
                            return Ok(());
                        }
                    }
                    Some(cell) => stack.push(Frame {
                        cell,
                        trail_mark: self.trail.len(),
                        next_symbol: 0,
                    }),
                }
            }
            // advance the top frame to its next viable symbol
            let Some(top) = stack.last_mut() else {
                return Ok(());
            };
            let (cell, mark) = (top.cell, top.trail_mark);
            let mut start = top.next_symbol;
            self.assigned[cell] = UNASSIGNED;
            self.undo_to(mark);
            descend = false;
            while start < k {
                let s = start;
                start += 1;
                if !self.has(cell, s) {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > budget {
                    return Err(());
                }
                self.assigned[cell] = s;
                if self.propagate(cell, s) {
                    descend = true;
                    break;
                }
                self.assigned[cell] = UNASSIGNED;
                self.undo_to(mark);
            }
            if descend {
                stack.last_mut().expect("frame").next_symbol = start;
            } else {
                stack.pop();
            }
        }
    }

    pub fn first(&mut self, budget: u64) -> SearchOutcome {
        let mut found = None;
        match self.run(budget, &mut |sol| {
            found = Some(sol.to_vec());
            false
        }) {
            Err(()) => SearchOutcome::BudgetExceeded,
            Ok(()) => match found {
                Some(v) => SearchOutcome::Found(v),
                None => SearchOutcome::Exhausted,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(p: &Problem) -> u64 {
        let n = p.num_cells;
        let k = p.num_symbols;
        let total = (k as u64).pow(n as u32);
        let mut count = 0;
        for mut code in 0..total {
            let mut vals = vec![0usize; n];
            for v in vals.iter_mut() {
                *v = (code % k as u64) as usize;
                code /= k as u64;
            }
            if p.satisfied_by(&vals) {
                count += 1;
            }
        }
        count
    }

    fn count(p: &Problem) -> u64 {
        let mut e = Engine::new(p);
        let mut c = 0u64;
        e.run(u64::MAX, &mut |sol| {
            assert!(p.satisfied_by(sol));
            c += 1;
            true
        })
        .unwrap();
        c
    }

    #[test]
    fn counts_match_brute_force_on_small_problems() {
        // a 5-cycle with "no equal neighbours" over 3 symbols: 30 proper colorings
        let mut placements = Vec::new();
        for i in 0..5 {
            for s in 0..3 {
                placements.push(vec![(i, s), ((i + 1) % 5, s)]);
            }
        }
        let p = Problem {
            num_cells: 5,
            num_symbols: 3,
            placements,
        };
        assert_eq!(brute_count(&p), 30);
        assert_eq!(count(&p), 30);
    }

    #[test]
    fn unit_placements_prune_at_root() {
        let p = Problem {
            num_cells: 1,
            num_symbols: 2,
            placements: vec![vec![(0, 0)], vec![(0, 1)]],
        };
        let mut e = Engine::new(&p);
        assert_eq!(e.first(10), SearchOutcome::Exhausted);
        assert_eq!(e.nodes(), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let p = Problem {
            num_cells: 10,
            num_symbols: 2,
            placements: vec![vec![(0, 0), (9, 0)], vec![(0, 0), (9, 1)], vec![(0, 1), (9, 0)], vec![(0, 1), (9, 1)]],
        };
        let mut e = Engine::new(&p);
        assert_eq!(e.first(1), SearchOutcome::BudgetExceeded);
        let mut e = Engine::new(&p);
        assert_eq!(e.first(1_000_000), SearchOutcome::Exhausted);
    }

    #[test]
    fn wide_alphabets_use_multiple_words() {
        let k = 130;
        let placements = (0..k - 1).map(|s| vec![(0, s)]).collect();
        let p = Problem {
            num_cells: 1,
            num_symbols: k,
            placements,
        };
        let mut e = Engine::new(&p);
        assert_eq!(e.first(10), SearchOutcome::Found(vec![k - 1]));
    }
}
