use std::time::Instant;

use crate::cnf::check_clause;
use crate::heap::VarHeap;
use crate::{Cnf, Lit, SatError, Var};

/// Index of a clause in the order it was handed to the solver.
pub type ClauseId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Seeds the tiny initial activity perturbation. `0` means none.
    pub seed: u64,
    /// Conflicts per Luby unit.
    pub restart_base: u64,
    pub var_decay: f64,
    /// When false the seed is mixed with the wall clock.
    pub deterministic: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            restart_base: 100,
            var_decay: 0.95,
            deterministic: true,
        }
    }
}

/// A satisfying assignment, indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model(pub Vec<bool>);

impl Model {
    pub fn value(&self, v: Var) -> bool {
        self.0[v.index()]
    }

    pub fn lit_value(&self, l: Lit) -> bool {
        self.value(l.var()) == l.is_positive()
    }
}

/// Evidence of unsatisfiability.
///
/// `core` lists input clauses reachable from the final conflict through
/// reasons and learned-clause derivations; together with `learned` they
/// reproduce the conflict by unit propagation alone. `var_counts[v]` is the
/// number of those clauses that mention `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub core: Vec<ClauseId>,
    pub learned: Vec<Vec<Lit>>,
    pub var_counts: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(Model),
    Unsat(Refutation),
}

impl Outcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, Outcome::Sat(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

#[derive(Debug, Clone)]
struct Clause {
    // span in `Solver::lits`
    start: usize,
    len: u32,
    input: Option<ClauseId>,
    // span in `Solver::antecedents`: clauses resolved to derive this one
    ante_start: usize,
    ante_len: u32,
    // distinct decision levels when learned
    lbd: u32,
    // detached clauses stay here so refutations can still reach them
    attached: bool,
}

#[derive(Debug, Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: Lit,
}

enum Search {
    Done(Outcome),
    Restart,
    Expired,
}

const FIRST_REDUCE: u64 = 2000;
const REDUCE_STEP: u64 = 300;

const UNDEF: i8 = 0;
const TRUE: i8 = 1;
const FALSE: i8 = -1;

/// Conflict-driven clause-learning solver: two watched literals, VSIDS
/// decisions, phase saving, Luby restarts, first-UIP learning with clause
/// minimization, and periodic removal of learned clauses with many decision
/// levels. Removed clauses are only unwatched, so every learned clause keeps
/// its derivation and input clause ids stay stable.
#[derive(Debug, Clone)]
pub struct Solver {
    cfg: SolverConfig,
    num_vars: usize,
    clauses: Vec<Clause>,
    lits: Vec<Lit>,
    antecedents: Vec<u32>,
    num_inputs: usize,
    watches: Vec<Vec<Watch>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    phase: Vec<bool>,
    seen: Vec<bool>,
    learnts: Vec<usize>,
    next_reduce: u64,
    reductions: u64,
    refutation: Option<Refutation>,
    // level-0 conflict detected while adding clauses, resolved on next solve
    pending_conflict: Option<usize>,
    stats: Stats,
}

impl Solver {
    pub fn new(num_vars: usize, cfg: SolverConfig) -> Solver {
        let mut s = Solver {
            cfg,
            num_vars: 0,
            clauses: Vec::new(),
            lits: Vec::new(),
            antecedents: Vec::new(),
            num_inputs: 0,
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            heap: VarHeap::default(),
            phase: Vec::new(),
            seen: Vec::new(),
            learnts: Vec::new(),
            next_reduce: FIRST_REDUCE,
            reductions: 0,
            refutation: None,
            pending_conflict: None,
            stats: Stats::default(),
        };
        s.ensure_vars(num_vars);
        s
    }

    pub fn from_cnf(cnf: &Cnf, cfg: SolverConfig) -> Result<Solver, SatError> {
        cnf.validate()?;
        let mut s = Solver::new(cnf.num_vars(), cfg);
        for c in cnf.clauses() {
            s.add_clause(c)?;
        }
        Ok(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_input_clauses(&self) -> usize {
        self.num_inputs
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn ensure_vars(&mut self, n: usize) {
        if n <= self.num_vars {
            return;
        }
        let old = self.num_vars;
        self.num_vars = n;
        self.watches.resize(2 * n, Vec::new());
        self.assigns.resize(n, UNDEF);
        self.level.resize(n, 0);
        self.reason.resize(n, None);
        self.phase.resize(n, false);
        self.seen.resize(n, false);
        self.activity.resize(n, 0.0);
        self.heap.grow_to(n);
        let mut rng = SplitMix(self.effective_seed());
        for v in old..n {
            if self.cfg.seed != 0 || !self.cfg.deterministic {
                self.activity[v] = rng.next_unit() * 1e-5;
            }
            self.heap.insert(v as u32, &self.activity);
        }
    }

    fn effective_seed(&self) -> u64 {
        if self.cfg.deterministic {
            self.cfg.seed
        } else {
            let nanos = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(0);
            self.cfg.seed ^ nanos
        }
    }

    /// Adds an input clause and returns its id. Clauses may be added after a
    /// `solve` call; the next `solve` answers for the conjunction.
    pub fn add_clause(&mut self, lits: &[Lit]) -> Result<ClauseId, SatError> {
        let id = self.num_inputs;
        check_clause(id, lits, self.num_vars)?;
        self.num_inputs += 1;
        self.cancel_until(0);

        let mut lits = lits.to_vec();
        lits.sort_unstable();
        lits.dedup();
        let tautology = lits.windows(2).any(|w| w[0] == !w[1]);

        let live = !(tautology || self.refutation.is_some() || self.pending_conflict.is_some());
        // Order: non-false literals first so positions 0/1 are valid watches.
        let assigns = &self.assigns;
        let value = |l: Lit| lit_value(assigns, l);
        if live {
            lits.sort_by_key(|&l| match value(l) {
                TRUE => 0,
                UNDEF => 1,
                _ => 2,
            });
        }
        let free = lits.iter().filter(|&&l| value(l) != FALSE).count();
        let first = lits.first().copied();
        let cref = self.push_clause(&lits, Some(id), &[], 0, true);
        if !live {
            return Ok(id);
        }

        match (lits.len(), free) {
            (0, _) => self.pending_conflict = Some(cref),
            (_, 0) => self.pending_conflict = Some(cref),
            (1, _) => {
                let l = first.unwrap();
                if self.value(l) == UNDEF {
                    self.enqueue(l, Some(cref));
                }
            }
            (_, 1) => {
                let l = first.unwrap();
                if self.value(l) == UNDEF {
                    self.enqueue(l, Some(cref));
                }
                self.attach(cref);
            }
            _ => self.attach(cref),
        }
        Ok(id)
    }

    fn push_clause(
        &mut self,
        lits: &[Lit],
        input: Option<ClauseId>,
        ante: &[u32],
        lbd: u32,
        attached: bool,
    ) -> usize {
        self.clauses.push(Clause {
            start: self.lits.len(),
            len: lits.len() as u32,
            input,
            ante_start: self.antecedents.len(),
            ante_len: ante.len() as u32,
            lbd,
            attached,
        });
        self.lits.extend_from_slice(lits);
        self.antecedents.extend_from_slice(ante);
        self.clauses.len() - 1
    }

    #[inline]
    fn span(&self, cref: usize) -> std::ops::Range<usize> {
        let c = &self.clauses[cref];
        c.start..c.start + c.len as usize
    }

    #[inline]
    fn clause_lits(&self, cref: usize) -> &[Lit] {
        &self.lits[self.span(cref)]
    }

    fn attach(&mut self, cref: usize) {
        let c = self.clause_lits(cref);
        debug_assert!(c.len() >= 2);
        let (a, b) = (c[0], c[1]);
        self.watches[a.code()].push(Watch {
            cref: cref as u32,
            blocker: b,
        });
        self.watches[b.code()].push(Watch {
            cref: cref as u32,
            blocker: a,
        });
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        lit_value(&self.assigns, l)
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var().index();
        debug_assert_eq!(self.assigns[v], UNDEF);
        self.assigns[v] = if l.is_positive() { TRUE } else { FALSE };
        self.level[v] = self.decision_level();
        self.reason[v] = reason.map(|r| r as u32);
        self.trail.push(l);
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for i in (lim..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var().index();
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.phase[v] = l.is_positive();
            self.heap.insert(v as u32, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = self.qhead.min(lim);
    }

    /// Unit propagation; returns the conflicting clause if any.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.code()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;

            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if lit_value(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                let span = self.span(cref);
                let lits = &mut self.lits[span];
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                debug_assert_eq!(lits[1], false_lit);
                let first = lits[0];
                if first != w.blocker && lit_value(&self.assigns, first) == TRUE {
                    ws[j] = Watch {
                        cref: w.cref,
                        blocker: first,
                    };
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    if lit_value(&self.assigns, lits[k]) != FALSE {
                        lits.swap(1, k);
                        let nw = lits[1];
                        self.watches[nw.code()].push(Watch {
                            cref: w.cref,
                            blocker: first,
                        });
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = Watch {
                    cref: w.cref,
                    blocker: first,
                };
                j += 1;
                if lit_value(&self.assigns, first) == FALSE {
                    conflict = Some(cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, Some(cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.code()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v as u32, &self.activity);
    }

    /// First-UIP conflict analysis. Returns the learned clause (asserting
    /// literal first, backjump literal second), the backjump level and the
    /// clauses resolved on the way.
    fn analyze(&mut self, confl: usize) -> (Vec<Lit>, u32, Vec<u32>) {
        let mut learnt = vec![Lit::new(Var(0), true)];
        let mut antecedents = Vec::new();
        let mut path = 0usize;
        let mut cref = confl;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let dl = self.decision_level();

        loop {
            antecedents.push(cref as u32);
            let span = self.span(cref);
            for k in span.start + usize::from(p.is_some())..span.end {
                let q = self.lits[k];
                let v = q.var().index();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] >= dl {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var().index()] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[lit.var().index()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            cref = self.reason[lit.var().index()].expect("implied literal without reason") as usize;
        }
        learnt[0] = !p.unwrap();

        // drop literals implied by the rest of the clause
        let abstraction = learnt[1..]
            .iter()
            .fold(0u32, |acc, l| acc | self.abstract_level(l.var().index()));
        let mut to_clear = learnt.clone();
        let mut keep = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            let redundant = self.reason[l.var().index()].is_some()
                && self.lit_redundant(l, abstraction, &mut to_clear, &mut antecedents);
            if !redundant {
                learnt[keep] = l;
                keep += 1;
            }
        }
        learnt.truncate(keep);
        for l in &to_clear {
            self.seen[l.var().index()] = false;
        }

        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var().index()] > self.level[learnt[max_i].var().index()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var().index()]
        };
        (learnt, bt, antecedents)
    }

    fn abstract_level(&self, v: usize) -> u32 {
        1 << (self.level[v] & 31)
    }

    /// Whether `p` follows from literals already in the learned clause.
    /// Reason clauses used are appended to `used`.
    fn lit_redundant(
        &mut self,
        p: Lit,
        abstraction: u32,
        to_clear: &mut Vec<Lit>,
        used: &mut Vec<u32>,
    ) -> bool {
        let mut stack = vec![p];
        let top = to_clear.len();
        let used_top = used.len();
        while let Some(q) = stack.pop() {
            let c = self.reason[q.var().index()].expect("checked by caller");
            used.push(c);
            let span = self.span(c as usize);
            for k in span.start + 1..span.end {
                let l = self.lits[k];
                let v = l.var().index();
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v].is_some() && self.abstract_level(v) & abstraction != 0 {
                    self.seen[v] = true;
                    stack.push(l);
                    to_clear.push(l);
                } else {
                    for l in &to_clear[top..] {
                        self.seen[l.var().index()] = false;
                    }
                    to_clear.truncate(top);
                    used.truncate(used_top);
                    return false;
                }
            }
        }
        true
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.level[l.var().index()]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn locked(&self, cref: usize) -> bool {
        let l = self.lits[self.clauses[cref].start];
        self.value(l) == TRUE && self.reason[l.var().index()] == Some(cref as u32)
    }

    /// Unwatches the worse half of the learned clauses.
    fn reduce(&mut self) {
        let mut candidates: Vec<usize> = self
            .learnts
            .iter()
            .copied()
            .filter(|&c| {
                let cl = &self.clauses[c];
                cl.attached && cl.len > 2 && cl.lbd > 2 && !self.locked(c)
            })
            .collect();
        candidates.sort_by_key(|&c| {
            let cl = &self.clauses[c];
            (std::cmp::Reverse(cl.lbd), std::cmp::Reverse(cl.len), c)
        });
        let half = candidates.len() / 2;
        for &c in &candidates[..half] {
            self.clauses[c].attached = false;
        }
        let clauses = &self.clauses;
        for ws in &mut self.watches {
            ws.retain(|w| clauses[w.cref as usize].attached);
        }
        self.learnts.retain(|&c| clauses[c].attached);
        self.reductions += 1;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Lit::new(Var(v), self.phase[v as usize]));
            }
        }
        None
    }

    fn build_refutation(&self, confl: usize) -> Refutation {
        let mut visited = vec![false; self.clauses.len()];
        let mut stack = vec![confl];
        while let Some(c) = stack.pop() {
            if std::mem::replace(&mut visited[c], true) {
                continue;
            }
            let clause = &self.clauses[c];
            let ante = clause.ante_start..clause.ante_start + clause.ante_len as usize;
            stack.extend(self.antecedents[ante].iter().map(|&a| a as usize));
            for &l in self.clause_lits(c) {
                let v = l.var().index();
                if self.assigns[v] != UNDEF && self.level[v] == 0 && self.value(l) == FALSE {
                    if let Some(r) = self.reason[v] {
                        if r as usize != c {
                            stack.push(r as usize);
                        }
                    }
                }
            }
        }

        let mut core = Vec::new();
        let mut learned = Vec::new();
        let mut var_counts = vec![0u32; self.num_vars];
        for (c, clause) in self.clauses.iter().enumerate() {
            if !visited[c] {
                continue;
            }
            match clause.input {
                Some(id) => core.push(id),
                None => learned.push(self.clause_lits(c).to_vec()),
            }
            // lits are deduplicated, so each var counts once per clause
            for l in self.clause_lits(c) {
                var_counts[l.var().index()] += 1;
            }
        }
        core.sort_unstable();
        Refutation {
            core,
            learned,
            var_counts,
        }
    }

    fn luby(y: f64, mut x: u64) -> f64 {
        let mut size = 1u64;
        let mut seq = 0u32;
        while size < x + 1 {
            seq += 1;
            size = 2 * size + 1;
        }
        while size - 1 != x {
            size = (size - 1) >> 1;
            seq -= 1;
            x %= size;
        }
        y.powi(seq as i32)
    }

    /// Decides the current clause set.
    pub fn solve(&mut self) -> Outcome {
        self.solve_until(None).expect("no deadline")
    }

    /// Like [`Solver::solve`], but gives up with `None` once `deadline` has
    /// passed. Learned clauses are kept, so a later call resumes cheaply.
    pub fn solve_until(&mut self, deadline: Option<Instant>) -> Option<Outcome> {
        if let Some(r) = &self.refutation {
            return Some(Outcome::Unsat(r.clone()));
        }
        self.cancel_until(0);
        if let Some(c) = self.pending_conflict.take() {
            let r = self.build_refutation(c);
            self.refutation = Some(r.clone());
            return Some(Outcome::Unsat(r));
        }

        let mut restart = 0u64;
        loop {
            let budget = (Self::luby(2.0, restart) * self.cfg.restart_base as f64) as u64;
            match self.search(budget.max(1), deadline) {
                Search::Done(outcome) => return Some(outcome),
                Search::Expired => {
                    self.cancel_until(0);
                    return None;
                }
                Search::Restart => {}
            }
            restart += 1;
            self.stats.restarts += 1;
        }
    }

    fn search(&mut self, budget: u64, deadline: Option<Instant>) -> Search {
        let mut local_conflicts = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                local_conflicts += 1;
                if self.decision_level() == 0 {
                    let r = self.build_refutation(confl);
                    self.refutation = Some(r.clone());
                    return Search::Done(Outcome::Unsat(r));
                }
                if local_conflicts % 256 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    return Search::Expired;
                }
                let (learnt, bt, antecedents) = self.analyze(confl);
                let lbd = self.lbd(&learnt);
                self.cancel_until(bt);
                let asserting = learnt[0];
                let len = learnt.len();
                let cref = self.push_clause(&learnt, None, &antecedents, lbd, len >= 2);
                if len >= 2 {
                    self.attach(cref);
                    self.learnts.push(cref);
                }
                self.enqueue(asserting, Some(cref));
                self.var_inc /= self.cfg.var_decay;
            } else {
                if local_conflicts >= budget {
                    self.cancel_until(0);
                    return Search::Restart;
                }
                if self.stats.conflicts >= self.next_reduce {
                    self.reduce();
                    self.next_reduce =
                        self.stats.conflicts + FIRST_REDUCE + REDUCE_STEP * self.reductions;
                }
                match self.pick_branch() {
                    None => {
                        let model = Model(self.assigns.iter().map(|&a| a == TRUE).collect());
                        return Search::Done(Outcome::Sat(model));
                    }
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, None);
                    }
                }
            }
        }
    }
}

#[inline]
fn lit_value(assigns: &[i8], l: Lit) -> i8 {
    let a = assigns[l.var().index()];
    if l.is_positive() {
        a
    } else {
        -a
    }
}

// splitmix64, only used for the optional activity jitter
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn next_unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Solves `cnf` from scratch.
pub fn solve(cnf: &Cnf, cfg: &SolverConfig) -> Result<Outcome, SatError> {
    Ok(Solver::from_cnf(cnf, cfg.clone())?.solve())
}

/// Solves `cnf`, then adds `added` and solves again on the same solver
/// instance. The answer is the one for the conjunction; input clause ids
/// of `added` continue after those of `cnf`.
pub fn solve_incremental(
    cnf: &Cnf,
    added: &[Vec<Lit>],
    cfg: &SolverConfig,
) -> Result<Outcome, SatError> {
    let mut solver = Solver::from_cnf(cnf, cfg.clone())?;
    solver.solve();
    for c in added {
        solver.add_clause(c)?;
    }
    Ok(solver.solve())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(num_vars: usize, clauses: &[&[i32]]) -> Cnf {
        let mut f = Cnf::new(num_vars);
        for c in clauses {
            f.add_dimacs_clause(c);
        }
        f
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(|i| Solver::luby(2.0, i) as u64).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn empty_formula_is_sat() {
        let out = solve(&Cnf::new(0), &SolverConfig::default()).unwrap();
        assert_eq!(out, Outcome::Sat(Model(vec![])));
    }

    #[test]
    fn unit_contradiction_core_has_both_clauses() {
        let f = cnf(1, &[&[1], &[-1]]);
        match solve(&f, &SolverConfig::default()).unwrap() {
            Outcome::Unsat(r) => {
                assert_eq!(r.core, vec![0, 1]);
                assert_eq!(r.var_counts, vec![2]);
                assert!(r.learned.is_empty());
            }
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn empty_clause_is_its_own_core() {
        let f = cnf(2, &[&[1, 2], &[]]);
        match solve(&f, &SolverConfig::default()).unwrap() {
            Outcome::Unsat(r) => assert_eq!(r.core, vec![1]),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn tautologies_never_enter_core() {
        let f = cnf(2, &[&[1, -1], &[2], &[-2]]);
        match solve(&f, &SolverConfig::default()).unwrap() {
            Outcome::Unsat(r) => assert_eq!(r.core, vec![1, 2]),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn pigeonhole_three_into_two_is_unsat() {
        // p(i,h) = 2*i + h + 1
        let mut f = Cnf::new(6);
        for i in 0..3 {
            f.add_dimacs_clause(&[2 * i + 1, 2 * i + 2]);
        }
        for h in 0..2 {
            for i in 0..3 {
                for j in (i + 1)..3 {
                    f.add_dimacs_clause(&[-(2 * i + h + 1), -(2 * j + h + 1)]);
                }
            }
        }
        let out = solve(&f, &SolverConfig::default()).unwrap();
        assert!(!out.is_sat());
    }

    #[test]
    fn expired_deadline_gives_up_then_resumes() {
        let (p, h) = (8i32, 7i32);
        let var = |i: i32, k: i32| i * h + k + 1;
        let mut f = Cnf::new((p * h) as usize);
        for i in 0..p {
            f.add_dimacs_clause(&(0..h).map(|k| var(i, k)).collect::<Vec<_>>());
        }
        for k in 0..h {
            for i in 0..p {
                for j in (i + 1)..p {
                    f.add_dimacs_clause(&[-var(i, k), -var(j, k)]);
                }
            }
        }
        let mut s = Solver::from_cnf(&f, SolverConfig::default()).unwrap();
        assert!(s.solve_until(Some(Instant::now())).is_none());
        assert!(!s.solve().is_sat());
    }

    #[test]
    fn incremental_addition_flips_to_unsat() {
        let f = cnf(2, &[&[1, 2], &[-1, 2]]);
        let sat =
            solve_incremental(&f, &[vec![Lit::from_dimacs(1)]], &SolverConfig::default()).unwrap();
        match sat {
            Outcome::Sat(m) => assert!(m.0[0] && m.0[1]),
            other => panic!("expected SAT, got {other:?}"),
        }
        let unsat =
            solve_incremental(&f, &[vec![Lit::from_dimacs(-2)]], &SolverConfig::default()).unwrap();
        match unsat {
            Outcome::Unsat(r) => assert_eq!(r.core, vec![0, 1, 2]),
            other => panic!("expected UNSAT, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_variable_is_an_error() {
        let f = cnf(1, &[&[2]]);
        assert!(solve(&f, &SolverConfig::default()).is_err());
    }
}
