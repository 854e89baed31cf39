//! A small conflict-driven clause-learning SAT solver.
//!
//! Two watched literals, first-UIP learning with local minimization, VSIDS
//! decisions with phase saving, Luby restarts and LBD-based clause deletion.
//! Fully deterministic for a given clause list and initial activity.

use std::time::Instant;

/// Literal encoded as `2 * var + sign`, sign 1 meaning negated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, negated: bool) -> Self {
        Lit((var as u32) << 1 | negated as u32)
    }

    /// From a nonzero DIMACS integer.
    pub fn from_dimacs(x: i64) -> Self {
        Lit::new(x.unsigned_abs() as usize - 1, x < 0)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

#[derive(Clone, Debug, Default)]
pub struct SatLimits {
    pub max_decisions: Option<u64>,
    pub deadline: Option<Instant>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SatStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

const UNDEF: i8 = 0;
const NO_REASON: u32 = u32::MAX;

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    lbd: u32,
    activity: f64,
    deleted: bool,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    /// Per variable: 1 true, -1 false, 0 unassigned.
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    phase: Vec<bool>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    unsat: bool,
    num_learnts: usize,
    pub stats: SatStats,
}

impl Solver {
    /// `initial_activity` seeds VSIDS (higher first); `prefer_true` is the
    /// initial phase of each variable.
    pub fn new(num_vars: usize, initial_activity: Option<&[f64]>, prefer_true: bool) -> Self {
        let activity = match initial_activity {
            Some(a) => a.to_vec(),
            None => vec![0.0; num_vars],
        };
        let mut heap = VarHeap::new(num_vars);
        for v in 0..num_vars {
            heap.insert(v, &activity);
        }
        Solver {
            num_vars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![UNDEF; num_vars],
            level: vec![0; num_vars],
            reason: vec![NO_REASON; num_vars],
            phase: vec![prefer_true; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity,
            var_inc: 1.0,
            cla_inc: 1.0,
            heap,
            seen: vec![false; num_vars],
            unsat: false,
            num_learnts: 0,
            stats: SatStats::default(),
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let a = self.assigns[l.var()];
        if l.negated() {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    /// Adds a clause at decision level 0. Returns false once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if self.unsat {
            return false;
        }
        let mut c: Vec<Lit> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        c.retain(|&l| self.value(l) != -1);
        if c.iter().any(|&l| self.value(l) == 1) {
            return true;
        }
        match c.len() {
            0 => {
                self.unsat = true;
                false
            }
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
                !self.unsat
            }
            _ => {
                self.attach(c, false, 0);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool, lbd: u32) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[(!lits[0]).index()].push(Watcher { cref, blocker: lits[1] });
        self.watches[(!lits[1]).index()].push(Watcher { cref, blocker: lits[0] });
        if learnt {
            self.num_learnts += 1;
        }
        self.clauses.push(Clause { lits, learnt, lbd, activity: 0.0, deleted: false });
        cref
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var();
        self.assigns[v] = if l.negated() { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Unit propagation; returns a conflicting clause if any.
    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.index()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let cref = w.cref as usize;
                if self.clauses[cref].deleted {
                    continue;
                }
                {
                    let lits = &mut self.clauses[cref].lits;
                    if lits[0] == false_lit {
                        lits.swap(0, 1);
                    }
                }
                let first = self.clauses[cref].lits[0];
                let nw = Watcher { cref: w.cref, blocker: first };
                if first != w.blocker && self.value(first) == 1 {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != -1 {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[(!l).index()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if self.value(first) == -1 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, w.cref);
                }
            }
            ws.truncate(j);
            // Watchers pushed onto this list while it was taken out.
            let pushed = std::mem::take(&mut self.watches[p.index()]);
            ws.extend(pushed);
            self.watches[p.index()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.increase(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: usize) {
        self.clauses[cref].activity += self.cla_inc;
        if self.clauses[cref].activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let mut cref = confl as usize;
        loop {
            if self.clauses[cref].learnt {
                self.bump_clause(cref);
            }
            let start = if p.is_some() { 1 } else { 0 };
            for k in start..self.clauses[cref].lits.len() {
                let q = self.clauses[cref].lits[k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= self.decision_level() {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let pl = self.trail[index];
            p = Some(pl);
            self.seen[pl.var()] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            cref = self.reason[pl.var()] as usize;
        }
        learnt[0] = !p.unwrap();

        // Drop literals implied by the rest of the clause through their reasons.
        let keep: Vec<bool> = learnt
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                if i == 0 {
                    return true;
                }
                let r = self.reason[l.var()];
                if r == NO_REASON {
                    return true;
                }
                self.clauses[r as usize].lits.iter().skip(1).any(|q| !self.seen[q.var()] && self.level[q.var()] > 0)
            })
            .collect();
        for l in &learnt {
            self.seen[l.var()] = false;
        }
        let mut learnt: Vec<Lit> = learnt.into_iter().zip(keep).filter(|(_, k)| *k).map(|(l, _)| l).collect();

        let bt = if learnt.len() == 1 {
            0
        } else {
            let (max_i, _) = learnt.iter().enumerate().skip(1).max_by_key(|(_, l)| self.level[l.var()]).unwrap();
            learnt.swap(1, max_i);
            self.level[learnt[1].var()]
        };
        (learnt, bt)
    }

    fn lbd(&mut self, lits: &[Lit]) -> u32 {
        let mut levels: Vec<u32> = lits.iter().map(|l| self.level[l.var()]).collect();
        levels.sort_unstable();
        levels.dedup();
        levels.len() as u32
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let lim = self.trail_lim[lvl as usize];
        for idx in (lim..self.trail.len()).rev() {
            let l = self.trail[idx];
            let v = l.var();
            self.phase[v] = !l.negated();
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = self.trail.len();
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Lit::new(v, !self.phase[v]));
            }
        }
        None
    }

    fn locked(&self, cref: usize) -> bool {
        let c = &self.clauses[cref];
        let v = c.lits[0].var();
        self.reason[v] == cref as u32 && self.value(c.lits[0]) == 1
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| {
                let c = &self.clauses[i];
                c.learnt && !c.deleted && c.lbd > 2 && !self.locked(i)
            })
            .collect();
        cands.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a], &self.clauses[b]);
            cb.lbd.cmp(&ca.lbd).then(ca.activity.partial_cmp(&cb.activity).unwrap())
        });
        for &i in cands.iter().take(cands.len() / 2) {
            self.clauses[i].deleted = true;
            self.clauses[i].lits.clear();
            self.clauses[i].lits.shrink_to_fit();
            self.num_learnts -= 1;
        }
        for ws in &mut self.watches {
            let clauses = &self.clauses;
            ws.retain(|w| !clauses[w.cref as usize].deleted);
        }
    }

    pub fn solve(&mut self, limits: &SatLimits) -> SatResult {
        if self.unsat {
            return SatResult::Unsat;
        }
        if self.propagate().is_some() {
            self.unsat = true;
            return SatResult::Unsat;
        }
        let mut max_learnts = (self.clauses.len() / 3).max(2000) as f64;
        let mut restart_index = 0u32;
        loop {
            let budget = 100 * luby(restart_index);
            restart_index += 1;
            let mut conflicts_here = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.stats.conflicts += 1;
                    conflicts_here += 1;
                    if self.decision_level() == 0 {
                        self.unsat = true;
                        return SatResult::Unsat;
                    }
                    let (learnt, bt) = self.analyze(confl);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], NO_REASON);
                    } else {
                        let lbd = self.lbd(&learnt);
                        let first = learnt[0];
                        let cref = self.attach(learnt, true, lbd);
                        self.bump_clause(cref as usize);
                        self.enqueue(first, cref);
                    }
                    self.var_inc /= 0.95;
                    self.cla_inc /= 0.999;
                    continue;
                }
                if conflicts_here >= budget {
                    self.stats.restarts += 1;
                    self.cancel_until(0);
                    break;
                }
                if self.num_learnts as f64 >= max_learnts + self.trail.len() as f64 {
                    self.reduce_db();
                    max_learnts *= 1.1;
                }
                if let Some(max) = limits.max_decisions {
                    if self.stats.decisions >= max {
                        return SatResult::Unknown;
                    }
                }
                if let Some(deadline) = limits.deadline {
                    if self.stats.decisions.is_multiple_of(256) && Instant::now() >= deadline {
                        return SatResult::Unknown;
                    }
                }
                match self.pick_branch() {
                    None => {
                        let model = (0..self.num_vars).map(|v| self.assigns[v] == 1).collect();
                        return SatResult::Sat(model);
                    }
                    Some(l) => {
                        self.stats.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }
}

/// Luby restart sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < i as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i as u64 {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size as u32;
    }
    1u64 << seq
}

/// Max-heap of variables ordered by activity, lower index first on ties.
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

const NOT_IN_HEAP: usize = usize::MAX;

impl VarHeap {
    fn new(n: usize) -> Self {
        VarHeap { heap: Vec::with_capacity(n), pos: vec![NOT_IN_HEAP; n] }
    }

    fn better(a: usize, b: usize, act: &[f64]) -> bool {
        act[a] > act[b] || (act[a] == act[b] && a < b)
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.pos[v] != NOT_IN_HEAP {
            return;
        }
        self.pos[v] = self.heap.len();
        self.heap.push(v);
        self.sift_up(self.pos[v], act);
    }

    fn increase(&mut self, v: usize, act: &[f64]) {
        if self.pos[v] != NOT_IN_HEAP {
            self.sift_up(self.pos[v], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        if self.heap.is_empty() {
            return None;
        }
        let top = self.heap[0];
        let last = self.heap.pop().unwrap();
        self.pos[top] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = 0;
            self.sift_down(0, act);
        }
        Some(top)
    }

    fn sift_up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            if !Self::better(v, self.heap[parent], act) {
                break;
            }
            self.heap[i] = self.heap[parent];
            self.pos[self.heap[i]] = i;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }

    fn sift_down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && Self::better(self.heap[r], self.heap[l], act) { r } else { l };
            if !Self::better(self.heap[c], v, act) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i]] = i;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v] = i;
    }
}
