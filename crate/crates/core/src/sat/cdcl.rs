//! Embedded conflict-driven clause-learning solver.
//!
//! Two watched literals, first-UIP learning with local minimisation,
//! non-chronological backjumping, Luby restarts and activity-based learnt
//! clause deletion. Clauses can be added between calls to [`Cdcl::solve`],
//! which is how model enumeration adds blocking clauses while keeping what
//! was learnt.

use std::time::Instant;

use super::dimacs::SatStatus;

type Lit = u32;

const UNDEF: u8 = 2;

#[inline]
fn lit_of(l: i32) -> Lit {
    2 * (l.unsigned_abs() - 1) + (l < 0) as u32
}

#[inline]
fn var_of(l: Lit) -> usize {
    (l >> 1) as usize
}

/// Decision heuristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branching {
    /// Lowest-numbered unassigned variable, set to false.
    LowestIndex,
    /// Highest activity (ties to the lowest index), saved phase, initially false.
    Activity,
}

#[derive(Clone, Debug)]
pub struct CdclConfig {
    pub branching: Branching,
    pub conflict_limit: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for CdclConfig {
    fn default() -> Self {
        CdclConfig {
            branching: Branching::Activity,
            conflict_limit: None,
            deadline: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CdclStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub restarts: u64,
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap of variables ordered by activity, ties to the lower index.
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<i32>,
}

impl VarHeap {
    fn new() -> Self {
        VarHeap {
            heap: Vec::new(),
            pos: Vec::new(),
        }
    }

    fn grow(&mut self, n: usize) {
        self.pos.resize(n, -1);
    }

    #[inline]
    fn better(act: &[f64], a: u32, b: u32) -> bool {
        let (x, y) = (act[a as usize], act[b as usize]);
        x > y || (x == y && a < b)
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] >= 0
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let p = (i - 1) / 2;
            if !Self::better(act, v, self.heap[p]) {
                break;
            }
            self.heap[i] = self.heap[p];
            self.pos[self.heap[i] as usize] = i as i32;
            i = p;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let l = 2 * i + 1;
            if l >= n {
                break;
            }
            let r = l + 1;
            let c = if r < n && Self::better(act, self.heap[r], self.heap[l]) {
                r
            } else {
                l
            };
            if !Self::better(act, self.heap[c], v) {
                break;
            }
            self.heap[i] = self.heap[c];
            self.pos[self.heap[i] as usize] = i as i32;
            i = c;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as i32;
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v as u32);
        let i = self.heap.len() - 1;
        self.pos[v] = i as i32;
        self.up(i, act);
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty");
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }
}

fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

pub struct Cdcl {
    config: CdclConfig,
    clauses: Vec<Clause>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    polarity: Vec<bool>,
    activity: Vec<f64>,
    seen: Vec<bool>,
    heap: VarHeap,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    next_var: usize,
    var_inc: f64,
    cla_inc: f64,
    learnt_count: usize,
    max_learnts: f64,
    ok: bool,
    model: Vec<bool>,
    stats: CdclStats,
}

impl Cdcl {
    pub fn new(num_vars: usize, config: CdclConfig) -> Self {
        let mut s = Cdcl {
            config,
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            polarity: Vec::new(),
            activity: Vec::new(),
            seen: Vec::new(),
            heap: VarHeap::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            next_var: 0,
            var_inc: 1.0,
            cla_inc: 1.0,
            learnt_count: 0,
            max_learnts: 0.0,
            ok: true,
            model: Vec::new(),
            stats: CdclStats::default(),
        };
        s.grow(num_vars);
        s
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn stats(&self) -> CdclStats {
        self.stats
    }

    pub fn set_config(&mut self, config: CdclConfig) {
        self.config = config;
    }

    fn grow(&mut self, n: usize) {
        let old = self.assigns.len();
        if n <= old {
            return;
        }
        self.watches.resize_with(2 * n, Vec::new);
        self.assigns.resize(n, UNDEF);
        self.level.resize(n, 0);
        self.reason.resize(n, None);
        self.polarity.resize(n, false);
        self.activity.resize(n, 0.0);
        self.seen.resize(n, false);
        self.heap.grow(n);
        for v in old..n {
            self.heap.insert(v, &self.activity);
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> u8 {
        let a = self.assigns[var_of(l)];
        if a == UNDEF {
            UNDEF
        } else {
            a ^ (l & 1) as u8
        }
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: Option<u32>) {
        let v = var_of(l);
        self.assigns[v] = 1 ^ (l & 1) as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, lvl: u32) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl as usize];
        for k in (start..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = var_of(l);
            self.polarity[v] = l & 1 == 0;
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.heap.insert(v, &self.activity);
            self.next_var = self.next_var.min(v);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl as usize);
        self.qhead = self.trail.len();
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0] as usize].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1] as usize].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        if learnt {
            self.learnt_count += 1;
        }
        cref
    }

    /// Adds a clause of DIMACS literals. Returns false once the formula is
    /// known to be unsatisfiable.
    pub fn add_clause(&mut self, lits: &[i32]) -> bool {
        self.cancel_until(0);
        if !self.ok {
            return false;
        }
        let max_var = lits
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        self.grow(max_var);
        let mut c: Vec<Lit> = lits.iter().map(|&l| lit_of(l)).collect();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        if c.iter().any(|&l| self.value(l) == 1) {
            return true;
        }
        c.retain(|&l| self.value(l) == UNDEF);
        match c.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(c[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(c, false);
            }
        }
        self.ok
    }

    fn propagate(&mut self) -> Option<u32> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
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
                let kept = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && self.value(first) == 1 {
                    ws[j] = kept;
                    j += 1;
                    continue;
                }
                let len = self.clauses[cref].lits.len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[cref].lits[k];
                    if self.value(l) != 0 {
                        self.clauses[cref].lits.swap(1, k);
                        self.watches[l as usize].push(kept);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = kept;
                j += 1;
                if self.value(first) == 0 {
                    conflict = Some(w.cref);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(w.cref));
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
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
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: usize) {
        let c = &mut self.clauses[cref];
        if !c.learnt {
            return;
        }
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for c in self.clauses.iter_mut().filter(|c| c.learnt) {
                c.activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut index = self.trail.len();
        let current = self.decision_level();
        loop {
            self.bump_clause(confl as usize);
            let skip = p.is_some() as usize;
            let n = self.clauses[confl as usize].lits.len();
            for k in skip..n {
                let q = self.clauses[confl as usize].lits[k];
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var_of(self.trail[index])] {
                    break;
                }
            }
            let lit = self.trail[index];
            let v = var_of(lit);
            self.seen[v] = false;
            p = Some(lit);
            path -= 1;
            if path == 0 {
                break;
            }
            confl = self.reason[v].expect("implied literal has a reason");
        }
        learnt[0] = p.expect("conflict at a positive level") ^ 1;

        // drop literals implied by the rest of the clause
        let marked: Vec<Lit> = learnt[1..].to_vec();
        let mut keep = vec![learnt[0]];
        for &l in &marked {
            let redundant = match self.reason[var_of(l)] {
                None => false,
                Some(r) => self.clauses[r as usize].lits[1..].iter().all(|&q| {
                    let u = var_of(q);
                    self.seen[u] || self.level[u] == 0
                }),
            };
            if !redundant {
                keep.push(l);
            }
        }
        for &l in &marked {
            self.seen[var_of(l)] = false;
        }
        let mut learnt = keep;

        let bt = if learnt.len() == 1 {
            0
        } else {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var_of(learnt[k])] > self.level[var_of(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            self.level[var_of(learnt[1])]
        };
        (learnt, bt)
    }

    fn locked(&self, cref: usize) -> bool {
        let l0 = self.clauses[cref].lits[0];
        self.value(l0) == 1 && self.reason[var_of(l0)] == Some(cref as u32)
    }

    fn reduce_db(&mut self) {
        let mut cands: Vec<usize> = (0..self.clauses.len())
            .filter(|&i| {
                let c = &self.clauses[i];
                c.learnt && !c.deleted && c.lits.len() > 2
            })
            .filter(|&i| !self.locked(i))
            .collect();
        cands.sort_by(|&a, &b| {
            self.clauses[a]
                .activity
                .partial_cmp(&self.clauses[b].activity)
                .expect("finite activity")
                .then(a.cmp(&b))
        });
        for &i in &cands[..cands.len() / 2] {
            let c = &mut self.clauses[i];
            c.deleted = true;
            c.lits = Vec::new();
            self.learnt_count -= 1;
        }
        for ws in &mut self.watches {
            ws.retain(|w| !self.clauses[w.cref as usize].deleted);
        }
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        match self.config.branching {
            Branching::LowestIndex => {
                while self.next_var < self.assigns.len() && self.assigns[self.next_var] != UNDEF {
                    self.next_var += 1;
                }
                (self.next_var < self.assigns.len()).then(|| 2 * self.next_var as u32 + 1)
            }
            Branching::Activity => loop {
                let v = self.heap.pop(&self.activity)?;
                if self.assigns[v] == UNDEF {
                    return Some(2 * v as u32 + (!self.polarity[v]) as u32);
                }
            },
        }
    }

    fn out_of_budget(&self, start_conflicts: u64) -> bool {
        if let Some(limit) = self.config.conflict_limit {
            if self.stats.conflicts - start_conflicts >= limit {
                return true;
            }
        }
        if let Some(d) = self.config.deadline {
            if self.stats.conflicts.is_multiple_of(64) && Instant::now() >= d {
                return true;
            }
        }
        false
    }

    pub fn solve(&mut self) -> SatStatus {
        self.cancel_until(0);
        if !self.ok {
            return SatStatus::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return SatStatus::Unsat;
        }
        let original = self.clauses.len() - self.learnt_count;
        self.max_learnts = self.max_learnts.max(original as f64 / 3.0).max(2000.0);
        let start = self.stats.conflicts;
        let mut restart = 0u64;
        loop {
            let budget = luby(restart) * 100;
            let mut here = 0u64;
            loop {
                if let Some(confl) = self.propagate() {
                    self.stats.conflicts += 1;
                    here += 1;
                    if self.decision_level() == 0 {
                        self.ok = false;
                        return SatStatus::Unsat;
                    }
                    let (learnt, bt) = self.analyze(confl);
                    self.cancel_until(bt);
                    if learnt.len() == 1 {
                        self.enqueue(learnt[0], None);
                    } else {
                        let first = learnt[0];
                        let cref = self.attach(learnt, true);
                        self.bump_clause(cref as usize);
                        self.enqueue(first, Some(cref));
                    }
                    self.var_inc /= 0.95;
                    self.cla_inc /= 0.999;
                    if self.out_of_budget(start) {
                        self.cancel_until(0);
                        return SatStatus::Unknown;
                    }
                    if here >= budget {
                        break;
                    }
                } else {
                    if self.learnt_count as f64 >= self.max_learnts + self.trail.len() as f64 {
                        self.reduce_db();
                        self.max_learnts *= 1.1;
                    }
                    match self.pick_branch() {
                        None => {
                            self.model = self.assigns.iter().map(|&a| a == 1).collect();
                            return SatStatus::Sat;
                        }
                        Some(l) => {
                            self.stats.decisions += 1;
                            self.trail_lim.push(self.trail.len());
                            self.enqueue(l, None);
                        }
                    }
                }
            }
            self.stats.restarts += 1;
            restart += 1;
            self.cancel_until(0);
        }
    }

    /// The last model found, indexed by `var - 1`.
    pub fn model(&self) -> &[bool] {
        &self.model
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, clauses: &[&[i32]], branching: Branching) -> (SatStatus, Vec<bool>) {
        let mut s = Cdcl::new(
            n,
            CdclConfig {
                branching,
                ..CdclConfig::default()
            },
        );
        for c in clauses {
            s.add_clause(c);
        }
        let st = s.solve();
        (st, s.model().to_vec())
    }

    #[test]
    fn tiny_formulas() {
        for b in [Branching::LowestIndex, Branching::Activity] {
            assert_eq!(run(1, &[&[1], &[-1]], b).0, SatStatus::Unsat);
            let (st, m) = run(3, &[&[1, 2], &[-1, 3], &[-3]], b);
            assert_eq!(st, SatStatus::Sat);
            assert_eq!(m, vec![false, true, false]);
        }
    }

    #[test]
    fn lowest_index_prefers_false() {
        let (st, m) = run(4, &[&[1, 2, 3, 4]], Branching::LowestIndex);
        assert_eq!(st, SatStatus::Sat);
        assert_eq!(m, vec![false, false, false, true]);
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 5 pigeons, 4 holes
        let var = |p: i32, h: i32| p * 4 + h + 1;
        let mut clauses: Vec<Vec<i32>> = Vec::new();
        for p in 0..5 {
            clauses.push((0..4).map(|h| var(p, h)).collect());
        }
        for h in 0..4 {
            for a in 0..5 {
                for b in a + 1..5 {
                    clauses.push(vec![-var(a, h), -var(b, h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(|c| c.as_slice()).collect();
        for b in [Branching::LowestIndex, Branching::Activity] {
            assert_eq!(run(20, &refs, b).0, SatStatus::Unsat);
        }
    }

    #[test]
    fn incremental_enumeration_counts_models() {
        // exactly-one over 4 variables has 4 models
        let mut s = Cdcl::new(4, CdclConfig::default());
        s.add_clause(&[1, 2, 3, 4]);
        for a in 1..=4 {
            for b in a + 1..=4 {
                s.add_clause(&[-a, -b]);
            }
        }
        let mut count = 0;
        while s.solve() == SatStatus::Sat {
            count += 1;
            let block: Vec<i32> = s
                .model()
                .iter()
                .enumerate()
                .map(|(i, &v)| if v { -(i as i32 + 1) } else { i as i32 + 1 })
                .collect();
            s.add_clause(&block);
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn luby_sequence() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }
}
