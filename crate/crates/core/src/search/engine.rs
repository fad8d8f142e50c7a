//! Key-level search drivers.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rustc_hash::FxHashMap;

use super::packed::{for_each_child, KeyMove, Scratch};
use super::store::{KeyStore, Node, ROOT};
use super::{Exhaustion, SearchLimits, SearchStats, Strategy};

enum Frontier {
    Fifo(VecDeque<u32>),
    Heap(BinaryHeap<Reverse<(u16, u64, u32)>>),
}

impl Frontier {
    fn new(strategy: Strategy) -> Self {
        match strategy {
            Strategy::BreadthFirst | Strategy::IterativeDeepening => Frontier::Fifo(VecDeque::new()),
            Strategy::GreedyByTotalLength => Frontier::Heap(BinaryHeap::new()),
        }
    }

    fn push(&mut self, id: u32, total: usize, seq: u64) {
        match self {
            Frontier::Fifo(q) => q.push_back(id),
            Frontier::Heap(h) => h.push(Reverse((total as u16, seq, id))),
        }
    }

    fn pop(&mut self) -> Option<u32> {
        match self {
            Frontier::Fifo(q) => q.pop_front(),
            Frontier::Heap(h) => h.pop().map(|Reverse((_, _, id))| id),
        }
    }

    /// Priority of the next entry, smaller first.
    fn peek_priority(&self) -> Option<u64> {
        match self {
            Frontier::Fifo(q) => q.front().map(|_| q.len() as u64),
            Frontier::Heap(h) => h.peek().map(|Reverse((t, _, _))| u64::from(*t)),
        }
    }
}

pub(crate) struct Side {
    pub store: KeyStore,
    pub root: u32,
    frontier: Frontier,
    seq: u64,
}

impl Side {
    fn new(root: &[u8], limits: &SearchLimits) -> Self {
        let store = KeyStore::new(if limits.parallel() { 4 * limits.jobs } else { 1 });
        let id = store.insert(root, Node { parent: ROOT, mv: 0 }).expect("empty store");
        let mut frontier = Frontier::new(limits.strategy);
        frontier.push(id, super::packed::key_total(root), 0);
        Side { store, root: id, frontier, seq: 1 }
    }
}

/// What a driver is looking for.
pub(crate) enum Goal<'a> {
    Key(&'a [u8]),
    /// A key stored by the other side of a bidirectional search.
    Meet,
    /// Nothing; run until exhaustion or until total length `target` is reached.
    Shorten { target: usize },
}

pub(crate) enum DriveResult {
    /// Id of the hit node per side; both are set for meets.
    Hit([Option<u32>; 2]),
    Exhausted(Exhaustion),
}

pub(crate) struct Run {
    pub sides: Vec<Side>,
    pub result: DriveResult,
    pub stats: SearchStats,
    /// Shortest node seen (minimization only).
    pub best: Option<(u32, usize)>,
}

struct BatchOut {
    children: Vec<(u32, usize)>,
    hit: Option<(u32, Option<u32>)>,
    budget: bool,
    best: Option<(u32, usize)>,
}

/// Expands `ids` of side `s`, checking the goal against each new child.
fn expand_batch(
    sides: &[Side],
    s: usize,
    ids: &[u32],
    goal: &Goal<'_>,
    limits: &SearchLimits,
    stop: &AtomicBool,
    scratch: &mut Scratch,
) -> BatchOut {
    let me = &sides[s];
    let mut out = BatchOut { children: Vec::new(), hit: None, budget: false, best: None };
    let stored = || sides.iter().map(|x| x.store.len()).sum::<usize>();
    for &id in ids {
        if stop.load(Ordering::Relaxed) {
            break;
        }
        let key = me.store.key(id);
        for_each_child(&key, limits.max_relator_len, limits.max_total_len, scratch, |child, m, total| {
            if out.hit.is_some() || out.budget {
                return;
            }
            if let Goal::Meet = goal {
                // a child already stored on our side was checked when first inserted
                if me.store.find(child).is_some() {
                    return;
                }
            }
            if stored() >= limits.max_states {
                out.budget = true;
                stop.store(true, Ordering::Relaxed);
                return;
            }
            let Some(cid) = me.store.insert(child, Node { parent: id, mv: m.pack() }) else { return };
            out.children.push((cid, total));
            match goal {
                Goal::Key(target) if child == *target => out.hit = Some((cid, None)),
                Goal::Meet => {
                    if let Some(other) = sides[1 - s].store.find(child) {
                        out.hit = Some((cid, Some(other)));
                    }
                }
                Goal::Shorten { target } => {
                    if out.best.is_none_or(|(_, t)| total < t) {
                        out.best = Some((cid, total));
                    }
                    if total <= *target {
                        out.hit = Some((cid, None));
                    }
                }
                _ => {}
            }
            if out.hit.is_some() {
                stop.store(true, Ordering::Relaxed);
            }
        });
        if out.hit.is_some() || out.budget {
            break;
        }
    }
    out
}

/// Runs a one- or two-sided search from the given root keys.
pub(crate) fn drive(roots: &[&[u8]], goal: Goal<'_>, limits: &SearchLimits) -> Run {
    let started = Instant::now();
    let mut sides: Vec<Side> = roots.iter().map(|r| Side::new(r, limits)).collect();
    let mut expanded = 0usize;
    let mut best = match goal {
        Goal::Shorten { .. } => Some((sides[0].root, super::packed::key_total(roots[0]))),
        _ => None,
    };
    let finish = |sides: Vec<Side>, result, expanded, best| {
        let states = sides.iter().map(|s| s.store.len()).sum();
        Run { sides, result, stats: SearchStats { states, expanded, elapsed: started.elapsed() }, best }
    };
    let initial_hit = match &goal {
        Goal::Key(t) => (roots[0] == *t).then_some((sides[0].root, None)),
        Goal::Meet => (roots[0] == roots[1]).then_some((sides[0].root, Some(sides[1].root))),
        Goal::Shorten { target } => (super::packed::key_total(roots[0]) <= *target).then_some((sides[0].root, None)),
    };
    if let Some((a, b)) = initial_hit {
        return finish(sides, DriveResult::Hit([Some(a), b]), 0, best);
    }
    let workers = if limits.parallel() { limits.jobs } else { 1 };
    let batch = if workers > 1 { 64 } else { 1 };
    let mut scratches: Vec<Scratch> = (0..workers).map(|_| Scratch::default()).collect();
    loop {
        let s = if sides.len() == 2 {
            match (sides[0].frontier.peek_priority(), sides[1].frontier.peek_priority()) {
                (Some(a), Some(b)) => usize::from(b < a),
                _ => return finish(sides, DriveResult::Exhausted(Exhaustion::LengthBound), expanded, best),
            }
        } else {
            0
        };
        let mut ids = Vec::with_capacity(batch * workers);
        while ids.len() < batch * workers {
            match sides[s].frontier.pop() {
                Some(id) => ids.push(id),
                None => break,
            }
        }
        if ids.is_empty() {
            return finish(sides, DriveResult::Exhausted(Exhaustion::LengthBound), expanded, best);
        }
        expanded += ids.len();
        let stop = AtomicBool::new(false);
        let outs: Vec<BatchOut> = if workers == 1 {
            vec![expand_batch(&sides, s, &ids, &goal, limits, &stop, &mut scratches[0])]
        } else {
            let chunk = ids.len().div_ceil(workers);
            let (sides_ref, goal_ref, stop_ref) = (&sides, &goal, &stop);
            std::thread::scope(|scope| {
                let handles: Vec<_> = ids
                    .chunks(chunk)
                    .zip(scratches.iter_mut())
                    .map(|(part, scratch)| {
                        scope.spawn(move || expand_batch(sides_ref, s, part, goal_ref, limits, stop_ref, scratch))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("search worker panicked")).collect()
            })
        };
        let mut budget = false;
        for out in outs {
            if let Some((a, b)) = out.hit {
                let best = out.best.or(best);
                let ids = if s == 0 { [Some(a), b] } else { [b, Some(a)] };
                return finish(sides, DriveResult::Hit(ids), expanded, best);
            }
            if let Some((id, t)) = out.best {
                if best.is_none_or(|(_, bt)| t < bt) {
                    best = Some((id, t));
                }
            }
            budget |= out.budget;
            let side = &mut sides[s];
            for (cid, total) in out.children {
                side.frontier.push(cid, total, side.seq);
                side.seq += 1;
            }
        }
        if budget {
            return finish(sides, DriveResult::Exhausted(Exhaustion::StateBudget), expanded, best);
        }
    }
}

/// Depth-first search with increasing depth bound, keeping a transposition
/// table of the best remaining depth per key. Returns the key-move path.
pub(crate) fn iterative_deepening(
    root: &[u8],
    target: &[u8],
    limits: &SearchLimits,
) -> (Result<Vec<u32>, Exhaustion>, SearchStats) {
    let started = Instant::now();
    let mut stats = SearchStats { states: 1, expanded: 0, elapsed: Default::default() };
    if root == target {
        stats.elapsed = started.elapsed();
        return (Ok(Vec::new()), stats);
    }
    let mut scratch = Scratch::default();
    for bound in 1.. {
        let mut table: FxHashMap<Vec<u8>, u32> = FxHashMap::default();
        table.insert(root.to_vec(), bound);
        let mut ctx = Dfs { target, limits, table, cut: false, budget: false, expanded: 0, scratch: &mut scratch };
        let mut path = Vec::new();
        let found = ctx.visit(root, bound, &mut path);
        stats.expanded += ctx.expanded;
        stats.states = stats.states.max(ctx.table.len());
        stats.elapsed = started.elapsed();
        if found {
            return (Ok(path), stats);
        }
        if ctx.budget {
            return (Err(Exhaustion::StateBudget), stats);
        }
        if !ctx.cut {
            return (Err(Exhaustion::LengthBound), stats);
        }
    }
    unreachable!("the depth loop only exits by returning")
}

struct Dfs<'a> {
    target: &'a [u8],
    limits: &'a SearchLimits,
    table: FxHashMap<Vec<u8>, u32>,
    cut: bool,
    budget: bool,
    expanded: usize,
    scratch: &'a mut Scratch,
}

impl Dfs<'_> {
    fn visit(&mut self, key: &[u8], remaining: u32, path: &mut Vec<u32>) -> bool {
        if remaining == 0 {
            self.cut = true;
            return false;
        }
        self.expanded += 1;
        let mut children: Vec<(Vec<u8>, KeyMove)> = Vec::new();
        for_each_child(key, self.limits.max_relator_len, self.limits.max_total_len, self.scratch, |c, m, _| {
            children.push((c.to_vec(), m));
        });
        for (child, m) in children {
            if child == self.target {
                path.push(m.pack());
                return true;
            }
            if self.table.get(&child).is_some_and(|&r| r >= remaining - 1) {
                continue;
            }
            if self.table.len() >= self.limits.max_states {
                self.budget = true;
                return false;
            }
            self.table.insert(child.clone(), remaining - 1);
            path.push(m.pack());
            if self.visit(&child, remaining - 1, path) {
                return true;
            }
            path.pop();
            if self.budget {
                return false;
            }
        }
        false
    }
}
