//! Trivialization and equivalence search over canonical keys.
//!
//! States are canonical keys. A move replaces one core by the product of a
//! rotation of it with a rotation of another core (or its inverse), which
//! covers right and left multiplication combined with any cyclic
//! conjugation. Found paths are replayed on concrete relators as
//! `I`, `C` and `R` steps.

mod engine;
mod enumerate;
mod packed;
mod reconcile;
mod store;

pub use enumerate::{canonical_cores, enumerate_perfect};
pub use reconcile::align;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use engine::{drive, iterative_deepening, DriveResult, Goal};
use packed::pack_key;

use crate::moves::{apply_move, AcMove, Certificate};
use crate::presentation::Presentation;
use crate::triviality::is_perfect;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    BreadthFirst,
    IterativeDeepening,
    #[default]
    GreedyByTotalLength,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bfs" | "breadth-first" => Ok(Strategy::BreadthFirst),
            "iddfs" | "iterative-deepening" => Ok(Strategy::IterativeDeepening),
            "greedy" | "greedy-by-total-length" => Ok(Strategy::GreedyByTotalLength),
            other => Err(format!("unknown strategy {other:?} (breadth-first, iterative-deepening, greedy-by-total-length)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::BreadthFirst => "breadth-first",
            Strategy::IterativeDeepening => "iterative-deepening",
            Strategy::GreedyByTotalLength => "greedy-by-total-length",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Cap on each cyclically reduced relator.
    pub max_relator_len: usize,
    pub max_total_len: usize,
    /// Cap on the number of stored keys.
    pub max_states: usize,
    pub strategy: Strategy,
    pub jobs: usize,
    /// Forces a single worker so that repeated runs agree.
    pub deterministic: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_relator_len: 20,
            max_total_len: 34,
            max_states: 10_000_000,
            strategy: Strategy::default(),
            jobs: 1,
            deterministic: true,
        }
    }
}

impl SearchLimits {
    pub fn with_states(max_states: usize) -> Self {
        SearchLimits { max_states, ..Self::default() }
    }

    fn parallel(&self) -> bool {
        self.jobs > 1 && !self.deterministic && self.strategy != Strategy::IterativeDeepening
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: &str| Err(SearchError::InvalidLimits(m.to_string()));
        if self.max_relator_len == 0 || self.max_total_len == 0 || self.max_states == 0 || self.jobs == 0 {
            return bad("all limits must be positive");
        }
        if self.max_relator_len > 255 {
            return bad("max_relator_len is at most 255");
        }
        if self.max_total_len > u16::MAX as usize {
            return bad("max_total_len is at most 65535");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search needs a balanced presentation ({gens} generators, {relators} relators)")]
    Unbalanced { gens: usize, relators: usize },
    #[error("presentations differ in shape: {0}")]
    ShapeMismatch(String),
    #[error("invalid limits: {0}")]
    InvalidLimits(String),
    #[error("search supports at most 63 generators and relators of length at most 255")]
    TooLarge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaustion {
    /// `max_states` keys were stored without success.
    StateBudget,
    /// Every key reachable within the length caps was explored.
    LengthBound,
}

impl fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exhaustion::StateBudget => "state budget",
            Exhaustion::LengthBound => "length bound",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states: usize,
    pub expanded: usize,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found { certificate: Certificate, stats: SearchStats },
    Exhausted { reason: Exhaustion, stats: SearchStats },
    NotPerfect,
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found { certificate, .. } => Some(certificate),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<SearchStats> {
        match self {
            SearchOutcome::Found { stats, .. } | SearchOutcome::Exhausted { stats, .. } => Some(*stats),
            SearchOutcome::NotPerfect => None,
        }
    }
}

fn check_searchable(p: &Presentation) -> Result<(), SearchError> {
    if !p.is_balanced() {
        return Err(SearchError::Unbalanced { gens: p.gen_count(), relators: p.relator_count() });
    }
    if p.gen_count() > 63 || p.canonical_key().cores().iter().any(|c| c.len() > 255) {
        return Err(SearchError::TooLarge);
    }
    Ok(())
}

fn certificate(start: &Presentation, steps: Vec<AcMove>) -> Certificate {
    Certificate::from_steps(start.clone(), steps).expect("search produced an illegal step")
}

/// Searches for an elementary chain from `p` to the standard presentation.
pub fn trivialize(p: &Presentation, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    check_searchable(p)?;
    if !is_perfect(p) {
        return Ok(SearchOutcome::NotPerfect);
    }
    let target = Presentation::standard(p.gen_count());
    search_to(p, &target, limits)
}

/// One-sided search from `p` to the key of `target`, ending exactly at `target`.
fn search_to(p: &Presentation, target: &Presentation, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    let root = pack_key(&p.canonical_key());
    let goal = pack_key(&target.canonical_key());
    let (path, stats) = if limits.strategy == Strategy::IterativeDeepening {
        let (res, stats) = iterative_deepening(&root, &goal, limits);
        match res {
            Ok(path) => (path, stats),
            Err(reason) => return Ok(SearchOutcome::Exhausted { reason, stats }),
        }
    } else {
        let run = drive(&[&root], Goal::Key(&goal), limits);
        match run.result {
            DriveResult::Hit([id, _]) => (run.sides[0].store.path(id.expect("hit on the only side")), run.stats),
            DriveResult::Exhausted(reason) => return Ok(SearchOutcome::Exhausted { reason, stats: run.stats }),
        }
    };
    let (mut steps, reached) = reconcile::realize_path(p, &root, &path);
    steps.extend(align(&reached, target).expect("search ends on the target key"));
    Ok(SearchOutcome::Found { certificate: certificate(p, steps), stats })
}

/// Moves undoing `steps` applied from `start`, in application order.
fn reverse_chain(start: &Presentation, steps: &[AcMove]) -> Vec<AcMove> {
    let mut states = vec![start.clone()];
    for m in steps {
        let next = apply_move(states.last().expect("nonempty"), m).expect("chain replays");
        states.push(next);
    }
    steps
        .iter()
        .zip(&states)
        .rev()
        .map(|(m, before)| m.inverse_on(before).expect("elementary moves are invertible"))
        .collect()
}

/// Searches from both ends for a common key and stitches the halves into an
/// elementary chain from `p` to exactly `q`.
pub fn ac_equivalent(p: &Presentation, q: &Presentation, limits: &SearchLimits) -> Result<SearchOutcome, SearchError> {
    limits.validate()?;
    check_searchable(p)?;
    check_searchable(q)?;
    if p.gen_count() != q.gen_count() {
        return Err(SearchError::ShapeMismatch(format!("{} vs {} generators", p.gen_count(), q.gen_count())));
    }
    if limits.strategy == Strategy::IterativeDeepening {
        return search_to(p, q, limits);
    }
    let pk = pack_key(&p.canonical_key());
    let qk = pack_key(&q.canonical_key());
    let run = drive(&[&pk, &qk], Goal::Meet, limits);
    let (pa, qb) = match run.result {
        DriveResult::Hit([Some(a), Some(b)]) => (a, b),
        DriveResult::Hit(_) => unreachable!("meets report both sides"),
        DriveResult::Exhausted(reason) => return Ok(SearchOutcome::Exhausted { reason, stats: run.stats }),
    };
    let ppath = run.sides[0].store.path(pa);
    let qpath = run.sides[1].store.path(qb);
    let (mut steps, p_end) = reconcile::realize_path(p, &pk, &ppath);
    let (q_steps, q_end) = reconcile::realize_path(q, &qk, &qpath);
    steps.extend(align(&p_end, &q_end).expect("both halves end on the meeting key"));
    steps.extend(reverse_chain(q, &q_steps));
    Ok(SearchOutcome::Found { certificate: certificate(p, steps), stats: run.stats })
}

/// Result of a length-reduction run.
#[derive(Clone, Debug)]
pub struct Minimized {
    /// Chain from the input to the shortest presentation found.
    pub certificate: Certificate,
    pub reached_target: bool,
    pub exhaustion: Option<Exhaustion>,
    pub stats: SearchStats,
}

/// Best-first search for a presentation of small total length, stopping as
/// soon as `target_total` is reached or the limits are exhausted.
pub fn minimize(p: &Presentation, target_total: usize, limits: &SearchLimits) -> Result<Minimized, SearchError> {
    limits.validate()?;
    check_searchable(p)?;
    let root = pack_key(&p.canonical_key());
    let limits = SearchLimits { strategy: Strategy::GreedyByTotalLength, ..limits.clone() };
    let run = drive(&[&root], Goal::Shorten { target: target_total }, &limits);
    let (best, _) = run.best.expect("minimization tracks a best node");
    let (reached_target, exhaustion) = match run.result {
        DriveResult::Hit(..) => (true, None),
        DriveResult::Exhausted(e) => (false, Some(e)),
    };
    let path = run.sides[0].store.path(best);
    let (mut steps, end) = reconcile::realize_path(p, &root, &path);
    for (i, r) in end.relators().iter().enumerate() {
        let (c, _) = r.cyclic_reduce();
        if !c.is_empty() {
            steps.push(AcMove::Conjugate { i, by: c.inverse() });
        }
    }
    Ok(Minimized { certificate: certificate(p, steps), reached_target, exhaustion, stats: run.stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::{verify_certificate, ChainKind};

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    fn found(o: SearchOutcome) -> Certificate {
        match o {
            SearchOutcome::Found { certificate, .. } => certificate,
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    fn check(c: &Certificate) {
        let r = verify_certificate(c);
        assert!(r.ok, "{:?}", r.failure);
        assert_eq!(r.kind(), ChainKind::Elementary);
        assert!(c.steps.iter().all(|m| !m.is_macro()));
    }

    /// The standard presentation pushed through a fixed list of moves.
    fn scrambled(n: usize, steps: &[AcMove]) -> Presentation {
        crate::moves::replay(&Presentation::standard(n), steps).unwrap()
    }

    fn sample() -> Presentation {
        use crate::moves::Sign::*;
        use crate::word::w;
        scrambled(
            2,
            &[
                AcMove::RightMultiply { i: 0, j: 1, sign: Plus },
                AcMove::Conjugate { i: 0, by: w("y") },
                AcMove::RightMultiply { i: 1, j: 0, sign: Minus },
                AcMove::Conjugate { i: 1, by: w("X") },
                AcMove::RightMultiply { i: 0, j: 1, sign: Plus },
            ],
        )
    }

    #[test]
    fn trivial_cases() {
        let c = found(trivialize(&Presentation::standard(2), &SearchLimits::default()).unwrap());
        assert!(c.steps.is_empty());
        assert!(matches!(trivialize(&pres("<x,y | xx, y>"), &SearchLimits::default()).unwrap(), SearchOutcome::NotPerfect));
        assert!(trivialize(&pres("<x,y | x>"), &SearchLimits::default()).is_err());
        let c = found(trivialize(&pres("<x,y | Yxy, XyyxY>"), &SearchLimits::default()).unwrap());
        check(&c);
        assert_eq!(c.end, Presentation::standard(2));
    }

    #[test]
    fn every_strategy_finds_short_chains() {
        let p = sample();
        for strategy in [Strategy::BreadthFirst, Strategy::IterativeDeepening, Strategy::GreedyByTotalLength] {
            let limits = SearchLimits { strategy, max_states: 200_000, ..Default::default() };
            let c = found(trivialize(&p, &limits).unwrap());
            check(&c);
        }
    }

    #[test]
    fn equivalence_meets_in_the_middle() {
        let p = pres("<x,y | xy, y>");
        let c = found(ac_equivalent(&p, &Presentation::standard(2), &SearchLimits::default()).unwrap());
        check(&c);
        use crate::moves::Sign::*;
        let q = crate::moves::replay(
            &sample(),
            &[AcMove::RightMultiply { i: 1, j: 0, sign: Plus }, AcMove::Conjugate { i: 1, by: crate::word::w("yx") }],
        )
        .unwrap();
        let c = found(ac_equivalent(&sample(), &q, &SearchLimits::with_states(200_000)).unwrap());
        check(&c);
        assert_eq!(c.end, q);
        let rotated = pres("<x,y | YxyX, xYXy>");
        let c = found(ac_equivalent(&pres("<x,y | yXYx, XyxY>"), &rotated, &SearchLimits::default()).unwrap());
        check(&c);
        assert!(c.steps.len() <= 6);
    }

    #[test]
    fn exhaustion_kinds() {
        let p = pres("<x,y | xxxYYYY, xyxYXY>");
        let tight = SearchLimits { max_states: 50, ..Default::default() };
        match trivialize(&p, &tight).unwrap() {
            SearchOutcome::Exhausted { reason: Exhaustion::StateBudget, .. } => {}
            other => panic!("{other:?}"),
        }
        let short = SearchLimits { max_relator_len: 7, max_total_len: 13, ..Default::default() };
        match trivialize(&p, &short).unwrap() {
            SearchOutcome::Exhausted { reason: Exhaustion::LengthBound, .. } => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parallel_runs_verify() {
        let p = sample();
        let limits = SearchLimits { jobs: 3, deterministic: false, max_states: 100_000, ..Default::default() };
        check(&found(trivialize(&p, &limits).unwrap()));
        let limits = SearchLimits { strategy: Strategy::BreadthFirst, ..limits };
        check(&found(trivialize(&p, &limits).unwrap()));
    }

    #[test]
    fn minimize_reports_best() {
        let p = pres("<x,y | XyyxYYY, YxxyXXX>");
        let m = minimize(&p, 2, &SearchLimits::with_states(200_000)).unwrap();
        let r = verify_certificate(&m.certificate);
        assert!(r.ok);
        assert!(m.certificate.end.canonical_key().total_length() <= 14);
    }
}
