//! HLT coset enumeration over the trivial subgroup.
//!
//! Columns `2(g-1)` and `2(g-1)+1` hold the action of `x_g` and `x_g⁻¹`;
//! `0` marks an undefined entry, cosets are numbered from 1.

use crate::presentation::Presentation;
use crate::word::Letter;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetStatus {
    Complete,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ToddCoxeterOutcome {
    Order(usize),
    Exhausted { cosets_defined: usize },
}

impl ToddCoxeterOutcome {
    pub fn order(&self) -> Option<usize> {
        match self {
            ToddCoxeterOutcome::Order(n) => Some(*n),
            ToddCoxeterOutcome::Exhausted { .. } => None,
        }
    }
}

/// Compacted table of a finished enumeration.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub columns: usize,
    pub rows: Vec<Vec<Option<usize>>>,
    pub status: CosetStatus,
}

impl CosetTable {
    /// Coset reached from `coset` by a letter (0-based cosets).
    pub fn act(&self, coset: usize, l: Letter) -> Option<usize> {
        self.rows[coset][column(l)]
    }
}

#[inline]
fn column(l: Letter) -> usize {
    2 * (l.generator() - 1) + usize::from(!l.is_positive())
}

struct Enumerator {
    width: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    relators: Vec<Vec<usize>>,
    max_cosets: usize,
    queue: Vec<u32>,
}

struct BudgetHit;

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.width + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.width + x] = v;
    }

    fn new_coset(&mut self) -> Result<u32, BudgetHit> {
        // index 0 is the "undefined" sentinel row
        if self.parent.len() > self.max_cosets {
            return Err(BudgetHit);
        }
        let c = self.parent.len() as u32;
        self.parent.push(c);
        self.table.extend(std::iter::repeat_n(0, self.width));
        Ok(c)
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, BudgetHit> {
        let d = self.new_coset()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != root {
            let next = self.parent[k as usize];
            self.parent[k as usize] = root;
            k = next;
        }
        root
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (keep, kill) = (ra.min(rb), ra.max(rb));
            self.parent[kill as usize] = keep;
            self.queue.push(kill);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.width {
                let d = self.get(dead, x);
                if d == 0 {
                    continue;
                }
                self.set(d, x ^ 1, 0);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != 0 {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != 0 {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, start: u32, rel: usize) -> Result<(), BudgetHit> {
        let len = self.relators[rel].len();
        if len == 0 {
            return Ok(());
        }
        let (mut f, mut b) = (start, start);
        let (mut i, mut j) = (0usize, len - 1);
        loop {
            while i <= j {
                let x = self.relators[rel][i];
                let next = self.get(f, x);
                if next == 0 {
                    break;
                }
                f = next;
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i {
                let x = self.relators[rel][j] ^ 1;
                let next = self.get(b, x);
                if next == 0 {
                    break;
                }
                b = next;
                if j == 0 {
                    // the whole relator scanned backwards
                    self.coincidence(f, b);
                    return Ok(());
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(());
            }
            if i == j {
                let x = self.relators[rel][i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                return Ok(());
            }
            let x = self.relators[rel][i];
            self.define(f, x)?;
        }
    }
}

/// Enumerates cosets of the trivial subgroup, defining at most `max_cosets`.
pub fn enumerate_cosets(p: &Presentation, max_cosets: usize) -> (ToddCoxeterOutcome, Option<CosetTable>) {
    assert!(max_cosets >= 1, "max_cosets must be positive");
    let width = 2 * p.gen_count();
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.letters().iter().map(|&l| column(l)).collect())
        .collect();
    let mut e = Enumerator {
        width,
        table: vec![0; width],
        parent: vec![0],
        relators,
        max_cosets,
        queue: Vec::new(),
    };
    let first = e.new_coset().ok().expect("budget allows one coset");
    let mut alpha = first;
    let run = (|| -> Result<(), BudgetHit> {
        while (alpha as usize) < e.parent.len() {
            if e.is_live(alpha) {
                for r in 0..e.relators.len() {
                    e.scan_and_fill(alpha, r)?;
                    if !e.is_live(alpha) {
                        break;
                    }
                }
                if e.is_live(alpha) {
                    for x in 0..width {
                        if e.get(alpha, x) == 0 {
                            e.define(alpha, x)?;
                        }
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    })();
    let defined = e.parent.len() - 1;
    if run.is_err() {
        return (ToddCoxeterOutcome::Exhausted { cosets_defined: defined }, None);
    }
    let live: Vec<u32> = (1..e.parent.len() as u32).filter(|&c| e.is_live(c)).collect();
    let mut index = vec![usize::MAX; e.parent.len()];
    for (k, &c) in live.iter().enumerate() {
        index[c as usize] = k;
    }
    let rows = live
        .iter()
        .map(|&c| {
            (0..width)
                .map(|x| {
                    let d = e.get(c, x);
                    (d != 0).then(|| index[d as usize])
                })
                .collect()
        })
        .collect();
    let table = CosetTable { columns: width, rows, status: CosetStatus::Complete };
    (ToddCoxeterOutcome::Order(live.len()), Some(table))
}

pub fn todd_coxeter(p: &Presentation, max_cosets: usize) -> ToddCoxeterOutcome {
    enumerate_cosets(p, max_cosets).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> Option<usize> {
        todd_coxeter(&s.parse().unwrap(), 100_000).order()
    }

    #[test]
    fn small_orders() {
        assert_eq!(order("<x | xxxxx>"), Some(5));
        assert_eq!(order("<x,y | xx, yyy, xyxy>"), Some(6));
        assert_eq!(order("<x,y | XyyxYYY, xxYXY>"), Some(1));
        assert_eq!(order("<x,y | yxyXX, xyxXXXX>"), Some(3));
        assert_eq!(order("<x,y | x, y>"), Some(1));
        assert_eq!(order("<x | 1>"), None);
    }

    #[test]
    fn complete_table_satisfies_relators() {
        let p: Presentation = "<x,y | xx, yyy, xyxy>".parse().unwrap();
        let (out, table) = enumerate_cosets(&p, 1000);
        let table = table.unwrap();
        assert_eq!(out, ToddCoxeterOutcome::Order(6));
        for c in 0..6 {
            for r in p.relators() {
                let end = r.letters().iter().try_fold(c, |k, &l| table.act(k, l));
                assert_eq!(end, Some(c));
            }
        }
    }

    #[test]
    fn budget_is_a_distinct_outcome() {
        let p: Presentation = "<x,y | xx, yyy, xyxy>".parse().unwrap();
        assert!(matches!(todd_coxeter(&p, 3), ToddCoxeterOutcome::Exhausted { .. }));
        assert_eq!(todd_coxeter(&p, 50), ToddCoxeterOutcome::Order(6));
    }
}
