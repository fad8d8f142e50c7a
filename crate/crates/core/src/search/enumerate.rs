//! Enumeration of perfect balanced presentations up to canonical key.

use crate::presentation::{canonical_core, Presentation};
use crate::word::{Letter, Word};

/// Canonical cores of length exactly `len` over `rank` generators, in
/// shortlex order.
pub fn canonical_cores(rank: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (1..=rank).flat_map(|g| [Letter::new(g, true), Letter::new(g, false)]).collect();
    let mut out = Vec::new();
    if len == 0 {
        return vec![Word::empty()];
    }
    let mut cur: Vec<Letter> = Vec::with_capacity(len);
    fn rec(cur: &mut Vec<Letter>, len: usize, letters: &[Letter], out: &mut Vec<Word>) {
        if cur.len() == len {
            if cur[0] == cur[len - 1].inverse() && len > 1 {
                return;
            }
            let w = Word::from_reduced(cur.clone());
            if canonical_core(&w) == w {
                out.push(w);
            }
            return;
        }
        for &l in letters {
            if cur.last().is_some_and(|&p| p == l.inverse()) {
                continue;
            }
            // a canonical core starts with its least letter
            if cur.first().is_some_and(|&f| l < f) {
                continue;
            }
            cur.push(l);
            rec(cur, len, letters, out);
            cur.pop();
        }
    }
    rec(&mut cur, len, &letters, &mut out);
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out
}

/// One presentation per canonical key among balanced presentations on
/// `gen_count` generators with total relator length at most
/// `max_total_len` and trivial abelianization. Relators are the canonical
/// cores, listed in key order.
pub fn enumerate_perfect(gen_count: usize, max_total_len: usize) -> Vec<Presentation> {
    assert!(gen_count >= 1, "need at least one generator");
    // empty relators give a zero row, so every core has length at least 1
    let max_core = max_total_len.saturating_sub(gen_count - 1);
    let mut pool: Vec<Word> = Vec::new();
    for len in 1..=max_core {
        pool.extend(canonical_cores(gen_count, len));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(gen_count);
    choose(&pool, gen_count, max_total_len, 0, 0, &mut chosen, &mut out);
    out
}

fn choose(
    pool: &[Word],
    n: usize,
    budget: usize,
    from: usize,
    used: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Presentation>,
) {
    if chosen.len() == n {
        let rels: Vec<Word> = chosen.iter().map(|&k| pool[k].clone()).collect();
        let p = Presentation::from_parts_unchecked(n, rels);
        if p.abelianization_matrix::<i64>().determinant().abs() == 1 {
            out.push(p);
        }
        return;
    }
    let remaining = n - chosen.len() - 1;
    for k in from..pool.len() {
        let len = pool[k].len();
        // the pool is sorted by length, so later cores are no shorter
        if used + len + remaining * len > budget {
            break;
        }
        chosen.push(k);
        choose(pool, n, budget, k, used + len, chosen, out);
        chosen.pop();
    }
}
