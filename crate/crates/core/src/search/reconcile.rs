//! Turning key-level paths into concrete move sequences.

use super::packed::{apply_key_move, unpack_cores, KeyMove};
use crate::moves::{apply_move, expand_move, find_conjugator, AcMove, ExpansionLevel, Sign};
use crate::presentation::{canonical_core, Presentation};
use crate::word::Word;

struct Builder {
    p: Presentation,
    steps: Vec<AcMove>,
}

impl Builder {
    fn push(&mut self, m: AcMove) {
        self.p = apply_move(&self.p, &m).expect("reconciled move is legal");
        self.steps.push(m);
    }

    /// Inverts and conjugates relator `k` until it equals `target`, which
    /// must be conjugate to it or to its inverse.
    fn make_exact(&mut self, k: usize, target: &Word) {
        let r = &self.p.relators()[k];
        if r == target {
            return;
        }
        let by = match find_conjugator(r, target) {
            Some(c) => c,
            None => {
                self.push(AcMove::Invert { i: k });
                find_conjugator(&self.p.relators()[k], target).expect("relator matches target up to inversion")
            }
        };
        if !by.is_empty() {
            self.push(AcMove::Conjugate { i: k, by });
        }
    }

    /// `slots[c]` is the relator whose canonical core is key core `c`.
    fn slots(&self, cores: &[Word]) -> Vec<usize> {
        let canon: Vec<Word> = self.p.relators().iter().map(canonical_core).collect();
        let mut used = vec![false; canon.len()];
        cores
            .iter()
            .map(|c| {
                let k = (0..canon.len()).find(|&k| !used[k] && canon[k] == *c).expect("presentation matches key");
                used[k] = true;
                k
            })
            .collect()
    }

    fn key_step(&mut self, key: &[u8], m: KeyMove) {
        let cores = unpack_cores(key);
        let slots = self.slots(&cores);
        let sign = if m.inverse { Sign::Minus } else { Sign::Plus };
        let x = cores[m.i as usize].rotate(m.pos as usize);
        let y = sign.apply(&cores[m.j as usize]).rotate(m.rot as usize);
        let (ki, kj) = (slots[m.i as usize], slots[m.j as usize]);
        self.make_exact(ki, &x);
        self.make_exact(kj, &sign.apply(&y));
        if m.replace_j {
            self.push(AcMove::RightMultiply { i: kj, j: ki, sign });
        } else {
            self.push(AcMove::RightMultiply { i: ki, j: kj, sign });
        }
    }
}

/// Concrete moves from `start` following the packed key moves `path` from
/// `start`'s key. Returns the moves and the presentation reached.
pub(crate) fn realize_path(start: &Presentation, root_key: &[u8], path: &[u32]) -> (Vec<AcMove>, Presentation) {
    let mut b = Builder { p: start.clone(), steps: Vec::new() };
    let mut key = root_key.to_vec();
    for &code in path {
        let m = KeyMove::unpack(code);
        b.key_step(&key, m);
        key = apply_key_move(&key, m);
        debug_assert_eq!(super::packed::pack_key(&b.p.canonical_key()), key);
    }
    (b.steps, b.p)
}

/// Primitive moves taking `from` to exactly `to`, for presentations with the
/// same canonical key.
pub fn align(from: &Presentation, to: &Presentation) -> Option<Vec<AcMove>> {
    if from.gen_count() != to.gen_count()
        || from.relator_count() != to.relator_count()
        || from.canonical_key() != to.canonical_key()
    {
        return None;
    }
    let mut b = Builder { p: from.clone(), steps: Vec::new() };
    let targets: Vec<Word> = to.relators().iter().map(canonical_core).collect();
    let slots = b.slots(&targets);
    for (t, &k) in slots.iter().enumerate() {
        b.make_exact(k, &to.relators()[t]);
    }
    // position[t] holds the current index of the relator destined for slot t
    let mut position = slots;
    for t in 0..position.len() {
        let cur = position[t];
        if cur == t {
            continue;
        }
        let swap = AcMove::Swap { i: t, j: cur };
        for m in expand_move(&b.p, &swap, ExpansionLevel::Macros).expect("swap is legal") {
            b.push(m);
        }
        if let Some(other) = position.iter().position(|&k| k == t) {
            position[other] = cur;
        }
        position[t] = t;
    }
    debug_assert_eq!(&b.p, to);
    Some(b.steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::replay;

    #[test]
    fn align_permuted_conjugates() {
        let from: Presentation = "<x,y,z | Yxy, zzY, Xyzzx>".parse().unwrap();
        assert!(align(&from, &Presentation::standard(3)).is_none());
        let to: Presentation = "<x,y,z | yzz, x, zzY>".parse().unwrap();
        let steps = align(&from, &to).unwrap();
        assert_eq!(replay(&from, &steps).unwrap(), to);
        assert!(steps.iter().all(|m| !m.is_macro()));
        let std = Presentation::standard(2);
        let p: Presentation = "<x,y | yYyxY, Y>".parse().unwrap();
        assert_eq!(replay(&p, &align(&p, &std).unwrap()).unwrap(), std);
    }
}
