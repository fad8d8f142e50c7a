//! Byte-packed canonical keys and the key-level move set.
//!
//! A letter is stored as its rank code (`x1 = 0, X1 = 1, x2 = 2, ...`), so
//! byte order is letter order and inversion is `c ^ 1`. A key is the
//! concatenation of `[len, codes...]` for each core in shortlex order.

use crate::presentation::{least_rotation, CanonicalKey};
use crate::word::{Letter, Word};

pub(crate) fn code_of(l: Letter) -> u8 {
    l.rank() as u8
}

pub(crate) fn letter_of(c: u8) -> Letter {
    Letter::new(usize::from(c / 2) + 1, c % 2 == 0)
}

pub(crate) fn word_of(codes: &[u8]) -> Word {
    Word::from_reduced(codes.iter().map(|&c| letter_of(c)).collect())
}

#[inline]
fn push_reduced(buf: &mut Vec<u8>, c: u8) {
    if buf.last() == Some(&(c ^ 1)) {
        buf.pop();
    } else {
        buf.push(c);
    }
}

/// Cyclically reduced middle of a freely reduced word.
fn cyclic_core(w: &[u8]) -> &[u8] {
    let (mut a, mut b) = (0, w.len());
    while b - a >= 2 && w[a] == w[b - 1] ^ 1 {
        a += 1;
        b -= 1;
    }
    &w[a..b]
}

/// Writes the least rotation of `core` or of its inverse into `out`.
fn canonical_into(core: &[u8], inv: &mut Vec<u8>, out: &mut Vec<u8>) {
    out.clear();
    if core.is_empty() {
        return;
    }
    inv.clear();
    inv.extend(core.iter().rev().map(|&c| c ^ 1));
    let n = core.len();
    let a = least_rotation(core);
    let b = least_rotation(inv);
    let rot_a = core[a..].iter().chain(&core[..a]);
    let rot_b = inv[b..].iter().chain(&inv[..b]);
    if rot_b.clone().lt(rot_a.clone()) {
        out.extend(rot_b);
    } else {
        out.extend(rot_a);
    }
    debug_assert_eq!(out.len(), n);
}

/// Spans of the cores inside a packed key.
pub(crate) fn core_spans(key: &[u8]) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut k = 0;
    while k < key.len() {
        let len = usize::from(key[k]);
        spans.push((k + 1, k + 1 + len));
        k += 1 + len;
    }
    spans
}

pub(crate) fn key_total(key: &[u8]) -> usize {
    key.len() - core_spans(key).len()
}

pub(crate) fn pack_key(key: &CanonicalKey) -> Vec<u8> {
    let mut out = Vec::new();
    for c in key.cores() {
        out.push(u8::try_from(c.len()).expect("relator too long to pack"));
        out.extend(c.letters().iter().map(|&l| code_of(l)));
    }
    out
}

pub(crate) fn unpack_cores(key: &[u8]) -> Vec<Word> {
    core_spans(key).into_iter().map(|(a, b)| word_of(&key[a..b])).collect()
}

fn shortlex(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Key with core `slot` replaced by `new`, re-sorted.
fn replace_core(key: &[u8], spans: &[(usize, usize)], slot: usize, new: &[u8], out: &mut Vec<u8>) {
    out.clear();
    let mut placed = false;
    for (k, &(a, b)) in spans.iter().enumerate() {
        if k == slot {
            continue;
        }
        let core = &key[a..b];
        if !placed && shortlex(new, core).is_lt() {
            out.push(new.len() as u8);
            out.extend_from_slice(new);
            placed = true;
        }
        out.push(core.len() as u8);
        out.extend_from_slice(core);
    }
    if !placed {
        out.push(new.len() as u8);
        out.extend_from_slice(new);
    }
}

/// A key-level move: core `target` (one of `i`, `j`) is replaced by the
/// canonical form of `rot_pos(c_i) · rot_rot(c_j^sign)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct KeyMove {
    pub i: u8,
    pub j: u8,
    pub pos: u8,
    pub rot: u8,
    pub inverse: bool,
    pub replace_j: bool,
}

impl KeyMove {
    pub fn pack(self) -> u32 {
        u32::from(self.i)
            | u32::from(self.j) << 6
            | u32::from(self.pos) << 12
            | u32::from(self.rot) << 20
            | u32::from(self.inverse) << 28
            | u32::from(self.replace_j) << 29
    }

    pub fn unpack(v: u32) -> Self {
        KeyMove {
            i: (v & 63) as u8,
            j: (v >> 6 & 63) as u8,
            pos: (v >> 12 & 255) as u8,
            rot: (v >> 20 & 255) as u8,
            inverse: v >> 28 & 1 == 1,
            replace_j: v >> 29 & 1 == 1,
        }
    }
}

/// Reusable buffers for child generation.
#[derive(Default)]
pub(crate) struct Scratch {
    prod: Vec<u8>,
    vinv: Vec<u8>,
    inv: Vec<u8>,
    canon: Vec<u8>,
    child: Vec<u8>,
}

/// Product core for a move, written into `scratch.canon`.
fn product(key: &[u8], spans: &[(usize, usize)], m: KeyMove, s: &mut Scratch) {
    let (ua, ub) = spans[m.i as usize];
    let (va, vb) = spans[m.j as usize];
    let u = &key[ua..ub];
    let v = &key[va..vb];
    s.vinv.clear();
    if m.inverse {
        s.vinv.extend(v.iter().rev().map(|&c| c ^ 1));
    } else {
        s.vinv.extend_from_slice(v);
    }
    s.prod.clear();
    let (pos, rot) = (usize::from(m.pos), usize::from(m.rot));
    for &c in u[pos.min(u.len())..].iter().chain(&u[..pos.min(u.len())]) {
        push_reduced(&mut s.prod, c);
    }
    let vl = s.vinv.len();
    for k in 0..vl {
        push_reduced(&mut s.prod, s.vinv[(rot + k) % vl]);
    }
    let core = cyclic_core(&s.prod);
    canonical_into(core, &mut s.inv, &mut s.canon);
}

/// Applies a recorded key move.
pub(crate) fn apply_key_move(key: &[u8], m: KeyMove) -> Vec<u8> {
    let spans = core_spans(key);
    let mut s = Scratch::default();
    product(key, &spans, m, &mut s);
    let slot = if m.replace_j { m.j } else { m.i } as usize;
    let mut out = Vec::new();
    replace_core(key, &spans, slot, &s.canon, &mut out);
    out
}

/// Calls `f(child, move, total_len)` for every child within the length caps.
/// Children may repeat and may equal `key`.
pub(crate) fn for_each_child(
    key: &[u8],
    max_relator_len: usize,
    max_total_len: usize,
    s: &mut Scratch,
    mut f: impl FnMut(&[u8], KeyMove, usize),
) {
    let spans = core_spans(key);
    let total = key.len() - spans.len();
    let mut child = std::mem::take(&mut s.child);
    for i in 0..spans.len() {
        for j in i + 1..spans.len() {
            let ulen = spans[i].1 - spans[i].0;
            let vlen = spans[j].1 - spans[j].0;
            for inverse in [false, true] {
                if inverse && vlen == 0 {
                    continue;
                }
                for pos in 0..ulen.max(1) {
                    for rot in 0..vlen.max(1) {
                        let m = KeyMove { i: i as u8, j: j as u8, pos: pos as u8, rot: rot as u8, inverse, replace_j: false };
                        product(key, &spans, m, s);
                        let n = s.canon.len();
                        if n > max_relator_len {
                            continue;
                        }
                        for (replace_j, old) in [(false, ulen), (true, vlen)] {
                            let t = total - old + n;
                            if t > max_total_len {
                                continue;
                            }
                            let slot = if replace_j { j } else { i };
                            replace_core(key, &spans, slot, &s.canon, &mut child);
                            f(&child, KeyMove { replace_j, ..m }, t);
                        }
                    }
                }
            }
        }
    }
    s.child = child;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::Presentation;

    #[test]
    fn pack_round_trip() {
        for s in ["<x,y | xxYYY, xyxYXY>", "<x,y | 1, y>", "<x,y,z | xyz, zzY, Xy>"] {
            let p: Presentation = s.parse().unwrap();
            let key = p.canonical_key();
            let packed = pack_key(&key);
            assert_eq!(unpack_cores(&packed), key.cores());
            assert_eq!(key_total(&packed), key.total_length());
        }
    }

    #[test]
    fn children_agree_with_word_arithmetic() {
        let p: Presentation = "<x,y | xxYYY, xyxYXY>".parse().unwrap();
        let packed = pack_key(&p.canonical_key());
        let cores = p.canonical_key().cores().to_vec();
        let mut s = Scratch::default();
        let mut count = 0;
        for_each_child(&packed, 20, 40, &mut s, |child, m, t| {
            count += 1;
            assert_eq!(apply_key_move(&packed, m), child);
            assert_eq!(key_total(child), t);
            let u = cores[m.i as usize].rotate(m.pos as usize);
            let v = cores[m.j as usize].clone();
            let v = if m.inverse { v.inverse() } else { v };
            let prod = u.multiply(&v.rotate(m.rot as usize));
            let mut rels = cores.clone();
            rels[if m.replace_j { m.j } else { m.i } as usize] = prod;
            assert_eq!(pack_key(&CanonicalKey::of(&rels)), child);
            assert_eq!(KeyMove::unpack(m.pack()), m);
        });
        assert_eq!(count, 2 * 5 * 6 * 2);
    }
}
