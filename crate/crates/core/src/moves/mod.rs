//! AC-moves on ordered relator lists, certificates and their verification.
//!
//! Relator indices are 0-based in the API and 1-based in certificate text.

mod certificate;
mod expand;

pub use certificate::{
    format_step, parse_step_line, replay, verify_certificate, Certificate, ChainKind, ConditionalStep, VerificationReport, VerifyFailure,
};
pub use expand::{expand_certificate, expand_move, ExpansionLevel};

use std::fmt;

use crate::presentation::Presentation;
use crate::triviality::is_perfect;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn exponent(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn apply(self, w: &Word) -> Word {
        match self {
            Sign::Plus => w.clone(),
            Sign::Minus => w.inverse(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One factor `c · r_j^s · c⁻¹` of a substitution witness.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessFactor {
    pub relator: usize,
    pub sign: Sign,
    pub conjugator: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AcMove {
    /// `r_i ← r_i · r_j^ε`
    RightMultiply { i: usize, j: usize, sign: Sign },
    /// `r_i ← r_j^ε · r_i`
    LeftMultiply { i: usize, j: usize, sign: Sign },
    Invert { i: usize },
    /// `r_i ← w · r_i · w⁻¹`
    Conjugate { i: usize, by: Word },
    Swap { i: usize, j: usize },
    /// `r_i ← new`, where `new = (∏ c·r_j^s·c⁻¹) · r_i` must hold in the free group.
    Substitute { i: usize, new: Word, witness: Vec<WitnessFactor> },
    /// Applies `x_g ↦ images[g]` to every relator.
    Automorphism { images: Vec<Word>, inverse_images: Vec<Word> },
    AddGenerator,
    DropGenerator,
    /// Replaces a rank-2 presentation with a primitive relator by the
    /// standard one.
    PrimitiveFinish { i: usize },
}

impl AcMove {
    /// Steps that are only sound when the relators normally generate the
    /// free group.
    pub fn is_conditional(&self) -> bool {
        matches!(self, AcMove::Automorphism { .. } | AcMove::PrimitiveFinish { .. })
    }

    pub fn is_macro(&self) -> bool {
        matches!(self, AcMove::LeftMultiply { .. } | AcMove::Swap { .. } | AcMove::Substitute { .. })
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            AcMove::RightMultiply { .. } => "R",
            AcMove::LeftMultiply { .. } => "L",
            AcMove::Invert { .. } => "I",
            AcMove::Conjugate { .. } => "C",
            AcMove::Swap { .. } => "SWAP",
            AcMove::Substitute { .. } => "SUB",
            AcMove::Automorphism { .. } => "AUT",
            AcMove::AddGenerator => "ADD",
            AcMove::DropGenerator => "DROP",
            AcMove::PrimitiveFinish { .. } => "PRIM",
        }
    }

    /// The move undoing this one, given the presentation it is applied to.
    /// `None` for steps without an elementary inverse in this move set.
    pub fn inverse_on(&self, before: &Presentation) -> Option<AcMove> {
        Some(match self {
            AcMove::RightMultiply { i, j, sign } => AcMove::RightMultiply { i: *i, j: *j, sign: sign.flip() },
            AcMove::LeftMultiply { i, j, sign } => AcMove::LeftMultiply { i: *i, j: *j, sign: sign.flip() },
            AcMove::Invert { i } => AcMove::Invert { i: *i },
            AcMove::Conjugate { i, by } => AcMove::Conjugate { i: *i, by: by.inverse() },
            AcMove::Swap { i, j } => AcMove::Swap { i: *i, j: *j },
            AcMove::Substitute { i, witness, .. } => {
                // new = E·old, so old = E⁻¹·new; E⁻¹ reverses the factor list with inverted signs
                let old = before.relators().get(*i)?.clone();
                let inv = witness
                    .iter()
                    .rev()
                    .map(|f| WitnessFactor { relator: f.relator, sign: f.sign.flip(), conjugator: f.conjugator.clone() })
                    .collect();
                AcMove::Substitute { i: *i, new: old, witness: inv }
            }
            AcMove::Automorphism { images, inverse_images } => {
                AcMove::Automorphism { images: inverse_images.clone(), inverse_images: images.clone() }
            }
            AcMove::AddGenerator => AcMove::DropGenerator,
            AcMove::DropGenerator => AcMove::AddGenerator,
            AcMove::PrimitiveFinish { .. } => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IllegalMove {
    #[error("relator index {index} out of range (presentation has {count})")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("move needs two distinct relators, got {index} twice")]
    SameIndex { index: usize },
    #[error("word uses generator {generator} but the rank is {rank}")]
    WordOutOfRange { generator: usize, rank: usize },
    #[error("witness factor {factor} refers to the substituted relator itself")]
    WitnessSelfReference { factor: usize },
    #[error("witness identity fails: witness product gives {computed}, certificate claims {claimed}")]
    WitnessMismatch { claimed: Word, computed: Word },
    #[error("automorphism needs {rank} images and {rank} inverse images, got {images} and {inverse_images}")]
    AutomorphismArity { rank: usize, images: usize, inverse_images: usize },
    #[error("inverse images do not invert the images: generator {generator} maps back to {got}")]
    AutomorphismInverse { generator: usize, got: Word },
    #[error("drop needs the last relator to be x{generator} alone and x{generator} absent elsewhere: {detail}")]
    DropCondition { generator: usize, detail: &'static str },
    #[error("primitive finish applies to balanced rank-2 presentations only")]
    PrimitiveFinishShape,
    #[error("relator {index} is not primitive")]
    NotPrimitive { index: usize },
    #[error("presentation is not perfect, so it cannot present the trivial group")]
    NotPerfect,
}

fn check_index(p: &Presentation, index: usize) -> Result<(), IllegalMove> {
    if index >= p.relator_count() {
        return Err(IllegalMove::IndexOutOfRange { index: index + 1, count: p.relator_count() });
    }
    Ok(())
}

fn check_pair(p: &Presentation, i: usize, j: usize) -> Result<(), IllegalMove> {
    check_index(p, i)?;
    check_index(p, j)?;
    if i == j {
        return Err(IllegalMove::SameIndex { index: i + 1 });
    }
    Ok(())
}

fn check_word(p: &Presentation, w: &Word) -> Result<(), IllegalMove> {
    if w.max_generator() > p.gen_count() {
        return Err(IllegalMove::WordOutOfRange { generator: w.max_generator(), rank: p.gen_count() });
    }
    Ok(())
}

/// Product `∏ c·r_j^s·c⁻¹ · r_i` named by a substitution witness.
pub fn witness_product(p: &Presentation, i: usize, witness: &[WitnessFactor]) -> Result<Word, IllegalMove> {
    check_index(p, i)?;
    let mut acc = Word::empty();
    for (k, f) in witness.iter().enumerate() {
        check_index(p, f.relator)?;
        if f.relator == i {
            return Err(IllegalMove::WitnessSelfReference { factor: k + 1 });
        }
        check_word(p, &f.conjugator)?;
        acc = acc.multiply(&f.sign.apply(&p.relators()[f.relator]).conjugate_by(&f.conjugator));
    }
    Ok(acc.multiply(&p.relators()[i]))
}

/// Checks that `images` / `inverse_images` define mutually inverse
/// automorphisms of the free group of rank `rank`.
pub fn check_automorphism(rank: usize, images: &[Word], inverse_images: &[Word]) -> Result<(), IllegalMove> {
    if images.len() != rank || inverse_images.len() != rank {
        return Err(IllegalMove::AutomorphismArity {
            rank,
            images: images.len(),
            inverse_images: inverse_images.len(),
        });
    }
    for w in images.iter().chain(inverse_images) {
        if w.max_generator() > rank {
            return Err(IllegalMove::WordOutOfRange { generator: w.max_generator(), rank });
        }
    }
    for (g, img) in images.iter().enumerate() {
        let back = img.substitute(inverse_images).expect("ranks checked");
        if back != Word::generator(g + 1) {
            return Err(IllegalMove::AutomorphismInverse { generator: g + 1, got: back });
        }
    }
    Ok(())
}

pub fn apply_move(p: &Presentation, m: &AcMove) -> Result<Presentation, IllegalMove> {
    let n = p.gen_count();
    let mut rels = p.relators().to_vec();
    match m {
        AcMove::RightMultiply { i, j, sign } => {
            check_pair(p, *i, *j)?;
            rels[*i] = rels[*i].multiply(&sign.apply(&rels[*j]));
        }
        AcMove::LeftMultiply { i, j, sign } => {
            check_pair(p, *i, *j)?;
            rels[*i] = sign.apply(&rels[*j]).multiply(&rels[*i]);
        }
        AcMove::Invert { i } => {
            check_index(p, *i)?;
            rels[*i] = rels[*i].inverse();
        }
        AcMove::Conjugate { i, by } => {
            check_index(p, *i)?;
            check_word(p, by)?;
            rels[*i] = rels[*i].conjugate_by(by);
        }
        AcMove::Swap { i, j } => {
            check_pair(p, *i, *j)?;
            rels.swap(*i, *j);
        }
        AcMove::Substitute { i, new, witness } => {
            let computed = witness_product(p, *i, witness)?;
            if &computed != new {
                return Err(IllegalMove::WitnessMismatch { claimed: new.clone(), computed });
            }
            rels[*i] = computed;
        }
        AcMove::Automorphism { images, inverse_images } => {
            check_automorphism(n, images, inverse_images)?;
            rels = rels.iter().map(|r| r.substitute(images).expect("ranks checked")).collect();
        }
        AcMove::AddGenerator => {
            rels.push(Word::generator(n + 1));
            return Ok(Presentation::from_parts_unchecked(n + 1, rels));
        }
        AcMove::DropGenerator => {
            let fail = |detail| Err(IllegalMove::DropCondition { generator: n, detail });
            if n < 2 {
                return fail("cannot drop the only generator");
            }
            match rels.last() {
                Some(last) if *last == Word::generator(n) => {}
                _ => return fail("last relator differs"),
            }
            rels.pop();
            if rels.iter().any(|r| r.occurrences(n) > 0) {
                return fail("generator occurs in another relator");
            }
            return Ok(Presentation::from_parts_unchecked(n - 1, rels));
        }
        AcMove::PrimitiveFinish { i } => {
            check_index(p, *i)?;
            if n != 2 || !p.is_balanced() {
                return Err(IllegalMove::PrimitiveFinishShape);
            }
            if !rels[*i].is_primitive_rank2() {
                return Err(IllegalMove::NotPrimitive { index: i + 1 });
            }
            if !is_perfect(p) {
                return Err(IllegalMove::NotPerfect);
            }
            return Ok(Presentation::standard(2));
        }
    }
    Ok(Presentation::from_parts_unchecked(n, rels))
}

/// All single AC1-AC3 moves (right and left products, inversion,
/// single-letter conjugation) whose result changes the presentation and keeps
/// every relator within `max_relator_len`.
pub fn neighbors(p: &Presentation, max_relator_len: usize) -> Vec<(AcMove, Presentation)> {
    let n = p.gen_count();
    let rels = p.relators();
    let mut out = Vec::new();
    let mut push = |m: AcMove, new: Word, i: usize| {
        if new.len() > max_relator_len || new == rels[i] {
            return;
        }
        let mut next = rels.to_vec();
        next[i] = new;
        out.push((m, Presentation::from_parts_unchecked(n, next)));
    };
    for i in 0..rels.len() {
        for j in 0..rels.len() {
            if i == j {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let f = sign.apply(&rels[j]);
                push(AcMove::RightMultiply { i, j, sign }, rels[i].multiply(&f), i);
                push(AcMove::LeftMultiply { i, j, sign }, f.multiply(&rels[i]), i);
            }
        }
        push(AcMove::Invert { i }, rels[i].inverse(), i);
        for g in 1..=n {
            for positive in [true, false] {
                let by = Word::letter(crate::word::Letter::new(g, positive));
                let new = rels[i].conjugate_by(&by);
                push(AcMove::Conjugate { i, by }, new, i);
            }
        }
    }
    out
}

/// Some `w` with `w · u · w⁻¹ = v` exactly, if `u` and `v` are conjugate.
pub fn find_conjugator(u: &Word, v: &Word) -> Option<Word> {
    let (a, cu) = u.cyclic_reduce();
    let (b, cv) = v.cyclic_reduce();
    if cu.len() != cv.len() {
        return None;
    }
    if cu.is_empty() {
        return Some(Word::empty());
    }
    let target = cv.letters();
    let len = cu.len();
    let doubled: Vec<_> = cu.letters().iter().chain(cu.letters()).copied().collect();
    let k = (0..len).find(|&k| &doubled[k..k + len] == target)?;
    // cv = p⁻¹·cu·p with p the first k letters of cu
    let p = Word::normalize(cu.letters()[..k].iter().copied());
    Some(b.multiply(&p.inverse()).multiply(&a.inverse()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        let p = Presentation::standard(2);
        let r = apply_move(&p, &AcMove::RightMultiply { i: 0, j: 1, sign: Sign::Plus }).unwrap();
        assert_eq!(r, pres("<x,y | xy, y>"));
        let c = apply_move(&p, &AcMove::Conjugate { i: 0, by: w("y") }).unwrap();
        assert_eq!(c, pres("<x,y | yxY, y>"));
        let b = pres("<x,y | XyxYY, XyxxyXX>");
        let sub = AcMove::Substitute {
            i: 1,
            new: w("yyxyXX"),
            witness: vec![WitnessFactor { relator: 0, sign: Sign::Minus, conjugator: Word::empty() }],
        };
        assert_eq!(apply_move(&b, &sub).unwrap(), pres("<x,y | XyxYY, yyxyXX>"));
        let add = apply_move(&pres("<x,y | xxYYY, xyxYXY>"), &AcMove::AddGenerator).unwrap();
        assert_eq!(add, pres("<x,y,z | xxYYY, xyxYXY, z>"));
        assert_eq!(apply_move(&add, &AcMove::DropGenerator).unwrap(), pres("<x,y | xxYYY, xyxYXY>"));
    }

    #[test]
    fn illegal_moves_have_reasons() {
        let p = Presentation::standard(2);
        assert!(matches!(
            apply_move(&p, &AcMove::RightMultiply { i: 0, j: 0, sign: Sign::Plus }),
            Err(IllegalMove::SameIndex { .. })
        ));
        assert!(matches!(apply_move(&p, &AcMove::Invert { i: 2 }), Err(IllegalMove::IndexOutOfRange { .. })));
        let bad = AcMove::Substitute {
            i: 1,
            new: w("xy"),
            witness: vec![WitnessFactor { relator: 0, sign: Sign::Plus, conjugator: w("y") }],
        };
        assert!(matches!(apply_move(&p, &bad), Err(IllegalMove::WitnessMismatch { .. })));
        let aut = AcMove::Automorphism { images: vec![w("xy"), w("y")], inverse_images: vec![w("xy"), w("y")] };
        assert!(matches!(apply_move(&p, &aut), Err(IllegalMove::AutomorphismInverse { .. })));
        assert!(matches!(
            apply_move(&pres("<x,y | xy, y>"), &AcMove::DropGenerator),
            Err(IllegalMove::DropCondition { .. })
        ));
        assert!(matches!(
            apply_move(&pres("<x,y | xxyy, y>"), &AcMove::PrimitiveFinish { i: 0 }),
            Err(IllegalMove::NotPrimitive { .. })
        ));
    }

    #[test]
    fn automorphism_and_primitive_finish() {
        let p = pres("<x,y | yXyyXyyX, yxYXyyX>");
        let aut = AcMove::Automorphism { images: vec![w("xyy"), w("y")], inverse_images: vec![w("xYY"), w("y")] };
        let q = apply_move(&p, &aut).unwrap();
        assert_eq!(canonical(&q.relators()[0]), canonical(&w("YXXX")));
        assert_eq!(apply_move(&p, &AcMove::PrimitiveFinish { i: 0 }).unwrap(), Presentation::standard(2));
    }

    fn canonical(x: &Word) -> Word {
        crate::presentation::canonical_core(x)
    }

    #[test]
    fn neighbor_counts() {
        let p = Presentation::standard(2);
        assert_eq!(neighbors(&p, 2).len(), 10);
        for (m, q) in neighbors(&p, 2) {
            assert_eq!(apply_move(&p, &m).unwrap(), q);
        }
        let z = neighbors(&pres("<x,y | x, x>"), 0);
        assert!(!z.is_empty());
        assert!(z.iter().all(|(_, q)| q.relators().iter().any(Word::is_empty)));
        let e = neighbors(&pres("<x,y | 1, y>"), 10);
        assert!(!e.iter().any(|(m, _)| *m == AcMove::Invert { i: 0 }));
    }

    #[test]
    fn conjugator_search() {
        for (u, v) in [("xyX", "y"), ("xyzYX", "z"), ("xyz", "zxy"), ("xYzXy", "XyxYz"), ("yxxY", "xx"), ("x", "x"), ("1", "1"), ("XyyxY", "YXyyx")] {
            let (u, v) = (w(u), w(v));
            let c = find_conjugator(&u, &v).unwrap_or_else(|| panic!("{u} ~ {v}"));
            assert_eq!(u.conjugate_by(&c), v);
        }
        assert_eq!(find_conjugator(&w("xy"), &w("yx")).map(|c| w("xy").conjugate_by(&c)), Some(w("yx")));
        assert!(find_conjugator(&w("xy"), &w("xY")).is_none());
    }
}
