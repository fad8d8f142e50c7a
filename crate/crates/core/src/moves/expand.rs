//! Rewriting macro steps as sequences of primitive AC1-AC3 moves.

use super::{apply_move, witness_product, AcMove, Certificate, IllegalMove};
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionLevel {
    /// Expand `L` and `SWAP`.
    Macros,
    /// Also expand `SUB` through its witness.
    MacrosAndSubstitutions,
}

fn push_conjugate(out: &mut Vec<AcMove>, i: usize, by: Word) {
    if !by.is_empty() {
        out.push(AcMove::Conjugate { i, by });
    }
}

/// Primitive moves with the same effect as `m` on `p`; non-macro moves are
/// returned unchanged.
pub fn expand_move(p: &Presentation, m: &AcMove, level: ExpansionLevel) -> Result<Vec<AcMove>, IllegalMove> {
    let after = apply_move(p, m)?;
    let rels = p.relators();
    let mut out = Vec::new();
    match m {
        AcMove::LeftMultiply { i, j, sign } => {
            // r·f then conjugating by f gives f·r
            out.push(AcMove::RightMultiply { i: *i, j: *j, sign: *sign });
            push_conjugate(&mut out, *i, sign.apply(&rels[*j]));
        }
        AcMove::Swap { i, j } => {
            // (a, b) → (ab, b) → (ab, a⁻¹) → (ab·a⁻¹, a⁻¹) → (b, a⁻¹) → (b, a)
            use super::Sign::{Minus, Plus};
            out.push(AcMove::RightMultiply { i: *i, j: *j, sign: Plus });
            out.push(AcMove::RightMultiply { i: *j, j: *i, sign: Minus });
            out.push(AcMove::RightMultiply { i: *i, j: *j, sign: Plus });
            push_conjugate(&mut out, *i, rels[*i].inverse());
            out.push(AcMove::Invert { i: *j });
        }
        AcMove::Substitute { i, witness, .. } if level == ExpansionLevel::MacrosAndSubstitutions => {
            witness_product(p, *i, witness)?;
            let mut cur = p.clone();
            for f in witness.iter().rev() {
                let mut chunk = Vec::new();
                push_conjugate(&mut chunk, *i, f.conjugator.inverse());
                chunk.push(AcMove::LeftMultiply { i: *i, j: f.relator, sign: f.sign });
                push_conjugate(&mut chunk, *i, f.conjugator.clone());
                for step in chunk {
                    let expanded = expand_move(&cur, &step, ExpansionLevel::Macros)?;
                    for e in expanded {
                        cur = apply_move(&cur, &e)?;
                        out.push(e);
                    }
                }
            }
        }
        _ => out.push(m.clone()),
    }
    debug_assert_eq!(super::replay(p, &out).ok().as_ref(), Some(&after));
    Ok(out)
}

/// The certificate with every macro step expanded; start and end are kept.
pub fn expand_certificate(cert: &Certificate, level: ExpansionLevel) -> Result<Certificate, (usize, IllegalMove)> {
    let mut p = cert.start.clone();
    let mut steps = Vec::with_capacity(cert.steps.len());
    for (k, m) in cert.steps.iter().enumerate() {
        let expanded = expand_move(&p, m, level).map_err(|e| (k, e))?;
        p = apply_move(&p, m).map_err(|e| (k, e))?;
        steps.extend(expanded);
    }
    Ok(Certificate { start: cert.start.clone(), steps, end: cert.end.clone() })
}

#[cfg(test)]
mod tests {
    use super::super::{replay, Sign, WitnessFactor};
    use super::*;
    use crate::word::w;

    fn check(p: &str, m: AcMove) {
        let p: Presentation = p.parse().unwrap();
        let direct = apply_move(&p, &m).unwrap();
        let steps = expand_move(&p, &m, ExpansionLevel::MacrosAndSubstitutions).unwrap();
        assert!(steps.iter().all(|s| !s.is_macro()), "{steps:?}");
        assert_eq!(replay(&p, &steps).unwrap(), direct);
    }

    #[test]
    fn macros_expand_exactly() {
        check("<x,y | xxYYY, xyxYXY>", AcMove::Swap { i: 0, j: 1 });
        check("<x,y | xxYYY, xyxYXY>", AcMove::LeftMultiply { i: 1, j: 0, sign: Sign::Minus });
        check("<x,y,z | xyz, 1, zz>", AcMove::Swap { i: 2, j: 1 });
        let sub = AcMove::Substitute {
            i: 1,
            new: w("yyxyXX"),
            witness: vec![WitnessFactor { relator: 0, sign: Sign::Minus, conjugator: Word::empty() }],
        };
        check("<x,y | XyxYY, XyxxyXX>", sub);
        let p: Presentation = "<x,y,z | xyX, yyx, zY>".parse().unwrap();
        let witness = vec![
            WitnessFactor { relator: 0, sign: Sign::Plus, conjugator: w("zx") },
            WitnessFactor { relator: 2, sign: Sign::Minus, conjugator: w("Y") },
        ];
        let new = witness_product(&p, 1, &witness).unwrap();
        check("<x,y,z | xyX, yyx, zY>", AcMove::Substitute { i: 1, new, witness });
    }
}
