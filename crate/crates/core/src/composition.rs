//! The semigroup of balanced presentations under substitution.
//!
//! `P ∘ Q` has relators `r_i(s_1, ..., s_n)`, the relators of `P` with each
//! generator `x_j` replaced by the relator `s_j` of `Q`.

use crate::moves::{
    expand_certificate, verify_certificate, AcMove, Certificate, ExpansionLevel, IllegalMove, VerifyFailure,
};
use crate::presentation::Presentation;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CompositionError {
    #[error("{which} presentation is not balanced ({gens} generators, {relators} relators)")]
    Unbalanced { which: &'static str, gens: usize, relators: usize },
    #[error("generator counts differ: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("power must be at least 1")]
    ZeroPower,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("certificate does not verify: {0}")]
    Unverified(VerifyFailure),
    #[error("step {} ({keyword}) cannot be transported; expand substitutions first", index + 1)]
    UnsupportedStep { index: usize, keyword: &'static str },
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

fn check_balanced(p: &Presentation, which: &'static str) -> Result<(), CompositionError> {
    if !p.is_balanced() {
        return Err(CompositionError::Unbalanced { which, gens: p.gen_count(), relators: p.relator_count() });
    }
    Ok(())
}

pub fn compose(p: &Presentation, q: &Presentation) -> Result<Presentation, CompositionError> {
    check_balanced(p, "left")?;
    check_balanced(q, "right")?;
    if p.gen_count() != q.gen_count() {
        return Err(CompositionError::RankMismatch { left: p.gen_count(), right: q.gen_count() });
    }
    let rels = p.relators().iter().map(|r| r.substitute(q.relators()).expect("ranks checked")).collect();
    Ok(Presentation::from_parts_unchecked(p.gen_count(), rels))
}

/// `P ∘ P ∘ ... ∘ P` with `k` factors.
pub fn compose_pow(p: &Presentation, k: usize) -> Result<Presentation, CompositionError> {
    if k == 0 {
        return Err(CompositionError::ZeroPower);
    }
    let mut acc = p.clone();
    for _ in 1..k {
        acc = compose(&acc, p)?;
    }
    Ok(acc)
}

/// Carries a chain starting at `P` over to one starting at `P ∘ Q`: every
/// conjugator `w` becomes `w(S)`, all other steps act on the same relator
/// slots. A chain from `P` to the standard presentation becomes a chain from
/// `P ∘ Q` to `Q` up to key.
pub fn transport_certificate(cert: &Certificate, q: &Presentation) -> Result<Certificate, TransportError> {
    let report = verify_certificate(cert);
    if let Some(f) = report.failure {
        return Err(TransportError::Unverified(f));
    }
    let start = compose(&cert.start, q)?;
    let images = q.relators();
    let mut steps = Vec::with_capacity(cert.steps.len());
    for (index, m) in cert.steps.iter().enumerate() {
        let moved = match m {
            AcMove::Conjugate { i, by } => {
                AcMove::Conjugate { i: *i, by: by.substitute(images).expect("ranks checked") }
            }
            AcMove::RightMultiply { .. } | AcMove::LeftMultiply { .. } | AcMove::Invert { .. } | AcMove::Swap { .. } => {
                m.clone()
            }
            other => return Err(TransportError::UnsupportedStep { index, keyword: other.keyword() }),
        };
        steps.push(moved);
    }
    let end = crate::moves::replay(&start, &steps).map_err(|(index, reason)| {
        TransportError::Unverified(VerifyFailure::IllegalStep { index, step: steps[index].clone(), reason })
    })?;
    Ok(Certificate { start, steps, end })
}

/// Rewrites every `SUB` step (and the `L`/`SWAP` macros) as primitive moves.
pub fn expand_substitutions(cert: &Certificate) -> Result<Certificate, (usize, IllegalMove)> {
    expand_certificate(cert, ExpansionLevel::MacrosAndSubstitutions)
}
