//! Evidence about the presented group: abelianization and coset enumeration.

mod coset;
mod snf;

pub use coset::{enumerate_cosets, todd_coxeter, CosetStatus, CosetTable, ToddCoxeterOutcome};
pub use snf::{smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_traits::One;

use crate::presentation::Presentation;

/// Default coset budget for Todd-Coxeter runs.
pub const DEFAULT_MAX_COSETS: usize = 100_000;

/// Elementary divisors of the abelianization matrix.
pub fn abelianization_snf(p: &Presentation) -> SnfResult<BigInt> {
    smith_normal_form(&p.abelianization_matrix::<BigInt>())
}

/// Whether the abelianization `Z^n / (relator rows)` is trivial.
pub fn is_perfect(p: &Presentation) -> bool {
    let snf = abelianization_snf(p);
    snf.diagonal.len() == p.gen_count() && snf.diagonal.iter().all(|d| d.is_one())
}

/// Human-readable abelianization, e.g. `Z x Z/3` or `trivial`.
pub fn describe_abelianization(p: &Presentation) -> String {
    let snf = abelianization_snf(p);
    let mut parts: Vec<String> = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_one())
        .map(|d| if d.sign() == num_bigint::Sign::NoSign { "Z".to_string() } else { format!("Z/{d}") })
        .collect();
    for _ in snf.diagonal.len()..p.gen_count() {
        parts.push("Z".to_string());
    }
    if parts.is_empty() {
        "trivial".to_string()
    } else {
        parts.join(" x ")
    }
}
