//! Known families of balanced presentations of the trivial group.

use std::fmt;
use std::str::FromStr;

use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `x⁻¹y²x = y³, y⁻¹x²y = x³`
    Example1,
    /// `y⁻¹xy = x², z⁻¹yz = y², x⁻¹zx = z²`
    Example2,
    /// `x⁴y³ = y²x², x⁶y⁴ = y³x³`
    Example3,
    /// `xⁿ = yⁿ⁺¹, xyx = yxy` for `n ≥ 2`
    Ak,
    /// `x⁻¹yⁿx = yⁿ⁺¹, x = w` for `n ≥ 1` and `w` with exponent sum 0 on `x`
    Ms,
    /// `x = [xᵐ, yⁿ], y = [xᵖ, y^q]`
    Gordon,
    Prop11a,
    Prop11b,
    Prop11c,
    Prop11d,
    /// `ak` at `n = 3`
    Ak3,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Example1,
        Family::Example2,
        Family::Example3,
        Family::Ak,
        Family::Ms,
        Family::Gordon,
        Family::Prop11a,
        Family::Prop11b,
        Family::Prop11c,
        Family::Prop11d,
        Family::Ak3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Example1 => "example1",
            Family::Example2 => "example2",
            Family::Example3 => "example3",
            Family::Ak => "ak",
            Family::Ms => "ms",
            Family::Gordon => "gordon",
            Family::Prop11a => "prop11a",
            Family::Prop11b => "prop11b",
            Family::Prop11c => "prop11c",
            Family::Prop11d => "prop11d",
            Family::Ak3 => "ak3",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Family::Ak | Family::Ms => 1,
            Family::Gordon => 4,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SeriesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| SeriesError::UnknownFamily(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    pub family: Family,
    pub params: Vec<i64>,
    /// The word `w` of the `ms` family.
    pub word: Option<Word>,
}

impl SeriesSpec {
    pub fn new(family: Family, params: Vec<i64>) -> Self {
        SeriesSpec { family, params, word: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} takes {expected} integer parameter(s), got {got}")]
    Arity { family: Family, expected: usize, got: usize },
    #[error("{0}")]
    Constraint(String),
}

fn x(n: i64) -> Word {
    Word::generator(1).pow(n)
}

fn y(n: i64) -> Word {
    Word::generator(2).pow(n)
}

fn z(n: i64) -> Word {
    Word::generator(3).pow(n)
}

fn cat(parts: &[&Word]) -> Word {
    parts.iter().fold(Word::empty(), |acc, p| acc.multiply(p))
}

/// `u = v` as the relator `u·v⁻¹`.
fn eq(u: &Word, v: &Word) -> Word {
    u.multiply(&v.inverse())
}

fn commutator(a: &Word, b: &Word) -> Word {
    cat(&[a, b, &a.inverse(), &b.inverse()])
}

fn ak(n: i64) -> Presentation {
    let braid = eq(&cat(&[&x(1), &y(1), &x(1)]), &cat(&[&y(1), &x(1), &y(1)]));
    Presentation::new(2, vec![eq(&x(n), &y(n + 1)), braid]).expect("rank 2")
}

pub fn gen_series(spec: &SeriesSpec) -> Result<Presentation, SeriesError> {
    let family = spec.family;
    if spec.params.len() != family.arity() {
        return Err(SeriesError::Arity { family, expected: family.arity(), got: spec.params.len() });
    }
    if spec.word.is_some() && family != Family::Ms {
        return Err(SeriesError::Constraint(format!("{family} takes no word")));
    }
    let p = &spec.params;
    let two = |a: Word, b: Word| Presentation::new(2, vec![a, b]).expect("rank 2");
    Ok(match family {
        Family::Example1 => two(
            eq(&cat(&[&x(-1), &y(2), &x(1)]), &y(3)),
            eq(&cat(&[&y(-1), &x(2), &y(1)]), &x(3)),
        ),
        Family::Example2 => Presentation::new(
            3,
            vec![
                eq(&cat(&[&y(-1), &x(1), &y(1)]), &x(2)),
                eq(&cat(&[&z(-1), &y(1), &z(1)]), &y(2)),
                eq(&cat(&[&x(-1), &z(1), &x(1)]), &z(2)),
            ],
        )
        .expect("rank 3"),
        Family::Example3 => two(
            eq(&cat(&[&x(4), &y(3)]), &cat(&[&y(2), &x(2)])),
            eq(&cat(&[&x(6), &y(4)]), &cat(&[&y(3), &x(3)])),
        ),
        Family::Ak => {
            if p[0] < 2 {
                return Err(SeriesError::Constraint(format!("ak needs n >= 2, got {}", p[0])));
            }
            ak(p[0])
        }
        Family::Ak3 | Family::Prop11a => ak(if family == Family::Ak3 { 3 } else { 2 }),
        Family::Ms => {
            let n = p[0];
            if n < 1 {
                return Err(SeriesError::Constraint(format!("ms needs n >= 1, got {n}")));
            }
            let w = spec.word.as_ref().ok_or_else(|| SeriesError::Constraint("ms needs a word w".into()))?;
            if w.max_generator() > 2 {
                return Err(SeriesError::Constraint("w must be a word in x and y".into()));
            }
            let sum = w.exponent_sums(2)[0];
            if sum != 0 {
                return Err(SeriesError::Constraint(format!("w must have exponent sum 0 on x, got {sum}")));
            }
            two(eq(&cat(&[&x(-1), &y(n), &x(1)]), &y(n + 1)), eq(&x(1), w))
        }
        Family::Gordon => {
            let (m, n, pp, q) = (p[0], p[1], p[2], p[3]);
            two(
                x(-1).multiply(&commutator(&x(m), &y(n))),
                y(-1).multiply(&commutator(&x(pp), &y(q))),
            )
        }
        Family::Prop11b => two(
            eq(&cat(&[&x(-1), &y(1), &x(1)]), &y(2)),
            eq(&x(1), &cat(&[&y(1), &x(2), &y(1), &x(-2)])),
        ),
        Family::Prop11c => two(
            eq(&cat(&[&x(-1), &y(2), &x(1)]), &y(3)),
            eq(&x(2), &cat(&[&y(1), &x(1), &y(-1)])),
        ),
        Family::Prop11d => two(
            eq(&cat(&[&x(-1), &y(2), &x(1)]), &y(3)),
            eq(&x(2), &cat(&[&y(1), &x(1), &y(1)])),
        ),
    })
}
