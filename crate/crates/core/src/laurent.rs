//! Integer Laurent polynomials in `k` commuting variables, 2×2 matrices over
//! them, and a heuristic factorizer into elementary and diagonal matrices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// Graded-lexicographic order on exponent vectors.
fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    k: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(k: usize) -> Self {
        LaurentPoly { k, terms: BTreeMap::new() }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(k, vec![0; k], BigInt::one())
    }

    pub fn constant(k: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(k, vec![0; k], c.into())
    }

    /// `x_i` for `i` in `1..=k`.
    pub fn var(k: usize, i: usize) -> Self {
        Self::var_pow(k, i, 1)
    }

    pub fn var_pow(k: usize, i: usize, e: i32) -> Self {
        assert!(i >= 1 && i <= k, "variable x{i} outside 1..{k}");
        let mut exps = vec![0; k];
        exps[i - 1] = e;
        Self::monomial(k, exps, BigInt::one())
    }

    pub fn monomial(k: usize, exps: Vec<i32>, c: BigInt) -> Self {
        assert_eq!(exps.len(), k);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { k, terms }
    }

    pub fn vars(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.k]).is_some_and(|c| c.is_one())
    }

    /// `±` a single monomial.
    pub fn is_trivial_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Inverse of a trivial unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_trivial_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        Some(Self::monomial(self.k, e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Largest minus smallest total degree over the support.
    pub fn degree_span(&self) -> i64 {
        let degs = self.terms.keys().map(|e| e.iter().map(|&x| x as i64).sum::<i64>());
        match (degs.clone().max(), degs.min()) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => 0,
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.k, other.k, "variable count mismatch");
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    /// Rewrites with `k` variables; fails if a dropped variable is used.
    pub fn with_vars(&self, k: usize) -> Option<Self> {
        let mut out = Self::zero(k);
        for (e, c) in &self.terms {
            if e.iter().skip(k).any(|&x| x != 0) {
                return None;
            }
            let mut f = e[..e.len().min(k)].to_vec();
            f.resize(k, 0);
            out.terms.insert(f, c.clone());
        }
        Some(out)
    }

    /// Parses with a fixed variable count.
    pub fn parse_with(k: usize, s: &str) -> Result<Self, ParseError> {
        let p: LaurentPoly = s.parse()?;
        p.with_vars(k).ok_or_else(|| ParseError::new(0, format!("polynomial uses more than {k} variables")))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { k: self.k, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.check(rhs);
        let mut acc: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { k: self.k, terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in decreasing graded-lexicographic order, e.g. `x1^2 - 2*x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<i32>, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    /// Sums of `c*x1^e1*x2^e2` terms; the variable count is the largest index
    /// used (at least 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(ParseError::new(0, "empty polynomial"));
        }
        // split into signed terms at + or - not preceded by ^
        let mut raw: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, &c) in chars.iter().enumerate() {
            let separator = (c == '+' || c == '-') && i > 0 && chars[i - 1] != '^' && chars[i - 1] != '*';
            if separator {
                raw.push((neg, std::mem::take(&mut cur)));
                neg = c == '-';
            } else if (c == '+' || c == '-') && i == 0 {
                neg = c == '-';
            } else {
                cur.push(c);
            }
        }
        raw.push((neg, cur));
        let mut parsed: Vec<(Vec<(usize, i32)>, BigInt)> = Vec::new();
        let mut k = 1;
        for (neg, body) in raw {
            if body.is_empty() {
                return Err(ParseError::new(0, "empty term"));
            }
            let mut coeff = BigInt::one();
            let mut powers = Vec::new();
            for factor in body.split('*') {
                if let Some(rest) = factor.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e.parse::<i32>().map_err(|_| ParseError::new(0, format!("bad exponent in {factor:?}")))?),
                        None => (rest, 1),
                    };
                    let idx: usize = idx
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| ParseError::new(0, format!("bad variable {factor:?}")))?;
                    k = k.max(idx);
                    powers.push((idx, exp));
                } else {
                    let c: BigInt = factor.parse().map_err(|_| ParseError::new(0, format!("bad factor {factor:?}")))?;
                    coeff *= c;
                }
            }
            parsed.push((powers, if neg { -coeff } else { coeff }));
        }
        let mut out = LaurentPoly::zero(k);
        for (powers, c) in parsed {
            let mut e = vec![0; k];
            for (i, x) in powers {
                e[i - 1] += x;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// `[[a11, a12], [a21, a22]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub entries: [[LaurentPoly; 2]; 2],
}

impl Mat2 {
    pub fn new(a11: LaurentPoly, a12: LaurentPoly, a21: LaurentPoly, a22: LaurentPoly) -> Self {
        let k = a11.vars();
        for p in [&a12, &a21, &a22] {
            assert_eq!(p.vars(), k, "variable count mismatch");
        }
        Mat2 { entries: [[a11, a12], [a21, a22]] }
    }

    pub fn vars(&self) -> usize {
        self.entries[0][0].vars()
    }

    pub fn identity(k: usize) -> Self {
        Self::diagonal(LaurentPoly::one(k), LaurentPoly::one(k))
    }

    pub fn diagonal(a: LaurentPoly, d: LaurentPoly) -> Self {
        let k = a.vars();
        Self::new(a, LaurentPoly::zero(k), LaurentPoly::zero(k), d)
    }

    /// Identity plus `p` in position `(row, col)`, `row != col`, 0-based.
    pub fn elementary(k: usize, row: usize, col: usize, p: LaurentPoly) -> Self {
        assert!(row < 2 && col < 2 && row != col);
        let mut m = Self::identity(k);
        m.entries[row][col] = p;
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let e = |i: usize, j: usize| &(&self.entries[i][0] * &rhs.entries[0][j]) + &(&self.entries[i][1] * &rhs.entries[1][j]);
        Mat2 { entries: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[0][1].is_zero() && self.entries[1][0].is_zero()
    }

    fn size(&self) -> (usize, i64, BigInt) {
        let all = self.entries.iter().flatten();
        (
            all.clone().map(LaurentPoly::term_count).sum(),
            all.clone().map(LaurentPoly::degree_span).max().unwrap_or(0),
            all.flat_map(|p| p.terms.values()).map(|c| c.abs()).sum(),
        )
    }
}

impl fmt::Display for Mat2 {
    /// One entry per line in the order a11, a12, a21, a22.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.entries.iter().flatten() {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl FromStr for Mat2 {
    type Err = ParseError;

    /// Four polynomials, one per line; `#` starts a comment.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut polys = Vec::new();
        for (no, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            polys.push(line.parse::<LaurentPoly>().map_err(|e| e.at_line(no + 1))?);
        }
        if polys.len() != 4 {
            return Err(ParseError::new(0, format!("expected 4 polynomials, found {}", polys.len())));
        }
        let k = polys.iter().map(LaurentPoly::vars).max().unwrap_or(1);
        let mut it = polys.into_iter().map(|p| p.with_vars(k).expect("widening"));
        let mut next = || it.next().expect("four entries");
        Ok(Mat2::new(next(), next(), next(), next()))
    }
}

pub fn det2(m: &Mat2) -> LaurentPoly {
    let [[a, b], [c, d]] = &m.entries;
    &(a * d) - &(b * c)
}

pub fn is_trivial_unit(p: &LaurentPoly) -> bool {
    p.is_trivial_unit()
}

/// The Evans matrix over `Z[x1^±1, x2^±1]`; it has determinant 1.
pub fn evans_matrix() -> Mat2 {
    let k = 2;
    let x1m1 = &LaurentPoly::var(k, 1) - &LaurentPoly::one(k);
    let x2inv = LaurentPoly::var_pow(k, 2, -1);
    let two_t = &(&LaurentPoly::constant(k, 2) * &x1m1) * &x2inv;
    Mat2::new(
        &LaurentPoly::one(k) - &two_t,
        &LaurentPoly::constant(k, 4) * &x2inv,
        -(&(&x1m1 * &x1m1) * &x2inv),
        &LaurentPoly::one(k) + &two_t,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ge2Factor {
    /// Identity plus `p` at `(row, col)`, 0-based.
    Elementary { row: usize, col: usize, p: LaurentPoly },
    Diagonal(LaurentPoly, LaurentPoly),
}

impl Ge2Factor {
    pub fn matrix(&self, k: usize) -> Mat2 {
        match self {
            Ge2Factor::Elementary { row, col, p } => Mat2::elementary(k, *row, *col, p.clone()),
            Ge2Factor::Diagonal(a, d) => Mat2::diagonal(a.clone(), d.clone()),
        }
    }
}

impl fmt::Display for Ge2Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ge2Factor::Elementary { row, col, p } => write!(f, "E{}{}({p})", row + 1, col + 1),
            Ge2Factor::Diagonal(a, d) => write!(f, "diag({a}, {d})"),
        }
    }
}

pub const DEFAULT_GE2_BUDGET: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ge2Outcome {
    /// Factors whose product, left to right, is the input.
    Factorization(Vec<Ge2Factor>),
    GaveUp { attempts: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Ge2Error {
    #[error("determinant {0} is not a trivial unit; the matrix is not invertible")]
    NotInvertible(String),
}

pub fn multiply_factors(k: usize, factors: &[Ge2Factor]) -> Mat2 {
    factors.iter().fold(Mat2::identity(k), |acc, f| acc.mul(&f.matrix(k)))
}

/// `row_i += m·row_j` (left) or `col_j += col_i·m` (right).
#[derive(Clone, Debug)]
struct Op {
    left: bool,
    i: usize,
    j: usize,
    m: LaurentPoly,
}

impl Op {
    fn apply(&self, a: &Mat2) -> Mat2 {
        let k = a.vars();
        if self.left {
            Mat2::elementary(k, self.i, self.j, self.m.clone()).mul(a)
        } else {
            a.mul(&Mat2::elementary(k, self.i, self.j, self.m.clone()))
        }
    }
}

/// Term pairs worth cancelling: extreme terms under graded-lex and under
/// lex with the variables reversed.
fn extremes(p: &LaurentPoly) -> Vec<(&[i32], &BigInt)> {
    let terms: Vec<(&[i32], &BigInt)> = p.terms().collect();
    if terms.len() <= 2 {
        return terms;
    }
    let rev = |a: &[i32], b: &[i32]| a.iter().rev().cmp(b.iter().rev());
    let mut out = Vec::with_capacity(4);
    for pick in [
        terms.iter().max_by(|a, b| grlex(a.0, b.0)),
        terms.iter().min_by(|a, b| grlex(a.0, b.0)),
        terms.iter().max_by(|a, b| rev(a.0, b.0)),
        terms.iter().min_by(|a, b| rev(a.0, b.0)),
    ]
    .into_iter()
    .flatten()
    {
        if !out.iter().any(|t: &(&[i32], &BigInt)| t.0 == pick.0) {
            out.push(*pick);
        }
    }
    out
}

/// Row operations cancelling an extreme term of an entry against an extreme
/// term in the same column, column operations likewise along rows, and exact
/// clearing against a trivial-unit pivot.
fn candidate_ops(a: &Mat2) -> Vec<Op> {
    let k = a.vars();
    let mut ops = Vec::new();
    let mut cancel = |target: &LaurentPoly, pivot: &LaurentPoly, left: bool, i: usize, j: usize| {
        if target.is_zero() || pivot.is_zero() {
            return;
        }
        if let Some(inv) = pivot.unit_inverse() {
            ops.push(Op { left, i, j, m: -(target * &inv) });
        }
        for (et, ct) in extremes(target) {
            for (ep, cp) in extremes(pivot) {
                // nearest integer quotient, so coefficients shrink Euclid-style
                let (q, r) = ct.div_mod_floor(cp);
                let q = if (&r + &r).abs() > cp.abs() { q + 1 } else { q };
                if q.is_zero() {
                    continue;
                }
                let e: Vec<i32> = et.iter().zip(ep).map(|(x, y)| x - y).collect();
                ops.push(Op { left, i, j, m: LaurentPoly::monomial(k, e, -q) });
            }
        }
    };
    for (i, j) in [(0, 1), (1, 0)] {
        for col in 0..2 {
            cancel(a.get(i, col), a.get(j, col), true, i, j);
        }
        for row in 0..2 {
            // col_j += col_i · m cancels against entries of column i
            cancel(a.get(row, j), a.get(row, i), false, i, j);
        }
    }
    ops
}

/// Expresses a diagonal or anti-diagonal matrix of trivial units as factors.
fn finish(a: &Mat2) -> Option<Vec<Ge2Factor>> {
    let units = |p: &LaurentPoly| p.is_trivial_unit();
    let k = a.vars();
    let [[a11, a12], [a21, a22]] = &a.entries;
    if a.is_diagonal() && units(a11) && units(a22) {
        return Some(vec![Ge2Factor::Diagonal(a11.clone(), a22.clone())]);
    }
    if a11.is_zero() && a22.is_zero() && units(a12) && units(a21) {
        // [[0,1],[-1,0]] = E12(1)·E21(-1)·E12(1), then diag(-a21, a12)
        let one = LaurentPoly::one(k);
        return Some(vec![
            Ge2Factor::Elementary { row: 0, col: 1, p: one.clone() },
            Ge2Factor::Elementary { row: 1, col: 0, p: -&one },
            Ge2Factor::Elementary { row: 0, col: 1, p: one },
            Ge2Factor::Diagonal(-a21, a12.clone()),
        ]);
    }
    None
}

/// Merges neighbouring elementary factors at the same position and drops
/// identity factors.
fn simplify(k: usize, factors: Vec<Ge2Factor>) -> Vec<Ge2Factor> {
    let mut out: Vec<Ge2Factor> = Vec::new();
    for f in factors {
        match (out.last_mut(), &f) {
            (Some(Ge2Factor::Elementary { row, col, p }), Ge2Factor::Elementary { row: r, col: c, p: q })
                if row == r && col == c =>
            {
                *p = &*p + q;
                if p.is_zero() {
                    out.pop();
                }
            }
            (_, Ge2Factor::Diagonal(a, d)) if a.is_one() && d.is_one() => {}
            _ => out.push(f),
        }
    }
    if out.is_empty() {
        out.push(Ge2Factor::Diagonal(LaurentPoly::one(k), LaurentPoly::one(k)));
    }
    out
}

pub const GE2_BEAM_WIDTH: usize = 16;

fn fingerprint(m: &Mat2) -> u64 {
    use std::hash::{Hash, Hasher};
    let mut h = std::collections::hash_map::DefaultHasher::new();
    m.hash(&mut h);
    h.finish()
}

/// Beam search on (total support size, largest degree span) using
/// term-cancelling row and column operations. `budget` bounds the number of
/// matrices expanded.
pub fn ge2_reduce(m: &Mat2, budget: usize) -> Result<Ge2Outcome, Ge2Error> {
    let det = det2(m);
    if !det.is_trivial_unit() {
        return Err(Ge2Error::NotInvertible(det.to_string()));
    }
    let k = m.vars();
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(fingerprint(m));
    let mut beam: Vec<(Mat2, Vec<Op>)> = vec![(m.clone(), Vec::new())];
    let mut attempts = 0;
    while !beam.is_empty() {
        for (matrix, ops) in &beam {
            if let Some(tail) = finish(matrix) {
                return Ok(Ge2Outcome::Factorization(assemble(k, m, ops, tail)));
            }
        }
        let mut next: Vec<(Mat2, Vec<Op>)> = Vec::new();
        for (matrix, ops) in &beam {
            if attempts == budget {
                return Ok(Ge2Outcome::GaveUp { attempts });
            }
            attempts += 1;
            for op in candidate_ops(matrix) {
                let child = op.apply(matrix);
                if seen.insert(fingerprint(&child)) {
                    let mut path = ops.clone();
                    path.push(op);
                    next.push((child, path));
                }
            }
        }
        next.sort_by_cached_key(|(matrix, _)| matrix.size());
        next.truncate(GE2_BEAM_WIDTH);
        beam = next;
    }
    Ok(Ge2Outcome::GaveUp { attempts })
}

/// `A = L_n ⋯ L_1 · M · R_1 ⋯ R_n`, so `M = L_1⁻¹ ⋯ L_n⁻¹ · A · R_n⁻¹ ⋯ R_1⁻¹`.
fn assemble(k: usize, m: &Mat2, ops: &[Op], tail: Vec<Ge2Factor>) -> Vec<Ge2Factor> {
    let inverse = |op: &Op| Ge2Factor::Elementary { row: op.i, col: op.j, p: -&op.m };
    let mut factors: Vec<Ge2Factor> = ops.iter().filter(|op| op.left).map(inverse).collect();
    factors.extend(tail);
    factors.extend(ops.iter().rev().filter(|op| !op.left).map(inverse));
    let factors = simplify(k, factors);
    assert_eq!(&multiply_factors(k, &factors), m, "factorization must reproduce the input");
    factors
}
