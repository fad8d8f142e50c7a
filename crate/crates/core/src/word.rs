//! Free-group words.
//!
//! A [`Word`] is always freely reduced. Letters are stored as signed 16-bit
//! integers: `+i` is the generator `x_i`, `-i` its inverse.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::ParseError;

/// A generator `x_i` or its inverse `x_i^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i16);

impl Letter {
    /// Panics if `generator` is zero or does not fit the compact encoding.
    pub fn new(generator: usize, positive: bool) -> Self {
        assert!(generator >= 1, "generator indices are 1-based");
        let g = i16::try_from(generator).expect("generator index too large");
        Letter(if positive { g } else { -g })
    }

    pub fn from_signed(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        i16::try_from(value).ok().map(Letter)
    }

    #[inline]
    pub fn generator(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    #[inline]
    pub fn sign(self) -> i64 {
        self.0.signum() as i64
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    #[inline]
    pub fn raw(self) -> i16 {
        self.0
    }

    /// Position in the fixed order `x1 < X1 < x2 < X2 < ...`.
    #[inline]
    pub fn rank(self) -> u32 {
        2 * (self.generator() as u32 - 1) + u32::from(self.0 < 0)
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Output syntax for words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WordFormat {
    /// One character per letter, lowercase for a generator and uppercase for
    /// its inverse, whenever the alphabet covers every generator.
    #[default]
    Compact,
    /// Space-separated signed integers.
    Numeric,
}

/// Single-character generator names used by the compact syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<char>,
}

impl Alphabet {
    /// `x, y, z` for rank at most 3, `a..z` up to rank 26, none beyond.
    pub fn default_for(rank: usize) -> Option<Self> {
        if rank <= 3 {
            Some(Alphabet { names: "xyz".chars().take(rank.max(1)).collect() })
        } else if rank <= 26 {
            Some(Alphabet { names: ('a'..='z').take(rank).collect() })
        } else {
            None
        }
    }

    /// Distinct lowercase ASCII letters.
    pub fn new(names: Vec<char>) -> Option<Self> {
        let mut seen = std::collections::HashSet::new();
        let ok = names.iter().all(|c| c.is_ascii_lowercase() && seen.insert(*c));
        ok.then_some(Alphabet { names })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[char] {
        &self.names
    }

    fn letter_of(&self, c: char) -> Option<Letter> {
        let lower = c.to_ascii_lowercase();
        let i = self.names.iter().position(|&n| n == lower)?;
        Some(Letter::new(i + 1, c.is_ascii_lowercase()))
    }

    fn char_of(&self, l: Letter) -> Option<char> {
        let c = *self.names.get(l.generator() - 1)?;
        Some(if l.is_positive() { c } else { c.to_ascii_uppercase() })
    }

    /// Picks the alphabet a standalone compact word is written in: `xyz` if
    /// only those letters occur, otherwise `a..z`.
    fn guess(text: &str) -> Alphabet {
        if text.chars().filter(|c| c.is_ascii_alphabetic()).all(|c| matches!(c.to_ascii_lowercase(), 'x' | 'y' | 'z')) {
            Alphabet { names: vec!['x', 'y', 'z'] }
        } else {
            Alphabet { names: ('a'..='z').collect() }
        }
    }
}

/// A freely reduced word in the free group on `x_1, x_2, ...`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// The generator `x_i` as a one-letter word.
    pub fn generator(i: usize) -> Self {
        Word(vec![Letter::new(i, true)])
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn normalize<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Builds a word from signed generator indices. Zero entries are rejected.
    pub fn from_signed(values: &[i64]) -> Option<Self> {
        let letters: Option<Vec<Letter>> = values.iter().map(|&v| Letter::from_signed(v)).collect();
        letters.map(Word::normalize)
    }

    /// Caller guarantees the sequence is already freely reduced.
    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != p[1].inverse()));
        Word(letters)
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Largest generator index occurring in the word (0 for the empty word).
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let a = &self.0;
        let b = &other.0;
        let mut k = 0;
        while k < a.len() && k < b.len() && a[a.len() - 1 - k] == b[k].inverse() {
            k += 1;
        }
        let mut out = Vec::with_capacity(a.len() + b.len() - 2 * k);
        out.extend_from_slice(&a[..a.len() - k]);
        out.extend_from_slice(&b[k..]);
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.multiply(self).multiply(&g.inverse())
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with a
    /// cyclically reduced core.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.0[k] == self.0[n - 1 - k].inverse() {
            k += 1;
        }
        (Word(self.0[..k].to_vec()), Word(self.0[k..n - k].to_vec()))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.0.len() < 2 || self.0[0] != self.0[self.0.len() - 1].inverse()
    }

    /// Cyclic rotation starting at position `k`; the word must be cyclically
    /// reduced for the result to stay reduced.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut out = Vec::with_capacity(self.0.len());
        out.extend_from_slice(&self.0[k..]);
        out.extend_from_slice(&self.0[..k]);
        Word(out)
    }

    /// Image under the endomorphism `x_j ↦ images[j-1]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word, RankMismatch> {
        if self.max_generator() > images.len() {
            return Err(RankMismatch { needed: self.max_generator(), given: images.len() });
        }
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator() - 1];
            if l.is_positive() {
                for &m in &img.0 {
                    push_reduced(&mut out, m);
                }
            } else {
                for &m in img.0.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            }
        }
        Ok(Word(out))
    }

    /// Signed letter counts per generator, `rank` entries.
    ///
    /// Panics if a letter index exceeds `rank`.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0i64; rank];
        for l in &self.0 {
            sums[l.generator() - 1] += l.sign();
        }
        sums
    }

    pub fn occurrences(&self, generator: usize) -> usize {
        self.0.iter().filter(|l| l.generator() == generator).count()
    }

    /// Shortlex comparison under the letter order `x1 < X1 < x2 < ...`.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// Renders in the default alphabet for the word's own rank.
    pub fn display(&self, format: WordFormat) -> WordDisplay<'_> {
        WordDisplay { word: self, format, alphabet: Alphabet::default_for(self.max_generator()) }
    }

    /// Renders against a presentation's alphabet; falls back to numeric
    /// syntax when the alphabet does not cover the word.
    pub fn display_in(&self, format: WordFormat, alphabet: Option<&Alphabet>) -> WordDisplay<'_> {
        WordDisplay { word: self, format, alphabet: alphabet.cloned() }
    }

    /// Parses compact syntax against a given alphabet, or numeric syntax.
    pub fn parse_in(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
        parse_word(text, Some(alphabet))
    }

    /// Whether the word is a member of some free basis of `F_2`.
    ///
    /// Rejects words whose abelianized image has gcd other than 1, then runs
    /// greedy Whitehead descent on the cyclic word.
    pub fn is_primitive_rank2(&self) -> bool {
        if self.max_generator() > 2 {
            return false;
        }
        let sums = self.exponent_sums(2);
        if sums[0].gcd(&sums[1]) != 1 {
            return false;
        }
        let mut current = self.cyclic_reduce().1;
        let autos = whitehead_rank2();
        'descent: while current.len() > 1 {
            for images in &autos {
                let next = current
                    .substitute(images)
                    .expect("rank-2 images")
                    .cyclic_reduce()
                    .1;
                if next.len() < current.len() {
                    current = next;
                    continue 'descent;
                }
            }
            return false;
        }
        current.len() == 1
    }
}

/// Shortlex order: length first, then letters under `x1 < X1 < x2 < ...`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.shortlex_cmp(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[inline]
fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// The twelve non-permutation Whitehead automorphisms of `F_2`: one generator
/// is fixed and the other is sent to `ba`, `a⁻¹b` or `a⁻¹ba`.
fn whitehead_rank2() -> Vec<[Word; 2]> {
    let mut out = Vec::with_capacity(12);
    for fixed in 1..=2usize {
        let moved = 3 - fixed;
        for positive in [true, false] {
            let a = Word::letter(Letter::new(fixed, positive));
            let b = Word::generator(moved);
            for img in [b.multiply(&a), a.inverse().multiply(&b), b.conjugate_by(&a.inverse())] {
                let mut images = [Word::generator(1), Word::generator(2)];
                images[moved - 1] = img;
                out.push(images);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("substitution needs {needed} images, got {given}")]
pub struct RankMismatch {
    pub needed: usize,
    pub given: usize,
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    format: WordFormat,
    alphabet: Option<Alphabet>,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word;
        if w.is_empty() {
            return f.write_str("1");
        }
        if self.format == WordFormat::Compact {
            if let Some(alpha) = &self.alphabet {
                if w.max_generator() <= alpha.rank() {
                    for &l in &w.0 {
                        write!(f, "{}", alpha.char_of(l).expect("covered"))?;
                    }
                    return Ok(());
                }
            }
        }
        if w.len() == 1 && w.0[0].raw() == 1 {
            // a bare "1" is the empty word
            return f.write_str("+1");
        }
        for (i, l) in w.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l.raw())?;
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(WordFormat::Compact).fmt(f)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.display(WordFormat::Compact))
    }
}

fn parse_word(text: &str, alphabet: Option<&Alphabet>) -> Result<Word, ParseError> {
    let lead = text.len() - text.trim_start().len();
    parse_trimmed(text.trim(), alphabet).map_err(|e| e.offset(lead))
}

fn parse_trimmed(t: &str, alphabet: Option<&Alphabet>) -> Result<Word, ParseError> {
    if t.is_empty() || t == "1" || t == "ε" {
        return Ok(Word::empty());
    }
    if t.chars().any(|c| c.is_ascii_alphabetic()) {
        let guessed;
        let alpha = match alphabet {
            Some(a) => a,
            None => {
                guessed = Alphabet::guess(t);
                &guessed
            }
        };
        let mut letters = Vec::with_capacity(t.len());
        for (pos, c) in t.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            let l = alpha.letter_of(c).ok_or_else(|| {
                if c.is_ascii_alphabetic() {
                    ParseError::new(pos, format!("letter {c} is out of range"))
                } else {
                    ParseError::new(pos, format!("unexpected character {c:?} in word"))
                }
            })?;
            letters.push(l);
        }
        return Ok(Word::normalize(letters));
    }
    let mut letters = Vec::new();
    let mut offset = 0;
    for tok in t.split_whitespace() {
        let pos = t[offset..].find(tok).map_or(offset, |p| p + offset);
        offset = pos + tok.len();
        let v: i64 = tok
            .parse()
            .map_err(|_| ParseError::new(pos, format!("bad numeric letter {tok:?}")))?;
        let l = Letter::from_signed(v)
            .ok_or_else(|| ParseError::new(pos, format!("letter {v} is out of range")))?;
        if let Some(alpha) = alphabet {
            if l.generator() > alpha.rank() {
                return Err(ParseError::new(pos, format!("letter {v} is out of range")));
            }
        }
        letters.push(l);
    }
    Ok(Word::normalize(letters))
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts compact (`xyX`, `aBc`) or numeric (`1 -3 2`) syntax; `1`, `ε`
    /// and the empty string denote the empty word. Compact words made only of
    /// `x`, `y`, `z` use those as generators 1..3, anything else reads `a` as 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s, None)
    }
}

/// Shorthand for tests and bundled data: parses a compact word, panicking on
/// malformed input.
pub fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(w("xX"), Word::empty());
        assert_eq!(w("xyYX"), Word::empty());
        assert_eq!(w("xxYYYyyx"), w("xxYx"));
        assert_eq!(w("xxYYYyyx").len(), 4);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(Word::empty().multiply(&w("xyX")), w("xyX"));
        assert_eq!(w("x").multiply(&w("X")), Word::empty());
        assert_eq!(w("xy").multiply(&w("Yx")), w("xx"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("x").inverse(), w("X"));
        assert_eq!(w("xyX").inverse(), w("xYX"));
        assert_eq!(Word::empty().inverse(), Word::empty());
    }

    #[test]
    fn cyclic_reduce_examples() {
        assert_eq!(w("Xyyyx").cyclic_reduce(), (w("X"), w("yyy")));
        assert_eq!(w("xyX").cyclic_reduce(), (w("x"), w("y")));
        assert_eq!(w("xy").cyclic_reduce(), (Word::empty(), w("xy")));
        assert_eq!(w("xX").cyclic_reduce(), (Word::empty(), Word::empty()));
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(w("xy").substitute(&[w("x"), w("y")]).unwrap(), w("xy"));
        assert_eq!(w("xyX").substitute(&[w("y"), w("x")]).unwrap(), w("yxY"));
        assert_eq!(w("xxY").substitute(&[w("xy"), w("yX")]).unwrap(), w("xyxyxY"));
        assert_eq!(
            w("xyz").substitute(&[w("x"), w("y")]),
            Err(RankMismatch { needed: 3, given: 2 })
        );
    }

    #[test]
    fn exponent_sum_examples() {
        assert_eq!(Word::empty().exponent_sums(2), vec![0, 0]);
        assert_eq!(w("Xyz").exponent_sums(3), vec![-1, 1, 1]);
        assert_eq!(w("xxYYY").exponent_sums(2), vec![2, -3]);
    }

    #[test]
    fn primitivity_examples() {
        assert!(w("x").is_primitive_rank2());
        assert!(!w("xx").is_primitive_rank2());
        assert!(w("yXyyXyyX").is_primitive_rank2());
        assert!(w("yyyyyX").is_primitive_rank2());
        assert!(!Word::empty().is_primitive_rank2());
        assert!(!w("xyXY").is_primitive_rank2());
        assert!(w("YXXX").is_primitive_rank2());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(w("1"), Word::empty());
        assert_eq!("1 -3 2".parse::<Word>().unwrap(), w("xZy"));
        assert_eq!(w("xZy").display(WordFormat::Numeric).to_string(), "1 -3 2");
        assert_eq!(w("x").display(WordFormat::Numeric).to_string(), "+1");
        assert_eq!("+1".parse::<Word>().unwrap(), w("x"));
        assert_eq!(Word::empty().to_string(), "1");
        assert_eq!(w("aBd").to_string(), "aBd");
        assert_eq!(w("aBd").exponent_sums(4), vec![1, -1, 0, 1]);
        let big = Word::from_signed(&[27, -30]).unwrap();
        assert_eq!(big.to_string(), "27 -30");
        assert!("x?y".parse::<Word>().is_err());
        assert!("1 0 2".parse::<Word>().is_err());
        let ab = Alphabet::new(vec!['p', 'q']).unwrap();
        assert_eq!(Word::parse_in("pQ", &ab).unwrap(), w("xY"));
        assert!(Word::parse_in("pz", &ab).is_err());
        assert_eq!(w("xY").display_in(WordFormat::Compact, Some(&ab)).to_string(), "pQ");
    }

    #[test]
    fn letter_order() {
        let mut ls = vec![w("Y").letters()[0], w("x").letters()[0], w("y").letters()[0], w("X").letters()[0]];
        ls.sort();
        let raw: Vec<i16> = ls.iter().map(|l| l.raw()).collect();
        assert_eq!(raw, vec![1, -1, 2, -2]);
        assert!(w("xY") < w("yx"));
        assert!(w("y") < w("xx"));
    }
}
