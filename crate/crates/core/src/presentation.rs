//! Finite presentations `<x_1..x_n | r_1..r_k>` with ordered relator lists.

use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::word::{Alphabet, Word, WordFormat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("relator {relator} uses generator {generator} but only {gen_count} are declared")]
    OutOfRange { relator: usize, generator: usize, gen_count: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    gen_count: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gen_count: usize, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if gen_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        for (i, r) in relators.iter().enumerate() {
            if r.max_generator() > gen_count {
                return Err(PresentationError::OutOfRange {
                    relator: i + 1,
                    generator: r.max_generator(),
                    gen_count,
                });
            }
        }
        Ok(Presentation { gen_count, relators })
    }

    /// `<x_1..x_n | x_1..x_n>`.
    pub fn standard(n: usize) -> Self {
        Presentation { gen_count: n, relators: (1..=n).map(Word::generator).collect() }
    }

    /// Parses compact relators in the default alphabet for `gen_count`
    /// (`x,y,z` up to rank 3). Panics on bad input; meant for literals.
    pub fn from_words(gen_count: usize, relators: &[&str]) -> Self {
        let alpha = Alphabet::default_for(gen_count).expect("rank at most 26");
        let words = relators
            .iter()
            .map(|r| Word::parse_in(r, &alpha).unwrap_or_else(|e| panic!("bad relator {r:?}: {e}")))
            .collect();
        Presentation::new(gen_count, words).expect("valid presentation literal")
    }

    pub(crate) fn from_parts_unchecked(gen_count: usize, relators: Vec<Word>) -> Self {
        debug_assert!(relators.iter().all(|r| r.max_generator() <= gen_count));
        Presentation { gen_count, relators }
    }

    #[inline]
    pub fn gen_count(&self) -> usize {
        self.gen_count
    }

    #[inline]
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> Option<&Word> {
        self.relators.get(i)
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn into_relators(self) -> Vec<Word> {
        self.relators
    }

    pub fn is_balanced(&self) -> bool {
        self.relators.len() == self.gen_count
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Word::len).sum()
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        CanonicalKey::of(&self.relators)
    }

    /// Entry `(i, j)` is the exponent sum of generator `j` in relator `i`.
    pub fn abelianization_matrix<T: Scalar>(&self) -> Matrix<T> {
        Matrix::from_rows(
            self.relators
                .iter()
                .map(|r| r.exponent_sums(self.gen_count).into_iter().map(T::from_int).collect())
                .collect(),
        )
    }

    pub fn alphabet(&self) -> Option<Alphabet> {
        Alphabet::default_for(self.gen_count)
    }

    pub fn display(&self, format: WordFormat) -> PresentationDisplay<'_> {
        PresentationDisplay { p: self, format }
    }

    /// Relators joined by `;`, the corpus line format.
    pub fn to_corpus_line(&self, format: WordFormat) -> String {
        let alpha = self.alphabet();
        self.relators
            .iter()
            .map(|r| r.display_in(format, alpha.as_ref()).to_string())
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub struct PresentationDisplay<'a> {
    p: &'a Presentation,
    format: WordFormat,
}

impl fmt::Display for PresentationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alpha = self.p.alphabet();
        f.write_str("<")?;
        match &alpha {
            Some(a) => {
                let names: Vec<String> = a.names().iter().map(|c| c.to_string()).collect();
                f.write_str(&names.join(","))?;
            }
            None => write!(f, "{}", self.p.gen_count)?,
        }
        f.write_str(" | ")?;
        for (i, r) in self.p.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r.display_in(self.format, alpha.as_ref()))?;
        }
        f.write_str(">")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(WordFormat::Compact).fmt(f)
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Presentation {
    type Err = ParseError;

    /// `<x,y | xxYYY, xyxYXY>`; the header may also be a bare generator
    /// count (`<30 | 1 -2, ...>`), in which case relators use the default
    /// alphabet for that rank or numeric syntax.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lead = s.len() - s.trim_start().len();
        let t = s.trim();
        if !t.starts_with('<') {
            return Err(ParseError::new(lead, "expected '<'"));
        }
        if !t.ends_with('>') {
            return Err(ParseError::new(lead + t.len().saturating_sub(1), "expected '>' at end"));
        }
        let body = &t[1..t.len() - 1];
        let bar = body.find('|').ok_or_else(|| ParseError::new(lead + 1, "expected '|'"))?;
        let head = &body[..bar];
        let head_trim = head.trim();
        let (gen_count, alphabet) = if !head_trim.is_empty() && head_trim.chars().all(|c| c.is_ascii_digit()) {
            let n: usize = head_trim.parse().map_err(|_| ParseError::new(lead + 1, "bad generator count"))?;
            (n, Alphabet::default_for(n))
        } else {
            let mut names = Vec::new();
            let mut off = 0;
            for part in head.split(',') {
                let name = part.trim();
                let pos = lead + 1 + off + part.find(name).unwrap_or(0);
                let mut cs = name.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) if c.is_ascii_lowercase() => {
                        if names.contains(&c) {
                            return Err(ParseError::new(pos, format!("generator {c} declared twice")));
                        }
                        names.push(c)
                    }
                    _ => return Err(ParseError::new(pos, format!("bad generator name {name:?}"))),
                }
                off += part.len() + 1;
            }
            let n = names.len();
            (n, Some(Alphabet::new(names).expect("checked names")))
        };
        if gen_count == 0 {
            return Err(ParseError::new(lead + 1, "no generators declared"));
        }
        let rels_text = &body[bar + 1..];
        let rels_off = lead + 1 + bar + 1;
        let mut relators = Vec::new();
        if !rels_text.trim().is_empty() {
            let mut off = 0;
            for part in rels_text.split(',') {
                let start = rels_off + off;
                if part.trim().is_empty() {
                    return Err(ParseError::new(start, "empty relator (write 1 for the empty word)"));
                }
                let word = match &alphabet {
                    Some(a) => Word::parse_in(part, a),
                    None => numeric_only(part),
                }
                .map_err(|e| e.offset(start))?;
                if word.max_generator() > gen_count {
                    return Err(ParseError::new(
                        start,
                        format!("generator {} out of range", word.max_generator()),
                    ));
                }
                relators.push(word);
                off += part.len() + 1;
            }
        }
        Ok(Presentation { gen_count, relators })
    }
}

fn numeric_only(text: &str) -> Result<Word, ParseError> {
    if text.chars().any(|c| c.is_ascii_alphabetic()) {
        return Err(ParseError::new(0, "compact letters need a rank of at most 26"));
    }
    text.parse()
}

/// Relator multiset up to inversion, conjugation and cyclic rotation of each
/// relator: the dedup key for AC-search.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalKey {
    cores: Vec<Word>,
}

impl CanonicalKey {
    pub fn of(relators: &[Word]) -> Self {
        let mut cores: Vec<Word> = relators.iter().map(canonical_core).collect();
        cores.sort_by(|a, b| a.shortlex_cmp(b));
        CanonicalKey { cores }
    }

    pub fn cores(&self) -> &[Word] {
        &self.cores
    }

    pub fn total_length(&self) -> usize {
        self.cores.iter().map(Word::len).sum()
    }

    /// The cores read as a presentation on `gen_count` generators.
    pub fn to_presentation(&self, gen_count: usize) -> Presentation {
        Presentation::from_parts_unchecked(gen_count, self.cores.clone())
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self.cores.iter().map(Word::max_generator).max().unwrap_or(1);
        let alpha = Alphabet::default_for(rank);
        let parts: Vec<String> = self
            .cores
            .iter()
            .map(|c| c.display_in(WordFormat::Compact, alpha.as_ref()).to_string())
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Least rotation of the cyclically reduced word or its inverse.
pub fn canonical_core(w: &Word) -> Word {
    let core = w.cyclic_reduce().1;
    if core.is_empty() {
        return core;
    }
    let inv = core.inverse();
    let a = core.rotate(least_rotation(core.letters()));
    let b = inv.rotate(least_rotation(inv.letters()));
    if b.letters() < a.letters() {
        b
    } else {
        a
    }
}

/// Start index of the lexicographically least rotation, in linear time.
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// A corpus file: `gens=n` header then one `w1;w2;...` presentation per line.
/// Blank lines and `#` comments are ignored.
pub fn parse_corpus(text: &str) -> Result<Vec<Presentation>, ParseError> {
    let mut gen_count = None;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("gens=") {
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::new(0, "bad gens= header").at_line(lineno + 1))?;
            if n == 0 {
                return Err(ParseError::new(0, "gens must be positive").at_line(lineno + 1));
            }
            gen_count = Some(n);
            continue;
        }
        let n = gen_count.ok_or_else(|| ParseError::new(0, "missing gens= header").at_line(lineno + 1))?;
        let alpha = Alphabet::default_for(n);
        let mut rels = Vec::new();
        for part in line.split(';') {
            let word = match &alpha {
                Some(a) => Word::parse_in(part, a),
                None => numeric_only(part),
            }
            .map_err(|e| e.at_line(lineno + 1))?;
            rels.push(word);
        }
        let p = Presentation::new(n, rels)
            .map_err(|e| ParseError::new(0, e.to_string()).at_line(lineno + 1))?;
        out.push(p);
    }
    Ok(out)
}

pub fn format_corpus(presentations: &[Presentation], format: WordFormat) -> String {
    let mut out = String::new();
    let mut current = None;
    for p in presentations {
        if current != Some(p.gen_count()) {
            out.push_str(&format!("gens={}\n", p.gen_count()));
            current = Some(p.gen_count());
        }
        out.push_str(&p.to_corpus_line(format));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        let ak2 = p("<x,y | xxYYY, xyxYXY>");
        assert_eq!(ak2.gen_count(), 2);
        assert_eq!(ak2.relators(), &[w("xxYYY"), w("xyxYXY")]);
        let one = p("<x | x>");
        assert_eq!(one, Presentation::standard(1));
        let err = "<x,y | xz>".parse::<Presentation>().unwrap_err();
        assert!(err.message.contains("out of range"), "{err}");
        assert_eq!(err.position, 8);
    }

    #[test]
    fn parse_other_names_and_errors() {
        let q = p("<a,b | aB, 1>");
        assert_eq!(q.relators(), &[w("xY"), Word::empty()]);
        assert_eq!(q.to_string(), "<x,y | xY, 1>");
        assert!("<x,x | x>".parse::<Presentation>().is_err());
        assert!("x,y | x".parse::<Presentation>().is_err());
        assert!("<x,y  x>".parse::<Presentation>().is_err());
        assert!("<x,y | x,>".parse::<Presentation>().is_err());
        assert_eq!(p("<x,y | >").relator_count(), 0);
        let numeric = p("<30 | 1 -30, 2>");
        assert_eq!(numeric.gen_count(), 30);
        assert_eq!(numeric.to_string(), "<30 | 1 -30, 2>");
    }

    #[test]
    fn round_trip_rendering() {
        for text in ["<x,y | xxYYY, xyxYXY>", "<x,y,z | xZ, Xy, Xyz>", "<a,b,c,d | ab, cD, 1, d>"] {
            let q = p(text);
            assert_eq!(p(&q.to_string()), q);
        }
    }

    #[test]
    fn key_examples() {
        assert_eq!(canonical_core(&w("XyyyX")), w("xxYYY"));
        assert_eq!(p("<x,y | yxY, y>").canonical_key(), p("<x,y | x, y>").canonical_key());
        assert_eq!(p("<x,y | x, y>").canonical_key(), p("<x,y | y, x>").canonical_key());
        assert_eq!(p("<x,y | xyXY, 1>").canonical_key().cores(), &[Word::empty(), w("xyXY")]);
    }

    #[test]
    fn abelianization_examples() {
        let thm14: Presentation = "<x,y,z | xZ, Xy>".parse().unwrap();
        assert_eq!(thm14.abelianization_matrix::<i64>().to_rows(), vec![vec![1, 0, -1], vec![-1, 1, 0]]);
        assert_eq!(Presentation::standard(2).abelianization_matrix::<i64>(), Matrix::identity(2));
        let ex1 = p("<x,y | XyyxYYY, YxxyXXX>");
        assert_eq!(ex1.abelianization_matrix::<i64>().to_rows(), vec![vec![0, -1], vec![-1, 0]]);
    }

    #[test]
    fn corpus_round_trip() {
        let text = "# sample\ngens=2\nxxYYY;xyxYXY\nx;y\ngens=3\nxZ;Xy;Xyz\n";
        let ps = parse_corpus(text).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(ps[2].gen_count(), 3);
        assert_eq!(parse_corpus(&format_corpus(&ps, WordFormat::Compact)).unwrap(), ps);
        assert_eq!(parse_corpus(&format_corpus(&ps, WordFormat::Numeric)).unwrap(), ps);
        assert!(parse_corpus("x;y\n").is_err());
        assert!(parse_corpus("gens=1\nxy\n").is_err());
    }

    #[test]
    fn least_rotation_brute_force() {
        let words = ["xyXY", "yyxyyx", "XyxYY", "xxx", "YXyxxY", "x"];
        for s in words {
            let c = w(s);
            let fast = c.rotate(least_rotation(c.letters()));
            let brute = (0..c.len()).map(|k| c.rotate(k)).min_by(|a, b| a.letters().cmp(b.letters())).unwrap();
            assert_eq!(fast, brute, "{s}");
        }
    }
}
