//! Wirtinger presentations of knot diagrams and Tietze elimination.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::ParseError;
use crate::moves::find_conjugator;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub out_under: usize,
    pub over: usize,
    pub in_under: usize,
    pub positive: bool,
}

/// Crossings of a diagram with arcs `1..=arcs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingTable {
    arcs: usize,
    crossings: Vec<Crossing>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("crossing table: {0}")]
    Malformed(String),
    #[error("elimination step {step}: {message}")]
    Step { step: usize, message: String },
    #[error("balance needs one relator fewer than generators ({gens} generators, {relators} relators)")]
    BalanceShape { gens: usize, relators: usize },
}

impl CrossingTable {
    pub fn new(arcs: usize, crossings: Vec<Crossing>) -> Result<Self, KnotError> {
        let bad = |m: String| Err(KnotError::Malformed(m));
        if crossings.len() != arcs {
            return bad(format!("{} crossings for {arcs} arcs", crossings.len()));
        }
        let mut outs = vec![0usize; arcs + 1];
        let mut ins = vec![0usize; arcs + 1];
        for (k, c) in crossings.iter().enumerate() {
            for a in [c.out_under, c.over, c.in_under] {
                if a == 0 || a > arcs {
                    return bad(format!("crossing {} names arc {a} outside 1..{arcs}", k + 1));
                }
            }
            outs[c.out_under] += 1;
            ins[c.in_under] += 1;
        }
        for a in 1..=arcs {
            if outs[a] != 1 || ins[a] != 1 {
                return bad(format!("arc {a} ends {} and starts {} times (expected once each)", outs[a], ins[a]));
            }
        }
        Ok(CrossingTable { arcs, crossings })
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
}

impl FromStr for CrossingTable {
    type Err = ParseError;

    /// `arcs=n` then one `out over in ±` line per crossing; `#` comments.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut arcs = None;
        let mut crossings = Vec::new();
        for (no, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| ParseError::new(0, m).at_line(no + 1);
            if let Some(n) = line.strip_prefix("arcs=") {
                arcs = Some(n.trim().parse::<usize>().map_err(|_| err(format!("bad arc count {n:?}")))?);
                continue;
            }
            if arcs.is_none() {
                return Err(err("expected arcs=n header".into()));
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(err("expected `out over in sign`".into()));
            }
            let num = |t: &str| t.parse::<usize>().map_err(|_| err(format!("bad arc id {t:?}")));
            let positive = match toks[3] {
                "+" | "+1" => true,
                "-" | "-1" => false,
                t => return Err(err(format!("bad sign {t:?}"))),
            };
            crossings.push(Crossing { out_under: num(toks[0])?, over: num(toks[1])?, in_under: num(toks[2])?, positive });
        }
        let arcs = arcs.ok_or_else(|| ParseError::new(0, "missing arcs=n header"))?;
        CrossingTable::new(arcs, crossings).map_err(|e| ParseError::new(0, e.to_string()))
    }
}

impl fmt::Display for CrossingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arcs={}", self.arcs)?;
        for c in &self.crossings {
            writeln!(f, "{} {} {} {}", c.out_under, c.over, c.in_under, if c.positive { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// One relator `x_out⁻¹ · x_over^s · x_in · x_over^-s` per crossing.
pub fn wirtinger(table: &CrossingTable) -> Presentation {
    let rels = table
        .crossings
        .iter()
        .map(|c| {
            let over = Letter::new(c.over, c.positive);
            Word::normalize([Letter::new(c.out_under, false), over, Letter::new(c.in_under, true), over.inverse()])
        })
        .collect();
    Presentation::new(table.arcs, rels).expect("arc ids checked")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationStep {
    /// Solve relator `relator` for `generator` and substitute everywhere.
    Solve { relator: usize, generator: usize },
    /// Replace relator `relator` by `new`, which must equal `c · r_using^±1 ·
    /// c⁻¹ · r_relator` for some word `c`.
    Substitute { relator: usize, using: usize, new: Word },
}

/// Steps name relators by their 1-based position in the input and
/// generators by their input index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EliminationScript {
    pub discard: Option<usize>,
    pub steps: Vec<EliminationStep>,
}

impl FromStr for EliminationScript {
    type Err = ParseError;

    /// Lines `discard R`, `solve R G`, `sub R using J : <word>`; words use the
    /// input's generator indices in numeric syntax.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut script = EliminationScript::default();
        for (no, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: String| ParseError::new(0, m).at_line(no + 1);
            let num = |t: Option<&str>| -> Result<usize, ParseError> {
                t.and_then(|t| t.parse().ok()).filter(|&v| v >= 1).ok_or_else(|| err(format!("expected an index, got {t:?}")))
            };
            let mut toks = line.split_whitespace();
            match toks.next() {
                Some("discard") => script.discard = Some(num(toks.next())?),
                Some("solve") => {
                    let relator = num(toks.next())?;
                    let generator = num(toks.next())?;
                    script.steps.push(EliminationStep::Solve { relator, generator });
                }
                Some("sub") => {
                    let (head, word) = line.split_once(':').ok_or_else(|| err("sub needs ': <word>'".into()))?;
                    let mut h = head.split_whitespace().skip(1);
                    let relator = num(h.next())?;
                    if h.next() != Some("using") {
                        return Err(err("expected `sub R using J : <word>`".into()));
                    }
                    let using = num(h.next())?;
                    let new: Word = word.trim().parse().map_err(|e: ParseError| e.at_line(no + 1))?;
                    script.steps.push(EliminationStep::Substitute { relator, using, new });
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        Ok(script)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    /// Surviving generators renumbered `1..`, relators in input order.
    pub presentation: Presentation,
    /// Input index of each surviving generator.
    pub names: Vec<usize>,
    /// Input position of each surviving relator.
    pub relator_labels: Vec<usize>,
}

impl Elimination {
    /// Relators written with the input's generator names, e.g. `x5 x7^-1`.
    pub fn display_named(&self) -> String {
        let word = |w: &Word| -> String {
            if w.is_empty() {
                return "1".into();
            }
            w.letters()
                .iter()
                .map(|l| {
                    let name = self.names[l.generator() - 1];
                    if l.is_positive() { format!("x{name}") } else { format!("x{name}^-1") }
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let gens: Vec<String> = self.names.iter().map(|n| format!("x{n}")).collect();
        let rels: Vec<String> = self.presentation.relators().iter().map(word).collect();
        format!("<{} | {}>", gens.join(", "), rels.join(", "))
    }
}

fn cyclic_core(w: &Word) -> Word {
    w.cyclic_reduce().1
}

/// Tietze elimination. All relators are cyclically reduced first and after
/// every step.
pub fn eliminate(p: &Presentation, script: &EliminationScript) -> Result<Elimination, KnotError> {
    let n = p.gen_count();
    let mut rels: Vec<Option<Word>> = p.relators().iter().map(|r| Some(cyclic_core(r))).collect();
    let mut alive = vec![true; n + 1];
    alive[0] = false;
    let fail = |step: usize, message: String| KnotError::Step { step, message };
    if let Some(d) = script.discard {
        match rels.get_mut(d.wrapping_sub(1)) {
            Some(slot @ Some(_)) => *slot = None,
            _ => return Err(fail(0, format!("cannot discard relator {d}"))),
        }
    }
    for (k, step) in script.steps.iter().enumerate() {
        let no = k + 1;
        let live = |rels: &Vec<Option<Word>>, r: usize| -> Result<Word, KnotError> {
            rels.get(r.wrapping_sub(1))
                .and_then(|x| x.clone())
                .ok_or_else(|| fail(no, format!("relator {r} is not present")))
        };
        match step {
            EliminationStep::Solve { relator, generator } => {
                let g = *generator;
                if g == 0 || g > n || !alive[g] {
                    return Err(fail(no, format!("generator {g} is not present")));
                }
                let r = live(&rels, *relator)?;
                let count = r.occurrences(g);
                if count != 1 {
                    return Err(fail(no, format!("generator {g} occurs {count} times in relator {relator}")));
                }
                let at = r.letters().iter().position(|l| l.generator() == g).expect("counted once");
                // rotate to g^e · w, so g = w⁻¹ if e = +1 and g = w if e = -1
                let rot = r.rotate(at);
                let e = rot.letters()[0];
                let rest = Word::normalize(rot.letters()[1..].iter().copied());
                let value = if e.is_positive() { rest.inverse() } else { rest };
                let images: Vec<Word> =
                    (1..=n).map(|j| if j == g { value.clone() } else { Word::generator(j) }).collect();
                rels[relator - 1] = None;
                alive[g] = false;
                for slot in rels.iter_mut().flatten() {
                    *slot = cyclic_core(&slot.substitute(&images).expect("rank n"));
                }
            }
            EliminationStep::Substitute { relator, using, new } => {
                if relator == using {
                    return Err(fail(no, "a substitution needs a different witness relator".into()));
                }
                let r = live(&rels, *relator)?;
                let witness = live(&rels, *using)?;
                if new.max_generator() > n {
                    return Err(fail(no, "new relator uses an unknown generator".into()));
                }
                let quotient = new.multiply(&r.inverse());
                let ok = find_conjugator(&witness, &quotient).is_some()
                    || find_conjugator(&witness.inverse(), &quotient).is_some();
                if !ok {
                    return Err(fail(
                        no,
                        format!("new relator is not a conjugate of relator {using}^±1 times relator {relator}"),
                    ));
                }
                rels[relator - 1] = Some(cyclic_core(new));
            }
        }
    }
    let names: Vec<usize> = (1..=n).filter(|&g| alive[g]).collect();
    let mut renumber = vec![Word::empty(); n];
    for (new_idx, &old) in names.iter().enumerate() {
        renumber[old - 1] = Word::generator(new_idx + 1);
    }
    let mut out_rels = Vec::new();
    let mut labels = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        if let Some(r) = r {
            out_rels.push(r.substitute(&renumber).expect("rank n"));
            labels.push(k + 1);
        }
    }
    if names.is_empty() {
        return Err(fail(script.steps.len(), "every generator was eliminated".into()));
    }
    let presentation = Presentation::new(names.len(), out_rels).expect("renumbered");
    Ok(Elimination { presentation, names, relator_labels: labels })
}

/// Appends `w`; valid iff the abelianization matrix of the result has
/// determinant ±1. The error carries the determinant.
pub fn balance(p: &Presentation, w: &Word) -> Result<Presentation, BalanceError> {
    if p.relator_count() + 1 != p.gen_count() {
        return Err(BalanceError::Shape(KnotError::BalanceShape { gens: p.gen_count(), relators: p.relator_count() }));
    }
    if w.max_generator() > p.gen_count() {
        return Err(BalanceError::Shape(KnotError::Malformed("word uses an unknown generator".into())));
    }
    let mut rels = p.relators().to_vec();
    rels.push(w.clone());
    let q = Presentation::new(p.gen_count(), rels).expect("checked ranks");
    let det = q.abelianization_matrix::<BigInt>().determinant();
    if det.abs().is_one() {
        Ok(q)
    } else {
        Err(BalanceError::Invalid { determinant: det })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BalanceError {
    #[error("abelianization determinant is {determinant}, not ±1")]
    Invalid { determinant: BigInt },
    #[error(transparent)]
    Shape(KnotError),
}
