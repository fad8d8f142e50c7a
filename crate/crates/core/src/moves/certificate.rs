//! Replayable certificates and their line-oriented text form.

use std::fmt;
use std::str::FromStr;

use super::{apply_move, AcMove, IllegalMove, Sign, WitnessFactor};
use crate::error::ParseError;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Word, WordFormat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub start: Presentation,
    pub steps: Vec<AcMove>,
    pub end: Presentation,
}

/// Applies `steps` in order; on failure returns the 0-based step index.
pub fn replay(start: &Presentation, steps: &[AcMove]) -> Result<Presentation, (usize, IllegalMove)> {
    let mut p = start.clone();
    for (k, m) in steps.iter().enumerate() {
        p = apply_move(&p, m).map_err(|e| (k, e))?;
    }
    Ok(p)
}

impl Certificate {
    /// Builds a certificate whose end is the replay of `steps`.
    pub fn from_steps(start: Presentation, steps: Vec<AcMove>) -> Result<Self, (usize, IllegalMove)> {
        let end = replay(&start, &steps)?;
        Ok(Certificate { start, steps, end })
    }

    pub fn empty(start: Presentation) -> Self {
        Certificate { end: start.clone(), start, steps: Vec::new() }
    }

    pub fn to_text(&self, format: WordFormat) -> String {
        let mut out = format!("START {}\n", self.start.display(format));
        let mut rank = self.start.gen_count();
        for m in &self.steps {
            out.push_str(&format_step(m, rank, format));
            out.push('\n');
            match m {
                AcMove::AddGenerator => rank += 1,
                AcMove::DropGenerator => rank = rank.saturating_sub(1),
                _ => {}
            }
        }
        out.push_str(&format!("END {}\n", self.end.display(format)));
        out
    }

    /// Parses the text form. Step words are read in the default alphabet of
    /// the rank current at that step.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        let mut rank = 0;
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let err = |e: ParseError| e.at_line(line_no);
            match kw {
                "START" => {
                    if start.is_some() {
                        return Err(ParseError::new(0, "second START line").at_line(line_no));
                    }
                    let p: Presentation = rest.parse().map_err(err)?;
                    rank = p.gen_count();
                    start = Some(p);
                }
                "END" => {
                    if start.is_none() || end.is_some() {
                        return Err(ParseError::new(0, "END must follow START exactly once").at_line(line_no));
                    }
                    end = Some(rest.parse::<Presentation>().map_err(err)?);
                }
                _ => {
                    if start.is_none() {
                        return Err(ParseError::new(0, "step before START").at_line(line_no));
                    }
                    if end.is_some() {
                        return Err(ParseError::new(0, "step after END").at_line(line_no));
                    }
                    let m = parse_step(kw, rest, rank).map_err(err)?;
                    match m {
                        AcMove::AddGenerator => rank += 1,
                        AcMove::DropGenerator => rank = rank.saturating_sub(1),
                        _ => {}
                    }
                    steps.push(m);
                }
            }
        }
        let start = start.ok_or_else(|| ParseError::new(0, "missing START line"))?;
        let end = end.ok_or_else(|| ParseError::new(0, "missing END line"))?;
        Ok(Certificate { start, steps, end })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(WordFormat::Compact))
    }
}

impl FromStr for Certificate {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Certificate::parse(s)
    }
}

fn word_text(w: &Word, rank: usize, format: WordFormat) -> String {
    w.display_in(format, Alphabet::default_for(rank).as_ref()).to_string()
}

/// One certificate line for `m`, applied at generator count `rank`.
pub fn format_step(m: &AcMove, rank: usize, format: WordFormat) -> String {
    let wt = |w: &Word| word_text(w, rank, format);
    match m {
        AcMove::RightMultiply { i, j, sign } => format!("R {} {} {sign}", i + 1, j + 1),
        AcMove::LeftMultiply { i, j, sign } => format!("L {} {} {sign}", i + 1, j + 1),
        AcMove::Invert { i } => format!("I {}", i + 1),
        AcMove::Conjugate { i, by } => format!("C {} {}", i + 1, wt(by)),
        AcMove::Swap { i, j } => format!("SWAP {} {}", i + 1, j + 1),
        AcMove::Substitute { i, new, witness } => {
            let factors: String = witness
                .iter()
                .map(|f| format!("({},{},{})", f.relator + 1, f.sign, wt(&f.conjugator)))
                .collect();
            format!("SUB {} {} := {factors}", i + 1, wt(new))
        }
        AcMove::Automorphism { images, inverse_images } => {
            let join = |ws: &[Word]| ws.iter().map(wt).collect::<Vec<_>>().join(",");
            format!("AUT {} / {}", join(images), join(inverse_images))
        }
        AcMove::AddGenerator => "ADD".to_string(),
        AcMove::DropGenerator => "DROP".to_string(),
        AcMove::PrimitiveFinish { i } => format!("PRIM {}", i + 1),
    }
}

fn parse_index(tok: Option<&str>) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| ParseError::new(0, "missing relator index"))?;
    match tok.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(ParseError::new(0, format!("bad relator index {tok:?} (indices start at 1)"))),
    }
}

fn parse_sign(tok: Option<&str>) -> Result<Sign, ParseError> {
    match tok {
        Some("+") | Some("+1") => Ok(Sign::Plus),
        Some("-") | Some("-1") | Some("−") => Ok(Sign::Minus),
        other => Err(ParseError::new(0, format!("expected + or -, got {other:?}"))),
    }
}

fn parse_word_at(text: &str, rank: usize) -> Result<Word, ParseError> {
    match Alphabet::default_for(rank) {
        Some(a) => Word::parse_in(text, &a),
        None => text.parse(),
    }
}

/// Parses a step line (without trailing comment) at generator count `rank`.
/// Parses one step line such as `R 1 2 +` against a presentation of rank
/// `rank`.
pub fn parse_step_line(line: &str, rank: usize) -> Result<AcMove, ParseError> {
    let line = line.trim();
    let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
    parse_step(kw, rest.trim(), rank)
}

pub(crate) fn parse_step(kw: &str, rest: &str, rank: usize) -> Result<AcMove, ParseError> {
    let mut toks = rest.split_whitespace();
    let no_more = |mut toks: std::str::SplitWhitespace<'_>| match toks.next() {
        None => Ok(()),
        Some(t) => Err(ParseError::new(0, format!("unexpected trailing {t:?}"))),
    };
    let m = match kw {
        "R" | "L" => {
            let i = parse_index(toks.next())?;
            let j = parse_index(toks.next())?;
            let sign = parse_sign(toks.next())?;
            no_more(toks)?;
            if kw == "R" {
                AcMove::RightMultiply { i, j, sign }
            } else {
                AcMove::LeftMultiply { i, j, sign }
            }
        }
        "I" => {
            let i = parse_index(toks.next())?;
            no_more(toks)?;
            AcMove::Invert { i }
        }
        "C" => {
            let i = parse_index(toks.next())?;
            let word_text = rest.trim_start().split_once(char::is_whitespace).map(|(_, w)| w).unwrap_or("");
            if word_text.trim().is_empty() {
                return Err(ParseError::new(0, "C needs a conjugating word"));
            }
            AcMove::Conjugate { i, by: parse_word_at(word_text, rank)? }
        }
        "SWAP" => {
            let i = parse_index(toks.next())?;
            let j = parse_index(toks.next())?;
            no_more(toks)?;
            AcMove::Swap { i, j }
        }
        "SUB" => {
            let (lhs, rhs) = rest.split_once(":=").ok_or_else(|| ParseError::new(0, "SUB needs ':='"))?;
            let lhs = lhs.trim();
            let (idx, new_text) =
                lhs.split_once(char::is_whitespace).ok_or_else(|| ParseError::new(0, "SUB needs an index and a word"))?;
            let i = parse_index(Some(idx))?;
            let new = parse_word_at(new_text, rank)?;
            AcMove::Substitute { i, new, witness: parse_witness(rhs, rank)? }
        }
        "AUT" => {
            let (imgs, invs) = rest.split_once('/').ok_or_else(|| ParseError::new(0, "AUT needs '/'"))?;
            let list = |s: &str| -> Result<Vec<Word>, ParseError> {
                s.split(',').map(|t| parse_word_at(t, rank)).collect()
            };
            AcMove::Automorphism { images: list(imgs)?, inverse_images: list(invs)? }
        }
        "ADD" => {
            no_more(toks)?;
            AcMove::AddGenerator
        }
        "DROP" => {
            no_more(toks)?;
            AcMove::DropGenerator
        }
        "PRIM" => {
            let i = parse_index(toks.next())?;
            no_more(toks)?;
            AcMove::PrimitiveFinish { i }
        }
        other => return Err(ParseError::new(0, format!("unknown step {other:?}"))),
    };
    Ok(m)
}

fn parse_witness(text: &str, rank: usize) -> Result<Vec<WitnessFactor>, ParseError> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('(').ok_or_else(|| ParseError::new(0, "witness factor must start with '('"))?;
        let close = open.find(')').ok_or_else(|| ParseError::new(0, "unclosed witness factor"))?;
        let mut parts = open[..close].splitn(3, ',');
        let relator = parse_index(parts.next().map(str::trim))?;
        let sign = parse_sign(parts.next().map(str::trim))?;
        let conjugator = parse_word_at(parts.next().unwrap_or(""), rank)?;
        out.push(WitnessFactor { relator, sign, conjugator });
        rest = open[close + 1..].trim_start();
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// Only AC1-AC5 steps and their macros.
    Elementary,
    /// Uses automorphism or primitive-finish steps.
    Conditional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalStep {
    pub index: usize,
    pub step: AcMove,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyFailure {
    IllegalStep { index: usize, step: AcMove, reason: IllegalMove },
    EndMismatch { claimed: Presentation, replayed: Presentation },
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyFailure::IllegalStep { index, step, reason } => {
                write!(f, "step {} ({}) is illegal: {reason}", index + 1, step.keyword())
            }
            VerifyFailure::EndMismatch { claimed, replayed } => {
                write!(f, "replay ends at {replayed}, certificate claims {claimed}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    /// State after the last legal step.
    pub final_presentation: Presentation,
    /// Every conditional step, with its 0-based index.
    pub semantic_steps: Vec<ConditionalStep>,
    pub substitution_steps: usize,
    pub step_count: usize,
    pub failure: Option<VerifyFailure>,
}

impl VerificationReport {
    pub fn kind(&self) -> ChainKind {
        if self.semantic_steps.is_empty() {
            ChainKind::Elementary
        } else {
            ChainKind::Conditional
        }
    }
}

pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let mut p = cert.start.clone();
    let mut semantic_steps = Vec::new();
    let mut substitution_steps = 0;
    let mut failure = None;
    for (index, m) in cert.steps.iter().enumerate() {
        match apply_move(&p, m) {
            Ok(next) => p = next,
            Err(reason) => {
                failure = Some(VerifyFailure::IllegalStep { index, step: m.clone(), reason });
                break;
            }
        }
        if m.is_conditional() {
            semantic_steps.push(ConditionalStep { index, step: m.clone() });
        }
        if matches!(m, AcMove::Substitute { .. }) {
            substitution_steps += 1;
        }
    }
    if failure.is_none() && p != cert.end {
        failure = Some(VerifyFailure::EndMismatch { claimed: cert.end.clone(), replayed: p.clone() });
    }
    VerificationReport {
        ok: failure.is_none(),
        final_presentation: p,
        semantic_steps,
        substitution_steps,
        step_count: cert.steps.len(),
        failure,
    }
}
