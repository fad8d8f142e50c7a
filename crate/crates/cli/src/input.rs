use std::fs;
use std::path::Path;

use acwb::presentation::parse_corpus;
use acwb::{Certificate, Presentation, Word};
use anyhow::{bail, Context, Result};

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

/// A literal `<gens | rels>`, or a file holding a corpus (`gens=n` header)
/// or one presentation literal per line.
pub fn presentations(arg: &str) -> Result<Vec<Presentation>> {
    let trimmed = arg.trim();
    if trimmed.starts_with('<') {
        return Ok(vec![trimmed.parse().with_context(|| format!("cannot parse {trimmed:?}"))?]);
    }
    if !Path::new(arg).exists() {
        bail!("{arg:?} is neither a presentation literal nor a readable file");
    }
    let text = read(arg)?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let list = if first.starts_with('<') {
        text.lines()
            .enumerate()
            .map(|(no, l)| (no, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .map(|(no, l)| l.parse::<Presentation>().with_context(|| format!("{arg}:{}", no + 1)))
            .collect::<Result<Vec<_>>>()?
    } else {
        parse_corpus(&text).with_context(|| format!("cannot parse corpus {arg}"))?
    };
    if list.is_empty() {
        bail!("{arg} holds no presentations");
    }
    Ok(list)
}

pub fn presentation(arg: &str) -> Result<Presentation> {
    let mut list = presentations(arg)?;
    if list.len() != 1 {
        bail!("{arg} holds {} presentations; expected one", list.len());
    }
    Ok(list.remove(0))
}

pub fn certificate(path: &str) -> Result<Certificate> {
    Certificate::parse(&read(path)?).with_context(|| format!("cannot parse certificate {path}"))
}

pub fn word(text: &str) -> Result<Word> {
    text.parse().with_context(|| format!("cannot parse word {text:?}"))
}

pub fn text(path: &str) -> Result<String> {
    read(path)
}

pub fn write(path: &str, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {path}"))
}
