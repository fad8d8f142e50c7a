use std::io::{BufRead, Write};

use acwb::moves::{format_step, parse_step_line};
use acwb::{apply_move, AcMove, Certificate, Presentation, WordFormat};

pub struct Session {
    start: Presentation,
    history: Vec<(AcMove, Presentation)>,
    format: WordFormat,
}

impl Session {
    pub fn new(start: Presentation, format: WordFormat) -> Self {
        Session { start, history: Vec::new(), format }
    }

    pub fn current(&self) -> &Presentation {
        self.history.last().map(|(_, p)| p).unwrap_or(&self.start)
    }

    pub fn certificate(&self) -> Certificate {
        Certificate {
            start: self.start.clone(),
            steps: self.history.iter().map(|(m, _)| m.clone()).collect(),
            end: self.current().clone(),
        }
    }

    /// Runs one command; `None` ends the session.
    pub fn command(&mut self, line: &str) -> Option<String> {
        let line = line.trim();
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let shown = |p: &Presentation| p.display(self.format).to_string();
        Some(match cmd {
            "" => String::new(),
            "quit" | "exit" => return None,
            "show" => shown(self.current()),
            "len" => self.current().total_length().to_string(),
            "key" => self.current().canonical_key().to_string(),
            "history" => {
                let mut rank = self.start.gen_count();
                let mut out = Vec::new();
                for (m, p) in &self.history {
                    out.push(format_step(m, rank, self.format));
                    rank = p.gen_count();
                }
                out.join("\n")
            }
            "move" => match parse_step_line(rest, self.current().gen_count()) {
                Err(e) => format!("error: {e}"),
                Ok(m) => match apply_move(self.current(), &m) {
                    Err(e) => format!("rejected: {e}"),
                    Ok(next) => {
                        let out = shown(&next);
                        self.history.push((m, next));
                        out
                    }
                },
            },
            "undo" => {
                if self.history.pop().is_none() {
                    "nothing to undo".into()
                } else {
                    shown(self.current())
                }
            }
            "save" if !rest.is_empty() => match std::fs::write(rest, self.certificate().to_text(self.format)) {
                Ok(()) => format!("saved {} steps to {rest}", self.history.len()),
                Err(e) => format!("error: cannot write {rest}: {e}"),
            },
            "help" => HELP.into(),
            other => format!("unknown command {other:?}; try help"),
        })
    }
}

const HELP: &str = "show | len | key | history | move <step> | undo | save <file> | quit
steps: R i j ±, L i j ±, I i, C i <word>, SWAP i j, SUB i <word> := (j,±,<word>)…, AUT …, ADD, DROP, PRIM i";

pub fn run(start: Presentation, format: WordFormat, input: impl BufRead, mut output: impl Write) -> std::io::Result<()> {
    let mut session = Session::new(start, format);
    writeln!(output, "{}", session.current().display(format))?;
    for line in input.lines() {
        match session.command(&line?) {
            None => break,
            Some(reply) if reply.is_empty() => {}
            Some(reply) => writeln!(output, "{reply}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session() -> Session {
        Session::new(Presentation::standard(2), WordFormat::Compact)
    }

    #[test]
    fn invert_and_undo() {
        let mut s = session();
        assert_eq!(s.command("move I 1").unwrap(), "<x,y | X, y>");
        s.command("move R 1 2 +");
        assert_eq!(s.command("len").unwrap(), "3");
        s.command("undo");
        s.command("undo");
        assert_eq!(s.current(), &Presentation::standard(2));
        assert_eq!(s.command("undo").unwrap(), "nothing to undo");
    }

    #[test]
    fn illegal_moves_leave_state() {
        let mut s = session();
        assert!(s.command("move R 1 1 +").unwrap().starts_with("rejected"));
        assert!(s.command("move Q").unwrap().starts_with("error"));
        assert_eq!(s.current(), &Presentation::standard(2));
        assert!(s.command("quit").is_none());
    }

    #[test]
    fn saved_history_verifies() {
        let mut s = session();
        for m in ["move R 1 2 +", "move C 2 x", "move SWAP 1 2", "move I 2"] {
            assert!(!s.command(m).unwrap().starts_with("rejected"), "{m}");
        }
        let cert = s.certificate();
        let text = cert.to_text(WordFormat::Compact);
        let back = Certificate::parse(&text).unwrap();
        assert!(acwb::verify_certificate(&back).ok);
        assert_eq!(back.end, *s.current());
    }
}
