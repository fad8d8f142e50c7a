//! Regenerates the bundled certificates under `data/certs`.
//!
//! Each chain walks through a list of known intermediate presentations.
//! Automorphisms, added and dropped generators and substitutions are written
//! out explicitly; the gaps between listed presentations are filled in by a
//! bounded bidirectional search.

use std::path::Path;

use acwb::moves::{find_conjugator, Sign, WitnessFactor};
use acwb::search::{ac_equivalent, SearchLimits, SearchOutcome};
use acwb::{apply_move, verify_certificate, AcMove, Certificate, Presentation, Word, WordFormat};

fn w(s: &str) -> Word {
    s.parse().unwrap_or_else(|e| panic!("bad word {s:?}: {e}"))
}

fn pres(s: &str) -> Presentation {
    s.parse().unwrap_or_else(|e| panic!("bad presentation {s:?}: {e}"))
}

struct Chain {
    start: Presentation,
    current: Presentation,
    steps: Vec<AcMove>,
}

impl Chain {
    fn new(start: &str) -> Self {
        let p = pres(start);
        Chain { start: p.clone(), current: p, steps: Vec::new() }
    }

    fn apply(&mut self, m: AcMove) -> &mut Self {
        self.current = apply_move(&self.current, &m).unwrap_or_else(|e| panic!("{m:?} on {}: {e}", self.current));
        self.steps.push(m);
        self
    }

    /// Elementary steps to exactly `target`.
    fn bridge(&mut self, target: &str) -> &mut Self {
        let q = pres(target);
        if q == self.current {
            return self;
        }
        let limits = SearchLimits { max_relator_len: 24, max_total_len: 40, ..SearchLimits::with_states(3_000_000) };
        match ac_equivalent(&self.current, &q, &limits).expect("searchable") {
            SearchOutcome::Found { certificate, .. } => {
                self.steps.extend(certificate.steps);
                self.current = q;
            }
            other => panic!("no bridge from {} to {q}: {:?}", self.current, other.stats()),
        }
        self
    }

    /// Replaces the occurrence of `s` after the prefix `a` in relator `i`
    /// by `t`, where `s = t` is a cyclic permutation of relator `j` or its
    /// inverse. Each `(a, s, t)` adds one witness factor.
    fn substitute(&mut self, i: usize, j: usize, parts: &[(&str, &str, &str)]) -> &mut Self {
        let rj = self.current.relators()[j].clone();
        let mut new = self.current.relators()[i].clone();
        let mut witness = Vec::new();
        for &(a, s, t) in parts {
            let (a, s, t) = (w(a), w(s), w(t));
            let rel = s.multiply(&t.inverse());
            let (c, sign) = match find_conjugator(&rj, &rel) {
                Some(c) => (c, Sign::Minus),
                None => (find_conjugator(&rj.inverse(), &rel).expect("relation comes from relator j"), Sign::Plus),
            };
            let factor = WitnessFactor { relator: j, sign, conjugator: a.multiply(&c) };
            new = a.multiply(&t).multiply(&s.inverse()).multiply(&a.inverse()).multiply(&new);
            witness.insert(0, factor);
        }
        self.apply(AcMove::Substitute { i, new, witness })
    }

    fn automorphism(&mut self, images: &[&str], inverse_images: &[&str]) -> &mut Self {
        self.apply(AcMove::Automorphism {
            images: images.iter().map(|s| w(s)).collect(),
            inverse_images: inverse_images.iter().map(|s| w(s)).collect(),
        })
    }

    fn finish(&self) -> Certificate {
        let cert = Certificate { start: self.start.clone(), steps: self.steps.clone(), end: self.current.clone() };
        assert!(verify_certificate(&cert).ok, "chain does not verify");
        cert
    }
}

/// `xⁿ = yⁿ⁺¹, xyx = yxy` to `x⁻¹yⁿx = yⁿ⁺¹, x = y⁻¹x⁻¹yxy` with one substitution.
fn ak_to_ms(c: &mut Chain, n: usize) {
    let ys = |k: usize, l: &str| l.repeat(k);
    let sub = "YXyxy";
    c.bridge(&format!("<x,y | {}{}, xYXYxy>", ys(n, "x"), ys(n + 1, "Y")));
    let parts: Vec<(String, &str, &str)> = (0..n).map(|k| (sub.repeat(k), "x", sub)).collect();
    let parts: Vec<_> = parts.iter().map(|(a, s, t)| (a.as_str(), *s, *t)).collect();
    c.substitute(0, 1, &parts);
    c.bridge(&format!("<x,y | X{}x{}, xYXYxy>", ys(n, "y"), ys(n + 1, "Y")));
}

fn prop11a(c: &mut Chain) {
    for p in [
        "<x,y | XyyyX, yxYXYx>",
        "<x,y | XyyyX, yxYXyyX>",
        "<x,y | yXyyyXY, yxYXyyX>",
        "<x,y | yXyyXyyX, yxYXyyX>",
        "<x,y | x, y>",
    ] {
        c.bridge(p);
    }
}

fn certificates() -> Vec<(&'static str, Certificate)> {
    let mut out = Vec::new();

    let mut a = Chain::new("<x,y | xxYYY, xyxYXY>");
    prop11a(&mut a);
    out.push(("prop11a", a.finish()));

    let mut b = Chain::new("<x,y | XyxYY, xxxYXXY>");
    for p in [
        "<x,y | XyxYY, XyxxyXX>",
        "<x,y | XyxYY, yyxyXX>",
        "<x,y | XyxYY, XyyxyX>",
        "<x,y | XyxYY, yyyyyX>",
        "<x,y | x, y>",
    ] {
        b.bridge(p);
    }
    out.push(("prop11b", b.finish()));

    let mut c = Chain::new("<x,y | XyyxYYY, xxyXY>");
    for p in [
        "<x,y | YYXyyxY, XXyxY>",
        "<x,y | YYXyyxY, yXYxx>",
        "<x,y | YYXyxx, yXYxx>",
        "<x,y | xYYXyx, xyXYx>",
        "<x,y | xyxYYXyxYX, xyXYx>",
        "<x,y | xyxYY, xyXYx>",
        "<x,y | YxyxY, yXYxx>",
        "<x,y | Yxxx, yXYxx>",
        "<x,y | x, y>",
    ] {
        c.bridge(p);
    }
    out.push(("prop11c", c.finish()));

    let mut d = Chain::new("<x,y | XyyxYYY, xxYXY>");
    d.bridge("<x,y | XyyxYYY, xYXYx>").bridge("<x,y | xYxYYYY, xYXYx>");
    d.automorphism(&["xy", "y"], &["xY", "y"]);
    d.bridge("<x,y | xxYYY, xyxYXY>");
    prop11a(&mut d);
    out.push(("prop11d", d.finish()));

    let mut e = Chain::new("<x,y | xxYYY, xyxYXY>");
    ak_to_ms(&mut e, 2);
    e.bridge("<x,y | x, y>");
    out.push(("prop13", e.finish()));

    let mut f = Chain::new("<x,y | xxxYYYY, xyxYXY>");
    ak_to_ms(&mut f, 3);
    f.bridge("<x,y | XyyyxYYYY, xyxYXY>");
    f.automorphism(&["X", "Y"], &["X", "Y"]);
    f.bridge("<x,y | xyxYXY, xYYYXyyyy>");
    f.automorphism(&["xY", "y"], &["xy", "y"]);
    for p in [
        "<x,y | YxxYX, xYYYXyyyy>",
        "<x,y | YxxYX, xYYXXyyyyy>",
        "<x,y | YxxYX, YYYYYxxyyX>",
        "<x,y | YxxYX, YYYYxxyyyXX>",
        "<x,y | xxYXY, YYYYxxyyyXX>",
    ] {
        f.bridge(p);
    }
    f.apply(AcMove::AddGenerator);
    f.automorphism(&["x", "y", "zyyy"], &["x", "y", "zYYY"]);
    // y⁻³ = z and y³ = z⁻¹ in the second relator
    f.substitute(1, 2, &[("Y", "YYY", "z"), ("Yzxx", "yyy", "Z")]);
    // y = zx²z⁻¹x⁻² everywhere else
    let y = "zxxZXX";
    f.substitute(2, 1, &[("z", "y", y), (&format!("z{y}"), "y", y), (&format!("z{y}{y}"), "y", y)]);
    f.substitute(0, 1, &[("xx", "Y", "xxzXXZ"), ("xxxxzXXZX", "Y", "xxzXXZ")]);
    f.automorphism(&["x", &format!("{y}y"), "z"], &["x", "xxzXXZy", "z"]);
    f.apply(AcMove::Invert { i: 1 });
    f.automorphism(&["x", "z", "y"], &["x", "z", "y"]);
    f.apply(AcMove::Swap { i: 1, j: 2 });
    f.apply(AcMove::DropGenerator);
    out.push(("prop12", f.finish()));

    out
}

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/certs");
    std::fs::create_dir_all(&dir).expect("create data/certs");
    for (name, cert) in certificates() {
        let path = dir.join(format!("{name}.cert"));
        std::fs::write(&path, cert.to_text(WordFormat::Compact)).expect("write certificate");
        println!("{name}: {} steps, end {}", cert.steps.len(), cert.end);
    }
}
