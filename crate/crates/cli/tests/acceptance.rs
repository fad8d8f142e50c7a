//! Acceptance suite: one line per criterion, `PASS` or `FAIL` with a reason.
//!
//! Run with `cargo test --release -p ac-workbench-cli --test acceptance -- --nocapture`.

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use acwb::composition::{compose, expand_substitutions, transport_certificate};
use acwb::knot::{balance, eliminate, wirtinger, CrossingTable, EliminationScript, EliminationStep};
use acwb::laurent::{det2, evans_matrix, ge2_reduce, multiply_factors, Ge2Factor, Ge2Outcome, LaurentPoly, DEFAULT_GE2_BUDGET};
use acwb::moves::{neighbors, ChainKind};
use acwb::presentation::parse_corpus;
use acwb::search::{enumerate_perfect, minimize, trivialize, SearchLimits, SearchOutcome};
use acwb::triviality::{abelianization_snf, is_perfect, smith_normal_form, todd_coxeter, ToddCoxeterOutcome};
use acwb::{apply_move, verify_certificate, AcMove, Certificate, Letter, Matrix, Presentation, Word};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")).join(rel)
}

fn data(rel: &str) -> String {
    std::fs::read_to_string(data_path(rel)).unwrap_or_else(|e| panic!("cannot read {rel}: {e}"))
}

fn pres(s: &str) -> Presentation {
    s.parse().unwrap()
}

fn corpus(name: &str) -> Vec<Presentation> {
    parse_corpus(&data(&format!("corpora/{name}.pres"))).unwrap()
}

fn cert(name: &str) -> Certificate {
    Certificate::parse(&data(&format!("certs/{name}.cert"))).unwrap()
}

fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::normalize((0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))))
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    for name in ["prop11a", "prop11b", "prop11c", "prop11d", "prop13"] {
        let c = cert(name);
        let t = Instant::now();
        let report = verify_certificate(&c);
        slowest = slowest.max(t.elapsed());
        ensure!(report.ok, "{name}: {:?}", report.failure);
        ensure!(c.end.canonical_key() == Presentation::standard(2).canonical_key(), "{name} ends at {}", c.end);
    }
    let subs = verify_certificate(&cert("prop13")).substitution_steps;
    ensure!(subs == 1, "prop13 uses {subs} substitutions");

    let c = cert("prop12");
    let t = Instant::now();
    let report = verify_certificate(&c);
    slowest = slowest.max(t.elapsed());
    ensure!(report.ok, "prop12: {:?}", report.failure);
    ensure!(report.kind() == ChainKind::Conditional, "prop12 should flag its automorphisms");
    let kinds: HashSet<_> = c.steps.iter().map(|m| m.keyword()).collect();
    ensure!(kinds.contains("ADD") && kinds.contains("DROP") && kinds.contains("AUT"), "prop12 steps: {kinds:?}");
    // x⁴ = yx²y⁻¹x⁻¹yx²y⁻¹ and y = [x², y]³
    let x4 = Word::generator(1).pow(4);
    let rhs: Word = "yxxYXyxxY".parse().unwrap();
    let comm: Word = "xxyXXY".parse().unwrap();
    let target = Presentation::new(2, vec![x4.multiply(&rhs.inverse()), Word::generator(2).multiply(&comm.pow(3).inverse())])
        .unwrap();
    ensure!(c.end.canonical_key() == target.canonical_key(), "prop12 ends at {}", c.end);
    ensure!(slowest < Duration::from_secs(1), "slowest replay {slowest:?}");
    Ok(format!("6 certificates verify, slowest replay {slowest:.1?}"))
}

fn criterion_2() -> Outcome {
    let limits = SearchLimits::default();
    let mut notes = Vec::new();
    for name in ["prop11a", "prop11b", "prop11d"] {
        let p = &corpus(name)[0];
        let t = Instant::now();
        let outcome = trivialize(p, &limits).unwrap();
        let elapsed = t.elapsed();
        let SearchOutcome::Found { certificate, stats } = outcome else {
            return Err(format!("{name}: {outcome:?}"));
        };
        let report = verify_certificate(&certificate);
        ensure!(report.ok && report.kind() == ChainKind::Elementary, "{name}: certificate {:?}", report.failure);
        ensure!(elapsed < Duration::from_secs(600), "{name} took {elapsed:?}");
        notes.push(format!("{name} {} states", stats.states));
    }
    Ok(notes.join(", "))
}

fn sweep(max_len: usize, budget: usize) -> Outcome {
    let list = enumerate_perfect(2, max_len);
    let limits = SearchLimits::with_states(budget);
    let mut worst = 0;
    for p in &list {
        match trivialize(p, &limits).unwrap() {
            SearchOutcome::Found { certificate, stats } => {
                ensure!(verify_certificate(&certificate).ok, "certificate for {p} fails");
                worst = worst.max(stats.states);
            }
            other => return Err(format!("{p}: {other:?}")),
        }
    }
    Ok(format!("{} presentations trivialized, at most {worst} states each", list.len()))
}

fn criterion_3() -> Outcome {
    sweep(8, 1_000_000)
}

fn criterion_4() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_acw"))
        .arg("search")
        .arg(data_path("corpora/ak3.pres"))
        .env_remove("ACW_MAX_STATES")
        .env_remove("ACW_MAX_RELATOR_LEN")
        .env_remove("ACW_MAX_TOTAL_LEN")
        .env_remove("ACW_STRATEGY")
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure!(out.status.code() == Some(2), "exit {:?}: {stdout}", out.status.code());
    let line = stdout.lines().find(|l| l.starts_with("exhausted")).unwrap_or("").to_string();
    ensure!(!line.is_empty(), "no exhaustion line in {stdout}");
    Ok(format!("exit 2, {line}"))
}

fn criterion_5() -> Outcome {
    let table: CrossingTable = data("knots/fig1.crossings").parse().map_err(|e| format!("{e}"))?;
    let p = wirtinger(&table);
    // x_a = x_b^±1 x_c x_b^∓1 for each crossing
    let relations: [(i64, i64, i64, i64); 14] = [
        (1, 10, 14, 1),
        (2, 10, 1, -1),
        (3, 1, 2, -1),
        (4, 6, 3, -1),
        (5, 12, 4, 1),
        (6, 7, 5, -1),
        (7, 4, 6, -1),
        (8, 1, 7, 1),
        (9, 11, 8, -1),
        (10, 14, 9, 1),
        (11, 2, 10, -1),
        (12, 1, 11, -1),
        (13, 5, 12, 1),
        (14, 1, 13, 1),
    ];
    for (k, &(a, b, c, s)) in relations.iter().enumerate() {
        let expect = Word::from_signed(&[-a, s * b, c, -s * b]).unwrap();
        ensure!(p.relators()[k] == expect, "relator {} is {:?}", k + 1, p.relators()[k]);
    }
    let script: EliminationScript = data("knots/fig1.elim").parse().map_err(|e| format!("{e}"))?;
    let three = eliminate(&p, &script).map_err(|e| format!("{e}"))?.presentation;
    ensure!(three.canonical_key() == pres("<x,y,z | XzYXyxzXYxyZ, YXyxZXYxyxzXYx>").canonical_key(), "got {three}");
    let balanced = balance(&three, &"Xyz".parse().unwrap()).map_err(|e| format!("{e:?}"))?;
    let solve = EliminationScript { discard: None, steps: vec![EliminationStep::Solve { relator: 3, generator: 3 }] };
    let two = eliminate(&balanced, &solve).map_err(|e| format!("{e}"))?.presentation;
    ensure!(two.total_length() == 25, "balanced pair has length {}", two.total_length());
    ensure!(two.canonical_key() == pres("<x,y | XYxYXyxYYxyXy, YXyyXYxyxYYx>").canonical_key(), "got {two}");
    let t = Instant::now();
    let m = minimize(&two, 20, &SearchLimits::default()).unwrap();
    let elapsed = t.elapsed();
    ensure!(m.reached_target && verify_certificate(&m.certificate).ok, "minimize stopped at {}", m.certificate.end);
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    Ok(format!("length 25 to {} in {elapsed:.1?}", m.certificate.end.total_length()))
}

fn criterion_6() -> Outcome {
    let list = corpus("trivial");
    ensure!(list.len() == 6, "{} bundled trivial presentations", list.len());
    let (mut complete, mut pairs) = (0, 0);
    for p in &list {
        for q in &list {
            let r = compose(p, q).map_err(|e| format!("{e}"))?;
            ensure!(is_perfect(&r), "{p} ∘ {q} is not perfect");
            if let ToddCoxeterOutcome::Order(n) = todd_coxeter(&r, 100_000) {
                ensure!(n == 1, "{p} ∘ {q} has order {n}");
                complete += 1;
            }
            pairs += 1;
        }
    }
    let chains = [
        cert("prop11a"),
        cert("prop11b"),
        cert("prop11c"),
        expand_substitutions(&cert("prop13")).map_err(|(i, e)| format!("step {i}: {e}"))?,
        cert("prop11a"),
    ];
    for (c, q) in chains.iter().zip([&list[1], &list[2], &list[4], &list[5], &list[3]]) {
        let t = transport_certificate(c, q).map_err(|e| format!("{e}"))?;
        let report = verify_certificate(&t);
        ensure!(report.ok, "transport onto {q}: {:?}", report.failure);
        ensure!(t.end.canonical_key() == q.canonical_key(), "transport ends at {}", t.end);
    }
    Ok(format!("{pairs} compositions perfect, {complete} enumerated to order 1, 5 transports verify"))
}

/// `d_k = D_k / D_(k-1)` where `D_k` is the gcd of all `k × k` minors.
fn minor_gcd_diagonal(m: &Matrix<BigInt>) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
            s.push(last);
            s
        }))
        .collect()
    }
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                g = g.gcd(&m.minor(&rows, &cols).determinant());
            }
        }
        if g.is_zero() {
            out.push(BigInt::zero());
            prev = BigInt::zero();
        } else {
            out.push(&g / &prev);
            prev = g;
        }
    }
    out
}

/// Length-decreasing Nielsen moves on a pair; a basis of F₂ ends at two
/// distinct letters.
fn nielsen_basis(u: &Word, v: &Word) -> bool {
    let (mut a, mut b) = (u.clone(), v.clone());
    loop {
        if a.len() == 1 && b.len() == 1 {
            return a.letters()[0].generator() != b.letters()[0].generator();
        }
        if a.is_empty() || b.is_empty() {
            return false;
        }
        let total = a.len() + b.len();
        let candidates = [
            (a.multiply(&b), b.clone()),
            (a.multiply(&b.inverse()), b.clone()),
            (b.multiply(&a), b.clone()),
            (b.inverse().multiply(&a), b.clone()),
            (a.clone(), b.multiply(&a)),
            (a.clone(), b.multiply(&a.inverse())),
            (a.clone(), a.multiply(&b)),
            (a.clone(), a.inverse().multiply(&b)),
        ];
        match candidates.into_iter().find(|(x, y)| x.len() + y.len() < total) {
            Some((x, y)) => (a, b) = (x, y),
            None => return false,
        }
    }
}

fn reduced_words(max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = [(1, true), (1, false), (2, true), (2, false)].iter().map(|&(g, s)| Letter::new(g, s)).collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.letters().last() != Some(&l.inverse()) {
                    next.push(w.multiply(&Word::letter(l)));
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Permutations of `0..n` as image vectors; composition applies `a` first.
fn perm_group_order(gens: &[Vec<usize>]) -> usize {
    let n = gens[0].len();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

fn relator_holds(r: &Word, gens: &[Vec<usize>]) -> bool {
    let n = gens[0].len();
    let inverses: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| {
            let mut inv = vec![0; n];
            for (i, &j) in g.iter().enumerate() {
                inv[j] = i;
            }
            inv
        })
        .collect();
    (0..n).all(|start| {
        let end = r.letters().iter().fold(start, |i, l| {
            let g = l.generator() - 1;
            if l.is_positive() { gens[g][i] } else { inverses[g][i] }
        });
        end == start
    })
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

fn reflection(n: usize) -> Vec<usize> {
    (0..n).map(|i| (n - i) % n).collect()
}

/// Presentations with a faithful permutation representation of their
/// generators; orders up to 24.
fn small_groups() -> Vec<(Presentation, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    for n in [1, 2, 3, 5, 7, 12, 24] {
        out.push((Presentation::new(1, vec![Word::generator(1).pow(n as i64)]).unwrap(), vec![cycle(n)]));
    }
    for n in [3, 4, 5, 6, 12] {
        let p = Presentation::new(
            2,
            vec![Word::generator(1).pow(n as i64), Word::generator(2).pow(2), "xyxy".parse().unwrap()],
        )
        .unwrap();
        out.push((p, vec![cycle(n), reflection(n)]));
    }
    // Z2 × Z3 and Z4 × Z2 acting on disjoint blocks
    let block = |a: Vec<usize>, b: Vec<usize>, off: usize| -> Vec<usize> { a.into_iter().chain(b.into_iter().map(|i| i + off)).collect() };
    out.push((pres("<x,y | xx, yyy, xyXY>"), vec![block(cycle(2), vec![0, 1, 2], 2), block(vec![0, 1], cycle(3), 2)]));
    out.push((pres("<x,y | xxxx, yy, xyXY>"), vec![block(cycle(4), vec![0, 1], 4), block(vec![0, 1, 2, 3], cycle(2), 4)]));
    // quaternion group as left multiplication on itself, elements ±1, ±i, ±j, ±k
    let qmul = |a: usize, b: usize| -> usize {
        let table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
        let signs = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
        let (sa, ua) = (a / 4, a % 4);
        let (sb, ub) = (b / 4, b % 4);
        let s = (sa + sb + if signs[ua][ub] < 0 { 1 } else { 0 }) % 2;
        s * 4 + table[ua][ub]
    };
    let left = |g: usize| -> Vec<usize> { (0..8).map(|b| qmul(g, b)).collect() };
    out.push((pres("<x,y | xxxx, xxYY, yxYx>"), vec![left(1), left(2)]));
    // A4 and S4 on four points
    out.push((pres("<x,y | xx, yyy, xyxyxy>"), vec![vec![1, 0, 3, 2], vec![0, 2, 3, 1]]));
    out.push((pres("<x,y | xx, yyy, xyxyxyxy>"), vec![vec![1, 0, 2, 3], vec![0, 2, 3, 1]]));
    // Z3 ⋊ Z4, the dicyclic group of order 12
    out.push((pres("<x,y | xxxxxx, xxxYY, yxYx>"), {
        // elements a^i b^j, i < 6, j < 2, b a b⁻¹ = a⁻¹, b² = a³
        let idx = |i: usize, j: usize| i % 6 + 6 * j;
        let a: Vec<usize> = (0..12).map(|e| idx(e % 6 + 1, e / 6)).collect();
        let b: Vec<usize> = (0..12)
            .map(|e| {
                let (i, j) = (e % 6, e / 6);
                if j == 0 { idx((6 - i) % 6, 1) } else { idx((6 - i) % 6 + 3, 0) }
            })
            .collect();
        vec![a, b]
    }));
    out
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let rows: Vec<Vec<BigInt>> = (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()).collect();
        let m = Matrix::from_rows(rows);
        let snf = smith_normal_form(&m);
        let mut got: Vec<BigInt> = snf.diagonal.iter().map(|d| d.abs()).collect();
        got.resize(r.min(c), BigInt::zero());
        ensure!(got == minor_gcd_diagonal(&m), "SNF of {m:?}: {got:?}");
    }

    let words = reduced_words(6);
    let partners = reduced_words(8);
    let mut primitive = 0;
    for u in &words {
        let oracle = partners.iter().any(|v| nielsen_basis(u, v));
        ensure!(u.is_primitive_rank2() == oracle, "primitivity of {u} (oracle {oracle})");
        primitive += oracle as usize;
    }

    let groups = small_groups();
    for (p, perms) in &groups {
        ensure!(p.relators().iter().all(|r| relator_holds(r, perms)), "representation of {p} breaks a relator");
        let expect = perm_group_order(perms);
        let got = todd_coxeter(p, 100_000);
        ensure!(got == ToddCoxeterOutcome::Order(expect), "{p}: {got:?}, expected {expect}");
    }
    for (text, order) in [
        ("<x | xxxxx>", 5),
        ("<x,y | xx, yyy, xyxy>", 6),
        ("<x,y | XyyxYYY, xxYXY>", 1),
        ("<x,y | yxyXX, xyxXXXX>", 3),
    ] {
        let got = todd_coxeter(&pres(text), 100_000);
        ensure!(got == ToddCoxeterOutcome::Order(order), "{text}: {got:?}");
    }
    Ok(format!(
        "200 SNF, {} words ({primitive} primitive), {} groups; <x,y | yxyXX, xyxXXXX> has order 3",
        words.len(),
        groups.len()
    ))
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let mut p = LaurentPoly::zero(2);
    for _ in 0..rng.gen_range(1..=3) {
        let e = vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
        let c = *[-3, -2, -1, 1, 2, 3].choose(rng).unwrap();
        p = &p + &LaurentPoly::monomial(2, e, BigInt::from(c));
    }
    p
}

fn random_unit(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let c = if rng.gen_bool(0.5) { 1 } else { -1 };
    LaurentPoly::monomial(2, vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)], BigInt::from(c))
}

fn criterion_8() -> Outcome {
    let e = evans_matrix();
    ensure!(det2(&e).is_one(), "det(Evans) = {}", det2(&e));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in 0..100 {
        let depth = rng.gen_range(1..=6);
        let factors: Vec<Ge2Factor> = (0..depth)
            .map(|_| match rng.gen_range(0..5) {
                0 => Ge2Factor::Diagonal(random_unit(&mut rng), random_unit(&mut rng)),
                1 | 2 => Ge2Factor::Elementary { row: 0, col: 1, p: random_poly(&mut rng) },
                _ => Ge2Factor::Elementary { row: 1, col: 0, p: random_poly(&mut rng) },
            })
            .collect();
        let m = multiply_factors(2, &factors);
        match ge2_reduce(&m, DEFAULT_GE2_BUDGET).map_err(|e| format!("{e}"))? {
            Ge2Outcome::Factorization(found) => ensure!(multiply_factors(2, &found) == m, "product {k} does not round-trip"),
            Ge2Outcome::GaveUp { .. } => return Err(format!("gave up on product {k}")),
        }
    }
    let evans = ge2_reduce(&e, DEFAULT_GE2_BUDGET).map_err(|e| format!("{e}"))?;
    ensure!(matches!(evans, Ge2Outcome::GaveUp { .. }), "Evans matrix factored: {evans:?}");
    Ok("det(Evans) = 1, 100 products factored, Evans gave up".into())
}

fn random_presentation(rng: &mut ChaCha8Rng) -> Presentation {
    let rank = rng.gen_range(1..=3);
    let count = rng.gen_range(1..=3);
    Presentation::new(rank, (0..count).map(|_| random_word(rng, rank, 10)).collect()).unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let p = random_presentation(&mut rng);
        let mut rels: Vec<Word> = p
            .relators()
            .iter()
            .map(|r| {
                let (_, core) = r.cyclic_reduce();
                let mut r = core.rotate(rng.gen_range(0..=core.len().max(1) - 1));
                if rng.gen_bool(0.5) {
                    r = r.inverse();
                }
                r.conjugate_by(&random_word(&mut rng, p.gen_count(), 5))
            })
            .collect();
        rels.shuffle(&mut rng);
        let q = Presentation::new(p.gen_count(), rels).unwrap();
        ensure!(q.canonical_key() == p.canonical_key(), "key of {p} differs from {q}");
        ensure!(q.canonical_key().to_presentation(p.gen_count()).canonical_key() == p.canonical_key(), "key of {p} not idempotent");
    }

    let mut samples = 0;
    while samples < 500 {
        let p = random_presentation(&mut rng);
        let n = p.relator_count();
        let i = rng.gen_range(0..n);
        let m = match rng.gen_range(0..4) {
            0 if n > 1 => AcMove::RightMultiply { i, j: (i + 1) % n, sign: if rng.gen_bool(0.5) { acwb::moves::Sign::Plus } else { acwb::moves::Sign::Minus } },
            1 => AcMove::Invert { i },
            2 => AcMove::Conjugate { i, by: random_word(&mut rng, p.gen_count(), 4) },
            _ => match neighbors(&p, 30).choose(&mut rng) {
                Some((m, _)) => m.clone(),
                None => continue,
            },
        };
        let q = apply_move(&p, &m).map_err(|e| format!("{m:?} on {p}: {e}"))?;
        ensure!(abelianization_snf(&q).diagonal == abelianization_snf(&p).diagonal, "{m:?} changes the SNF of {p}");
        samples += 1;
    }

    for _ in 0..1000 {
        let rank = rng.gen_range(1..=3);
        let [u, v, w] = [0; 3].map(|_| random_word(&mut rng, rank, 12));
        ensure!(u.multiply(&v).multiply(&w) == u.multiply(&v.multiply(&w)), "associativity fails on {u}, {v}, {w}");
        ensure!(u.inverse().inverse() == u, "inversion is not an involution on {u}");
        ensure!(u.multiply(&u.inverse()).is_empty(), "u·u⁻¹ ≠ 1 for {u}");
        let images: Vec<Word> = (0..rank).map(|_| random_word(&mut rng, 3, 5)).collect();
        let lhs = u.multiply(&v).substitute(&images).unwrap();
        let rhs = u.substitute(&images).unwrap().multiply(&v.substitute(&images).unwrap());
        ensure!(lhs == rhs, "substitution is not a homomorphism on {u}, {v}");
    }
    Ok("1000 key perturbations, 500 SNF-preserving moves, 1000 word-algebra samples".into())
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("certificate replication", criterion_1),
        ("automated cracking", criterion_2),
        ("desk-scale length-8 sweep", criterion_3),
        ("AK(3) exhausts", criterion_4),
        ("knot pipeline", criterion_5),
        ("composition", criterion_6),
        ("oracle equivalence", criterion_7),
        ("Laurent GE2", criterion_8),
        ("invariant suites", criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1}s)", k + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({why}; {secs:.1}s)", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
#[ignore = "long: trivializes every perfect presentation of total length at most 10"]
fn length_10_sweep() {
    let result = sweep(10, 10_000_000);
    println!("length 10: {result:?}");
    assert!(result.is_ok());
}
