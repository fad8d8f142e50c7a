mod input;
mod repl;

use std::io::{self, IsTerminal};
use std::process::ExitCode;

use acwb::composition::{compose, compose_pow, expand_substitutions, transport_certificate};
use acwb::knot::{balance, eliminate, wirtinger, BalanceError, CrossingTable, EliminationScript};
use acwb::laurent::{det2, evans_matrix, ge2_reduce, Ge2Outcome, Mat2, DEFAULT_GE2_BUDGET};
use acwb::moves::{expand_certificate, ExpansionLevel};
use acwb::search::{ac_equivalent, minimize, trivialize, SearchLimits, SearchOutcome, Strategy};
use acwb::series::{gen_series, Family, SeriesSpec};
use acwb::triviality::{abelianization_snf, describe_abelianization, is_perfect, todd_coxeter, ToddCoxeterOutcome, DEFAULT_MAX_COSETS};
use acwb::{verify_certificate, AcMove, Certificate, Presentation, WordFormat};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

const EXIT_ERROR: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_NOT_PERFECT: u8 = 3;

#[derive(Parser)]
#[command(name = "acw", version, about = "Andrews-Curtis equivalence workbench")]
struct Cli {
    /// Word rendering in output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Compact)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Compact,
    Numeric,
}

impl From<Format> for WordFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Compact => WordFormat::Compact,
            Format::Numeric => WordFormat::Numeric,
        }
    }
}

#[derive(Args, Clone)]
struct Limits {
    #[arg(long, env = "ACW_MAX_RELATOR_LEN", default_value_t = 20)]
    max_relator_len: usize,
    #[arg(long, env = "ACW_MAX_TOTAL_LEN", default_value_t = 34)]
    max_total_len: usize,
    /// Number of distinct presentations (keys) stored before giving up.
    #[arg(long, env = "ACW_MAX_STATES", default_value_t = 10_000_000)]
    max_states: usize,
    /// greedy, bfs or iddfs.
    #[arg(long, env = "ACW_STRATEGY", default_value = "greedy")]
    strategy: Strategy,
    #[arg(long, env = "ACW_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Single worker, reproducible output; pass `--deterministic false` with `--jobs`.
    #[arg(long, env = "ACW_DETERMINISTIC", default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    deterministic: bool,
}

impl From<&Limits> for SearchLimits {
    fn from(l: &Limits) -> Self {
        SearchLimits {
            max_relator_len: l.max_relator_len,
            max_total_len: l.max_total_len,
            max_states: l.max_states,
            strategy: l.strategy,
            jobs: l.jobs,
            deterministic: l.deterministic,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and normalize presentations.
    Parse { input: String },
    /// Canonical key (cyclic cores, least rotations, sorted).
    Canon { input: String },
    /// Abelianization and perfectness.
    Abelian { input: String },
    /// Smith normal form of the exponent-sum matrix.
    Snf { input: String },
    /// Todd-Coxeter coset enumeration over the trivial subgroup.
    Tc {
        input: String,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Search for a trivialization.
    Search {
        input: String,
        #[command(flatten)]
        limits: Limits,
        /// Write the certificate here instead of standard output.
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Search for an AC-equivalence from P to Q.
    Equiv {
        p: String,
        q: String,
        #[command(flatten)]
        limits: Limits,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Search for an equivalent presentation of total length at most the target.
    Minimize {
        input: String,
        #[arg(long)]
        target: usize,
        #[command(flatten)]
        limits: Limits,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Perfect balanced presentations up to a total length, one per key.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long)]
        max_len: usize,
    },
    /// Replay and check a certificate.
    Verify {
        cert: String,
        /// Also expand macros and substitutions and re-verify.
        #[arg(long)]
        expand: bool,
    },
    /// Composition P∘Q: the relators of P with the relators of Q substituted.
    Compose { p: String, q: String },
    /// The k-fold composition P∘…∘P.
    ComposePow { p: String, k: usize },
    /// Carry a certificate for P over to P∘Q.
    Transport {
        cert: String,
        q: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Wirtinger presentation of a crossing table.
    Wirtinger { table: String },
    /// Tietze elimination by script; accepts a crossing table or a presentation.
    Eliminate { input: String, script: String },
    /// Append a word, checking that the result is perfect.
    Balance { input: String, word: String },
    /// Members of known families.
    Series {
        family: Family,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// The word w for the ms family.
        #[arg(long)]
        word: Option<String>,
        /// Emit corpus lines instead of presentation literals.
        #[arg(long)]
        corpus: bool,
    },
    /// The Evans matrix, its determinant and a reduction attempt.
    Evans {
        #[arg(long, default_value_t = DEFAULT_GE2_BUDGET)]
        budget: usize,
    },
    /// Try to factor a 2×2 Laurent matrix into elementary and diagonal matrices.
    Ge2 {
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_GE2_BUDGET)]
        budget: usize,
    },
    /// Interactive move session.
    Repl { input: Option<String> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn emit_certificate(cert: &Certificate, output: Option<&str>, format: WordFormat) -> Result<()> {
    let text = cert.to_text(format);
    match output {
        Some(path) => input::write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn outcome_code(outcome: &SearchOutcome) -> u8 {
    match outcome {
        SearchOutcome::Found { .. } => 0,
        SearchOutcome::Exhausted { .. } => EXIT_EXHAUSTED,
        SearchOutcome::NotPerfect => EXIT_NOT_PERFECT,
    }
}

fn report_search(outcome: &SearchOutcome, output: Option<&str>, format: WordFormat) -> Result<u8> {
    match outcome {
        SearchOutcome::Found { certificate, stats } => {
            println!(
                "found: {} steps, {} states, {:.2?}",
                certificate.steps.len(),
                stats.states,
                stats.elapsed
            );
            emit_certificate(certificate, output, format)?;
        }
        SearchOutcome::Exhausted { reason, stats } => {
            println!("exhausted: {reason} after {} states, {:.2?}", stats.states, stats.elapsed);
        }
        SearchOutcome::NotPerfect => println!("not_perfect: abelianization is not trivial"),
    }
    Ok(outcome_code(outcome))
}

/// The `elementary:` line of a verification report.
fn elementary_line(substitutions: usize, conditional: &[(usize, &'static str)]) -> String {
    if substitutions == 0 && conditional.is_empty() {
        return "elementary: yes".into();
    }
    let mut parts = Vec::new();
    if substitutions > 0 {
        let s = if substitutions == 1 { "" } else { "s" };
        parts.push(format!("{substitutions} substitution macro{s}"));
    }
    if !conditional.is_empty() {
        let at: Vec<String> = conditional.iter().map(|(i, kw)| format!("{kw} at step {}", i + 1)).collect();
        let s = if conditional.len() == 1 { "" } else { "s" };
        parts.push(format!("{} conditional step{s}: {}", conditional.len(), at.join(", ")));
    }
    format!("elementary: no ({})", parts.join("; "))
}

fn verify(path: &str, expand: bool, format: WordFormat) -> Result<u8> {
    let cert = input::certificate(path)?;
    let report = verify_certificate(&cert);
    println!("steps: {}", report.step_count);
    println!("start: {}", cert.start.display(format));
    println!("end: {}", cert.end.display(format));
    println!("end key: {}", cert.end.canonical_key());
    if let Some(failure) = &report.failure {
        println!("verified: no");
        println!("failure: {failure}");
        return Ok(EXIT_ERROR);
    }
    println!("verified: yes");
    let conditional: Vec<(usize, &'static str)> =
        report.semantic_steps.iter().map(|c| (c.index, c.step.keyword())).collect();
    println!("{}", elementary_line(report.substitution_steps, &conditional));
    let adds = cert.steps.iter().filter(|m| matches!(m, AcMove::AddGenerator)).count();
    let drops = cert.steps.iter().filter(|m| matches!(m, AcMove::DropGenerator)).count();
    if adds + drops > 0 {
        println!("stable: yes ({adds} ADD, {drops} DROP)");
    }
    let standard = Presentation::standard(cert.end.gen_count());
    if cert.end.canonical_key() == standard.canonical_key() {
        println!("ends at standard presentation: yes");
    }
    if expand {
        let expanded = expand_certificate(&cert, ExpansionLevel::MacrosAndSubstitutions)
            .map_err(|(i, e)| anyhow::anyhow!("expansion failed at step {}: {e}", i + 1))?;
        let again = verify_certificate(&expanded);
        println!(
            "expanded: {} steps, verified: {}",
            expanded.steps.len(),
            if again.ok { "yes" } else { "no" }
        );
        if !again.ok {
            return Ok(EXIT_ERROR);
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let format: WordFormat = cli.format.into();
    let show = |p: &Presentation| p.display(format).to_string();
    match cli.command {
        Command::Parse { input } => {
            for p in input::presentations(&input)? {
                println!("{}", show(&p));
                println!(
                    "  generators: {}, relators: {}, total length: {}, balanced: {}",
                    p.gen_count(),
                    p.relator_count(),
                    p.total_length(),
                    if p.is_balanced() { "yes" } else { "no" }
                );
            }
        }
        Command::Canon { input } => {
            for p in input::presentations(&input)? {
                println!("{}", p.canonical_key());
            }
        }
        Command::Abelian { input } => {
            for p in input::presentations(&input)? {
                println!(
                    "{}: {} (perfect: {})",
                    show(&p),
                    describe_abelianization(&p),
                    if is_perfect(&p) { "yes" } else { "no" }
                );
            }
        }
        Command::Snf { input } => {
            for p in input::presentations(&input)? {
                let snf = abelianization_snf(&p);
                let d: Vec<String> = snf.diagonal.iter().map(|x| x.to_string()).collect();
                println!("{}", d.join(" "));
            }
        }
        Command::Tc { input, max_cosets } => {
            let mut code = 0;
            for p in input::presentations(&input)? {
                match todd_coxeter(&p, max_cosets) {
                    ToddCoxeterOutcome::Order(n) => println!("{n}"),
                    ToddCoxeterOutcome::Exhausted { cosets_defined } => {
                        println!("exhausted after {cosets_defined} cosets");
                        code = EXIT_EXHAUSTED;
                    }
                }
            }
            return Ok(code);
        }
        Command::Search { input, limits, output } => {
            let list = input::presentations(&input)?;
            if list.len() > 1 && output.is_some() {
                bail!("--output needs a single presentation");
            }
            let mut code = 0;
            for p in list {
                println!("{}", show(&p));
                let outcome = trivialize(&p, &SearchLimits::from(&limits))?;
                code = code.max(report_search(&outcome, output.as_deref(), format)?);
            }
            return Ok(code);
        }
        Command::Equiv { p, q, limits, output } => {
            let (p, q) = (input::presentation(&p)?, input::presentation(&q)?);
            let outcome = ac_equivalent(&p, &q, &SearchLimits::from(&limits))?;
            return report_search(&outcome, output.as_deref(), format);
        }
        Command::Minimize { input, target, limits, output } => {
            let p = input::presentation(&input)?;
            let m = minimize(&p, target, &SearchLimits::from(&limits))?;
            let end = &m.certificate.end;
            println!("best: {} (total length {})", show(end), end.total_length());
            match m.exhaustion {
                None => println!("target reached: {} states, {:.2?}", m.stats.states, m.stats.elapsed),
                Some(e) => println!("target not reached: {e} after {} states", m.stats.states),
            }
            emit_certificate(&m.certificate, output.as_deref(), format)?;
            return Ok(if m.reached_target { 0 } else { EXIT_EXHAUSTED });
        }
        Command::Enumerate { gens, max_len } => {
            let list = acwb::search::enumerate_perfect(gens, max_len);
            print!("{}", acwb::presentation::format_corpus(&list, format));
            eprintln!("{} presentations", list.len());
        }
        Command::Verify { cert, expand } => return verify(&cert, expand, format),
        Command::Compose { p, q } => {
            let (p, q) = (input::presentation(&p)?, input::presentation(&q)?);
            println!("{}", show(&compose(&p, &q)?));
        }
        Command::ComposePow { p, k } => {
            let p = input::presentation(&p)?;
            println!("{}", show(&compose_pow(&p, k)?));
        }
        Command::Transport { cert, q, output } => {
            let cert = input::certificate(&cert)?;
            let q = input::presentation(&q)?;
            let cert = if cert.steps.iter().any(|m| matches!(m, AcMove::Substitute { .. })) {
                expand_substitutions(&cert).map_err(|(i, e)| anyhow::anyhow!("step {}: {e}", i + 1))?
            } else {
                cert
            };
            let moved = transport_certificate(&cert, &q)?;
            emit_certificate(&moved, output.as_deref(), format)?;
        }
        Command::Wirtinger { table } => {
            let t: CrossingTable = input::text(&table)?.parse().with_context(|| format!("cannot parse {table}"))?;
            println!("{}", show(&wirtinger(&t)));
        }
        Command::Eliminate { input: source, script } => {
            let p = if source.ends_with(".crossings") {
                let t: CrossingTable = input::text(&source)?.parse().with_context(|| format!("cannot parse {source}"))?;
                wirtinger(&t)
            } else {
                input::presentation(&source)?
            };
            let script: EliminationScript =
                input::text(&script)?.parse().with_context(|| format!("cannot parse {script}"))?;
            let e = eliminate(&p, &script)?;
            println!("{}", show(&e.presentation));
            println!("named: {}", e.display_named());
        }
        Command::Balance { input: source, word } => {
            let p = input::presentation(&source)?;
            match balance(&p, &input::word(&word)?) {
                Ok(q) => println!("{}", show(&q)),
                Err(BalanceError::Invalid { determinant }) => {
                    println!("invalid: determinant {determinant}");
                    return Ok(EXIT_ERROR);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Series { family, params, word, corpus } => {
            let word = word.as_deref().map(input::word).transpose()?;
            let p = gen_series(&SeriesSpec { family, params, word })?;
            if corpus {
                print!("{}", acwb::presentation::format_corpus(&[p], format));
            } else {
                println!("{}", show(&p));
            }
        }
        Command::Evans { budget } => {
            let e = evans_matrix();
            print!("{e}");
            println!("det: {}", det2(&e));
            return Ok(report_ge2(&e, budget)?);
        }
        Command::Ge2 { matrix, budget } => {
            let m: Mat2 = input::text(&matrix)?.parse().with_context(|| format!("cannot parse {matrix}"))?;
            println!("det: {}", det2(&m));
            return Ok(report_ge2(&m, budget)?);
        }
        Command::Repl { input: start } => {
            let start = match start {
                Some(s) => input::presentation(&s)?,
                None => Presentation::standard(2),
            };
            if io::stdin().is_terminal() {
                eprintln!("commands: show, len, key, history, move <step>, undo, save <file>, quit");
            }
            repl::run(start, format, io::stdin().lock(), io::stdout().lock())?;
        }
    }
    Ok(0)
}

fn report_ge2(m: &Mat2, budget: usize) -> Result<u8> {
    match ge2_reduce(m, budget)? {
        Ge2Outcome::Factorization(factors) => {
            println!("factorization ({} factors, verified by multiplication):", factors.len());
            for f in factors {
                println!("  {f}");
            }
            Ok(0)
        }
        Ge2Outcome::GaveUp { attempts } => {
            println!("gave_up after {attempts} reduction attempts");
            Ok(EXIT_EXHAUSTED)
        }
    }
}
