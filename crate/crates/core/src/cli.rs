//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and input errors, 3 when a search
//! or enumeration bound is hit.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::agraphs::{stallings_from_generators, AGraph};
use crate::error::Error;
use crate::genericity::{check_condition, survey, CheckMode, ParamSet, Rational, Sampling, SurveyOptions};
use crate::pirank::{primitivity_rank_with, Engine, SearchOptions, DEFAULT_MAX_STATES};
use crate::whitehead::{is_whitehead_nonprimitive_certificate, minimize};
use crate::wordmeasure::{compare, exact_expected_fix, DEFAULT_MAX_TUPLES};
use crate::words::{class_key, enumerate_words, sample_word_with, Alphabet, CyclicWord, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "primrank", version, about = "Primitivity rank and word measures in free groups")]
struct Cli {
    /// Rank of the ambient free group.
    #[arg(short = 'r', long = "rank", global = true, default_value_t = 2)]
    rank: usize,
    /// Seed for randomized commands; chosen at random and reported if omitted.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Emit JSON with the effective run configuration embedded.
    #[arg(long, global = true)]
    json: bool,
    /// Write graphs in Graphviz format to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    dot: Option<String>,
    /// Bound on quotient states explored by searches.
    #[arg(long = "max-states", global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: u64,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Primitivity rank and critical subgroups of a word.
    Pirank(PirankArgs),
    /// Whitehead primitivity test.
    Primitive(WordArg),
    /// Stallings graph of the subgroup generated by the given words.
    Stallings(GeneratorsArg),
    /// Folded wedge of the given words, without trimming.
    Fold(GeneratorsArg),
    /// Small cancellation and readability conditions.
    Check(CheckArgs),
    /// Fractions of generic words by length.
    Survey(SurveyArgs),
    /// Random reduced words.
    Sample(SampleArgs),
    /// All reduced words of a length.
    Enumerate(EnumerateArgs),
    /// Expected fixed points of the word measure on S_N.
    Wordmeasure(WordmeasureArgs),
}

#[derive(Args, Debug, Serialize)]
struct WordArg {
    word: String,
}

#[derive(Args, Debug, Serialize)]
struct PirankArgs {
    word: String,
    /// Quotient enumeration engine.
    #[arg(long, value_enum, default_value = "trace")]
    engine: EngineArg,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EngineArg {
    Trace,
    MergeClosure,
}

#[derive(Args, Debug, Serialize)]
struct GeneratorsArg {
    #[arg(required = true)]
    words: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
struct CheckArgs {
    word: String,
    #[arg(long, value_name = "P/Q")]
    lambda: Rational,
    #[arg(long, value_name = "P/Q")]
    mu: Rational,
    #[arg(long = "L", value_name = "K")]
    l: usize,
    /// Check every long subword of every cyclic permutation.
    #[arg(long, conflicts_with = "word_only")]
    full: bool,
    /// Check only the word itself (default).
    #[arg(long = "word-only")]
    word_only: bool,
}

#[derive(Args, Debug, Serialize)]
struct SurveyArgs {
    /// Inclusive range `A..B` or a comma-separated list.
    #[arg(long, value_parser = parse_lengths)]
    lengths: Lengths,
    #[arg(long, conflicts_with = "exhaustive")]
    samples: Option<u64>,
    #[arg(long)]
    exhaustive: bool,
    #[arg(long, value_name = "P/Q", requires_all = ["mu", "l"])]
    lambda: Option<Rational>,
    #[arg(long, value_name = "P/Q", requires_all = ["lambda", "l"])]
    mu: Option<Rational>,
    #[arg(long = "L", value_name = "K", requires_all = ["lambda", "mu"])]
    l: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
struct Lengths(Vec<usize>);

fn parse_lengths(s: &str) -> Result<Lengths, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad length {t:?}"));
    let v: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if v.is_empty() || v.contains(&0) {
        return Err("lengths must be positive".into());
    }
    Ok(Lengths(v))
}

#[derive(Args, Debug, Serialize)]
struct SampleArgs {
    length: usize,
    #[arg(long, default_value_t = 10)]
    samples: u64,
    /// Sample cyclically reduced words.
    #[arg(long)]
    cyclic: bool,
}

#[derive(Args, Debug, Serialize)]
struct EnumerateArgs {
    length: usize,
    /// Only cyclically reduced words.
    #[arg(long)]
    cyclic: bool,
    /// One representative per rotation/inversion class (implies --cyclic).
    #[arg(long)]
    classes: bool,
}

#[derive(Args, Debug, Serialize)]
struct WordmeasureArgs {
    word: String,
    #[arg(long = "N", default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// Exact value by enumeration of all tuples.
    #[arg(long)]
    exact: bool,
    /// Comma-separated degrees to compare against the prediction.
    #[arg(long, value_delimiter = ',')]
    compare: Option<Vec<usize>>,
}

/// Effective configuration, embedded in every JSON output. The thread count
/// is left out because it never affects results.
#[derive(Serialize)]
struct RunConfig<'a> {
    subcommand: &'a Command,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    max_states: u64,
    format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot: Option<&'a str>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    human: String,
    json: Value,
    graphs: Vec<AGraph>,
    randomized: bool,
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let seed = cli.seed.unwrap_or_else(rand::random);
    let result = match cli.threads {
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| execute(&cli, seed)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => execute(&cli, seed),
    };
    match result.and_then(|o| emit(&cli, seed, o, out)) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit { .. } => EXIT_LIMIT,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn emit(cli: &Cli, seed: u64, o: Output, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(path) = &cli.dot {
        let text: String = o.graphs.iter().map(AGraph::to_dot).collect();
        std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
    }
    let io = |e: std::io::Error| Failure::Usage(format!("cannot write output: {e}"));
    if cli.json {
        let config = RunConfig {
            subcommand: &cli.command,
            rank: cli.rank,
            seed: o.randomized.then_some(seed),
            max_states: cli.max_states,
            format: "json",
            dot: cli.dot.as_deref(),
        };
        let mut v = o.json;
        if let Value::Object(map) = &mut v {
            map.insert("config".into(), serde_json::to_value(&config).expect("config serializes"));
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("values serialize")).map_err(io)?;
    } else {
        if o.randomized {
            writeln!(out, "seed: {seed}").map_err(io)?;
        }
        write!(out, "{}", o.human).map_err(io)?;
    }
    Ok(())
}

fn word(s: &str, alphabet: Alphabet) -> Result<Word, Failure> {
    Ok(Word::parse(s, alphabet)?)
}

fn words(list: &[String], alphabet: Alphabet) -> Result<Vec<Word>, Failure> {
    list.iter().map(|s| word(s, alphabet)).collect()
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn execute(cli: &Cli, seed: u64) -> Result<Output, Failure> {
    let alphabet = Alphabet::new(cli.rank)?;
    let draws = matches!(cli.command, Command::Pirank(_) | Command::Stallings(_) | Command::Fold(_) | Command::Check(_));
    if cli.dot.is_some() && !draws {
        return Err(Failure::Usage("--dot is supported by pirank, stallings, fold and check".into()));
    }
    let search = SearchOptions {
        engine: Engine::Trace,
        max_states: cli.max_states,
    };
    let mut human = String::new();
    let h = &mut human;
    use std::fmt::Write as _;
    let (json, graphs, randomized) = match &cli.command {
        Command::Pirank(a) => {
            let w = word(&a.word, alphabet)?;
            let engine = match a.engine {
                EngineArg::Trace => Engine::Trace,
                EngineArg::MergeClosure => Engine::MergeClosure,
            };
            let rep = primitivity_rank_with(&w, alphabet, SearchOptions { engine, ..search })?;
            let _ = writeln!(h, "word: {}\npi: {}\ncrit: {}", rep.word, rep.pi_string(), rep.crit.len());
            for c in &rep.crit {
                let _ = writeln!(h, "  rank {} index {} basis {}", c.rank(), to_json(&c.index()), join(c.basis()));
            }
            let _ = writeln!(h, "quotients explored: {}", rep.quotients_explored);
            let graphs = rep.crit.iter().map(|c| c.graph().clone()).collect();
            (to_json(&rep), graphs, false)
        }
        Command::Primitive(a) => {
            let w = word(&a.word, alphabet)?;
            let (min, chain) = minimize(&w, cli.rank)?;
            let primitive = min.len() == 1;
            let core = CyclicWord::new(&w);
            let certificate = core.len() >= 2 && is_whitehead_nonprimitive_certificate(&core, cli.rank);
            let _ = writeln!(h, "primitive: {primitive}\nminimal: {min}\nmoves: {}", chain.len());
            let json = json!({
                "word": w,
                "primitive": primitive,
                "minimal": min,
                "chain": chain,
                "whitehead_certificate": certificate,
            });
            (json, vec![], false)
        }
        Command::Stallings(a) => {
            let sub = stallings_from_generators(&words(&a.words, alphabet)?, alphabet)?;
            let _ = writeln!(
                h,
                "rank: {}\nindex: {}\nbasis: {}\nvertices: {}\nedges: {}",
                sub.rank(),
                to_json(&sub.index()),
                join(sub.basis()),
                sub.graph().vertex_count(),
                sub.graph().volume()
            );
            (to_json(&sub), vec![sub.graph().clone()], false)
        }
        Command::Fold(a) => {
            let g = AGraph::wedge(&words(&a.words, alphabet)?, alphabet)?.fold();
            let _ = writeln!(h, "vertices: {}\nbase: {}", g.vertex_count(), g.base());
            for e in g.edges() {
                let _ = writeln!(h, "  {} -> {} {}", e.from, e.to, crate::words::Letter::new(e.generator, false));
            }
            (json!({ "graph": g, "rank": g.rank()? }), vec![g], false)
        }
        Command::Check(a) => {
            let w = word(&a.word, alphabet)?;
            let p = ParamSet {
                lambda: a.lambda,
                mu: a.mu,
                l: a.l,
                r: cli.rank,
            };
            let mode = if a.full { CheckMode::Full } else { CheckMode::WordOnly };
            let rep = check_condition(&w, &p, mode, cli.max_states)?;
            let _ = writeln!(
                h,
                "max piece: {} (C'(lambda): {})\nproper power: {}\nsubwords checked: {}\nall 2-letter subwords: {}\nin P: {}\nin P': {}",
                rep.max_piece_len,
                rep.c_prime_ok,
                rep.proper_power,
                rep.subwords.len(),
                rep.all_two_letter_subwords,
                to_json(&rep.in_p).as_str().unwrap_or_default(),
                to_json(&rep.in_p_prime).as_str().unwrap_or_default(),
            );
            let graphs = rep
                .subwords
                .iter()
                .flat_map(|s| [s.mu_readable.witness(), s.mu_l_readable.witness()])
                .flatten()
                .take(1)
                .cloned()
                .collect();
            (to_json(&rep), graphs, false)
        }
        Command::Survey(a) => {
            let sampling = if a.exhaustive {
                Sampling::Exhaustive
            } else {
                Sampling::Samples(a.samples.unwrap_or(500))
            };
            let params = match (a.lambda, a.mu, a.l) {
                (Some(lambda), Some(mu), Some(l)) => Some(ParamSet {
                    lambda,
                    mu,
                    l,
                    r: cli.rank,
                }),
                _ => None,
            };
            let opts = SurveyOptions {
                rank: cli.rank,
                lengths: a.lengths.0.clone(),
                sampling,
                params,
                seed,
                max_states: cli.max_states,
            };
            let table = survey(&opts)?;
            let _ = writeln!(h, "{:>4} {:>10} {:>16} {:>16} {:>16} {:>16}", "n", "words", "pi=r,Crit=F_r", "pi=r", "primitive", "proper power");
            for r in &table.rows {
                if let Some(e) = &r.error {
                    let _ = writeln!(h, "{:>4} error: {e}", r.n);
                    continue;
                }
                let f = |x: Option<crate::genericity::Fraction>| {
                    x.map_or(String::new(), |x| format!("{:.4}±{:.4}", x.value, x.radius()))
                };
                let _ = writeln!(
                    h,
                    "{:>4} {:>10} {:>16} {:>16} {:>16} {:>16}",
                    r.n,
                    r.words,
                    f(r.generic),
                    f(r.pi_r),
                    f(r.primitive),
                    f(r.proper_power)
                );
            }
            if let Some(d) = table.decay {
                let _ = writeln!(h, "decay fit: C = {:.4}, sigma = {:.4}, R^2 = {:.4}", d.c, d.sigma, d.r_squared);
            }
            (to_json(&table), vec![], sampling != Sampling::Exhaustive)
        }
        Command::Sample(a) => {
            let list = (0..a.samples)
                .map(|i| {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    sample_word_with(alphabet, a.length, a.cyclic, &mut rng)
                })
                .collect::<Result<Vec<Word>, Error>>()?;
            for w in &list {
                let _ = writeln!(h, "{w}");
            }
            (json!({ "words": list }), vec![], true)
        }
        Command::Enumerate(a) => {
            let mut list = Vec::new();
            for w in enumerate_words(alphabet, a.length, a.cyclic || a.classes) {
                if a.classes && class_key(&w).rep() != &w {
                    continue;
                }
                if list.len() as u64 >= cli.max_states {
                    return Err(Error::ResourceLimit {
                        what: "enumerated words".into(),
                        bound: cli.max_states,
                        explored: list.len() as u64,
                    }
                    .into());
                }
                let _ = writeln!(h, "{w}");
                list.push(w);
            }
            (json!({ "count": list.len(), "words": list }), vec![], false)
        }
        Command::Wordmeasure(a) => {
            let w = word(&a.word, alphabet)?;
            let degrees = a.compare.clone().unwrap_or_else(|| vec![a.n]);
            if degrees.contains(&0) {
                return Err(Failure::Usage("degrees must be positive".into()));
            }
            if a.exact {
                for &n in &degrees {
                    exact_expected_fix(&w, n, DEFAULT_MAX_TUPLES)?;
                }
            }
            let rep = compare(&w, alphabet, &degrees, a.samples, seed, DEFAULT_MAX_TUPLES, search)?;
            let pi = rep.pi.map_or("inf".to_string(), |p| p.to_string());
            let _ = writeln!(h, "word: {}\npi: {pi}\ncrit size: {}", rep.word, rep.crit_size);
            for r in &rep.rows {
                let e = &r.estimate;
                let _ = write!(h, "N={} mean_fix={:.6} stderr={:.6}", e.degree, e.mean_fix, e.stderr);
                if let Some(x) = e.exact {
                    let _ = write!(h, " exact={x}");
                }
                let _ = write!(h, " prediction={:.6}", r.prediction);
                if let Some(s) = r.normalized_stat {
                    let _ = write!(h, " normalized={s:.6}");
                }
                let _ = writeln!(h);
            }
            let json = if a.compare.is_some() {
                to_json(&rep)
            } else {
                let mut v = to_json(&rep.rows[0]);
                v["pi"] = to_json(&rep).get("pi").cloned().unwrap_or(Value::Null);
                v["crit_size"] = json!(rep.crit_size);
                v
            };
            (json, vec![], true)
        }
    };
    Ok(Output {
        human,
        json,
        graphs,
        randomized,
    })
}
