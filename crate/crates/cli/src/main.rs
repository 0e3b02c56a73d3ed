mod generators;

use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use blockpat_core::expectation::rational_to_f64;
use blockpat_core::word::parse_word_lines;
use blockpat_core::{
    block_signature, brute_force_expectation, contains, density_estimate, expected_block_patterns,
    max_avoiding_length, monte_carlo_expectation, AvoidanceSpec, BlockSignature, Constraint, Error,
    ExpectationQuery, Predicate, PrefixSet, SearchOptions, Word,
};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use generators::{GenParams, Generated};

#[derive(Debug, Parser)]
#[command(
    name = "blockpat",
    version,
    about = "Powers, anti-powers and block-patterns in words"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// The word itself; use `int:a,b,c` for integer letters
    #[arg(long, conflicts_with = "file")]
    word: Option<String>,
    /// File with one word per line (`#` starts a comment)
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Input {
    fn words(&self) -> Result<Vec<Word>, Failure> {
        let text = match (&self.word, &self.file) {
            (Some(w), _) => return Ok(vec![Word::parse(w)?]),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
            (None, None) => {
                let mut buf = String::new();
                io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
                buf
            }
        };
        let words = parse_word_lines(&text)?;
        if words.is_empty() {
            return Err(Failure::Usage("no input words".into()));
        }
        Ok(words)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the block signature and equal-pair count of each word
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Find the first factor that is a power, anti-power or pattern
    Detect {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "L", group = "family")]
        power: Option<usize>,
        #[arg(long, value_name = "K", group = "family")]
        anti: Option<usize>,
        #[arg(long, requires = "anti")]
        lambda: Option<usize>,
        /// K:SIGMA, at most SIGMA equal block pairs among K blocks
        #[arg(long, value_name = "K:SIGMA", group = "family")]
        budget: Option<String>,
    },
    /// Print a prefix of a generated word
    Gen {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(generators::NAMES))]
        name: String,
        #[arg(long)]
        len: Option<usize>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        sigma: Option<u64>,
        #[command(flatten)]
        params: GenParams,
    },
    /// Prefix membership sets and density proxies
    Density {
        #[arg(long = "gen", value_name = "NAME", value_parser = clap::builder::PossibleValuesParser::new(generators::NAMES))]
        generator: String,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "sigma")]
        lambda: Option<usize>,
        #[arg(long)]
        sigma: Option<u64>,
        #[arg(long)]
        nmax: u64,
        /// Start of the tail window; defaults to ceil(nmax / 2)
        #[arg(long)]
        tail: Option<u64>,
        #[command(flatten)]
        params: GenParams,
    },
    /// Longest words avoiding ell-powers and a block constraint
    Search {
        #[arg(long)]
        alpha: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_name = "K")]
        anti: usize,
        #[arg(long, conflicts_with = "budget")]
        lambda: Option<usize>,
        #[arg(long, value_name = "SIGMA")]
        budget: Option<u64>,
        #[arg(long)]
        cap: Option<u64>,
        /// Seconds
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, default_value_t = 8)]
        split: usize,
    },
    /// Expected number of block-pattern factors in a random word
    Expect {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        alpha: u32,
        /// Signature, e.g. `k=3;1:3` or `3,0,0`
        #[arg(long)]
        mu: String,
        /// Also enumerate all alpha^n words
        #[arg(long)]
        oracle: bool,
        /// Monte Carlo trials
        #[arg(long, value_name = "TRIALS")]
        mc: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Usage(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        if self.json {
            println!("{}", value());
        } else {
            println!("{}", text());
        }
    }
}

fn one_or_many(mut values: Vec<Value>) -> Value {
    if values.len() == 1 {
        values.pop().unwrap()
    } else {
        Value::Array(values)
    }
}

fn classify(out: &Output, input: &Input, k: usize) -> Result<(), Failure> {
    let words = input.words()?;
    let sigs = words
        .iter()
        .map(|w| block_signature(w, k))
        .collect::<Result<Vec<_>, _>>()?;
    out.emit(
        || {
            sigs.iter()
                .map(|s| format!("signature {} pairs={}", s.to_text(), s.equal_pair_count()))
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            one_or_many(
                words
                    .iter()
                    .zip(&sigs)
                    .map(|(w, s)| {
                        json!({
                            "word": w.to_text(),
                            "signature": s.to_text(),
                            "mu": s.as_slice(),
                            "pairs": s.equal_pair_count(),
                        })
                    })
                    .collect(),
            )
        },
    );
    Ok(())
}

fn parse_budget(text: &str) -> Result<(usize, u64), Failure> {
    let bad = || Failure::Usage(format!("--budget expects K:SIGMA, got {text:?}"));
    let (k, sigma) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        k.trim().parse().map_err(|_| bad())?,
        sigma.trim().parse().map_err(|_| bad())?,
    ))
}

fn detect(
    out: &Output,
    input: &Input,
    power: Option<usize>,
    anti: Option<usize>,
    lambda: Option<usize>,
    budget: Option<&str>,
) -> Result<(), Failure> {
    let pred = match (power, anti, budget) {
        (Some(k), _, _) => Predicate::Power { k },
        (_, Some(k), _) => match lambda {
            Some(lambda) => Predicate::KLambdaAntiPower { k, lambda },
            None => Predicate::AntiPower { k },
        },
        (_, _, Some(b)) => {
            let (k, sigma) = parse_budget(b)?;
            Predicate::PairBudget { k, sigma }
        }
        _ => {
            return Err(Failure::Usage(
                "one of --power, --anti or --budget is required".into(),
            ))
        }
    };
    if pred.k() == 0 {
        return Err(Failure::Usage("block count must be positive".into()));
    }
    let words = input.words()?;
    let found: Vec<_> = words
        .iter()
        .map(|w| {
            contains(w, pred).map(|occ| {
                let factor = w
                    .factor(occ.start, occ.start + pred.k() * occ.block_len - 1)
                    .unwrap();
                (occ, factor)
            })
        })
        .collect();
    out.emit(
        || {
            found
                .iter()
                .map(|f| match f {
                    Some((occ, factor)) => format!(
                        "match start={} block_len={} factor={}",
                        occ.start,
                        occ.block_len,
                        factor.to_text()
                    ),
                    None => "none".to_string(),
                })
                .collect::<Vec<_>>()
                .join("\n")
        },
        || {
            one_or_many(
                found
                    .iter()
                    .map(|f| match f {
                        Some((occ, factor)) => json!({"match": {
                            "start": occ.start,
                            "block_len": occ.block_len,
                            "factor": factor.to_text(),
                        }}),
                        None => json!({"match": null}),
                    })
                    .collect(),
            )
        },
    );
    Ok(())
}

fn gen(out: &Output, name: &str, len: Option<usize>, params: GenParams) -> Result<(), Failure> {
    let word = match generators::build(name, &params)? {
        Generated::Infinite(x) => {
            let len =
                len.ok_or_else(|| Failure::Usage(format!("{name} is infinite; pass --len")))?;
            x.prefix(len)?
        }
        Generated::Finite(w) => match len {
            Some(len) if len < w.len() => w
                .factor(1, len)
                .unwrap_or_else(|_| Word::empty(w.alphabet())),
            _ => w,
        },
    };
    out.emit(
        || word.to_text(),
        || json!({"name": name, "len": word.len(), "word": word.to_text()}),
    );
    Ok(())
}

fn density_json(set: &PrefixSet, lower: f64, upper: f64) -> Value {
    let mut value = serde_json::to_value(set).expect("prefix sets serialize");
    value["lower_proxy"] = json!(lower);
    value["upper_proxy"] = json!(upper);
    value
}

#[allow(clippy::too_many_arguments)]
fn density(
    out: &Output,
    name: &str,
    k: usize,
    lambda: Option<usize>,
    sigma: Option<u64>,
    n_max: u64,
    tail: Option<u64>,
    params: &GenParams,
) -> Result<(), Failure> {
    if k == 0 || n_max == 0 {
        return Err(Failure::Usage("--k and --nmax must be positive".into()));
    }
    let x = match generators::build(name, params)? {
        Generated::Infinite(x) => x,
        Generated::Finite(_) => return Err(Failure::Usage(format!("{name} is a finite word"))),
    };
    let set = match (lambda, sigma) {
        (_, Some(sigma)) => blockpat_core::d_set(&x, k, sigma, n_max)?,
        (lambda, None) => {
            let lambda = lambda.unwrap_or(1);
            if lambda == 0 || lambda > k {
                return Err(Failure::Usage(format!("--lambda must lie in 1..={k}")));
            }
            blockpat_core::ap_set(&x, k, lambda, n_max)?
        }
    };
    let est = match tail {
        Some(t) => blockpat_core::density::density_estimate_from(&set, t),
        None => density_estimate(&set),
    };
    out.emit(
        || {
            let label = match set.kind {
                blockpat_core::PrefixKind::AntiPower { k, lambda } => {
                    format!("AP k={k} lambda={lambda}")
                }
                blockpat_core::PrefixKind::PairsAtMost { k, sigma } => {
                    format!("D k={k} sigma={sigma}")
                }
                blockpat_core::PrefixKind::PairsAtLeast { k, sigma } => {
                    format!("D+ k={k} sigma={sigma}")
                }
            };
            let members: Vec<String> = set.members.iter().map(u64::to_string).collect();
            format!(
                "{label} n_max={} members={{{}}}\nlower_proxy={:.6} upper_proxy={:.6} tail=[{},{}]",
                set.n_max,
                members.join(","),
                est.lower_proxy,
                est.upper_proxy,
                est.tail_start,
                set.n_max
            )
        },
        || density_json(&set, est.lower_proxy, est.upper_proxy),
    );
    Ok(())
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("BP_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| {
                Failure::Usage(format!("BP_THREADS must be a positive integer, got {v:?}"))
            }),
        _ => Ok(None),
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    out: &Output,
    alpha: u32,
    ell: usize,
    k: usize,
    lambda: Option<usize>,
    budget: Option<u64>,
    cap: Option<u64>,
    timeout: Option<f64>,
    split: usize,
) -> Result<(), Failure> {
    let constraint = match (lambda, budget) {
        (Some(lambda), _) => Constraint::KLambda { k, lambda },
        (_, Some(sigma)) => Constraint::PairBudget { k, sigma },
        _ => Constraint::AntiPower { k },
    };
    let spec = AvoidanceSpec::new(alpha, ell, constraint)?;
    let time_cap = match timeout {
        Some(t) if t.is_finite() && t >= 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(Failure::Usage(format!("bad --timeout {t}"))),
        None => None,
    };
    let opts = SearchOptions {
        length_cap: cap,
        time_cap,
        split_depth: split,
        threads: threads_from_env()?,
    };
    let r = max_avoiding_length(&spec, &opts)?;
    out.emit(
        || {
            let rel = if r.truncated { ">=" } else { "=" };
            let tail = if r.truncated { " truncated" } else { "" };
            format!(
                "N{rel}{} witness={} nodes={}{tail}",
                r.threshold,
                r.witness.to_text(),
                r.nodes_explored
            )
        },
        || {
            json!({
                "threshold": r.threshold,
                "witness": r.witness.to_text(),
                "nodes": r.nodes_explored,
                "truncated": r.truncated,
                "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
            })
        },
    );
    if r.truncated {
        return Err(Failure::Inconclusive(format!(
            "search truncated; threshold is at least {}",
            r.threshold
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn expect(
    out: &Output,
    n: u64,
    k: usize,
    alpha: u32,
    mu: &str,
    oracle: bool,
    mc: Option<u64>,
    seed: u64,
) -> Result<(), Failure> {
    let mu = BlockSignature::parse(mu)?;
    if mu.k() != k {
        return Err(Failure::Usage(format!(
            "--mu has k = {} but --k is {k}",
            mu.k()
        )));
    }
    let q = ExpectationQuery::new(n, alpha, mu)?;
    let closed = expected_block_patterns(&q);
    let exact = oracle.then(|| brute_force_expectation(&q)).transpose()?;
    let estimate = mc
        .map(|trials| monte_carlo_expectation(&q, trials, seed))
        .transpose()?;
    out.emit(
        || {
            let mut line = format!("E={closed}");
            if let Some(r) = &exact {
                line += &format!(" oracle={r} ({})", rational_to_f64(r));
            }
            if let Some(e) = &estimate {
                line += &format!(" mc={:.6}±{:.6} trials={} seed={}", e.mean, e.ci99, e.trials, e.seed);
            }
            line
        },
        || {
            json!({
                "closed_form": closed,
                "oracle": exact.as_ref().map(|r| format!("{}/{}", r.numer(), r.denom())),
                "mc": estimate.map(|e| json!({"mean": e.mean, "ci99": e.ci99, "trials": e.trials, "seed": e.seed})),
            })
        },
    );
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = Output { json: cli.json };
    match cli.command {
        Command::Classify { input, k } => classify(&out, &input, k),
        Command::Detect {
            input,
            power,
            anti,
            lambda,
            budget,
        } => detect(&out, &input, power, anti, lambda, budget.as_deref()),
        Command::Gen {
            name,
            len,
            k,
            sigma,
            mut params,
        } => {
            params.k = k.or(params.k);
            params.sigma = sigma.or(params.sigma);
            gen(&out, &name, len, params)
        }
        Command::Density {
            generator,
            k,
            lambda,
            sigma,
            nmax,
            tail,
            params,
        } => density(&out, &generator, k, lambda, sigma, nmax, tail, &params),
        Command::Search {
            alpha,
            ell,
            anti,
            lambda,
            budget,
            cap,
            timeout,
            split,
        } => search(&out, alpha, ell, anti, lambda, budget, cap, timeout, split),
        Command::Expect {
            n,
            k,
            alpha,
            mu,
            oracle,
            mc,
            seed,
        } => expect(&out, n, k, alpha, &mu, oracle, mc, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
