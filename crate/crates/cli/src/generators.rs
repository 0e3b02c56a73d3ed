use blockpat_core::generators::{self as g, GammaRule, SesquipowerSeed};
use blockpat_core::{Angle, Error, InfiniteWord, Mechanical, Real, Result, Word};
use clap::{Args, ValueEnum};

pub const NAMES: &[&str] = &[
    "thue-morse",
    "fibonacci",
    "mechanical",
    "sesquipower",
    "recurrent-avoider",
    "gamma-word",
    "inf-alphabet",
    "lower-bound-word",
    "sigma-avoider",
];

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Upper,
    Lower,
}

/// Parameters shared by every generator; each generator reads the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct GenParams {
    /// Block count for recurrent-avoider, gamma-word, lower-bound-word, sigma-avoider
    #[arg(long = "param-k", id = "param_k", value_name = "K")]
    pub k: Option<u64>,
    /// Angle: p/q, a decimal, or the preset "fibonacci"
    #[arg(long)]
    pub theta: Option<String>,
    /// Starting point; defaults to 0, or to theta for the fibonacci preset
    #[arg(long)]
    pub x0: Option<String>,
    /// Fractional bits for decimal angles
    #[arg(long, default_value_t = 64)]
    pub prec: u32,
    #[arg(long, value_enum, default_value_t = Variant::Upper)]
    pub variant: Variant,
    /// Comma-separated v_1,v_2,...; the last word repeats
    #[arg(long = "seed-words", value_name = "WORDS")]
    pub seed_words: Option<String>,
    /// gamma_i = ratio^(i-1); defaults to k+1
    #[arg(long = "gamma-ratio", value_name = "R")]
    pub gamma_ratio: Option<u64>,
    #[arg(long = "param-sigma", id = "param_sigma", value_name = "SIGMA")]
    pub sigma: Option<u64>,
}

pub enum Generated {
    Infinite(InfiniteWord),
    Finite(Word),
}

fn need<T>(value: Option<T>, flag: &str, name: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidArgument(format!("{name} needs --{flag}")))
}

fn angle(p: &GenParams) -> Result<Angle> {
    let theta = need(p.theta.as_deref(), "theta", "mechanical")?;
    let theta_value = Real::parse(theta)?;
    let x0 = match (&p.x0, &theta_value) {
        (Some(x), _) => Real::parse(x)?,
        (None, Real::GoldenConjugate) => Real::GoldenConjugate,
        (None, _) => Real::rational(0, 1)?,
    };
    Ok(Angle::new(theta_value, x0)?.with_precision(p.prec))
}

pub fn build(name: &str, p: &GenParams) -> Result<Generated> {
    use Generated::*;
    Ok(match name {
        "thue-morse" => Infinite(g::thue_morse()),
        "fibonacci" => Infinite(g::fibonacci_word()),
        "mechanical" => {
            let variant = match p.variant {
                Variant::Upper => Mechanical::Upper,
                Variant::Lower => Mechanical::Lower,
            };
            Infinite(g::mechanical(&angle(p)?, variant))
        }
        "sesquipower" => {
            let list = need(p.seed_words.as_deref(), "seed-words", name)?;
            let words = list
                .split(',')
                .map(Word::parse)
                .collect::<Result<Vec<_>>>()?;
            Infinite(g::sesquipower(SesquipowerSeed::from_list(words)?)?)
        }
        "recurrent-avoider" => Infinite(g::recurrent_avoider(need(p.k, "param-k", name)?)?),
        "gamma-word" => {
            let k = need(p.k, "param-k", name)?;
            Infinite(g::gamma_word(k, p.gamma_ratio.map(GammaRule::geometric))?)
        }
        "inf-alphabet" => Infinite(g::infinite_alphabet_power_free()),
        "lower-bound-word" => Finite(g::lower_bound_word(need(p.k, "param-k", name)? as usize)?),
        "sigma-avoider" => {
            let k = need(p.k, "param-k", name)? as usize;
            Finite(g::sigma_avoider_word(
                k,
                need(p.sigma, "param-sigma", name)?,
            )?)
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "unknown generator {name:?}; expected one of {}",
                NAMES.join(", ")
            )))
        }
    })
}
