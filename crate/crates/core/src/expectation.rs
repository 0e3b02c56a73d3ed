//! Expected numbers of block-pattern factors in a uniformly random word.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::naming::FactorNames;
use crate::patterns::{count_with_names, BlockSignature};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationQuery {
    pub n: u64,
    pub alpha: u32,
    pub mu: BlockSignature,
}

impl ExpectationQuery {
    pub fn new(n: u64, alpha: u32, mu: BlockSignature) -> Result<ExpectationQuery> {
        if n < 1 {
            return Err(Error::InvalidArgument(
                "word length must be positive".into(),
            ));
        }
        if alpha < 2 {
            return Err(Error::InvalidArgument(
                "alphabet size must be at least 2".into(),
            ));
        }
        if mu.k() as u64 > n {
            return Err(Error::InvalidArgument(format!(
                "k = {} exceeds n = {n}",
                mu.k()
            )));
        }
        Ok(ExpectationQuery { n, alpha, mu })
    }

    pub fn k(&self) -> usize {
        self.mu.k()
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Set partitions of `k` blocks whose class sizes follow `mu`:
/// `k! / prod_s ((s!)^mu_s * mu_s!)`.
pub fn partition_count(mu: &BlockSignature) -> BigInt {
    let denom = (1..=mu.k()).fold(BigInt::one(), |acc, s| {
        let count = mu.mu(s);
        acc * num_traits::pow(factorial(s as u64), count as usize) * factorial(count as u64)
    });
    factorial(mu.k() as u64) / denom
}

/// Ways to give `classes` distinct values from an alphabet of `size` words: the falling factorial.
fn falling(size: &BigInt, classes: u32) -> BigInt {
    let mut acc = BigInt::one();
    for l in 0..classes {
        let term = size - l;
        if term <= BigInt::zero() {
            return BigInt::zero();
        }
        acc *= term;
    }
    acc
}

/// Probability that a fixed length-`km` window has block signature `mu`.
pub fn window_probability(alpha: u32, m: u64, mu: &BlockSignature) -> BigRational {
    let size = num_traits::pow(BigInt::from(alpha), m as usize);
    let numer = partition_count(mu) * falling(&size, mu.num_classes());
    let denom = num_traits::pow(size, mu.k());
    BigRational::new(numer, denom)
}

pub fn expected_block_patterns_exact(q: &ExpectationQuery) -> BigRational {
    let k = q.k() as u64;
    let top = q.n / k;
    if top == 0 {
        return BigRational::zero();
    }
    // every term has denominator dividing alpha^(k * top)
    let alpha = BigInt::from(q.alpha);
    let coef = partition_count(&q.mu);
    let classes = q.mu.num_classes();
    let mut numer = BigInt::zero();
    let mut size = BigInt::one();
    for m in 1..=top {
        size *= &alpha;
        let positions = q.n + 1 - k * m;
        let ways = falling(&size, classes);
        if ways.is_zero() {
            continue;
        }
        // alpha^(km) * alpha^(k(top - m)) = alpha^(k top)
        let lift = num_traits::pow(alpha.clone(), (k * (top - m)) as usize);
        numer += &coef * ways * positions * lift;
    }
    BigRational::new(numer, num_traits::pow(alpha, (k * top) as usize))
}

pub fn expected_block_patterns(q: &ExpectationQuery) -> f64 {
    rational_to_f64(&expected_block_patterns_exact(q))
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `sum_{m=1}^{M} (n + 1 - km) r^m` with `r = alpha^(1-k)` and `M = floor(n/k)`, summed in closed form.
pub fn expected_k_powers_closed(n: u64, k: u64, alpha: u32) -> Result<f64> {
    if k < 2 || n < k || alpha < 2 {
        return Err(Error::InvalidArgument(
            "need k >= 2, n >= k and alpha >= 2".into(),
        ));
    }
    let r = (alpha as f64).powi(1 - k as i32);
    let big_m = (n / k) as f64;
    let a = (n + 1) as f64;
    let rm = r.powf(big_m);
    let geometric = r * (1.0 - rm) / (1.0 - r);
    let weighted = r * (1.0 - (big_m + 1.0) * rm + big_m * rm * r) / ((1.0 - r) * (1.0 - r));
    Ok(a * geometric - k as f64 * weighted)
}

/// `sum_m (n + 1 - km) prod_{l<k} (1 - l / alpha^m)`.
pub fn expected_anti_powers(n: u64, k: u64, alpha: u32) -> Result<f64> {
    if k < 1 || alpha < 2 {
        return Err(Error::InvalidArgument("need k >= 1 and alpha >= 2".into()));
    }
    let mut total = 0.0;
    for m in 1..=n / k {
        let size = (alpha as f64).powf(m as f64);
        let p: f64 = (0..k).map(|l| 1.0 - l as f64 / size).product();
        if p <= 0.0 {
            continue;
        }
        total += (n + 1 - k * m) as f64 * p;
    }
    Ok(total)
}

pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// Average of `count_block_patterns` over all `alpha^n` words.
pub fn brute_force_expectation(q: &ExpectationQuery) -> Result<BigRational> {
    let total = (q.alpha as u64)
        .checked_pow(q.n as u32)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{}^{} words", q.alpha, q.n)))?;
    let n = q.n as usize;
    let alpha = q.alpha as u64;
    let sum: u64 = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut letters = vec![Letter(0); n];
            for slot in letters.iter_mut().rev() {
                *slot = Letter((code % alpha) as u32);
                code /= alpha;
            }
            count_with_names(&FactorNames::new(&letters), n, &q.mu)
        })
        .sum();
    Ok(BigRational::new(sum.into(), total.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    /// Half-width of the 99% normal-approximation interval.
    pub ci99: f64,
    pub trials: u64,
    pub seed: u64,
}

const Z99: f64 = 2.5758293035489004;
const CHUNK: u64 = 1024;

/// Counts over words drawn from ChaCha8 seeded with `seed`; chunk `c` of
/// 1024 trials uses stream `c`, so the result does not depend on scheduling.
pub fn monte_carlo_expectation(
    q: &ExpectationQuery,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if trials < 100 {
        return Err(Error::InvalidArgument(
            "at least 100 trials are required".into(),
        ));
    }
    let n = q.n as usize;
    let chunks = trials.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(trials - c * CHUNK);
            let mut letters = vec![Letter(0); n];
            let (mut s, mut ss) = (0u128, 0u128);
            for _ in 0..count {
                letters
                    .iter_mut()
                    .for_each(|l| *l = Letter(rng.gen_range(0..q.alpha)));
                let x = count_with_names(&FactorNames::new(&letters), n, &q.mu) as u128;
                s += x;
                ss += x * x;
            }
            (s, ss)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let t = trials as f64;
    let mean = sum as f64 / t;
    // (T * SS - S^2) / (T (T - 1)), numerator exact in integers
    let spread = (trials as u128 * sum_sq - sum * sum) as f64;
    let variance = spread / (t * (t - 1.0));
    Ok(MonteCarloEstimate {
        mean,
        ci99: Z99 * (variance / t).sqrt(),
        trials,
        seed,
    })
}
