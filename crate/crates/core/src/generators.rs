//! Infinite words and explicit finite constructions.
//!
//! Every infinite generator returns an [`InfiniteWord`] whose rule resolves a
//! single position without materializing a prefix, so recursive constructions
//! (Fibonacci, sesquipowers, the recurrent avoider) descend their recursion
//! per query.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::word::{Alphabet, InfiniteWord, Letter, Word};

const ZERO: Letter = Letter(0);
const ONE: Letter = Letter(1);

pub fn thue_morse() -> InfiniteWord {
    InfiniteWord::new(Alphabet::Finite(2), "thue-morse", |i| {
        Ok(Letter((i - 1).count_ones() & 1))
    })
}

/// Lengths of `S_1 = 0`, `S_2 = 01`, `S_n = S_{n-1} S_{n-2}` up to the first that covers `i`.
fn fibonacci_lengths(i: u64) -> Vec<u64> {
    let mut lens = vec![1u64, 2];
    while *lens.last().unwrap() < i {
        let n = lens.len();
        lens.push(lens[n - 1].saturating_add(lens[n - 2]));
    }
    lens
}

pub fn fibonacci_word() -> InfiniteWord {
    InfiniteWord::new(Alphabet::Finite(2), "fibonacci", |i| {
        let lens = fibonacci_lengths(i);
        let mut n = lens.len() - 1;
        let mut i = i;
        while n >= 2 {
            if i > lens[n - 1] {
                i -= lens[n - 1];
                n -= 2;
            } else {
                n -= 1;
            }
        }
        // S_1 = "0", S_2 = "01"
        Ok(if n == 1 && i == 2 { ONE } else { ZERO })
    })
}

/// The finite word `S_n` of the Fibonacci recurrence (1-based `n`).
pub fn fibonacci_finite(n: usize) -> Word {
    let (mut prev, mut cur) = (vec![0u32], vec![0u32, 1]);
    if n <= 1 {
        return Word::from_codes(&prev, Alphabet::Finite(2)).unwrap();
    }
    for _ in 2..n {
        let next = [cur.as_slice(), prev.as_slice()].concat();
        prev = std::mem::replace(&mut cur, next);
    }
    Word::from_codes(&cur, Alphabet::Finite(2)).unwrap()
}

/// A real number in `[0, 1)` as an angle or starting point.
#[derive(Clone, PartialEq, Eq)]
pub enum Real {
    /// Exact rational, decided with integer arithmetic.
    Rational(BigRational),
    /// A decimal approximation, evaluated in fixed point with certified rounding.
    Decimal(BigRational),
    /// `2 - phi`, the reduced Fibonacci angle.
    GoldenConjugate,
}

impl Real {
    fn reduced(value: BigRational) -> BigRational {
        let floor = value.floor();
        value - floor
    }

    pub fn rational(num: i64, den: i64) -> Result<Real> {
        if den == 0 {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Real::Rational(Real::reduced(BigRational::new(
            num.into(),
            den.into(),
        ))))
    }

    pub fn decimal(text: &str) -> Result<Real> {
        parse_decimal(text).map(|r| Real::Decimal(Real::reduced(r)))
    }

    /// Parses `p/q`, a decimal, or the preset names `golden` / `fibonacci`.
    pub fn parse(text: &str) -> Result<Real> {
        let text = text.trim();
        match text {
            "golden" | "fibonacci" => return Ok(Real::GoldenConjugate),
            _ => {}
        }
        if let Some((p, q)) = text.split_once('/') {
            let p: i64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
            let q: i64 = q
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
            return Real::rational(p, q);
        }
        Real::decimal(text)
    }

    fn is_zero(&self) -> bool {
        match self {
            Real::Rational(r) | Real::Decimal(r) => r.is_zero(),
            Real::GoldenConjugate => false,
        }
    }

    /// `floor(value * 2^bits)`.
    fn fixed(&self, bits: u32) -> BigUint {
        match self {
            Real::Rational(r) | Real::Decimal(r) => {
                let scaled = r.numer().clone() << bits as usize;
                scaled.div_floor(r.denom()).to_biguint().unwrap()
            }
            Real::GoldenConjugate => {
                // 2 - phi = (3 - sqrt 5) / 2
                let one = BigUint::one() << bits as usize;
                let root5 = (BigUint::from(5u32) << (2 * bits as usize)).sqrt();
                // floor((3*2^b - floor(sqrt(5)*2^b)) / 2) is within one unit of the true value
                (one * 3u32 - root5) >> 1usize
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Rational(r) | Real::Decimal(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::GoldenConjugate => (3.0 - 5f64.sqrt()) / 2.0,
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Rational(r) => write!(f, "{r}"),
            Real::Decimal(r) => write!(f, "~{}", r.to_f64().unwrap_or(f64::NAN)),
            Real::GoldenConjugate => f.write_str("2-phi"),
        }
    }
}

fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad decimal {text:?}"));
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = BigRational::new(numer, denom);
    Ok(if neg { -value } else { value })
}

/// Angle `theta` and initial position `x0` of a mechanical word.
#[derive(Debug, Clone)]
pub struct Angle {
    theta: Real,
    x0: Real,
    prec: u32,
}

impl Angle {
    pub const MIN_PREC: u32 = 64;

    pub fn new(theta: Real, x0: Real) -> Result<Angle> {
        if theta.is_zero() {
            return Err(Error::InvalidArgument("theta reduces to 0 mod 1".into()));
        }
        Ok(Angle {
            theta,
            x0,
            prec: Angle::MIN_PREC,
        })
    }

    /// Fractional bits for decimal evaluation; clamped to at least 64.
    pub fn with_precision(mut self, bits: u32) -> Angle {
        self.prec = bits.max(Angle::MIN_PREC);
        self
    }

    /// `theta = x0 = 2 - phi`, whose upper mechanical word is the Fibonacci word.
    pub fn fibonacci() -> Angle {
        Angle::new(Real::GoldenConjugate, Real::GoldenConjugate).unwrap()
    }

    pub fn theta(&self) -> &Real {
        &self.theta
    }

    pub fn x0(&self) -> &Real {
        &self.x0
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanical {
    /// letter 1 on `[1 - theta, 1)`
    Upper,
    /// letter 1 on `(1 - theta, 1)`
    Lower,
}

pub fn mechanical(angle: &Angle, variant: Mechanical) -> InfiniteWord {
    let label = format!(
        "mechanical {:?} theta={:?} x0={:?}",
        variant, angle.theta, angle.x0
    );
    match (&angle.theta, &angle.x0) {
        (Real::Rational(theta), Real::Rational(x0)) => {
            let (p, q) = (theta.numer().clone(), theta.denom().clone());
            let (a, b) = (x0.numer().clone(), x0.denom().clone());
            let modulus = &q * &b;
            let step = &p * &b;
            let start = &a * &q;
            let threshold = (&q - &p) * &b;
            InfiniteWord::new(Alphabet::Finite(2), label, move |n| {
                let v = (BigInt::from(n - 1) * &step + &start).mod_floor(&modulus);
                let one = match variant {
                    Mechanical::Upper => v >= threshold,
                    Mechanical::Lower => v > threshold,
                };
                Ok(if one { ONE } else { ZERO })
            })
        }
        _ => {
            // 64 guard bits cover the rounding accumulated by (n - 1) * theta for any u64 n
            let bits = angle.prec + 64;
            let theta = angle.theta.fixed(bits);
            let x0 = angle.x0.fixed(bits);
            let modulus = BigUint::one() << bits as usize;
            let threshold = &modulus - &theta;
            let margin = BigUint::one() << 64usize;
            InfiniteWord::new(Alphabet::Finite(2), label, move |n| {
                let v = (BigUint::from(n - 1) * &theta + &x0) % &modulus;
                let near = |a: &BigUint, b: &BigUint| {
                    if a > b {
                        a - b <= margin
                    } else {
                        b - a <= margin
                    }
                };
                if near(&v, &threshold) || v <= margin || &modulus - &v <= margin {
                    return Err(Error::PrecisionExhausted { index: n });
                }
                Ok(if v > threshold { ONE } else { ZERO })
            })
        }
    }
}

/// `M = ceil(1 / min(theta, 1 - theta)) + 1`.
///
/// The Fibonacci word avoids `M = 4` powers, but this is not true for every irrational
/// `theta`: the critical exponent of a Sturmian word depends on every partial quotient of
/// `theta`, while `M` only depends on the first. For `theta = sqrt 2 - 1`, `M = 4` and the
/// word contains 4-powers.
pub fn sturmian_power_bound(angle: &Angle) -> u64 {
    let exact = |r: &BigRational| {
        let (p, q) = (
            r.numer().to_biguint().unwrap(),
            r.denom().to_biguint().unwrap(),
        );
        let small = (&q - &p).min(p);
        Integer::div_ceil(&q, &small).to_u64().unwrap() + 1
    };
    match &angle.theta {
        Real::Rational(r) | Real::Decimal(r) => exact(r),
        Real::GoldenConjugate => {
            let bits = angle.prec + 64;
            let theta = angle.theta.fixed(bits);
            let one = BigUint::one() << bits as usize;
            let small = (&one - &theta).min(theta);
            Integer::div_ceil(&one, &small).to_u64().unwrap() + 1
        }
    }
}

type SeedRule = dyn Fn(u64) -> Word + Send + Sync;

/// The sequence `v_1, v_2, ...` inducing a sesquipower.
#[derive(Clone)]
pub struct SesquipowerSeed {
    rule: Arc<SeedRule>,
    alphabet: Alphabet,
}

impl SesquipowerSeed {
    pub fn new<F>(alphabet: Alphabet, rule: F) -> SesquipowerSeed
    where
        F: Fn(u64) -> Word + Send + Sync + 'static,
    {
        SesquipowerSeed {
            rule: Arc::new(rule),
            alphabet,
        }
    }

    /// `v_n = words[n - 1]`, with the last word repeated forever.
    pub fn from_list(words: Vec<Word>) -> Result<SesquipowerSeed> {
        if words.is_empty() {
            return Err(Error::InvalidArgument("empty seed list".into()));
        }
        let alphabet = words
            .iter()
            .map(Word::alphabet)
            .reduce(|a, b| match (a, b) {
                (Alphabet::Finite(x), Alphabet::Finite(y)) => Alphabet::Finite(x.max(y)),
                _ => Alphabet::Unbounded,
            })
            .unwrap();
        Ok(SesquipowerSeed::new(alphabet, move |n| {
            words[(n as usize).min(words.len()) - 1].clone()
        }))
    }

    pub fn v(&self, n: u64) -> Word {
        (self.rule)(n)
    }
}

/// Limit of `w_1 = v_1`, `w_{n+1} = w_n v_{n+1} w_n`.
pub fn sesquipower(seed: SesquipowerSeed) -> Result<InfiniteWord> {
    if seed.v(1).is_empty() {
        return Err(Error::PreconditionViolated("v_1 must be nonempty".into()));
    }
    let alphabet = seed.alphabet;
    Ok(InfiniteWord::new(alphabet, "sesquipower", move |i| {
        // lens[n - 1] = |w_n|
        let mut lens = vec![seed.v(1).len() as u64];
        while *lens.last().unwrap() < i {
            let n = lens.len() as u64;
            let last = *lens.last().unwrap();
            lens.push(
                last.saturating_mul(2)
                    .saturating_add(seed.v(n + 1).len() as u64),
            );
        }
        let mut level = lens.len();
        let mut i = i;
        while level > 1 {
            let inner = lens[level - 2];
            if i <= inner {
                level -= 1;
                continue;
            }
            let v = seed.v(level as u64);
            let mid = v.len() as u64;
            if i <= inner + mid {
                return Ok(v.letters()[(i - inner - 1) as usize]);
            }
            i -= inner + mid;
            level -= 1;
        }
        Ok(seed.v(1).letters()[(i - 1) as usize])
    }))
}

/// Limit of `w_0 = 0`, `w_{n+1} = w_n 1^{(k-3)|w_n|} w_n`; `|w_n| = (k-1)^n`.
pub fn recurrent_avoider(k: u64) -> Result<InfiniteWord> {
    if k < 6 {
        return Err(Error::KTooSmall { min: 6, got: k });
    }
    Ok(InfiniteWord::new(
        Alphabet::Finite(2),
        format!("recurrent-avoider k={k}"),
        move |i| {
            let mut lens = vec![1u64];
            while *lens.last().unwrap() < i {
                let last = *lens.last().unwrap();
                lens.push(last.saturating_mul(k - 1));
            }
            let mut i = i;
            for &inner in lens.iter().rev().skip(1) {
                if i <= inner {
                    continue;
                }
                if i <= inner * (k - 2) {
                    return Ok(ONE);
                }
                i -= inner * (k - 2);
            }
            Ok(ZERO)
        },
    ))
}

type GammaTerm = dyn Fn(u64) -> Option<u64> + Send + Sync;

/// Positions `gamma_1 < gamma_2 < ...` of the letter 1; `None` marks a term past `u64`.
#[derive(Clone)]
pub struct GammaRule {
    term: Arc<GammaTerm>,
}

impl GammaRule {
    pub fn new<F>(term: F) -> GammaRule
    where
        F: Fn(u64) -> Option<u64> + Send + Sync + 'static,
    {
        GammaRule {
            term: Arc::new(term),
        }
    }

    /// `gamma_i = ratio^(i-1)`.
    pub fn geometric(ratio: u64) -> GammaRule {
        GammaRule::new(move |i| ratio.checked_pow(u32::try_from(i - 1).ok()?))
    }
}

pub fn gamma_word(k: u64, gamma: Option<GammaRule>) -> Result<InfiniteWord> {
    if k < 4 {
        return Err(Error::KTooSmall { min: 4, got: k });
    }
    let gamma = gamma.unwrap_or_else(|| GammaRule::geometric(k + 1));
    Ok(InfiniteWord::new(
        Alphabet::Finite(2),
        format!("gamma-word k={k}"),
        move |j| {
            let mut prev: Option<u64> = None;
            for i in 1.. {
                let Some(g) = (gamma.term)(i) else {
                    return Ok(ZERO);
                };
                if let Some(p) = prev {
                    if p.checked_mul(k + 1).is_some_and(|bound| g < bound) {
                        return Err(Error::GrowthViolation { term: i });
                    }
                }
                if g == j {
                    return Ok(ONE);
                }
                if g > j {
                    return Ok(ZERO);
                }
                prev = Some(g);
            }
            unreachable!()
        },
    ))
}

/// `a_1^2 a_2^4 a_3^8 ...` with `a_i` encoded as the integer `i`.
pub fn infinite_alphabet_power_free() -> InfiniteWord {
    InfiniteWord::new(Alphabet::Unbounded, "inf-alphabet", |i| {
        Ok(Letter(u64::BITS - 1 - (i + 1).leading_zeros()))
    })
}

fn zeros_ones(parts: &[(u32, usize)]) -> Word {
    let codes: Vec<u32> = parts
        .iter()
        .flat_map(|&(letter, count)| std::iter::repeat_n(letter, count))
        .collect();
    Word::from_codes(&codes, Alphabet::Finite(2)).unwrap()
}

/// `1 (0^{k-1} 1)^{k-2} 0^{k-2} 1 0^{k-2} (1 0^{k-1})^{k-2} 1`, of length `2k^2 - 2k - 1`,
/// avoiding both `k`-powers and `k`-anti-powers.
pub fn lower_bound_word(k: usize) -> Result<Word> {
    if k < 4 {
        return Err(Error::KTooSmall {
            min: 4,
            got: k as u64,
        });
    }
    let mut parts = vec![(1, 1)];
    for _ in 0..k - 2 {
        parts.extend([(0, k - 1), (1, 1)]);
    }
    parts.extend([(0, k - 2), (1, 1), (0, k - 2)]);
    for _ in 0..k - 2 {
        parts.extend([(1, 1), (0, k - 1)]);
    }
    parts.push((1, 1));
    Ok(zeros_ones(&parts))
}

/// Exponent `k - floor((sqrt(8 sigma + 1) + 1) / 2) - 1` of the pair-budget avoider.
pub fn sigma_avoider_exponent(k: u64, sigma: u64) -> i64 {
    let root = (8 * sigma + 1).isqrt();
    k as i64 - root.div_ceil(2) as i64 - 1
}

/// `0^{k-1} (1 0^{k-1})^e`, which avoids `k`-powers and every length-`km`
/// block-pattern with at most `sigma` equal block pairs.
pub fn sigma_avoider_word(k: usize, sigma: u64) -> Result<Word> {
    if k < 2 {
        return Err(Error::KTooSmall {
            min: 2,
            got: k as u64,
        });
    }
    if sigma < 1 {
        return Err(Error::InvalidArgument("sigma must be at least 1".into()));
    }
    let e = sigma_avoider_exponent(k as u64, sigma);
    if e < 0 {
        return Err(Error::DegenerateExponent);
    }
    let mut parts = vec![(0, k - 1)];
    for _ in 0..e {
        parts.extend([(1, 1), (0, k - 1)]);
    }
    Ok(zeros_ones(&parts))
}
