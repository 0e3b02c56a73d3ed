//! Exhaustive search for the longest words avoiding both `ell`-powers and a
//! block constraint, giving the Ramsey-type thresholds `N_alpha`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::patterns::{choose2, contains, profile_keys, ClassProfile, Predicate};
use crate::word::{Alphabet, Letter, Word};

/// The block-pattern family a word must avoid alongside `ell`-powers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Constraint {
    AntiPower { k: usize },
    KLambda { k: usize, lambda: usize },
    PairBudget { k: usize, sigma: u64 },
}

impl Constraint {
    pub fn k(&self) -> usize {
        match *self {
            Constraint::AntiPower { k }
            | Constraint::KLambda { k, .. }
            | Constraint::PairBudget { k, .. } => k,
        }
    }

    pub fn predicate(&self) -> Predicate {
        match *self {
            Constraint::AntiPower { k } => Predicate::AntiPower { k },
            Constraint::KLambda { k, lambda } => Predicate::KLambdaAntiPower { k, lambda },
            Constraint::PairBudget { k, sigma } => Predicate::PairBudget { k, sigma },
        }
    }

    /// Whether `k` blocks spread over at most `distinct` values can form the pattern.
    fn feasible(&self, distinct: u128) -> bool {
        let k = self.k() as u128;
        let c = distinct.min(k).max(1);
        let (q, r) = ((k / c) as u64, (k % c) as u64);
        match *self {
            Constraint::AntiPower { .. } => c >= k,
            Constraint::KLambda { lambda, .. } => k.div_ceil(c) <= lambda as u128,
            Constraint::PairBudget { sigma, .. } => {
                r * choose2(q + 1) + (c as u64 - r) * choose2(q) <= sigma
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AvoidanceSpec {
    pub alpha: u32,
    pub ell: usize,
    pub constraint: Constraint,
}

impl AvoidanceSpec {
    pub fn new(alpha: u32, ell: usize, constraint: Constraint) -> Result<AvoidanceSpec> {
        if alpha < 1 {
            return Err(Error::InvalidArgument(
                "alphabet size must be positive".into(),
            ));
        }
        if ell < 2 {
            return Err(Error::InvalidArgument(
                "power order must be at least 2".into(),
            ));
        }
        let k = constraint.k();
        if k < 2 {
            return Err(Error::InvalidArgument(
                "block count must be at least 2".into(),
            ));
        }
        if let Constraint::KLambda { lambda, .. } = constraint {
            if lambda < 1 || lambda > k {
                return Err(Error::InvalidArgument(format!(
                    "lambda must lie in 1..={k}"
                )));
            }
        }
        Ok(AvoidanceSpec {
            alpha,
            ell,
            constraint,
        })
    }

    pub fn anti_power(alpha: u32, ell: usize, k: usize) -> Result<AvoidanceSpec> {
        AvoidanceSpec::new(alpha, ell, Constraint::AntiPower { k })
    }

    /// Termination bound `beta * (K^3 - K^2 + K)` with `K = max(ell, k)`, where
    /// `beta` is the number of equal pairs the constraint tolerates per violation.
    pub fn default_length_cap(&self) -> u64 {
        let big = self.ell.max(self.constraint.k()) as u64;
        let k = self.constraint.k() as u64;
        let beta = match self.constraint {
            Constraint::AntiPower { .. } => choose2(k),
            Constraint::KLambda { lambda, .. } => {
                let lambda = lambda as u64;
                ((k * k - k) / (lambda * lambda + lambda)).max(1)
            }
            Constraint::PairBudget { sigma: 0, .. } => choose2(k),
            Constraint::PairBudget { sigma, .. } => (choose2(k) / sigma).max(1),
        };
        beta * (big * big * big - big * big + big)
    }

    /// True iff `w` has no `ell`-power factor and no factor matching the constraint.
    pub fn avoided_by(&self, w: &Word) -> bool {
        contains(w, Predicate::Power { k: self.ell }).is_none()
            && contains(w, self.constraint.predicate()).is_none()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Longest word explored; `None` uses `AvoidanceSpec::default_length_cap`.
    pub length_cap: Option<u64>,
    pub time_cap: Option<Duration>,
    pub split_depth: usize,
    /// Worker count; `None` lets the pool decide.
    pub threads: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            length_cap: None,
            time_cap: None,
            split_depth: 8,
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Longest avoiding length plus one; a lower bound when `truncated`.
    pub threshold: u64,
    pub witness: Word,
    pub nodes_explored: u64,
    pub truncated: bool,
    pub elapsed: Duration,
}

struct Compiled {
    alpha: u32,
    ell: usize,
    k: usize,
    constraint: Constraint,
    cap: usize,
    // alpha^m mod 2^128
    pow: Vec<u128>,
    // block keys are exact for m <= exact_m
    exact_m: usize,
    // feasible[m]: some factor with block length m could match the constraint
    feasible: Vec<bool>,
}

impl Compiled {
    fn new(spec: &AvoidanceSpec, cap: usize) -> Compiled {
        let alpha = spec.alpha as u128;
        let max_m = cap / spec.constraint.k() + 1;
        let mut pow = vec![1u128; max_m + 1];
        let mut exact_m = 0;
        let mut feasible = vec![false; max_m + 1];
        for m in 1..=max_m {
            pow[m] = pow[m - 1].wrapping_mul(alpha);
            // block values lie below alpha^m, so keys are exact while alpha^m fits
            let distinct = match alpha.checked_pow(m as u32) {
                Some(e) => {
                    exact_m = m;
                    e
                }
                None => u128::MAX,
            };
            feasible[m] = spec.constraint.feasible(distinct);
        }
        Compiled {
            alpha: spec.alpha,
            ell: spec.ell,
            k: spec.constraint.k(),
            constraint: spec.constraint,
            cap,
            pow,
            exact_m,
            feasible,
        }
    }

    #[inline]
    fn matches(&self, p: &ClassProfile) -> bool {
        match self.constraint {
            Constraint::AntiPower { .. } => p.max_class == 1,
            Constraint::KLambda { lambda, .. } => p.max_class as usize <= lambda,
            Constraint::PairBudget { sigma, .. } => p.pairs <= sigma,
        }
    }
}

struct Engine<'a> {
    c: &'a Compiled,
    word: Vec<u32>,
    // pref[i] = value of word[..i] in base alpha, mod 2^128
    pref: Vec<u128>,
    // runs[n][m]: consecutive j <= n with word[j - 1] == word[j - 1 - m]
    runs: Vec<Vec<u32>>,
    // used[n]: distinct letters in word[..n]
    used: Vec<u32>,
    next: Vec<u32>,
    keys: Vec<u128>,
    best: Vec<u32>,
    nodes: u64,
    truncated: bool,
    stop: &'a AtomicBool,
    deadline: Option<Instant>,
}

impl<'a> Engine<'a> {
    fn new(c: &'a Compiled, stop: &'a AtomicBool, deadline: Option<Instant>) -> Engine<'a> {
        Engine {
            c,
            word: Vec::new(),
            pref: vec![0],
            runs: vec![Vec::new()],
            used: vec![0],
            next: vec![0],
            keys: vec![0; c.k],
            best: Vec::new(),
            nodes: 0,
            truncated: false,
            stop,
            deadline,
        }
    }

    /// Appends `a`; returns false when a forbidden factor now ends at the last position.
    fn push(&mut self, a: u32) -> bool {
        let c = self.c;
        self.word.push(a);
        let n = self.word.len();
        self.pref.push(
            self.pref[n - 1]
                .wrapping_mul(c.alpha as u128)
                .wrapping_add(a as u128),
        );
        self.used.push(self.used[n - 1].max(a + 1));
        if self.runs.len() <= n {
            self.runs.push(Vec::new());
            self.next.push(0);
        }
        let (before, after) = self.runs.split_at_mut(n);
        let prev = &before[n - 1];
        let cur = &mut after[0];
        cur.clear();
        cur.push(0);
        let w = &self.word;
        let mut power = false;
        for m in 1..n {
            let r = if w[n - 1] == w[n - 1 - m] {
                prev.get(m).copied().unwrap_or(0) + 1
            } else {
                0
            };
            cur.push(r);
            if m * c.ell <= n && r as usize >= (c.ell - 1) * m {
                power = true;
            }
        }
        if power {
            return false;
        }
        for m in 1..=n / c.k {
            if !c.feasible[m] {
                continue;
            }
            let s = n - c.k * m;
            let profile = if m <= c.exact_m {
                let pm = c.pow[m];
                for (b, key) in self.keys.iter_mut().enumerate() {
                    let lo = s + b * m;
                    *key = self.pref[lo + m].wrapping_sub(self.pref[lo].wrapping_mul(pm));
                }
                if let Constraint::AntiPower { .. } = c.constraint {
                    if !all_distinct(&self.keys) {
                        continue;
                    }
                    return false;
                }
                profile_keys(&mut self.keys)
            } else {
                let mut blocks: Vec<&[u32]> = w[s..n].chunks_exact(m).collect();
                profile_keys(&mut blocks)
            };
            if c.matches(&profile) {
                return false;
            }
        }
        true
    }

    fn pop(&mut self) {
        self.word.pop();
        self.pref.pop();
        self.used.pop();
    }

    fn visit(&mut self) {
        self.nodes += 1;
        if self.word.len() > self.best.len() {
            self.best.clone_from(&self.word);
        }
        if self.nodes & 4095 == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }

    /// Depth-first search below the current word, never descending past `depth_limit`.
    /// Words reaching `depth_limit` are handed to `at_limit`.
    fn explore(&mut self, depth_limit: usize, mut at_limit: impl FnMut(&[u32])) {
        let base = self.word.len();
        self.next[base] = 0;
        loop {
            if self.stop.load(Ordering::Relaxed) {
                self.truncated = true;
                break;
            }
            let d = self.word.len();
            let limit = (self.used[d] + 1).min(self.c.alpha);
            if self.next[d] < limit {
                let a = self.next[d];
                self.next[d] += 1;
                if self.push(a) {
                    self.visit();
                    if d + 1 >= depth_limit {
                        at_limit(&self.word);
                        self.pop();
                    } else {
                        self.next[d + 1] = 0;
                    }
                } else {
                    self.pop();
                }
            } else {
                if d == base {
                    break;
                }
                self.pop();
            }
        }
    }
}

#[inline]
fn all_distinct(keys: &[u128]) -> bool {
    for i in 1..keys.len() {
        for j in 0..i {
            if keys[i] == keys[j] {
                return false;
            }
        }
    }
    true
}

struct Partial {
    best: Vec<u32>,
    nodes: u64,
    truncated: bool,
}

fn run_subtree(
    c: &Compiled,
    prefix: &[u32],
    stop: &AtomicBool,
    deadline: Option<Instant>,
) -> Partial {
    let mut engine = Engine::new(c, stop, deadline);
    for &a in prefix {
        let ok = engine.push(a);
        debug_assert!(ok);
    }
    engine.best = prefix.to_vec();
    let mut capped = false;
    engine.explore(c.cap, |_| capped = true);
    Partial {
        best: engine.best,
        nodes: engine.nodes,
        truncated: engine.truncated || capped,
    }
}

/// Longest words avoiding `ell`-powers and the constraint, explored in
/// first-occurrence canonical form with letters in ascending order.
pub fn max_avoiding_length(spec: &AvoidanceSpec, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let cap = opts.length_cap.unwrap_or_else(|| spec.default_length_cap());
    if cap == 0 {
        return Err(Error::InvalidArgument("length cap must be positive".into()));
    }
    let cap = usize::try_from(cap).map_err(|_| Error::TooLarge("length cap".into()))?;
    let c = Compiled::new(spec, cap);
    let stop = AtomicBool::new(false);
    let deadline = opts.time_cap.map(|t| start + t);

    let split = opts.split_depth.clamp(1, cap);
    let mut prefixes: Vec<Vec<u32>> = Vec::new();
    let mut top = Engine::new(&c, &stop, deadline);
    top.explore(split, |w| prefixes.push(w.to_vec()));
    let mut best = top.best;
    let mut nodes = top.nodes;
    let mut truncated = top.truncated;

    if split < cap && !prefixes.is_empty() {
        let work = || -> Vec<Partial> {
            prefixes
                .par_iter()
                .map(|p| run_subtree(&c, p, &stop, deadline))
                .collect()
        };
        let parts = match opts.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(e.to_string()))?
                .install(work),
            None => work(),
        };
        // prefixes are in ascending order, so the first longest witness is the least
        for part in parts {
            nodes += part.nodes;
            truncated |= part.truncated;
            if part.best.len() > best.len() {
                best = part.best;
            }
        }
    } else if split >= cap && !prefixes.is_empty() {
        truncated = true;
    }

    let witness = Word::from_codes(&best, Alphabet::Finite(spec.alpha))?;
    Ok(SearchResult {
        threshold: best.len() as u64 + 1,
        witness,
        nodes_explored: nodes,
        truncated,
        elapsed: start.elapsed(),
    })
}

/// `N_alpha(ell, k)` for the anti-power constraint; inconclusive if the search was cut short.
pub fn n_alpha(ell: usize, k: usize, alpha: u32, opts: &SearchOptions) -> Result<u64> {
    let spec = AvoidanceSpec::anti_power(alpha, ell, k)?;
    let result = max_avoiding_length(&spec, opts)?;
    if result.truncated {
        return Err(Error::Inconclusive {
            lower_bound: result.threshold,
        });
    }
    Ok(result.threshold)
}

/// `2k^2 - 2k <= n <= (k^3 - k^2 + k) * C(k, 2)`.
pub fn bound_check(k: u64, n: u64) -> Result<bool> {
    if k < 4 {
        return Err(Error::KTooSmall { min: 4, got: k });
    }
    let lower = 2 * k * k - 2 * k;
    let upper = (k * k * k - k * k + k) * choose2(k);
    Ok((lower..=upper).contains(&n))
}

/// `alpha > n / k - k + 3`, compared exactly.
pub fn corollary_5_4_condition(k: u64, alpha: u64, n: u64) -> bool {
    let (k, alpha, n) = (k as i128, alpha as i128, n as i128);
    alpha * k + k * k - 3 * k > n
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Exclusion {
    /// `a w` begins with an `ell`-power of this block length.
    PowerPrefix { block_len: usize },
    /// `a w` begins with a constraint-matching factor of this block length.
    ConstraintPrefix { block_len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftExtension {
    pub allowed: Vec<Letter>,
    pub excluded: Vec<(Letter, Exclusion)>,
    /// Letter `alpha`, outside the searched alphabet.
    pub fresh: Letter,
}

/// Which letters of `[alpha]`, plus one fresh letter, can be prepended to `w`
/// without creating a forbidden factor.
pub fn extendable_left(w: &Word, spec: &AvoidanceSpec) -> Result<LeftExtension> {
    if let Some(bad) = w.letters().iter().find(|l| l.0 >= spec.alpha) {
        return Err(Error::PreconditionViolated(format!(
            "letter {} is outside the alphabet of size {}",
            bad.0, spec.alpha
        )));
    }
    if !spec.avoided_by(w) {
        return Err(Error::PreconditionViolated(
            "word does not avoid the families".into(),
        ));
    }
    let k = spec.constraint.k();
    let pred = spec.constraint.predicate();
    let mut allowed = Vec::new();
    let mut excluded = Vec::new();
    for a in 0..=spec.alpha {
        let mut letters = vec![Letter(a)];
        letters.extend_from_slice(w.letters());
        let n = letters.len();
        // w avoids both families, so a forbidden factor of a·w is a prefix
        let power =
            (1..=n / spec.ell).find(|&m| (m..spec.ell * m).all(|i| letters[i] == letters[i - m]));
        let cause = match power {
            Some(m) => Some(Exclusion::PowerPrefix { block_len: m }),
            None => (1..=n / k)
                .find(|&m| {
                    let x = Word::unbounded(letters[..k * m].to_vec());
                    pred.matches(&x)
                })
                .map(|m| Exclusion::ConstraintPrefix { block_len: m }),
        };
        match cause {
            Some(cause) => excluded.push((Letter(a), cause)),
            None => allowed.push(Letter(a)),
        }
    }
    Ok(LeftExtension {
        allowed,
        excluded,
        fresh: Letter(spec.alpha),
    })
}
