//! Block signatures and the power / anti-power detectors built on them.
//!
//! A word of length `k*m` is cut into `k` blocks of length `m`; grouping equal
//! blocks gives a partition of the `k` block indices, summarized by
//! `mu[s]` = number of classes of size `s`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::naming::FactorNames;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockSignature {
    // mu[s - 1] = number of equality classes of size s
    mu: Vec<u32>,
}

impl BlockSignature {
    pub fn new(mu: Vec<u32>) -> Result<BlockSignature> {
        if mu.is_empty() {
            return Err(Error::InvalidSignature("k must be positive".into()));
        }
        let weight: u64 = mu
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c as u64)
            .sum();
        if weight != mu.len() as u64 {
            return Err(Error::InvalidSignature(format!(
                "sum of s*mu_s is {weight}, expected {}",
                mu.len()
            )));
        }
        Ok(BlockSignature { mu })
    }

    /// The `k`-anti-power signature `(k, 0, ..., 0)`.
    pub fn anti_power(k: usize) -> BlockSignature {
        let mut mu = vec![0; k];
        mu[0] = k as u32;
        BlockSignature { mu }
    }

    /// The `k`-power signature `(0, ..., 0, 1)`.
    pub fn power(k: usize) -> BlockSignature {
        let mut mu = vec![0; k];
        mu[k - 1] = 1;
        BlockSignature { mu }
    }

    pub fn from_class_sizes(
        k: usize,
        sizes: impl IntoIterator<Item = usize>,
    ) -> Result<BlockSignature> {
        let mut mu = vec![0u32; k];
        for s in sizes {
            if s == 0 || s > k {
                return Err(Error::InvalidSignature(format!(
                    "class size {s} with k = {k}"
                )));
            }
            mu[s - 1] += 1;
        }
        BlockSignature::new(mu)
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    /// `mu_s` for 1-based `s`.
    pub fn mu(&self, s: usize) -> u32 {
        s.checked_sub(1)
            .and_then(|i| self.mu.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.mu
    }

    /// Number of distinct blocks.
    pub fn num_classes(&self) -> u32 {
        self.mu.iter().sum()
    }

    pub fn max_class_size(&self) -> usize {
        self.mu.iter().rposition(|&c| c > 0).map_or(0, |i| i + 1)
    }

    pub fn equal_pair_count(&self) -> u64 {
        self.mu
            .iter()
            .enumerate()
            .map(|(i, &c)| c as u64 * choose2(i as u64 + 1))
            .sum()
    }

    /// Partial sums of `mu` dominate those of `other` at every level.
    pub fn dominates(&self, other: &BlockSignature) -> bool {
        if self.k() != other.k() {
            return false;
        }
        let (mut a, mut b) = (0u64, 0u64);
        self.mu.iter().zip(&other.mu).all(|(&x, &y)| {
            a += x as u64;
            b += y as u64;
            a >= b
        })
    }

    /// All signatures of a given `k`, one per integer partition of `k`.
    pub fn all(k: usize) -> Vec<BlockSignature> {
        fn go(
            rest: usize,
            max_part: usize,
            parts: &mut Vec<usize>,
            k: usize,
            out: &mut Vec<BlockSignature>,
        ) {
            if rest == 0 {
                out.push(BlockSignature::from_class_sizes(k, parts.iter().copied()).unwrap());
                return;
            }
            for p in (1..=max_part.min(rest)).rev() {
                parts.push(p);
                go(rest - p, p, parts, k, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        if k > 0 {
            go(k, k, &mut Vec::new(), k, &mut out);
        }
        out
    }

    /// Sparse text form, e.g. `k=5;2:2,1:1`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .mu
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(i, c)| format!("{}:{}", i + 1, c))
            .collect();
        format!("k={};{}", self.k(), parts.join(","))
    }

    /// Accepts the sparse form `k=5;2:2,1:1` or a dense list `1,2,0,0,0`.
    pub fn parse(text: &str) -> Result<BlockSignature> {
        let text = text.trim();
        let bad = |msg: &str| Error::InvalidSignature(format!("{msg} in {text:?}"));
        if let Some(rest) = text.strip_prefix("k=") {
            let (k, pairs) = rest.split_once(';').unwrap_or((rest, ""));
            let k: usize = k.trim().parse().map_err(|_| bad("bad k"))?;
            if k == 0 {
                return Err(bad("k must be positive"));
            }
            let mut mu = vec![0u32; k];
            for pair in pairs.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (s, c) = pair
                    .split_once(':')
                    .ok_or_else(|| bad("expected s:count"))?;
                let s: usize = s.trim().parse().map_err(|_| bad("bad size"))?;
                let c: u32 = c.trim().parse().map_err(|_| bad("bad count"))?;
                if s == 0 || s > k {
                    return Err(bad("size out of range"));
                }
                mu[s - 1] += c;
            }
            BlockSignature::new(mu)
        } else {
            let mu = text
                .split(',')
                .map(|t| t.trim().parse::<u32>().map_err(|_| bad("bad entry")))
                .collect::<Result<Vec<_>>>()?;
            BlockSignature::new(mu)
        }
    }
}

impl fmt::Display for BlockSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for BlockSignature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BlockSignature::parse(s)
    }
}

impl Serialize for BlockSignature {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for BlockSignature {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        BlockSignature::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Upper bound on the number of unordered equal block pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairBudget(pub u64);

impl PairBudget {
    /// `C(lambda + 1, 2)`: a block set with a class larger than `lambda`
    /// has at least this many equal pairs.
    pub fn for_lambda(lambda: u64) -> PairBudget {
        PairBudget(choose2(lambda + 1))
    }

    pub fn admits(self, sig: &BlockSignature) -> bool {
        sig.equal_pair_count() <= self.0
    }
}

pub(crate) fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

pub fn equal_pair_count(sig: &BlockSignature) -> u64 {
    sig.equal_pair_count()
}

/// Shape of the equality partition of a set of blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct ClassProfile {
    pub classes: u32,
    pub max_class: u32,
    pub pairs: u64,
}

/// Profiles a set of block keys; sorts `keys` in place.
#[inline]
pub(crate) fn profile_keys<K: Ord + Copy>(keys: &mut [K]) -> ClassProfile {
    keys.sort_unstable();
    let mut profile = ClassProfile {
        classes: 0,
        max_class: 0,
        pairs: 0,
    };
    let mut i = 0;
    while i < keys.len() {
        let mut j = i + 1;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        let size = (j - i) as u32;
        profile.classes += 1;
        profile.max_class = profile.max_class.max(size);
        profile.pairs += choose2(size as u64);
        i = j;
    }
    profile
}

fn sizes_of_sorted<K: PartialEq>(keys: &[K], out: &mut [u32]) {
    out.iter_mut().for_each(|c| *c = 0);
    let mut i = 0;
    while i < keys.len() {
        let mut j = i + 1;
        while j < keys.len() && keys[j] == keys[i] {
            j += 1;
        }
        out[j - i - 1] += 1;
        i = j;
    }
}

pub fn block_signature(w: &Word, k: usize) -> Result<BlockSignature> {
    let blocks = w.block_slices(k)?;
    let mut sorted = blocks.clone();
    sorted.sort_unstable();
    let mut mu = vec![0u32; k];
    sizes_of_sorted(&sorted, &mut mu);
    BlockSignature::new(mu)
}

fn block_profile(w: &Word, k: usize) -> Option<ClassProfile> {
    if k == 0 || w.is_empty() || !w.len().is_multiple_of(k) {
        return None;
    }
    let mut blocks: Vec<&[Letter]> = w.letters().chunks_exact(w.len() / k).collect();
    Some(profile_keys(&mut blocks))
}

pub fn is_k_power(w: &Word, k: usize) -> bool {
    block_profile(w, k).is_some_and(|p| p.classes == 1)
}

pub fn is_anti_power(w: &Word, k: usize) -> bool {
    block_profile(w, k).is_some_and(|p| p.max_class == 1)
}

pub fn is_k_lambda_anti_power(w: &Word, k: usize, lambda: usize) -> bool {
    block_profile(w, k).is_some_and(|p| p.max_class as usize <= lambda)
}

/// The families of factors a scan can look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Predicate {
    Power {
        k: usize,
    },
    AntiPower {
        k: usize,
    },
    KLambdaAntiPower {
        k: usize,
        lambda: usize,
    },
    /// Length-`k*m` factors with at most `sigma` equal block pairs.
    PairBudget {
        k: usize,
        sigma: u64,
    },
}

impl Predicate {
    pub fn k(&self) -> usize {
        match *self {
            Predicate::Power { k }
            | Predicate::AntiPower { k }
            | Predicate::KLambdaAntiPower { k, .. }
            | Predicate::PairBudget { k, .. } => k,
        }
    }

    #[inline]
    pub(crate) fn holds(&self, p: &ClassProfile) -> bool {
        match *self {
            Predicate::Power { .. } => p.classes == 1,
            Predicate::AntiPower { .. } => p.max_class == 1,
            Predicate::KLambdaAntiPower { lambda, .. } => p.max_class as usize <= lambda,
            Predicate::PairBudget { sigma, .. } => p.pairs <= sigma,
        }
    }

    pub fn matches(&self, w: &Word) -> bool {
        block_profile(w, self.k()).is_some_and(|p| self.holds(&p))
    }
}

/// A factor occurrence: 1-based start and block length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub start: usize,
    pub block_len: usize,
}

/// First factor (ordered by start, then block length) satisfying `pred`.
pub fn contains(w: &Word, pred: Predicate) -> Option<Occurrence> {
    let k = pred.k();
    if k == 0 || w.is_empty() {
        return None;
    }
    match pred {
        Predicate::Power { k } => first_power(w.letters(), k),
        _ => {
            let names = FactorNames::new(w.letters());
            let n = w.len();
            let mut keys = vec![0u64; k];
            for s in 0..n {
                for m in 1..=(n - s) / k {
                    fill_keys(&names, s, m, &mut keys);
                    if pred.holds(&profile_keys(&mut keys)) {
                        return Some(Occurrence {
                            start: s + 1,
                            block_len: m,
                        });
                    }
                }
            }
            None
        }
    }
}

#[inline]
fn fill_keys(names: &FactorNames, start: usize, m: usize, keys: &mut [u64]) {
    for (b, key) in keys.iter_mut().enumerate() {
        *key = names.key(start + b * m, m);
    }
}

/// Finds the first `k`-power by tracking, for each period `m`, runs of
/// positions with `w[i] == w[i + m]`.
fn first_power(w: &[Letter], k: usize) -> Option<Occurrence> {
    let n = w.len();
    let mut best: Option<Occurrence> = None;
    for m in 1..=n / k {
        let need = (k - 1) * m;
        let found = if need == 0 {
            Some(0)
        } else {
            let mut run = 0;
            let mut hit = None;
            for i in 0..n - m {
                // any later hit starts at or after i - run
                if best.is_some_and(|b| i - run + 1 >= b.start) {
                    break;
                }
                if w[i] == w[i + m] {
                    run += 1;
                    if run == need {
                        hit = Some(i + 1 - need);
                        break;
                    }
                } else {
                    run = 0;
                }
            }
            hit
        };
        if let Some(s) = found {
            let occ = Occurrence {
                start: s + 1,
                block_len: m,
            };
            if best.is_none_or(|b| occ < b) {
                best = Some(occ);
            }
        }
    }
    best
}

/// Number of factors whose block signature under `sig.k()` blocks equals `sig`.
pub fn count_block_patterns(w: &Word, sig: &BlockSignature) -> u64 {
    let names = FactorNames::new(w.letters());
    count_with_names(&names, w.len(), sig)
}

pub(crate) fn count_with_names(names: &FactorNames, n: usize, sig: &BlockSignature) -> u64 {
    let k = sig.k();
    let mut keys = vec![0u64; k];
    let mut hist = vec![0u32; k];
    let mut count = 0;
    for m in 1..=n / k {
        for s in 0..=n - k * m {
            fill_keys(names, s, m, &mut keys);
            keys.sort_unstable();
            sizes_of_sorted(&keys, &mut hist);
            if hist == sig.as_slice() {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn sig(mu: &[u32]) -> BlockSignature {
        BlockSignature::new(mu.to_vec()).unwrap()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            block_signature(&w("1001000110"), 5).unwrap(),
            sig(&[1, 2, 0, 0, 0])
        );
        assert_eq!(
            block_signature(&w("aaaa"), 4).unwrap(),
            BlockSignature::power(4)
        );
        assert_eq!(
            block_signature(&w("abc"), 3).unwrap(),
            BlockSignature::anti_power(3)
        );
        assert!(block_signature(&w("abc"), 2).is_err());
    }

    #[test]
    fn signature_text() {
        let s = sig(&[1, 2, 0, 0, 0]);
        assert_eq!(s.to_text(), "k=5;2:2,1:1");
        assert_eq!(BlockSignature::parse("k=5;2:2,1:1").unwrap(), s);
        assert_eq!(BlockSignature::parse("k=5;1:1,2:2").unwrap(), s);
        assert_eq!(BlockSignature::parse("1,2,0,0,0").unwrap(), s);
        assert!(BlockSignature::parse("k=5;2:2").is_err());
        assert!(BlockSignature::parse("k=3;4:1").is_err());
    }

    #[test]
    fn pair_count_examples() {
        assert_eq!(sig(&[1, 2, 0, 0, 0]).equal_pair_count(), 2);
        assert_eq!(BlockSignature::power(4).equal_pair_count(), 6);
        assert_eq!(BlockSignature::anti_power(7).equal_pair_count(), 0);
        // direct pair enumeration on the example word
        let blocks = w("1001000110").blocks(5).unwrap();
        let direct = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .filter(|&(i, j)| blocks[i] == blocks[j])
            .count();
        assert_eq!(direct, 2);
    }

    #[test]
    fn detector_examples() {
        assert!(is_k_power(&w("abab"), 2));
        assert!(!is_k_power(&w("1001000110"), 5));
        assert!(!is_k_power(&w("aaa"), 2));

        assert!(!is_anti_power(&w("1010"), 4));
        assert!(!is_anti_power(&w("011010"), 3));
        assert!(is_anti_power(&w("011010011001011"), 3));

        assert!(is_k_lambda_anti_power(&w("1010"), 4, 2));
        assert!(is_k_lambda_anti_power(&w("abcabc"), 3, 3));
        assert!(!is_k_lambda_anti_power(&w("aaa"), 3, 2));
    }

    #[test]
    fn k_equals_one_is_degenerate_true() {
        assert!(is_k_power(&w("abc"), 1));
        assert!(is_anti_power(&w("abc"), 1));
        assert!(!is_anti_power(&w(""), 1));
        assert_eq!(
            contains(&w("ab"), Predicate::Power { k: 1 }),
            Some(Occurrence {
                start: 1,
                block_len: 1
            })
        );
    }

    #[test]
    fn contains_examples() {
        assert_eq!(
            contains(&w("0aaaa0"), Predicate::Power { k: 4 }),
            Some(Occurrence {
                start: 2,
                block_len: 1
            })
        );
        assert_eq!(contains(&w("0aaa0"), Predicate::Power { k: 4 }), None);
        assert_eq!(
            contains(&w("0011"), Predicate::AntiPower { k: 2 }),
            Some(Occurrence {
                start: 1,
                block_len: 2
            })
        );
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_block_patterns(&w("aa"), &BlockSignature::power(2)), 1);
        assert_eq!(
            count_block_patterns(&w("ab"), &BlockSignature::anti_power(2)),
            1
        );
        assert_eq!(
            count_block_patterns(&w("abab"), &BlockSignature::power(2)),
            1
        );
    }

    #[test]
    fn partitions_of_small_k() {
        let counts: Vec<usize> = (1..=10).map(|k| BlockSignature::all(k).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    fn sorted_parts(sig: &BlockSignature) -> Vec<usize> {
        let mut parts: Vec<usize> = (1..=sig.k())
            .rev()
            .flat_map(|s| std::iter::repeat_n(s, sig.mu(s) as usize))
            .collect();
        parts.resize(sig.k(), 0);
        parts
    }

    #[test]
    fn small_class_dominance_orders_pair_counts_up_to_six() {
        for k in 1..=6 {
            let all = BlockSignature::all(k);
            for a in &all {
                for b in &all {
                    if a.dominates(b) {
                        assert!(a.equal_pair_count() <= b.equal_pair_count(), "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_class_dominance_fails_to_order_pair_counts_at_seven() {
        // sizes {5,1,1} dominate {4,3} on small-class partial sums but have more pairs
        let a = BlockSignature::from_class_sizes(7, [5, 1, 1]).unwrap();
        let b = BlockSignature::from_class_sizes(7, [4, 3]).unwrap();
        assert!(a.dominates(&b));
        assert_eq!((a.equal_pair_count(), b.equal_pair_count()), (10, 9));
    }

    #[test]
    fn majorization_orders_pair_counts() {
        for k in 1..=10 {
            let all = BlockSignature::all(k);
            for a in &all {
                for b in &all {
                    let (pa, pb) = (sorted_parts(a), sorted_parts(b));
                    let mut sa = 0;
                    let mut sb = 0;
                    let majorized = pa.iter().zip(&pb).all(|(x, y)| {
                        sa += x;
                        sb += y;
                        sa <= sb
                    });
                    if majorized {
                        assert!(a.equal_pair_count() <= b.equal_pair_count(), "{a} vs {b}");
                    }
                }
            }
        }
    }

    fn brute_contains(x: &Word, pred: Predicate) -> Option<Occurrence> {
        let k = pred.k();
        for i in 1..=x.len() {
            for m in 1..=(x.len() + 1 - i) / k {
                if pred.matches(&x.factor(i, i + k * m - 1).unwrap()) {
                    return Some(Occurrence {
                        start: i,
                        block_len: m,
                    });
                }
            }
        }
        None
    }

    fn word_strategy(alpha: u32, max_len: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(0..alpha, 0..=max_len)
            .prop_map(move |v| Word::from_codes(&v, Alphabet::Finite(alpha)).unwrap())
    }

    fn predicate_strategy() -> impl Strategy<Value = Predicate> {
        prop_oneof![
            (1usize..=5).prop_map(|k| Predicate::Power { k }),
            (1usize..=5).prop_map(|k| Predicate::AntiPower { k }),
            (1usize..=5, 1usize..=5).prop_map(|(k, l)| Predicate::KLambdaAntiPower {
                k,
                lambda: l.min(k)
            }),
            (1usize..=5, 0u64..=6).prop_map(|(k, sigma)| Predicate::PairBudget { k, sigma }),
        ]
    }

    fn brute_signature(x: &Word, k: usize) -> Vec<u32> {
        let blocks = x.blocks(k).unwrap();
        let mut mu = vec![0u32; k];
        let mut seen = vec![false; k];
        for i in 0..k {
            if seen[i] {
                continue;
            }
            let mut size = 0;
            for j in i..k {
                if blocks[j] == blocks[i] {
                    seen[j] = true;
                    size += 1;
                }
            }
            mu[size - 1] += 1;
        }
        mu
    }

    proptest! {
        #[test]
        fn contains_matches_brute_force(x in word_strategy(3, 30), pred in predicate_strategy()) {
            prop_assert_eq!(contains(&x, pred), brute_contains(&x, pred));
        }

        #[test]
        fn signature_consistency(x in word_strategy(3, 16), k in 1usize..=8) {
            prop_assume!(!x.is_empty() && x.len() % k == 0);
            let s = block_signature(&x, k).unwrap();
            let brute = brute_signature(&x, k);
            prop_assert_eq!(s.as_slice(), brute.as_slice());
            let blocks = x.blocks(k).unwrap();
            let mut distinct = blocks.clone();
            distinct.sort_by(|a, b| a.letters().cmp(b.letters()));
            distinct.dedup();
            prop_assert_eq!(s.num_classes() as usize, distinct.len());
            let pairs = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| blocks[i] == blocks[j]).count() as u64;
            prop_assert_eq!(s.equal_pair_count(), pairs);
            prop_assert_eq!(is_k_power(&x, k), s == BlockSignature::power(k));
            prop_assert_eq!(is_anti_power(&x, k), s == BlockSignature::anti_power(k));
            prop_assert_eq!(is_k_lambda_anti_power(&x, k, 1), is_anti_power(&x, k));
        }

        #[test]
        fn count_matches_brute_force(x in word_strategy(2, 14), k in 1usize..=4, pick in 0usize..5) {
            let all = BlockSignature::all(k);
            let target = &all[pick % all.len()];
            let mut direct = 0;
            for i in 1..=x.len() {
                for j in i..=x.len() {
                    let f = x.factor(i, j).unwrap();
                    if f.len() % k == 0 && block_signature(&f, k).unwrap() == *target {
                        direct += 1;
                    }
                }
            }
            prop_assert_eq!(count_block_patterns(&x, target), direct);
        }
    }

    /// Exhaustive over binary words of length km <= 12.
    #[test]
    fn step_down_adds_a_block() {
        for k in 2..=6usize {
            for lambda in 2..=k {
                for m in 1..=12 / k {
                    let len = k * m;
                    for bits in 0u32..(1 << len) {
                        let codes: Vec<u32> = (0..len).map(|i| (bits >> i) & 1).collect();
                        let x = Word::from_codes(&codes, Alphabet::Finite(2)).unwrap();
                        let head = x.factor(1, (k - 1) * m).unwrap();
                        if is_k_lambda_anti_power(&head, k - 1, lambda - 1) {
                            assert!(
                                is_k_lambda_anti_power(&x, k, lambda),
                                "{x} k={k} lambda={lambda}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn constant_and_one_defect_avoid_near_trivial_anti_powers() {
        let constant = Word::from_codes(&[0; 200], Alphabet::Finite(2)).unwrap();
        for k in 2..=6 {
            assert_eq!(
                contains(&constant, Predicate::KLambdaAntiPower { k, lambda: k - 1 }),
                None
            );
        }
        let mut codes = [0u32; 200];
        codes[57] = 1;
        let defect = Word::from_codes(&codes, Alphabet::Finite(2)).unwrap();
        for k in 3..=6 {
            assert_eq!(
                contains(&defect, Predicate::KLambdaAntiPower { k, lambda: k - 2 }),
                None
            );
            assert!(contains(&defect, Predicate::KLambdaAntiPower { k, lambda: k - 1 }).is_some());
        }
    }
}
