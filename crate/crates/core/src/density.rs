//! Sets of `m` for which the length-`km` prefix of an infinite word has a
//! given block shape, and finite density proxies for them.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::naming::FactorNames;
use crate::patterns::{profile_keys, ClassProfile};
use crate::word::InfiniteWord;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum PrefixKind {
    /// prefix of length `km` is a `(k, lambda)`-anti-power
    #[serde(rename = "AP")]
    AntiPower { k: usize, lambda: usize },
    /// prefix of length `km` has at most `sigma` equal block pairs
    #[serde(rename = "D")]
    PairsAtMost { k: usize, sigma: u64 },
    /// prefix of length `km` has at least `sigma` equal block pairs
    #[serde(rename = "D+")]
    PairsAtLeast { k: usize, sigma: u64 },
}

impl PrefixKind {
    pub fn k(&self) -> usize {
        match *self {
            PrefixKind::AntiPower { k, .. }
            | PrefixKind::PairsAtMost { k, .. }
            | PrefixKind::PairsAtLeast { k, .. } => k,
        }
    }

    fn admits(&self, p: &ClassProfile) -> bool {
        match *self {
            PrefixKind::AntiPower { lambda, .. } => p.max_class as usize <= lambda,
            PrefixKind::PairsAtMost { sigma, .. } => p.pairs <= sigma,
            PrefixKind::PairsAtLeast { sigma, .. } => p.pairs >= sigma,
        }
    }
}

/// Every `m` in `1..=n_max` was decided; `members` lists those that qualify.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrefixSet {
    #[serde(flatten)]
    pub kind: PrefixKind,
    pub n_max: u64,
    pub members: Vec<u64>,
}

impl PrefixSet {
    pub fn contains(&self, m: u64) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    pub fn is_subset(&self, other: &PrefixSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }
}

fn prefix_set(x: &InfiniteWord, kind: PrefixKind, n_max: u64) -> Result<PrefixSet> {
    let k = kind.k();
    let prefix = x.prefix(k * n_max as usize)?;
    let names = FactorNames::new(prefix.letters());
    let members = (1..=n_max)
        .into_par_iter()
        .filter(|&m| {
            let m = m as usize;
            let mut keys: Vec<u64> = (0..k).map(|b| names.key(b * m, m)).collect();
            kind.admits(&profile_keys(&mut keys))
        })
        .collect();
    Ok(PrefixSet {
        kind,
        n_max,
        members,
    })
}

pub fn ap_set(x: &InfiniteWord, k: usize, lambda: usize, n_max: u64) -> Result<PrefixSet> {
    prefix_set(x, PrefixKind::AntiPower { k, lambda }, n_max)
}

pub fn d_set(x: &InfiniteWord, k: usize, sigma: u64, n_max: u64) -> Result<PrefixSet> {
    prefix_set(x, PrefixKind::PairsAtMost { k, sigma }, n_max)
}

pub fn d_set_at_least(x: &InfiniteWord, k: usize, sigma: u64, n_max: u64) -> Result<PrefixSet> {
    prefix_set(x, PrefixKind::PairsAtLeast { k, sigma }, n_max)
}

/// `ratios[n - 1] = |S ∩ [n]| / n`; the proxies are the min and max over the tail window.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub ratios: Vec<f64>,
    pub tail_start: u64,
    pub lower_proxy: f64,
    pub upper_proxy: f64,
}

/// Tail window `[ceil(n_max / 2), n_max]`.
pub fn density_estimate(s: &PrefixSet) -> DensityEstimate {
    density_estimate_from(s, s.n_max.div_ceil(2))
}

pub fn density_estimate_from(s: &PrefixSet, tail_start: u64) -> DensityEstimate {
    let mut ratios = Vec::with_capacity(s.n_max as usize);
    let mut members = s.members.iter().peekable();
    let mut count = 0u64;
    for n in 1..=s.n_max {
        while members.next_if(|&&m| m <= n).is_some() {
            count += 1;
        }
        ratios.push(count as f64 / n as f64);
    }
    let tail_start = tail_start.clamp(1, s.n_max.max(1));
    let tail = ratios.get(tail_start as usize - 1..).unwrap_or(&[]);
    let lower_proxy = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let upper_proxy = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lower_proxy, upper_proxy) = if tail.is_empty() {
        (0.0, 0.0)
    } else {
        (lower_proxy, upper_proxy)
    };
    DensityEstimate {
        ratios,
        tail_start,
        lower_proxy,
        upper_proxy,
    }
}

/// Smallest `m <= bound` whose length-`km` prefix is a `k`-anti-power.
pub fn minimal_antipower_prefix(x: &InfiniteWord, k: usize, bound: u64) -> Result<Option<u64>> {
    let prefix = x.prefix(k * bound as usize)?;
    let names = FactorNames::new(prefix.letters());
    let mut keys = vec![0u64; k];
    for m in 1..=bound as usize {
        keys.iter_mut()
            .enumerate()
            .for_each(|(b, key)| *key = names.key(b * m, m));
        if profile_keys(&mut keys).max_class == 1 {
            return Ok(Some(m as u64));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{fibonacci_word, gamma_word, infinite_alphabet_power_free, thue_morse};
    use crate::patterns::is_anti_power;
    use crate::word::Letter;

    fn constant() -> InfiniteWord {
        InfiniteWord::constant(Letter(10))
    }

    fn range(a: u64, b: u64) -> Vec<u64> {
        (a..=b).collect()
    }

    #[test]
    fn ap_set_examples() {
        assert_eq!(ap_set(&thue_morse(), 2, 1, 5).unwrap().members, range(1, 5));
        assert!(ap_set(&constant(), 2, 1, 10).unwrap().members.is_empty());
        assert_eq!(ap_set(&constant(), 3, 3, 10).unwrap().members, range(1, 10));
    }

    #[test]
    fn d_set_examples() {
        assert_eq!(d_set(&constant(), 3, 3, 10).unwrap().members, range(1, 10));
        assert!(d_set(&constant(), 3, 2, 10).unwrap().members.is_empty());
        assert_eq!(d_set(&thue_morse(), 2, 0, 5).unwrap().members, range(1, 5));
    }

    fn set_of(members: Vec<u64>, n_max: u64) -> PrefixSet {
        PrefixSet {
            kind: PrefixKind::AntiPower { k: 1, lambda: 1 },
            n_max,
            members,
        }
    }

    #[test]
    fn density_examples() {
        let full = density_estimate(&set_of(range(1, 10), 10));
        assert_eq!((full.lower_proxy, full.upper_proxy), (1.0, 1.0));
        let empty = density_estimate(&set_of(vec![], 10));
        assert_eq!((empty.lower_proxy, empty.upper_proxy), (0.0, 0.0));
        let even = density_estimate(&set_of((1..=50).map(|i| 2 * i).collect(), 100));
        assert!((0.49..=0.51).contains(&even.lower_proxy));
        assert!((0.49..=0.51).contains(&even.upper_proxy));
        assert_eq!(even.tail_start, 50);
    }

    #[test]
    fn minimal_prefix_examples() {
        assert_eq!(
            minimal_antipower_prefix(&thue_morse(), 2, 10).unwrap(),
            Some(1)
        );
        assert_eq!(
            minimal_antipower_prefix(&thue_morse(), 3, 10).unwrap(),
            Some(5)
        );
        assert_eq!(minimal_antipower_prefix(&constant(), 2, 10).unwrap(), None);
    }

    fn words() -> Vec<InfiniteWord> {
        vec![thue_morse(), fibonacci_word(), gamma_word(4, None).unwrap()]
    }

    #[test]
    fn lambda_one_is_distinct_blocks() {
        for x in words() {
            for k in 1..=5 {
                let set = ap_set(&x, k, 1, 50).unwrap();
                for m in 1..=50u64 {
                    let prefix = x.prefix(k * m as usize).unwrap();
                    assert_eq!(set.contains(m), is_anti_power(&prefix, k));
                }
            }
        }
    }

    #[test]
    fn monotone_in_parameters() {
        for x in words() {
            for k in 1..=5 {
                for lambda in 1..k {
                    let a = ap_set(&x, k, lambda, 50).unwrap();
                    assert!(a.is_subset(&ap_set(&x, k, lambda + 1, 50).unwrap()));
                }
                for sigma in 0..10 {
                    let d = d_set(&x, k, sigma, 50).unwrap();
                    assert!(d.is_subset(&d_set(&x, k, sigma + 1, 50).unwrap()));
                }
            }
        }
    }

    #[test]
    fn complement_has_many_equal_pairs() {
        for x in words() {
            for k in 1..=5 {
                for lambda in 1..k {
                    let ap = ap_set(&x, k, lambda, 50).unwrap();
                    let budget = ((lambda + 1) * lambda / 2) as u64;
                    let heavy = d_set_at_least(&x, k, budget, 50).unwrap();
                    for m in 1..=50 {
                        assert!(ap.contains(m) || heavy.contains(m));
                    }
                }
            }
        }
    }

    #[test]
    fn complement_is_not_within_the_light_set() {
        // m = 1: "01101" has blocks 0,1,1,0,1 with 4 equal pairs
        let ap = ap_set(&thue_morse(), 5, 1, 1).unwrap();
        let light = d_set(&thue_morse(), 5, 1, 1).unwrap();
        assert!(!ap.contains(1) && !light.contains(1));
    }

    #[test]
    fn inf_alphabet_has_no_short_17_anti_power_prefix() {
        let set = ap_set(&infinite_alphabet_power_free(), 17, 1, 50).unwrap();
        assert!(set.members.is_empty());
    }

    #[test]
    fn json_shape() {
        let set = ap_set(&thue_morse(), 3, 1, 6).unwrap();
        let v = serde_json::to_value(&set).unwrap();
        assert_eq!(v["kind"], "AP");
        assert_eq!(v["lambda"], 1);
        assert_eq!(v["members"], serde_json::json!([5]));
    }
}
