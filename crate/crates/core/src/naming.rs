//! Exact constant-time factor equality by naming basic factors
//! (factors whose length is a power of two), Karp–Miller–Rosenberg style.

use crate::word::Letter;

pub struct FactorNames {
    len: usize,
    // levels[j][s] names w[s..s + 2^j]
    levels: Vec<Vec<u32>>,
}

impl FactorNames {
    pub fn new(letters: &[Letter]) -> FactorNames {
        let n = letters.len();
        let mut levels = Vec::new();
        if n == 0 {
            return FactorNames { len: 0, levels };
        }
        let mut sorted: Vec<u32> = letters.iter().map(|l| l.0).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let base: Vec<u32> = letters
            .iter()
            .map(|l| sorted.binary_search(&l.0).unwrap() as u32)
            .collect();
        levels.push(base);

        let mut half = 1;
        let mut order: Vec<usize> = Vec::with_capacity(n);
        while 2 * half <= n {
            let prev = levels.last().unwrap();
            let count = n - 2 * half + 1;
            order.clear();
            order.extend(0..count);
            let pair = |s: usize| ((prev[s] as u64) << 32) | prev[s + half] as u64;
            order.sort_unstable_by_key(|&s| pair(s));
            let mut names = vec![0u32; count];
            let mut next = 0u32;
            for (idx, &s) in order.iter().enumerate() {
                if idx > 0 && pair(order[idx - 1]) != pair(s) {
                    next += 1;
                }
                names[s] = next;
            }
            levels.push(names);
            half *= 2;
        }
        FactorNames { len: n, levels }
    }

    /// A key that identifies `w[start..start + m]` among all factors of length `m`.
    #[inline]
    pub fn key(&self, start: usize, m: usize) -> u64 {
        debug_assert!(m >= 1 && start + m <= self.len);
        let j = (usize::BITS - 1 - m.leading_zeros()) as usize;
        let level = &self.levels[j];
        ((level[start] as u64) << 32) | level[start + m - (1 << j)] as u64
    }

    #[cfg(test)]
    pub fn equal(&self, a: usize, b: usize, m: usize) -> bool {
        m == 0 || self.key(a, m) == self.key(b, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn keys_agree_with_slice_equality(s in proptest::collection::vec(0u32..3, 1..=40)) {
            let letters: Vec<Letter> = s.iter().copied().map(Letter).collect();
            let names = FactorNames::new(&letters);
            for m in 1..=s.len() {
                for a in 0..=s.len() - m {
                    for b in 0..=s.len() - m {
                        prop_assert_eq!(names.equal(a, b, m), s[a..a + m] == s[b..b + m]);
                    }
                }
            }
        }
    }
}
