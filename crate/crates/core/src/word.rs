//! Finite and infinite words over an integer alphabet.
//!
//! Positions at the public boundary are 1-based: `factor(w, i, j)` is the
//! contiguous factor `w[i..j]` inclusive. Letters are stored as 0-based codes.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest alphabet that still has a single-character text form.
pub const CHAR_ALPHABET: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[repr(transparent)]
pub struct Letter(pub u32);

impl Letter {
    pub fn value(self) -> u32 {
        self.0
    }

    pub fn to_char(self) -> Option<char> {
        match self.0 {
            0..=9 => Some((b'0' + self.0 as u8) as char),
            10..=35 => Some((b'a' + (self.0 - 10) as u8) as char),
            36..=61 => Some((b'A' + (self.0 - 36) as u8) as char),
            _ => None,
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        let v = match c {
            '0'..='9' => c as u32 - '0' as u32,
            'a'..='z' => c as u32 - 'a' as u32 + 10,
            'A'..='Z' => c as u32 - 'A' as u32 + 36,
            _ => return None,
        };
        Some(Letter(v))
    }
}

impl From<u32> for Letter {
    fn from(v: u32) -> Self {
        Letter(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    Finite(u32),
    Unbounded,
}

impl Alphabet {
    pub fn admits(self, letter: Letter) -> bool {
        match self {
            Alphabet::Finite(size) => letter.0 < size,
            Alphabet::Unbounded => true,
        }
    }

    pub fn size(self) -> Option<u32> {
        match self {
            Alphabet::Finite(size) => Some(size),
            Alphabet::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: Alphabet) -> Result<Word> {
        if let Alphabet::Finite(size) = alphabet {
            if let Some(bad) = letters.iter().find(|l| l.0 >= size) {
                return Err(Error::LetterOutOfAlphabet {
                    letter: bad.0,
                    size,
                });
            }
        }
        Ok(Word { letters, alphabet })
    }

    /// Word over the unbounded alphabet; never fails.
    pub fn unbounded(letters: Vec<Letter>) -> Word {
        Word {
            letters,
            alphabet: Alphabet::Unbounded,
        }
    }

    pub fn from_codes(codes: &[u32], alphabet: Alphabet) -> Result<Word> {
        Word::new(codes.iter().copied().map(Letter).collect(), alphabet)
    }

    pub fn empty(alphabet: Alphabet) -> Word {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Option<Letter> {
        i.checked_sub(1).and_then(|i| self.letters.get(i)).copied()
    }

    fn with_letters(&self, letters: Vec<Letter>) -> Word {
        Word {
            letters,
            alphabet: self.alphabet,
        }
    }

    /// The factor `w[i..j]`, 1-based and inclusive.
    pub fn factor(&self, i: usize, j: usize) -> Result<Word> {
        if i == 0 || i > j || j > self.len() {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                len: self.len(),
            });
        }
        Ok(self.with_letters(self.letters[i - 1..j].to_vec()))
    }

    /// Splits the word into `k` consecutive blocks of equal length.
    pub fn blocks(&self, k: usize) -> Result<Vec<Word>> {
        Ok(self
            .block_slices(k)?
            .into_iter()
            .map(|b| self.with_letters(b.to_vec()))
            .collect())
    }

    pub fn block_slices(&self, k: usize) -> Result<Vec<&[Letter]>> {
        if self.is_empty() {
            return Err(Error::EmptyBlock);
        }
        if k == 0 || !self.len().is_multiple_of(k) {
            return Err(Error::NotDivisible { len: self.len(), k });
        }
        Ok(self.letters.chunks_exact(self.len() / k).collect())
    }

    pub fn longest_proper_border(&self) -> Result<Word> {
        if self.is_empty() {
            return Err(Error::EmptyInput);
        }
        let fail = failure_function(&self.letters);
        let b = fail[self.len() - 1];
        Ok(self.with_letters(self.letters[..b].to_vec()))
    }

    pub fn is_border(&self, v: &Word) -> bool {
        v.len() < self.len()
            && self.letters.starts_with(&v.letters)
            && self.letters.ends_with(&v.letters)
    }

    /// Given a border `v` of `w = u v`, returns `u` when `|w| >= ell * |u|`;
    /// in that case `u^ell` is a prefix of `w`.
    pub fn power_from_border(&self, v: &Word, ell: usize) -> Result<Option<Word>> {
        if !self.is_border(v) {
            return Err(Error::NotABorder);
        }
        let period = self.len() - v.len();
        if self.len() < ell * period {
            return Ok(None);
        }
        let u = &self.letters[..period];
        debug_assert!(self.letters[..ell * period]
            .chunks_exact(period)
            .all(|c| c == u));
        Ok(Some(self.with_letters(u.to_vec())))
    }

    pub fn pow(&self, e: usize) -> Word {
        self.with_letters(self.letters.repeat(e))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        let alphabet = match (self.alphabet, other.alphabet) {
            (Alphabet::Finite(a), Alphabet::Finite(b)) => Alphabet::Finite(a.max(b)),
            _ => Alphabet::Unbounded,
        };
        Word { letters, alphabet }
    }

    /// Text form: single characters when every letter has one and the
    /// alphabet is finite, otherwise `int:` followed by comma-separated codes.
    pub fn to_text(&self) -> String {
        let char_form = matches!(self.alphabet, Alphabet::Finite(_))
            && self.letters.iter().all(|l| l.0 < CHAR_ALPHABET);
        if char_form {
            self.letters.iter().filter_map(|l| l.to_char()).collect()
        } else {
            let codes: Vec<String> = self.letters.iter().map(|l| l.0.to_string()).collect();
            format!("int:{}", codes.join(","))
        }
    }

    pub fn parse(text: &str) -> Result<Word> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("int:") {
            let rest = rest.trim();
            if rest.is_empty() {
                return Ok(Word::empty(Alphabet::Unbounded));
            }
            let letters = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map(Letter)
                        .map_err(|_| Error::Parse(format!("bad integer letter {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Word::unbounded(letters));
        }
        let letters = text
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("bad letter {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters, Alphabet::Finite(CHAR_ALPHABET))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// Parses a word file: one word per line, blank lines and `#` lines skipped.
pub fn parse_word_lines(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(Word::parse)
        .collect()
}

/// `fail[i]` is the length of the longest proper border of `s[..=i]`.
pub fn failure_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut fail = vec![0; s.len()];
    let mut b = 0;
    for i in 1..s.len() {
        while b > 0 && s[i] != s[b] {
            b = fail[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        fail[i] = b;
    }
    fail
}

type LetterRule = dyn Fn(u64) -> Result<Letter> + Send + Sync;

/// An infinite word given by a pure rule from 1-based position to letter.
#[derive(Clone)]
pub struct InfiniteWord {
    rule: Arc<LetterRule>,
    alphabet: Alphabet,
    description: String,
}

impl InfiniteWord {
    pub fn new<F>(alphabet: Alphabet, description: impl Into<String>, rule: F) -> InfiniteWord
    where
        F: Fn(u64) -> Result<Letter> + Send + Sync + 'static,
    {
        InfiniteWord {
            rule: Arc::new(rule),
            alphabet,
            description: description.into(),
        }
    }

    pub fn constant(letter: Letter) -> InfiniteWord {
        InfiniteWord::new(
            Alphabet::Finite(letter.0 + 1),
            format!("constant {}", letter.0),
            move |_| Ok(letter),
        )
    }

    /// A constant word with a single different letter at 1-based `position`.
    pub fn one_defect(base: Letter, defect: Letter, position: u64) -> InfiniteWord {
        InfiniteWord::new(
            Alphabet::Finite(base.0.max(defect.0) + 1),
            format!("constant {} with {} at {}", base.0, defect.0, position),
            move |i| Ok(if i == position { defect } else { base }),
        )
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn letter_at(&self, i: u64) -> Result<Letter> {
        if i == 0 {
            return Err(Error::InvalidArgument("positions are 1-based".into()));
        }
        (self.rule)(i)
    }

    pub fn prefix(&self, n: usize) -> Result<Word> {
        let letters = (1..=n as u64)
            .map(|i| (self.rule)(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(Word {
            letters,
            alphabet: self.alphabet,
        })
    }
}

impl fmt::Debug for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InfiniteWord")
            .field("alphabet", &self.alphabet)
            .field("description", &self.description)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn factor_examples() {
        assert_eq!(w("abcde").factor(2, 4).unwrap(), w("bcd"));
        assert_eq!(w("0").factor(1, 1).unwrap(), w("0"));
        assert_eq!(w("1001000110").factor(3, 4).unwrap(), w("01"));
    }

    #[test]
    fn factor_out_of_range() {
        let x = w("abc");
        assert!(matches!(x.factor(0, 1), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(x.factor(3, 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(x.factor(2, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn blocks_examples() {
        let got: Vec<String> = w("1001000110")
            .blocks(5)
            .unwrap()
            .iter()
            .map(Word::to_text)
            .collect();
        assert_eq!(got, ["10", "01", "00", "01", "10"]);
        assert_eq!(w("aa").blocks(2).unwrap(), vec![w("a"), w("a")]);
        assert_eq!(w("abcabc").blocks(2).unwrap(), vec![w("abc"), w("abc")]);
        assert_eq!(
            w("abc").blocks(2),
            Err(Error::NotDivisible { len: 3, k: 2 })
        );
        assert_eq!(w("").blocks(1), Err(Error::EmptyBlock));
    }

    #[test]
    fn border_examples() {
        assert_eq!(w("abab").longest_proper_border().unwrap(), w("ab"));
        assert_eq!(w("abc").longest_proper_border().unwrap(), w(""));
        assert_eq!(w("aaaa").longest_proper_border().unwrap(), w("aaa"));
        assert_eq!(w("").longest_proper_border(), Err(Error::EmptyInput));
    }

    #[test]
    fn power_from_border_examples() {
        assert_eq!(
            w("ababab").power_from_border(&w("abab"), 3).unwrap(),
            Some(w("ab"))
        );
        assert_eq!(w("ab").pow(3), w("ababab"));
        assert_eq!(w("aabaa").power_from_border(&w("aa"), 2).unwrap(), None);
        assert_eq!(
            w("aaaa").power_from_border(&w("aaa"), 4).unwrap(),
            Some(w("a"))
        );
        assert_eq!(
            w("abcab").power_from_border(&w("bc"), 2),
            Err(Error::NotABorder)
        );
    }

    #[test]
    fn text_round_trip_and_int_form() {
        let y = w("int:1,1,2,2,2,2");
        assert_eq!(y.alphabet(), Alphabet::Unbounded);
        assert_eq!(y.to_text(), "int:1,1,2,2,2,2");
        assert_eq!(w("0aZ").letters(), &[Letter(0), Letter(10), Letter(61)]);
        assert!(Word::parse("ab-").is_err());
        assert!(Word::from_codes(&[0, 2], Alphabet::Finite(2)).is_err());
    }

    #[test]
    fn word_file_skips_comments() {
        let ws = parse_word_lines("# header\n0110\n\n  int:3,4\n").unwrap();
        assert_eq!(ws.len(), 2);
        assert_eq!(ws[1].letters(), &[Letter(3), Letter(4)]);
    }

    fn brute_border(s: &[u32]) -> usize {
        (0..s.len())
            .rev()
            .find(|&b| s[..b] == s[s.len() - b..])
            .unwrap_or(0)
    }

    proptest! {
        #[test]
        fn border_matches_brute_force(s in proptest::collection::vec(0u32..3, 1..=20)) {
            let x = Word::from_codes(&s, Alphabet::Finite(3)).unwrap();
            let b = x.longest_proper_border().unwrap();
            prop_assert!(b.len() < x.len());
            prop_assert!(s.starts_with(&s[..b.len()]) && s.ends_with(&s[..b.len()]));
            prop_assert_eq!(b.len(), brute_border(&s));
            if let Some(u) = x.power_from_border(&b, 2).unwrap() {
                prop_assert!(x.letters().starts_with(u.pow(2).letters()));
            }
        }

        #[test]
        fn factor_and_blocks_reassemble(s in proptest::collection::vec(0u32..4, 1..=24), k in 1usize..=6) {
            let x = Word::from_codes(&s, Alphabet::Finite(4)).unwrap();
            prop_assert_eq!(x.factor(1, x.len()).unwrap(), x.clone());
            if x.len().is_multiple_of(k) {
                let joined: Vec<Letter> = x.blocks(k).unwrap().iter().flat_map(|b| b.letters().to_vec()).collect();
                prop_assert_eq!(joined.as_slice(), x.letters());
            }
            let back = Word::parse(&x.to_text()).unwrap();
            prop_assert_eq!(back.letters(), x.letters());
        }
    }
}
