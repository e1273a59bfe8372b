//! The canonical spectrum Γ = { Σ aᵢ(2n)ⁱ : aᵢ ∈ {0, n/2} } as digit words.
//!
//! A point of Γ is stored as the bit mask of its digits (bit i set when
//! aᵢ = n/2). Canonical form is automatic: there are no trailing zero digits
//! in a mask. The mask order coincides with the value order for every n.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::arith::{BernoulliParams, QuarterInt};
use crate::error::{Error, Result};

/// Largest number of digits a [`DigitWord`] can hold.
pub const MAX_DIGITS: u32 = 63;

/// A finite {0,1} digit sequence b₀b₁…b_m with b_m = 1 (or empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DigitWord(u64);

impl DigitWord {
    pub const EMPTY: DigitWord = DigitWord(0);

    /// Word whose bit i is b_i.
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask >> MAX_DIGITS != 0 {
            return Err(Error::TooManyDigits {
                max: MAX_DIGITS,
                got: 64,
            });
        }
        Ok(DigitWord(mask))
    }

    /// Word from digits b₀, b₁, …; trailing zeros are dropped.
    pub fn from_digits(digits: &[bool]) -> Result<Self> {
        let len = digits.iter().rposition(|&b| b).map_or(0, |i| i + 1) as u32;
        if len > MAX_DIGITS {
            return Err(Error::TooManyDigits {
                max: MAX_DIGITS,
                got: len,
            });
        }
        let mask = digits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        Ok(DigitWord(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn digit(self, i: u32) -> bool {
        i < 64 && (self.0 >> i) & 1 == 1
    }

    pub fn digits(self) -> Vec<bool> {
        (0..self.len()).map(|i| self.digit(i)).collect()
    }

    /// Number of leading zero digits b₀ = … = b_{k−1} = 0 (for nonempty words).
    pub fn leading_zeros(self) -> u32 {
        self.0.trailing_zeros()
    }

    /// Shift right, placing `bit` in position 0.
    pub(crate) fn push_front(self, bit: bool) -> Self {
        assert!(
            self.len() < MAX_DIGITS,
            "digit word would exceed {MAX_DIGITS} digits"
        );
        DigitWord((self.0 << 1) | bit as u64)
    }

    /// Remove b₀, returning it with the rest of the word.
    pub(crate) fn pop_front(self) -> (bool, Self) {
        (self.0 & 1 == 1, DigitWord(self.0 >> 1))
    }
}

/// Bit string b₀b₁…; the empty word is the empty string.
impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.digit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for DigitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        DigitWord::from_digits(&digits)
    }
}

impl Serialize for DigitWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Position of a point of Γ in the partition Γ = {0} ⊔ Γ₀ ⊔ Γ₁ ⊔ …
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Stratum {
    Zero,
    Level(u32),
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stratum::Zero => f.write_str("0"),
            Stratum::Level(k) => write!(f, "G{k}"),
        }
    }
}

/// Position of a point of Γ₀ in Γ₀ = {1} ⊔ Γ̃₀ ⊔ Γ̃₁ ⊔ … (n = 2 only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TildeStratum {
    OnePoint,
    Level(u32),
    /// n ≠ 2, where the refinement is not defined.
    Other,
}

impl fmt::Display for TildeStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TildeStratum::OnePoint => f.write_str("1"),
            TildeStratum::Level(k) => write!(f, "T{k}"),
            TildeStratum::Other => f.write_str("other"),
        }
    }
}

/// Enumeration order for truncations of Γ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaOrder {
    ValueAscending,
    /// {0}, then Γ₀, Γ₁, …, each ascending in value.
    StrataMajor,
}

/// value(w) = (n/2)·Σ bᵢ(2n)ⁱ.
///
/// Panics if the value does not fit in an `i128` numerator.
pub fn word_value(w: DigitWord, params: BernoulliParams) -> QuarterInt {
    let base = params.base();
    let mut acc: i128 = 0;
    for i in (0..w.len()).rev() {
        acc = acc
            .checked_mul(base)
            .and_then(|a| a.checked_add(w.digit(i) as i128))
            .expect("word value overflows i128");
    }
    // n/2 is 2n quarters
    QuarterInt::from_quarters(acc.checked_mul(base).expect("word value overflows i128"))
}

/// The word whose value is t, if t ∈ Γ: the base-2n digits of 2t/n must all be 0 or 1.
pub fn word_from_value(t: QuarterInt, params: BernoulliParams) -> Option<DigitWord> {
    let base = params.base();
    let q = t.quarters();
    if q < 0 || q % base != 0 {
        return None;
    }
    let mut rest = q / base;
    let mut mask = 0u64;
    let mut i = 0u32;
    while rest != 0 {
        if i >= MAX_DIGITS {
            return None;
        }
        match rest % base {
            0 => {}
            1 => mask |= 1 << i,
            _ => return None,
        }
        rest /= base;
        i += 1;
    }
    Some(DigitWord(mask))
}

/// All words with at most `max_digits` digits, each exactly once.
pub fn enumerate_gamma(max_digits: u32, order: GammaOrder) -> Vec<DigitWord> {
    assert!(
        max_digits <= MAX_DIGITS,
        "max_digits must be at most {MAX_DIGITS}"
    );
    let count = 1u64 << max_digits;
    match order {
        GammaOrder::ValueAscending => (0..count).map(DigitWord).collect(),
        GammaOrder::StrataMajor => {
            let mut words = Vec::with_capacity(count as usize);
            words.push(DigitWord::EMPTY);
            for k in 0..max_digits {
                words.extend(stratum_words(k, max_digits));
            }
            words
        }
    }
}

/// The words of Γ_k with at most `max_digits` digits, ascending.
pub fn stratum_words(k: u32, max_digits: u32) -> impl Iterator<Item = DigitWord> {
    // bits below k are 0, bit k is 1, bits k+1..max_digits free
    let free = max_digits.saturating_sub(k + 1);
    let count = if k < max_digits { 1u64 << free } else { 0 };
    (0..count).map(move |rest| DigitWord((rest << (k + 1)) | (1 << k)))
}

pub fn stratum_index(w: DigitWord) -> Stratum {
    if w.is_empty() {
        Stratum::Zero
    } else {
        Stratum::Level(w.leading_zeros())
    }
}

/// Classifies a point of Γ₀ by the refinement Γ̃_k = 1 + 4^{k+1}(1 + 4Γ).
///
/// γ ∈ Γ̃_k iff b₀ = b_{k+1} = 1 and b₁ = … = b_k = 0. For n ≠ 2 every word
/// of Γ₀ is reported as [`TildeStratum::Other`].
pub fn tilde_stratum_index(w: DigitWord, params: BernoulliParams) -> Result<TildeStratum> {
    if !w.digit(0) {
        return Err(Error::NotInGammaZero(w.to_string()));
    }
    if params.n() != 2 {
        return Ok(TildeStratum::Other);
    }
    let rest = w.mask() >> 1;
    if rest == 0 {
        Ok(TildeStratum::OnePoint)
    } else {
        Ok(TildeStratum::Level(rest.trailing_zeros()))
    }
}

/// p·value(w), the corresponding point of pΓ.
pub fn scale_value(w: DigitWord, params: BernoulliParams) -> Result<QuarterInt> {
    let p = params.require_p()? as i128;
    Ok(word_value(w, params) * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u32) -> BernoulliParams {
        BernoulliParams::scale(n).unwrap()
    }

    fn word(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    fn values(words: &[DigitWord], n: u32) -> Vec<i128> {
        words
            .iter()
            .map(|&w| word_value(w, params(n)).quarters() / 4)
            .collect()
    }

    #[test]
    fn word_values() {
        assert_eq!(word_value(word("11"), params(2)), QuarterInt::from_int(5));
        assert_eq!(word_value(DigitWord::EMPTY, params(3)), QuarterInt::ZERO);
        assert_eq!(word_value(word("01"), params(3)), QuarterInt::from_int(9));
        assert_eq!(word_value(word("1"), params(3)), QuarterInt::from_halves(3));
    }

    #[test]
    fn values_to_words() {
        let p2 = params(2);
        assert_eq!(
            word_from_value(QuarterInt::from_int(5), p2),
            Some(word("11"))
        );
        assert_eq!(word_from_value(QuarterInt::from_int(2), p2), None);
        assert_eq!(
            word_from_value(QuarterInt::ZERO, p2),
            Some(DigitWord::EMPTY)
        );
        assert_eq!(word_from_value(QuarterInt::from_int(-1), p2), None);
        assert_eq!(word_from_value(QuarterInt::from_halves(1), p2), None);
    }

    #[test]
    fn bit_strings() {
        assert_eq!(word("101").mask(), 0b101);
        assert_eq!(word("0100").to_string(), "01");
        assert_eq!(DigitWord::EMPTY.to_string(), "");
        assert_eq!(word(""), DigitWord::EMPTY);
        assert!("012".parse::<DigitWord>().is_err());
        assert!("1".repeat(64).parse::<DigitWord>().is_err());
    }

    #[test]
    fn enumeration_orders() {
        let asc = enumerate_gamma(3, GammaOrder::ValueAscending);
        assert_eq!(values(&asc, 2), vec![0, 1, 4, 5, 16, 17, 20, 21]);
        assert_eq!(
            enumerate_gamma(0, GammaOrder::StrataMajor),
            vec![DigitWord::EMPTY]
        );
        assert_eq!(
            enumerate_gamma(0, GammaOrder::ValueAscending),
            vec![DigitWord::EMPTY]
        );
        let strata = enumerate_gamma(3, GammaOrder::StrataMajor);
        assert_eq!(values(&strata, 2), vec![0, 1, 5, 17, 21, 4, 20, 16]);
    }

    #[test]
    fn strata() {
        let p2 = params(2);
        let w1 = word_from_value(QuarterInt::from_int(1), p2).unwrap();
        let w16 = word_from_value(QuarterInt::from_int(16), p2).unwrap();
        assert_eq!(stratum_index(w1), Stratum::Level(0));
        assert_eq!(stratum_index(w16), Stratum::Level(2));
        assert_eq!(stratum_index(DigitWord::EMPTY), Stratum::Zero);
    }

    #[test]
    fn tilde_strata() {
        let p2 = params(2);
        let at = |v: i128| {
            let w = word_from_value(QuarterInt::from_int(v), p2).unwrap();
            tilde_stratum_index(w, p2)
        };
        assert_eq!(at(1).unwrap(), TildeStratum::OnePoint);
        assert_eq!(at(5).unwrap(), TildeStratum::Level(0));
        assert_eq!(at(17).unwrap(), TildeStratum::Level(1));
        assert!(matches!(at(4), Err(Error::NotInGammaZero(_))));
        assert_eq!(
            tilde_stratum_index(word("11"), params(4)).unwrap(),
            TildeStratum::Other
        );
    }

    #[test]
    fn scaling() {
        let p = BernoulliParams::quarter_five();
        assert_eq!(scale_value(word("1"), p).unwrap(), QuarterInt::from_int(5));
        assert_eq!(scale_value(DigitWord::EMPTY, p).unwrap(), QuarterInt::ZERO);
        assert_eq!(
            scale_value(word("01"), p).unwrap(),
            QuarterInt::from_int(20)
        );
        assert!(matches!(
            scale_value(word("1"), params(2)),
            Err(Error::MissingScaling)
        ));
    }
}
