use serde::Serialize;

use super::{BernoulliParams, QuarterInt};

/// Whether μ̂(t) = 0, i.e. whether 4t = (2n)^k (2m + 1) for some k ≥ 1, m ∈ ℤ.
///
/// With 2n = 2^s·u (u odd), 4t lies in that set exactly when its 2-adic
/// valuation a is a positive multiple of s, a = s·k, and u^k divides the odd
/// part of 4t.
pub fn in_zero_set(t: QuarterInt, params: BernoulliParams) -> bool {
    let q = t.quarters().unsigned_abs();
    if q == 0 {
        return false;
    }
    let base = params.base() as u128;
    let s = base.trailing_zeros();
    let u = base >> s;
    let a = q.trailing_zeros();
    if a == 0 || !a.is_multiple_of(s) {
        return false;
    }
    let k = a / s;
    let mut odd = q >> a;
    if u == 1 {
        return true;
    }
    for _ in 0..k {
        if !odd.is_multiple_of(u) {
            return false;
        }
        odd /= u;
    }
    true
}

/// Result of cancelling factors of 2n from a μ̂ argument.
///
/// μ̂(t) = sign · μ̂(reduced). When `sign` is 0, `reduced` is the argument t'
/// whose factor cos(2πt') vanishes (4t' odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Reduction {
    pub sign: i8,
    pub reduced: QuarterInt,
}

impl Reduction {
    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// The same reduction with its sign multiplied by `factor` (±1).
    pub fn signed(self, factor: i8) -> Self {
        Reduction {
            sign: self.sign * factor,
            reduced: self.reduced,
        }
    }
}

/// Applies μ̂(2n·t') = cos(2πt')·μ̂(t') while t' = t/2n stays in (1/4)ℤ.
///
/// Each extracted cosine is exactly 1, 0 or −1 (4t' ≡ 0; 1, 3; 2 mod 4).
/// The loop stops at the first vanishing factor, at t = 0, or when 2n no
/// longer divides 4t.
pub fn reduce_argument(t: QuarterInt, params: BernoulliParams) -> Reduction {
    let base = params.base();
    let mut sign = 1i8;
    let mut current = t;
    loop {
        if current.is_zero() {
            return Reduction {
                sign,
                reduced: current,
            };
        }
        let Some(next) = current.div_exact(base) else {
            return Reduction {
                sign,
                reduced: current,
            };
        };
        match next.quarters().rem_euclid(4) {
            0 => {}
            2 => sign = -sign,
            _ => {
                return Reduction {
                    sign: 0,
                    reduced: next,
                }
            }
        }
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> BernoulliParams {
        BernoulliParams::scale(n).unwrap()
    }

    fn q(x: i128) -> QuarterInt {
        QuarterInt::from_int(x)
    }

    #[test]
    fn zero_set_examples() {
        assert!(in_zero_set(q(1), p(2)));
        assert!(in_zero_set(q(4), p(2)));
        assert!(!in_zero_set(q(0), p(2)));
        assert!(!in_zero_set(q(2), p(2)));
        assert!(!in_zero_set(q(24), p(2)));
        assert!(in_zero_set(q(-5), p(2)));
    }

    #[test]
    fn zero_set_non_power_of_two_base() {
        // n = 3: Z = {6^k (2m+1) / 4}
        assert!(in_zero_set(QuarterInt::from_halves(3), p(3)));
        assert!(in_zero_set(q(9), p(3)));
        assert!(!in_zero_set(q(3), p(3)));
        assert!(!in_zero_set(QuarterInt::from_halves(1), p(3)));
        // 4t = 36·5: k = 2 needs 36 | 4t with odd cofactor
        assert!(in_zero_set(QuarterInt::from_quarters(180), p(3)));
        // 4t = 36 = 6^2
        assert!(in_zero_set(QuarterInt::from_quarters(36), p(3)));
        // valuation 2 with only one factor of 3 available
        assert!(!in_zero_set(QuarterInt::from_quarters(12), p(3)));
    }

    #[test]
    fn reduction_examples() {
        let r = reduce_argument(q(6), p(2));
        assert_eq!(
            r,
            Reduction {
                sign: -1,
                reduced: QuarterInt::from_halves(3)
            }
        );
        let r = reduce_argument(q(24), p(2));
        assert_eq!(
            r,
            Reduction {
                sign: -1,
                reduced: QuarterInt::from_halves(3)
            }
        );
        assert!(reduce_argument(q(1), p(2)).is_zero());
        assert_eq!(
            reduce_argument(q(0), p(2)),
            Reduction {
                sign: 1,
                reduced: q(0)
            }
        );
        // 20 -> 5 -> vanishing factor at 5/4
        let r = reduce_argument(q(20), p(2));
        assert_eq!(
            r,
            Reduction {
                sign: 0,
                reduced: QuarterInt::from_quarters(5)
            }
        );
        // an argument 2n does not divide is left alone
        let half = QuarterInt::from_halves(1);
        assert_eq!(
            reduce_argument(half, p(2)),
            Reduction {
                sign: 1,
                reduced: half
            }
        );
    }

    #[test]
    fn zero_set_matches_reduction_small() {
        for n in 1..=5 {
            for quarters in -4096..=4096 {
                let t = QuarterInt::from_quarters(quarters);
                assert_eq!(
                    in_zero_set(t, p(n)),
                    reduce_argument(t, p(n)).is_zero(),
                    "n={n} t={t}"
                );
            }
        }
    }
}
