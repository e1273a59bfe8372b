use crate::arith::{in_zero_set, mu_hat, reduce_argument, BernoulliParams, QuarterInt};
use crate::error::{Error, Result};
use crate::operators::{apply_s0, apply_s1, apply_s1_adj};
use crate::report::Report;
use crate::spectrum::{
    enumerate_gamma, scale_value, stratum_index, stratum_words, word_value, DigitWord, GammaOrder,
};

use super::u_argument;

/// Every entry linking different strata (the origin counts as its own
/// stratum) is an exact zero, and U e₀ = e₀.
pub fn verify_block_diagonal(params: BernoulliParams, max_digits: u32) -> Result<Report> {
    params.require_p()?;
    let mut report = Report::new("block-diagonal");
    let words = enumerate_gamma(max_digits, GammaOrder::StrataMajor);
    let mut cross = 0u64;
    for &row in &words {
        for &col in &words {
            let arg = u_argument(row, col, params)?;
            if col.is_empty() {
                // ⟨e_ξ, U e₀⟩ = μ̂(−ξ) = δ
                let ok = if row.is_empty() {
                    arg.is_zero()
                } else {
                    in_zero_set(arg, params)
                };
                report.check(
                    ok,
                    || format!("<e[{row}], U e0>"),
                    || format!("argument {arg} is not the Kronecker delta pattern"),
                );
            }
            if stratum_index(row) != stratum_index(col) {
                cross += 1;
                report.check(
                    in_zero_set(arg, params),
                    || format!("U({row}, {col})"),
                    || {
                        format!(
                            "cross-stratum entry {} -> {} has argument {arg} outside the zero set",
                            stratum_index(col),
                            stratum_index(row)
                        )
                    },
                );
            }
        }
    }
    report.note(format!(
        "{} words, {cross} cross-stratum entries",
        words.len()
    ));
    Ok(report)
}

/// For ξ′ = (2n)^k σ, γ′ = (2n)^k τ in Γ_k, the (ξ′, γ′) entry reduces to the
/// same (sign, argument) as the (σ, τ) entry of the Γ₀ block.
pub fn verify_block_equality(
    params: BernoulliParams,
    max_digits: u32,
    k_max: u32,
) -> Result<Report> {
    params.require_p()?;
    let mut report = Report::new("block-equality");
    for k in 0..=k_max.min(max_digits) {
        let block: Vec<DigitWord> = stratum_words(k, max_digits).collect();
        for &row in &block {
            let sigma = DigitWord::from_mask(row.mask() >> k)?;
            for &col in &block {
                let tau = DigitWord::from_mask(col.mask() >> k)?;
                let lifted = reduce_argument(u_argument(row, col, params)?, params);
                let base = reduce_argument(u_argument(sigma, tau, params)?, params);
                report.check(
                    lifted == base,
                    || format!("G{k} entry ({row}, {col}) vs G0 entry ({sigma}, {tau})"),
                    || format!("{lifted:?} != {base:?}"),
                );
            }
        }
        report.note(format!("G{k}: {} indices", block.len()));
    }
    Ok(report)
}

/// For even n: S₀U = US₀, entry by entry, with exact reductions.
///
/// The coefficient of S₀Ue_γ at e_{2nη} is μ̂(pγ − η); that of US₀e_γ is
/// μ̂(2n(pγ − η)). Both must reduce identically. US₀e_γ must also vanish on
/// Γ₀, the complement of the range of S₀.
pub fn verify_commutation_even(params: BernoulliParams, max_digits: u32) -> Result<Report> {
    if !params.is_even() {
        return Err(Error::Parity {
            expected: "even",
            n: params.n(),
        });
    }
    params.require_p()?;
    let mut report = Report::new("commute-even");
    let base = params.base();
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);

    for &gamma in &words {
        let p_gamma = scale_value(gamma, params)?;
        for &eta in &words {
            let x = p_gamma - word_value(eta, params);
            let s0u = reduce_argument(x, params);
            let us0 = reduce_argument(x * base, params);
            report.check(
                s0u == us0,
                || {
                    format!(
                        "coefficient of e[{}] in S0 U e[{gamma}] vs U S0 e[{gamma}]",
                        apply_s0(eta)
                    )
                },
                || format!("{s0u:?} != {us0:?}"),
            );
        }
        let p_s0_gamma = scale_value(apply_s0(gamma), params)?;
        for &xi in &words {
            if !xi.digit(0) {
                continue;
            }
            let arg = p_s0_gamma - word_value(xi, params);
            report.check(
                in_zero_set(arg, params),
                || format!("coefficient of e[{xi}] (in G0) in U S0 e[{gamma}]"),
                || format!("argument {arg} outside the zero set"),
            );
        }
    }
    // γ = 0: both sides are e₀
    let zero = scale_value(apply_s0(DigitWord::EMPTY), params)?;
    report.check(
        zero.is_zero(),
        || "U S0 e0".into(),
        || "U S0 e0 is not e0".into(),
    );
    Ok(report)
}

/// For odd n, split S₀Ue_γ = s + w and US₀e_γ = s̃ + w̃ along
/// S₀²(L²) ⊕ W₁ and check, exactly:
///
/// - γ ∈ 2nΓ: s̃ = s and w̃ = −w, so (US₀ − S₀U)e_γ = −2w;
/// - γ ∈ Γ₀: s̃ = −s and w̃ = w, so (US₀ − S₀U)e_γ = −2s.
///
/// Coefficients are compared as (sign, reduced argument) pairs, so the
/// check needs no ONB property of pΓ.
pub fn verify_odd_relations(params: BernoulliParams, max_digits: u32) -> Result<Report> {
    if params.is_even() {
        return Err(Error::Parity {
            expected: "odd",
            n: params.n(),
        });
    }
    params.require_p()?;
    let mut report = Report::new("commute-odd");
    let base = params.base();
    let half_n = QuarterInt::from_quarters(base);
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let (mut case_one, mut case_two) = (0u64, 0u64);

    for &gamma in &words {
        let in_gamma_zero = gamma.digit(0);
        // (sign relating s̃ to s, sign relating w̃ to w)
        let (s_factor, w_factor): (i8, i8) = if in_gamma_zero { (-1, 1) } else { (1, -1) };
        if in_gamma_zero {
            case_two += 1;
        } else {
            case_one += 1;
        }
        let p_gamma = scale_value(gamma, params)?;

        for &eta in &words {
            let eta_value = word_value(eta, params);
            // s: index (2n)²η, coefficient μ̂(pγ − 2nη)
            let s_arg = p_gamma - eta_value * base;
            // w: index 2n(n/2 + 2nη), coefficient μ̂(pγ − n/2 − 2nη)
            let w_arg = s_arg - half_n;
            let s = reduce_argument(s_arg, params);
            let w = reduce_argument(w_arg, params);
            // US₀e_γ coefficients at the same indices: μ̂(2n·arg)
            let s_tilde = reduce_argument(s_arg * base, params);
            let w_tilde = reduce_argument(w_arg * base, params);

            let s_index = apply_s0(apply_s0(eta));
            let w_index = apply_s0(apply_s1(eta));
            report.check(
                s_tilde == s.signed(s_factor),
                || format!("s-component at e[{s_index}] for gamma = [{gamma}]"),
                || format!("expected {:?}, got {s_tilde:?}", s.signed(s_factor)),
            );
            report.check(
                w_tilde == w.signed(w_factor),
                || format!("w-component at e[{w_index}] for gamma = [{gamma}]"),
                || format!("expected {:?}, got {w_tilde:?}", w.signed(w_factor)),
            );

            // commutator coefficients as integer multiples of the reduced μ̂ values
            let commutator_s = if s.reduced == s_tilde.reduced {
                s_tilde.sign - s.sign
            } else {
                i8::MAX
            };
            let commutator_w = if w.reduced == w_tilde.reduced {
                w_tilde.sign - w.sign
            } else {
                i8::MAX
            };
            let (expected_s, expected_w) = if in_gamma_zero {
                (-2 * s.sign, 0)
            } else {
                (0, -2 * w.sign)
            };
            report.check(
                commutator_s == expected_s && commutator_w == expected_w,
                || format!("commutator (U S0 - S0 U) e[{gamma}] at e[{s_index}], e[{w_index}]"),
                || {
                    format!(
                        "got multiples ({commutator_s}, {commutator_w}), expected ({expected_s}, {expected_w})"
                    )
                },
            );
        }
    }
    report.note(format!(
        "{case_one} words in 2n*Gamma (case 1), {case_two} words in G0 (case 2)"
    ));
    Ok(report)
}

/// For n = 2, p = 5: the (S₁ξ, S₁γ) entry of U|_{W₀} equals ⟨e_ξ, M_{e₁}U e_γ⟩
/// = μ̂(1 + 5γ − ξ), exactly.
pub fn verify_multiplication_identity(max_digits: u32, tol: f64) -> Result<Report> {
    let params = BernoulliParams::quarter_five();
    let mut report = Report::new("multiplication");
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let one = QuarterInt::from_int(1);

    for &gamma in &words {
        let shifted = one + scale_value(gamma, params)?;
        for &xi in &words {
            let block_arg = u_argument(apply_s1(xi), apply_s1(gamma), params)?;
            let mult_arg = shifted - word_value(xi, params);
            let block = reduce_argument(block_arg, params);
            let mult = reduce_argument(mult_arg, params);
            report.check(
                block == mult && in_zero_set(block_arg, params) == in_zero_set(mult_arg, params),
                || {
                    format!(
                        "U|W0({}, {}) vs mu_hat(1 + 5*gamma - xi) at ({xi}, {gamma})",
                        apply_s1(xi),
                        apply_s1(gamma)
                    )
                },
                || format!("{block:?} != {mult:?}"),
            );
            // S₁* U S₁ reads the same entry back out of W₀
            report.check(
                apply_s1_adj(apply_s1(xi)) == Some(xi),
                || format!("S1* S1 e[{xi}]"),
                || "S1 is not left-inverted by S1*".into(),
            );
            if !block.is_zero() {
                let a = mu_hat(block_arg, params, tol)?;
                let b = mu_hat(mult_arg, params, tol)?;
                report.check(
                    (a.value() - b.value()).abs() <= a.error_bound + b.error_bound,
                    || format!("numeric values at ({xi}, {gamma})"),
                    || format!("{} vs {}", a.value(), b.value()),
                );
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Reduction;

    fn word(s: &str) -> DigitWord {
        s.parse().unwrap()
    }

    fn entry_reduction(
        row: DigitWord,
        col: DigitWord,
        params: BernoulliParams,
    ) -> Result<Reduction> {
        Ok(reduce_argument(u_argument(row, col, params)?, params))
    }

    #[test]
    fn spot_pair_for_block_equality() {
        let params = BernoulliParams::quarter_five();
        // (ξ′, γ′) = (4, 4) in Γ₁ against (1, 1) in Γ₀
        let lifted = entry_reduction(word("01"), word("01"), params).unwrap();
        let base = entry_reduction(word("1"), word("1"), params).unwrap();
        assert!(lifted.is_zero());
        assert_eq!(lifted, base);
    }

    #[test]
    fn suites_pass_on_small_truncations() {
        let p25 = BernoulliParams::quarter_five();
        assert!(verify_block_diagonal(p25, 4).unwrap().passed());
        assert!(verify_block_equality(p25, 4, 2).unwrap().passed());
        assert!(verify_commutation_even(p25, 4).unwrap().passed());
        assert!(verify_multiplication_identity(3, 1e-12).unwrap().passed());
        let p35 = BernoulliParams::new(3, Some(5)).unwrap();
        assert!(verify_odd_relations(p35, 3).unwrap().passed());
    }

    #[test]
    fn parity_is_enforced() {
        let odd = BernoulliParams::new(3, Some(5)).unwrap();
        let even = BernoulliParams::quarter_five();
        assert!(matches!(
            verify_commutation_even(odd, 3),
            Err(Error::Parity { .. })
        ));
        assert!(matches!(
            verify_odd_relations(even, 3),
            Err(Error::Parity { .. })
        ));
        let no_p = BernoulliParams::scale(2).unwrap();
        assert!(matches!(
            verify_block_diagonal(no_p, 3),
            Err(Error::MissingScaling)
        ));
    }

    #[test]
    fn trivial_origin_block() {
        let report = verify_block_diagonal(BernoulliParams::quarter_five(), 0).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 1);
    }

    #[test]
    fn odd_case_at_origin() {
        // γ = 0: w vanishes and s̃ = s
        let params = BernoulliParams::new(3, Some(5)).unwrap();
        let half_n = QuarterInt::from_quarters(params.base());
        let w = reduce_argument(-half_n, params);
        assert!(w.is_zero());
        let s = reduce_argument(QuarterInt::ZERO, params);
        assert_eq!(
            s,
            Reduction {
                sign: 1,
                reduced: QuarterInt::ZERO
            }
        );
    }

    #[test]
    fn multiplication_examples() {
        let params = BernoulliParams::quarter_five();
        // γ = ξ = 0: both sides μ̂(1) = 0
        assert!(entry_reduction(word("1"), word("1"), params)
            .unwrap()
            .is_zero());
        // γ = 0, ξ = 4: argument 1 − 4 = −3
        let arg = QuarterInt::from_int(1 - 4);
        let block_arg =
            u_argument(apply_s1(word("01")), apply_s1(DigitWord::EMPTY), params).unwrap();
        assert_eq!(
            reduce_argument(arg, params),
            reduce_argument(block_arg, params)
        );
        // γ = ξ = 1: block argument 20 reduces like 5
        let block = entry_reduction(apply_s1(word("1")), apply_s1(word("1")), params).unwrap();
        assert_eq!(block, reduce_argument(QuarterInt::from_int(5), params));
    }
}
