//! Certified evaluation of μ̂(t) = ∏_{k≥1} cos(2π t / (2n)^k).
//!
//! The partial product over k ≤ N is computed factor by factor. When the
//! argument has an exact quarter-integer part, that part is reduced modulo
//! the period of each factor in integer arithmetic before any rounding, so
//! large arguments lose no accuracy. Factors that are exactly 0 or ±1 are
//! recognised without floating point.
//!
//! The tail ∏_{k>N} is bounded with |cos x − 1| ≤ x²/2 and
//! |∏(1 + δ_k) − 1| ≤ exp(Σ|δ_k|) − 1, the geometric sum being taken in
//! closed form. A per-factor rounding term is added on top.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::{in_zero_set, reduce_argument, BernoulliParams, Frequency, QuarterInt};
use crate::error::{Error, Result};

const MAX_TERMS: u32 = 10_000;

/// A certified value of μ̂.
///
/// The represented value v satisfies |v − sign·magnitude| ≤ error_bound.
/// `exact_zero` is only set when a vanishing factor was identified exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MuHatValue {
    pub exact_zero: bool,
    pub sign: i8,
    pub magnitude: f64,
    pub error_bound: f64,
    /// Number of product factors evaluated (0 for exact results that needed none).
    pub terms: u32,
}

impl MuHatValue {
    pub fn zero() -> Self {
        MuHatValue {
            exact_zero: true,
            sign: 1,
            magnitude: 0.0,
            error_bound: 0.0,
            terms: 0,
        }
    }

    pub fn one() -> Self {
        MuHatValue {
            exact_zero: false,
            sign: 1,
            magnitude: 1.0,
            error_bound: 0.0,
            terms: 0,
        }
    }

    pub fn value(&self) -> f64 {
        self.sign as f64 * self.magnitude
    }

    /// The magnitude exceeds the error bound, so the value is provably nonzero.
    pub fn is_certified_nonzero(&self) -> bool {
        !self.exact_zero && self.magnitude > self.error_bound
    }

    fn with_sign(mut self, factor: i8) -> Self {
        self.sign *= factor;
        self
    }
}

/// Upper bound for Σ_{k>terms} (2π t / (2n)^k)² / 2.
pub fn tail_bound(abs_t: f64, params: BernoulliParams, terms: u32) -> f64 {
    let n = params.n() as f64;
    let ratio = 1.0 / (4.0 * n * n);
    let first = ratio.powi(terms as i32 + 1);
    let sum = 2.0 * PI * PI * abs_t * abs_t * first / (1.0 - ratio);
    // round the bound up a little
    sum * (1.0 + 1e-12)
}

/// Smallest number of factors whose tail contribution is at most `tol / 2`.
pub fn terms_for_tolerance(abs_t: f64, params: BernoulliParams, tol: f64) -> u32 {
    let mut terms = 1;
    while terms < MAX_TERMS && tail_bound(abs_t, params, terms).exp_m1() > tol / 2.0 {
        terms += 1;
    }
    terms
}

/// cos(2π(m/4 + d)) for |d| ≤ 1/8, evaluated as ±cos or ±sin of 2πd so that
/// factors near a zero keep their relative accuracy.
fn cos_quadrant(m: i128, d: f64) -> f64 {
    let x = TAU * d;
    match m.rem_euclid(4) {
        0 => x.cos(),
        1 => -x.sin(),
        2 => -x.cos(),
        _ => x.sin(),
    }
}

/// Partial product for the argument `shift + offset`, with `shift` exact.
///
/// Each factor is cos(2π(e + o)) where e = shift/(2n)^k is reduced to its
/// nearest quarter m/4 in integer arithmetic and o = offset/(2n)^k. The error
/// bound propagates per-factor absolute errors through the running product.
fn partial_product(
    shift: QuarterInt,
    offset: f64,
    params: BernoulliParams,
    terms: u32,
) -> MuHatValue {
    let eps = f64::EPSILON;
    let base = params.base();
    let base_f = base as f64;
    let q = shift.quarters();

    let mut product = 1.0f64;
    let mut error = 0.0f64;
    // (2n)^k while it fits, for exact divisibility and reduction mod 4(2n)^k
    let mut power: Option<i128> = Some(1);
    let mut power_f = 1.0f64;
    let mut offset_k = offset;

    for k in 1..=terms {
        power = power.and_then(|p| p.checked_mul(base));
        power_f *= base_f;
        offset_k /= base_f;
        let kf = k as f64;

        // e = m/4 + frac, |frac| ≤ 1/8, with a bound on the error of frac
        let (m, frac, frac_err) = match power.and_then(|p| p.checked_mul(4)) {
            Some(modulus) => {
                let p = modulus / 4;
                if offset == 0.0 && q % p == 0 {
                    let c = match (q / p).rem_euclid(4) {
                        0 => 1.0,
                        2 => -1.0,
                        _ => {
                            return MuHatValue {
                                terms: k,
                                ..MuHatValue::zero()
                            }
                        }
                    };
                    product *= c;
                    continue;
                }
                // e = r / modulus = r / 4p with r = q mod modulus; nearest quarter m/4
                let r = q.rem_euclid(modulus);
                let (whole, rem) = (r / p, r % p);
                let bump = i128::from(2 * rem >= p);
                let m = whole + bump;
                let frac = (rem - bump * p) as f64 / modulus as f64;
                (m, frac, 2.0 * eps * frac.abs())
            }
            None => {
                let e = shift.to_f64() / power_f;
                (0, e, (kf + 2.0) * eps * e.abs())
            }
        };

        let d0 = frac + offset_k;
        let j = (4.0 * d0).round();
        let d = d0 - j / 4.0;
        let d_err = frac_err + (kf + 1.0) * eps * offset_k.abs() + eps * (d0.abs() + d.abs());
        let c = cos_quadrant(m + j as i128, d);
        let c_err = TAU * d_err + 2.0 * TAU * eps * d.abs() + 2.0 * eps * c.abs();

        // |P c − P̂ ĉ| ≤ |P − P̂||c| + |P̂||c − ĉ| + rounding of the product
        let next = product * c;
        error = error * (c.abs() + c_err).min(1.0) + product.abs() * c_err + eps * next.abs();
        product = next;
    }

    let abs_arg = (shift.to_f64().abs() + offset.abs()) * (1.0 + 4.0 * eps);
    let tail = tail_bound(abs_arg, params, terms).exp_m1();
    let error = error * 1.01;
    let magnitude = product.abs();
    MuHatValue {
        exact_zero: false,
        sign: if product < 0.0 { -1 } else { 1 },
        magnitude,
        error_bound: error + (magnitude + error) * tail,
        terms,
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// The truncated product over k = 1..=terms, with a certified tail bound.
///
/// A real `t` that is exactly a quarter-integer takes the exact path, so a
/// vanishing factor within the first `terms` factors yields an exact zero.
pub fn mu_hat_product(t: f64, params: BernoulliParams, terms: u32) -> Result<MuHatValue> {
    if terms == 0 {
        return Err(Error::ZeroTerms);
    }
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    Ok(match QuarterInt::from_f64(t) {
        Some(exact) => partial_product(exact, 0.0, params, terms),
        None => partial_product(QuarterInt::ZERO, t, params, terms),
    })
}

/// μ̂ at a quarter-integer, with error bound at most `tol`.
///
/// Zeros are decided by [`in_zero_set`]; otherwise factors of 2n are
/// cancelled exactly and the remaining argument is evaluated numerically.
/// Tolerances below the rounding floor (around 1e-14) yield a bound at
/// that floor.
pub fn mu_hat(t: QuarterInt, params: BernoulliParams, tol: f64) -> Result<MuHatValue> {
    check_tol(tol)?;
    if in_zero_set(t, params) {
        return Ok(MuHatValue::zero());
    }
    let reduction = reduce_argument(t, params);
    if reduction.reduced.is_zero() {
        return Ok(MuHatValue::one().with_sign(reduction.sign));
    }
    // μ̂ is even; evaluating at |t'| makes μ̂(−t) and μ̂(t) bitwise equal
    let reduced = reduction.reduced.abs();
    let terms = terms_for_tolerance(reduced.to_f64(), params, tol);
    Ok(partial_product(reduced, 0.0, params, terms).with_sign(reduction.sign))
}

/// μ̂(offset + shift) for a real offset and an exact shift.
///
/// The exact shift is reduced modulo each factor's period before rounding,
/// so shifts far from the origin (such as −γ for large γ in Γ) cost no
/// accuracy.
pub fn mu_hat_shifted(
    offset: f64,
    shift: QuarterInt,
    params: BernoulliParams,
    tol: f64,
) -> Result<MuHatValue> {
    check_tol(tol)?;
    if !offset.is_finite() {
        return Err(Error::NonFinite(offset));
    }
    if let Some(exact) = QuarterInt::from_f64(offset) {
        return mu_hat(shift + exact, params, tol);
    }
    let abs_arg = shift.to_f64().abs() + offset.abs();
    let terms = terms_for_tolerance(abs_arg, params, tol);
    Ok(partial_product(shift, offset, params, terms))
}

/// μ̂ at an exact or real frequency.
pub fn mu_hat_at(t: Frequency, params: BernoulliParams, tol: f64) -> Result<MuHatValue> {
    match t {
        Frequency::Exact(q) => mu_hat(q, params, tol),
        Frequency::Real(x) => mu_hat_shifted(x, QuarterInt::ZERO, params, tol),
    }
}
