//! The Cuntz isometries S₀, S₁, the scaling unitary U, and truncated
//! expansions in the canonical basis E(Γ).
//!
//! On basis words S₀ prepends a 0 digit (e_γ ↦ e_{2nγ}) and S₁ prepends a 1
//! digit (e_γ ↦ e_{n/2+2nγ}); the adjoints strip the matching leading digit
//! and annihilate everything else.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{
    in_zero_set, mu_hat, mu_hat_shifted, BernoulliParams, Frequency, MuHatValue, QuarterInt,
};
use crate::error::Result;
use crate::report::Report;
use crate::spectrum::{
    enumerate_gamma, scale_value, word_from_value, word_value, DigitWord, GammaOrder,
};

pub fn apply_s0(w: DigitWord) -> DigitWord {
    w.push_front(false)
}

pub fn apply_s1(w: DigitWord) -> DigitWord {
    w.push_front(true)
}

/// S₀* e_w, or `None` for the zero vector.
pub fn apply_s0_adj(w: DigitWord) -> Option<DigitWord> {
    match w.pop_front() {
        (false, rest) => Some(rest),
        (true, _) => None,
    }
}

/// S₁* e_w, or `None` for the zero vector.
pub fn apply_s1_adj(w: DigitWord) -> Option<DigitWord> {
    match w.pop_front() {
        (true, rest) => Some(rest),
        (false, _) => None,
    }
}

fn apply(index: usize, w: DigitWord) -> DigitWord {
    if index == 0 {
        apply_s0(w)
    } else {
        apply_s1(w)
    }
}

fn apply_adj(index: usize, w: DigitWord) -> Option<DigitWord> {
    if index == 0 {
        apply_s0_adj(w)
    } else {
        apply_s1_adj(w)
    }
}

/// ⟨e_a, e_b⟩ = μ̂(value(b) − value(a)) for basis words, decided exactly.
///
/// Returns `None` if the difference is neither 0 nor in the zero set, which
/// would mean the words are not orthonormal.
fn basis_inner(a: DigitWord, b: DigitWord, params: BernoulliParams) -> Option<i64> {
    let diff = word_value(b, params) - word_value(a, params);
    if diff.is_zero() {
        Some(1)
    } else if in_zero_set(diff, params) {
        Some(0)
    } else {
        None
    }
}

/// Checks the Cuntz relations exactly on every word with at most `max_digits` digits.
///
/// Besides Sᵢ*Sⱼ = δᵢⱼ I and S₀S₀* + S₁S₁* = I on words, it checks that the
/// digit actions agree with e_γ ↦ e_{2nγ}, e_γ ↦ e_{n/2+2nγ}, and the adjoint
/// identity ⟨Sᵢ e_w, e_v⟩ = ⟨e_w, Sᵢ* e_v⟩ with inner products taken from μ̂.
pub fn verify_cuntz(params: BernoulliParams, max_digits: u32) -> Report {
    let mut report = Report::new("cuntz");
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let base = params.base();
    let half_n = QuarterInt::from_quarters(base);

    for &w in &words {
        for i in 0..2 {
            for j in 0..2 {
                let got = apply_adj(i, apply(j, w));
                let expected = (i == j).then_some(w);
                report.check(
                    got == expected,
                    || format!("S{i}* S{j} e[{w}]"),
                    || format!("expected {expected:?}, got {got:?}"),
                );
            }
        }

        // S₀S₀* e_w + S₁S₁* e_w as a formal sum of basis words
        let mut sum: BTreeMap<DigitWord, i64> = BTreeMap::new();
        for i in 0..2 {
            if let Some(v) = apply_adj(i, w) {
                *sum.entry(apply(i, v)).or_default() += 1;
            }
        }
        sum.retain(|_, c| *c != 0);
        report.check(
            sum.len() == 1 && sum.get(&w) == Some(&1),
            || format!("(S0 S0* + S1 S1*) e[{w}]"),
            || format!("expected e[{w}], got {sum:?}"),
        );

        let value = word_value(w, params);
        report.check(
            word_value(apply_s0(w), params) == value * base,
            || format!("S0 e[{w}] value"),
            || "S0 does not scale the frequency by 2n".into(),
        );
        report.check(
            word_value(apply_s1(w), params) == half_n + value * base,
            || format!("S1 e[{w}] value"),
            || "S1 does not map the frequency to n/2 + 2n gamma".into(),
        );
    }

    for i in 0..2 {
        for &w in &words {
            let image = apply(i, w);
            for &v in &words {
                let lhs = basis_inner(image, v, params);
                let rhs = match apply_adj(i, v) {
                    Some(u) => basis_inner(w, u, params),
                    None => Some(0),
                };
                report.check(
                    lhs.is_some() && lhs == rhs,
                    || format!("<S{i} e[{w}], e[{v}]> = <e[{w}], S{i}* e[{v}]>"),
                    || format!("lhs {lhs:?}, rhs {rhs:?}"),
                );
            }
        }
    }
    report
}

/// A coefficient with its certified error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficient {
    pub value: f64,
    pub error_bound: f64,
}

impl From<MuHatValue> for Coefficient {
    fn from(v: MuHatValue) -> Self {
        Coefficient {
            value: v.value(),
            error_bound: v.error_bound,
        }
    }
}

/// A finitely supported expansion Σ c_w e_w in the canonical basis.
///
/// `residual_bound` bounds the squared norm missing from the truncation,
/// assuming the expanded vector has unit norm.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CoeffVector {
    entries: BTreeMap<DigitWord, Coefficient>,
    pub residual_bound: f64,
}

impl CoeffVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn basis(w: DigitWord) -> Self {
        let mut v = Self::new();
        v.insert(
            w,
            Coefficient {
                value: 1.0,
                error_bound: 0.0,
            },
        );
        v
    }

    /// Stores a coefficient; exact zeros are not stored.
    pub fn insert(&mut self, w: DigitWord, c: Coefficient) {
        if c.value == 0.0 && c.error_bound == 0.0 {
            self.entries.remove(&w);
        } else {
            self.entries.insert(w, c);
        }
    }

    pub fn get(&self, w: DigitWord) -> Option<Coefficient> {
        self.entries.get(&w).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (DigitWord, Coefficient)> + '_ {
        self.entries.iter().map(|(w, c)| (*w, *c))
    }

    pub fn support(&self) -> impl Iterator<Item = DigitWord> + '_ {
        self.entries.keys().copied()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.values().map(|c| c.value * c.value).sum()
    }

    /// Lower bound on the true squared norm of the stored coefficients.
    pub fn norm_sq_lower(&self) -> f64 {
        self.entries
            .values()
            .map(|c| {
                let lo = (c.value.abs() - c.error_bound).max(0.0);
                lo * lo
            })
            .sum()
    }

    fn set_residual_for_unit_vector(&mut self) {
        self.residual_bound = (1.0 - self.norm_sq_lower()).max(0.0);
    }
}

/// `{"entries": [[word, coefficient, error_bound], …], "residual_bound": r}`
impl Serialize for CoeffVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<(String, f64, f64)> = self
            .iter()
            .map(|(w, c)| (w.to_string(), c.value, c.error_bound))
            .collect();
        let mut s = serializer.serialize_struct("CoeffVector", 2)?;
        s.serialize_field("entries", &entries)?;
        s.serialize_field("residual_bound", &self.residual_bound)?;
        s.end()
    }
}

/// Coefficients μ̂(t − point) for every point, computed in parallel.
fn coefficients_against(
    t: Frequency,
    points: &[QuarterInt],
    params: BernoulliParams,
    tol: f64,
) -> Result<Vec<MuHatValue>> {
    points
        .par_iter()
        .map(|&point| match t {
            Frequency::Exact(q) => mu_hat(q - point, params, tol),
            Frequency::Real(x) => mu_hat_shifted(x, -point, params, tol),
        })
        .collect()
}

fn fill(words: &[DigitWord], values: Vec<MuHatValue>) -> CoeffVector {
    let mut out = CoeffVector::new();
    for (&w, v) in words.iter().zip(values) {
        if !v.exact_zero {
            out.insert(w, v.into());
        }
    }
    out.set_residual_for_unit_vector();
    out
}

/// U e_γ = e_{pγ} expanded over the words with at most `max_digits` digits.
///
/// When pγ ∈ Γ the result is that single basis vector. Otherwise the
/// coefficients are ⟨e_ξ, U e_γ⟩ = μ̂(pγ − ξ) and the residual is the
/// Parseval deficit of the truncation (a Bessel deficit when pΓ is not an
/// orthonormal basis).
pub fn apply_u(
    w: DigitWord,
    params: BernoulliParams,
    max_digits: u32,
    tol: f64,
) -> Result<CoeffVector> {
    let target = scale_value(w, params)?;
    if let Some(image) = word_from_value(target, params) {
        return Ok(CoeffVector::basis(image));
    }
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let points: Vec<QuarterInt> = words.iter().map(|&x| word_value(x, params)).collect();
    let values = coefficients_against(Frequency::Exact(target), &points, params, tol)?;
    Ok(fill(&words, values))
}

/// The exponential e_t expanded over the words with at most `max_digits` digits.
pub fn expand_exponential(
    t: Frequency,
    params: BernoulliParams,
    max_digits: u32,
    tol: f64,
) -> Result<CoeffVector> {
    if let Frequency::Exact(q) = t {
        if let Some(w) = word_from_value(q, params) {
            return Ok(CoeffVector::basis(w));
        }
    }
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let points: Vec<QuarterInt> = words.iter().map(|&x| word_value(x, params)).collect();
    let values = coefficients_against(t, &points, params, tol)?;
    Ok(fill(&words, values))
}

/// Which family of exponentials a Parseval sum runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Base {
    /// The canonical spectrum Γ.
    Gamma,
    /// The scaled set pΓ.
    Scaled,
}

/// A truncated Parseval sum Σ|μ̂(t − bγ)|² over words of at most `digits` digits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParsevalSum {
    pub digits: u32,
    pub value: f64,
    /// Bound on |value − true partial sum|.
    pub error_bound: f64,
}

impl ParsevalSum {
    /// Bessel's inequality, allowing for the evaluation error.
    pub fn respects_bessel(&self) -> bool {
        self.value <= 1.0 + self.error_bound
    }
}

fn base_points(
    base: Base,
    words: &[DigitWord],
    params: BernoulliParams,
) -> Result<Vec<QuarterInt>> {
    words
        .iter()
        .map(|&w| match base {
            Base::Gamma => Ok(word_value(w, params)),
            Base::Scaled => scale_value(w, params),
        })
        .collect()
}

/// Partial sums for every truncation length 0..=max_digits.
///
/// Each length only adds the words of that exact length, so the sums are
/// nondecreasing by construction; the sum order is fixed, so results are
/// reproducible bit for bit.
pub fn parseval_table(
    t: Frequency,
    base: Base,
    params: BernoulliParams,
    max_digits: u32,
    tol: f64,
) -> Result<Vec<ParsevalSum>> {
    if base == Base::Scaled {
        params.require_p()?;
    }
    let words = enumerate_gamma(max_digits, GammaOrder::ValueAscending);
    let points = base_points(base, &words, params)?;
    let values = coefficients_against(t, &points, params, tol)?;

    let mut table = Vec::with_capacity(max_digits as usize + 1);
    let mut value = 0.0;
    let mut error_bound = 0.0;
    let mut next = 0usize;
    for digits in 0..=max_digits {
        let end = 1usize << digits;
        for v in &values[next..end] {
            value += v.magnitude * v.magnitude;
            error_bound += v.error_bound * (2.0 * v.magnitude + v.error_bound);
        }
        next = end;
        // summation rounding: one relative epsilon per term on a sum ≤ 1
        let rounding = end as f64 * f64::EPSILON * value.max(1.0);
        table.push(ParsevalSum {
            digits,
            value,
            error_bound: error_bound + rounding,
        });
    }
    Ok(table)
}

/// Σ over words of at most `max_digits` digits of |μ̂(t − bγ)|², b = 1 or p.
pub fn parseval_partial(
    t: Frequency,
    base: Base,
    params: BernoulliParams,
    max_digits: u32,
    tol: f64,
) -> Result<ParsevalSum> {
    let table = parseval_table(t, base, params, max_digits, tol)?;
    Ok(*table.last().expect("table has max_digits + 1 rows"))
}
