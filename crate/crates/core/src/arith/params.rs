use serde::Serialize;

use crate::error::{Error, Result};

/// The scale parameter n (λ = 1/(2n)) and the optional spectral scaling p.
///
/// n = 1 (λ = 1/2) is accepted by the arithmetic layer, but the orthonormal
/// basis statements about Γ and pΓ are only meaningful for n ≥ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BernoulliParams {
    n: u32,
    p: Option<u32>,
}

impl BernoulliParams {
    pub fn new(n: u32, p: Option<u32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidScale(n));
        }
        if let Some(p) = p {
            if p < 3 || p % 2 == 0 {
                return Err(Error::InvalidScaling(p));
            }
        }
        Ok(Self { n, p })
    }

    /// Parameters without a spectral scaling.
    pub fn scale(n: u32) -> Result<Self> {
        Self::new(n, None)
    }

    /// The λ = 1/4, p = 5 pair studied in detail for the W₀ block.
    pub fn quarter_five() -> Self {
        Self { n: 2, p: Some(5) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> Option<u32> {
        self.p
    }

    pub fn require_p(&self) -> Result<u32> {
        self.p.ok_or(Error::MissingScaling)
    }

    /// 2n, the reciprocal of the contraction ratio.
    pub fn base(&self) -> i128 {
        2 * self.n as i128
    }

    pub fn lambda(&self) -> f64 {
        1.0 / (2.0 * self.n as f64)
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn with_p(self, p: u32) -> Result<Self> {
        Self::new(self.n, Some(p))
    }
}
