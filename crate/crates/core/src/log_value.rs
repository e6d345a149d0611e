use std::fmt;

/// A strictly positive quantity stored as its natural logarithm.
///
/// `F_n(λ)` spans thousands of decades as `n` grows, so every evaluator in
/// this crate reports `ln F` and exponentiates only at the output boundary.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogValue(f64);

impl LogValue {
    /// Wrap a logarithm. Non-finite values are rejected with `None`.
    pub fn from_ln(ln_value: f64) -> Option<Self> {
        ln_value.is_finite().then_some(Self(ln_value))
    }

    /// Logarithm of a strictly positive, finite `x`.
    pub fn from_value(x: f64) -> Option<Self> {
        (x > 0.0 && x.is_finite()).then(|| Self(x.ln()))
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    /// `exp(ln)`; overflows to `inf` or underflows to `0` outside f64 range.
    pub fn value(self) -> f64 {
        self.0.exp()
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "exp({})", self.0)
    }
}
