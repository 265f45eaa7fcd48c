//! Coefficient fields for the algebraic layer.
//!
//! Structure constants are exact rationals. Tensors and wedges can carry
//! exact Gaussian rationals (for identity checks) or `Complex64` (once
//! transcendental values such as `coth` enter).

use std::fmt::Debug;
use std::ops::Neg;

use num_complex::{Complex, Complex64};
use num_rational::Ratio;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Exact rational numbers used for structure constants and inner products.
pub type Rational = Ratio<i64>;
/// Exact Gaussian rationals `p + q i`.
pub type GaussRational = Complex<Rational>;
/// Double-precision complex numbers.
pub type C64 = Complex64;

/// A field of coefficients over which Lie algebra elements and tensors live.
pub trait Scalar:
    Num + Clone + PartialEq + Debug + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds an exact rational.
    fn from_rational(q: Rational) -> Self;

    /// Square root of a positive rational, if it is representable in this field.
    fn sqrt_rational(q: Rational) -> Option<Self>;

    /// The imaginary unit, if the field contains one.
    fn imaginary_unit() -> Option<Self>;

    /// Complex conjugation (identity on real fields).
    fn conj(&self) -> Self;

    /// Absolute value as a float, used for residual norms.
    fn magnitude(&self) -> f64;

    /// Conversion to a double-precision complex number.
    fn to_c64(&self) -> C64;

    /// True when the value is exactly zero.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Nearest double of an exact rational.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Exact square root of a non-negative rational whose numerator and
/// denominator are perfect squares.
pub fn exact_rational_sqrt(q: Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(*q.numer())?;
    let d = int_sqrt(*q.denom())?;
    Some(Rational::new(n, d))
}

fn int_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = (n as f64).sqrt().round() as i64;
    (r - 1..=r + 1).find(|&c| c >= 0 && c * c == n)
}

impl Scalar for f64 {
    fn from_rational(q: Rational) -> Self {
        rational_to_f64(&q)
    }
    fn sqrt_rational(q: Rational) -> Option<Self> {
        let v = rational_to_f64(&q);
        (v >= 0.0).then(|| v.sqrt())
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn to_c64(&self) -> C64 {
        C64::new(*self, 0.0)
    }
}

impl Scalar for C64 {
    fn from_rational(q: Rational) -> Self {
        C64::new(rational_to_f64(&q), 0.0)
    }
    fn sqrt_rational(q: Rational) -> Option<Self> {
        f64::sqrt_rational(q).map(|v| C64::new(v, 0.0))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(C64::i())
    }
    fn conj(&self) -> Self {
        Complex::conj(self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}

impl Scalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn sqrt_rational(q: Rational) -> Option<Self> {
        exact_rational_sqrt(q)
    }
    fn imaginary_unit() -> Option<Self> {
        None
    }
    fn conj(&self) -> Self {
        *self
    }
    fn magnitude(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(self), 0.0)
    }
}

impl Scalar for GaussRational {
    fn from_rational(q: Rational) -> Self {
        Complex::new(q, Rational::zero())
    }
    fn sqrt_rational(q: Rational) -> Option<Self> {
        exact_rational_sqrt(q).map(|r| Complex::new(r, Rational::zero()))
    }
    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(Rational::zero(), Rational::one()))
    }
    fn conj(&self) -> Self {
        Complex::new(self.re, -self.im)
    }
    fn magnitude(&self) -> f64 {
        let re = rational_to_f64(&self.re);
        let im = rational_to_f64(&self.im);
        re.hypot(im)
    }
    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

/// Shorthand for a rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}
