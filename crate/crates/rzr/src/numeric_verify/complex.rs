//! Minimal arbitrary-precision complex arithmetic on top of [`rug::Float`].
//!
//! Only the operations needed by the theta-function evaluator live here:
//! ring operations, division, absolute value, and the trigonometric
//! functions `sin`/`cos` extended to complex arguments through their
//! real/hyperbolic decomposition.  Every value carries its own precision;
//! binary operations produce results at the precision of the left operand,
//! which by construction is the uniform working precision of the caller.

use rug::Float;

/// A complex number with arbitrary-precision real and imaginary parts.
///
/// Both parts always share the same precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CFloat {
    /// Real part.
    pub re: Float,
    /// Imaginary part.
    pub im: Float,
}

impl CFloat {
    /// Builds a complex number from its parts.
    ///
    /// # Panics
    /// Panics if the two parts carry different precisions.
    pub fn new(re: Float, im: Float) -> Self {
        assert_eq!(
            re.prec(),
            im.prec(),
            "real and imaginary parts must share a precision"
        );
        Self { re, im }
    }

    /// Zero at the given precision (in bits).
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    /// Embeds a real number as a complex one with zero imaginary part.
    pub fn from_real(re: Float) -> Self {
        let prec = re.prec();
        Self {
            re,
            im: Float::new(prec),
        }
    }

    /// Builds a complex number from two `f64` seeds at the given precision.
    pub fn with_val(prec: u32, re: f64, im: f64) -> Self {
        Self {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    /// The common precision, in bits, of both parts.
    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Sum of `self` and `other`.
    pub fn add(&self, other: &Self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re + &other.re),
            im: Float::with_val(p, &self.im + &other.im),
        }
    }

    /// Difference `self − other`.
    pub fn sub(&self, other: &Self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re - &other.re),
            im: Float::with_val(p, &self.im - &other.im),
        }
    }

    /// Product of `self` and `other`.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &other.re) - Float::with_val(p, &self.im * &other.im);
        let im = Float::with_val(p, &self.re * &other.im) + Float::with_val(p, &self.im * &other.re);
        Self { re, im }
    }

    /// Quotient `self / other`, via multiplication by the conjugate.
    ///
    /// # Panics
    /// Panics if `other` is exactly zero.
    pub fn div(&self, other: &Self) -> Self {
        let p = self.prec();
        let denom = other.norm2();
        assert!(denom.cmp0() != Some(std::cmp::Ordering::Equal), "complex division by zero");
        let re = (Float::with_val(p, &self.re * &other.re)
            + Float::with_val(p, &self.im * &other.im))
            / &denom;
        let im = (Float::with_val(p, &self.im * &other.re)
            - Float::with_val(p, &self.re * &other.im))
            / &denom;
        Self { re, im }
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, -&self.re),
            im: Float::with_val(p, -&self.im),
        }
    }

    /// Multiplies by a real scalar.
    pub fn scale(&self, factor: &Float) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * factor),
            im: Float::with_val(p, &self.im * factor),
        }
    }

    /// `2·self`.
    pub fn double(&self) -> Self {
        let p = self.prec();
        Self {
            re: Float::with_val(p, &self.re * 2u32),
            im: Float::with_val(p, &self.im * 2u32),
        }
    }

    /// Squared modulus `re² + im²`.
    pub fn norm2(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    /// Modulus `√(re² + im²)`.
    pub fn abs(&self) -> Float {
        self.norm2().sqrt()
    }

    /// Multiplicative inverse `1/self`.
    pub fn recip(&self) -> Self {
        Self::from_real(Float::with_val(self.prec(), 1)).div(self)
    }

    /// Square `self²`.
    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Complex sine: `sin(a+bi) = sin a · cosh b + i · cos a · sinh b`.
    pub fn sin(&self) -> Self {
        let (s, c) = self.re.clone().sin_cos(Float::new(self.prec()));
        let ch = self.im.clone().cosh();
        let sh = self.im.clone().sinh();
        Self {
            re: s * ch,
            im: c * sh,
        }
    }

    /// Complex cosine: `cos(a+bi) = cos a · cosh b − i · sin a · sinh b`.
    pub fn cos(&self) -> Self {
        let (s, c) = self.re.clone().sin_cos(Float::new(self.prec()));
        let ch = self.im.clone().cosh();
        let sh = self.im.clone().sinh();
        Self {
            re: c * ch,
            im: -(s * sh),
        }
    }

    /// True when both parts are finite (no NaN or infinity crept in).
    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}
