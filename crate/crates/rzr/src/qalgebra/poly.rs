//! Dense polynomials in the squared modulus k².

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{rat_is_zero, Rat};

/// A polynomial in k² with rational coefficients, stored densely by
/// ascending power of k². The zero polynomial stores no coefficients, and a
/// nonzero polynomial never stores a zero leading coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ModPoly {
    coeffs: Vec<Rat>,
}

impl ModPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        ModPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        ModPoly::constant(Rat::from(1))
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Self {
        ModPoly::from_coeffs(vec![c])
    }

    /// The monomial k².
    pub fn k2() -> Self {
        ModPoly::monomial(Rat::from(1), 1)
    }

    /// The monomial `c·(k²)^i`.
    pub fn monomial(c: Rat, i: usize) -> Self {
        if rat_is_zero(&c) {
            return ModPoly::zero();
        }
        let mut coeffs = vec![Rat::new(); i + 1];
        coeffs[i] = c;
        ModPoly { coeffs }
    }

    /// Builds a polynomial from coefficients of (k²)⁰, (k²)¹, …, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(rat_is_zero) {
            coeffs.pop();
        }
        ModPoly { coeffs }
    }

    /// Builds a polynomial from `i64` coefficients, ascending in k².
    pub fn from_ints(coeffs: &[i64]) -> Self {
        ModPoly::from_coeffs(coeffs.iter().map(|&c| Rat::from(c)).collect())
    }

    /// Degree in k², or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the degree is at most zero.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The coefficient of (k²)^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// All stored coefficients, ascending in k².
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The leading coefficient, `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// The product by a rational scalar.
    pub fn scale(&self, c: &Rat) -> ModPoly {
        if rat_is_zero(c) {
            return ModPoly::zero();
        }
        ModPoly {
            coeffs: self.coeffs.iter().map(|a| Rat::from(a * c)).collect(),
        }
    }

    /// The product by (k²)^n.
    pub fn shift(&self, n: usize) -> ModPoly {
        if self.is_zero() {
            return ModPoly::zero();
        }
        let mut coeffs = vec![Rat::new(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        ModPoly { coeffs }
    }

    /// Evaluates at a rational value of k² by Horner's rule.
    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }
}

/// Evaluates `p` at a rational value of k².
pub fn poly_eval(p: &ModPoly, x: &Rat) -> Rat {
    p.eval(x)
}

impl Add for &ModPoly {
    type Output = ModPoly;
    fn add(self, rhs: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        ModPoly::from_coeffs(coeffs)
    }
}

impl Sub for &ModPoly {
    type Output = ModPoly;
    fn sub(self, rhs: &ModPoly) -> ModPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        ModPoly::from_coeffs(coeffs)
    }
}

impl Neg for &ModPoly {
    type Output = ModPoly;
    fn neg(self) -> ModPoly {
        ModPoly {
            coeffs: self.coeffs.iter().map(|c| Rat::from(-c)).collect(),
        }
    }
}

impl Mul for &ModPoly {
    type Output = ModPoly;
    fn mul(self, rhs: &ModPoly) -> ModPoly {
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero();
        }
        let mut coeffs = vec![Rat::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if rat_is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += Rat::from(a * b);
            }
        }
        ModPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for ModPoly {
    /// Renders ascending in k², e.g. `1/15 − 16/15·k² + 16/15·k⁴`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if rat_is_zero(c) {
                continue;
            }
            let mag = Rat::from(c.clone().abs());
            let neg = c.cmp0() == std::cmp::Ordering::Less;
            if first {
                if neg {
                    write!(f, "−")?;
                }
                first = false;
            } else if neg {
                write!(f, " − ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
                write!(f, "k{}", superscript(2 * i as u64))
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1u32 {
                power(f)?;
            } else {
                write!(f, "{mag}·")?;
                power(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self})")
    }
}

/// Renders a nonnegative integer with Unicode superscript digits.
pub(crate) fn superscript(mut n: u64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    if n == 0 {
        return DIGITS[0].to_string();
    }
    let mut out = Vec::new();
    while n > 0 {
        out.push(DIGITS[(n % 10) as usize]);
        n /= 10;
    }
    out.iter().rev().collect()
}
