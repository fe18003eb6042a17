//! Exact rational building blocks.
//!
//! Everything downstream works over ℚ: [`Rat`] is an arbitrary-precision
//! rational (always in lowest terms with positive denominator, printed and
//! parsed as `p/q`), [`ModPoly`] is a polynomial in the squared elliptic
//! modulus k², [`ZSeries`] is an even power series in z whose coefficients
//! are such polynomials, and [`bernoulli`] supplies exact Bernoulli numbers
//! for the trigonometric limit tables.
//!
//! # Example
//!
//! ```
//! use rzr::qalgebra::{bernoulli, rat, rat_from_str, ModPoly};
//!
//! // (1 − k²)(1 + k²) = 1 − k⁴, exactly.
//! let a = ModPoly::from_ints(&[1, -1]);
//! let b = ModPoly::from_ints(&[1, 1]);
//! assert_eq!(&a * &b, ModPoly::from_ints(&[1, 0, -1]));
//!
//! // Evaluation and exact rational parsing.
//! assert_eq!(a.eval(&rat(1, 4)), rat(3, 4));
//! assert_eq!(rat_from_str("0.125").unwrap(), rat(1, 8));
//!
//! // Exact Bernoulli numbers for positive even index.
//! assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
//! assert!(bernoulli(3).is_err());
//! ```

mod bernoulli;
mod poly;
mod series;

pub use bernoulli::bernoulli;
pub(crate) use poly::superscript;
pub use poly::{poly_eval, ModPoly};
pub use series::{series_reciprocal, ZSeries};

/// Arbitrary-precision integer.
pub type Int = rug::Integer;

/// Arbitrary-precision rational, kept canonical (lowest terms, positive
/// denominator) by construction.
pub type Rat = rug::Rational;

/// The rational `num/den`. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::from((num, den))
}

/// The rational `n/1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(n)
}

/// True when `r` is zero.
pub fn rat_is_zero(r: &Rat) -> bool {
    r.cmp0() == std::cmp::Ordering::Equal
}

/// The exact power `2^exp`, with `exp` of either sign.
pub fn pow2(exp: i32) -> Rat {
    use rug::ops::Pow;
    Rat::from(Rat::from(2).pow(exp))
}

/// Exact factorial `n!`.
pub fn factorial(n: u32) -> Int {
    Int::from(Int::factorial(n))
}

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::new();
    }
    let k = k.min(n - k);
    let mut acc = Int::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Parses a rational from `p/q`, integer, or decimal (`-3/2`, `7`, `0.25`)
/// form.
pub fn rat_from_str(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let fail = || crate::Error::Parse(format!("expected a rational number, got {s:?}"));
    if s.is_empty() {
        return Err(fail());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: Int = num.trim().parse().map_err(|_| fail())?;
        let den: Int = den.trim().parse().map_err(|_| fail())?;
        if den.cmp0() == std::cmp::Ordering::Equal {
            return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::from((num, den)));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let sign = if whole.trim_start().starts_with('-') { -1 } else { 1 };
        let whole: Int = if whole.is_empty() || whole == "-" || whole == "+" {
            Int::new()
        } else {
            whole.parse().map_err(|_| fail())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(fail());
        }
        let digits: Int = frac.parse().map_err(|_| fail())?;
        let scale = Int::from(Int::u_pow_u(10, frac.len() as u32));
        let frac_part = Rat::from((digits, scale));
        let mut value = Rat::from(whole);
        if sign < 0 {
            value -= frac_part;
        } else {
            value += frac_part;
        }
        return Ok(value);
    }
    s.parse::<Int>().map(Rat::from).map_err(|_| fail())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_helpers() {
        assert_eq!(rat(6, -4), rat(-3, 2));
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(pow2(-3), rat(1, 8));
        assert_eq!(pow2(5), rat_int(32));
        assert_eq!(factorial(6), 720);
        assert_eq!(binomial(10, 3), 120);
        assert_eq!(binomial(3, 10), 0);
    }

    #[test]
    fn binomial_matches_pascal_recurrence() {
        for n in 0..=40u64 {
            let mut row_sum = Int::new();
            for k in 0..=n {
                if n > 0 && k > 0 && k < n {
                    assert_eq!(
                        binomial(n, k),
                        binomial(n - 1, k - 1) + binomial(n - 1, k)
                    );
                }
                row_sum += binomial(n, k);
            }
            assert_eq!(row_sum, Int::from(1) << n as u32);
        }
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(rat_from_str("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(rat_from_str(" 7 ").unwrap(), rat_int(7));
        assert_eq!(rat_from_str("0.25").unwrap(), rat(1, 4));
        assert_eq!(rat_from_str("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(rat_from_str("-.5").unwrap(), rat(-1, 2));
        assert_eq!(rat_from_str("2.").is_err(), true);
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("abc").is_err());
        assert!(rat_from_str("").is_err());
    }

    #[test]
    fn parse_roundtrips_display() {
        for r in [rat(-3, 2), rat_int(0), rat(22, 7), rat_int(-19)] {
            assert_eq!(rat_from_str(&r.to_string()).unwrap(), r);
        }
    }
}
