//! Truncated power series in z with [`ModPoly`] coefficients.
//!
//! Every series here has exponents of one parity: an even series stores
//! coefficients of z^order, z^(order+2), …, while a series with the odd
//! prefactor carries one global factor z on top of that (so sn, an odd
//! function, is the prefactor times an even series in z). Each series also
//! carries its truncation, the largest exponent whose coefficient is still
//! exact; arithmetic propagates truncations pessimistically so that every
//! stored coefficient of every result is exact.

use super::{rat_is_zero, ModPoly, Rat};
use crate::{Error, Result};
use rug::ops::Pow;

/// A truncated series Σ p_i(k²)·z^(order+2i), optionally times a global
/// prefactor z.
///
/// `order` is always even; with the odd prefactor the represented exponents
/// are the odd numbers order+1, order+3, …. Coefficients are stored densely
/// up to the truncation exponent, and every stored coefficient is exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZSeries {
    order: i64,
    odd: bool,
    coeffs: Vec<ModPoly>,
}

impl ZSeries {
    /// Builds a series from its even base order, prefactor flag, and dense
    /// coefficient list. Panics on an empty list or an odd `order`.
    pub fn new(order: i64, odd: bool, coeffs: Vec<ModPoly>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        assert!(order % 2 == 0, "series order must be even");
        ZSeries { order, odd, coeffs }
    }

    /// The series with constant term `p` and zero coefficients up to the
    /// given even truncation.
    pub fn constant(p: ModPoly, truncation: i64) -> Self {
        assert!(truncation >= 0 && truncation % 2 == 0);
        let mut coeffs = vec![ModPoly::zero(); (truncation / 2) as usize + 1];
        coeffs[0] = p;
        ZSeries::new(0, false, coeffs)
    }

    /// The even base order (exponent of the first coefficient, before the
    /// odd prefactor).
    pub fn order(&self) -> i64 {
        self.order
    }

    /// True when the series carries the global z prefactor.
    pub fn is_odd(&self) -> bool {
        self.odd
    }

    /// The largest exponent whose coefficient is exact.
    pub fn truncation(&self) -> i64 {
        self.exponent(self.coeffs.len() - 1)
    }

    /// The exponent of stored coefficient `i`.
    pub fn exponent(&self, i: usize) -> i64 {
        self.order + self.odd as i64 + 2 * i as i64
    }

    /// The stored coefficients, ascending by exponent.
    pub fn coeffs(&self) -> &[ModPoly] {
        &self.coeffs
    }

    /// The coefficient of z^e. Exponents below the base order or of the
    /// wrong parity are genuinely zero; asking beyond the truncation is a
    /// caller bug and panics.
    pub fn coeff_at(&self, e: i64) -> ModPoly {
        assert!(
            e <= self.truncation(),
            "coefficient of z^{e} beyond truncation z^{}",
            self.truncation()
        );
        let first = self.exponent(0);
        if e < first || (e - first) % 2 != 0 {
            return ModPoly::zero();
        }
        self.coeffs[((e - first) / 2) as usize].clone()
    }

    /// Sum of two series of the same parity; the result is exact through the
    /// smaller truncation.
    pub fn add(&self, rhs: &ZSeries) -> ZSeries {
        self.combine(rhs, |a, b| &a + &b)
    }

    /// Difference of two series of the same parity.
    pub fn sub(&self, rhs: &ZSeries) -> ZSeries {
        self.combine(rhs, |a, b| &a - &b)
    }

    fn combine(&self, rhs: &ZSeries, op: impl Fn(ModPoly, ModPoly) -> ModPoly) -> ZSeries {
        assert_eq!(self.odd, rhs.odd, "mixed-parity series arithmetic");
        let order = self.order.min(rhs.order);
        let trunc = self.truncation().min(rhs.truncation());
        let first = order + self.odd as i64;
        let coeffs = (0..=((trunc - first) / 2))
            .map(|i| {
                let e = first + 2 * i;
                op(self.coeff_at(e), rhs.coeff_at(e))
            })
            .collect();
        ZSeries::new(order, self.odd, coeffs)
    }

    /// Negation.
    pub fn neg(&self) -> ZSeries {
        ZSeries {
            order: self.order,
            odd: self.odd,
            coeffs: self.coeffs.iter().map(|p| -p).collect(),
        }
    }

    /// `1 − self`, for an even series.
    pub fn one_minus(&self) -> ZSeries {
        assert!(!self.odd, "1 − (odd series) is not of one parity");
        ZSeries::constant(ModPoly::one(), self.truncation().max(0)).sub(self)
    }

    /// Product of two series. Odd prefactors combine (two of them fold into
    /// the base order), and the truncation is the best exponent through
    /// which the convolution of exact coefficients is complete.
    pub fn mul(&self, rhs: &ZSeries) -> ZSeries {
        let odd = self.odd ^ rhs.odd;
        let lead1 = self.exponent(0);
        let lead2 = rhs.exponent(0);
        let first = lead1 + lead2;
        let order = first - odd as i64;
        let trunc = (self.truncation() + lead2).min(rhs.truncation() + lead1);
        let mut coeffs = vec![ModPoly::zero(); ((trunc - first) / 2 + 1) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let xa = self.exponent(i);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let e = xa + rhs.exponent(j);
                if e > trunc {
                    break;
                }
                let slot = ((e - first) / 2) as usize;
                coeffs[slot] = &coeffs[slot] + &(a * b);
            }
        }
        ZSeries::new(order, odd, coeffs)
    }

    /// The square of the series.
    pub fn square(&self) -> ZSeries {
        self.mul(self)
    }

    /// Multiplicative inverse. Requires an even series whose leading
    /// coefficient is a nonzero constant; the result is exact through
    /// `truncation − 2·order`.
    pub fn reciprocal(&self) -> Result<ZSeries> {
        if self.odd {
            return Err(Error::SeriesNotInvertible);
        }
        let lead = &self.coeffs[0];
        if lead.is_zero() || !lead.is_constant() {
            return Err(Error::SeriesNotInvertible);
        }
        let inv_lead = Rat::from(1) / lead.coeff(0);
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n);
        out.push(ModPoly::constant(inv_lead.clone()));
        for t in 1..n {
            let mut acc = ModPoly::zero();
            for i in 1..=t {
                acc = &acc + &(&self.coeffs[i] * &out[t - i]);
            }
            out.push(acc.scale(&Rat::from(-&inv_lead)));
        }
        Ok(ZSeries::new(-self.order, false, out))
    }

    /// The series scaled by a rational constant.
    pub fn scale(&self, c: &Rat) -> ZSeries {
        ZSeries {
            order: self.order,
            odd: self.odd,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// The series multiplied by a polynomial in k².
    pub fn scale_poly(&self, p: &ModPoly) -> ZSeries {
        ZSeries {
            order: self.order,
            odd: self.odd,
            coeffs: self.coeffs.iter().map(|q| q * p).collect(),
        }
    }

    /// Substitutes z ↦ λ·z for a nonzero rational λ.
    pub fn scale_argument(&self, lambda: &Rat) -> ZSeries {
        assert!(!rat_is_zero(lambda), "argument scale must be nonzero");
        ZSeries {
            order: self.order,
            odd: self.odd,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, p)| p.scale(&Rat::from(lambda.pow(self.exponent(i) as i32))))
                .collect(),
        }
    }

    /// Drops coefficients beyond `new_truncation`, which must be a stored
    /// exponent.
    pub fn truncate_to(&self, new_truncation: i64) -> ZSeries {
        let first = self.exponent(0);
        assert!(
            new_truncation >= first
                && new_truncation <= self.truncation()
                && (new_truncation - first) % 2 == 0,
            "invalid truncation target"
        );
        ZSeries {
            order: self.order,
            odd: self.odd,
            coeffs: self.coeffs[..=((new_truncation - first) / 2) as usize].to_vec(),
        }
    }
}

/// Multiplicative inverse of a series whose leading coefficient is a
/// nonzero constant.
pub fn series_reciprocal(s: &ZSeries) -> Result<ZSeries> {
    s.reciprocal()
}

#[cfg(test)]
mod tests {
    use super::super::rat;
    use super::*;
    use proptest::prelude::*;

    fn even(order: i64, ints: &[i64]) -> ZSeries {
        ZSeries::new(
            order,
            false,
            ints.iter().map(|&c| ModPoly::from_ints(&[c])).collect(),
        )
    }

    #[test]
    fn geometric_reciprocal() {
        // 1/(1 − z²) = 1 + z² + z⁴ + …
        let a = even(0, &[1, -1, 0, 0, 0, 0]);
        let inv = a.reciprocal().unwrap();
        assert_eq!(inv.order(), 0);
        assert_eq!(inv.truncation(), 10);
        for (i, c) in inv.coeffs().iter().enumerate() {
            assert_eq!(*c, ModPoly::one(), "coefficient of z^{}", 2 * i);
        }
    }

    #[test]
    fn reciprocal_roundtrip_and_truncation() {
        // order-2 series, like sn²: z²·(3 − z² + 2z⁴)
        let a = even(2, &[3, -1, 2, 5]);
        assert_eq!(a.truncation(), 8);
        let inv = a.reciprocal().unwrap();
        assert_eq!(inv.order(), -2);
        assert_eq!(inv.truncation(), 8 - 2 * 2);
        let prod = a.mul(&inv);
        assert_eq!(prod.coeff_at(0), ModPoly::one());
        for e in 1..=prod.truncation() {
            assert!(prod.coeff_at(e).is_zero(), "z^{e} must cancel");
        }
    }

    #[test]
    fn reciprocal_rejects_bad_leads() {
        let odd_series = ZSeries::new(0, true, vec![ModPoly::one()]);
        assert!(matches!(
            odd_series.reciprocal(),
            Err(Error::SeriesNotInvertible)
        ));
        let zero_lead = even(0, &[0, 1]);
        assert!(matches!(
            zero_lead.reciprocal(),
            Err(Error::SeriesNotInvertible)
        ));
        let poly_lead = ZSeries::new(0, false, vec![ModPoly::k2(), ModPoly::one()]);
        assert!(matches!(
            poly_lead.reciprocal(),
            Err(Error::SeriesNotInvertible)
        ));
    }

    #[test]
    fn odd_prefactor_products() {
        // z·(1 − z²) squared is z² − 2z⁴ + z⁶, exact through z⁴ only.
        let s = ZSeries::new(0, true, vec![ModPoly::one(), ModPoly::from_ints(&[-1])]);
        assert_eq!(s.truncation(), 3);
        let sq = s.square();
        assert!(!sq.is_odd());
        assert_eq!(sq.order(), 2);
        assert_eq!(sq.truncation(), 4);
        assert_eq!(sq.coeff_at(2), ModPoly::one());
        assert_eq!(sq.coeff_at(4), ModPoly::from_ints(&[-2]));
    }

    #[test]
    fn mixed_parity_product_gets_prefactor() {
        let odd = ZSeries::new(0, true, vec![ModPoly::one(), ModPoly::one()]);
        let evn = even(0, &[1, 1]);
        let prod = odd.mul(&evn);
        assert!(prod.is_odd());
        assert_eq!(prod.order(), 0);
        assert_eq!(prod.coeff_at(1), ModPoly::one());
        assert_eq!(prod.coeff_at(3), ModPoly::from_ints(&[2]));
    }

    #[test]
    fn coeff_lookup_conventions() {
        let a = even(2, &[7, 8]);
        assert!(a.coeff_at(0).is_zero());
        assert!(a.coeff_at(3).is_zero());
        assert_eq!(a.coeff_at(4), ModPoly::from_ints(&[8]));
    }

    #[test]
    #[should_panic(expected = "beyond truncation")]
    fn coeff_beyond_truncation_panics() {
        even(0, &[1, 2]).coeff_at(4);
    }

    #[test]
    fn one_minus_and_scaling() {
        let a = ZSeries::new(2, false, vec![ModPoly::one(), ModPoly::k2()]);
        let b = a.one_minus();
        assert_eq!(b.coeff_at(0), ModPoly::one());
        assert_eq!(b.coeff_at(2), ModPoly::from_ints(&[-1]));
        assert_eq!(b.coeff_at(4), -&ModPoly::k2());

        let doubled = a.scale_argument(&rat(2, 1));
        assert_eq!(doubled.coeff_at(2), ModPoly::from_ints(&[4]));
        assert_eq!(doubled.coeff_at(4), ModPoly::k2().scale(&rat(16, 1)));

        let halved = a.scale(&rat(1, 2));
        assert_eq!(halved.coeff_at(2), ModPoly::constant(rat(1, 2)));
    }

    fn arb_even(order: i64) -> impl Strategy<Value = ZSeries> {
        proptest::collection::vec(-9i64..=9, 2..6)
            .prop_map(move |cs| even(order, &cs))
    }

    proptest! {
        #[test]
        fn product_ring_laws(a in arb_even(0), b in arb_even(0), c in arb_even(0)) {
            let ab = a.mul(&b);
            let ba = b.mul(&a);
            prop_assert_eq!(&ab, &ba);
            prop_assert_eq!(a.mul(&b.mul(&c)), ab.mul(&c));
            // distributivity on the common exact range
            let lhs = a.mul(&b.add(&c));
            let rhs = a.mul(&b).add(&a.mul(&c));
            let t = lhs.truncation().min(rhs.truncation());
            prop_assert_eq!(lhs.truncate_to(t), rhs.truncate_to(t));
        }

        #[test]
        fn reciprocal_is_inverse(mut lead in 1i64..=9, tail in proptest::collection::vec(-9i64..=9, 1..5), sign in proptest::bool::ANY) {
            if sign { lead = -lead; }
            let mut ints = vec![lead];
            ints.extend(tail);
            let a = even(0, &ints);
            let inv = a.reciprocal().unwrap();
            let prod = a.mul(&inv);
            prop_assert_eq!(prod.coeff_at(0), ModPoly::one());
            for e in 1..=prod.truncation() {
                prop_assert!(prod.coeff_at(e).is_zero());
            }
        }
    }
}
