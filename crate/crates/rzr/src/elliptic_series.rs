//! Coefficient tables of the squared Jacobi elliptic functions.
//!
//! With sn = sn(z, k) the Jacobi sine amplitude, four even expansions carry
//! everything downstream (j ≥ 1 throughout):
//!
//! ```text
//! 1/sn²                   = 1/z² + (1+k²)/3 + Σ c_j z²ʲ
//! (1−k²)·(1/(1−k²sn²) − 1) =                  Σ d_j z²ʲ
//! (1−k²)·(1/(1−sn²) − 1)   =                  Σ e_j z²ʲ
//! (1−k²sn²) − 1            =                  Σ f_j z²ʲ
//! ```
//!
//! Every coefficient is a polynomial in k² with rational coefficients
//! ([`ModPoly`]), of degree at most j+1 for c and d and at most j for e and
//! f. As k → 0, sn degenerates to the sine and the c and e families collapse
//! to the Taylor coefficients of 1/sin² − 1/z² and sec² − 1, which are
//! explicit in Bernoulli numbers and are tabulated by [`build_trig_table`].
//!
//! The whole module rests on one generator: [`sn_series`] integrates the
//! defining initial-value problem sn″ = −(1+k²)·sn + 2k²·sn³, sn(0) = 0,
//! sn′(0) = 1 coefficient by coefficient, exactly.
//!
//! # Example
//!
//! ```
//! use rzr::elliptic_series::{build_laurent_table, build_trig_table, check_cdef_identity};
//! use rzr::qalgebra::{rat, ModPoly};
//!
//! let table = build_laurent_table(2);
//! // c₁ = (1 − k² + k⁴)/15 and e₁ = 1 − k², exactly.
//! assert_eq!(*table.c(1), ModPoly::from_coeffs(vec![rat(1, 15), rat(-1, 15), rat(1, 15)]));
//! assert_eq!(*table.e(1), ModPoly::from_ints(&[1, -1]));
//! // (2^{2j+2} − 1)·c_j + d_j − e_j + f_j = 0 at every stored level.
//! assert!(check_cdef_identity(&table, 1));
//! assert!(check_cdef_identity(&table, 2));
//!
//! // The k → 0 limits match the stored tables.
//! let trig = build_trig_table(2);
//! assert_eq!(*trig.a(1), rat(1, 15));
//! assert_eq!(*trig.b(2), rat(2, 3));
//! ```

use crate::qalgebra::{bernoulli, factorial, pow2, rat, rat_int, ModPoly, Rat, ZSeries};

/// Taylor series of sn(z, k) about z = 0, exact through z^(truncation+1).
///
/// `truncation` must be even and at least 2. The result is an odd series
/// (z times an even series) whose coefficient of z^(2n+1) has k²-degree at
/// most n; the first two are 1 and −(1+k²)/6.
pub fn sn_series(truncation: i64) -> ZSeries {
    assert!(
        truncation >= 2 && truncation % 2 == 0,
        "sn truncation must be even and ≥ 2"
    );
    let n_coeffs = (truncation / 2 + 1) as usize;
    let one_plus_k2 = ModPoly::from_ints(&[1, 1]);
    let two_k2 = ModPoly::from_ints(&[0, 2]);

    // s[n] is the coefficient of z^(2n+1) in sn; sq[n] tracks the square of
    // the even part, so that the cubic term needs one convolution per step.
    let mut s: Vec<ModPoly> = vec![ModPoly::one()];
    let mut sq: Vec<ModPoly> = vec![ModPoly::one()];
    for n in 0..n_coeffs - 1 {
        // (2n+3)(2n+2)·s[n+1] = −(1+k²)·s[n] + 2k²·(S³)[n−1]
        let mut rhs = -&(&one_plus_k2 * &s[n]);
        if n >= 1 {
            let mut cube = ModPoly::zero();
            for t in 0..n {
                cube = &cube + &(&sq[t] * &s[n - 1 - t]);
            }
            rhs = &rhs + &(&two_k2 * &cube);
        }
        let div = rat_int((2 * n as i64 + 3) * (2 * n as i64 + 2));
        s.push(rhs.scale(&div.recip()));

        // extend the square table: sq[n+1] = Σ_{i+j=n+1} s_i s_j
        let m = n + 1;
        let mut sq_m = ModPoly::zero();
        for i in 0..=m {
            sq_m = &sq_m + &(&s[i] * &s[m - i]);
        }
        sq.push(sq_m);
    }
    for (n, p) in s.iter().enumerate() {
        debug_assert!(p.degree().unwrap_or(0) <= n, "k²-degree bound of sn");
    }
    ZSeries::new(0, true, s)
}

/// The exact coefficient polynomials c_j, d_j, e_j, f_j for 1 ≤ j ≤ max_j.
#[derive(Clone, Debug)]
pub struct LaurentCoeffTable {
    max_j: usize,
    c: Vec<ModPoly>,
    d: Vec<ModPoly>,
    e: Vec<ModPoly>,
    f: Vec<ModPoly>,
}

impl LaurentCoeffTable {
    /// Largest stored index j.
    pub fn max_j(&self) -> usize {
        self.max_j
    }

    fn fetch<'a>(&self, table: &'a [ModPoly], j: usize) -> &'a ModPoly {
        assert!(
            (1..=self.max_j).contains(&j),
            "coefficient index {j} outside 1..={}",
            self.max_j
        );
        &table[j]
    }

    /// c_j, from 1/sn².
    pub fn c(&self, j: usize) -> &ModPoly {
        self.fetch(&self.c, j)
    }

    /// d_j, from (1−k²)/(1−k²sn²).
    pub fn d(&self, j: usize) -> &ModPoly {
        self.fetch(&self.d, j)
    }

    /// e_j, from (1−k²)/(1−sn²).
    pub fn e(&self, j: usize) -> &ModPoly {
        self.fetch(&self.e, j)
    }

    /// f_j, from 1−k²sn².
    pub fn f(&self, j: usize) -> &ModPoly {
        self.fetch(&self.f, j)
    }
}

/// Builds the c, d, e, f tables up to `max_j` ≥ 1 by exact series algebra on
/// [`sn_series`].
///
/// The fixed Laurent and constant terms of 1/sn² are checked, and the
/// k²-degree bounds (j+1 for c and d, j for e and f) are asserted. The
/// reciprocals themselves are re-verified by multiplication in tests.
pub fn build_laurent_table(max_j: usize) -> LaurentCoeffTable {
    assert!(max_j >= 1, "table depth must be at least 1");
    let truncation = 2 * max_j as i64 + 2;
    let sn = sn_series(truncation);
    let sn2 = sn.square();

    let k2 = ModPoly::k2();
    let one_minus_k2 = ModPoly::from_ints(&[1, -1]);

    let ns2 = sn2.reciprocal().expect("sn² starts with z²·1");
    assert_eq!(ns2.coeff_at(-2), ModPoly::one());
    assert_eq!(
        ns2.coeff_at(0),
        ModPoly::from_coeffs(vec![rat(1, 3), rat(1, 3)]),
        "constant term of 1/sn² must be (1+k²)/3"
    );

    let nc2 = sn2.one_minus().reciprocal().expect("1−sn² starts with 1");
    assert_eq!(nc2.coeff_at(0), ModPoly::one());

    let k2sn2 = sn2.scale_poly(&k2);
    let nd2 = k2sn2.one_minus().reciprocal().expect("1−k²sn² starts with 1");
    assert_eq!(nd2.coeff_at(0), ModPoly::one());

    let dn2_minus_1 = k2sn2.neg();

    let mut table = LaurentCoeffTable {
        max_j,
        c: vec![ModPoly::zero(); max_j + 1],
        d: vec![ModPoly::zero(); max_j + 1],
        e: vec![ModPoly::zero(); max_j + 1],
        f: vec![ModPoly::zero(); max_j + 1],
    };
    for j in 1..=max_j {
        let z = 2 * j as i64;
        table.c[j] = ns2.coeff_at(z);
        table.d[j] = &nd2.coeff_at(z) * &one_minus_k2;
        table.e[j] = &nc2.coeff_at(z) * &one_minus_k2;
        table.f[j] = dn2_minus_1.coeff_at(z);
        assert!(table.c[j].degree().unwrap_or(0) <= j + 1, "deg c_{j}");
        assert!(table.d[j].degree().unwrap_or(0) <= j + 1, "deg d_{j}");
        assert!(table.e[j].degree().unwrap_or(0) <= j, "deg e_{j}");
        assert!(table.f[j].degree().unwrap_or(0) <= j, "deg f_{j}");
    }
    table
}

/// The k → 0 limits: a_j from 1/sin² − 1/z², b_j from sec² − 1, for
/// 0 ≤ j ≤ max_j.
#[derive(Clone, Debug)]
pub struct TrigCoeffTable {
    max_j: usize,
    a: Vec<Rat>,
    b: Vec<Rat>,
}

impl TrigCoeffTable {
    /// Largest stored index j.
    pub fn max_j(&self) -> usize {
        self.max_j
    }

    /// a_j, the coefficient of z^(2j) in 1/sin² − 1/z² (so a₀ = 1/3).
    pub fn a(&self, j: usize) -> &Rat {
        assert!(j <= self.max_j, "a index {j} outside 0..={}", self.max_j);
        &self.a[j]
    }

    /// b_j, the coefficient of z^(2j) in sec² (so b₀ = 1).
    pub fn b(&self, j: usize) -> &Rat {
        assert!(j <= self.max_j, "b index {j} outside 0..={}", self.max_j);
        &self.b[j]
    }
}

/// Builds the trigonometric tables from Bernoulli numbers:
///
/// ```text
/// a_j = (−1)ʲ (2j+1) 2²ʲ⁺² B_{2j+2} / (2j+2)!         b_j = (2²ʲ⁺² − 1)·a_j
/// ```
pub fn build_trig_table(max_j: usize) -> TrigCoeffTable {
    let mut a = Vec::with_capacity(max_j + 1);
    let mut b = Vec::with_capacity(max_j + 1);
    for j in 0..=max_j {
        let n = 2 * j as i64 + 2;
        let mut aj = Rat::from(bernoulli(n).expect("even positive index"));
        aj *= rat_int(n - 1) * pow2(n as i32);
        aj /= Rat::from(factorial(n as u32));
        if j % 2 == 1 {
            aj = -aj;
        }
        let bj = Rat::from(&aj * &(pow2(n as i32) - rat_int(1)));
        a.push(aj);
        b.push(bj);
    }
    TrigCoeffTable { max_j, a, b }
}

/// Checks the four-term coefficient identity
/// (2^(2j+2) − 1)·c_j + d_j − e_j + f_j = 0 at index j.
pub fn check_cdef_identity(table: &LaurentCoeffTable, j: usize) -> bool {
    let lhs = table.c(j).scale(&(pow2(2 * j as i32 + 2) - rat_int(1)));
    let lhs = &(&lhs + table.d(j)) - table.e(j);
    (&lhs + table.f(j)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalgebra::poly_eval;

    fn pr(coeffs: &[(i64, i64)]) -> ModPoly {
        ModPoly::from_coeffs(coeffs.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn sn_series_golden() {
        let sn = sn_series(6);
        assert!(sn.is_odd());
        assert_eq!(sn.truncation(), 7);
        assert_eq!(sn.coeff_at(1), ModPoly::one());
        assert_eq!(sn.coeff_at(3), pr(&[(-1, 6), (-1, 6)]));
        assert_eq!(sn.coeff_at(5), pr(&[(1, 120), (14, 120), (1, 120)]));
        // z⁷: −(1 + 135k² + 135k⁴ + k⁶)/5040
        assert_eq!(
            sn.coeff_at(7),
            pr(&[(-1, 5040), (-135, 5040), (-135, 5040), (-1, 5040)])
        );
    }

    #[test]
    fn sn_collapses_to_sine_at_k_zero() {
        let sn = sn_series(20);
        let zero = rat_int(0);
        for (n, p) in sn.coeffs().iter().enumerate() {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let want = rat_int(sign) / Rat::from(factorial(2 * n as u32 + 1));
            assert_eq!(poly_eval(p, &zero), want, "sine coefficient at z^{}", 2 * n + 1);
        }
    }

    #[test]
    fn laurent_table_golden() {
        let t = build_laurent_table(2);
        assert_eq!(*t.c(1), pr(&[(1, 15), (-1, 15), (1, 15)]));
        assert_eq!(*t.c(2), pr(&[(2, 189), (-3, 189), (-3, 189), (2, 189)]));
        assert_eq!(*t.d(1), pr(&[(0, 1), (1, 1), (-1, 1)]));
        assert_eq!(*t.d(2), pr(&[(0, 1), (-1, 3), (1, 1), (-2, 3)]));
        assert_eq!(*t.e(1), pr(&[(1, 1), (-1, 1)]));
        assert_eq!(*t.e(2), pr(&[(2, 3), (-1, 1), (1, 3)]));
        assert_eq!(*t.f(1), pr(&[(0, 1), (-1, 1)]));
        assert_eq!(*t.f(2), pr(&[(0, 1), (1, 3), (1, 3)]));
    }

    #[test]
    fn trig_table_golden() {
        let t = build_trig_table(2);
        assert_eq!(*t.a(0), rat(1, 3));
        assert_eq!(*t.a(1), rat(1, 15));
        assert_eq!(*t.a(2), rat(2, 189));
        assert_eq!(*t.b(0), rat(1, 1));
        assert_eq!(*t.b(1), rat(1, 1));
        assert_eq!(*t.b(2), rat(2, 3));
    }

    #[test]
    fn c_and_e_limit_to_trig_coefficients() {
        let max = 12;
        let lt = build_laurent_table(max);
        let tt = build_trig_table(max);
        let zero = rat_int(0);
        for j in 1..=max {
            assert_eq!(poly_eval(lt.c(j), &zero), *tt.a(j), "c_{j}(0)");
            assert_eq!(poly_eval(lt.e(j), &zero), *tt.b(j), "e_{j}(0)");
            assert_eq!(poly_eval(lt.d(j), &zero), rat_int(0), "d_{j}(0)");
            assert_eq!(poly_eval(lt.f(j), &zero), rat_int(0), "f_{j}(0)");
        }
    }

    /// Independent oracle for the c family: 1/sn² − (1+k²)/3 is the
    /// Weierstrass ℘ function with invariants
    /// g₂ = (4/3)(k⁴−k²+1), g₃ = (4/27)(k²+1)(2k²−1)(k²−2),
    /// whose Laurent coefficients obey c₁ = g₂/20, c₂ = g₃/28, and
    /// c_j = 3/((2j+3)(j−2)) · Σ_{i=1..j−2} c_i c_{j−1−i} for j ≥ 3.
    #[test]
    fn c_matches_weierstrass_recurrence() {
        let max = 16;
        let lt = build_laurent_table(max);
        let g2 = pr(&[(4, 3), (-4, 3), (4, 3)]);
        let g3 = &pr(&[(4, 27), (4, 27)]) * &pr(&[(2, 1), (-5, 1), (2, 1)]);
        assert_eq!(*lt.c(1), g2.scale(&rat(1, 20)));
        assert_eq!(*lt.c(2), g3.scale(&rat(1, 28)));
        for j in 3..=max {
            let mut acc = ModPoly::zero();
            for i in 1..=j - 2 {
                acc = &acc + &(lt.c(i) * lt.c(j - 1 - i));
            }
            let expected = acc.scale(&rat(3, (2 * j as i64 + 3) * (j as i64 - 2)));
            assert_eq!(*lt.c(j), expected, "Weierstrass recurrence at j={j}");
        }
    }

    #[test]
    fn cdef_identity_holds() {
        let t = build_laurent_table(10);
        for j in 1..=10 {
            assert!(check_cdef_identity(&t, j), "identity at j={j}");
        }
    }

    /// Re-multiplication check for the three reciprocals the table build
    /// relies on, over their full exact ranges.
    #[test]
    fn table_reciprocals_remultiply_to_one() {
        let sn2 = sn_series(26).square();
        let targets = [
            sn2.clone(),
            sn2.one_minus(),
            sn2.scale_poly(&ModPoly::k2()).one_minus(),
        ];
        for series in &targets {
            let inv = series.reciprocal().unwrap();
            let product = series.mul(&inv);
            let mut e = product.exponent(0);
            assert_eq!(product.coeff_at(0), ModPoly::one());
            while e <= product.truncation() {
                if e != 0 {
                    assert!(product.coeff_at(e).is_zero(), "residue at z^{e}");
                }
                e += 2;
            }
        }
    }

    #[test]
    fn degree_bounds_are_tight_for_c() {
        // deg c_j = j+1 exactly (its top coefficient is nonzero), which is
        // why the bound cannot be lowered to j.
        let t = build_laurent_table(6);
        for j in 1..=6 {
            assert_eq!(t.c(j).degree(), Some(j + 1));
        }
    }
}
