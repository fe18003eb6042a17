//! The four families of auxiliary polynomials in `k²` and their structure.
//!
//! From the Laurent coefficient families `c_j, d_j, e_j, f_j` (see
//! [`crate::elliptic_series`]) four derived families are formed:
//!
//! ```text
//! Theta_j^-  = c_j - d_j        Theta_j^+  = c_j + d_j
//! Lambda_j^- = e_j - f_j        Lambda_j^+ = e_j + f_j
//! ```
//!
//! These are exactly the polynomials that appear (up to sign and a rational
//! weight) as the entries of the block rows of the assembled matrix, and as
//! the elliptic factors of the coordinate quantities `x_5, x_6, ...` in which
//! the power sums expand.  Their coefficient structure is rigid:
//!
//! * the constant and leading coefficients, and the coefficients of `k²` and
//!   `k⁴`, obey closed forms in `j` (checked by [`check_closed_forms`]);
//! * for every `j` the four polynomials
//!   `(-Theta_j^-, Theta_j^+, -Lambda_j^-, Lambda_j^+)` span a space of rank
//!   exactly 3, with one-dimensional kernel spanned by the integer vector
//!   `(1 - 2^{2j+1}, 2^{2j+1}, 1, 0)` (computed, not assumed, by
//!   [`xi_kernel`]).
//!
//! The kernel vectors drive the structured elimination route in
//! [`crate::kernel_solver::structured_relation_space`].
//!
//! # Example
//!
//! ```
//! use rzr::aux_polys::{build_aux, check_closed_forms, xi_kernel};
//! use rzr::elliptic_series::build_laurent_table;
//! use rzr::qalgebra::{rat, ModPoly};
//!
//! let aux = build_aux(&build_laurent_table(3));
//!
//! // Theta₁⁻ = (1 − 16k² + 16k⁴)/15.
//! let expected = ModPoly::from_coeffs(vec![rat(1, 15), rat(-16, 15), rat(16, 15)]);
//! assert_eq!(*aux.theta_minus(1), expected);
//!
//! // The coefficient closed forms hold at every stored level ≥ 2 …
//! assert!(check_closed_forms(&aux, 2).unwrap());
//! assert!(check_closed_forms(&aux, 3).unwrap());
//!
//! // … and each level-j quadruple has the one-dimensional kernel
//! // (1 − 2^{2j+1}, 2^{2j+1}, 1, 0); at j = 1 that is (−7, 8, 1, 0).
//! let v = xi_kernel(&aux, 1).unwrap();
//! assert_eq!(v.t, [-7, 8, 1, 0].map(rug::Integer::from));
//! ```

use crate::elliptic_series::{build_trig_table, LaurentCoeffTable};
use crate::kernel_solver::{kernel_basis, RelationVector};
use crate::qalgebra::{pow2, rat, rat_int, ModPoly, Rat};
use crate::{Error, Result};

/// The four families `Theta_j^∓`, `Lambda_j^∓` for `j = 1..=max_j`.
#[derive(Debug, Clone)]
pub struct AuxPolySet {
    max_j: usize,
    theta_minus: Vec<ModPoly>,
    theta_plus: Vec<ModPoly>,
    lambda_minus: Vec<ModPoly>,
    lambda_plus: Vec<ModPoly>,
}

impl AuxPolySet {
    /// Largest stored index.
    pub fn max_j(&self) -> usize {
        self.max_j
    }

    fn fetch<'a>(&self, family: &'a [ModPoly], what: &'static str, j: usize) -> &'a ModPoly {
        assert!(
            (1..=self.max_j).contains(&j),
            "{what} index {j} outside 1..={}",
            self.max_j
        );
        &family[j - 1]
    }

    /// `Theta_j^- = c_j - d_j`.
    pub fn theta_minus(&self, j: usize) -> &ModPoly {
        self.fetch(&self.theta_minus, "Theta^-", j)
    }

    /// `Theta_j^+ = c_j + d_j`.
    pub fn theta_plus(&self, j: usize) -> &ModPoly {
        self.fetch(&self.theta_plus, "Theta^+", j)
    }

    /// `Lambda_j^- = e_j - f_j`.
    pub fn lambda_minus(&self, j: usize) -> &ModPoly {
        self.fetch(&self.lambda_minus, "Lambda^-", j)
    }

    /// `Lambda_j^+ = e_j + f_j`.
    pub fn lambda_plus(&self, j: usize) -> &ModPoly {
        self.fetch(&self.lambda_plus, "Lambda^+", j)
    }

    /// The level-`j` group in the fixed order
    /// `(Theta^-, Theta^+, Lambda^-, Lambda^+)`.
    pub fn group(&self, j: usize) -> [&ModPoly; 4] {
        [
            self.theta_minus(j),
            self.theta_plus(j),
            self.lambda_minus(j),
            self.lambda_plus(j),
        ]
    }

    fn coeff_at_level(&self, family: &[ModPoly], what: &'static str, j: usize, i: usize) -> Rat {
        assert!(
            (2..=self.max_j + 1).contains(&j),
            "{what} level {j} outside 2..={}",
            self.max_j + 1
        );
        family[j - 2].coeff(i)
    }

    /// `alpha_{j,i}`: coefficient of `k^{2i}` in `Theta_{j-1}^-` (levels
    /// `2..=max_j+1`).
    pub fn alpha(&self, j: usize, i: usize) -> Rat {
        self.coeff_at_level(&self.theta_minus, "alpha", j, i)
    }

    /// `beta_{j,i}`: coefficient of `k^{2i}` in `Theta_{j-1}^+`.
    pub fn beta(&self, j: usize, i: usize) -> Rat {
        self.coeff_at_level(&self.theta_plus, "beta", j, i)
    }

    /// `gamma_{j,i}`: coefficient of `k^{2i}` in `Lambda_{j-1}^-`.
    pub fn gamma(&self, j: usize, i: usize) -> Rat {
        self.coeff_at_level(&self.lambda_minus, "gamma", j, i)
    }

    /// `delta_{j,i}`: coefficient of `k^{2i}` in `Lambda_{j-1}^+`.
    pub fn delta(&self, j: usize, i: usize) -> Rat {
        self.coeff_at_level(&self.lambda_plus, "delta", j, i)
    }
}

/// Build the four families from a Laurent coefficient table.
pub fn build_aux(table: &LaurentCoeffTable) -> AuxPolySet {
    let max_j = table.max_j();
    let mut theta_minus = Vec::with_capacity(max_j);
    let mut theta_plus = Vec::with_capacity(max_j);
    let mut lambda_minus = Vec::with_capacity(max_j);
    let mut lambda_plus = Vec::with_capacity(max_j);
    for j in 1..=max_j {
        theta_minus.push(table.c(j) - table.d(j));
        theta_plus.push(table.c(j) + table.d(j));
        lambda_minus.push(table.e(j) - table.f(j));
        lambda_plus.push(table.e(j) + table.f(j));
    }
    AuxPolySet {
        max_j,
        theta_minus,
        theta_plus,
        lambda_minus,
        lambda_plus,
    }
}

/// `kappa_j = (-1)^{j-1} 2^{2j-3} / (2j-2)!` for levels `j >= 2`.
pub fn kappa(j: usize) -> Rat {
    assert!(j >= 2, "kappa is defined for levels j >= 2");
    let sign = if (j - 1) % 2 == 0 { 1 } else { -1 };
    let mut out = pow2(2 * j as i32 - 3);
    out *= rat_int(sign);
    out / Rat::from(crate::qalgebra::factorial(2 * j as u32 - 2))
}

/// `kappa_hat_j = j (4j - 7) / 32`.
pub fn kappa_hat(j: usize) -> Rat {
    rat(j as i64 * (4 * j as i64 - 7), 32)
}

/// Verify the closed forms of the low- and top-order coefficients of the
/// level-`j` group (which lives at polynomial index `j - 1`), for
/// `2 <= j <= max_j + 1`.
///
/// With `a = a_{j-1}` and `b = b_{j-1}` the trigonometric limit values,
/// `kappa = kappa_j` and `kappa_hat = kappa_hat_j`, the thirteen identities
/// checked are:
///
/// ```text
/// alpha_{j,0} = beta_{j,0} = a          gamma_{j,0} = delta_{j,0} = b
/// alpha_{j,1} = kappa - (j/2) a         beta_{j,1}  = alpha_{j,1} - 2 kappa
/// delta_{j,1} = kappa - (j/2) b         gamma_{j,1} = delta_{j,1} - 2 kappa
/// alpha_{j,2} = (kappa/16)(7 - 8j - 2^{2j-1}) + kappa_hat a
/// beta_{j,2}  = (kappa/16)(-9 + 8j + 2^{2j-1}) + kappa_hat a
/// gamma_{j,2} = (kappa/16)(-7 + 8j - 2^{2j-1}) + kappa_hat b
/// delta_{j,2} = (kappa/16)(9 - 8j + 2^{2j-1}) + kappa_hat b
/// alpha_{j,j} = 2^{2j} a                beta_{j,j} = (2 - 2^{2j}) a
/// gamma_{j,j} = delta_{j,j} = 0
/// ```
///
/// Returns `Ok(true)` iff all of them hold.
pub fn check_closed_forms(aux: &AuxPolySet, j: usize) -> Result<bool> {
    if j < 2 {
        return Err(Error::IndexOutOfRange {
            what: "closed-form level",
            index: j,
            max: aux.max_j() + 1,
        });
    }
    if j > aux.max_j() + 1 {
        return Err(Error::InsufficientAuxDepth {
            needed: j - 1,
            have: aux.max_j(),
        });
    }
    let trig = build_trig_table(j - 1);
    let a = trig.a(j - 1).clone();
    let b = trig.b(j - 1).clone();
    let kap = kappa(j);
    let kap_hat = kappa_hat(j);
    let half_j = rat(j as i64, 2);
    let two_pow = pow2(2 * j as i32 - 1); // 2^{2j-1}
    let sixteenth = Rat::from(&kap / &rat_int(16));

    let lin = |base: i64, sign_j: i64, sign_pow: i64| -> Rat {
        // (kappa/16) * (base + sign_j*8j + sign_pow*2^{2j-1})
        let mut inner = rat_int(base);
        inner += rat_int(sign_j * 8 * j as i64);
        if sign_pow >= 0 {
            inner += &two_pow;
        } else {
            inner -= &two_pow;
        }
        Rat::from(&sixteenth * &inner)
    };

    let alpha1 = Rat::from(&kap - &Rat::from(&half_j * &a));
    let delta1 = Rat::from(&kap - &Rat::from(&half_j * &b));
    let two_kap = Rat::from(&kap * &rat_int(2));

    let checks = [
        aux.alpha(j, 0) == a,
        aux.beta(j, 0) == a,
        aux.gamma(j, 0) == b,
        aux.delta(j, 0) == b,
        aux.alpha(j, 1) == alpha1,
        aux.beta(j, 1) == Rat::from(&alpha1 - &two_kap),
        aux.delta(j, 1) == delta1,
        aux.gamma(j, 1) == Rat::from(&delta1 - &two_kap),
        aux.alpha(j, 2) == Rat::from(&lin(7, -1, -1) + &Rat::from(&kap_hat * &a)),
        aux.beta(j, 2) == Rat::from(&lin(-9, 1, 1) + &Rat::from(&kap_hat * &a)),
        aux.gamma(j, 2) == Rat::from(&lin(-7, 1, -1) + &Rat::from(&kap_hat * &b)),
        aux.delta(j, 2) == Rat::from(&lin(9, -1, 1) + &Rat::from(&kap_hat * &b)),
        aux.alpha(j, j) == Rat::from(&pow2(2 * j as i32) * &a),
        aux.beta(j, j) == Rat::from(&Rat::from(&rat_int(2) - &pow2(2 * j as i32)) * &a),
        aux.gamma(j, j) == rat_int(0),
        aux.delta(j, j) == rat_int(0),
    ];
    Ok(checks.into_iter().all(|ok| ok))
}

/// Compute the one-dimensional kernel of the level-`j` group.
///
/// The `(j+2) x 4` coefficient matrix of
/// `(-Theta_j^-, Theta_j^+, -Lambda_j^-, Lambda_j^+)` (one row per power of
/// `k²`) is passed to [`kernel_basis`].  The kernel must be one-dimensional,
/// else [`Error::KernelNotOneDimensional`] is returned; its canonical
/// generator — which always turns out to be `(1 - 2^{2j+1}, 2^{2j+1}, 1, 0)`
/// — comes back as a depth-one shaped [`RelationVector`].
pub fn xi_kernel(aux: &AuxPolySet, j: usize) -> Result<RelationVector> {
    if !(1..=aux.max_j()).contains(&j) {
        return Err(Error::IndexOutOfRange {
            what: "four-term kernel level",
            index: j,
            max: aux.max_j(),
        });
    }
    let [tm, tp, lm, lp] = aux.group(j);
    let rows: Vec<Vec<Rat>> = (0..=j + 1)
        .map(|i| vec![-tm.coeff(i), tp.coeff(i), -lm.coeff(i), lp.coeff(i)])
        .collect();
    let kern = kernel_basis(&rows);
    if kern.len() != 1 {
        return Err(Error::KernelNotOneDimensional {
            j,
            dim: kern.len(),
        });
    }
    Ok(RelationVector {
        m: 1,
        t: kern.into_iter().next().unwrap(),
    })
}
