//! Numeric evaluation of the closed forms through the coordinate frame.
//!
//! Every power sum of order `s` has an exact expansion over the coordinate
//! frame `x₁..x_{4s}`: the constant `1`, the three base coordinates built
//! from `(2K/π)²`, `k²`, and `E/K`, and one quadruple of auxiliary
//! polynomial values scaled by `(2K/π)^{2j}` for each level `j = 2..s`.
//! The exact rational coefficients live in the assembled matrix's
//! coordinate form; this module substitutes arbitrary-precision values of
//! the elliptic quantities and dots them against a chosen column.

use rug::Float;

use super::elliptic::{nome_to_elliptic, EllipticContext};
use crate::aux_polys::AuxPolySet;
use crate::elliptic_series::TrigCoeffTable;
use crate::qalgebra::ModPoly;
use crate::relation_matrix::{assemble, slot_kinds, AuxKind, WeightTable};
use crate::{Error, Result};

use super::PowerSumKind;

/// Evaluates a polynomial in `k²` at a floating-point value by Horner's
/// rule, at the precision of the argument.
pub(crate) fn poly_eval_float(poly: &ModPoly, k2: &Float) -> Float {
    let prec = k2.prec();
    let mut acc = Float::new(prec);
    for coeff in poly.coeffs().iter().rev() {
        acc *= k2;
        acc += Float::with_val(prec, coeff);
    }
    acc
}

/// Numeric values of the coordinate frame `x₁..x_{4m}` for the elliptic
/// data in `ctx`, in frame order.
///
/// The first four are `1`, `(2K/π)²`, `(2K/π)²(2k²−1)`, and
/// `(2K/π)²(6E/K − 5 + 4k²)`; each later group `j = 2..m` holds the four
/// auxiliary polynomials of level `j−1` evaluated at `k²` (in the
/// parity-dependent slot order) times `(2K/π)^{2j}`.
pub fn x_values(m: usize, ctx: &EllipticContext, aux: &AuxPolySet) -> Result<Vec<Float>> {
    assert!(m >= 1, "depth must be at least 1");
    if m >= 2 && aux.max_j() < m - 1 {
        return Err(Error::InsufficientAuxDepth {
            needed: m - 1,
            have: aux.max_j(),
        });
    }
    let prec = ctx.prec;
    let tko2 = Float::with_val(prec, ctx.two_k_over_pi.square_ref());
    let k2 = &ctx.k2;

    let mut xs = Vec::with_capacity(4 * m);
    xs.push(Float::with_val(prec, 1));
    xs.push(tko2.clone());

    let two_k2_minus_1 = Float::with_val(prec, k2 * 2u32) - 1u32;
    xs.push(Float::with_val(prec, &tko2 * &two_k2_minus_1));

    let e_over_k = Float::with_val(prec, &ctx.big_e / &ctx.big_k);
    let inner = Float::with_val(prec, &e_over_k * 6u32) - 5u32 + Float::with_val(prec, k2 * 4u32);
    xs.push(Float::with_val(prec, &tko2 * &inner));

    let mut power = tko2.clone();
    for j in 2..=m {
        power = Float::with_val(prec, &power * &tko2);
        for kind in slot_kinds(j) {
            let poly = match kind {
                AuxKind::ThetaMinus => aux.theta_minus(j - 1),
                AuxKind::ThetaPlus => aux.theta_plus(j - 1),
                AuxKind::LambdaMinus => aux.lambda_minus(j - 1),
                AuxKind::LambdaPlus => aux.lambda_plus(j - 1),
            };
            let val = poly_eval_float(poly, k2);
            xs.push(Float::with_val(prec, &power * &val));
        }
    }
    Ok(xs)
}

/// Evaluates the closed form of one power sum of order `s` numerically:
/// the exact rational coordinate column for that sum, dotted against the
/// numeric coordinate values from [`x_values`].
///
/// Cross-checking this against direct summation certifies, end to end, the
/// entire table pipeline: Laurent coefficient families, auxiliary
/// polynomials, weights, and the assembled coordinate expansion.
pub fn eval_closed_form(
    s: usize,
    kind: PowerSumKind,
    ctx: &EllipticContext,
    aux: &AuxPolySet,
    wt: &WeightTable,
    trig: &TrigCoeffTable,
) -> Result<Float> {
    assert!(s >= 1, "order must be at least 1");
    let assembled = assemble(s, aux, wt, trig)?;
    let xf = assembled.x_form();
    let xs = x_values(s, ctx, aux)?;
    let col = 4 * (s - 1) + kind.index();

    let prec = ctx.prec;
    let mut acc = Float::new(prec);
    for (row, x) in xf.iter().zip(&xs) {
        let c = &row[col];
        if c.cmp0() != std::cmp::Ordering::Equal {
            acc += Float::with_val(prec, c) * x;
        }
    }
    Ok(acc)
}

/// One cross-validation sample from [`closed_form_battery`].
#[derive(Debug, Clone)]
pub struct ClosedFormSample {
    /// Series order.
    pub s: usize,
    /// Which of the four sums.
    pub kind: PowerSumKind,
    /// `|closed form − direct summation|`.
    pub difference: Float,
    /// The summed value (for reporting).
    pub value: Float,
}

/// Cross-validates every closed form of order `s ≤ m` against direct series
/// summation for the given sequence, at `digits` decimal digits.
///
/// Builds the elliptic context from the sequence's nome `q = β²` and all
/// symbolic tables to the needed depth, then reports
/// `|eval_closed_form − sum_series|` for each `(s, kind)` pair.
pub fn closed_form_battery(
    spec: &super::SequenceSpec,
    m: usize,
    digits: usize,
) -> Result<Vec<ClosedFormSample>> {
    use crate::aux_polys::build_aux;
    use crate::elliptic_series::{build_laurent_table, build_trig_table};
    use crate::relation_matrix::weights;

    assert!(m >= 1);
    spec.validate()?;
    let depth = m.saturating_sub(1).max(1);
    let table = build_laurent_table(depth);
    let aux = build_aux(&table);
    let wt = weights(m);
    let trig = build_trig_table(depth);

    let q = spec.nome(super::work_prec(digits, 12));
    let ctx = nome_to_elliptic(&q, digits)?;

    let mut out = Vec::with_capacity(4 * m);
    for s in 1..=m {
        for kind in PowerSumKind::ALL {
            let closed = eval_closed_form(s, kind, &ctx, &aux, &wt, &trig)?;
            let summed = super::sum_series(spec, s, kind, digits)?;
            let prec = ctx.prec;
            let difference = Float::with_val(prec, &closed - &summed.value).abs();
            out.push(ClosedFormSample {
                s,
                kind,
                difference,
                value: summed.value,
            });
        }
    }
    Ok(out)
}
