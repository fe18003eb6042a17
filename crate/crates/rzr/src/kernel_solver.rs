//! Exact rational kernel extraction and the canonical basis of the relation
//! space.
//!
//! The centrepiece is [`relation_space`], which for a depth `m >= 1` returns
//! the canonical integer basis of the space of rational tuples
//! `t = (t_1, ..., t_4m)` such that
//!
//! ```text
//! sum_{s=1}^{m}  t_{4s-3} Phi_{2s} + t_{4s-2} Phi*_{2s}
//!              + t_{4s-1} Psi_{2s} + t_{4s}   Psi*_{2s}  =  0 ,
//! ```
//!
//! where `Phi`, `Phi*`, `Psi`, `Psi*` are the reciprocal even-power sums of a
//! second-order recurrence (see [`crate::numeric_verify`]).  The coefficient
//! matrix assembled in [`crate::relation_matrix`] reduces this analytic
//! statement to exact linear algebra over the rationals: the relation space is
//! the kernel of the scalar form of that matrix, and its dimension is exactly
//! `m`.
//!
//! Two independent computations of the same space are provided:
//!
//! * [`relation_space`] extracts the kernel of the scalar (coefficient-wise)
//!   form of the assembled matrix;
//! * [`structured_relation_space`] never expands the block rows into
//!   coefficient rows.  Instead it introduces one auxiliary unknown per block
//!   row and uses the one-dimensional kernels of the four-polynomial groups
//!   (see [`crate::aux_polys::xi_kernel`]) to eliminate the polynomial
//!   content, then projects the auxiliary unknowns away.
//!
//! For small `m` the front-end cross-checks one path against the other before
//! returning anything.
//!
//! # Canonical form
//!
//! [`kernel_basis`] presents the kernel of a rational matrix in a unique way:
//! one vector per free column of the reduced row echelon form, carrying `+1`
//! at its own free column and `0` at every other free column, scaled to a
//! primitive integer vector (coordinates coprime, free slot positive).
//! [`relation_space`] additionally flips each basis vector so that its first
//! nonzero coordinate is negative; this reproduces the classical shape of the
//! depth-one relation, `-2 Phi_2 + Phi*_2 + Psi*_2 = 0`.
//!
//! # Example
//!
//! ```
//! use rzr::kernel_solver::{membership_check, relation_space, zero_pattern_check};
//! use rzr::qalgebra::rat;
//!
//! let basis = relation_space(2).unwrap();
//! assert_eq!(basis.vectors.len(), 2);
//! assert!(zero_pattern_check(&basis));
//!
//! // (1, 0, 0, −1, −7, 8, 1, 0) is a depth-2 relation …
//! let member: Vec<_> = [1, 0, 0, -1, -7, 8, 1, 0].iter().map(|&n| rat(n, 1)).collect();
//! assert!(membership_check(&member, 2).unwrap());
//!
//! // … whereas the single sum Φ₂ satisfies no rational relation on its own.
//! let lone: Vec<_> = [1, 0, 0, 0, 0, 0, 0, 0].iter().map(|&n| rat(n, 1)).collect();
//! assert!(!membership_check(&lone, 2).unwrap());
//! ```

use crate::aux_polys::{build_aux, xi_kernel};
use crate::elliptic_series::{build_laurent_table, build_trig_table};
use crate::qalgebra::{rat_int, rat_is_zero, Int, Rat};
use crate::relation_matrix::{assemble, weights};
use crate::{Error, Result};

/// Largest depth for which [`relation_space`] re-derives the basis through
/// [`structured_relation_space`] and insists on exact agreement.
pub const CROSS_CHECK_LIMIT: usize = 6;

/// One relation between the reciprocal power sums up to depth `m`, stored as
/// a primitive integer coefficient vector of length `4m`.
///
/// Slot `4s-3` (1-based) multiplies `Phi_{2s}`, slot `4s-2` multiplies
/// `Phi*_{2s}`, slot `4s-1` multiplies `Psi_{2s}` and slot `4s` multiplies
/// `Psi*_{2s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationVector {
    /// Depth: the relation involves power sums of exponents `2, 4, ..., 2m`.
    pub m: usize,
    /// The `4m` integer coefficients, primitive as a tuple.
    pub t: Vec<Int>,
}

/// A basis of the full relation space at depth `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationBasis {
    /// Depth of the space.
    pub m: usize,
    /// Canonical basis vectors; their number equals `m`.
    pub vectors: Vec<RelationVector>,
}

/// Output styles for [`format_relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationStyle {
    /// Unicode text in the power-sum quantities, e.g. `−2Φ₂ + Φ₂* + Ψ₂* = 0`.
    PhiPsi,
    /// Unicode text in Fibonacci/Lucas zeta values, e.g.
    /// `−2ζ_F(2) + ζ_F*(2) + 5ζ_L*(2) = 0`.
    ZetaFibonacci,
    /// LaTeX source in the power-sum quantities.
    Latex,
    /// LaTeX source in Fibonacci/Lucas zeta values.
    LatexZeta,
}

// ---------------------------------------------------------------------------
// Generic exact linear algebra
// ---------------------------------------------------------------------------

/// Reduce `rows` to reduced row echelon form in place and return the pivot
/// columns in ascending order.  All arithmetic is exact.
pub(crate) fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    debug_assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut pivots = Vec::new();
    let mut next_row = 0usize;
    for col in 0..ncols {
        if next_row == nrows {
            break;
        }
        let Some(src) = (next_row..nrows).find(|&i| !rat_is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = rows[next_row][col].clone().recip();
        for entry in rows[next_row][col..].iter_mut() {
            *entry *= &inv;
        }
        let pivot_row = rows[next_row].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next_row || rat_is_zero(&row[col]) {
                continue;
            }
            // The pivot entry is 1, so this entry becomes exactly zero; the
            // rest of the row is updated from col+1 on.
            let factor = std::mem::replace(&mut row[col], Rat::new());
            for (dst, src) in row[col + 1..].iter_mut().zip(&pivot_row[col + 1..]) {
                *dst -= Rat::from(src * &factor);
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    pivots
}

/// Scale a nonzero rational vector to the primitive integer vector pointing
/// the same way: multiply by the least common multiple of the denominators,
/// then divide by the greatest common divisor of the entries.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut out: Vec<Int> = v
        .iter()
        .map(|x| Int::from(x.numer() * &lcm) / x.denom())
        .collect();
    let mut gcd = Int::new();
    for x in &out {
        gcd = gcd.gcd(x);
    }
    if gcd > 1 {
        for x in &mut out {
            *x /= &gcd;
        }
    }
    out
}

/// Canonical primitive integer basis of the kernel of a rational matrix.
///
/// The result contains one vector per free column of the reduced row echelon
/// form, in ascending order of free column.  Each vector has `+1` at its own
/// free column and `0` at every other free column before scaling; scaling to
/// a primitive integer vector keeps the free slot positive.  An invertible
/// matrix therefore yields an empty list, and a zero matrix yields (multiples
/// of) the standard unit vectors.
///
/// # Panics
///
/// Panics if `matrix` has no rows (the column count would be unknowable) or
/// if its rows have unequal lengths.
pub fn kernel_basis(matrix: &[Vec<Rat>]) -> Vec<Vec<Int>> {
    assert!(
        !matrix.is_empty(),
        "kernel_basis needs at least one row to know the column count"
    );
    let ncols = matrix[0].len();
    assert!(matrix.iter().all(|r| r.len() == ncols), "ragged matrix");
    let mut rows = matrix.to_vec();
    let pivots = rref(&mut rows);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rat::new(); ncols];
        v[free] = rat_int(1);
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[i][free].clone();
        }
        basis.push(primitive_integer(&v));
    }
    basis
}

/// Rank of a rational matrix (exact).
pub(crate) fn rank(matrix: &[Vec<Rat>]) -> usize {
    let mut rows = matrix.to_vec();
    rref(&mut rows).len()
}

fn int_to_rat_rows(vectors: &[Vec<Int>]) -> Vec<Vec<Rat>> {
    vectors
        .iter()
        .map(|v| v.iter().map(|x| Rat::from(x)).collect())
        .collect()
}

/// True iff `candidate` lies in the row span of `span` (all exact).
fn in_span(span: &[Vec<Rat>], candidate: &[Rat]) -> bool {
    if span.is_empty() {
        return candidate.iter().all(rat_is_zero);
    }
    let base = rank(span);
    let mut extended: Vec<Vec<Rat>> = span.to_vec();
    extended.push(candidate.to_vec());
    rank(&extended) == base
}

// ---------------------------------------------------------------------------
// Relation space: scalar route
// ---------------------------------------------------------------------------

fn normalize_relation_sign(v: &mut [Int]) {
    let flip = matches!(v.iter().find(|x| **x != 0), Some(first) if *first > 0);
    if flip {
        for x in v.iter_mut() {
            *x = -std::mem::take(x);
        }
    }
}

/// Compute the canonical basis of the relation space at depth `m`.
///
/// The basis is extracted as the kernel of the scalar (coefficient-wise) form
/// of the assembled matrix, canonicalised as in [`kernel_basis`], and then
/// sign-normalised so that the first nonzero coordinate of every basis vector
/// is negative.  Before returning, the function
///
/// * re-verifies `A v = 0` exactly against both the scalar form and the
///   polynomial block form of the matrix,
/// * checks that the dimension equals `m` (else
///   [`Error::DimensionMismatch`]),
/// * checks the structural zero pattern `t_{4s} = 0` for even `s` and
///   `t_{4s-1} = 0` for odd `s` (else [`Error::ZeroPatternViolated`]),
/// * for `m <= `[`CROSS_CHECK_LIMIT`], re-derives the space through
///   [`structured_relation_space`] and insists the two spans agree (else
///   [`Error::BasisCrossCheckFailed`]).
pub fn relation_space(m: usize) -> Result<RelationBasis> {
    if m == 0 {
        return Err(Error::IndexOutOfRange {
            what: "relation-space depth",
            index: 0,
            max: usize::MAX,
        });
    }
    let aux_depth = m.saturating_sub(1).max(1);
    let laurent = build_laurent_table(aux_depth);
    let aux = build_aux(&laurent);
    let trig = build_trig_table(aux_depth);
    let wt = weights(m);
    let assembled = assemble(m, &aux, &wt, &trig)?;

    let scalar = assembled.scalar_form();
    let raw = kernel_basis(scalar);
    if raw.len() != m {
        return Err(Error::DimensionMismatch { m, dim: raw.len() });
    }
    let mut vectors = Vec::with_capacity(m);
    for mut t in raw {
        normalize_relation_sign(&mut t);
        vectors.push(RelationVector { m, t });
    }

    // Exact re-verification against both matrix forms.
    for v in &vectors {
        let tr: Vec<Rat> = v.t.iter().map(Rat::from).collect();
        for row in scalar {
            let mut acc = Rat::new();
            for (a, b) in row.iter().zip(&tr) {
                acc += Rat::from(a * b);
            }
            assert!(
                rat_is_zero(&acc),
                "kernel vector fails the scalar form it was extracted from"
            );
        }
        for row in 0..assembled.block_rows() {
            let mut acc = crate::qalgebra::ModPoly::zero();
            for (col, b) in tr.iter().enumerate() {
                if !rat_is_zero(b) {
                    acc = &acc + &assembled.block(row, col).scale(b);
                }
            }
            assert!(
                acc.is_zero(),
                "kernel vector fails the polynomial block form"
            );
        }
    }

    let basis = RelationBasis { m, vectors };
    if !zero_pattern_check(&basis) {
        return Err(Error::ZeroPatternViolated {
            m,
            detail: "a basis vector has a nonzero entry at a structurally zero slot".into(),
        });
    }

    if m <= CROSS_CHECK_LIMIT {
        let structured = structured_relation_space(m)?;
        if structured.vectors.len() != m {
            return Err(Error::BasisCrossCheckFailed { m });
        }
        let scalar_rows = int_to_rat_rows(
            &basis
                .vectors
                .iter()
                .map(|v| v.t.clone())
                .collect::<Vec<_>>(),
        );
        for v in &structured.vectors {
            let cand: Vec<Rat> = v.t.iter().map(Rat::from).collect();
            if !in_span(&scalar_rows, &cand) {
                return Err(Error::BasisCrossCheckFailed { m });
            }
        }
        let structured_rows = int_to_rat_rows(
            &structured
                .vectors
                .iter()
                .map(|v| v.t.clone())
                .collect::<Vec<_>>(),
        );
        for v in &basis.vectors {
            let cand: Vec<Rat> = v.t.iter().map(Rat::from).collect();
            if !in_span(&structured_rows, &cand) {
                return Err(Error::BasisCrossCheckFailed { m });
            }
        }
    }

    Ok(basis)
}

// ---------------------------------------------------------------------------
// Relation space: structured route
// ---------------------------------------------------------------------------

/// Compute a basis of the relation space at depth `m` without ever expanding
/// the polynomial block rows into coefficient rows.
///
/// For each block row `nu = 1..m-1` the four-polynomial group
/// `(-Theta_nu^-, Theta_nu^+, -Lambda_nu^-, Lambda_nu^+)` has a
/// one-dimensional kernel spanned by an integer vector `v_nu` (computed by
/// [`xi_kernel`], not hard-coded).  A tuple `t` annihilates the block row if
/// and only if the four accumulated scalar coordinates of the row against the
/// group equal `tau_nu * v_nu` for some rational `tau_nu`.  Stacking the four
/// top scalar rows with these `4(m-1)` conditions in the `5m - 1` unknowns
/// `(t, tau_1, ..., tau_{m-1})`, extracting the kernel and projecting the
/// `tau` coordinates away yields the relation space.
///
/// The result is presented canonically (reduced row echelon form of the
/// projected spanning set, primitive integer scaling, first nonzero
/// coordinate negative), which makes the output deterministic; it spans the
/// same space as [`relation_space`] but the individual vectors may differ.
pub fn structured_relation_space(m: usize) -> Result<RelationBasis> {
    if m == 0 {
        return Err(Error::IndexOutOfRange {
            what: "relation-space depth",
            index: 0,
            max: usize::MAX,
        });
    }
    let aux_depth = m.saturating_sub(1).max(1);
    let laurent = build_laurent_table(aux_depth);
    let aux = build_aux(&laurent);
    let trig = build_trig_table(aux_depth);
    let wt = weights(m);
    let assembled = assemble(m, &aux, &wt, &trig)?;

    let ncols = 4 * m + (m - 1); // t coordinates, then one tau per block row
    let x_form = assembled.x_form();
    debug_assert_eq!(x_form.len(), 4 + 4 * (m - 1));

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(x_form.len());
    // Top rows: the four scalar rows, tau coefficients zero.
    for top in &x_form[..4] {
        let mut row = top.clone();
        row.resize(ncols, Rat::new());
        rows.push(row);
    }
    // Block rows: the accumulated scalar coordinate of block row `nu` against
    // each group polynomial, coupled to tau_nu through the kernel vector of
    // the group.  `group_rows` is in the fixed order
    // (Theta^-, Theta^+, Lambda^-, Lambda^+); writing the block row in the
    // basis (-Theta^-, Theta^+, -Lambda^-, Lambda^+) whose kernel vector is
    // v_nu flips the sign of the first and third coordinates, hence the
    // alternating sign pattern on the tau coefficients.
    for nu in 1..m {
        let v = xi_kernel(&aux, nu)?;
        let group = assembled.group_rows(nu);
        let signs = [1i64, -1, 1, -1];
        for slot in 0..4 {
            let mut row = group[slot].clone();
            row.resize(ncols, Rat::new());
            let coef = Rat::from(&v.t[slot]) * rat_int(signs[slot]);
            row[4 * m + (nu - 1)] = coef;
            rows.push(row);
        }
    }

    let kern = kernel_basis(&rows);
    // Project the tau coordinates away and canonicalise the span.
    let mut projected: Vec<Vec<Rat>> = kern
        .iter()
        .map(|v| v[..4 * m].iter().map(Rat::from).collect())
        .collect();
    let pivots = rref(&mut projected);
    let mut vectors = Vec::new();
    for i in 0..pivots.len() {
        let mut t = primitive_integer(&projected[i]);
        normalize_relation_sign(&mut t);
        vectors.push(RelationVector { m, t });
    }
    if vectors.len() != m {
        return Err(Error::DimensionMismatch {
            m,
            dim: vectors.len(),
        });
    }
    Ok(RelationBasis { m, vectors })
}

// ---------------------------------------------------------------------------
// Derived checks
// ---------------------------------------------------------------------------

/// Check the structural zero pattern of a basis: every vector must vanish at
/// the `Psi*`-slot of each even depth (`t_{4s} = 0` for even `s`) and at the
/// `Psi`-slot of each odd depth (`t_{4s-1} = 0` for odd `s`).
pub fn zero_pattern_check(basis: &RelationBasis) -> bool {
    basis.vectors.iter().all(|v| {
        (1..=basis.m).all(|s| {
            let psi_star = &v.t[4 * s - 1]; // 1-based slot 4s
            let psi = &v.t[4 * s - 2]; // 1-based slot 4s-1
            if s % 2 == 0 {
                *psi_star == 0
            } else {
                *psi == 0
            }
        })
    })
}

/// Decide whether the rational tuple `v` (length `4m`) lies in the relation
/// space at depth `m`.
pub fn membership_check(v: &[Rat], m: usize) -> Result<bool> {
    if v.len() != 4 * m {
        return Err(Error::LengthMismatch {
            expected: 4 * m,
            got: v.len(),
        });
    }
    let basis = relation_space(m)?;
    let rows = int_to_rat_rows(
        &basis
            .vectors
            .iter()
            .map(|b| b.t.clone())
            .collect::<Vec<_>>(),
    );
    Ok(in_span(&rows, v))
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

pub(crate) fn subscript(n: u64) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn term_label(style: RelationStyle, s: usize, slot: usize) -> String {
    match style {
        RelationStyle::PhiPsi => {
            let (letter, star) = match slot {
                0 => ("Φ", ""),
                1 => ("Φ", "*"),
                2 => ("Ψ", ""),
                _ => ("Ψ", "*"),
            };
            format!("{letter}{}{star}", subscript(2 * s as u64))
        }
        RelationStyle::ZetaFibonacci => {
            let (seq, star) = match slot {
                0 => ("F", ""),
                1 => ("F", "*"),
                2 => ("L", ""),
                _ => ("L", "*"),
            };
            format!("ζ_{seq}{star}({})", 2 * s)
        }
        RelationStyle::Latex => {
            let (letter, star) = match slot {
                0 => ("\\Phi", ""),
                1 => ("\\Phi", "^*"),
                2 => ("\\Psi", ""),
                _ => ("\\Psi", "^*"),
            };
            format!("{letter}_{{{}}}{star}", 2 * s)
        }
        RelationStyle::LatexZeta => {
            let (seq, star) = match slot {
                0 => ("F", ""),
                1 => ("F", "^*"),
                2 => ("L", ""),
                _ => ("L", "^*"),
            };
            format!("\\zeta_{{{seq}}}{star}({})", 2 * s)
        }
    }
}

fn is_zeta(style: RelationStyle) -> bool {
    matches!(
        style,
        RelationStyle::ZetaFibonacci | RelationStyle::LatexZeta
    )
}

fn minus_sign(style: RelationStyle) -> &'static str {
    match style {
        RelationStyle::PhiPsi | RelationStyle::ZetaFibonacci => "−",
        RelationStyle::Latex | RelationStyle::LatexZeta => "-",
    }
}

/// Render one relation as a human-readable equation set to zero.
///
/// * [`RelationStyle::PhiPsi`] prints the integer coefficients on the power
///   sums directly: `−2Φ₂ + Φ₂* + Ψ₂* = 0`.
/// * [`RelationStyle::ZetaFibonacci`] converts to Fibonacci/Lucas zeta
///   values.  Since `ζ_F(2s) = 5^s Φ_{2s}` (and likewise for the starred
///   variant) while `ζ_L(2s) = Ψ_{2s}` exactly, the `Φ`-slots pick up a
///   factor `5^{-s}`; the printed coefficients are the integer tuple with the
///   common denominator cleared (no further gcd reduction, so the zeta form
///   of `−2Φ₂ + Φ₂* + Ψ₂* = 0` is `−2ζ_F(2) + ζ_F*(2) + 5ζ_L*(2) = 0`).
/// * The two LaTeX styles mirror the Unicode ones with ASCII minus signs.
pub fn format_relation(v: &RelationVector, style: RelationStyle) -> String {
    // Build the coefficient list for the requested quantity system.
    let coeffs: Vec<Int> = if is_zeta(style) {
        let mut rats: Vec<Rat> = Vec::with_capacity(v.t.len());
        for (idx, c) in v.t.iter().enumerate() {
            let s = idx / 4 + 1;
            let slot = idx % 4;
            let mut r = Rat::from(c);
            if slot < 2 {
                // Phi-slots: zeta_F(2s) = 5^s * Phi_{2s}.
                r /= Rat::from(Int::from(Int::u_pow_u(5, s as u32)));
            }
            rats.push(r);
        }
        let mut lcm = Int::from(1);
        for r in &rats {
            lcm = lcm.lcm(r.denom());
        }
        rats.iter()
            .map(|r| Int::from(r.numer() * &lcm) / r.denom())
            .collect()
    } else {
        v.t.clone()
    };

    let mut out = String::new();
    for (idx, c) in coeffs.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let s = idx / 4 + 1;
        let slot = idx % 4;
        let label = term_label(style, s, slot);
        let mag = c.clone().abs();
        let mag_str = if mag == 1 { String::new() } else { mag.to_string() };
        if out.is_empty() {
            if *c < 0 {
                out.push_str(minus_sign(style));
            }
        } else if *c < 0 {
            out.push_str(&format!(" {} ", minus_sign(style)));
        } else {
            out.push_str(" + ");
        }
        out.push_str(&mag_str);
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}
