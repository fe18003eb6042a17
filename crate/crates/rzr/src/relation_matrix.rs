//! Assembly of the coefficient matrix whose kernel is the relation space.
//!
//! Every reciprocal even-power sum `Phi_{2s}`, `Phi*_{2s}`, `Psi_{2s}`,
//! `Psi*_{2s}` (for `s = 1..=m`) expands as an exact rational linear
//! combination of a fixed list of `4m` coordinate quantities
//! `x_1, ..., x_{4m}` built from complete elliptic integrals:
//!
//! ```text
//! x_1 = 1                 x_3 = (2K/π)² (2k² - 1)
//! x_2 = (2K/π)²           x_4 = (2K/π)² (6E/K - 5 + 4k²)
//! ```
//!
//! and for `2 <= j <= m` the group `x_{4j-3}, ..., x_{4j}` consists of
//! `(2K/π)^{2j}` times the four level-`(j-1)` auxiliary polynomials (order
//! depending on the parity of `j`; see [`slot_kinds`]).  A tuple `t` of `4m`
//! rationals therefore gives the zero function if and only if `t` annihilates
//! every coordinate row — and because `x_1, x_2, x_3, x_4` enter through
//! rational weights while each higher group enters through the four
//! polynomials of one level, the whole condition is captured by the
//! `(m+3) x 4m` *block matrix* assembled here: four scalar top rows and one
//! polynomial-valued row per level `nu = 1..=m-1`.
//!
//! [`AssembledMatrix`] stores that block matrix together with two derived
//! scalar forms:
//!
//! * the **scalar form**, in which each block row is expanded into its
//!   `k²`-coefficient rows — its kernel is the relation space;
//! * the **coordinate form** (`x_form`), one row per coordinate quantity,
//!   which feeds the structured elimination route and reproduces the
//!   coefficients of the twelve depth-3 expansions exactly.
//!
//! [`quasi_periodicity_check`] verifies the repetition structure along each
//! block row: any two four-column groups of the same row agree up to a
//! permutation of the four slots and one rational ratio, once each entry is
//! reduced to its scalar against the level's reference polynomials.
//!
//! # Example
//!
//! ```
//! use rzr::aux_polys::build_aux;
//! use rzr::elliptic_series::{build_laurent_table, build_trig_table};
//! use rzr::qalgebra::rat;
//! use rzr::relation_matrix::{assemble, weights};
//! use rzr::ModPoly;
//!
//! let aux = build_aux(&build_laurent_table(1));
//! let wt = weights(2);
//! assert_eq!(*wt.w_hat(1), rat(1, 24));
//!
//! let a = assemble(2, &aux, &wt, &build_trig_table(1)).unwrap();
//! assert_eq!(a.cols(), 8);                    // slots Φ₂ … Ψ₄*
//! assert_eq!(a.block_rows(), 5);              // 4 scalar rows + 1 block row
//! assert_eq!(a.scalar_form().len(), 7);       // block row expands into 3 rows
//! assert_eq!(*a.block(0, 0), ModPoly::constant(rat(1, 24)));
//! assert!(a.block(4, 0).is_zero());           // leading zero group
//! ```

use crate::aux_polys::AuxPolySet;
use crate::elliptic_series::TrigCoeffTable;
use crate::kernel_solver::subscript;
use crate::qalgebra::{factorial, pow2, rat_int, rat_is_zero, Int, ModPoly, Rat};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Weights
// ---------------------------------------------------------------------------

/// `sigma_i(s)`: the coefficient of `x^i` in `prod_{r=1}^{s-1} (1 - r² x)`.
///
/// These are (up to sign) the elementary symmetric functions of the squares
/// `1², 2², ..., (s-1)²`; in particular `sigma_0(s) = 1` and
/// `sigma_{s-1}(s) = (-1)^{s-1} ((s-1)!)²`.
pub fn sigma(i: usize, s: usize) -> Int {
    assert!(s >= 1, "sigma needs s >= 1");
    let mut coeffs = vec![Int::from(1)];
    for r in 1..s as i64 {
        let mut next = vec![Int::new(); coeffs.len() + 1];
        for (p, c) in coeffs.iter().enumerate() {
            next[p] += c;
            next[p + 1] -= Int::from(c * (r * r));
        }
        coeffs = next;
    }
    coeffs.get(i).cloned().unwrap_or_default()
}

/// The rational weights attached to depth `m`.
///
/// `w_hat(s)` multiplies the scalar top rows of the `s`-th block of four
/// columns; `w(s, j)` multiplies the level-`j` polynomial group in the same
/// block (`1 <= j <= s-1`).
#[derive(Debug, Clone)]
pub struct WeightTable {
    m: usize,
    w_hat: Vec<Rat>,
    w: Vec<Vec<Rat>>,
}

impl WeightTable {
    /// Largest block index covered.
    pub fn m(&self) -> usize {
        self.m
    }

    /// `w_hat(s) = ((s-1)!)² / (24 (2s-1)!)` for `1 <= s <= m`.
    pub fn w_hat(&self, s: usize) -> &Rat {
        assert!((1..=self.m).contains(&s), "w_hat index {s} outside 1..={}", self.m);
        &self.w_hat[s]
    }

    /// `w(s, j) = (-1)^j sigma_{s-j-1}(s) (2j)! / (2^{2j+3} (2s-1)!)` for
    /// `1 <= j <= s-1`.
    pub fn w(&self, s: usize, j: usize) -> &Rat {
        assert!((2..=self.m).contains(&s), "w block index {s} outside 2..={}", self.m);
        assert!((1..=s - 1).contains(&j), "w level {j} outside 1..={}", s - 1);
        &self.w[s][j - 1]
    }
}

/// Build the weight table for depth `m >= 1`.
pub fn weights(m: usize) -> WeightTable {
    assert!(m >= 1, "weight table depth must be at least 1");
    let mut w_hat = vec![Rat::new(); m + 1];
    let mut w = vec![Vec::new(); m + 1];
    for s in 1..=m {
        let fs = Rat::from(factorial(s as u32 - 1));
        let f2s = Rat::from(factorial(2 * s as u32 - 1));
        w_hat[s] = Rat::from(&Rat::from(&fs * &fs) / &Rat::from(&f2s * &rat_int(24)));
        let mut row = Vec::with_capacity(s - 1);
        for j in 1..s {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let mut num = Rat::from(sigma(s - j - 1, s));
            num *= Rat::from(factorial(2 * j as u32));
            num *= rat_int(sign);
            let den = Rat::from(&pow2(2 * j as i32 + 3) * &f2s);
            row.push(num / den);
        }
        w[s] = row;
    }
    WeightTable { m, w_hat, w }
}

// ---------------------------------------------------------------------------
// The scalar top block
// ---------------------------------------------------------------------------

/// The `4 x 4` scalar contribution of block `s` to the four top rows.
///
/// Row `r` gives the coefficients of coordinate `x_{r+1}` in
/// `(Phi_{2s}, Phi*_{2s}, Psi_{2s}, Psi*_{2s})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockR {
    /// Block index (the power sums involved have exponent `2s`).
    pub s: usize,
    /// Rows `x_1..x_4` by columns `Phi, Phi*, Psi, Psi*`.
    pub rows: [[Rat; 4]; 4],
}

/// Compute the top-row block for index `s`.
pub fn block_r(s: usize, trig: &TrigCoeffTable, wt: &WeightTable) -> BlockR {
    assert!(s >= 1 && s <= wt.m(), "block index {s} outside 1..={}", wt.m());
    assert!(trig.max_j() + 1 >= s, "trig table too shallow for block {s}");
    let wh = wt.w_hat(s).clone();

    // x1-coefficients of Phi_{2s} and Psi_{2s}.
    let mut r_phi = if s % 2 == 1 { wh.clone() } else { -wh.clone() };
    let mut r_psi_sum = Rat::new();
    for j in 1..s {
        r_phi += Rat::from(trig.a(j) * wt.w(s, j));
        r_psi_sum += Rat::from(trig.b(j) * wt.w(s, j));
    }
    if s % 2 == 1 {
        r_psi_sum = -r_psi_sum;
    }
    let r_psi = Rat::from(&r_psi_sum - &Rat::from(&wh * &rat_int(3)));

    let z = Rat::new;
    let row1 = [r_phi.clone(), -r_phi, r_psi.clone(), -r_psi];
    let (row2, row3, row4) = if s % 2 == 0 {
        (
            [z(), z(), z(), Rat::from(&wh * &rat_int(-3))],
            [z(), wh.clone(), Rat::from(&wh * &rat_int(-2)), z()],
            [wh.clone(), z(), wh.clone(), z()],
        )
    } else {
        (
            [z(), z(), Rat::from(&wh * &rat_int(3)), z()],
            [wh.clone(), z(), z(), Rat::from(&wh * &rat_int(2))],
            [z(), wh.clone(), z(), -wh.clone()],
        )
    };
    BlockR {
        s,
        rows: [row1, row2, row3, row4],
    }
}

// ---------------------------------------------------------------------------
// Coordinate frame
// ---------------------------------------------------------------------------

/// Which auxiliary polynomial a coordinate slot refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    /// `Theta_j^-`
    ThetaMinus,
    /// `Theta_j^+`
    ThetaPlus,
    /// `Lambda_j^-`
    LambdaMinus,
    /// `Lambda_j^+`
    LambdaPlus,
}

impl AuxKind {
    /// Unicode symbol for the level-`j` polynomial of this kind.
    pub fn symbol(self, j: usize) -> String {
        let (letter, sign) = match self {
            AuxKind::ThetaMinus => ("Θ", "⁻"),
            AuxKind::ThetaPlus => ("Θ", "⁺"),
            AuxKind::LambdaMinus => ("Λ", "⁻"),
            AuxKind::LambdaPlus => ("Λ", "⁺"),
        };
        format!("{letter}{}{sign}", subscript(j as u64))
    }
}

/// The polynomial kinds of the coordinate group `x_{4j-3}, ..., x_{4j}` for
/// `j >= 2` (all referring to level `j-1`): minus-type first for even `j`,
/// plus-type first for odd `j`.
pub fn slot_kinds(j: usize) -> [AuxKind; 4] {
    assert!(j >= 2, "coordinate groups with polynomial content start at j=2");
    if j % 2 == 0 {
        [
            AuxKind::ThetaMinus,
            AuxKind::ThetaPlus,
            AuxKind::LambdaMinus,
            AuxKind::LambdaPlus,
        ]
    } else {
        [
            AuxKind::ThetaPlus,
            AuxKind::ThetaMinus,
            AuxKind::LambdaPlus,
            AuxKind::LambdaMinus,
        ]
    }
}

/// Human-readable names of the coordinate quantities `x_1..x_{4m}`.
#[derive(Debug, Clone)]
pub struct CoordinateFrame {
    m: usize,
    labels: Vec<String>,
}

impl CoordinateFrame {
    /// Build the frame for depth `m`.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1);
        let mut labels = vec![
            "1".to_string(),
            "(2K/π)²".to_string(),
            "(2K/π)²·(2k²−1)".to_string(),
            "(2K/π)²·(6E/K−5+4k²)".to_string(),
        ];
        for j in 2..=m {
            let power = crate::qalgebra::superscript(2 * j as u64);
            for kind in slot_kinds(j) {
                labels.push(format!("(2K/π){power}·{}", kind.symbol(j - 1)));
            }
        }
        CoordinateFrame { m, labels }
    }

    /// Depth of the frame.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Label of `x_i` for `1 <= i <= 4m`.
    pub fn label(&self, i: usize) -> &str {
        assert!((1..=4 * self.m).contains(&i), "coordinate index {i} outside 1..={}", 4 * self.m);
        &self.labels[i - 1]
    }

    /// All labels, in coordinate order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

// ---------------------------------------------------------------------------
// Assembly
// ---------------------------------------------------------------------------

/// The assembled matrix at depth `m`, in block, scalar and coordinate form.
#[derive(Debug, Clone)]
pub struct AssembledMatrix {
    m: usize,
    blocks: Vec<Vec<ModPoly>>,
    scalar: Vec<Vec<Rat>>,
    x_rows: Vec<Vec<Rat>>,
    group_scalar: Vec<[Vec<Rat>; 4]>,
    refs: Vec<[ModPoly; 4]>,
}

impl AssembledMatrix {
    /// Depth of the matrix.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of block rows, `m + 3`.
    pub fn block_rows(&self) -> usize {
        self.m + 3
    }

    /// Number of columns, `4m`.
    pub fn cols(&self) -> usize {
        4 * self.m
    }

    /// Block entry; rows `0..4` are constant polynomials (the scalar top
    /// rows), row `3 + nu` carries the level-`nu` polynomial content.
    pub fn block(&self, row: usize, col: usize) -> &ModPoly {
        &self.blocks[row][col]
    }

    /// The scalar form: the four top rows followed by the `k²`-coefficient
    /// expansion of each block row (powers `0..=nu+1` for block row `nu`).
    /// Its kernel is the relation space.
    pub fn scalar_form(&self) -> &Vec<Vec<Rat>> {
        &self.scalar
    }

    /// The coordinate form: one row per coordinate quantity `x_i`, giving the
    /// coefficient of `x_i` in each of the `4m` power sums.  Rows follow the
    /// coordinate order of [`CoordinateFrame`].
    pub fn x_form(&self) -> &Vec<Vec<Rat>> {
        &self.x_rows
    }

    /// The four coordinate rows of level `nu` in the fixed order
    /// `(Theta^-, Theta^+, Lambda^-, Lambda^+)` regardless of parity.
    pub fn group_rows(&self, nu: usize) -> &[Vec<Rat>; 4] {
        assert!((1..=self.m - 1).contains(&nu), "group level {nu} outside 1..={}", self.m - 1);
        &self.group_scalar[nu - 1]
    }

    /// The level-`nu` reference polynomials in the same fixed order.
    pub fn refs(&self, nu: usize) -> &[ModPoly; 4] {
        assert!((1..=self.m - 1).contains(&nu), "reference level {nu} outside 1..={}", self.m - 1);
        &self.refs[nu - 1]
    }
}

/// Assemble the depth-`m` matrix from the auxiliary polynomials, the weight
/// table and the trigonometric limit coefficients.
///
/// Fails with [`Error::InsufficientAuxDepth`] if `aux` does not reach level
/// `m - 1`.
pub fn assemble(
    m: usize,
    aux: &AuxPolySet,
    wt: &WeightTable,
    trig: &TrigCoeffTable,
) -> Result<AssembledMatrix> {
    assert!(m >= 1, "depth must be at least 1");
    if m >= 2 && aux.max_j() < m - 1 {
        return Err(Error::InsufficientAuxDepth {
            needed: m - 1,
            have: aux.max_j(),
        });
    }
    assert!(wt.m() >= m, "weight table too shallow");
    assert!(trig.max_j() + 1 >= m, "trig table too shallow");

    let cols = 4 * m;
    let mut blocks = vec![vec![ModPoly::zero(); cols]; m + 3];

    // Top rows: one scalar 4x4 block per s.
    for s in 1..=m {
        let br = block_r(s, trig, wt);
        for r in 0..4 {
            for c in 0..4 {
                blocks[r][4 * (s - 1) + c] = ModPoly::constant(br.rows[r][c].clone());
            }
        }
    }

    // Block rows and their scalar descriptions.
    let mut group_scalar = Vec::with_capacity(m.saturating_sub(1));
    let mut refs = Vec::with_capacity(m.saturating_sub(1));
    for nu in 1..m {
        let [tm, tp, lm, lp] = aux.group(nu);
        let mut rows: [Vec<Rat>; 4] = std::array::from_fn(|_| vec![Rat::new(); cols]);
        for s in nu + 1..=m {
            let w = wt.w(s, nu);
            let base = 4 * (s - 1);
            if s % 2 == 0 {
                blocks[3 + nu][base] = tm.scale(&-w.clone());
                blocks[3 + nu][base + 1] = tp.scale(w);
                blocks[3 + nu][base + 2] = lm.scale(&-w.clone());
                blocks[3 + nu][base + 3] = lp.scale(w);
                rows[0][base] = -w.clone(); // Theta^- carries -w at the Phi slot
                rows[1][base + 1] = w.clone();
                rows[2][base + 2] = -w.clone();
                rows[3][base + 3] = w.clone();
            } else {
                blocks[3 + nu][base] = tp.scale(&-w.clone());
                blocks[3 + nu][base + 1] = tm.scale(w);
                blocks[3 + nu][base + 2] = lp.scale(w);
                blocks[3 + nu][base + 3] = lm.scale(&-w.clone());
                rows[1][base] = -w.clone(); // Theta^+ carries -w at the Phi slot
                rows[0][base + 1] = w.clone();
                rows[3][base + 2] = w.clone();
                rows[2][base + 3] = -w.clone();
            }
        }
        group_scalar.push(rows);
        refs.push([tm.clone(), tp.clone(), lm.clone(), lp.clone()]);
    }

    // Scalar form: top rows, then the coefficient expansion of each block row.
    let mut scalar: Vec<Vec<Rat>> = Vec::new();
    for r in 0..4 {
        scalar.push((0..cols).map(|c| blocks[r][c].coeff(0)).collect());
    }
    for nu in 1..m {
        for i in 0..=nu + 1 {
            scalar.push((0..cols).map(|c| blocks[3 + nu][c].coeff(i)).collect());
        }
    }

    // Coordinate form: top rows, then the four rows of each level, permuted
    // into the coordinate order of the group j = nu + 1.
    let mut x_rows: Vec<Vec<Rat>> = scalar[..4].to_vec();
    for nu in 1..m {
        let g = &group_scalar[nu - 1];
        let order: [usize; 4] = if (nu + 1) % 2 == 0 {
            [0, 1, 2, 3]
        } else {
            [1, 0, 3, 2]
        };
        for idx in order {
            x_rows.push(g[idx].clone());
        }
    }

    Ok(AssembledMatrix {
        m,
        blocks,
        scalar,
        x_rows,
        group_scalar,
        refs,
    })
}

// ---------------------------------------------------------------------------
// Quasi-periodicity along block rows
// ---------------------------------------------------------------------------

/// If `entry` is a rational multiple of `reference`, return the multiplier.
fn scalar_multiple_of(entry: &ModPoly, reference: &ModPoly) -> Option<Rat> {
    let coeffs = reference.coeffs();
    let idx = coeffs.iter().position(|c| !rat_is_zero(c))?;
    let ratio = Rat::from(&entry.coeff(idx) / &coeffs[idx]);
    if *entry == reference.scale(&ratio) {
        Some(ratio)
    } else {
        None
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}

/// Check the repetition structure of block row `nu`: the first nonzero
/// four-column group (block `s = nu + 1`) and the group `l` blocks further
/// right agree, after reducing every entry to its scalar against the level's
/// reference polynomials, up to a permutation of the four slots and a single
/// rational ratio.
///
/// Valid ranges: `1 <= nu <= m - 2` and `1 <= l <= m - 1 - nu`.
pub fn quasi_periodicity_check(a: &AssembledMatrix, nu: usize, l: usize) -> Result<bool> {
    let m = a.m();
    if m < 3 || !(1..=m - 2).contains(&nu) {
        return Err(Error::IndexOutOfRange {
            what: "quasi-periodicity block row",
            index: nu,
            max: m.saturating_sub(2),
        });
    }
    if !(1..=m - 1 - nu).contains(&l) {
        return Err(Error::IndexOutOfRange {
            what: "quasi-periodicity shift",
            index: l,
            max: m - 1 - nu,
        });
    }
    let refs = a.refs(nu);
    let row = 3 + nu;
    let decompose = |s: usize| -> [Rat; 4] {
        std::array::from_fn(|c| {
            let entry = a.block(row, 4 * (s - 1) + c);
            refs.iter()
                .find_map(|r| scalar_multiple_of(entry, r))
                .expect("every block entry is a rational multiple of a reference polynomial")
        })
    };
    let base = decompose(nu + 1);
    let target = decompose(nu + 1 + l);
    'perm: for p in permutations4() {
        let rho = Rat::from(&target[p[0]] / &base[0]);
        for c in 1..4 {
            if target[p[c]] != Rat::from(&base[c] * &rho) {
                continue 'perm;
            }
        }
        return Ok(true);
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aux_polys::build_aux;
    use crate::elliptic_series::{build_laurent_table, build_trig_table};
    use crate::qalgebra::rat;

    fn fixture(m: usize) -> (AssembledMatrix, AuxPolySet) {
        let depth = m.saturating_sub(1).max(1);
        let aux = build_aux(&build_laurent_table(depth));
        let trig = build_trig_table(depth);
        let wt = weights(m);
        let a = assemble(m, &aux, &wt, &trig).unwrap();
        (a, aux)
    }

    #[test]
    fn sigma_goldens() {
        assert_eq!(sigma(0, 1), 1);
        assert_eq!(sigma(1, 1), 0);
        assert_eq!(sigma(0, 3), 1);
        assert_eq!(sigma(1, 2), -1);
        assert_eq!(sigma(1, 3), -5);
        assert_eq!(sigma(2, 3), 4);
        // Top coefficient: (-1)^{s-1} ((s-1)!)².
        assert_eq!(sigma(3, 4), -36);
        assert_eq!(sigma(4, 5), 576);
    }

    #[test]
    fn weight_goldens() {
        let wt = weights(3);
        assert_eq!(*wt.w_hat(1), rat(1, 24));
        assert_eq!(*wt.w_hat(2), rat(1, 144));
        assert_eq!(*wt.w_hat(3), rat(1, 720));
        assert_eq!(*wt.w(2, 1), rat(-1, 96));
        assert_eq!(*wt.w(3, 1), rat(1, 384));
        assert_eq!(*wt.w(3, 2), rat(1, 640));
    }

    #[test]
    fn first_scalar_block_golden() {
        let trig = build_trig_table(1);
        let wt = weights(1);
        let br = block_r(1, &trig, &wt);
        let expected: [[i64; 4]; 4] = [[1, -1, -3, 3], [0, 0, 3, 0], [1, 0, 0, 2], [0, 1, 0, -1]];
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(br.rows[r][c], rat(expected[r][c], 24), "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn top_row_entries_at_higher_blocks() {
        let trig = build_trig_table(2);
        let wt = weights(3);
        let b2 = block_r(2, &trig, &wt);
        assert_eq!(b2.rows[0][0], rat(-11, 1440));
        assert_eq!(b2.rows[0][2], rat(-1, 32));
        let b3 = block_r(3, &trig, &wt);
        assert_eq!(b3.rows[0][0], rat(191, 120960));
        assert_eq!(b3.rows[0][2], rat(-1, 128));
    }

    #[test]
    fn depth_three_matrix_matches_the_reference_expansion() {
        let (a, aux) = fixture(3);
        assert_eq!(a.block_rows(), 6);
        assert_eq!(a.cols(), 12);

        // Scalar top rows, straight from the twelve coordinate expansions.
        let top: [[(i64, i64); 12]; 4] = [
            [
                (1, 24),
                (-1, 24),
                (-1, 8),
                (1, 8),
                (-11, 1440),
                (11, 1440),
                (-1, 32),
                (1, 32),
                (191, 120960),
                (-191, 120960),
                (-1, 128),
                (1, 128),
            ],
            [
                (0, 1),
                (0, 1),
                (1, 8),
                (0, 1),
                (0, 1),
                (0, 1),
                (0, 1),
                (-1, 48),
                (0, 1),
                (0, 1),
                (1, 240),
                (0, 1),
            ],
            [
                (1, 24),
                (0, 1),
                (0, 1),
                (1, 12),
                (0, 1),
                (1, 144),
                (-1, 72),
                (0, 1),
                (1, 720),
                (0, 1),
                (0, 1),
                (1, 360),
            ],
            [
                (0, 1),
                (1, 24),
                (0, 1),
                (-1, 24),
                (1, 144),
                (0, 1),
                (1, 144),
                (0, 1),
                (0, 1),
                (1, 720),
                (0, 1),
                (-1, 720),
            ],
        ];
        for (r, row) in top.iter().enumerate() {
            for (c, &(n, d)) in row.iter().enumerate() {
                assert_eq!(
                    *a.block(r, c),
                    ModPoly::constant(rat(n, d)),
                    "top entry ({r},{c})"
                );
            }
        }

        // Block row of level 1: zero group, then the two weighted groups.
        for c in 0..4 {
            assert!(a.block(4, c).is_zero(), "leading zeros of block row 1");
        }
        let w21 = rat(-1, 96);
        let w31 = rat(1, 384);
        assert_eq!(*a.block(4, 4), aux.theta_minus(1).scale(&-w21.clone()));
        assert_eq!(*a.block(4, 5), aux.theta_plus(1).scale(&w21));
        assert_eq!(*a.block(4, 6), aux.lambda_minus(1).scale(&-w21.clone()));
        assert_eq!(*a.block(4, 7), aux.lambda_plus(1).scale(&w21));
        assert_eq!(*a.block(4, 8), aux.theta_plus(1).scale(&-w31.clone()));
        assert_eq!(*a.block(4, 9), aux.theta_minus(1).scale(&w31));
        assert_eq!(*a.block(4, 10), aux.lambda_plus(1).scale(&w31));
        assert_eq!(*a.block(4, 11), aux.lambda_minus(1).scale(&-w31.clone()));

        // Block row of level 2: eight zeros, then one weighted group.
        for c in 0..8 {
            assert!(a.block(5, c).is_zero(), "leading zeros of block row 2");
        }
        let w32 = rat(1, 640);
        assert_eq!(*a.block(5, 8), aux.theta_plus(2).scale(&-w32.clone()));
        assert_eq!(*a.block(5, 9), aux.theta_minus(2).scale(&w32));
        assert_eq!(*a.block(5, 10), aux.lambda_plus(2).scale(&w32));
        assert_eq!(*a.block(5, 11), aux.lambda_minus(2).scale(&-w32.clone()));

        // Coordinate rows of the x5 group (level 1, coordinate order is the
        // fixed order because j = 2 is even).
        let x5 = &a.x_form()[4];
        let expected_x5: [(i64, i64); 12] = [
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 96),
            (0, 1),
            (0, 1),
            (0, 1),
            (0, 1),
            (1, 384),
            (0, 1),
            (0, 1),
        ];
        for (c, &(n, d)) in expected_x5.iter().enumerate() {
            assert_eq!(x5[c], rat(n, d), "x5 row entry {c}");
        }
        // x9 group (level 2, coordinate order swapped because j = 3 is odd):
        // x9 is the plus-type Theta, carrying -w at the Phi_6 slot.
        let x9 = &a.x_form()[8];
        assert_eq!(x9[8], rat(-1, 640));
        assert!(x9[..8].iter().all(rat_is_zero));
        assert!(rat_is_zero(&x9[9]) && rat_is_zero(&x9[10]) && rat_is_zero(&x9[11]));
    }

    #[test]
    fn scalar_form_shape() {
        let (a, _) = fixture(1);
        assert_eq!(a.scalar_form().len(), 4);
        let (a, _) = fixture(3);
        // 4 top rows + 3 rows (level 1) + 4 rows (level 2).
        assert_eq!(a.scalar_form().len(), 11);
        assert!(a.scalar_form().iter().all(|r| r.len() == 12));
        let (a, _) = fixture(24);
        assert_eq!(a.scalar_form().len(), 326);
        assert_eq!(a.cols(), 96);
    }

    #[test]
    fn block_rows_start_with_zero_groups() {
        let (a, _) = fixture(7);
        for nu in 1..7 {
            for c in 0..4 * nu {
                assert!(a.block(3 + nu, c).is_zero(), "zeros before group {nu}");
            }
            // The first nonzero group is exactly at the block s = nu + 1.
            assert!(!a.block(3 + nu, 4 * nu).is_zero());
        }
    }

    #[test]
    fn assemble_rejects_shallow_aux() {
        let aux = build_aux(&build_laurent_table(1));
        let trig = build_trig_table(3);
        let wt = weights(4);
        match assemble(4, &aux, &wt, &trig) {
            Err(Error::InsufficientAuxDepth { needed: 3, have: 1 }) => {}
            other => panic!("expected a depth error, got {other:?}"),
        }
    }

    #[test]
    fn quasi_periodicity_holds_for_small_depths() {
        let (a, _) = fixture(4);
        assert!(quasi_periodicity_check(&a, 1, 1).unwrap());
        assert!(quasi_periodicity_check(&a, 1, 2).unwrap());
        assert!(quasi_periodicity_check(&a, 2, 1).unwrap());
        assert!(matches!(
            quasi_periodicity_check(&a, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            quasi_periodicity_check(&a, 1, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn quasi_periodic_ratio_is_the_weight_quotient() {
        // The permuted scalar tuples differ by exactly w(3,1)/w(2,1) in
        // magnitude; verify the decomposition directly.
        let (a, _) = fixture(3);
        let refs = a.refs(1);
        let base: Vec<Rat> = (0..4)
            .map(|c| {
                refs.iter()
                    .find_map(|r| scalar_multiple_of(a.block(4, 4 + c), r))
                    .unwrap()
            })
            .collect();
        let target: Vec<Rat> = (0..4)
            .map(|c| {
                refs.iter()
                    .find_map(|r| scalar_multiple_of(a.block(4, 8 + c), r))
                    .unwrap()
            })
            .collect();
        let wt = weights(3);
        let expected = Rat::from(&Rat::from(wt.w(3, 1)) / &Rat::from(wt.w(2, 1)));
        for c in 0..4 {
            let ratio = Rat::from(&target[c] / &base[c]);
            assert_eq!(ratio.clone().abs(), expected.clone().abs(), "slot {c}");
        }
    }

    #[test]
    fn coordinate_frame_labels() {
        let frame = CoordinateFrame::new(3);
        assert_eq!(frame.label(1), "1");
        assert_eq!(frame.label(2), "(2K/π)²");
        assert_eq!(frame.label(5), "(2K/π)⁴·Θ₁⁻");
        assert_eq!(frame.label(8), "(2K/π)⁴·Λ₁⁺");
        assert_eq!(frame.label(9), "(2K/π)⁶·Θ₂⁺");
        assert_eq!(frame.label(12), "(2K/π)⁶·Λ₂⁻");
        assert_eq!(frame.labels().len(), 12);
    }

    #[test]
    fn permutation_table_is_complete() {
        let p = permutations4();
        assert_eq!(p.len(), 24);
        let mut sorted = p.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 24);
    }
}
