//! Arbitrary-precision numerical certification of the symbolic results.
//!
//! This module sums the actual reciprocal power series for a concrete
//! recurrence sequence (Fibonacci/Lucas by default, or any real `β` with
//! `0 < |β| < 1`), evaluates the closed forms through complete elliptic
//! integrals derived from the nome `q = β²`, and checks that every relation
//! emitted by the exact linear algebra has a residual compatible with zero.
//!
//! Everything here is *certified* numerics rather than heuristics: series
//! truncations carry explicit geometric tail bounds computed with upward
//! directed rounding, and every elliptic context validates itself through
//! the nome round trip.
//!
//! # Example
//!
//! ```
//! use rug::Float;
//! use rzr::kernel_solver::relation_space;
//! use rzr::numeric_verify::{
//!     relation_residual, sum_series, PowerSumKind, SequenceSpec,
//! };
//!
//! let spec = SequenceSpec::Fibonacci;
//!
//! // 5·Φ₂ = Σ 1/F_n² = 2.42632075…, certified to 30 digits.
//! let phi2 = sum_series(&spec, 1, PowerSumKind::Phi, 30).unwrap();
//! let prec = phi2.value.prec();
//! let zeta_f2 = Float::with_val(prec, &phi2.value * 5u32);
//! let golden = Float::with_val(prec, Float::parse("2.426320751167241187741569412927").unwrap());
//! let err = Float::with_val(prec, &zeta_f2 - &golden);
//! assert!(err.abs() < 1e-28);
//! assert!(phi2.tail_bound < 1e-30);
//!
//! // The depth-1 relation −2Φ₂ + Φ₂* + Ψ₂* vanishes numerically.
//! let basis = relation_space(1).unwrap();
//! let residual = relation_residual(&basis.vectors[0], &spec, 30).unwrap();
//! assert!(residual < 1e-25);
//! ```

pub mod closed_form;
pub mod complex;
pub mod elliptic;

pub use closed_form::{closed_form_battery, eval_closed_form, x_values, ClosedFormSample};
pub use complex::CFloat;
pub use elliptic::{
    check_duplication, duplication_battery, jacobi_fn, jacobi_fn_with_threshold,
    nome_to_elliptic, quarter_periods, DuplicationSample, EllipticContext, JacobiValues,
    DEFAULT_POLE_THRESHOLD_LOG10,
};

use rug::float::Round;
use rug::ops::{AssignRound, Pow};
use rug::{Float, Integer as Int, Rational as Rat};

use crate::kernel_solver::RelationVector;
use crate::qalgebra::{rat, rat_int};
use crate::{Error, Result};

/// Which of the four reciprocal power sums is meant.
///
/// For a fixed order `s ≥ 1` the four series are, with `U_n` and `V_n` the
/// two solutions of the recurrence picked out by the sequence spec:
///
/// * `Phi`      — `(α−β)^{−2s} Σ_{n≥1} 1/U_n^{2s}`
/// * `PhiStar`  — `(α−β)^{−2s} Σ_{n≥1} (−1)^{n+1}/U_n^{2s}`
/// * `Psi`      — `Σ_{n≥1} 1/V_n^{2s}`
/// * `PsiStar`  — `Σ_{n≥1} (−1)^{n+1}/V_n^{2s}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerSumKind {
    /// Plain sum over `U_n`, with the discriminant prefactor.
    Phi,
    /// Alternating sum over `U_n`, with the discriminant prefactor.
    PhiStar,
    /// Plain sum over `V_n`.
    Psi,
    /// Alternating sum over `V_n`.
    PsiStar,
}

impl PowerSumKind {
    /// The four kinds in slot order (the order used by matrix columns).
    pub const ALL: [PowerSumKind; 4] = [
        PowerSumKind::Phi,
        PowerSumKind::PhiStar,
        PowerSumKind::Psi,
        PowerSumKind::PsiStar,
    ];

    /// Slot offset of this kind inside a 4-column group.
    pub fn index(self) -> usize {
        match self {
            PowerSumKind::Phi => 0,
            PowerSumKind::PhiStar => 1,
            PowerSumKind::Psi => 2,
            PowerSumKind::PsiStar => 3,
        }
    }

    /// Stable ASCII label, suitable for JSON keys.
    pub fn label(self) -> &'static str {
        match self {
            PowerSumKind::Phi => "Phi",
            PowerSumKind::PhiStar => "PhiStar",
            PowerSumKind::Psi => "Psi",
            PowerSumKind::PsiStar => "PsiStar",
        }
    }

    /// Display symbol with the order attached, e.g. `Φ₄*`.
    pub fn symbol(self, s: usize) -> String {
        let sub = crate::kernel_solver::subscript(2 * s as u64);
        match self {
            PowerSumKind::Phi => format!("Φ{sub}"),
            PowerSumKind::PhiStar => format!("Φ{sub}*"),
            PowerSumKind::Psi => format!("Ψ{sub}"),
            PowerSumKind::PsiStar => format!("Ψ{sub}*"),
        }
    }

    /// True when the series runs over the `U_n` (difference) solution.
    pub fn uses_u(self) -> bool {
        matches!(self, PowerSumKind::Phi | PowerSumKind::PhiStar)
    }

    /// True for the alternating (starred) variants.
    pub fn alternating(self) -> bool {
        matches!(self, PowerSumKind::PhiStar | PowerSumKind::PsiStar)
    }
}

/// A concrete second-order recurrence sequence, described by the root `β`
/// of smaller modulus; the companion root is `α = −1/β`, so the recurrence
/// is `X_{n+2} = (β − 1/β) X_{n+1} + X_n`.
#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    /// `β = (1 − √5)/2`: the `U_n` are the Fibonacci numbers and the `V_n`
    /// the Lucas numbers.
    Fibonacci,
    /// An explicit rational `β` with `0 < |β| < 1`.
    Beta(Rat),
}

impl SequenceSpec {
    /// Checks the root constraint `0 < |β| < 1`.
    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceSpec::Fibonacci => Ok(()),
            SequenceSpec::Beta(b) => {
                let abs = Rat::from(b.abs_ref());
                if b.cmp0() == std::cmp::Ordering::Equal || abs >= 1u32 {
                    Err(Error::BetaOutOfRange(b.to_string()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The recurrence coefficient `P = α + β = β − 1/β`, exact.
    ///
    /// For the Fibonacci root this is `1`; for rational `β = p/q` it is the
    /// rational `(p² − q²)/(pq)`.
    pub fn recurrence_coefficient(&self) -> Rat {
        match self {
            SequenceSpec::Fibonacci => rat_int(1),
            SequenceSpec::Beta(b) => {
                let inv = Rat::from(b.recip_ref());
                Rat::from(b - &inv)
            }
        }
    }

    /// The squared root difference `(α − β)² = P² + 4`, exact.
    pub fn discriminant(&self) -> Rat {
        let p = self.recurrence_coefficient();
        Rat::from(&p * &p) + rat_int(4)
    }

    /// An upper bound on `|β|` at the given precision (rounded towards
    /// `+∞`), used for certified tail bounds.
    pub fn beta_abs_upper(&self, prec: u32) -> Float {
        match self {
            SequenceSpec::Fibonacci => {
                // |β| = (√5 − 1)/2, rounded up.
                let mut s5 = Float::new(prec);
                s5.assign_round(Float::sqrt_u(5), Round::Up);
                let mut num = Float::new(prec);
                num.assign_round(&s5 - 1u32, Round::Up);
                let mut out = Float::new(prec);
                out.assign_round(&num / 2u32, Round::Up);
                out
            }
            SequenceSpec::Beta(b) => {
                let abs = Rat::from(b.abs_ref());
                let (f, _) = Float::with_val_round(prec, &abs, Round::Up);
                f
            }
        }
    }

    /// Stable name for reports: `fibonacci` or `beta=<rational>`.
    pub fn name(&self) -> String {
        match self {
            SequenceSpec::Fibonacci => "fibonacci".to_string(),
            SequenceSpec::Beta(b) => format!("beta={}", b),
        }
    }

    /// The nome `q = β²` at the given precision (to nearest).
    ///
    /// For the Fibonacci root this is `(3 − √5)/2 ≈ 0.3819660…`; for a
    /// rational root the square is exact before the single rounding.
    pub fn nome(&self, prec: u32) -> Float {
        match self {
            SequenceSpec::Fibonacci => {
                let s5 = Float::with_val(prec, 5).sqrt();
                (Float::with_val(prec, 3) - s5) / 2u32
            }
            SequenceSpec::Beta(b) => {
                let sq = Rat::from(b * b);
                Float::with_val(prec, &sq)
            }
        }
    }
}

/// One summed series value together with its certification data.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    /// The truncated sum (including any prefactor), at working precision.
    pub value: Float,
    /// Number of terms actually summed.
    pub terms_used: usize,
    /// Certified upper bound on |true value − `value`| (geometric tail plus
    /// accumulated rounding), computed with upward rounding throughout.
    pub tail_bound: Float,
}

/// Guard digits for a computation that sums `terms` terms: ten plus the
/// decimal length of the term count.  The environment variable
/// `RZR_GUARD_DIGITS` overrides the computed value when set to an integer.
pub fn guard_digits(terms: usize) -> usize {
    if let Ok(raw) = std::env::var("RZR_GUARD_DIGITS") {
        if let Ok(v) = raw.trim().parse::<usize>() {
            return v;
        }
    }
    10 + ((terms.max(1)) as f64).log10().ceil() as usize
}

/// Working precision in bits for a target of `digits` decimal digits with
/// `guard` guard digits.
pub(crate) fn work_prec(digits: usize, guard: usize) -> u32 {
    (((digits + guard + 15) as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

fn round_dir<T>(prec: u32, src: T, dir: Round) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    let mut out = Float::new(prec);
    out.assign_round(src, dir);
    out
}

fn mul_up(a: &Float, b: &Float) -> Float {
    round_dir(a.prec(), a * b, Round::Up)
}

fn mul_down(a: &Float, b: &Float) -> Float {
    round_dir(a.prec(), a * b, Round::Down)
}

fn div_up(a: &Float, b: &Float) -> Float {
    round_dir(a.prec(), a / b, Round::Up)
}

fn sub_down_from_one(b: &Float) -> Float {
    round_dir(b.prec(), 1u32 - b, Round::Down)
}

/// `base^e` rounded up, for positive `base`.
fn pow_up(base: &Float, e: u64) -> Float {
    let prec = base.prec();
    let mut acc = Float::with_val(prec, 1);
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_up(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul_up(&sq, &sq);
        }
    }
    acc
}

/// `base^e` rounded down, for positive `base`.
fn pow_down(base: &Float, e: u64) -> Float {
    let prec = base.prec();
    let mut acc = Float::with_val(prec, 1);
    let mut sq = base.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_down(&acc, &sq);
        }
        e >>= 1;
        if e > 0 {
            sq = mul_down(&sq, &sq);
        }
    }
    acc
}

/// Generates `U₀..U_{n_max}` and `V₀..V_{n_max}` by the exact recurrence
/// `X_{n+2} = P·X_{n+1} + X_n` with `P = α + β`.
///
/// The returned vectors have length `n_max + 1` and include the seed values
/// `U₀ = 0`, `U₁ = 1`, `V₀ = 2`, `V₁ = P`.  All arithmetic is exact; when
/// `P` is an integer (the Fibonacci/Lucas case) every term is an integer.
pub fn gen_terms(spec: &SequenceSpec, n_max: usize) -> Result<(Vec<Rat>, Vec<Rat>)> {
    spec.validate()?;
    assert!(n_max >= 1, "need at least one term");
    let p = spec.recurrence_coefficient();
    let mut u: Vec<Rat> = Vec::with_capacity(n_max + 1);
    let mut v: Vec<Rat> = Vec::with_capacity(n_max + 1);
    u.push(rat_int(0));
    u.push(rat_int(1));
    v.push(rat_int(2));
    v.push(p.clone());
    for n in 2..=n_max {
        let un = Rat::from(&p * &u[n - 1]) + &u[n - 2];
        let vn = Rat::from(&p * &v[n - 1]) + &v[n - 2];
        u.push(un);
        v.push(vn);
    }
    for n in 1..=n_max {
        if u[n].cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::SeriesUndefined { name: "U", index: n });
        }
        if v[n].cmp0() == std::cmp::Ordering::Equal {
            return Err(Error::SeriesUndefined { name: "V", index: n });
        }
    }
    Ok((u, v))
}

/// Certified upper bound on the tail `Σ_{n>N}` of any of the four series,
/// divided through by the prefactor where one applies: for every kind the
/// tail is at most `|β|^{2s(N+1)} / ((1−β²)^{2s} (1−|β|^{2s}))`.
///
/// All operations round upward (downward for the denominators), so the
/// result is a true bound.
fn tail_bound_after(spec: &SequenceSpec, s: usize, n: usize, prec: u32) -> Float {
    let bu = spec.beta_abs_upper(prec);
    let b2u = mul_up(&bu, &bu);
    let one_minus_b2 = sub_down_from_one(&b2u);
    assert!(
        one_minus_b2.cmp0() == Some(std::cmp::Ordering::Greater),
        "β too close to the unit circle for this precision"
    );
    let bpow2s = pow_up(&bu, 2 * s as u64);
    let one_minus_bpow = sub_down_from_one(&bpow2s);
    assert!(one_minus_bpow.cmp0() == Some(std::cmp::Ordering::Greater));
    let numer = pow_up(&bu, 2 * (s as u64) * (n as u64 + 1));
    let denom = mul_down(&pow_down(&one_minus_b2, 2 * s as u64), &one_minus_bpow);
    div_up(&numer, &denom)
}

/// Sums one reciprocal power series to a target of `digits` decimal digits,
/// with a certified tail bound.
///
/// The truncation point is chosen from the geometric decay `|terms| ≤
/// C·|β|^{2sn}` and then *verified*: the returned
/// [`SeriesValue::tail_bound`] (geometric tail plus a bound on accumulated
/// rounding) is guaranteed below `10^{−digits−g}` where `g` is the guard
/// count, the truncation being extended automatically if the first estimate
/// falls short.
pub fn sum_series(
    spec: &SequenceSpec,
    s: usize,
    kind: PowerSumKind,
    digits: usize,
) -> Result<SeriesValue> {
    spec.validate()?;
    assert!(s >= 1, "series order must be at least 1");
    assert!(digits >= 10, "need at least ten digits");

    // First estimate of the truncation point, with a wide digit margin that
    // the post-hoc certification then confirms.
    let beta_f = spec.beta_abs_upper(64).to_f64();
    let per_term = 2.0 * (s as f64) * (-beta_f.ln());
    let mut n_terms =
        (((digits + 60) as f64) * std::f64::consts::LN_10 / per_term).ceil() as usize + 8;

    let guard = guard_digits(n_terms);
    let prec = work_prec(digits, guard);
    let tol = Float::with_val(prec, -((digits + guard) as i32)).exp10();

    for _attempt in 0..6 {
        let (u, v) = gen_terms(spec, n_terms)?;
        let terms = if kind.uses_u() { &u } else { &v };

        let mut sum = Float::new(prec);
        for n in 1..=n_terms {
            let power = Rat::from((&terms[n]).pow(2 * s as u32));
            let term = Rat::from(power.recip_ref());
            let tf = Float::with_val(prec, &term);
            if kind.alternating() && n % 2 == 0 {
                sum -= &tf;
            } else {
                sum += &tf;
            }
        }
        if kind.uses_u() {
            let disc_pow = Rat::from(self_pow(&spec.discriminant(), s as u32));
            let prefactor = Rat::from(disc_pow.recip_ref());
            sum *= Float::with_val(prec, &prefactor);
        }

        // Geometric tail plus a crude but safe bound on the accumulated
        // rounding error: each of the ~2N floating operations contributes at
        // most one ulp of a quantity no larger than 3.
        let tail = tail_bound_after(spec, s, n_terms, prec);
        let ulp = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
        let rounding = mul_up(
            &Float::with_val(prec, 8 * (n_terms as u64 + 2)),
            &ulp,
        );
        let mut total = Float::new(prec);
        total.assign_round(&tail + &rounding, Round::Up);

        if total < tol {
            return Ok(SeriesValue {
                value: sum,
                terms_used: n_terms,
                tail_bound: total,
            });
        }
        n_terms *= 2;
    }
    unreachable!("tail target not reached — the truncation estimate is broken");
}

fn self_pow(r: &Rat, e: u32) -> Rat {
    Rat::from(r.pow(e))
}

/// All `4m` power sums for orders `s = 1..m`, in slot order
/// `Φ₂ₛ, Φ₂ₛ*, Ψ₂ₛ, Ψ₂ₛ*` — the same order the relation matrix uses for its
/// columns, so a relation vector dots directly against this list.
pub fn power_sums(spec: &SequenceSpec, m: usize, digits: usize) -> Result<Vec<SeriesValue>> {
    assert!(m >= 1);
    let mut out = Vec::with_capacity(4 * m);
    for s in 1..=m {
        for kind in PowerSumKind::ALL {
            out.push(sum_series(spec, s, kind, digits)?);
        }
    }
    Ok(out)
}

/// Residual `|Σᵢ tᵢ · (i-th power sum)|` of one relation vector against
/// precomputed sums (see [`power_sums`] for the slot order).
pub fn relation_residual_with_sums(v: &RelationVector, sums: &[SeriesValue]) -> Float {
    assert_eq!(sums.len(), 4 * v.m, "sums must cover all slots of the vector");
    let prec = sums[0].value.prec();
    let mut acc = Float::new(prec);
    for (t, sv) in v.t.iter().zip(sums) {
        acc += Float::with_val(prec, t) * &sv.value;
    }
    acc.abs()
}

/// Convenience wrapper: sums the series for `spec` at `digits` digits and
/// returns the residual of `v` against them.
pub fn relation_residual(
    v: &RelationVector,
    spec: &SequenceSpec,
    digits: usize,
) -> Result<Float> {
    let sums = power_sums(spec, v.m, digits)?;
    Ok(relation_residual_with_sums(v, &sums))
}

/// Residual of the nonlinear eighth-power identity for the Fibonacci
/// sequence: with `x, y, z, w` the sums of `1/F_n^{2s}` for `s = 1..4`,
///
/// `w = 15y/14 + (256x⁶ − 3456x⁵ + 2880x⁴ + 1792x³z − 11100x³ + 20160x²z −
/// 10125x² + 7560xz + 3136z² − 1050z) / (378(4x+5)²)`.
///
/// Returns `|w − RHS|` evaluated with 20 extra internal digits, so the
/// residual scales as `10^{−digits−…}` when the identity is true.
pub fn check_fib8(digits: usize) -> Result<Float> {
    assert!(digits >= 30, "need at least thirty digits");
    let internal = digits + 20;
    let spec = SequenceSpec::Fibonacci;

    // Σ 1/F_n^{2s} = 5^s · Φ₂ₛ.
    let mut raw = Vec::with_capacity(4);
    let mut prec = 0;
    for s in 1..=4usize {
        let sv = sum_series(&spec, s, PowerSumKind::Phi, internal)?;
        prec = sv.value.prec();
        let five_pow = Rat::from(Int::from(Int::u_pow_u(5, s as u32)));
        raw.push(Float::with_val(prec, &sv.value * Float::with_val(prec, &five_pow)));
    }
    let (x, y, z, w) = (&raw[0], &raw[1], &raw[2], &raw[3]);

    let f = |r: Rat| Float::with_val(prec, &r);
    let x2 = Float::with_val(prec, x.square_ref());
    let x3 = Float::with_val(prec, &x2 * x);
    let x4 = Float::with_val(prec, &x3 * x);
    let x5 = Float::with_val(prec, &x4 * x);
    let x6 = Float::with_val(prec, &x5 * x);

    let mut poly = Float::new(prec);
    poly += f(rat_int(256)) * &x6;
    poly += f(rat_int(-3456)) * &x5;
    poly += f(rat_int(2880)) * &x4;
    poly += f(rat_int(1792)) * Float::with_val(prec, &x3 * z);
    poly += f(rat_int(-11100)) * &x3;
    poly += f(rat_int(20160)) * Float::with_val(prec, &x2 * z);
    poly += f(rat_int(-10125)) * &x2;
    poly += f(rat_int(7560)) * Float::with_val(prec, x * z);
    poly += f(rat_int(3136)) * Float::with_val(prec, z.square_ref());
    poly += f(rat_int(-1050)) * z;

    let four_x_plus_5 = Float::with_val(prec, x * 4u32) + 5u32;
    let denom = Float::with_val(prec, four_x_plus_5.square_ref()) * 378u32;
    let rhs = f(rat(15, 14)) * y + poly / denom;

    Ok(Float::with_val(prec, w - &rhs).abs())
}
