//! Irreducible representations of the unified algebra.
//!
//! On a weight basis `|n>`, `n` in a window of the integers,
//! `a+ a |n> = lambda_n |n>`, `N |n> = (kappa0 + n) |n>` and
//! `K |n> = (-1)^n B/(2 nu) |n>`. The weights obey
//!
//! ```text
//! lambda_{n+1} - q^gamma lambda_n = (1 + (-1)^n B) q^{alpha (n + kappa0) + beta}
//! ```
//!
//! and a module is unitary when every realized `lambda_n` is nonnegative
//! and the window ends exactly where `lambda` vanishes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::catalog::{divided_alternating_difference, divided_power_difference, UnifiedParams};
use crate::error::{Error, Result};

/// Relative tolerance used to decide that a weight vanishes.
pub const ZERO_TOL: f64 = 1e-10;

pub const DEFAULT_SCAN_DEPTH: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepParams {
    pub unified: UnifiedParams,
    pub lambda0: f64,
    pub kappa0: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

impl RepParams {
    pub fn new(unified: UnifiedParams, lambda0: f64, kappa0: f64, b: f64) -> Result<Self> {
        if !(lambda0.is_finite() && kappa0.is_finite() && b.is_finite()) {
            return Err(Error::Domain("lambda0, kappa0 and B must be finite".into()));
        }
        if unified.nu == 0.0 && b != 0.0 {
            return Err(Error::InconsistentInput(format!(
                "B = 2 nu omega exp(-i pi kappa0) must vanish when nu = 0, got B = {b}"
            )));
        }
        Ok(RepParams {
            unified,
            lambda0,
            kappa0,
            b,
        })
    }

    /// `q^{alpha kappa0 + beta}`
    fn source_scale(&self) -> f64 {
        let p = &self.unified;
        p.q.value().powf(p.alpha * self.kappa0 + p.beta)
    }

    /// Eigenvalue of `K` on `|0>`: `B/(2 nu)`, or `1` when `nu = 0`.
    pub fn k0(&self) -> f64 {
        if self.unified.nu == 0.0 {
            1.0
        } else {
            self.b / (2.0 * self.unified.nu)
        }
    }

    /// The same module with `|shift>` relabelled as `|0>`.
    pub fn renumbered(&self, shift: i64) -> RepParams {
        let sign = if shift.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        RepParams {
            unified: self.unified,
            lambda0: lambda_closed(self, shift),
            kappa0: self.kappa0 + shift as f64,
            b: sign * self.b,
        }
    }
}

fn parity_sign(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Closed form of `lambda_n`, valid for every integer `n`.
pub fn lambda_closed(params: &RepParams, n: i64) -> f64 {
    let (x, y) = params.unified.bases();
    let c = params.source_scale();
    let head = params.lambda0 * x.powi(n as i32);
    if params.unified.is_equal_branch() {
        let odd = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
        head + c * x.powi(n as i32 - 1) * (n as f64 + params.b * odd)
    } else {
        head + c * (divided_power_difference(x, y, n) + params.b * divided_alternating_difference(x, y, n))
    }
}

/// Magnitude of the terms summed in [`lambda_closed`]; rounding errors and
/// the zero test are measured against it.
pub fn lambda_scale(params: &RepParams, n: i64) -> f64 {
    let (x, y) = params.unified.bases();
    let c = params.source_scale();
    let xn = x.powi(n as i32);
    let head = params.lambda0.abs() * xn;
    if params.unified.is_equal_branch() {
        head + c * x.powi(n as i32 - 1) * ((n as f64).abs() + params.b.abs())
    } else {
        let yn = y.powi(n as i32);
        head + c * (divided_power_difference(x, y, n).abs() + params.b.abs() * (xn + yn) / (x + y))
    }
}

/// Weights `lambda_n` on a window `[n_lo, n_hi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaSeq {
    pub n_lo: i64,
    pub values: Vec<f64>,
}

impl LambdaSeq {
    pub fn n_hi(&self) -> i64 {
        self.n_lo + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<f64> {
        if n < self.n_lo {
            return None;
        }
        self.values.get((n - self.n_lo) as usize).copied()
    }

    /// `mu_n = lambda_{n+1}`, the eigenvalue of `a a+` on `|n>`.
    pub fn mu(&self, n: i64) -> Option<f64> {
        self.get(n + 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (self.n_lo + i as i64, v))
    }
}

/// `lambda_n` on `[n_lo, n_hi]`: forward from `lambda_0` for positive `n`,
/// backward `lambda_n = q^{-gamma}(lambda_{n+1} - (1 + (-1)^n B) q^{alpha(n+kappa0)+beta})`
/// for negative `n`.
pub fn lambda_recurrence(params: &RepParams, n_lo: i64, n_hi: i64) -> Result<LambdaSeq> {
    if n_lo > 0 || n_hi < 0 {
        return Err(Error::Domain(format!("window [{n_lo}, {n_hi}] must contain 0")));
    }
    let p = &params.unified;
    let q = p.q.value();
    let x = q.powf(p.gamma);
    let source = |n: i64| (1.0 + parity_sign(n) * params.b) * q.powf(p.alpha * (n as f64 + params.kappa0) + p.beta);

    let mut below = Vec::with_capacity((-n_lo) as usize);
    let mut lam = params.lambda0;
    for n in (n_lo..0).rev() {
        lam = (lam - source(n)) / x;
        below.push(lam);
    }
    below.reverse();

    let mut values = below;
    values.push(params.lambda0);
    let mut lam = params.lambda0;
    for n in 0..n_hi {
        lam = x * lam + source(n);
        values.push(lam);
    }
    Ok(LambdaSeq { n_lo, values })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RepCase {
    LowestWeightI,
    LowestWeightIi,
    OneDim,
    HighestWeightIii,
    TwoDimIii,
    BilateralIv,
    TwoDimIv,
    /// A finite window of three or more weights; not among the listed unireps.
    Finite,
}

impl RepCase {
    pub fn is_finite(self) -> bool {
        matches!(
            self,
            RepCase::OneDim | RepCase::TwoDimIii | RepCase::TwoDimIv | RepCase::Finite
        )
    }
}

/// Window of realized basis labels; `None` is unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Window {
    pub fn dim(&self) -> Option<usize> {
        match (self.lo, self.hi) {
            (Some(lo), Some(hi)) => Some((hi - lo + 1) as usize),
            _ => None,
        }
    }
}

/// Parameter regime read off from `(q, alpha, gamma, B)` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `alpha = gamma`
    I,
    /// `q^gamma > q^alpha`
    Ii,
    /// `q^gamma < q^alpha` with exactly one of `1/(q^gamma - q^alpha) +- B/(q^gamma + q^alpha)` positive
    Iii,
    /// `q^gamma < q^alpha` with both nonpositive
    Iv,
    /// `|B (q^gamma - q^alpha)|` equals `q^gamma + q^alpha` to rounding
    AmbiguousBoundary,
}

pub fn regime(params: &RepParams) -> Regime {
    if params.unified.is_equal_branch() {
        return Regime::I;
    }
    let (x, y) = params.unified.bases();
    if x > y {
        return Regime::Ii;
    }
    let edge = x + y;
    let lhs = (params.b * (x - y)).abs();
    if (lhs - edge).abs() <= 1e-9 * edge {
        Regime::AmbiguousBoundary
    } else if lhs > edge {
        Regime::Iii
    } else {
        Regime::Iv
    }
}

fn regime_consistent(case: RepCase, regime: Regime) -> bool {
    use Regime::*;
    match case {
        RepCase::LowestWeightI => regime == I,
        RepCase::LowestWeightIi => matches!(regime, Ii | Iv),
        RepCase::OneDim => matches!(regime, Ii | Iii | Iv | AmbiguousBoundary),
        RepCase::HighestWeightIii => matches!(regime, Iii | Iv),
        RepCase::TwoDimIii => matches!(regime, Iii | AmbiguousBoundary),
        RepCase::BilateralIv => regime == Iv,
        RepCase::TwoDimIv => matches!(regime, Iv | AmbiguousBoundary),
        RepCase::Finite => false,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub regime: Regime,
    pub regime_agrees: bool,
    pub scan_depth: i64,
    /// Largest `|recurrence - closed form| / scale` over the scan.
    pub closed_vs_recurrence: f64,
    /// Scanned `n` where the sign of `lambda_n` contradicts the parity
    /// inequality `A >= (q^alpha/q^gamma)^n P_{(-1)^n}`.
    pub certificate_mismatches: Vec<i64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepClassification {
    pub case: RepCase,
    pub window: Window,
    pub params: RepParams,
    pub lambda: LambdaSeq,
    pub diagnostics: Diagnostics,
}

impl RepClassification {
    /// Parameters relabelled so that the lowest realized vector is `|0>`;
    /// `None` when there is no lowest vector.
    pub fn lowest_weight_params(&self) -> Option<RepParams> {
        self.window.lo.map(|lo| self.params.renumbered(lo))
    }
}

/// Sign of `A - (y/x)^n P_{(-1)^n}` from the parity inequalities, `alpha != gamma` only.
fn certificate_sign(params: &RepParams, n: i64) -> f64 {
    let (x, y) = params.unified.bases();
    let c = params.source_scale();
    let p_plus = 1.0 / (x - y) + params.b / (x + y);
    let p_n = 1.0 / (x - y) + parity_sign(n) * params.b / (x + y);
    let a = params.lambda0 / c + p_plus;
    // compare in the form x^n A vs y^n P to avoid overflow of the ratio
    x.powi(n as i32) * a - y.powi(n as i32) * p_n
}

/// Classify the module generated from `|0>` by a sign scan of `lambda_n`
/// over `[-scan_depth, scan_depth]`.
pub fn classify(params: &RepParams, scan_depth: i64) -> Result<RepClassification> {
    if scan_depth < 10 {
        return Err(Error::Domain(format!("scan depth must be at least 10, got {scan_depth}")));
    }
    if params.lambda0 < 0.0 {
        return Err(Error::InconsistentInput(format!(
            "lambda0 = {} is negative but a+ a is a nonnegative operator",
            params.lambda0
        )));
    }
    let seq = lambda_recurrence(params, -scan_depth, scan_depth)?;
    let is_zero = |n: i64, v: f64| v.abs() <= ZERO_TOL * lambda_scale(params, n);
    let nonpositive = |n: i64, v: f64| v <= 0.0 || is_zero(n, v);

    let mut closed_vs_recurrence: f64 = 0.0;
    let mut mismatches = Vec::new();
    for (n, v) in seq.iter() {
        if v.is_nan() {
            return Err(Error::Domain(format!("lambda_{n} evaluated to NaN")));
        }
        let scale = lambda_scale(params, n);
        if scale.is_finite() && scale > 0.0 {
            closed_vs_recurrence = closed_vs_recurrence.max((v - lambda_closed(params, n)).abs() / scale);
        }
        if !params.unified.is_equal_branch() && !is_zero(n, v) {
            let cert = certificate_sign(params, n);
            if cert.is_finite() && (cert > 0.0) != (v > 0.0) {
                mismatches.push(n);
            }
        }
    }

    // a|lo> = 0 needs lambda_lo = 0; a+|hi> = 0 needs lambda_{hi+1} = 0
    let lo = (-scan_depth..=0).rev().find(|&n| nonpositive(n, seq.get(n).unwrap()));
    let top = (1..=scan_depth).find(|&n| nonpositive(n, seq.get(n).unwrap()));
    for edge in lo.iter().chain(top.iter()) {
        let v = seq.get(*edge).unwrap();
        if !is_zero(*edge, v) {
            return Err(Error::NegativeLambda { n: *edge, value: v });
        }
    }
    let hi = top.map(|t| t - 1);
    if let (Some(lo), Some(hi)) = (lo, hi) {
        if lo > hi {
            return Err(Error::InconsistentInput(format!(
                "lambda vanishes at both ends of the empty window [{lo}, {hi}]"
            )));
        }
    }
    let window = Window { lo, hi };

    let mut notes = Vec::new();
    let case = match (lo, hi) {
        (Some(lo), None) => {
            if lo != 0 {
                notes.push(format!("lowest weight vector sits at n = {lo}"));
            }
            if params.unified.is_equal_branch() {
                RepCase::LowestWeightI
            } else {
                RepCase::LowestWeightIi
            }
        }
        (None, Some(hi)) => {
            if hi != 0 {
                notes.push(format!("highest weight vector sits at n = {hi}"));
            }
            RepCase::HighestWeightIii
        }
        (None, None) => RepCase::BilateralIv,
        (Some(lo), Some(hi)) => match hi - lo + 1 {
            1 => {
                let b_lo = parity_sign(lo) * params.b;
                if (b_lo + 1.0).abs() > 1e-12 {
                    notes.push(format!("one-dimensional window with renumbered B = {b_lo}"));
                }
                RepCase::OneDim
            }
            2 if hi == 0 => RepCase::TwoDimIii,
            2 => {
                if lo != 0 {
                    notes.push(format!("two-dimensional window starts at n = {lo}"));
                }
                RepCase::TwoDimIv
            }
            d => {
                notes.push(format!("finite window of dimension {d}"));
                RepCase::Finite
            }
        },
    };

    let reg = regime(params);
    let agrees = regime_consistent(case, reg);
    if !agrees {
        notes.push(format!("scan result {case:?} disagrees with regime {reg:?}"));
    }
    if !mismatches.is_empty() {
        notes.push(format!("{} parity-inequality mismatches", mismatches.len()));
    }

    Ok(RepClassification {
        case,
        window,
        params: *params,
        lambda: seq,
        diagnostics: Diagnostics {
            regime: reg,
            regime_agrees: agrees,
            scan_depth,
            closed_vs_recurrence,
            certificate_mismatches: mismatches,
            notes,
        },
    })
}

/// `D(N)` in `C3 = q^{-gamma N}(D(N) + nu E(N) K - a+ a)`, at a real eigenvalue of `N`.
pub fn casimir_d(params: &UnifiedParams, n_eig: f64) -> f64 {
    let (x, y) = params.bases();
    let qb = params.q.value().powf(params.beta);
    if params.is_equal_branch() {
        qb * x.powf(n_eig - 1.0) * (n_eig + params.nu)
    } else {
        let xn = x.powf(n_eig);
        let yn = y.powf(n_eig);
        qb * ((xn - yn) / (x - y) + 2.0 * params.nu * xn / (x + y))
    }
}

/// `E(N) = -2 q^{alpha N + beta} / (q^gamma + q^alpha)`.
pub fn casimir_e(params: &UnifiedParams, n_eig: f64) -> f64 {
    let (x, y) = params.bases();
    -2.0 * params.q.value().powf(params.alpha * n_eig + params.beta) / (x + y)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CasimirValues {
    /// `exp(2 pi i N)`
    pub c1: Complex64,
    /// `exp(i pi N) K`
    pub c2: Complex64,
    pub c3: f64,
}

/// Scalar values of the three Casimir elements on the module generated from `|0>`.
pub fn casimir_values(params: &RepParams) -> CasimirValues {
    let u = &params.unified;
    let k0 = params.k0();
    let c1 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * params.kappa0);
    let c2 = Complex64::from_polar(k0, std::f64::consts::PI * params.kappa0);
    let x = u.q.value().powf(u.gamma);
    let n0 = params.kappa0;
    let c3 = x.powf(-n0) * (casimir_d(u, n0) + u.nu * casimir_e(u, n0) * k0 - params.lambda0);
    CasimirValues { c1, c2, c3 }
}
