//! Structure functions of the deformed oscillators.
//!
//! The unified algebra is
//!
//! ```text
//! a a+ - q^gamma a+ a = (1 + 2 nu K) q^(alpha N + beta)
//! ```
//!
//! and on its lowest-weight module `a+ a |n> = f(n) |n>` with `f(0) = 0`.
//! Every named deformation in [`DeformationKind`] except the two-parameter
//! family is a point of this five-parameter space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcalc::{q_number, QBase};

/// Relative gap `|q^alpha - q^gamma| / (q^alpha + q^gamma)` below which the
/// `alpha = gamma` formula is used.
pub const EQUAL_BRANCH_THRESHOLD: f64 = 1e-12;

/// Inside this relative gap the divided difference `(x^n - y^n)/(x - y)` is
/// summed as a finite geometric series instead of being divided out.
const GUARD_BAND: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnifiedParams {
    pub q: QBase,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub nu: f64,
}

impl UnifiedParams {
    pub fn new(q: f64, alpha: f64, beta: f64, gamma: f64, nu: f64) -> Result<Self> {
        let q = QBase::new(q)?;
        if ![alpha, beta, gamma, nu].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain("deformation parameters must be finite".into()));
        }
        Ok(UnifiedParams {
            q,
            alpha,
            beta,
            gamma,
            nu,
        })
    }

    /// `q^gamma`, `q^alpha`.
    pub fn bases(&self) -> (f64, f64) {
        let q = self.q.value();
        (q.powf(self.gamma), q.powf(self.alpha))
    }

    /// True when the `alpha = gamma` formulas apply.
    pub fn is_equal_branch(&self) -> bool {
        let (x, y) = self.bases();
        (x - y).abs() < EQUAL_BRANCH_THRESHOLD * (x + y)
    }
}

/// Parameters of the `(p, q; alpha, beta, l)` oscillator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoParamParams {
    pub p: f64,
    pub q: f64,
    pub alpha: f64,
    pub beta: f64,
    pub l: i32,
}

impl TwoParamParams {
    pub fn new(p: f64, q: f64, alpha: f64, beta: f64, l: i32) -> Result<Self> {
        if !(p.is_finite() && p > 0.0 && q.is_finite() && q > 0.0) {
            return Err(Error::Domain("p and q must be positive".into()));
        }
        if alpha == 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain("alpha must be finite and nonzero, beta finite".into()));
        }
        let params = TwoParamParams { p, q, alpha, beta, l };
        let den = params.denominator();
        let scale = p.powi(-l).abs().max(q.powi(l).abs());
        if den.abs() <= 1e-14 * scale {
            return Err(Error::Degenerate(format!(
                "p^-l = q^l = {} makes the structure function singular",
                q.powi(l)
            )));
        }
        Ok(params)
    }

    /// `p^{-l} - q^l`
    pub fn denominator(&self) -> f64 {
        self.p.powi(-self.l) - self.q.powi(self.l)
    }

    /// `l / alpha`, the shift of `N` produced by `a+`.
    pub fn step(&self) -> f64 {
        self.l as f64 / self.alpha
    }
}

/// The catalog of named deformations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DeformationKind {
    /// `a a+ - q a+ a = 1`
    ArikCoon { q: QBase },
    /// `a a+ - q a+ a = q^{-N}`
    BiedenharnMacfarlane { q: QBase },
    /// `a a+ - q a+ a = q^{alpha N + beta}`
    ChungEtAl { q: QBase, alpha: f64, beta: f64 },
    /// `a a+ - q^gamma a+ a = q^{alpha N + beta}`
    Bdy {
        q: QBase,
        alpha: f64,
        beta: f64,
        gamma: f64,
    },
    /// `[a, a+] = 1 + 2 nu K`
    NuModified { nu: f64 },
    /// `a a+ - q a+ a = (1 + 2 nu K) q^{-N}`
    QNu { q: QBase, nu: f64 },
    Unified(UnifiedParams),
    /// `(q; a, b, c; 0)` form: `f(n) = q^{2an+b} (1 - q'^n)/(1 - q')`, `q' = q^{c-1}`.
    Abc { q: QBase, a: f64, b: f64, c: f64 },
    TwoParam(TwoParamParams),
}

impl DeformationKind {
    /// The point of the unified family reproducing this deformation, if any.
    pub fn to_unified(&self) -> Option<UnifiedParams> {
        let u = |q: QBase, alpha, beta, gamma, nu| UnifiedParams {
            q,
            alpha,
            beta,
            gamma,
            nu,
        };
        match *self {
            DeformationKind::ArikCoon { q } => Some(u(q, 0.0, 0.0, 1.0, 0.0)),
            DeformationKind::BiedenharnMacfarlane { q } => Some(u(q, -1.0, 0.0, 1.0, 0.0)),
            DeformationKind::ChungEtAl { q, alpha, beta } => Some(u(q, alpha, beta, 1.0, 0.0)),
            DeformationKind::Bdy {
                q,
                alpha,
                beta,
                gamma,
            } => Some(u(q, alpha, beta, gamma, 0.0)),
            // any base works once every exponent is zero
            DeformationKind::NuModified { nu } => Some(u(QBase::new(0.5).unwrap(), 0.0, 0.0, 0.0, nu)),
            DeformationKind::QNu { q, nu } => Some(u(q, -1.0, 0.0, 1.0, nu)),
            DeformationKind::Unified(p) => Some(p),
            DeformationKind::Abc { q, a, b, c } => Some(abc_to_unified(q, a, b, c)),
            DeformationKind::TwoParam(_) => None,
        }
    }

    /// Arik-Coon with `q > 1`, rewritten as the `(1/q; -1/2, 1, 2; 0)` oscillator.
    pub fn arik_coon_canonical(q: QBase) -> DeformationKind {
        if q.value() > 1.0 {
            DeformationKind::Abc {
                q: q.inverse(),
                a: -0.5,
                b: 1.0,
                c: 2.0,
            }
        } else {
            DeformationKind::ArikCoon { q }
        }
    }
}

/// `(x^n - y^n) / (x - y)` for integer `n` (negative allowed), with the
/// removable singularity at `x = y` filled in.
pub(crate) fn divided_power_difference(x: f64, y: f64, n: i64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n < 0 {
        // (x^-m - y^-m)/(x - y) = -(x^m - y^m)/((x - y) x^m y^m)
        let m = -n;
        return -divided_power_difference(x, y, m) / (x * y).powi(m as i32);
    }
    let gap = (x - y).abs();
    if gap > GUARD_BAND * (x.abs() + y.abs()) {
        return (x.powi(n as i32) - y.powi(n as i32)) / (x - y);
    }
    let mut acc = 0.0;
    let mut xp = 1.0;
    let mut yp = y.powi(n as i32 - 1);
    let inv_y = 1.0 / y;
    for _ in 0..n {
        acc += xp * yp;
        xp *= x;
        yp *= inv_y;
    }
    acc
}

/// `(x^n - (-1)^n y^n) / (x + y)` for `x, y > 0`.
pub(crate) fn divided_alternating_difference(x: f64, y: f64, n: i64) -> f64 {
    let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    (x.powi(n as i32) - sign * y.powi(n as i32)) / (x + y)
}

/// Closed form of the unified structure function.
pub fn structure_unified(params: &UnifiedParams, n: u32) -> f64 {
    let qb = params.q.value().powf(params.beta);
    qb * bracket_value(params, n as i64, 1.0)
}

/// `[n; alpha, gamma; nu k]` with `K` replaced by its eigenvalue `k`.
fn bracket_value(params: &UnifiedParams, n: i64, k: f64) -> f64 {
    let (x, y) = params.bases();
    let parity = if n.rem_euclid(2) == 1 { 1.0 } else { 0.0 };
    if params.is_equal_branch() {
        // n x^{n-1} + 2 nu k x^{n-1} (1 - (-1)^n)/2
        let xn1 = x.powi(n as i32 - 1);
        n as f64 * xn1 + 2.0 * params.nu * k * xn1 * parity
    } else {
        divided_power_difference(x, y, n) + 2.0 * params.nu * k * divided_alternating_difference(x, y, n)
    }
}

/// `f(0..=n_max)` from `f(k+1) = q^gamma f(k) + (1 + 2 nu (-1)^k) q^{alpha k + beta}`, `f(0) = 0`.
pub fn structure_recurrence(params: &UnifiedParams, n_max: u32) -> Vec<f64> {
    let q = params.q.value();
    let x = q.powf(params.gamma);
    let mut out = Vec::with_capacity(n_max as usize + 1);
    let mut f = 0.0;
    out.push(f);
    for k in 0..n_max {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        f = x * f + (1.0 + 2.0 * params.nu * sign) * q.powf(params.alpha * k as f64 + params.beta);
        out.push(f);
    }
    out
}

/// The published structure function of each catalog member.
pub fn structure_catalog(kind: &DeformationKind, n: u32) -> f64 {
    let nf = n as f64;
    let ni = n as i32;
    let odd = n % 2 == 1;
    match *kind {
        DeformationKind::ArikCoon { q } => q_number(q, n),
        DeformationKind::BiedenharnMacfarlane { q } => {
            let q = q.value();
            (q.powi(ni) - q.powi(-ni)) / (q - 1.0 / q)
        }
        DeformationKind::ChungEtAl { q, alpha, beta } => {
            let q = q.value();
            if alpha == 1.0 {
                nf * q.powf(nf - 1.0 + beta)
            } else {
                q.powf(beta) * (q.powf(alpha * nf) - q.powi(ni)) / (q.powf(alpha) - q)
            }
        }
        DeformationKind::Bdy {
            q,
            alpha,
            beta,
            gamma,
        } => {
            let q = q.value();
            if alpha == gamma {
                nf * q.powf(gamma * (nf - 1.0) + beta)
            } else {
                q.powf(beta) * (q.powf(alpha * nf) - q.powf(gamma * nf)) / (q.powf(alpha) - q.powf(gamma))
            }
        }
        DeformationKind::NuModified { nu } => nf + if odd { 2.0 * nu } else { 0.0 },
        DeformationKind::QNu { q, nu } => {
            let q = q.value();
            let alt = if odd { -1.0 } else { 1.0 };
            (q.powi(ni) - q.powi(-ni)) / (q - 1.0 / q) + 2.0 * nu * (q.powi(ni) - alt * q.powi(-ni)) / (q + 1.0 / q)
        }
        DeformationKind::Unified(p) => structure_unified(&p, n),
        DeformationKind::Abc { q, a, b, c } => {
            let q = q.value();
            let qp = q.powf(c - 1.0);
            let ratio = if qp == 1.0 {
                nf
            } else {
                (1.0 - qp.powi(ni)) / (1.0 - qp)
            };
            q.powf(2.0 * a * nf + b) * ratio
        }
        DeformationKind::TwoParam(tp) => structure_two_param(&tp, n),
    }
}

/// `[n; alpha, gamma; nu k]` for `n >= 1`.
pub fn bracket(params: &UnifiedParams, n: u32, k_eigen: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("bracket is defined for n >= 1".into()));
    }
    if k_eigen.abs() != 1.0 {
        return Err(Error::Domain(format!("K eigenvalue must be +1 or -1, got {k_eigen}")));
    }
    Ok(bracket_value(params, n as i64, k_eigen))
}

/// `|sum_{n<=n_terms} [n] z^n - G(z)|` where `G` is the rational generating
/// function of the bracket.
pub fn bracket_generating_check(params: &UnifiedParams, k_eigen: f64, z: f64, n_terms: u32) -> Result<f64> {
    let (x, y) = params.bases();
    if (x * z).abs() >= 1.0 || (y * z).abs() >= 1.0 {
        return Err(Error::Domain(format!(
            "generating function diverges: |q^gamma z| = {}, |q^alpha z| = {}",
            (x * z).abs(),
            (y * z).abs()
        )));
    }
    let mut partial = 0.0;
    let mut zn = z;
    for n in 1..=n_terms {
        partial += bracket(params, n, k_eigen)? * zn;
        zn *= z;
    }
    let nu_k = 2.0 * params.nu * k_eigen;
    let closed = if params.is_equal_branch() {
        z / (1.0 - x * z).powi(2) + nu_k * z / (1.0 - x * x * z * z)
    } else {
        z / (1.0 - x * z) * (1.0 / (1.0 - y * z) + nu_k / (1.0 + y * z))
    };
    Ok((partial - closed).abs())
}

/// `alpha = 2a + c - 1, beta = 2a + b, gamma = 2a, nu = 0`.
pub fn abc_to_unified(q: QBase, a: f64, b: f64, c: f64) -> UnifiedParams {
    UnifiedParams {
        q,
        alpha: 2.0 * a + c - 1.0,
        beta: 2.0 * a + b,
        gamma: 2.0 * a,
        nu: 0.0,
    }
}

/// `f(n) = (p^{-alpha n - beta} - q^{alpha n + beta}) / (p^{-l} - q^l)`.
///
/// Unlike the unified family this need not vanish at `n = 0` unless `beta = 0`.
pub fn structure_two_param(params: &TwoParamParams, n: u32) -> f64 {
    structure_two_param_at(params, n as f64)
}

pub(crate) fn structure_two_param_at(params: &TwoParamParams, n: f64) -> f64 {
    let e = params.alpha * n + params.beta;
    (params.p.powf(-e) - params.q.powf(e)) / params.denominator()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMethod {
    ClosedForm,
    Recurrence,
}

/// A structure function together with how it is evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureSeq {
    pub kind: DeformationKind,
    pub method: EvalMethod,
}

impl StructureSeq {
    pub fn closed(kind: DeformationKind) -> Self {
        StructureSeq {
            kind,
            method: EvalMethod::ClosedForm,
        }
    }

    /// Recurrence evaluation; only available for kinds inside the unified family.
    pub fn recurrence(kind: DeformationKind) -> Result<Self> {
        if kind.to_unified().is_none() {
            return Err(Error::Domain("no recurrence for the two-parameter family".into()));
        }
        Ok(StructureSeq {
            kind,
            method: EvalMethod::Recurrence,
        })
    }

    pub fn eval(&self, n: u32) -> f64 {
        match self.method {
            EvalMethod::ClosedForm => structure_catalog(&self.kind, n),
            EvalMethod::Recurrence => {
                let p = self.kind.to_unified().expect("checked at construction");
                structure_recurrence(&p, n)[n as usize]
            }
        }
    }

    /// `f(0..=n_max)`.
    pub fn values(&self, n_max: u32) -> Vec<f64> {
        match self.method {
            EvalMethod::ClosedForm => (0..=n_max).map(|n| structure_catalog(&self.kind, n)).collect(),
            EvalMethod::Recurrence => structure_recurrence(&self.kind.to_unified().unwrap(), n_max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(q: f64, a: f64, b: f64, g: f64, nu: f64) -> UnifiedParams {
        UnifiedParams::new(q, a, b, g, nu).unwrap()
    }

    fn qb(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn unified_examples() {
        let p = up(0.5, 1.0, 0.0, 2.0, 0.1);
        assert_eq!(structure_unified(&p, 0), 0.0);
        assert!((structure_unified(&p, 1) - 1.2).abs() < 1e-15);
        assert!((structure_unified(&p, 2) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn recurrence_examples() {
        let p = up(0.5, 1.0, 0.0, 2.0, 0.1);
        assert_eq!(structure_recurrence(&p, 0), vec![0.0]);
        let r = structure_recurrence(&p, 2);
        assert_eq!(r[0], 0.0);
        assert!((r[1] - 1.2).abs() < 1e-15);
        assert!((r[2] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn equal_branch_without_nu() {
        let p = up(1.7, 0.4, 0.3, 0.4, 0.0);
        assert!(p.is_equal_branch());
        let rec = structure_recurrence(&p, 12);
        for n in 0..=12u32 {
            let expect = n as f64 * 1.7f64.powf(0.4 * (n as f64 - 1.0) + 0.3);
            assert!((structure_unified(&p, n) - expect).abs() < 1e-13 * (1.0 + expect));
            assert!((rec[n as usize] - expect).abs() < 1e-13 * (1.0 + expect));
        }
    }

    #[test]
    fn equal_branch_with_nu_matches_recurrence() {
        let p = up(0.8, -0.7, 0.2, -0.7, 0.35);
        let rec = structure_recurrence(&p, 30);
        for n in 0..=30u32 {
            let f = structure_unified(&p, n);
            assert!((f - rec[n as usize]).abs() < 1e-12 * (1.0 + f.abs()));
        }
    }

    #[test]
    fn continuity_at_equal_branch() {
        let near = |d: f64| up(0.6, 1.0 + d, 0.1, 1.0, 0.2);
        for n in 0..=30u32 {
            let a = structure_unified(&near(1e-6), n);
            let b = structure_unified(&near(1e-9), n);
            let exact = structure_unified(&near(0.0), n);
            assert!((a - b).abs() <= 1e-5 * (1.0 + b.abs()), "n={n}");
            assert!((b - exact).abs() <= 1e-7 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn catalog_examples() {
        assert_eq!(structure_catalog(&DeformationKind::ArikCoon { q: qb(0.5) }, 3), 1.75);
        let bm = structure_catalog(&DeformationKind::BiedenharnMacfarlane { q: qb(1.3) }, 1);
        assert!((bm - 1.0).abs() < 1e-15);
        assert_eq!(structure_catalog(&DeformationKind::NuModified { nu: 0.25 }, 1), 1.5);
        assert_eq!(structure_catalog(&DeformationKind::NuModified { nu: 0.25 }, 2), 2.0);
        assert_eq!(structure_catalog(&DeformationKind::NuModified { nu: 0.25 }, 0), 0.0);
    }

    #[test]
    fn bracket_examples() {
        let p = up(0.5, 1.0, 0.0, 2.0, 0.1);
        assert!((bracket(&p, 1, 1.0).unwrap() - 1.2).abs() < 1e-15);
        assert!((bracket(&p, 1, -1.0).unwrap() - 0.8).abs() < 1e-15);
        assert!((bracket(&p, 2, 1.0).unwrap() - 0.7).abs() < 1e-15);
        let p0 = up(0.5, 1.0, 0.0, 2.0, 0.0);
        for n in 1..10 {
            let plus = bracket(&p0, n, 1.0).unwrap();
            let minus = bracket(&p0, n, -1.0).unwrap();
            assert_eq!(plus, minus);
        }
        assert!(bracket(&p, 0, 1.0).is_err());
        assert!(bracket(&p, 3, 0.5).is_err());
    }

    #[test]
    fn bracket_times_q_beta_is_structure() {
        let p = up(1.4, -0.6, 0.9, 0.3, -0.45);
        let qb = 1.4f64.powf(0.9);
        for n in 1..=50u32 {
            let f = structure_unified(&p, n);
            let b = qb * bracket(&p, n, 1.0).unwrap();
            assert!((f - b).abs() <= 1e-13 * (1.0 + f.abs()));
        }
    }

    #[test]
    fn generating_function_examples() {
        let p = up(0.5, 1.0, 0.0, 2.0, 0.1);
        assert_eq!(bracket_generating_check(&p, 1.0, 0.0, 10).unwrap(), 0.0);
        assert!(bracket_generating_check(&p, 1.0, 0.5, 60).unwrap() < 1e-12);
        assert!(bracket_generating_check(&p, -1.0, 0.5, 60).unwrap() < 1e-12);
        let eq = up(0.7, 1.5, 0.0, 1.5, 0.3);
        assert!(bracket_generating_check(&eq, 1.0, 0.3, 80).unwrap() < 1e-12);
        assert!(bracket_generating_check(&eq, -1.0, 0.3, 80).unwrap() < 1e-12);
        assert!(bracket_generating_check(&p, 1.0, 2.5, 10).is_err());
    }

    #[test]
    fn abc_examples() {
        let q = qb(0.4);
        let u = abc_to_unified(q, -0.5, 1.0, 2.0);
        assert_eq!((u.alpha, u.beta, u.gamma, u.nu), (0.0, 0.0, -1.0, 0.0));
        for n in 0..=20u32 {
            let expect = 0.4f64.powi(1 - n as i32) * (1.0 - 0.4f64.powi(n as i32)) / 0.6;
            let f = structure_unified(&u, n);
            assert!((f - expect).abs() < 1e-12 * (1.0 + expect));
        }
        let ac = abc_to_unified(q, 0.5, -1.0, 0.0);
        assert_eq!((ac.alpha, ac.beta, ac.gamma), (0.0, 0.0, 1.0));
        for n in 0..=20u32 {
            let f = structure_unified(&ac, n);
            assert!((f - q_number(q, n)).abs() < 1e-14 * (1.0 + f));
        }
        let h2 = abc_to_unified(q, -1.0, 2.0, 2.0);
        assert_eq!((h2.alpha, h2.beta, h2.gamma), (-1.0, 0.0, -2.0));
    }

    #[test]
    fn arik_coon_q_above_one_canonical_form() {
        let big = qb(2.5);
        let canon = DeformationKind::arik_coon_canonical(big);
        for n in 0..=15u32 {
            let direct = structure_catalog(&DeformationKind::ArikCoon { q: big }, n);
            let via = structure_catalog(&canon, n);
            assert!((direct - via).abs() < 1e-12 * (1.0 + direct));
        }
    }

    #[test]
    fn two_param_examples() {
        let tp = TwoParamParams::new(1.7, 0.6, 1.0, 0.0, 1).unwrap();
        assert_eq!(structure_two_param(&tp, 0), 0.0);
        let ac = TwoParamParams::new(1.0, 0.5, 1.0, 0.0, 1).unwrap();
        for n in 0..10 {
            let expect = (1.0 - 0.5f64.powi(n as i32)) / 0.5;
            assert!((structure_two_param(&ac, n) - expect).abs() < 1e-15 * (1.0 + expect));
        }
        assert!(matches!(
            TwoParamParams::new(2.0, 0.5, 1.0, 0.0, 1),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn divided_difference_negative_powers() {
        let (x, y): (f64, f64) = (0.7, 1.9);
        for n in -6..=6i64 {
            let direct = if n == 0 { 0.0 } else { (x.powi(n as i32) - y.powi(n as i32)) / (x - y) };
            assert!((divided_power_difference(x, y, n) - direct).abs() < 1e-12 * (1.0 + direct.abs()));
        }
        // removable singularity
        assert!((divided_power_difference(1.3, 1.3, 4) - 4.0 * 1.3f64.powi(3)).abs() < 1e-14);
        assert!((divided_power_difference(1.3, 1.3, -2) + 2.0 * 1.3f64.powi(-3)).abs() < 1e-14);
    }

    #[test]
    fn recurrence_seq_rejects_two_param() {
        let tp = TwoParamParams::new(1.2, 0.5, 1.0, 0.0, 1).unwrap();
        assert!(StructureSeq::recurrence(DeformationKind::TwoParam(tp)).is_err());
        let s = StructureSeq::recurrence(DeformationKind::ArikCoon { q: qb(0.5) }).unwrap();
        assert_eq!(s.values(3), vec![0.0, 1.0, 1.5, 1.75]);
        assert_eq!(s.eval(3), 1.75);
    }
}
