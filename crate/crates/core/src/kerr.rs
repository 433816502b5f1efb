//! Kerr-medium spectrum `E_n = (w0/2)(2n+1) + (kappa/2) n(n-1)` (with `hbar = 1`)
//! and the deformed-oscillator Hamiltonians `H = (w0/2)(a+ a + a a+)` matched to it.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::catalog::{structure_unified, UnifiedParams};
use crate::error::{Error, Result};
use crate::fockrep::OperatorQuadruple;

/// Below this the deviation is dominated by rounding and the scaling ratio is meaningless.
pub const DEVIATION_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KerrParams {
    pub omega0: f64,
    pub kappa: f64,
}

impl KerrParams {
    pub fn new(omega0: f64, kappa: f64) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) || !kappa.is_finite() {
            return Err(Error::Domain(format!("need omega0 > 0 and finite kappa, got {omega0}, {kappa}")));
        }
        Ok(KerrParams { omega0, kappa })
    }

    /// `|kappa| / omega0 <= 0.1`, the regime where the expansions are meant to apply.
    pub fn in_perturbative_regime(&self) -> bool {
        self.kappa.abs() / self.omega0 <= 0.1
    }
}

pub fn kerr_spectrum(params: &KerrParams, n_max: u32) -> Vec<f64> {
    (0..=n_max)
        .map(|n| {
            let n = n as f64;
            params.omega0 / 2.0 * (2.0 * n + 1.0) + params.kappa / 2.0 * n * (n - 1.0)
        })
        .collect()
}

/// `H_Kerr` as a diagonal matrix on `|0>, ..., |dim-1>`.
pub fn kerr_hamiltonian(params: &KerrParams, dim: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_vec(kerr_spectrum(params, dim as u32 - 1)))
}

/// `(w0/2)(a+ a + a a+)` from truncated matrices; its last level is cut off.
pub fn deformed_hamiltonian(omega0: f64, quad: &OperatorQuadruple) -> DMatrix<f64> {
    (&quad.a_dag * &quad.a + &quad.a * &quad.a_dag) * (omega0 / 2.0)
}

/// `E_n = (w0/2)(f(n) + f(n+1))` for `alpha = gamma`.
pub fn deformed_spectrum_equal_case(omega0: f64, gamma: f64, beta: f64, nu: f64, q: f64, n_max: u32) -> Result<Vec<f64>> {
    let p = UnifiedParams::new(q, gamma, beta, gamma, nu)?;
    let f: Vec<f64> = (0..=n_max + 1).map(|n| structure_unified(&p, n)).collect();
    if let Some(n) = f.iter().position(|&v| v < 0.0) {
        return Err(Error::NegativeLambda { n: n as i64, value: f[n] });
    }
    Ok((0..=n_max as usize).map(|n| omega0 / 2.0 * (f[n] + f[n + 1])).collect())
}

/// `q = e`, `alpha = rho + mu`, `gamma = rho - mu`, `beta = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KerrReparam {
    pub rho: f64,
    pub mu: f64,
}

impl KerrReparam {
    pub fn new(rho: f64, mu: f64) -> Result<Self> {
        if mu == 0.0 || !mu.is_finite() || !rho.is_finite() {
            return Err(Error::Degenerate(format!("mu must be finite and nonzero, got {mu}")));
        }
        Ok(KerrReparam { rho, mu })
    }

    /// `rho = -2 kappa / w0`, `mu^2 = -(9/2) rho`; needs `kappa > 0`.
    pub fn matched(params: &KerrParams) -> Result<Self> {
        let rho = -2.0 * params.kappa / params.omega0;
        let mu_sq = -4.5 * rho;
        if mu_sq <= 0.0 {
            return Err(Error::Domain(format!("matching needs mu^2 = -(9/2) rho > 0, got {mu_sq}")));
        }
        KerrReparam::new(rho, mu_sq.sqrt())
    }
}

/// `E_n = (w0/2)(e^{alpha(n+1)} - e^{gamma(n+1)})/(e^alpha - e^gamma)`.
pub fn deformed_spectrum_nu0(omega0: f64, reparam: &KerrReparam, n_max: u32) -> Vec<f64> {
    let (rho, mu) = (reparam.rho, reparam.mu);
    // e^{rho n} sinh(mu (n+1)) / sinh(mu)
    (0..=n_max)
        .map(|n| {
            let n = n as f64;
            omega0 / 2.0 * (rho * n).exp() * (mu * (n + 1.0)).sinh() / mu.sinh()
        })
        .collect()
}

/// How the deformation parameters are tied to `kappa`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Matcher {
    /// `q = e`, `gamma = kappa/(2 w0)`, `nu = 0`, `beta = -gamma`.
    Equal,
    /// `q = e`, `rho = -2 kappa/w0`, `mu^2 = -(9/2) rho`.
    Nu0,
    /// `q = e`, `gamma = kappa/(2 w0)`, `beta = -gamma`, `nu = kappa/(4 w0)`:
    /// also cancels the constant shift `w0 (beta/2 + nu)` of the expansion.
    EqualBalanced,
}

/// Deformed spectrum for a matcher at the given Kerr parameters.
pub fn matched_spectrum(params: &KerrParams, matcher: Matcher, n_max: u32) -> Result<Vec<f64>> {
    let w = params.omega0;
    let g = params.kappa / (2.0 * w);
    match matcher {
        Matcher::Equal => deformed_spectrum_equal_case(w, g, -g, 0.0, std::f64::consts::E, n_max),
        Matcher::EqualBalanced => deformed_spectrum_equal_case(w, g, -g, g / 2.0, std::f64::consts::E, n_max),
        Matcher::Nu0 => Ok(deformed_spectrum_nu0(w, &KerrReparam::matched(params)?, n_max)),
    }
}

/// `max_n |E_n^def - E_n^Kerr|`
pub fn deviation(params: &KerrParams, matcher: Matcher, n_max: u32) -> Result<f64> {
    let def = matched_spectrum(params, matcher, n_max)?;
    let kerr = kerr_spectrum(params, n_max);
    Ok(def.iter().zip(&kerr).fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub matcher: Matcher,
    pub kappa: f64,
    pub dev_kappa: f64,
    pub dev_half_kappa: f64,
    /// `dev(kappa) / dev(kappa/2)`: about 4 for a second-order remainder,
    /// about 2 for first order, about 1 if the zeroth order already differs.
    pub ratio: f64,
    pub inconclusive: bool,
    pub in_band: bool,
}

/// Band `[3.5, 4.5]` expected of a quadratic remainder.
pub const QUADRATIC_BAND: (f64, f64) = (3.5, 4.5);

pub fn deviation_scaling(params: &KerrParams, matcher: Matcher, n_max: u32) -> Result<ScalingReport> {
    let half = KerrParams::new(params.omega0, params.kappa / 2.0)?;
    let d1 = deviation(params, matcher, n_max)?;
    let d2 = deviation(&half, matcher, n_max)?;
    let inconclusive = d2 < DEVIATION_FLOOR;
    let ratio = if inconclusive { f64::NAN } else { d1 / d2 };
    Ok(ScalingReport {
        matcher,
        kappa: params.kappa,
        dev_kappa: d1,
        dev_half_kappa: d2,
        ratio,
        inconclusive,
        in_band: !inconclusive && (QUADRATIC_BAND.0..=QUADRATIC_BAND.1).contains(&ratio),
    })
}

/// Recurrence oracle for [`deformed_spectrum_equal_case`].
#[cfg(test)]
fn equal_case_by_recurrence(omega0: f64, gamma: f64, beta: f64, nu: f64, q: f64, n_max: u32) -> Result<Vec<f64>> {
    let p = UnifiedParams::new(q, gamma, beta, gamma, nu)?;
    let f = crate::catalog::structure_recurrence(&p, n_max + 1);
    Ok((0..=n_max as usize).map(|n| omega0 / 2.0 * (f[n] + f[n + 1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{DeformationKind, StructureSeq};
    use crate::fockrep::{build_lowest_weight, spectrum};

    #[test]
    fn kerr_examples() {
        let p = KerrParams::new(1.0, 0.0).unwrap();
        assert_eq!(kerr_spectrum(&p, 3), vec![0.5, 1.5, 2.5, 3.5]);
        let p = KerrParams::new(1.0, 0.01).unwrap();
        let e = kerr_spectrum(&p, 3);
        assert_eq!(e[0], 0.5);
        assert!((e[3] - 3.53).abs() < 1e-15);
        assert!(KerrParams::new(0.0, 0.1).is_err());
    }

    #[test]
    fn kerr_matrix_spectrum() {
        let p = KerrParams::new(1.3, 0.02).unwrap();
        let h = kerr_hamiltonian(&p, 8);
        assert_eq!(spectrum(&h).unwrap(), kerr_spectrum(&p, 7));
    }

    #[test]
    fn equal_case_examples() {
        let e = deformed_spectrum_equal_case(2.0, 0.0, 0.0, 0.0, std::f64::consts::E, 5).unwrap();
        for (n, v) in e.iter().enumerate() {
            assert!((v - (2.0 * n as f64 + 1.0)).abs() < 1e-14);
        }
        let q: f64 = 1.7;
        let e = deformed_spectrum_equal_case(1.0, 0.3, 0.2, 0.15, q, 4).unwrap();
        assert!((e[0] - 0.5 * q.powf(0.2) * 1.3).abs() < 1e-15);
        let oracle = equal_case_by_recurrence(1.0, 0.3, 0.2, 0.15, q, 4).unwrap();
        for (a, b) in e.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-13 * b);
        }
        assert!(deformed_spectrum_equal_case(1.0, 0.3, 0.0, -0.8, q, 4).is_err());
    }

    #[test]
    fn equal_case_from_matrices() {
        let u = UnifiedParams::new(std::f64::consts::E, 0.01, -0.01, 0.01, 0.0).unwrap();
        let quad = build_lowest_weight(&StructureSeq::closed(DeformationKind::Unified(u)), 0.0, 1.0, 12).unwrap();
        let h = deformed_hamiltonian(1.0, &quad);
        let levels: Vec<f64> = (0..11).map(|i| h[(i, i)]).collect();
        let e = deformed_spectrum_equal_case(1.0, 0.01, -0.01, 0.0, std::f64::consts::E, 10).unwrap();
        for (a, b) in levels.iter().zip(&e) {
            assert!((a - b).abs() < 1e-13 * b);
        }
    }

    #[test]
    fn nu0_examples() {
        let r = KerrReparam::new(0.0, 1e-6).unwrap();
        let e = deformed_spectrum_nu0(2.0, &r, 6);
        assert_eq!(e[0], 1.0);
        for (n, v) in e.iter().enumerate() {
            assert!((v - (n as f64 + 1.0)).abs() < 1e-9);
        }
        assert!(KerrReparam::new(0.1, 0.0).is_err());
        assert!(KerrReparam::matched(&KerrParams::new(1.0, -0.01).unwrap()).is_err());
        let m = KerrReparam::matched(&KerrParams::new(1.0, 0.01).unwrap()).unwrap();
        assert!((m.mu * m.mu + 4.5 * m.rho).abs() < 1e-15);
    }

    #[test]
    fn zero_kappa_gives_zero_deviation() {
        let p = KerrParams::new(1.0, 0.0).unwrap();
        assert_eq!(deviation(&p, Matcher::Equal, 6).unwrap(), 0.0);
        let r = deviation_scaling(&p, Matcher::Equal, 6).unwrap();
        assert!(r.inconclusive && !r.in_band);
    }

    #[test]
    fn harmonic_limit_is_linear_in_the_deformation() {
        let harmonic: Vec<f64> = (0..=6).map(|n| n as f64 + 0.5).collect();
        for &eps in &[1e-4, 1e-6] {
            let e = deformed_spectrum_equal_case(1.0, eps, eps, eps, std::f64::consts::E, 6).unwrap();
            for (a, b) in e.iter().zip(&harmonic) {
                assert!((a - b).abs() <= 50.0 * eps);
            }
        }
    }

    #[test]
    fn balanced_split_has_quadratic_remainder() {
        let p = KerrParams::new(1.0, 1e-3).unwrap();
        let r = deviation_scaling(&p, Matcher::EqualBalanced, 6).unwrap();
        assert!(r.in_band, "{r:?}");
    }

    #[test]
    fn spectra_increase() {
        let p = KerrParams::new(1.0, 1e-3).unwrap();
        for m in [Matcher::Equal, Matcher::Nu0, Matcher::EqualBalanced] {
            let e = matched_spectrum(&p, m, 10).unwrap();
            assert!(e.windows(2).all(|w| w[1] > w[0]));
        }
    }
}
