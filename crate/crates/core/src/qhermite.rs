//! q^{-1}-Hermite polynomials and the Jacobi operator `Q = a + a+` of the
//! `q > 1` Arik-Coon oscillator, written with `0 < q < 1`.
//!
//! `2x h_n = h_{n+1} + q^{-n}(1 - q^n) h_{n-1}`, `h_0 = 1`, `h_1 = 2x`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcalc::{q_binomial, q_pochhammer, Order, QBase, SeriesPolicy};

/// Polynomial in `x` by ascending monomial coefficients.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyCoeffs {
    pub coeffs: Vec<f64>,
}

impl PolyCoeffs {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &PolyCoeffs) -> PolyCoeffs {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyCoeffs { coeffs: out }
    }
}

fn hermite_coeff(n: u32, q: f64) -> f64 {
    q.powi(-(n as i32)) * (1.0 - q.powi(n as i32))
}

/// `h_0, ..., h_{n_max}` by the three-term recurrence.
pub fn hermite_family(n_max: u32, q: QBase) -> Vec<PolyCoeffs> {
    let q = q.value();
    let mut out = vec![PolyCoeffs { coeffs: vec![1.0] }];
    if n_max == 0 {
        return out;
    }
    out.push(PolyCoeffs { coeffs: vec![0.0, 2.0] });
    for n in 1..n_max as usize {
        let c = hermite_coeff(n as u32, q);
        let mut next = vec![0.0; n + 2];
        for (i, v) in out[n].coeffs.iter().enumerate() {
            next[i + 1] += 2.0 * v;
        }
        for (i, v) in out[n - 1].coeffs.iter().enumerate() {
            next[i] -= c * v;
        }
        out.push(PolyCoeffs { coeffs: next });
    }
    out
}

/// Coefficients of `h_n(x; q)`.
pub fn hermite_recurrence(n: u32, q: QBase) -> PolyCoeffs {
    hermite_family(n, q).pop().unwrap()
}

/// `h_n(x) = sum_k [n choose k]_q (-1)^k q^{k(k-n)} e^{(n-2k) theta}` with `x = sinh theta`.
///
/// Terms `k` and `n - k` share their weight, so they are summed as one
/// `cosh` (even `n`) or `sinh` (odd `n`); this keeps the exact zero of odd
/// `h_n` at the origin instead of cancelling huge terms.
pub fn hermite_explicit(n: u32, q: QBase, x: f64) -> f64 {
    let theta = x.asinh();
    let qv = q.value();
    let ni = n as i32;
    let mut sum = 0.0;
    for k in 0..=n / 2 {
        let ki = k as i32;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * q_binomial(n, k, q) * qv.powi(ki * (ki - ni));
        let m = (ni - 2 * ki) as f64;
        sum += if m == 0.0 {
            w
        } else if n % 2 == 0 {
            2.0 * w * (m * theta).cosh()
        } else {
            2.0 * w * (m * theta).sinh()
        };
    }
    sum
}

/// The orthonormal system `psi_n = h_n / (q^{-n(n+1)/4} (q;q)_n^{1/2})` and
/// the Jacobi coefficients `r_n` of `Q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthoSystem {
    pub q: QBase,
}

impl OrthoSystem {
    pub fn new(q: QBase) -> Result<Self> {
        q.convergent("q^{-1}-Hermite system")?;
        Ok(OrthoSystem { q })
    }

    /// `r_n = q^{-n/2} ((1 - q^{n+1})/(1 - q))^{1/2}`
    pub fn r(&self, n: u32) -> f64 {
        let q = self.q.value();
        q.powf(-(n as f64) / 2.0) * ((1.0 - q.powi(n as i32 + 1)) / (1.0 - q)).sqrt()
    }

    /// `q^{-n(n+1)/4} (q;q)_n^{1/2}`
    pub fn normalizer(&self, n: u32) -> f64 {
        let q = self.q.value();
        let nf = n as f64;
        let poch = q_pochhammer(q, self.q, Order::Finite(n), &SeriesPolicy::default()).expect("finite product");
        q.powf(-nf * (nf + 1.0) / 4.0) * poch.sqrt()
    }

    /// `2y = q^{-1/2}(1-q)^{1/2} x` maps the spectral variable `x` of `Q`
    /// to the argument `y` of `h_n`.
    pub fn spectral_scale(&self) -> f64 {
        let q = self.q.value();
        ((1.0 - q) / q).sqrt() / 2.0
    }

    /// Truncated Jacobi matrix of `Q` on `|0>, ..., |dim-1>`.
    pub fn jacobi(&self, dim: usize) -> DMatrix<f64> {
        DMatrix::from_fn(dim, dim, |i, j| {
            if i + 1 == j {
                self.r(i as u32)
            } else if j + 1 == i {
                self.r(j as u32)
            } else {
                0.0
            }
        })
    }

    /// `P_0(x), ..., P_{n_max}(x)` from `r_{n-1} P_{n-1} + r_n P_{n+1} = x P_n`, `P_0 = 1`.
    pub fn eigen_components(&self, x: f64, n_max: u32) -> Vec<f64> {
        let mut p = vec![1.0];
        if n_max == 0 {
            return p;
        }
        p.push(x / self.r(0));
        for n in 1..n_max as usize {
            let next = (x * p[n] - self.r(n as u32 - 1) * p[n - 1]) / self.r(n as u32);
            p.push(next);
        }
        p
    }
}

pub fn psi_normalized(n: u32, q: QBase, x: f64) -> Result<f64> {
    let sys = OrthoSystem::new(q)?;
    Ok(hermite_recurrence(n, q).eval(x) / sys.normalizer(n))
}

/// Moments `L[x^k]` of the functional that makes the `h_n` orthogonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentFunctional {
    pub moments: Vec<f64>,
}

impl MomentFunctional {
    /// `L[p]`; panics if `p` has higher degree than the stored moments.
    pub fn apply(&self, p: &PolyCoeffs) -> f64 {
        assert!(
            p.coeffs.len() <= self.moments.len(),
            "polynomial degree {} exceeds moment order {}",
            p.degree(),
            self.moments.len() - 1
        );
        p.coeffs.iter().zip(&self.moments).map(|(c, m)| c * m).sum()
    }
}

/// `L[x^k] = (J^k)_{00}` for `k <= 2 n_max`, where `J` is the Jacobi matrix of
/// `Q` rescaled to the variable of `h_n` and truncated to dimension `n_max + 2`.
pub fn moment_functional(q: QBase, n_max: u32) -> Result<MomentFunctional> {
    moment_functional_dim(q, n_max, n_max as usize + 2)
}

pub(crate) fn moment_functional_dim(q: QBase, n_max: u32, dim: usize) -> Result<MomentFunctional> {
    let sys = OrthoSystem::new(q)?;
    let j = sys.jacobi(dim) * sys.spectral_scale();
    let mut v = DVector::zeros(dim);
    v[0] = 1.0;
    let mut moments = Vec::with_capacity(2 * n_max as usize + 1);
    for _ in 0..=2 * n_max {
        moments.push(v[0]);
        v = &j * v;
    }
    Ok(MomentFunctional { moments })
}

/// `G_mn = L[h_m h_n]` by monomial expansion.
pub fn orthogonality_check(q: QBase, n_max: u32) -> Result<DMatrix<f64>> {
    if n_max > 12 {
        return Err(Error::Domain(format!("Gram matrices are limited to n_max <= 12, got {n_max}")));
    }
    let lf = moment_functional(q, n_max)?;
    let hs = hermite_family(n_max, q);
    let d = n_max as usize + 1;
    Ok(DMatrix::from_fn(d, d, |m, n| lf.apply(&hs[m].mul(&hs[n]))))
}

/// `q^{-n(n+1)/2} (q;q)_n`, the squared norm of `h_n`.
pub fn gram_target(q: QBase, n: u32) -> f64 {
    OrthoSystem { q }.normalizer(n).powi(2)
}
