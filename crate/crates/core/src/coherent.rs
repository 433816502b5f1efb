//! Barut-Girardello coherent states of the q^{-1}-Hermite oscillator and a
//! lattice measure resolving the identity.
//!
//! With `a|n> = r_{n-1}|n-1>`,
//!
//! ```text
//! |z> = N(|z|^2)^{-1} sum_{n>=0} z^n / r_{n-1}! |n>,   N^2(x) = (-(1-q)x; q)_inf
//! ```

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{DeformationKind, StructureSeq};
use crate::error::{Error, Result};
use crate::fockrep::build_lowest_weight;
use crate::qcalc::{
    ln_phi00, q_exponential, q_pochhammer, q_pochhammer_inf_complex, DiscreteMeasure, Order, QBase, SeriesPolicy,
};
use crate::qhermite::OrthoSystem;

/// `r_{n-1}! = r_0 r_1 ... r_{n-1}`, with `r_{-1}! = 1`.
pub fn r_factorial(n: u32, q: QBase) -> Result<f64> {
    let sys = OrthoSystem::new(q)?;
    Ok((0..n).map(|k| sys.r(k)).product())
}

/// `(q/(1-q))^{n/2} q^{-n(n+1)/4} (q;q)_n^{1/2}`
pub fn r_factorial_closed(n: u32, q: QBase) -> Result<f64> {
    let qv = q.convergent("r factorial")?;
    let nf = n as f64;
    let poch = q_pochhammer(qv, q, Order::Finite(n), &SeriesPolicy::default())?;
    Ok((qv / (1.0 - qv)).powf(nf / 2.0) * qv.powf(-nf * (nf + 1.0) / 4.0) * poch.sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizationSq {
    /// `sum_n q^{n(n-1)/2} (1-q)^n x^n / (q;q)_n`
    pub series: f64,
    /// `(-(1-q)x; q)_inf`
    pub product: f64,
}

/// `N^2(x)` for `x = |z|^2 >= 0`, evaluated both ways.
pub fn normalization_sq(x: f64, q: QBase, policy: &SeriesPolicy) -> Result<NormalizationSq> {
    let qv = q.convergent("coherent-state normalization")?;
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("|z|^2 must be nonnegative, got {x}")));
    }
    let e = q_exponential((1.0 - qv) * x, q, policy)?;
    let rel = (e.series - e.product).abs() / e.product;
    if rel > 1e-12 {
        return Err(Error::Consistency {
            what: "normalization series vs product",
            left: e.series,
            right: e.product,
        });
    }
    Ok(NormalizationSq {
        series: e.series,
        product: e.product,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentState {
    pub z: Complex64,
    #[serde(skip)]
    pub q: QBase,
    /// Normalized coefficients on `|0>, |1>, ...`.
    pub coeffs: Vec<Complex64>,
    /// Truncated `sum |z|^{2n} / r_{n-1}!^2`.
    pub norm_sq: f64,
}

/// Coherent state truncated where the dropped part of `sum |z|^{2n}/r_{n-1}!^2`
/// falls below `tol` times the kept part.
pub fn coherent_state(z: Complex64, q: QBase, tol: f64) -> Result<CoherentState> {
    let sys = OrthoSystem::new(q)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let x = z.norm_sqr();
    let max_terms = SeriesPolicy::default().max_terms;
    let mut raw = vec![Complex64::new(1.0, 0.0)];
    let mut sum = 1.0;
    let mut weight = 1.0;
    loop {
        let n = raw.len() as u32;
        // |c_{n+1}|^2 / |c_n|^2 = x / r_n^2 shrinks with n
        let ratio = x / sys.r(n - 1).powi(2);
        let next_ratio = x / sys.r(n).powi(2);
        if next_ratio < 1.0 && weight * ratio / (1.0 - next_ratio) < tol * sum {
            break;
        }
        if raw.len() >= max_terms {
            return Err(Error::NotConvergent {
                what: "coherent state",
                terms: raw.len(),
            });
        }
        let c = raw[raw.len() - 1] * z / sys.r(n - 1);
        weight = c.norm_sqr();
        sum += weight;
        raw.push(c);
    }
    let inv = 1.0 / sum.sqrt();
    Ok(CoherentState {
        z,
        q,
        coeffs: raw.into_iter().map(|c| c * inv).collect(),
        norm_sq: sum,
    })
}

impl CoherentState {
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `||(a - z)|z>||` with `a` the truncated annihilation matrix of the
    /// `(q; -1/2, 1, 2; 0)` oscillator.
    pub fn eigen_residual(&self) -> Result<f64> {
        let dim = self.coeffs.len().max(2);
        let seq = StructureSeq::closed(DeformationKind::Abc {
            q: self.q,
            a: -0.5,
            b: 1.0,
            c: 2.0,
        });
        let quad = build_lowest_weight(&seq, 0.0, 1.0, dim)?;
        let mut re = DVector::zeros(dim);
        let mut im = DVector::zeros(dim);
        for (i, c) in self.coeffs.iter().enumerate() {
            re[i] = c.re;
            im[i] = c.im;
        }
        let ar = &quad.a * &re;
        let ai = &quad.a * &im;
        let mut acc = 0.0;
        for i in 0..dim {
            let v = Complex64::new(ar[i], ai[i]) - self.z * Complex64::new(re[i], im[i]);
            acc += v.norm_sqr();
        }
        Ok(acc.sqrt())
    }

    /// `<self|other>` from the stored coefficients.
    pub fn overlap(&self, other: &CoherentState) -> Complex64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }
}

/// `<z1|z2> = e_q((1-q) conj(z1) z2) / (N(|z1|^2) N(|z2|^2))`
pub fn overlap_closed(z1: Complex64, z2: Complex64, q: QBase) -> Result<Complex64> {
    let qv = q.convergent("coherent-state overlap")?;
    let policy = SeriesPolicy::default();
    let w = z1.conj() * z2 * (1.0 - qv);
    let num = q_pochhammer_inf_complex(-w, q, &policy)?;
    let n1 = normalization_sq(z1.norm_sqr(), q, &policy)?.product.sqrt();
    let n2 = normalization_sq(z2.norm_sqr(), q, &policy)?.product.sqrt();
    Ok(num / (n1 * n2))
}

/// `<x|z> = N^{-1} sum_n t^n q^{n(n-1)/2} h_n(x) / (q;q)_n`, `t = z sqrt(q(1-q))`,
/// where `<x|n> = psi_n(x)`.
pub fn wavefunction_series(z: Complex64, q: QBase, x: f64, policy: &SeriesPolicy) -> Result<Complex64> {
    let qv = q.convergent("coherent-state wavefunction")?;
    let t = z * (qv * (1.0 - qv)).sqrt();
    let mut h_prev = 0.0;
    let mut h = 1.0;
    let mut tn = Complex64::new(1.0, 0.0);
    let mut qpow = 1.0; // q^{n(n-1)/2}
    let mut poch = 1.0; // (q;q)_n
    let mut qn = 1.0; // q^n
    let mut sum = Complex64::new(0.0, 0.0);
    let mut quiet = 0;
    for n in 0..policy.max_terms {
        let term = tn * (qpow * h / poch);
        sum += term;
        if term.norm() <= policy.rel_tol * sum.norm() {
            quiet += 1;
            if quiet == 3 {
                let norm = normalization_sq(z.norm_sqr(), q, policy)?.product.sqrt();
                return Ok(sum / norm);
            }
        } else {
            quiet = 0;
        }
        // h_{n+1} = 2x h_n - q^{-n}(1 - q^n) h_{n-1}
        let next = 2.0 * x * h - (1.0 - qn) / qn * h_prev;
        h_prev = h;
        h = next;
        tn *= t;
        qpow *= qn;
        qn *= qv;
        poch *= 1.0 - qn;
        if !sum.norm().is_finite() {
            return Err(Error::Domain(format!("wavefunction series overflows at n = {n}")));
        }
    }
    Err(Error::NotConvergent {
        what: "coherent-state wavefunction",
        terms: policy.max_terms,
    })
}

/// Product form `(-t e^theta; q)_inf (t e^{-theta}; q)_inf / N`, `x = sinh theta`.
pub fn wavefunction_product(z: Complex64, q: QBase, x: f64, policy: &SeriesPolicy) -> Result<Complex64> {
    let qv = q.convergent("coherent-state wavefunction")?;
    let t = z * (qv * (1.0 - qv)).sqrt();
    let theta = x.asinh();
    let p1 = q_pochhammer_inf_complex(-t * theta.exp(), q, policy)?;
    let p2 = q_pochhammer_inf_complex(t * (-theta).exp(), q, policy)?;
    let norm = normalization_sq(z.norm_sqr(), q, policy)?.product.sqrt();
    Ok(p1 * p2 / norm)
}

/// `m_n = q^{-n(n-1)/2} (q;q)_n`
pub fn moment_target(n: u32, q: QBase) -> Result<f64> {
    let qv = q.convergent("moment target")?;
    let nf = n as f64;
    Ok(qv.powf(-nf * (nf - 1.0) / 2.0) * q_pochhammer(qv, q, Order::Finite(n), &SeriesPolicy::default())?)
}

/// Normalized lattice measure in `y = (1-q)|z|^2` solving the moment problem
/// `int y^n dmu = m_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightSolution {
    pub q: QBase,
    /// Points `q^k`, weights `q^{k-1} / e_q(q^{k-1})` divided by `I0`.
    pub measure: DiscreteMeasure,
    /// Unnormalized total mass `I0`.
    pub i0: f64,
    pub k_lo: i32,
    pub k_hi: i32,
    /// Logarithms of the normalized weights, aligned with `measure.points()`.
    ln_weights: Vec<f64>,
}

impl WeightSolution {
    /// The same measure on `|z|^2 = y/(1-q)`.
    pub fn radial(&self) -> DiscreteMeasure {
        let s = 1.0 - self.q.value();
        let points = self.measure.points().iter().map(|y| y / s).collect();
        DiscreteMeasure::new(points, self.measure.weights().to_vec()).expect("rescaling keeps the lattice valid")
    }

    /// `int y^n dmu`, summed in log space since `y^n` overflows at the
    /// large-`y` end where the weights underflow.
    pub fn moment(&self, n: u32) -> f64 {
        let nf = n as f64;
        self.measure
            .points()
            .iter()
            .zip(&self.ln_weights)
            .map(|(y, lw)| (lw + nf * y.ln()).exp())
            .sum()
    }

    /// `int |z|^{2n} dmu = m_n / (1-q)^n` on the measured lattice.
    pub fn radial_moment(&self, n: u32) -> f64 {
        self.moment(n) / (1.0 - self.q.value()).powi(n as i32)
    }
}

/// Lattice measure with large-`y` points `q^k`, `k >= -k_range`; the
/// small-`y` side is extended until its geometric tail drops below `1e-16`.
pub fn weight_measure(q: QBase, k_range: i32) -> Result<WeightSolution> {
    let qv = q.convergent("moment-problem measure")?;
    if k_range < 1 {
        return Err(Error::Domain(format!("k_range must be positive, got {k_range}")));
    }
    let policy = SeriesPolicy::default();
    let ln_q = qv.ln();
    let ln_weight = |k: i32| -> Result<f64> {
        let arg = qv.powi(k - 1);
        Ok((k - 1) as f64 * ln_q - ln_phi00(arg, q, &policy)?)
    };
    let k_lo = -k_range;
    let mut logs = Vec::new();
    let mut k = k_lo;
    let mut max_log = f64::NEG_INFINITY;
    loop {
        let lw = ln_weight(k)?;
        max_log = max_log.max(lw);
        logs.push(lw);
        // past the peak, the remaining weights sum to about w_k q/(1-q)
        if k > 0 && lw + (qv / (1.0 - qv)).ln() - max_log < (1e-16f64).ln() {
            break;
        }
        if logs.len() > policy.max_terms {
            return Err(Error::NotConvergent {
                what: "moment-problem lattice (small y)",
                terms: logs.len(),
            });
        }
        k += 1;
    }
    let k_hi = k;
    if logs[0] - max_log > (1e-16f64).ln() {
        return Err(Error::NotConvergent {
            what: "moment-problem lattice (large y); increase k_range",
            terms: logs.len(),
        });
    }
    let mass: f64 = logs.iter().map(|l| (l - max_log).exp()).sum();
    let i0 = mass * max_log.exp();
    let ln_norm = max_log + mass.ln();
    // ascending points: k descending
    let points: Vec<f64> = (k_lo..=k_hi).rev().map(|k| qv.powi(k)).collect();
    let ln_weights: Vec<f64> = logs.iter().rev().map(|l| l - ln_norm).collect();
    let weights = ln_weights.iter().map(|l| l.exp()).collect();
    Ok(WeightSolution {
        q,
        measure: DiscreteMeasure::new(points, weights)?,
        i0,
        k_lo,
        k_hi,
        ln_weights,
    })
}

/// `G_mn = int <m|z><z|n> dmu`: zero off the diagonal from the angular
/// integral, `int |z|^{2n} dmu / r_{n-1}!^2` on it.
pub fn completeness_check(q: QBase, n_max: u32, k_range: i32) -> Result<nalgebra::DMatrix<f64>> {
    if n_max > 15 {
        return Err(Error::Domain(format!("completeness check is limited to n_max <= 15, got {n_max}")));
    }
    let sol = weight_measure(q, k_range)?;
    let d = n_max as usize + 1;
    let mut g = nalgebra::DMatrix::zeros(d, d);
    for n in 0..d {
        let rf = r_factorial(n as u32, q)?;
        g[(n, n)] = sol.radial_moment(n as u32) / (rf * rf);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qb(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    #[test]
    fn r_factorial_examples() {
        let q = qb(0.5);
        assert_eq!(r_factorial(0, q).unwrap(), 1.0);
        assert!((r_factorial(1, q).unwrap() - 1.0).abs() < 1e-15);
        assert!((r_factorial(2, q).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        for &qv in &[0.3, 0.5, 0.8] {
            for n in 0..25 {
                let a = r_factorial(n, qb(qv)).unwrap();
                let b = r_factorial_closed(n, qb(qv)).unwrap();
                assert!((a - b).abs() <= 1e-12 * b);
            }
        }
    }

    #[test]
    fn normalization_examples() {
        let p = SeriesPolicy::default();
        let n0 = normalization_sq(0.0, qb(0.5), &p).unwrap();
        assert_eq!((n0.series, n0.product), (1.0, 1.0));
        let n1 = normalization_sq(1.0, qb(0.5), &p).unwrap();
        let oracle: f64 = (0..400).map(|k| 1.0 + 0.5 * 0.5f64.powi(k)).product();
        assert!((n1.product - oracle).abs() < 1e-14 * oracle);
        for &q in &[0.3, 0.5, 0.8] {
            for i in 0..=20 {
                let x = i as f64 * 0.5;
                let n = normalization_sq(x, qb(q), &p).unwrap();
                assert!((n.series - n.product).abs() <= 1e-12 * n.product);
            }
        }
        assert!(normalization_sq(-1.0, qb(0.5), &p).is_err());
    }

    #[test]
    fn vacuum_state() {
        let s = coherent_state(Complex64::new(0.0, 0.0), qb(0.5), 1e-20).unwrap();
        assert_eq!(s.coeffs, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn eigen_residual_small() {
        let s = coherent_state(Complex64::new(1.0, 0.5), qb(0.5), 1e-20).unwrap();
        assert!(s.eigen_residual().unwrap() < 1e-8);
        let total: f64 = s.coeffs.iter().map(|c| c.norm_sqr()).sum();
        assert!((total - 1.0).abs() < 1e-12);
        let n2 = normalization_sq(s.z.norm_sqr(), qb(0.5), &SeriesPolicy::default()).unwrap();
        assert!((s.norm_sq - n2.product).abs() < 1e-12 * n2.product);
    }

    #[test]
    fn wavefunction_sum_matches_product() {
        let p = SeriesPolicy::default();
        for &z in &[0.4, 1.3, -2.0] {
            let z = Complex64::new(z, 0.0);
            for i in 0..=8 {
                let x = -2.0 + 0.5 * i as f64;
                let s = wavefunction_series(z, qb(0.5), x, &p).unwrap();
                let r = wavefunction_product(z, qb(0.5), x, &p).unwrap();
                assert!((s - r).norm() < 1e-8, "z={z} x={x}: {s} vs {r}");
            }
        }
    }

    #[test]
    fn overlaps_agree_and_never_vanish() {
        let q = qb(0.5);
        let zs = [
            Complex64::new(0.3, 0.1),
            Complex64::new(-1.2, 0.7),
            Complex64::new(2.0, -1.5),
        ];
        for &a in &zs {
            for &b in &zs {
                let sa = coherent_state(a, q, 1e-24).unwrap();
                let sb = coherent_state(b, q, 1e-24).unwrap();
                let direct = sa.overlap(&sb);
                let closed = overlap_closed(a, b, q).unwrap();
                assert!((direct - closed).norm() < 1e-10);
                if a != b {
                    assert!(closed.norm() > 1e-6);
                }
            }
        }
    }

    #[test]
    fn moment_targets() {
        let q = qb(0.5);
        assert_eq!(moment_target(0, q).unwrap(), 1.0);
        assert_eq!(moment_target(1, q).unwrap(), 0.5);
        assert!((moment_target(2, q).unwrap() - 0.75).abs() < 1e-15);
        for n in 1..20 {
            let r = moment_target(n, q).unwrap() / moment_target(n - 1, q).unwrap();
            assert!((r - 0.5f64.powi(1 - n as i32) * (1.0 - 0.5f64.powi(n as i32))).abs() < 1e-12 * r);
        }
    }

    #[test]
    fn lattice_measure_moments() {
        for &qv in &[0.3, 0.5, 0.8] {
            let q = qb(qv);
            let sol = weight_measure(q, 60).unwrap();
            assert!((sol.measure.total_mass() - 1.0).abs() < 1e-14);
            for n in 0..=20 {
                let m = sol.moment(n);
                let t = moment_target(n, q).unwrap();
                assert!((m - t).abs() <= 1e-8 * t, "q={qv} n={n}: {m} vs {t}");
            }
        }
    }

    #[test]
    fn measure_matches_jackson_integral() {
        let q = qb(0.5);
        let sol = weight_measure(q, 60).unwrap();
        let p = SeriesPolicy::default();
        let i0 = crate::qcalc::jackson_integral(|t| 1.0 / q_exponential(t / 0.5, q, &p).unwrap().value(), q, &p).unwrap();
        assert!((sol.i0 - i0).abs() < 1e-12 * i0);
    }

    #[test]
    fn short_lattice_is_rejected() {
        assert!(matches!(weight_measure(qb(0.8), 3), Err(Error::NotConvergent { .. })));
    }

    #[test]
    fn resolution_of_unity() {
        let g = completeness_check(qb(0.5), 10, 60).unwrap();
        for n in 0..=10 {
            assert!((g[(n, n)] - 1.0).abs() < 1e-8);
            for m in 0..=10 {
                if m != n {
                    assert_eq!(g[(m, n)], 0.0);
                }
            }
        }
        assert!((g[(0, 0)] - 1.0).abs() < 1e-14);
    }
}
