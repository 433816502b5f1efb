//! Matrix representations on truncated weight bases, their residual checks,
//! and the coordinate realization of the two-parameter oscillator.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use crate::catalog::{structure_two_param_at, StructureSeq, TwoParamParams, UnifiedParams};
use crate::error::{Error, Result};
use crate::repclass::{casimir_d, casimir_e, RepCase, RepClassification, RepParams};

/// `a`, `a+`, `N`, `K` on a block of consecutive weight vectors.
///
/// An open edge is one where the block was cut out of a larger module, so
/// the relations fail on that row by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorQuadruple {
    pub dim: usize,
    pub a: DMatrix<f64>,
    pub a_dag: DMatrix<f64>,
    pub n: DMatrix<f64>,
    pub k: DMatrix<f64>,
    pub low_edge_open: bool,
    pub high_edge_open: bool,
}

impl OperatorQuadruple {
    /// `lambda[i]` is the weight of basis vector `i`; `lambda[0]` is not used
    /// since `a` never maps below the block.
    fn from_weights(lambda: &[f64], n_first: i64, kappa0: f64, k0: f64, low_open: bool, high_open: bool) -> Result<Self> {
        let dim = lambda.len();
        let mut a = DMatrix::zeros(dim, dim);
        for i in 1..dim {
            let v = lambda[i];
            if v < 0.0 {
                return Err(Error::NegativeLambda {
                    n: n_first + i as i64,
                    value: v,
                });
            }
            a[(i - 1, i)] = v.sqrt();
        }
        let a_dag = a.transpose();
        let n = DMatrix::from_fn(dim, dim, |i, j| if i == j { kappa0 + (n_first + i as i64) as f64 } else { 0.0 });
        let k = DMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                if (n_first + i as i64).rem_euclid(2) == 0 {
                    k0
                } else {
                    -k0
                }
            } else {
                0.0
            }
        });
        Ok(OperatorQuadruple {
            dim,
            a,
            a_dag,
            n,
            k,
            low_edge_open: low_open,
            high_edge_open: high_open,
        })
    }

    /// Inclusive index range on which the defining relations must hold.
    pub fn interior(&self) -> Option<(usize, usize)> {
        let lo = usize::from(self.low_edge_open);
        let hi = self.dim.checked_sub(1 + usize::from(self.high_edge_open))?;
        (lo <= hi).then_some((lo, hi))
    }

    /// Diagonal of `a+ a`.
    pub fn number_weights(&self) -> Vec<f64> {
        let m = &self.a_dag * &self.a;
        (0..self.dim).map(|i| m[(i, i)]).collect()
    }
}

/// Weights of a lowest-weight module, from a structure function or a
/// computed weight sequence.
#[derive(Clone, Copy, Debug)]
pub enum WeightSource<'a> {
    Structure(&'a StructureSeq),
    Lambda(&'a crate::repclass::LambdaSeq),
}

impl<'a> From<&'a StructureSeq> for WeightSource<'a> {
    fn from(s: &'a StructureSeq) -> Self {
        WeightSource::Structure(s)
    }
}

impl<'a> From<&'a crate::repclass::LambdaSeq> for WeightSource<'a> {
    fn from(s: &'a crate::repclass::LambdaSeq) -> Self {
        WeightSource::Lambda(s)
    }
}

/// `(a)_{n-1,n} = sqrt(lambda_n)`, `N = kappa0 + n`, `K = (-1)^n k0` on `|0>, ..., |dim-1>`.
///
/// A structure function gives the weights of the module with `kappa0 = 0`;
/// for other `kappa0` pass the weight sequence instead.
pub fn build_lowest_weight<'a>(source: impl Into<WeightSource<'a>>, kappa0: f64, k0: f64, dim: usize) -> Result<OperatorQuadruple> {
    if dim < 2 {
        return Err(Error::Domain(format!("dimension must be at least 2, got {dim}")));
    }
    let lambda: Vec<f64> = match source.into() {
        WeightSource::Structure(s) => s.values(dim as u32 - 1),
        WeightSource::Lambda(seq) => {
            if seq.n_lo > 0 || seq.n_hi() < dim as i64 - 1 {
                return Err(Error::Domain(format!(
                    "weight window [{}, {}] does not cover 0..{}",
                    seq.n_lo,
                    seq.n_hi(),
                    dim - 1
                )));
            }
            (0..dim as i64).map(|n| seq.get(n).unwrap()).collect()
        }
    };
    let scale = lambda.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if lambda[0].abs() > 1e-10 * scale {
        return Err(Error::InconsistentInput(format!(
            "a lowest-weight module needs lambda_0 = 0, got {}",
            lambda[0]
        )));
    }
    OperatorQuadruple::from_weights(&lambda, 0, kappa0, k0, false, true)
}

/// Block `|n_lo>, ..., |n_lo + dim - 1>` of the module described by `params`,
/// with both edges treated as truncation edges.
pub fn build_window(params: &RepParams, n_lo: i64, dim: usize) -> Result<OperatorQuadruple> {
    if dim < 3 {
        return Err(Error::Domain(format!("window blocks need dimension at least 3, got {dim}")));
    }
    let lambda: Vec<f64> = (0..dim as i64)
        .map(|i| crate::repclass::lambda_closed(params, n_lo + i))
        .collect();
    OperatorQuadruple::from_weights(&lambda, n_lo, params.kappa0, params.k0(), true, true)
}

/// Exact matrices of a one- or two-dimensional module.
pub fn build_finite(class: &RepClassification) -> Result<OperatorQuadruple> {
    if !matches!(class.case, RepCase::OneDim | RepCase::TwoDimIii | RepCase::TwoDimIv) {
        return Err(Error::WrongCase(format!("{:?} is not a one- or two-dimensional case", class.case)));
    }
    let (lo, hi) = match (class.window.lo, class.window.hi) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => unreachable!("finite cases have a bounded window"),
    };
    let lambda: Vec<f64> = (lo..=hi).map(|n| class.lambda.get(n).unwrap()).collect();
    if lambda.len() == 2 && lambda[1] <= 0.0 {
        return Err(Error::NegativeLambda {
            n: hi,
            value: lambda[1],
        });
    }
    let params = &class.params;
    OperatorQuadruple::from_weights(&lambda, lo, params.kappa0, params.k0(), false, false)
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ResidualReport {
    pub block_dim: usize,
    /// `a a+ - q^gamma a+ a - (1 + 2 nu K) q^{alpha N + beta}`, relative to the size of its terms.
    pub relation_residual: f64,
    /// `[N,a] + a`, `[N,a+] - a+`, `K a + a K`, `K a+ + a+ K`, relative.
    pub auxiliary: BTreeMap<String, f64>,
    /// `max |K^2 - I|`; zero only when `|B| = 2|nu|`.
    pub k_squared_minus_identity: f64,
    pub casimir_residuals: BTreeMap<String, f64>,
}

fn max_abs_block(m: &DMatrix<f64>, lo: usize, hi: usize) -> f64 {
    let mut out: f64 = 0.0;
    for i in lo..=hi {
        for j in lo..=hi {
            out = out.max(m[(i, j)].abs());
        }
    }
    out
}

fn relative(residual: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        residual / scale
    } else {
        residual
    }
}

fn diag_map(m: &DMatrix<f64>, f: impl Fn(usize, f64) -> f64) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| if i == j { f(i, m[(i, i)]) } else { 0.0 })
}

/// Residuals of the defining relations on the interior block.
pub fn relation_residual(quad: &OperatorQuadruple, params: &UnifiedParams) -> Result<ResidualReport> {
    let (lo, hi) = quad
        .interior()
        .ok_or_else(|| Error::Domain(format!("dimension {} leaves no interior block", quad.dim)))?;
    let q = params.q.value();
    let x = q.powf(params.gamma);
    let aad = &quad.a * &quad.a_dag;
    let ada = (&quad.a_dag * &quad.a) * x;
    let source = diag_map(&quad.n, |i, nv| (1.0 + 2.0 * params.nu * quad.k[(i, i)]) * q.powf(params.alpha * nv + params.beta));
    // 1 and 2 nu K enter separately, so cancellation between them is not relative error
    let source_terms = diag_map(&quad.n, |i, nv| (1.0 + (2.0 * params.nu * quad.k[(i, i)]).abs()) * q.powf(params.alpha * nv + params.beta));
    let r = &aad - &ada - &source;
    let scale = max_abs_block(&aad, lo, hi).max(max_abs_block(&ada, lo, hi)).max(max_abs_block(&source_terms, lo, hi));

    let a_scale = max_abs_block(&quad.a, lo, hi);
    let n_scale = max_abs_block(&quad.n, lo, hi).max(1.0) * a_scale;
    let k_scale = max_abs_block(&quad.k, lo, hi) * a_scale;
    let comm = |x: &DMatrix<f64>, y: &DMatrix<f64>| x * y - y * x;
    let anti = |x: &DMatrix<f64>, y: &DMatrix<f64>| x * y + y * x;
    let mut aux = BTreeMap::new();
    aux.insert(
        "n_a".to_string(),
        relative(max_abs_block(&(comm(&quad.n, &quad.a) + &quad.a), lo, hi), n_scale),
    );
    aux.insert(
        "n_a_dag".to_string(),
        relative(max_abs_block(&(comm(&quad.n, &quad.a_dag) - &quad.a_dag), lo, hi), n_scale),
    );
    aux.insert("k_a".to_string(), relative(max_abs_block(&anti(&quad.k, &quad.a), lo, hi), k_scale));
    aux.insert(
        "k_a_dag".to_string(),
        relative(max_abs_block(&anti(&quad.k, &quad.a_dag), lo, hi), k_scale),
    );
    let ksq = &quad.k * &quad.k - DMatrix::identity(quad.dim, quad.dim);

    Ok(ResidualReport {
        block_dim: hi - lo + 1,
        relation_residual: relative(max_abs_block(&r, lo, hi), scale),
        auxiliary: aux,
        k_squared_minus_identity: max_abs_block(&ksq, lo, hi),
        casimir_residuals: BTreeMap::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CasimirResidual {
    /// `[C3, a]`, relative to the size of the terms of `C3` times `|a|`.
    pub commutator_a: f64,
    pub commutator_a_dag: f64,
    /// `(max - min)` of the diagonal of `C3`, relative to the size of its terms.
    pub diagonal_spread: f64,
    pub value: f64,
}

impl CasimirResidual {
    pub fn max(&self) -> f64 {
        self.commutator_a.max(self.commutator_a_dag).max(self.diagonal_spread)
    }
}

/// `C3 = q^{-gamma N}(D(N) + nu E(N) K - a+ a)` and the size of its terms, both diagonal.
pub(crate) fn casimir_matrix(quad: &OperatorQuadruple, params: &UnifiedParams, e_scale: f64) -> (DMatrix<f64>, Vec<f64>) {
    let x = params.q.value().powf(params.gamma);
    let ada = &quad.a_dag * &quad.a;
    let mut sizes = Vec::with_capacity(quad.dim);
    let c = DMatrix::from_fn(quad.dim, quad.dim, |i, j| {
        if i != j {
            return 0.0;
        }
        let nv = quad.n[(i, i)];
        let pre = x.powf(-nv);
        let d = casimir_d(params, nv);
        let e = e_scale * params.nu * casimir_e(params, nv) * quad.k[(i, i)];
        sizes.push(pre * (d.abs() + e.abs() + ada[(i, i)].abs()));
        pre * (d + e - ada[(i, i)])
    });
    (c, sizes)
}

/// Commutators of `C3` with `a`, `a+` and the spread of its diagonal.
pub fn casimir_commutant_residual(quad: &OperatorQuadruple, params: &UnifiedParams) -> Result<CasimirResidual> {
    casimir_residual_scaled(quad, params, 1.0)
}

pub(crate) fn casimir_residual_scaled(quad: &OperatorQuadruple, params: &UnifiedParams, e_scale: f64) -> Result<CasimirResidual> {
    if quad.dim < 4 && (quad.low_edge_open || quad.high_edge_open) {
        return Err(Error::Domain(format!(
            "Casimir check on a truncated block needs dimension at least 4, got {}",
            quad.dim
        )));
    }
    let (lo, hi) = quad
        .interior()
        .ok_or_else(|| Error::Domain("no interior block".into()))?;
    let (c, sizes) = casimir_matrix(quad, params, e_scale);
    let term_scale = sizes[lo..=hi].iter().fold(0.0f64, |m, &v| m.max(v));
    let a_scale = max_abs_block(&quad.a, lo, hi);
    let ca = &c * &quad.a - &quad.a * &c;
    let cad = &c * &quad.a_dag - &quad.a_dag * &c;
    let diag: Vec<f64> = (lo..=hi).map(|i| c[(i, i)]).collect();
    let max = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(CasimirResidual {
        commutator_a: relative(max_abs_block(&ca, lo, hi), term_scale * a_scale),
        commutator_a_dag: relative(max_abs_block(&cad, lo, hi), term_scale * a_scale),
        diagonal_spread: relative(max - min, term_scale),
        value: diag[0],
    })
}

/// [`relation_residual`] with the Casimir residuals filled in.
pub fn full_report(quad: &OperatorQuadruple, params: &UnifiedParams) -> Result<ResidualReport> {
    let mut report = relation_residual(quad, params)?;
    let cas = casimir_commutant_residual(quad, params)?;
    report.casimir_residuals.insert("c3_a".into(), cas.commutator_a);
    report.casimir_residuals.insert("c3_a_dag".into(), cas.commutator_a_dag);
    report.casimir_residuals.insert("c3_spread".into(), cas.diagonal_spread);
    Ok(report)
}

/// Laurent polynomial `sum_i coeffs[i] z^{low + i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyVector {
    pub low: i64,
    pub coeffs: Vec<f64>,
}

impl PolyVector {
    pub fn zero() -> Self {
        PolyVector {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(n: i64) -> Self {
        PolyVector {
            low: n,
            coeffs: vec![1.0],
        }
    }

    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        PolyVector { low: 0, coeffs }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0.0).count();
        self.coeffs.drain(..lead);
        self.low += lead as i64;
        if self.coeffs.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^e`.
    pub fn coeff(&self, e: i64) -> f64 {
        if e < self.low {
            return 0.0;
        }
        self.coeffs.get((e - self.low) as usize).copied().unwrap_or(0.0)
    }

    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `sum_e g(e) c_e z^{e + shift}`
    fn map(&self, shift: i64, g: impl Fn(i64) -> f64) -> Self {
        PolyVector {
            low: self.low + shift,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * g(self.low + i as i64))
                .collect(),
        }
        .trimmed()
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(0, |_| s)
    }

    pub fn add(&self, other: &Self, s: f64) -> Self {
        if self.is_zero() {
            return other.scale(s);
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.degree().unwrap().max(other.degree().unwrap());
        PolyVector {
            low,
            coeffs: (low..=high).map(|e| self.coeff(e) + s * other.coeff(e)).collect(),
        }
        .trimmed()
    }
}

/// The operators `a = D`, `a+ = z^{l/alpha}`, `N = z d/dz` acting on Laurent polynomials.
#[derive(Clone, Copy, Debug)]
pub struct CoordinateRealization {
    pub params: TwoParamParams,
    pub step: i64,
}

impl CoordinateRealization {
    pub fn new(params: TwoParamParams) -> Result<Self> {
        let m = params.step();
        if m < 0.0 || m.fract() != 0.0 {
            return Err(Error::Domain(format!("l/alpha = {m} must be a nonnegative integer")));
        }
        Ok(CoordinateRealization { params, step: m as i64 })
    }

    /// `D z^n = f(n) z^{n - l/alpha}` for every integer `n`.
    pub fn annihilate(&self, v: &PolyVector) -> PolyVector {
        v.map(-self.step, |e| structure_two_param_at(&self.params, e as f64))
    }

    /// Polynomial-preserving variant: monomials below degree `l/alpha` are sent to zero.
    pub fn annihilate_truncating(&self, v: &PolyVector) -> PolyVector {
        let m = self.step;
        v.map(-m, |e| if e < m { 0.0 } else { structure_two_param_at(&self.params, e as f64) })
    }

    pub fn create(&self, v: &PolyVector) -> PolyVector {
        v.map(self.step, |_| 1.0)
    }

    pub fn number(&self, v: &PolyVector) -> PolyVector {
        v.map(0, |e| e as f64)
    }

    /// `N` applied through `g`: `z^n -> g(n) z^n`.
    fn of_number(&self, v: &PolyVector, g: impl Fn(f64) -> f64) -> PolyVector {
        v.map(0, |e| g(e as f64))
    }
}

/// Largest relative residual of
/// `a a+ - q^l a+ a = p^{-alpha N - beta}`, `a a+ - p^{-l} a+ a = q^{alpha N + beta}`,
/// `[N, a+] = (l/alpha) a+` and `[N, a] = -(l/alpha) a` over `z^0 .. z^{degree_cap - l/alpha}`.
pub fn coordinate_realization_residual(params: &TwoParamParams, degree_cap: usize) -> Result<f64> {
    let real = CoordinateRealization::new(*params)?;
    let m = real.step;
    if (degree_cap as i64) < m + 2 {
        return Err(Error::Domain(format!("degree cap {degree_cap} must be at least l/alpha + 2 = {}", m + 2)));
    }
    let (p, q, alpha, beta, l) = (params.p, params.q, params.alpha, params.beta, params.l);
    let mut worst: f64 = 0.0;
    let mut record = |lhs: &PolyVector, terms: &[&PolyVector]| {
        let scale = terms.iter().fold(0.0f64, |s, t| s.max(t.max_abs()));
        worst = worst.max(relative(lhs.max_abs(), scale));
    };
    for n in 0..=(degree_cap as i64 - m) {
        let v = PolyVector::monomial(n);
        let aad = real.annihilate(&real.create(&v));
        let ada = real.create(&real.annihilate(&v));
        let rhs_p = real.of_number(&v, |e| p.powf(-alpha * e - beta));
        let rhs_q = real.of_number(&v, |e| q.powf(alpha * e + beta));
        let ql_ada = ada.scale(q.powi(l));
        let pl_ada = ada.scale(p.powi(-l));
        record(&aad.add(&ql_ada, -1.0).add(&rhs_p, -1.0), &[&aad, &ql_ada, &rhs_p]);
        record(&aad.add(&pl_ada, -1.0).add(&rhs_q, -1.0), &[&aad, &pl_ada, &rhs_q]);

        let ad = real.create(&v);
        let n_ad = real.number(&ad);
        let ad_n = real.create(&real.number(&v));
        let step_ad = ad.scale(m as f64);
        record(&n_ad.add(&ad_n, -1.0).add(&step_ad, -1.0), &[&n_ad, &ad_n, &step_ad]);

        let a = real.annihilate(&v);
        let n_a = real.number(&a);
        let a_n = real.annihilate(&real.number(&v));
        let step_a = a.scale(m as f64);
        record(&n_a.add(&a_n, -1.0).add(&step_a, 1.0), &[&n_a, &a_n, &step_a]);
    }
    Ok(worst)
}

/// Eigenvalues of a symmetric matrix in ascending order.
pub fn spectrum(h: &DMatrix<f64>) -> Result<Vec<f64>> {
    if h.nrows() != h.ncols() {
        return Err(Error::NonSymmetric);
    }
    let size = h.amax();
    let tol = 8.0 * f64::EPSILON * size;
    let mut diagonal = true;
    for i in 0..h.nrows() {
        for j in 0..i {
            if (h[(i, j)] - h[(j, i)]).abs() > tol {
                return Err(Error::NonSymmetric);
            }
            if h[(i, j)] != 0.0 || h[(j, i)] != 0.0 {
                diagonal = false;
            }
        }
    }
    let mut eig: Vec<f64> = if diagonal {
        h.diagonal().iter().copied().collect()
    } else {
        SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect()
    };
    eig.sort_by(|a, b| a.total_cmp(b));
    Ok(eig)
}
