//! q-arithmetic, q-series with controlled truncation, and Jackson calculus.
//!
//! Everything here works in double precision. Infinite products and series
//! are truncated adaptively under a [`SeriesPolicy`]; when the term budget
//! runs out before the tail bound drops below `rel_tol` the evaluation fails
//! instead of returning a silently truncated value.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The deformation base `q`: positive and different from one.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct QBase(f64);

impl QBase {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) || q == 1.0 {
            return Err(Error::Domain(format!("q must be positive and != 1, got {q}")));
        }
        Ok(QBase(q))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// q -> 1/q. Used to move between the q > 1 and q < 1 pictures.
    pub fn inverse(self) -> QBase {
        QBase(1.0 / self.0)
    }

    /// Returns `q` if `q < 1`, otherwise a domain error naming `what`.
    pub fn convergent(self, what: &str) -> Result<f64> {
        if self.0 < 1.0 {
            Ok(self.0)
        } else {
            Err(Error::Domain(format!("{what} requires q < 1, got q = {}", self.0)))
        }
    }
}

impl TryFrom<f64> for QBase {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        QBase::new(q)
    }
}

impl From<QBase> for f64 {
    fn from(q: QBase) -> f64 {
        q.0
    }
}

/// Truncation policy shared by every adaptive series and product.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        let p = SeriesPolicy { rel_tol, max_terms };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::Config(format!("rel_tol must be > 0, got {}", self.rel_tol)));
        }
        if self.max_terms == 0 {
            return Err(Error::Config("max_terms must be >= 1".into()));
        }
        Ok(())
    }
}

/// A truncated evaluation together with an estimate of the dropped tail.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub abs_err: f64,
    pub terms: usize,
}

/// `[n]_q = 1 + q + ... + q^{n-1}`, i.e. `(1 - q^n)/(1 - q)` without the
/// cancellation near `q = 1`.
pub fn q_number(q: QBase, n: u32) -> f64 {
    let q = q.value();
    let mut acc = 0.0;
    let mut pow = 1.0;
    for _ in 0..n {
        acc += pow;
        pow *= q;
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u32),
    Infinite,
}

/// `(a; q)_n = prod_{k<n} (1 - a q^k)`; for `Order::Infinite` see
/// [`q_pochhammer_inf`].
pub fn q_pochhammer(a: f64, q: QBase, order: Order, policy: &SeriesPolicy) -> Result<f64> {
    match order {
        Order::Finite(n) => {
            let q = q.value();
            let mut prod = 1.0;
            let mut pow = 1.0;
            for _ in 0..n {
                prod *= 1.0 - a * pow;
                pow *= q;
            }
            Ok(prod)
        }
        Order::Infinite => q_pochhammer_inf(a, q, policy).map(|e| e.value),
    }
}

// Double-double arithmetic for long products and sums whose rounding
// would otherwise accumulate past the series tolerance.
#[derive(Clone, Copy, Debug)]
struct Dd(f64, f64);

impl Dd {
    fn new(x: f64) -> Self {
        Dd(x, 0.0)
    }

    fn value(self) -> f64 {
        self.0 + self.1
    }

    fn add(self, o: Dd) -> Dd {
        let s = self.0 + o.0;
        let bb = s - self.0;
        let e = (self.0 - (s - bb)) + (o.0 - bb);
        let lo = e + self.1 + o.1;
        let hi = s + lo;
        Dd(hi, lo - (hi - s))
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }

    fn mul(self, o: Dd) -> Dd {
        let p = self.0 * o.0;
        let e = self.0.mul_add(o.0, -p);
        let lo = e + (self.0 * o.1 + self.1 * o.0);
        let hi = p + lo;
        Dd(hi, lo - (hi - p))
    }

    fn div(self, o: Dd) -> Dd {
        let q1 = self.0 / o.0;
        let r = self.add(o.mul(Dd::new(q1)).neg());
        let q2 = r.0 / o.0;
        let hi = q1 + q2;
        Dd(hi, q2 - (hi - q1))
    }
}

/// `(a; q)_inf` for `q < 1`.
///
/// Factors are multiplied until `|a q^k| < rel_tol`; the remaining factors
/// are folded in as `exp(-sum_{j>=k} a q^j)` and their second-order error
/// is reported in `abs_err`.
pub fn q_pochhammer_inf(a: f64, q: QBase, policy: &SeriesPolicy) -> Result<Estimate> {
    let qv = q.convergent("(a;q)_inf")?;
    let qd = Dd::new(qv);
    let mut prod = Dd::new(1.0);
    let mut t = Dd::new(a);
    for k in 0..policy.max_terms {
        if t.0.abs() < policy.rel_tol {
            let tail = t.0 / (1.0 - qv);
            let value = prod.value() * (-tail).exp();
            let second = t.0 * t.0 / (1.0 - qv * qv);
            return Ok(Estimate {
                value,
                abs_err: value.abs() * second + value.abs() * f64::EPSILON,
                terms: k,
            });
        }
        let factor = Dd::new(1.0).add(t.neg());
        if factor.0 == 0.0 {
            return Ok(Estimate {
                value: 0.0,
                abs_err: 0.0,
                terms: k + 1,
            });
        }
        prod = prod.mul(factor);
        if !prod.0.is_finite() {
            return Err(Error::Domain(format!(
                "(a;q)_inf overflows double precision for a = {a}, q = {qv}"
            )));
        }
        t = t.mul(qd);
    }
    Err(Error::NotConvergent {
        what: "(a;q)_inf",
        terms: policy.max_terms,
    })
}

/// Complex version of [`q_pochhammer_inf`], without the error estimate.
pub fn q_pochhammer_inf_complex(a: Complex64, q: QBase, policy: &SeriesPolicy) -> Result<Complex64> {
    let qv = q.convergent("(a;q)_inf")?;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut t = a;
    for _ in 0..policy.max_terms {
        if t.norm() < policy.rel_tol {
            return Ok(prod * (-t / (1.0 - qv)).exp());
        }
        prod *= 1.0 - t;
        t *= qv;
    }
    Err(Error::NotConvergent {
        what: "complex (a;q)_inf",
        terms: policy.max_terms,
    })
}

/// `ln (-x; q)_inf = sum_k ln(1 + x q^k)` for `x > -1`.
///
/// Needed wherever `e_q` is evaluated far outside double range, e.g. the
/// large-radius end of the moment-problem lattice.
pub fn ln_phi00(x: f64, q: QBase, policy: &SeriesPolicy) -> Result<f64> {
    let qv = q.convergent("ln (-x;q)_inf")?;
    if x <= -1.0 {
        return Err(Error::Domain(format!("ln (-x;q)_inf needs x > -1, got {x}")));
    }
    let mut acc = 0.0;
    let mut t = x;
    for _ in 0..policy.max_terms {
        if t.abs() < policy.rel_tol {
            return Ok(acc + t / (1.0 - qv));
        }
        acc += t.ln_1p();
        t *= qv;
    }
    Err(Error::NotConvergent {
        what: "ln (-x;q)_inf",
        terms: policy.max_terms,
    })
}

/// `0phi0(x; q) = (-x; q)_inf`, the product form of `e_q(x)`.
pub fn phi00(x: f64, q: QBase, policy: &SeriesPolicy) -> Result<f64> {
    q_pochhammer_inf(-x, q, policy).map(|e| e.value)
}

/// Both evaluations of the q-exponential.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QExponential {
    pub series: f64,
    pub product: f64,
    pub terms: usize,
}

impl QExponential {
    pub fn value(&self) -> f64 {
        self.product
    }
}

/// `e_q(x) = sum_n q^{n(n-1)/2} x^n / (q;q)_n`, cross-checked against
/// `(-x; q)_inf`.
pub fn q_exponential(x: f64, q: QBase, policy: &SeriesPolicy) -> Result<QExponential> {
    let qv = q.convergent("e_q")?;
    let product = phi00(x, q, policy)?;

    let qd = Dd::new(qv);
    let xd = Dd::new(x);
    let one = Dd::new(1.0);
    let mut term = one;
    let mut sum = one;
    let mut abs_sum = 1.0;
    let mut qn = one; // q^n
    let mut terms = 1;
    loop {
        if terms >= policy.max_terms {
            return Err(Error::NotConvergent {
                what: "e_q series",
                terms,
            });
        }
        // t_{n+1} = t_n * x q^n / (1 - q^{n+1})
        let qn1 = qn.mul(qd);
        term = term.mul(xd.mul(qn)).div(one.add(qn1.neg()));
        sum = sum.add(term);
        abs_sum += term.0.abs();
        terms += 1;
        qn = qn1;
        let next_ratio = (x * qn.0 / (1.0 - qn.0 * qv)).abs();
        if next_ratio < 0.5 {
            let tail = term.0.abs() * next_ratio / (1.0 - next_ratio);
            if tail <= policy.rel_tol * abs_sum {
                break;
            }
        }
        if !sum.0.is_finite() {
            return Err(Error::Domain(format!("e_q({x}) overflows")));
        }
    }
    let sum = sum.value();

    let scale = abs_sum.max(product.abs());
    let tol = 10.0 * policy.rel_tol.max(8.0 * f64::EPSILON) * scale;
    if (sum - product).abs() > tol {
        return Err(Error::Consistency {
            what: "e_q series vs product",
            left: sum,
            right: product,
        });
    }
    Ok(QExponential {
        series: sum,
        product,
        terms,
    })
}

/// Gaussian binomial `(q;q)_n / ((q;q)_k (q;q)_{n-k})`, via the product
/// `prod_{i=1}^k (1 - q^{n-k+i}) / (1 - q^i)`.
pub fn q_binomial(n: u32, k: u32, q: QBase) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let q = q.value();
    (1..=k).fold(1.0, |acc, i| {
        acc * (1.0 - q.powi((n - k + i) as i32)) / (1.0 - q.powi(i as i32))
    })
}

/// Jackson derivative `(f(x/q) - f(x)) / (x/q)`.
pub fn jackson_derivative<F>(f: F, x: f64, q: QBase) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if x == 0.0 {
        return Err(Error::Domain("Jackson derivative is undefined at x = 0".into()));
    }
    let xs = x / q.value();
    Ok((f(xs) - f(x)) / xs)
}

/// Finite positive measure made of point masses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    points: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscreteMeasure {
    pub fn new(points: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if points.len() != weights.len() {
            return Err(Error::InconsistentInput(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if points.iter().any(|&p| !(p.is_finite() && p > 0.0)) {
            return Err(Error::InconsistentInput("support points must be finite and > 0".into()));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InconsistentInput("support points must be strictly increasing".into()));
        }
        if weights.iter().any(|&w| !(w.is_finite() && w >= 0.0)) {
            return Err(Error::InconsistentInput("weights must be finite and >= 0".into()));
        }
        Ok(DiscreteMeasure { points, weights })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn moment(&self, n: u32) -> f64 {
        self.integrate(|x| x.powi(n as i32))
    }
}

/// The lattice `{q^k : k_lo <= k <= k_hi}` with the Jackson weights `q^{k-1}`.
///
/// Summing `f` against this measure is the truncated form of
/// [`jackson_integral`].
pub fn jackson_measure(q: QBase, k_lo: i32, k_hi: i32) -> Result<DiscreteMeasure> {
    let qv = q.convergent("Jackson lattice")?;
    if k_lo > k_hi {
        return Err(Error::InconsistentInput(format!("empty lattice range [{k_lo}, {k_hi}]")));
    }
    // ascending points means descending k
    let (points, weights) = (k_lo..=k_hi)
        .rev()
        .map(|k| (qv.powi(k), qv.powi(k - 1)))
        .unzip();
    DiscreteMeasure::new(points, weights)
}

/// Jackson integral over `(0, inf)`:
/// `q^{-1} sum_{l>=0} [q^{1-l} f(q^{1-l}) + q^{l+2} f(q^{l+2})]`,
/// i.e. weight `q^{k-1}` at every lattice point `q^k`, `k` in Z.
///
/// The two directions are summed alternately; each one stops after four
/// consecutive terms below `rel_tol` times the running total.
pub fn jackson_integral<F>(f: F, q: QBase, policy: &SeriesPolicy) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let qv = q.convergent("Jackson integral")?;
    const QUIET_RUN: usize = 4;

    let mut sum = 0.0;
    let mut up = (0i32, 0usize, false); // k >= 0: points q^k <= 1
    let mut down = (-1i32, 0usize, false); // k < 0: points > 1
    let mut evaluated = 0usize;

    while !(up.2 && down.2) {
        for dir in [&mut up, &mut down] {
            if dir.2 {
                continue;
            }
            let k = dir.0;
            let x = qv.powi(k);
            let term = qv.powi(k - 1) * f(x);
            if term.is_nan() {
                return Err(Error::Domain(format!("integrand is NaN at t = {x}")));
            }
            sum += term;
            evaluated += 1;
            if term.abs() <= policy.rel_tol * sum.abs() {
                dir.1 += 1;
                if dir.1 >= QUIET_RUN {
                    dir.2 = true;
                }
            } else {
                dir.1 = 0;
            }
            dir.0 += if k >= 0 { 1 } else { -1 };
            if !sum.is_finite() {
                return Err(Error::NotConvergent {
                    what: "Jackson integral",
                    terms: evaluated,
                });
            }
        }
        if evaluated >= policy.max_terms {
            return Err(Error::NotConvergent {
                what: "Jackson integral",
                terms: evaluated,
            });
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> QBase {
        QBase::new(v).unwrap()
    }

    fn pol() -> SeriesPolicy {
        SeriesPolicy::default()
    }

    // plain product, no tail correction; 400 factors is far past 1e-16 for q <= 0.9
    fn naive_poch_inf(a: f64, qv: f64) -> f64 {
        (0..400).fold(1.0, |acc, k| acc * (1.0 - a * qv.powi(k)))
    }

    #[test]
    fn qbase_rejects_one_and_nonpositive() {
        assert!(QBase::new(1.0).is_err());
        assert!(QBase::new(0.0).is_err());
        assert!(QBase::new(-0.5).is_err());
        assert!(QBase::new(f64::NAN).is_err());
        assert!(QBase::new(2.0).is_ok());
    }

    #[test]
    fn policy_validation() {
        assert!(SeriesPolicy::new(0.0, 10).is_err());
        assert!(SeriesPolicy::new(1e-12, 0).is_err());
        assert!(SeriesPolicy::new(1e-12, 1).is_ok());
    }

    #[test]
    fn q_number_examples() {
        assert_eq!(q_number(q(0.5), 0), 0.0);
        assert_eq!(q_number(q(0.5), 1), 1.0);
        assert_eq!(q_number(q(0.5), 3), 1.75);
        // q > 1 is fine for finite expressions
        assert_eq!(q_number(q(2.0), 3), 7.0);
    }

    #[test]
    fn pochhammer_examples() {
        let p = pol();
        assert_eq!(q_pochhammer(0.3, q(0.5), Order::Finite(0), &p).unwrap(), 1.0);
        assert_eq!(q_pochhammer(0.5, q(0.5), Order::Finite(2), &p).unwrap(), 0.375);
        assert_eq!(q_pochhammer(0.0, q(0.5), Order::Infinite, &p).unwrap(), 1.0);
    }

    #[test]
    fn pochhammer_infinite_needs_q_below_one() {
        let err = q_pochhammer(0.3, q(1.5), Order::Infinite, &pol());
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn pochhammer_infinite_matches_naive_product() {
        for &qv in &[0.3, 0.5, 0.9] {
            for &a in &[-3.0, -0.7, 0.2, 0.9] {
                let est = q_pochhammer_inf(a, q(qv), &pol()).unwrap();
                let naive = naive_poch_inf(a, qv);
                assert!((est.value - naive).abs() <= 1e-14 * naive.abs(), "a={a} q={qv}");
                assert!(est.abs_err < 1e-13 * naive.abs());
            }
        }
    }

    #[test]
    fn pochhammer_budget_exhaustion_is_an_error() {
        let p = SeriesPolicy::new(1e-15, 5).unwrap();
        assert!(matches!(
            q_pochhammer_inf(0.5, q(0.9), &p),
            Err(Error::NotConvergent { .. })
        ));
    }

    #[test]
    fn q_exponential_examples() {
        let p = pol();
        let e0 = q_exponential(0.0, q(0.5), &p).unwrap();
        assert_eq!(e0.series, 1.0);
        assert_eq!(e0.product, 1.0);

        let e1 = q_exponential(1.0, q(0.5), &p).unwrap();
        let oracle = naive_poch_inf(-1.0, 0.5);
        assert!((e1.value() - oracle).abs() < 1e-14 * oracle);
        assert!((e1.series - oracle).abs() < 1e-14 * oracle);

        let em = q_exponential(-1.0, q(0.5), &p).unwrap();
        assert_eq!(em.product, 0.0);
        assert!(em.series.abs() < 1e-14);
    }

    #[test]
    fn phi00_examples() {
        let p = pol();
        assert_eq!(phi00(0.0, q(0.5), &p).unwrap(), 1.0);
        let v = phi00(0.25, q(0.5), &p).unwrap();
        assert!((v - naive_poch_inf(-0.25, 0.5)).abs() < 1e-15 * v);
        assert_eq!(phi00(-1.0, q(0.5), &p).unwrap(), 0.0);
    }

    #[test]
    fn ln_phi00_agrees_with_product() {
        for &x in &[0.0, 0.3, 4.0, 100.0] {
            let direct = phi00(x, q(0.4), &pol()).unwrap();
            let ln = ln_phi00(x, q(0.4), &pol()).unwrap();
            assert!((ln.exp() - direct).abs() < 1e-13 * direct);
        }
        // far outside double range, but finite in log space
        assert!(ln_phi00(1e300, q(0.3), &pol()).unwrap().is_finite());
        assert!(ln_phi00(-1.0, q(0.3), &pol()).is_err());
    }

    #[test]
    fn q_binomial_small_cases() {
        let b = q_binomial(2, 1, q(0.5));
        assert!((b - 1.5).abs() < 1e-15);
        assert_eq!(q_binomial(5, 0, q(0.3)), 1.0);
        assert_eq!(q_binomial(5, 5, q(0.3)), 1.0);
        assert_eq!(q_binomial(3, 4, q(0.3)), 0.0);
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4
        let qv: f64 = 0.7;
        let expect = 1.0 + qv + 2.0 * qv.powi(2) + qv.powi(3) + qv.powi(4);
        assert!((q_binomial(4, 2, q(qv)) - expect).abs() < 1e-14);
    }

    #[test]
    fn jackson_derivative_examples() {
        assert_eq!(jackson_derivative(|_| 3.0, 1.7, q(0.5)).unwrap(), 0.0);
        assert_eq!(jackson_derivative(|x| x, 1.0, q(0.5)).unwrap(), 0.5);
        assert!(jackson_derivative(|x| x, 0.0, q(0.5)).is_err());
    }

    #[test]
    fn jackson_derivative_of_monomial_is_scaled_power() {
        // D x^n * x / x^n = (q^{-n} - 1) q, independent of x
        let qv: f64 = 0.6;
        for n in 0..8 {
            let expect = (qv.powi(-n) - 1.0) * qv;
            for &x in &[0.3, 1.0, 2.5] {
                let d = jackson_derivative(|t| t.powi(n), x, q(qv)).unwrap();
                assert!((d * x / x.powi(n) - expect).abs() < 1e-13 * (1.0 + expect));
            }
        }
    }

    #[test]
    fn jackson_derivative_fixes_e_q() {
        let p = pol();
        let qv: f64 = 0.5;
        for k in -8..=8 {
            let x = qv.powi(k);
            let eq = |t: f64| phi00(t, q(qv), &p).unwrap();
            let d = jackson_derivative(eq, x, q(qv)).unwrap();
            assert!((d - eq(x)).abs() < 1e-12 * eq(x), "k={k}");
        }
    }

    #[test]
    fn jackson_measure_layout() {
        let m = jackson_measure(q(0.5), -2, 2).unwrap();
        assert_eq!(m.points(), &[0.25, 0.5, 1.0, 2.0, 4.0]);
        assert_eq!(m.weights(), &[0.5, 1.0, 2.0, 4.0, 8.0]);
        assert!(jackson_measure(q(0.5), 2, 1).is_err());
    }

    #[test]
    fn jackson_integral_of_zero() {
        assert_eq!(jackson_integral(|_| 0.0, q(0.5), &pol()).unwrap(), 0.0);
    }

    #[test]
    fn jackson_integral_moment_ratio() {
        let p = pol();
        let qv = 0.5;
        let inv = |t: f64| (-ln_phi00(t / qv, q(qv), &p).unwrap()).exp();
        let i0 = jackson_integral(inv, q(qv), &p).unwrap();
        let i1 = jackson_integral(|t| t * inv(t), q(qv), &p).unwrap();

        // lattice-sum oracle: explicit bilateral sum over a generous window
        let oracle: f64 = (-80..=200)
            .map(|k| {
                let t = qv.powi(k);
                qv.powi(k - 1) / naive_poch_inf(-t / qv, qv)
            })
            .filter(|v| v.is_finite())
            .sum();
        assert!((i0 - oracle).abs() < 1e-13 * oracle);
        assert!((i1 / i0 - (1.0 - qv)).abs() < 1e-13);
    }

    #[test]
    fn jackson_integral_budget() {
        let p = SeriesPolicy::new(1e-15, 20).unwrap();
        assert!(matches!(
            jackson_integral(|t| 1.0 / (1.0 + t * t), q(0.9), &p),
            Err(Error::NotConvergent { .. })
        ));
    }

    #[test]
    fn discrete_measure_validation() {
        assert!(DiscreteMeasure::new(vec![1.0, 2.0], vec![1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![2.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(DiscreteMeasure::new(vec![1.0, 2.0], vec![-1.0, 1.0]).is_err());
        let m = DiscreteMeasure::new(vec![1.0, 2.0], vec![0.5, 0.25]).unwrap();
        assert_eq!(m.total_mass(), 0.75);
        assert_eq!(m.moment(2), 0.5 + 1.0);
    }
}
