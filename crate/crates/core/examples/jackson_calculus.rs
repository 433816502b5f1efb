use qdeform::qcalc::{jackson_derivative, jackson_integral, q_exponential, QBase, SeriesPolicy};

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.5)?;
    let p = SeriesPolicy::default();
    let e = |x: f64| q_exponential(x, q, &p).map(|e| e.value()).unwrap_or(f64::NAN);
    for k in [-3, 0, 2, 5] {
        let x = 0.5f64.powi(k);
        println!("x = {x:8}: D_q e_q = {:.15e}  e_q = {:.15e}", jackson_derivative(e, x, q)?, e(x));
    }
    let d = jackson_derivative(|x| x.powi(4), 1.3, q)?;
    let qv = q.value();
    println!("D_q x^4 at 1.3 = {d:.15}  q (q^-4 - 1) 1.3^3 = {:.15}", qv * (qv.powi(-4) - 1.0) * 1.3f64.powi(3));

    let e0 = q_exponential(1.0, q, &p)?;
    println!("e_q(1): series {} product {} ({} terms)", e0.series, e0.product, e0.terms);
    let i0 = jackson_integral(|t| 1.0 / e(t / q.value()), q, &p)?;
    let i1 = jackson_integral(|t| t / e(t / q.value()), q, &p)?;
    println!("I1 / I0 = {:.15}  (1 - q) = {}", i1 / i0, 1.0 - q.value());
    Ok(())
}
