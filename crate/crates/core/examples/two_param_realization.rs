use qdeform::catalog::{structure_two_param, TwoParamParams};
use qdeform::fockrep::{coordinate_realization_residual, CoordinateRealization, PolyVector};

fn main() -> qdeform::Result<()> {
    let params = TwoParamParams::new(1.5, 0.5, 0.5, 0.1, 1)?;
    let f: Vec<f64> = (0..6).map(|n| structure_two_param(&params, n)).collect();
    println!("structure function {f:.6?}");

    let real = CoordinateRealization::new(params)?;
    let v = PolyVector::monomial(3);
    let down = real.annihilate(&v);
    let up = real.create(&down);
    println!("a x^3 = {:?}", (-2..=4).map(|e| down.coeff(e)).collect::<Vec<_>>());
    println!("a+ a x^3 = {:?}", (-2..=6).map(|e| up.coeff(e)).collect::<Vec<_>>());
    println!("relation residual up to degree 12: {:.2e}", coordinate_realization_residual(&params, 12)?);
    Ok(())
}
