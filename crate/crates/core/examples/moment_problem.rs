use qdeform::coherent::{completeness_check, moment_target, weight_measure};
use qdeform::qcalc::QBase;

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.5)?;
    let sol = weight_measure(q, 60)?;
    println!("lattice k in [{}, {}], I0 = {:.12}", sol.k_lo, sol.k_hi, sol.i0);
    for n in 0..8 {
        let target = moment_target(n, q)?;
        let got = sol.moment(n);
        println!("m_{n}: target {target:.12e}  measured {got:.12e}  rel {:.1e}", (got / target - 1.0).abs());
    }
    let g = completeness_check(q, 6, 60)?;
    let dev = (&g - nalgebra::DMatrix::identity(g.nrows(), g.ncols())).amax();
    println!("resolution of unity on 7 states: max |G - I| = {dev:.2e}");
    Ok(())
}
