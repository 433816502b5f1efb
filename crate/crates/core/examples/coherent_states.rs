use num_complex::Complex64;
use qdeform::coherent::{coherent_state, normalization_sq, overlap_closed};
use qdeform::qcalc::{QBase, SeriesPolicy};

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.5)?;
    let z = Complex64::new(0.6, -0.3);
    let w = Complex64::new(0.2, 0.4);
    let s = coherent_state(z, q, 1e-24)?;
    let t = coherent_state(w, q, 1e-24)?;
    println!("|z> with {} terms, eigen residual {:.2e}", s.len(), s.eigen_residual()?);
    println!("first coefficients {:.6?}", &s.coeffs[..4]);

    let closed = overlap_closed(z, w, q)?;
    println!("<z|w> series {:.12}  closed {:.12}", s.overlap(&t), closed);

    let n = normalization_sq(z.norm_sqr(), q, &SeriesPolicy::default())?;
    println!("normalization {n:?}");
    Ok(())
}
