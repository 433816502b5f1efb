use qdeform::qcalc::QBase;
use qdeform::qhermite::{gram_target, hermite_explicit, hermite_family, orthogonality_check, OrthoSystem};

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.5)?;
    let family = hermite_family(5, q);
    for (n, p) in family.iter().enumerate() {
        let x = 0.7;
        println!("h_{n}({x}) = {:+.12}  explicit {:+.12}", p.eval(x), hermite_explicit(n as u32, q, x));
    }

    let gram = orthogonality_check(q, 6)?;
    let mut off = 0.0f64;
    let mut diag = 0.0f64;
    for i in 0..gram.nrows() {
        for j in 0..gram.ncols() {
            if i == j {
                diag = diag.max((gram[(i, i)] / gram_target(q, i as u32) - 1.0).abs());
            } else {
                off = off.max(gram[(i, j)].abs());
            }
        }
    }
    println!("gram: max diagonal rel err {diag:.2e}, max off-diagonal {off:.2e}");

    let sys = OrthoSystem::new(q)?;
    let ev = sys.jacobi(8).symmetric_eigenvalues();
    println!("jacobi(8) eigenvalues {:.4?}", ev.as_slice());
    Ok(())
}
