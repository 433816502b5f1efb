use qdeform::kerr::{deviation_scaling, kerr_spectrum, matched_spectrum, KerrParams, Matcher};

fn main() -> qdeform::Result<()> {
    let params = KerrParams::new(1.0, 1e-3)?;
    let kerr = kerr_spectrum(&params, 5);
    for matcher in [Matcher::Equal, Matcher::Nu0, Matcher::EqualBalanced] {
        let deformed = matched_spectrum(&params, matcher, 5)?;
        println!("{matcher:?}");
        for (n, (k, d)) in kerr.iter().zip(&deformed).enumerate() {
            println!("    n = {n}: kerr {k:.10}  deformed {d:.10}  diff {:+.3e}", d - k);
        }
        let s = deviation_scaling(&params, matcher, 5)?;
        println!("    dev(kappa) / dev(kappa/2) = {:.4}  quadratic: {}", s.ratio, s.in_band);
    }
    Ok(())
}
