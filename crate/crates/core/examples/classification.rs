use qdeform::catalog::UnifiedParams;
use qdeform::repclass::{casimir_values, classify, RepParams};

fn main() -> qdeform::Result<()> {
    let u = UnifiedParams::new(0.5, 0.0, 0.0, 1.0, 0.5)?;
    for (lambda0, b) in [(0.0, -1.0), (0.0, 1.0), (1.0, 0.4), (-3.0, 0.2)] {
        let params = RepParams::new(u, lambda0, 0.0, b)?;
        match classify(&params, 60) {
            Ok(c) => {
                let head: Vec<f64> = (0..6).filter_map(|n| c.lambda.get(n)).collect();
                println!("lambda0 = {lambda0:5}, B = {b:5}: {:?}, window {:?}, lambda {head:.4?}", c.case, c.window);
                if let Some(lw) = c.lowest_weight_params() {
                    println!("    casimirs {:?}", casimir_values(&lw));
                }
            }
            Err(e) => println!("lambda0 = {lambda0:5}, B = {b:5}: {e}"),
        }
    }
    Ok(())
}
