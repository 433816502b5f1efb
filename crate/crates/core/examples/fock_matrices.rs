use qdeform::catalog::{DeformationKind, StructureSeq, UnifiedParams};
use qdeform::fockrep::{build_finite, build_lowest_weight, full_report, spectrum};
use qdeform::qcalc::QBase;
use qdeform::repclass::{classify, RepParams};

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.6)?;
    let kind = DeformationKind::ArikCoon { q };
    let quad = build_lowest_weight(&StructureSeq::closed(kind), 0.0, 1.0, 12)?;
    let params = kind.to_unified().expect("arik-coon is a unified member");
    let report = full_report(&quad, &params)?;
    println!("arik-coon dim {}: relation residual {:.2e}", quad.dim, report.relation_residual);
    println!("    casimir residuals {:?}", report.casimir_residuals);
    let h = &quad.a_dag * &quad.a;
    println!("    spectrum of a+a {:.5?}", &spectrum(&h)?[..5]);

    let u = UnifiedParams::new(0.5, 0.0, 0.0, 1.0, 0.5)?;
    let class = classify(&RepParams::new(u, 0.0, 0.0, -1.0)?, 40)?;
    let quad = build_finite(&class)?;
    let report = full_report(&quad, &u)?;
    println!("{:?} dim {}: relation residual {:.2e}", class.case, quad.dim, report.relation_residual);
    Ok(())
}
