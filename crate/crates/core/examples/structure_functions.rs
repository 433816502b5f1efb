use qdeform::catalog::{DeformationKind, StructureSeq, UnifiedParams};
use qdeform::qcalc::QBase;

fn main() -> qdeform::Result<()> {
    let q = QBase::new(0.5)?;
    let kinds = [
        ("arik-coon", DeformationKind::ArikCoon { q }),
        ("biedenharn-macfarlane", DeformationKind::BiedenharnMacfarlane { q }),
        ("nu-modified", DeformationKind::NuModified { nu: 0.3 }),
        ("unified", DeformationKind::Unified(UnifiedParams::new(0.7, 0.3, -0.2, 1.4, 0.1)?)),
    ];
    for (name, kind) in kinds {
        let closed = StructureSeq::closed(kind).values(6);
        let rec = StructureSeq::recurrence(kind)?.values(6);
        let diff = closed.iter().zip(&rec).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("{name:>22}: {closed:.6?}  max |closed - recurrence| = {diff:.1e}");
    }
    Ok(())
}
