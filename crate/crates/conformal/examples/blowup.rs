//! Split symmetric forms into a unimodular part and a density, then act
//! on the pair with a gauge factor.

use conformal::density::{decompose_form, gauge_act, reconstruct, SymmetricForm};

fn main() -> conformal::Result<()> {
    for entries in [[4.0, 1.0, 1.0, 1.0], [1.0, -1.0, -1.0, -1.0], [2.0, 3.0, 5.0, 7.0]] {
        let q = SymmetricForm::diagonal(&entries)?;
        let b = decompose_form(&q)?;
        println!(
            "q = diag{entries:?}  signature {}  density {:.12}  |det g| {:.3e}",
            q.signature(),
            b.density,
            b.unimodular.determinant().abs()
        );
        for u in [2.0, -1.0, 0.3] {
            let (g, phi) = gauge_act(u, &b.unimodular, b.density)?;
            let again = decompose_form(&reconstruct(&g, phi))?;
            println!(
                "  u = {u:>4}: density after action {phi:.6}, back on the orbit {:.1e}",
                again.unimodular.relative_distance(&b.unimodular)
            );
        }
    }
    Ok(())
}
