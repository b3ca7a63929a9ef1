//! Corrections of the Duffing-form asymptotic series and how fast their
//! residuals decay at both ends.

use conformal::duffing_asymptotics::{AsymptoticSeries, TGrid};

fn main() -> conformal::Result<()> {
    let mut s = AsymptoticSeries::leading(TGrid::new(60.0, 4096)?);
    for _ in 0..4 {
        let rep = s.residual_decay()?;
        println!(
            "n = {}: log-slopes {:>8.3} (t -> -inf) {:>8.3} (t -> +inf), bound {:.1}",
            rep.n, rep.slopes.0, rep.slopes.1, rep.bound
        );
        s = s.correction_step()?;
    }
    Ok(())
}
