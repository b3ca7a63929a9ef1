//! Norms and Hölder pairings of sampled densities.

use std::sync::Arc;

use conformal::density::{holder_pairing, DensityField};
use conformal::grid::RadialGrid;

fn main() -> conformal::Result<()> {
    let grid = Arc::new(RadialGrid::simpson(0.0, 1.0, 1025)?);
    // φ(x) = x with exponent n/s = 2 gives (1/3)^{1/2}
    let phi = DensityField::from_fn(2.0, 4, grid.clone(), |x| x)?;
    println!("||x||_2 = {:.12}  (1/3)^(1/2) = {:.12}", phi.density_norm()?, (1.0f64 / 3.0).sqrt());

    for s in [0.5, 1.0, 2.0, 3.0] {
        let a = DensityField::from_fn(s, 4, grid.clone(), |x| 1.0 + x * x)?;
        let b = DensityField::from_fn(4.0 - s, 4, grid.clone(), |x| (3.0 * x).cos().abs() + 0.1)?;
        let p = holder_pairing(&a, &b)?;
        println!("s = {s}: int phi psi = {:.6} <= {:.6}", p.value, p.bound);
    }

    let bad = DensityField::from_fn(1.0, 4, grid.clone(), |_| 1.0)?;
    let heavy = DensityField::from_fn(4.0, 4, grid, |_| 1.0)?;
    println!("weights 1 + 4 in dimension 4: {:?}", holder_pairing(&bad, &heavy).err());
    Ok(())
}
