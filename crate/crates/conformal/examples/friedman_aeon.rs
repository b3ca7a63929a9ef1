//! Hypervolume of one cycle of the closed dust model.

use conformal::friedman::{aeon_volume, beta_half};

fn main() -> conformal::Result<()> {
    let v = aeon_volume(1.0, 4096)?;
    println!("volume          {:.9}", v.value);
    println!("Beta closed form {:.9}  (35/32) pi^3", v.beta_closed_form);
    println!("printed form    {:.9}  (5/4) pi^3, gap {:.3}%", v.printed_closed_form, 100.0 * v.rel_gap);
    println!("B(7/2, 1/2)     {:.12}", beta_half(2.5)?);
    Ok(())
}
