//! Continue the series past its radius, locate the critical point and
//! build the deformation that makes the origin infinitely far away.

use conformal::yamabe_ode::shoot::default_solution;
use conformal::yamabe_ode::{find_rho, rho_tilde_closed, v_deformation, w_recurrence};

fn main() -> conformal::Result<()> {
    let s = w_recurrence(60);
    let sol = default_solution(&s, 0.1, 1e-3)?;
    let cp = find_rho(&sol)?;
    println!("rho = {:.9}, v(rho) = {:.9}, rho~ = {:.9}", cp.rho, cp.v, rho_tilde_closed());
    let d = v_deformation(&s, &sol, 0.5)?;
    println!("Lambda = {:.9}, Rbar = {:.9}, jump of V'' = {:.6}", d.lambda, d.rbar, d.second_derivative_jump);
    println!(
        "proper time ~ {:.6} log(1/eps), expected {:.6}",
        d.proper_time.slope, d.proper_time.expected_slope
    );
    Ok(())
}
