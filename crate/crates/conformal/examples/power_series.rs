//! Exact coefficients of the regular interior solution and their radius
//! of convergence.

use conformal::yamabe_ode::series::format_rational;
use conformal::yamabe_ode::{printed_w2, radius_estimate, w_equation_residual, w_recurrence};

fn main() {
    let s = w_recurrence(60);
    for (k, c) in s.coefficients().iter().take(5).enumerate() {
        println!("w_{k} = {}", format_rational(c));
    }
    println!("printed w_2 = {}", format_rational(&printed_w2()));
    println!("first nonzero residual order: {:?}", w_equation_residual(&s).order);
    let est = radius_estimate(&s.coefficients_f64());
    println!("radius {:?}, exponent {:?}, R^2 {:?}", est.radius, est.exponent, est.r_squared);
}
