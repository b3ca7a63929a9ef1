//! Run a named experiment and print its checks.

use conformal::experiments::{run, EXPERIMENTS};

fn main() -> conformal::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "decompose".into());
    if !EXPERIMENTS.contains(&name.as_str()) {
        eprintln!("experiments: {}", EXPERIMENTS.join(", "));
        std::process::exit(2);
    }
    let r = run(&name)?;
    for c in &r.checks {
        println!("{} {:<60} {}", if c.pass { "ok  " } else { "FAIL" }, c.name, c.got);
    }
    Ok(())
}
