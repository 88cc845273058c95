// Zipf sweeps written as CSV.
//
// Run with `cargo run --release --example experiments`.

use sortition::experiments::{default_alpha_grid, sweep_lambda_vs_alpha, sweep_lambda_vs_s, sweep_m_max, write_csv};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = std::io::stdout().lock();

    let rows = sweep_m_max(1000, &[0.0, 0.5, 1.0]);
    write_csv(&rows, &mut out)?;

    let rows = sweep_lambda_vs_s(1000, 20, &[0.0, 1.0], &default_alpha_grid())?;
    write_csv(&rows, &mut out)?;

    let rows = sweep_lambda_vs_alpha(1000, 20, 1.0, &[0.05, 0.25, 0.45, 0.65])?;
    write_csv(&rows, &mut out)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("experiments example");
}
