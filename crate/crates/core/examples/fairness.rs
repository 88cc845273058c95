// Exact and Monte Carlo fairness checks.
//
// Run with `cargo run --release --example fairness`.

use sortition::oracle::{enumerate_rec_law, wrs_expected_power_exact};
use sortition::{
    empirical_fairness, ElectoralCollege, IntegerWeightVector, Stitch, StitchConfig, WeightVector, WrsConfig,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let weights = WeightVector::new(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])?;

    let law = enumerate_rec_law(&weights, 3)?;
    println!(
        "rec: {} committees, expected power {:?}",
        law.support.len(),
        law.expected_power
    );

    let stakes = IntegerWeightVector::new(vec![1, 2, 3, 5, 8])?;
    let exact = wrs_expected_power_exact(&stakes, &WrsConfig::new(2, 0.4)?)?;
    let shown: Vec<String> = exact.iter().map(ToString::to_string).collect();
    println!("wrs exact expected power {shown:?}");

    let stitch = Stitch::new(weights, StitchConfig::new(3))?;
    let result = empirical_fairness(&stitch, 50_000, 1)?;
    println!("stitch: max deviation {:.2} sigma", result.max_sigma_deviation);
    assert!(result.passes(5.0));

    let rec = ElectoralCollege::new(WeightVector::new(&[1.0, 1.0, 3.0, 5.0])?, 2)?;
    println!(
        "rec: max deviation {:.2} sigma",
        empirical_fairness(&rec, 50_000, 2)?.max_sigma_deviation
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("fairness example");
}
