// Coalitions holding at most half of λ never control a committee.
//
// Run with `cargo run --release --example honest_majority`.

use sortition::metrics::coalition_within;
use sortition::{honest_majority_check, Error, Sortition, Stitch, StitchConfig, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let weights = WeightVector::new(&[1.0; 20])?;
    let stitch = Stitch::new(weights.clone(), StitchConfig::new(5))?;
    let tolerance = stitch.report().adversary_tolerance;
    println!("adversary tolerance = {tolerance}");

    let adversary = coalition_within(&weights, 0..20, tolerance);
    let verdict = honest_majority_check(&stitch, &adversary, 10_000, 5)?;
    println!(
        "{} adversaries, worst share of the vote {:.2}",
        adversary.len(),
        verdict.max_adversarial_power
    );

    let too_big: Vec<usize> = (0..adversary.len() + 1).collect();
    match honest_majority_check(&stitch, &too_big, 10, 5) {
        Err(Error::PreconditionViolated(msg)) => println!("refused: {msg}"),
        other => return Err(format!("expected refusal, got {other:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("honest majority example");
}
