// Cumulative rejection sampling with calibrated acceptance weights.
//
// Run with `cargo run --example crs`.

use sortition::crs::crs_weight_bounds;
use sortition::{CumulativeRejection, Error, PrngStream, Sortition, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (lo, hi) = crs_weight_bounds(8, 3);
    println!("weights must lie in [{lo:.4}, {hi:.4}] for N = 8, M = 3");

    let weights = WeightVector::new(&[0.11, 0.12, 0.12, 0.125, 0.125, 0.13, 0.13, 0.14])?;
    let crs = CumulativeRejection::new(weights, 3)?;
    println!("acceptance weights p = {:?}", crs.crs_weights().p);

    let mut stream = PrngStream::new(7);
    let committee = crs.select(&mut stream)?;
    println!("members {:?} after {} rounds", committee.members(), committee.rounds);
    println!("lambda = {}", crs.lambda());

    let skewed = WeightVector::new(&[10.0, 1.0, 1.0, 1.0, 1.0, 1.0])?;
    match CumulativeRejection::new(skewed, 3) {
        Err(e @ Error::InfeasibleWeights(_)) => println!("rejected: {e}"),
        other => return Err(format!("expected infeasibility, got {other:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("crs example");
}
