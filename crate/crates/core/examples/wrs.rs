// Weighted rejection sampling with exact subset counts.
//
// Run with `cargo run --example wrs`.

use sortition::wrs::{Count, WrsWeights};
use sortition::{IntegerWeightVector, PrngStream, Sortition, WeightedRejection, WrsConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let stakes = IntegerWeightVector::new(vec![1, 1, 2, 4])?;
    let config = WrsConfig::new(2, 0.5)?;
    println!("threshold V = {}", config.threshold(stakes.total()));

    // Only pairs containing the stake-4 participant reach V = 4.
    let wrs = WrsWeights::new(&stakes, &config)?;
    let expect: Vec<Count> = [1u64, 1, 1, 3].iter().map(|&c| Count::from(c)).collect();
    assert_eq!(wrs.counts, expect);
    println!("p = {:?}", wrs.p);

    let sampler = WeightedRejection::new(stakes, config)?;
    let mut stream = PrngStream::new(3);
    for _ in 0..3 {
        let committee = sampler.select(&mut stream)?;
        let powers: Vec<f64> = committee.seats.iter().map(|s| s.voting_power).collect();
        println!("members {:?} powers {powers:?}", committee.members());
    }
    println!("lambda >= {}", sampler.lambda_bound());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("wrs example");
}
