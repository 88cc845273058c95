// Systematic sampling on the unit circle.
//
// Run with `cargo run --example stitch`.

use sortition::{PrngStream, Sortition, Stitch, StitchConfig, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let weights = WeightVector::new(&[0.1, 0.1, 0.2, 0.25, 0.35])?;
    let stitch = Stitch::new(weights.clone(), StitchConfig::new(2))?;

    // Intervals are [0, .1) [.1, .2) [.2, .4) [.4, .65) [.65, 1); points
    // 0.05 and 0.55 hit participants 0 and 3.
    let fixed = stitch.committee_at(0.05)?;
    assert_eq!(fixed.members(), vec![0, 3]);

    let mut stream = PrngStream::new(42);
    for _ in 0..3 {
        let committee = stitch.select(&mut stream)?;
        println!("members {:?}", committee.members());
    }

    let report = stitch.report();
    println!("lambda = {} (M * min w)", report.lambda);
    assert!((report.lambda - 0.2).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("stitch example");
}
