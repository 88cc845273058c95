// Representative electoral college.
//
// Run with `cargo run --example rec`.

use sortition::{ElectoralCollege, PrngStream, Sortition, WeightVector};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let weights = WeightVector::new(&[0.1, 0.1, 0.2, 0.25, 0.35])?;
    let rec = ElectoralCollege::new(weights, 2)?;
    let partition = rec.partition();
    println!("groups {:?} with powers {:?}", partition.groups, partition.group_powers);

    let mut stream = PrngStream::new(9);
    let committee = rec.select(&mut stream)?;
    for seat in &committee.seats {
        println!("participant {} holds {:.2} of the vote", seat.index, seat.voting_power);
    }
    assert!((rec.lambda() - 0.25).abs() < 1e-12);
    println!("lambda = {}", rec.lambda());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("rec example");
}
