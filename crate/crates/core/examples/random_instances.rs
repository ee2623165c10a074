// Seeded instance generation; the same spec always gives the same text.

use popcrit::model::{generate_random, serialize_instance, GenSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let spec: GenSpec = "men=3,women=4,density=0.7,critical=2,seed=42".parse()?;
    let a = serialize_instance(&generate_random(&spec)?);
    let b = serialize_instance(&generate_random(&spec)?);
    assert_eq!(a, b);
    print!("{a}");

    // Asking for more critical men than can be matched fails after a bounded
    // number of draws.
    let impossible = GenSpec::new(3, 1, 1.0, 3, 0);
    println!("{}", generate_random(&impossible).unwrap_err());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
