// Run the differential suite on a handful of random instances.

use popcrit::model::{generate_random, GenSpec};
use popcrit::oracle::{analyze, DEFAULT_EDGE_CAP};
use popcrit::verify::differential_suite;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let base: GenSpec = "men=4,women=4,density=0.6,critical=1".parse()?;
    for seed in 0..5 {
        let inst = generate_random(&base.with_seed(seed))?;
        let a = analyze(&inst, DEFAULT_EDGE_CAP)?;
        let report = differential_suite(&inst, DEFAULT_EDGE_CAP)?;
        let failed: Vec<&str> = report.properties.iter().filter(|p| !p.passed()).map(|p| p.name).collect();
        println!(
            "seed {seed}: {} feasible, {} popular, {} popular edges, failed {:?}",
            a.feasible.len(),
            a.popular.len(),
            a.popular_edges.len(),
            failed
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
