// Minimum-size popular feasible matching and dominant feasible matching of
// a random instance, and how they vote against each other.

use popcrit::model::{generate_random, GenSpec};
use popcrit::popular_edge::PopularEdgeSolver;
use popcrit::voting::{symmetric_difference, tally};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = generate_random(&GenSpec::new(6, 6, 0.5, 2, 17))?;
    let solver = PopularEdgeSolver::new(&inst)?;
    let min = solver.min_size_pfm()?;
    let dom = solver.dominant_fm()?;
    println!("min-size  ({}): {}", min.len(), min.display(&inst));
    println!("dominant  ({}): {}", dom.len(), dom.display(&inst));
    assert!(min.len() <= dom.len());

    let t = tally(&inst, &dom, &min);
    println!("dominant vs min-size: {} to {}", t.for_first, t.for_second);
    for c in symmetric_difference(&inst, &min, &dom) {
        let names: Vec<&str> = c.vertices.iter().map(|&v| inst.vertex_name(v)).collect();
        println!("  {:?} {:?}: (+1,+1) x{}, (-1,-1) x{}", c.kind, names, c.plus_plus, c.minus_minus);
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
