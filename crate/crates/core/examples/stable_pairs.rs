// Stable pairs from one chain of rotation eliminations.

use popcrit::model::parse_instance;
use popcrit::stable_pairs::{all_stable_matchings, exposed_rotations, rotation_chain, stable_pairs};

const TEXT: &str = "\
men m1 m2 m3
women w1 w2 w3
pref m1: w1 w2 w3
pref m2: w2 w3 w1
pref m3: w3 w1 w2
pref w1: m2 m3 m1
pref w2: m3 m1 m2
pref w3: m1 m2 m3
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(TEXT)?;
    for (i, m) in rotation_chain(&inst).iter().enumerate() {
        println!("step {i}: {}", m.display(&inst));
        for r in exposed_rotations(&inst, m) {
            let pairs: Vec<String> = r
                .pairs
                .iter()
                .map(|e| format!("({}, {})", inst.man_name(e.man), inst.woman_name(e.woman)))
                .collect();
            println!("  exposed rotation {}", pairs.join(" "));
        }
    }
    let pairs = stable_pairs(&inst);
    println!("{} stable pairs across {} stable matchings", pairs.len(), all_stable_matchings(&inst).len());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
