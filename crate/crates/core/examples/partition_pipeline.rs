// A popular feasible matching that is neither minimum-size nor dominant,
// split into three parts and transformed both ways.

use popcrit::model::parse_instance;
use popcrit::partition::{run_partition, Part};
use popcrit::Matching;

const TEXT: &str = "\
men a1 a2 a3 a4
women b1 b2 b3 b4
pref a1: b1 b2
pref a2: b1
pref a3: b3 b4
pref a4: b3
pref b1: a1 a2
pref b2: a1
pref b3: a3 a4
pref b4: a3
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(TEXT)?;
    let m = Matching::from_names(&inst, &[("a1", "b1"), ("a3", "b4"), ("a4", "b3")])?;
    let out = run_partition(&inst, &m)?;

    let names = |vs: &[popcrit::Vertex]| vs.iter().map(|&v| inst.vertex_name(v)).collect::<Vec<_>>();
    for c in &out.paths.sraps {
        println!("size-reducing path   {:?}", names(&c.vertices));
    }
    for c in &out.paths.siaps {
        println!("size-increasing path {:?}", names(&c.vertices));
    }
    for part in [Part::D, Part::M, Part::R] {
        println!("part {}: {:?}", part.name(), names(&out.partition.vertices(part)));
    }
    assert!(out.cross_violations.is_empty());
    println!("minimum-size: {}", out.min_size.display(&inst));
    println!("dominant:     {}", out.dominant.display(&inst));

    let e = inst.edge_by_names("a3", "b4")?;
    println!("(a3, b4) survives in {}", out.preserving(e).expect("matched edge").display(&inst));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
