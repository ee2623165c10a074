// Parse an instance, check feasibility, and move critical vertices to the
// men's side.

use popcrit::model::{feasible_matching, has_feasible, normalize_critical_side, parse_instance, serialize_instance};

const TEXT: &str = "\
# w2 has to be matched; her only neighbor is m1
men m1 m2
women w1 w2
critical w2
pref m1: w1 w2
pref m2: w1
pref w1: m2 m1
pref w2: m1
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(TEXT)?;
    println!("{} men, {} women, {} edges", inst.n_men(), inst.n_women(), inst.n_edges());
    println!("critical side: {:?}", inst.critical_side());

    assert!(has_feasible(&inst));
    let m = feasible_matching(&inst).expect("feasible");
    println!("a feasible matching: {}", m.display(&inst));

    let (norm, swapped) = normalize_critical_side(&inst);
    assert!(swapped);
    print!("normalized:\n{}", serialize_instance(&norm));

    // Mistakes are reported with the offending line.
    let err = parse_instance("men m1\nwomen w1\npref m1: w1\npref w1: m2\n").unwrap_err();
    println!("rejected: {err}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
