// Level assignments as certificates: compute one, inspect the promotions,
// and watch the checker reject a broken one.

use popcrit::leveling::{assign_levels_traced, check_conditions, LevelMode};
use popcrit::model::parse_instance;
use popcrit::reductions::LevelAssignment;
use popcrit::Matching;

const TEXT: &str = "\
men m1 m2
women w1
critical m2
pref m1: w1
pref m2: w1
pref w1: m1 m2
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(TEXT)?;
    let m = Matching::from_names(&inst, &[("m2", "w1")])?;
    for mode in [LevelMode::Min, LevelMode::Dom] {
        let (lv, trace) = assign_levels_traced(&inst, &m, mode)?;
        println!("{mode:?}:");
        for p in &trace {
            let e = p.edge;
            println!("  phase {} on ({}, {}): {} -> {}", p.phase, inst.man_name(e.man), inst.woman_name(e.woman), p.from, p.to);
        }
        print!("{}", lv.to_lines(&inst));
        assert!(check_conditions(&inst, &m, &lv, mode).passed());
    }

    let flat = LevelAssignment::zeros(&inst);
    let report = check_conditions(&inst, &m, &flat, LevelMode::Min);
    let v = report.first_violation().expect("all-zero levels are not a certificate");
    println!("all zeros: condition {} fails: {}", v.condition.key(), v.detail);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
