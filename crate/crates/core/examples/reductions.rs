// Build G′ and G″, run deferred acceptance on them, and map the stable
// matchings back to the original instance.

use popcrit::gale_shapley::{is_stable, propose_man_optimal};
use popcrit::leveling::assign_levels_min;
use popcrit::model::{parse_instance, serialize_instance};
use popcrit::reductions::{build, ReductionKind};

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
    for kind in [ReductionKind::GPrime, ReductionKind::GDoublePrime] {
        let red = build(&inst, kind)?;
        print!("{}:\n{}", kind.name(), serialize_instance(red.inst()));
        let stable = propose_man_optimal(red.inst());
        let image = red.image(&stable)?;
        let levels = red.image_levels(&stable)?;
        println!("image {}", image.display(&inst));
        print!("{}", levels.to_lines(&inst));
    }

    // Going back: level the matching, then rebuild the stable matching of G′.
    let red = build(&inst, ReductionKind::GPrime)?;
    let m = popcrit::Matching::from_names(&inst, &[("m2", "w1")])?;
    let lv = assign_levels_min(&inst, &m)?;
    let pre = red.preimage(&m, &lv)?;
    assert!(is_stable(red.inst(), &pre));
    println!("preimage in G′: {}", pre.display(red.inst()));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
