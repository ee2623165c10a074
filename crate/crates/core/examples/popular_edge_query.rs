// Which edges lie in some popular feasible matching, with a witness for
// each one that does.

use popcrit::model::parse_instance;
use popcrit::popular_edge::PopularEdgeSolver;

const TEXT: &str = "\
men a1 a2
women b1 b2
pref a1: b1 b2
pref a2: b1
pref b1: a1 a2
pref b2: a1
";

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let inst = parse_instance(TEXT)?;
    let solver = PopularEdgeSolver::new(&inst)?;
    for e in inst.edges() {
        let d = solver.decide(e)?;
        let pair = format!("({}, {})", inst.man_name(e.man), inst.woman_name(e.woman));
        match solver.witness(e)? {
            Some(w) => println!("{pair}: yes via {}, e.g. {}", d.via.name(), w.matching.display(&inst)),
            None => println!("{pair}: no"),
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
