// Drive the command-line front end in-process.

use popcrit::cli::run;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("popcrit-cli-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let file = dir.join("i3.txt");
    std::fs::write(&file, "men m1 m2\nwomen w1\ncritical m2\npref m1: w1\npref m2: w1\npref w1: m1 m2\n")?;
    let path = file.to_string_lossy().into_owned();

    for args in [
        vec!["edge", &path, "m2", "w1", "--witness"],
        vec!["edge", &path, "m1", "w1"],
        vec!["solve", &path, "--objective", "dominant"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("popcrit").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ popcrit {} -> exit {code}\n{}", args.join(" "), String::from_utf8(out)?);
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
