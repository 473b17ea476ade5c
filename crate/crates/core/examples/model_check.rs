//! Evaluates a small script of reachability formulas on the strip model and
//! prints the satisfying cells for each saved formula.

use polymin::checker::check_script;
use polymin::{cell_poset, fixtures, load_simplicial_model, parse_script};

const SCRIPT: &str = r#"
let red   = ap("red")
let grey  = ap("grey")
let green = ap("green")

// grey or green cells that can reach green
save "reach_green" eta(green | grey, green)
save "grey_to_red" eta(grey | red, red)
save "near_red"    diamond(red)
save "touch_red"   gamma(red, true)
"#;

fn main() -> polymin::Result<()> {
    let poset = cell_poset(&load_simplicial_model(fixtures::STRIP4.as_bytes())?);
    let script = parse_script(SCRIPT)?;
    for (name, set) in check_script(poset.kripke(), &script) {
        println!("{name:12} {}", set.formula());
        println!("{:12} {}", "", set.names(poset.kripke()).join(" "));
    }
    Ok(())
}
