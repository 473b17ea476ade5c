//! Minimises the strip model and shows the classes, the accessibility
//! relation of the minimal model and an answer mapped back to cells.

use polymin::{
    cell_poset, fixtures, load_simplicial_model, map_back, minimal_model, parse_formula, sat,
};

fn main() -> polymin::Result<()> {
    let poset = cell_poset(&load_simplicial_model(fixtures::STRIP4.as_bytes())?);
    let mm = minimal_model(&poset);
    let part = mm.partition();

    for c in 0..mm.num_classes() {
        let atoms: Vec<&str> = mm
            .kripke()
            .valuation(c)
            .iter()
            .map(String::as_str)
            .collect();
        println!(
            "C{c} [{}] {}",
            atoms.join(","),
            part.class_members(c).join(" ")
        );
    }
    let pairs: Vec<String> = mm
        .relation()
        .into_iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| format!("C{a}->C{b}"))
        .collect();
    println!("R_min (non-reflexive): {}", pairs.join(" "));

    let f = parse_formula("eta(green | grey, green)")?;
    let on_min = sat(mm.kripke(), &f);
    let cells = map_back(&mm, &on_min)?;
    let hits: Vec<&str> = poset
        .elements()
        .iter()
        .zip(&cells)
        .filter(|(_, &b)| b)
        .map(|(n, _)| n.as_str())
        .collect();
    println!("{f}: {}", hits.join(" "));
    assert_eq!(cells, sat(poset.kripke(), &f).as_bools());

    print!("{}", mm.to_json());
    Ok(())
}
