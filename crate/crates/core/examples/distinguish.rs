//! Prints a separating formula for every pair of inequivalent cells of the
//! strip model and checks it.

use polymin::{
    cell_poset, distinguishing_formula, fixtures, load_simplicial_model, sat, weak_pm_partition,
};

fn main() -> polymin::Result<()> {
    let poset = cell_poset(&load_simplicial_model(fixtures::STRIP4.as_bytes())?);
    let part = weak_pm_partition(&poset);
    let reps: Vec<&str> = (0..part.num_classes())
        .map(|c| part.class_name(c))
        .collect();

    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            let f = distinguishing_formula(&poset, a, b)?.expect("different classes");
            let s = sat(poset.kripke(), &f);
            let holds = |n: &str| s.contains(poset.index_of(n).unwrap());
            println!("{a} vs {b}: {f}");
            assert_ne!(holds(a), holds(b));
        }
    }
    println!(
        "E vs D-E-F: {:?}",
        distinguishing_formula(&poset, "E", "D-E-F")?
    );
    Ok(())
}
