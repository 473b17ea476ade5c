//! Builds the cell poset of a small triangulated strip and queries its
//! face order.

use polymin::{cell_poset, fixtures, leq, load_simplicial_model};

fn main() -> polymin::Result<()> {
    let model = load_simplicial_model(fixtures::STRIP4.as_bytes())?;
    let poset = cell_poset(&model);
    println!(
        "{} cells over {} vertices",
        poset.len(),
        model.vertices().len()
    );

    for &(a, b) in poset.covers() {
        let (a, b) = (&poset.elements()[a], &poset.elements()[b]);
        println!("  {a} < {b}");
    }
    for (a, b) in [("D", "C-D-E"), ("A", "D-E-F"), ("B-C", "B-C")] {
        println!("{a} <= {b}: {}", leq(&poset, a, b)?);
    }
    Ok(())
}
