//! Encodes the segment model as labelled transition systems, prints the
//! concrete one in Aldebaran format and compares the partitions obtained
//! from both encodings.

use polymin::{
    branching_partition, cell_poset, encode_abstract, encode_concrete, fixtures,
    load_simplicial_model, quotient_lts, strong_partition, Lts,
};

fn main() -> polymin::Result<()> {
    let poset = cell_poset(&load_simplicial_model(fixtures::SEGMENT3.as_bytes())?);

    let concrete = encode_concrete(&poset);
    let aut = concrete.to_aut();
    print!("{aut}");
    assert_eq!(Lts::from_aut(&aut)?.to_aut(), aut);

    let branching = branching_partition(&concrete);
    println!("branching classes: {:?}", branching.named_classes());
    let quotient = quotient_lts(&concrete, &branching, true)?;
    print!("quotient:\n{}", quotient.to_aut());

    let (abstract_lts, components) = encode_abstract(&poset);
    println!(
        "abstract LTS: {} states, {} transitions",
        abstract_lts.num_states(),
        abstract_lts.num_transitions()
    );
    let pulled = components.pull_back(&strong_partition(&abstract_lts))?;
    println!("abstract route agrees: {}", pulled == branching);
    Ok(())
}
