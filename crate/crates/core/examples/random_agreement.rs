//! Generates random complexes and checks that the three ways of computing
//! logical equivalence agree and that minimisation preserves answers.

use polymin::random::random_simplicial_model;
use polymin::{
    branching_partition, cell_poset, encode_abstract, encode_concrete, map_back, minimal_model,
    random_formula, sat, strong_partition, weak_pm_partition,
};

fn main() -> polymin::Result<()> {
    let seeds = 0..40u64;
    let mut reduced = 0;
    for seed in seeds.clone() {
        let model = random_simplicial_model(seed, 5, 2, 2)?;
        let poset = cell_poset(&model);

        let direct = weak_pm_partition(&poset);
        let branching = branching_partition(&encode_concrete(&poset));
        let (abs, comps) = encode_abstract(&poset);
        let strong = comps.pull_back(&strong_partition(&abs))?;
        assert!(direct == branching && branching == strong, "seed {seed}");

        let mm = minimal_model(&poset);
        let atoms: Vec<String> = poset.atoms().iter().cloned().collect();
        let f = random_formula(seed, 3, &atoms)?;
        assert_eq!(
            map_back(&mm, &sat(mm.kripke(), &f))?,
            sat(poset.kripke(), &f).as_bools()
        );
        if mm.num_classes() < poset.len() {
            reduced += 1;
        }
        println!(
            "seed {seed:2}: {:2} cells -> {:2} classes",
            poset.len(),
            mm.num_classes()
        );
    }
    println!("{reduced} of {} models were reduced", seeds.count());
    Ok(())
}
