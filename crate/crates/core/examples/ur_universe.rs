//! A universe built over ur-elements. Every permutation of the atoms lifts
//! to a membership-preserving map of the whole universe, yet each atom is
//! still the only member of its own singleton.
//!
//!     cargo run --example ur_universe

use itertools::Itertools;
use qlab::structures::{build_ur_universe, extend_permutation, identity_property_witness, Permutation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let atoms = ["a", "b", "c"];
    let u = build_ur_universe(&atoms, 2)?;
    print!("{u}");

    for images in (0..atoms.len()).permutations(atoms.len()) {
        let pi = Permutation::from_images(images)?;
        let lifted = extend_permutation(&u, &pi)?;
        let check = lifted.verify(&u);
        println!("{pi:<10} preserves membership: {}", check.holds());
    }

    for atom in atoms {
        let w = identity_property_witness(&u, atom)?;
        println!(
            "x in {} holds of {} member(s), only {atom}: {}",
            w.singleton,
            w.satisfied_by.len(),
            w.distinct_from_all
        );
    }
    Ok(())
}
