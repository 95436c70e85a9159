//! Creation and annihilation operators on truncated Fock spaces, with the
//! commutation and anticommutation relations checked in exact arithmetic,
//! and a permutation test of the indistinguishability postulate.
//!
//!     cargo run --example ladder_algebra

use num_complex::Complex64;
use qlab::fock::{
    apply_annihilation, apply_creation, build_fock_space, check_algebra, indistinguishability_check, symmetrize,
    Occupancy, Statistics,
};
use qlab::quantum::{diag, CMatrix, CVector};
use qlab::structures::Permutation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bosons = build_fock_space(2, 3, Statistics::Bosonic)?;
    let state = Occupancy(vec![1, 1]);
    if let Some((c, out)) = apply_creation(&bosons, 0, &state)?.output {
        println!("a0+ {state} = {c} {out}");
    }
    if let Some((c, out)) = apply_annihilation(&bosons, 1, &state)?.output {
        println!("a1 {state} = {c} {out}");
    }

    for f in [bosons, build_fock_space(3, 3, Statistics::Fermionic)?] {
        let r = check_algebra(&f);
        println!("\n{} modes, {}, dimension {}:", f.modes(), f.statistics(), r.dim);
        for c in r.identities.iter().take(4) {
            println!("  {:<16} {}", c.name, c.holds);
        }
        println!("  ... {} identities, all hold: {}", r.identities.len(), r.holds());
    }

    let e = |i: usize| CVector::from_fn(2, |j, _| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
    let observable = diag(&[1.0, -1.0]).kronecker(&CMatrix::identity(2, 2));
    let swap = Permutation::swap(2, 0, 1);
    let product = e(0).kronecker(&e(1));
    let anti = symmetrize(&[e(0), e(1)], Statistics::Fermionic)?;
    for (name, v) in [("|0>|1>", &product), ("antisymmetrized", &anti.vector)] {
        let r = indistinguishability_check(v, 2, 2, &observable, &swap)?;
        println!(
            "\n{name}: <Z x I> = {:+.3}, after swapping particles {:+.3}",
            r.expectation, r.permuted_expectation
        );
    }
    Ok(())
}
