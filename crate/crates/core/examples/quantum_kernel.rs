//! Born probabilities, unitary evolution and spectral decomposition on a
//! pair of spin-1/2 systems described without labels.
//!
//!     cargo run --example quantum_kernel

use qlab::quantum::{spectral_decompose, validate_qm_structure, BorelSet, QmStructure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = QmStructure::from_json(include_str!("electron_pair.json"))?;
    let report = validate_qm_structure(&q);
    for c in &report.checks {
        println!("{:<6} {}: {}", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail);
    }

    for state in ["up", "plus", "right"] {
        for delta in ["{1}", "{-1}"] {
            let p = q.probability("electron", "Sz", state, &BorelSet::parse(delta)?)?;
            println!("P(Sz in {delta} | {state}) = {p:.6}");
        }
    }

    let moved = q.evolve_state("up", "H")?;
    println!("H up = [{:.6}, {:.6}]", moved[0], moved[1]);

    for e in spectral_decompose(&q.observable("Sy")?.matrix)? {
        println!("Sy eigenvalue {:+.3} with multiplicity {}", e.value, e.multiplicity);
    }

    let labeled = QmStructure::from_json(include_str!("labeled.json"))?;
    for d in validate_qm_structure(&labeled).diagnostics {
        println!("labeled.json: {d}");
    }
    Ok(())
}
