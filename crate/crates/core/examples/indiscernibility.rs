//! Identity of indiscernibles under three readings of "property", and the
//! identity axioms for a designated equality.
//!
//!     cargo run --example indiscernibility

use qlab::logic::{
    check_identity_axioms, expand_defined_identity, parse_document, pii_first_order, pii_second_order, Semantics,
};
use qlab::structures::{directed_cycle, models, rigidify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_document(include_str!("poor.qlog"))?;
    let poor = doc.structure()?;
    println!("x = y  :=  {}", expand_defined_identity(poor.signature(), None, "x", "y"));
    for (a, b) in pii_first_order(poor) {
        println!("{} and {} agree on everything the language says", poor.name_of(a), poor.name_of(b));
    }

    let cycle = directed_cycle(4);
    for semantics in [Semantics::Full, Semantics::OrbitInvariant] {
        let r = pii_second_order(&cycle, semantics);
        println!("4-cycle, {semantics:?}: {} pairs unseparated", r.failures.len());
    }

    let masked = models::congruence_masking();
    let before = check_identity_axioms(&masked)?;
    println!("\ncongruence as equality: all axioms hold = {}", before.all_hold());
    let extended = rigidify(&masked);
    let after = check_identity_axioms(&extended)?;
    for w in after.substitution.witnesses.iter().take(3) {
        println!(
            "  {} = {} but {} holds of the first only",
            extended.name_of(w.a),
            extended.name_of(w.b),
            w.context
        );
    }
    Ok(())
}
