//! Automorphism groups, orbits and rigid extensions. The field of nine
//! elements with conjugation has exactly one non-trivial symmetry, the swap
//! of `i` and `-i`.
//!
//!     cargo run --example automorphisms

use qlab::logic::parse_document;
use qlab::structures::{automorphisms, is_conservative_extension, is_rigid, orbits, rigidify};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_document(include_str!("conj.qlog"))?;
    let field = doc.structure()?;

    let group = automorphisms(field);
    println!("{} automorphisms", group.len());
    for h in &group.group {
        let cycles: Vec<String> = h
            .cycles()
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| format!("({})", c.iter().map(|&e| field.name_of(e)).collect::<Vec<_>>().join(" ")))
            .collect();
        println!("  {}", if cycles.is_empty() { "identity".to_string() } else { cycles.concat() });
    }

    let classes: Vec<String> = orbits(field)
        .iter()
        .map(|o| format!("{{{}}}", o.iter().map(|&e| field.name_of(e)).collect::<Vec<_>>().join(", ")))
        .collect();
    println!("orbits: {}", classes.join(" "));

    let rigid = rigidify(field);
    let added: Vec<&str> = rigid
        .signature()
        .relations()
        .iter()
        .filter(|(n, _)| field.signature().arity(n).is_none())
        .map(|(n, _)| n.as_str())
        .collect();
    println!(
        "after adding {}: rigid {}, conservative {}",
        added.join(", "),
        is_rigid(&rigid),
        is_conservative_extension(field, &rigid)
    );
    Ok(())
}
