//! Quasi-sets: multiplicities without labels, the two unions, and why the
//! power quasi-set has two candidate sizes.
//!
//!     cargo run --example quasi_sets

use qlab::qsets::{
    classify_individuality, indistinguishable, parse_document, qcard, qintersection, qpowerset, qunion,
    strong_singleton, PowersetLimits, Source,
};

const DOC: &str = include_str!("leptons.qset");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_document(DOC)?;
    for (name, q) in &doc.sets {
        println!("{name:>10} = {q}  (qcard {})", qcard(q));
    }

    let (pair, atom) = (doc.get("pair")?, doc.get("atom")?);
    // two separately prepared collections add up; two descriptions of one collection do not
    println!("\ndisjoint union: {}", qunion(pair, atom, Source::Disjoint)?);
    println!("union:          {}", qunion(pair, atom, Source::Overlapping)?);
    println!("intersection:   {}", qintersection(pair, atom)?);
    println!(
        "pair and other_pair indistinguishable: {}",
        indistinguishable(pair, doc.get("other_pair")?)
    );

    let single = strong_singleton(&doc.universe, "electron")?;
    println!("\nstrong singleton of electron: {single} (qcard {})", qcard(&single));

    let shell = doc.get("shell")?;
    let p = qpowerset(shell, PowersetLimits::default())?;
    println!("\nsub-quasi-sets of {shell}:");
    for (member, _) in p.family.nested() {
        println!("  {member}");
    }
    println!(
        "{} up to indistinguishability, against 2^{} = {} from the axioms",
        p.occupancy_qcard,
        qcard(shell),
        p.axiomatic_qcard
    );

    println!();
    for (discernible, reidentifiable) in [(true, true), (false, true), (true, false), (false, false)] {
        let v = classify_individuality(discernible, reidentifiable);
        println!("discernible {discernible:<5} reidentifiable {reidentifiable:<5} -> {}", v.category);
    }
    Ok(())
}
