//! The `report` command: every module's checks at desk scale, seeded.

use std::path::{Path, PathBuf};

use itertools::Itertools;
use serde_json::json;

use super::structure::{load_structure, NAIVE_LIMIT};
use super::{fock, logic, qm, qset, read_input, structure, usage, CliError, CliResult, Ctx};
use crate::fock::{build_fock_space, Statistics};
use crate::logic::{check_identity_axioms, pii_first_order, pii_second_order_with, Semantics};
use crate::quantum::QmStructure;
use crate::structures::{
    automorphisms_naive, automorphisms_with, is_conservative_extension, is_rigid, models, random_structure, rigidify,
    FiniteStructure, Signature, StructureParams,
};

pub(crate) const QSET_TRIALS: usize = 1000;
pub(crate) const STRUCTURE_TRIALS: usize = 200;
pub(crate) const PII_TRIALS: usize = 100;
pub(crate) const QM_TRIALS: usize = 100;
pub(crate) const INDIST_TRIALS: usize = 100;

/// Two elements that share every predicate of a one-predicate language.
pub fn poor_language() -> FiniteStructure {
    let sig = Signature::new().with_relation("Red", 1).expect("fresh name");
    FiniteStructure::new(sig, 2)
        .with_tuples("Red", [vec![0], vec![1]])
        .and_then(|s| s.with_labels(["Castor", "Pollux"]))
        .expect("valid structure")
}

fn structure_battery(ctx: &mut Ctx, trials: usize) {
    let params = StructureParams::default();
    let (mut mismatches, mut not_rigid, mut not_conservative) = (Vec::new(), Vec::new(), Vec::new());
    let mut nontrivial = 0;
    for trial in 0..trials {
        let s = random_structure(&mut ctx.rng, &params);
        let pruned = automorphisms_with(&s, ctx.max_domain);
        nontrivial += usize::from(!pruned.is_trivial());
        if pruned.group != automorphisms_naive(&s) {
            mismatches.push(trial);
        }
        let r = rigidify(&s);
        if !is_rigid(&r) {
            not_rigid.push(trial);
        }
        if !is_conservative_extension(&s, &r) {
            not_conservative.push(trial);
        }
    }
    ctx.verdict(
        "random-pruned-equals-naive",
        "structures::automorphisms_naive",
        None,
        mismatches.is_empty(),
        format!("{trials} random structures up to size {NAIVE_LIMIT}, {nontrivial} with symmetry"),
        json!({ "trials": trials, "nontrivial": nontrivial, "mismatches": mismatches }),
    );
    ctx.verdict(
        "random-rigidify",
        "structures::rigidify",
        None,
        not_rigid.is_empty() && not_conservative.is_empty(),
        format!("{trials} extensions rigid and conservative"),
        json!({ "not_rigid": not_rigid, "not_conservative": not_conservative }),
    );
}

fn pii_battery(ctx: &mut Ctx, trials: usize) {
    let params = StructureParams::default();
    let (mut full_failures, mut orbit_mismatches) = (Vec::new(), Vec::new());
    let mut same_orbit_pairs = 0;
    for trial in 0..trials {
        let s = random_structure(&mut ctx.rng, &params);
        if !pii_second_order_with(&s, Semantics::Full, ctx.max_domain).holds() {
            full_failures.push(trial);
        }
        let naive = automorphisms_naive(&s);
        let expected: Vec<(usize, usize)> = s
            .domain()
            .tuple_combinations()
            .filter(|&(a, b)| naive.iter().any(|h| h.apply(a) == b))
            .collect();
        same_orbit_pairs += expected.len();
        if pii_second_order_with(&s, Semantics::OrbitInvariant, ctx.max_domain).failures != expected {
            orbit_mismatches.push(trial);
        }
    }
    ctx.verdict(
        "random-pii-full",
        "logic::pii_second_order_with",
        None,
        full_failures.is_empty(),
        format!("{trials} random structures, every distinct pair separated"),
        json!({ "trials": trials, "failures": full_failures }),
    );
    ctx.verdict(
        "random-pii-orbit-invariant",
        "logic::pii_second_order_with",
        None,
        orbit_mismatches.is_empty(),
        format!("failures equal the {same_orbit_pairs} same-orbit pairs"),
        json!({ "trials": trials, "same_orbit_pairs": same_orbit_pairs, "mismatches": orbit_mismatches }),
    );

    let poor = poor_language();
    let fails = pii_first_order(&poor);
    ctx.verdict(
        "poor-language-counterexample",
        "logic::pii_first_order",
        None,
        fails == [(0, 1)],
        format!(
            "{} agree on every predicate yet are distinct",
            fails.iter().map(|&(a, b)| format!("{} and {}", poor.name_of(a), poor.name_of(b))).join(", ")
        ),
        json!({ "pairs": fails }),
    );
}

fn identity_battery(ctx: &mut Ctx) {
    let diagonal = [
        ("one-predicate", models::with_diagonal_equality(&models::one_predicate(4))),
        ("linear-order", models::with_diagonal_equality(&models::linear_order(4))),
        ("gaussian-field", models::with_diagonal_equality(&models::gaussian_field_mod3())),
        ("von-neumann", models::small_von_neumann()),
    ];
    let mut failing = Vec::new();
    for (name, s) in &diagonal {
        if !check_identity_axioms(s).is_ok_and(|r| r.all_hold()) {
            failing.push(*name);
        }
    }
    ctx.verdict(
        "diagonal-equality-axioms",
        "logic::check_identity_axioms",
        None,
        failing.is_empty(),
        format!("{} structures with diagonal equality pass all axioms", diagonal.len()),
        json!({ "structures": diagonal.iter().map(|(n, _)| n).collect::<Vec<_>>(), "failing": failing }),
    );

    let masked = models::congruence_masking();
    let before = check_identity_axioms(&masked).expect("equality designated");
    let extended = rigidify(&masked);
    let after = check_identity_axioms(&extended).expect("equality designated");
    let witness = after.substitution.witnesses.first();
    ctx.verdict(
        "congruence-masking",
        "logic::check_identity_axioms",
        None,
        before.all_hold() && !after.substitution.holds && witness.is_some(),
        match witness {
            Some(w) => format!(
                "the congruence passes until extended; then {} = {} yet {} separates them",
                extended.name_of(w.a),
                extended.name_of(w.b),
                w.context
            ),
            None => "no substitution failure after extension".to_string(),
        },
        json!({ "before": before, "after": after }),
    );
}

fn file_checks(ctx: &mut Ctx, path: &Path) -> CliResult {
    match path.extension().and_then(|e| e.to_str()) {
        Some("qlog") => {
            let s = load_structure(path)?;
            structure::auts(ctx, &s, Some(path));
            if s.equality().is_some() {
                logic::axioms(ctx, &s, Some(path))?;
            }
            logic::pii(ctx, &s, logic::PiiMode::All, Some(path));
            Ok(())
        }
        Some("json") => {
            let text = read_input(path)?;
            let value: serde_json::Value = serde_json::from_str(&text).map_err(usage(path))?;
            // Fock declarations are told apart by their `modes` key
            if value.get("modes").is_some() {
                fock::algebra(ctx, &fock::space_from_json(&text, path)?, Some(path));
            } else {
                let q = QmStructure::from_json(&text).map_err(usage(path))?;
                qm::check_file(ctx, &q, path);
            }
            Ok(())
        }
        _ => Err(CliError::Usage(format!(
            "{}: expected a .qlog or .json file",
            path.display()
        ))),
    }
}

pub(crate) fn run(files: &[PathBuf], ctx: &mut Ctx) -> CliResult {
    ctx.say("== fock: state counting ==");
    fock::table(ctx, 6, 6, false);
    ctx.say("== qsets: laws ==");
    qset::laws(ctx, QSET_TRIALS);
    ctx.say("== structures: automorphisms ==");
    structure_battery(ctx, STRUCTURE_TRIALS);
    ctx.say("== structures: ur-element universes ==");
    for (atoms, rank) in [(1, 2), (2, 2), (3, 2)] {
        structure::ur(ctx, atoms, rank)?;
    }
    ctx.say("== logic: indiscernibility ==");
    pii_battery(ctx, PII_TRIALS);
    ctx.say("== logic: identity axioms ==");
    identity_battery(ctx);
    ctx.say("== quantum: kernel laws ==");
    qm::laws(ctx, QM_TRIALS, 8);
    ctx.say("== fock: ladder algebra ==");
    for k in 1..=4 {
        fock::algebra(ctx, &build_fock_space(k, k, Statistics::Fermionic).expect("k fermions fit"), None);
    }
    for k in 1..=2 {
        fock::algebra(ctx, &build_fock_space(k, 6, Statistics::Bosonic).expect("valid space"), None);
    }
    fock::indist(ctx, INDIST_TRIALS);
    for path in files {
        ctx.say(format!("== {} ==", path.display()));
        file_checks(ctx, path)?;
    }
    Ok(())
}
