use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use serde_json::json;

use super::{read_input, usage, CliError, CliResult, Ctx};
use crate::qsets::{
    classify_individuality, indistinguishable, kind_pool, parse_document, parse_qset, qcard, qintersection, qpowerset,
    qunion, random_qset, strong_singleton, GenParams, PowersetLimits, QSet, QSetDocument, Source, Universe,
};

/// Quasi-sets up to this quasi-cardinal also get their power quasi-set checked.
pub(crate) const POWERSET_QCARD: usize = 8;

#[derive(Debug, Subcommand)]
pub(crate) enum QsetCmd {
    /// Print each quasi-set of a file in canonical form with its quasi-cardinal.
    Show { file: PathBuf },
    /// Apply a binary operation to two named quasi-sets.
    Op {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: QsetOp,
        a: String,
        b: String,
    },
    /// The power quasi-set of a named quasi-set.
    Powerset { file: PathBuf, name: String },
    /// The strong singleton of a kind declared in the file's universe.
    Singleton { file: PathBuf, kind: String },
    /// Place an item in the individuality table.
    Classify {
        #[arg(long, action = clap::ArgAction::Set)]
        discernible: bool,
        #[arg(long, action = clap::ArgAction::Set)]
        reidentifiable: bool,
    },
    /// Check the algebraic laws on random quasi-sets.
    Laws {
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum QsetOp {
    /// Multiplicities add.
    DisjointUnion,
    /// Multiplicities take the maximum.
    Union,
    Intersection,
    Indistinguishable,
}

fn load(path: &Path) -> CliResult<QSetDocument> {
    parse_document(&read_input(path)?).map_err(usage(path))
}

fn pool_universe() -> Universe {
    let mut u = Universe::new();
    for k in kind_pool() {
        u.declare(k).expect("pool kinds are distinct");
    }
    u
}

/// Every law the three operands violate, by name.
pub(crate) fn law_violations(a: &QSet, b: &QSet, c: &QSet, universe: &Universe) -> Vec<String> {
    let mut bad = Vec::new();
    let mut law = |name: &str, ok: bool| {
        if !ok {
            bad.push(name.to_string());
        }
    };
    let u = |x: &QSet, y: &QSet| qunion(x, y, Source::Overlapping).expect("pool kinds agree");
    let d = |x: &QSet, y: &QSet| qunion(x, y, Source::Disjoint).expect("pool kinds agree");
    let i = |x: &QSet, y: &QSet| qintersection(x, y).expect("pool kinds agree");
    let shared_labels = a.objects().filter(|o| b.objects().any(|p| p == *o)).count();

    law("union-commutes", u(a, b) == u(b, a));
    law("intersection-commutes", i(a, b) == i(b, a));
    law("union-associates", u(&u(a, b), c) == u(a, &u(b, c)));
    law("intersection-associates", i(&i(a, b), c) == i(a, &i(b, c)));
    law("disjoint-union-associates", d(&d(a, b), c) == d(a, &d(b, c)));
    law("union-idempotent", u(a, a) == *a);
    law("intersection-idempotent", i(a, a) == *a);
    law("absorption", u(a, &i(a, b)) == *a && i(a, &u(a, b)) == *a);
    law("distributive", i(a, &u(b, c)) == u(&i(a, b), &i(a, c)));
    law(
        "qcard-inclusion-exclusion",
        qcard(&u(a, b)) + qcard(&i(a, b)) == qcard(a) + qcard(b),
    );
    law(
        "qcard-disjoint-union",
        qcard(&d(a, b)) + shared_labels == qcard(a) + qcard(b),
    );
    law("qcard-intersection-bound", qcard(&i(a, b)) <= qcard(a).min(qcard(b)));
    law("indistinguishable-reflexive", indistinguishable(a, a));
    law(
        "indistinguishable-symmetric",
        indistinguishable(a, b) == indistinguishable(b, a),
    );
    law(
        "indistinguishable-transitive",
        !(indistinguishable(a, b) && indistinguishable(b, c)) || indistinguishable(a, c),
    );
    law(
        "indistinguishable-respects-qcard",
        !indistinguishable(a, b) || qcard(a) == qcard(b),
    );
    let reparsed = parse_qset(&a.to_string(), universe);
    law(
        "text-round-trip",
        reparsed.is_ok_and(|r| indistinguishable(&r, a)),
    );
    if qcard(a) <= POWERSET_QCARD {
        match qpowerset(a, PowersetLimits::default()) {
            Ok(p) => {
                let members: Vec<(&QSet, usize)> = p.family.nested().collect();
                law("powerset-qcard", qcard(&p.family) as u128 == p.occupancy_qcard);
                law("powerset-members-distinct", members.iter().all(|&(_, n)| n == 1));
                law(
                    "powerset-members-are-subsets",
                    members.iter().all(|(s, _)| i(s, a) == **s),
                );
            }
            Err(_) => law("powerset-within-guard", false),
        }
    }
    bad
}

pub(crate) fn laws(ctx: &mut Ctx, count: usize) {
    let params = GenParams::default();
    let universe = pool_universe();
    let mut failures = Vec::new();
    let mut powersets = 0;
    for trial in 0..count {
        let a = random_qset(&mut ctx.rng, &params);
        let b = random_qset(&mut ctx.rng, &params);
        let c = random_qset(&mut ctx.rng, &params);
        powersets += usize::from(qcard(&a) <= POWERSET_QCARD);
        let bad = law_violations(&a, &b, &c, &universe);
        if !bad.is_empty() {
            failures.push(json!({ "trial": trial, "laws": bad, "a": a.to_string(), "b": b.to_string(), "c": c.to_string() }));
        }
    }
    ctx.verdict(
        "qset-laws",
        "qsets::qunion",
        None,
        failures.is_empty(),
        format!("{count} random triples, {powersets} power quasi-sets, {} failures", failures.len()),
        json!({ "trials": count, "powersets": powersets, "failures": failures }),
    );
}

pub(crate) fn run(cmd: QsetCmd, ctx: &mut Ctx) -> CliResult<String> {
    match cmd {
        QsetCmd::Show { file } => {
            let doc = load(&file)?;
            for (name, q) in &doc.sets {
                ctx.info(
                    format!("qset:{name}"),
                    "qsets::qcard",
                    Some(&file),
                    format!("{q} has quasi-cardinal {}", qcard(q)),
                    json!({ "canonical": q.to_string(), "qcard": qcard(q) }),
                );
            }
            Ok("qset show".into())
        }
        QsetCmd::Op { file, op, a, b } => {
            let doc = load(&file)?;
            let (x, y) = (doc.get(&a).map_err(usage(&file))?, doc.get(&b).map_err(usage(&file))?);
            let result = match op {
                QsetOp::DisjointUnion => Some((qunion(x, y, Source::Disjoint), "qsets::qunion")),
                QsetOp::Union => Some((qunion(x, y, Source::Overlapping), "qsets::qunion")),
                QsetOp::Intersection => Some((qintersection(x, y), "qsets::qintersection")),
                QsetOp::Indistinguishable => None,
            };
            match result {
                Some((r, checker)) => {
                    let r = r.map_err(usage(&file))?;
                    ctx.info(
                        format!("{op:?}").to_lowercase(),
                        checker,
                        Some(&file),
                        format!("{r} (quasi-cardinal {})", qcard(&r)),
                        json!({ "result": r.to_string(), "qcard": qcard(&r) }),
                    );
                }
                None => {
                    let same = indistinguishable(x, y);
                    ctx.info(
                        "indistinguishable",
                        "qsets::indistinguishable",
                        Some(&file),
                        format!("{a} and {b} are {}indistinguishable", if same { "" } else { "not " }),
                        json!({ "indistinguishable": same }),
                    );
                }
            }
            Ok("qset op".into())
        }
        QsetCmd::Powerset { file, name } => {
            let doc = load(&file)?;
            let q = doc.get(&name).map_err(usage(&file))?;
            let p = qpowerset(q, PowersetLimits::default()).map_err(usage(&file))?;
            for (member, _) in p.family.nested() {
                ctx.say(format!("  {member}"));
            }
            let note = if p.discrepant() {
                format!("; the axiomatic count 2^{} = {} differs", qcard(q), p.axiomatic_qcard)
            } else {
                String::new()
            };
            ctx.verdict(
                "powerset",
                "qsets::qpowerset",
                Some(&file),
                qcard(&p.family) as u128 == p.occupancy_qcard,
                format!("{} sub-quasi-sets{note}", p.occupancy_qcard),
                json!({
                    "occupancy_qcard": p.occupancy_qcard.to_string(),
                    "axiomatic_qcard": p.axiomatic_qcard.to_string(),
                    "discrepant": p.discrepant(),
                }),
            );
            Ok("qset powerset".into())
        }
        QsetCmd::Singleton { file, kind } => {
            let doc = load(&file)?;
            let s = strong_singleton(&doc.universe, &kind).map_err(usage(&file))?;
            ctx.verdict(
                "strong-singleton",
                "qsets::strong_singleton",
                Some(&file),
                qcard(&s) == 1,
                format!("{s} has quasi-cardinal {}", qcard(&s)),
                json!({ "singleton": s.to_string() }),
            );
            Ok("qset singleton".into())
        }
        QsetCmd::Classify {
            discernible,
            reidentifiable,
        } => {
            let v = classify_individuality(discernible, reidentifiable);
            ctx.info(
                "individuality",
                "qsets::classify_individuality",
                None,
                v.category.to_string(),
                v,
            );
            Ok("qset classify".into())
        }
        QsetCmd::Laws { count } => {
            if count == 0 {
                return Err(CliError::Usage("--count must be positive".into()));
            }
            laws(ctx, count);
            Ok("qset laws".into())
        }
    }
}
