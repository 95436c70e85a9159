use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::json;

use super::structure::element;
use super::{read_input, usage, CliError, CliResult, Ctx};
use crate::logic::{
    check_identity_axioms, defined_identity, eval, expand_defined_identity, parse_document, pii_first_order,
    pii_second_order_with, Assignment, Formula, LogicError, QlogDocument, Semantics,
};
use crate::report::{CheckReport, Verdict};
use crate::structures::FiniteStructure;

/// Open formulas with more free variables than this are not tabulated.
const MAX_FREE: usize = 3;

#[derive(Debug, Subcommand)]
pub(crate) enum LogicCmd {
    /// Evaluate the file's formulas in its structure. Sentences pass when
    /// true; open formulas list the tuples that satisfy them.
    Eval {
        file: PathBuf,
        /// Only this formula.
        #[arg(long)]
        formula: Option<String>,
    },
    /// Check reflexivity, substitution of identicals and, with a membership
    /// relation, extensionality for the designated equality.
    Axioms { file: PathBuf },
    /// Identity of indiscernibles.
    Pii {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = PiiMode::FirstOrder)]
        semantics: PiiMode,
    },
    /// Whether two elements agree on every predicate, with the expanded formula.
    Identity { file: PathBuf, a: String, b: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum PiiMode {
    /// Indiscernibility in the structure's own language.
    FirstOrder,
    /// Every subset of the domain is a property.
    Full,
    /// Only unions of automorphism orbits are properties.
    OrbitInvariant,
    All,
}

fn load(path: &Path) -> CliResult<QlogDocument> {
    parse_document(&read_input(path)?).map_err(usage(path))
}

fn free_variables(s: &FiniteStructure, f: &Formula) -> Vec<String> {
    f.free_names()
        .into_iter()
        .filter(|n| s.constant(n).is_none())
        .collect()
}

fn eval_formula(ctx: &mut Ctx, s: &FiniteStructure, name: &str, f: &Formula, input: &Path) -> CliResult {
    let vars = free_variables(s, f);
    if vars.is_empty() {
        let value = eval(s, f, &Assignment::new()).map_err(usage(input))?;
        ctx.verdict(
            format!("formula:{name}"),
            "logic::eval_sentence",
            Some(input),
            value,
            format!("{f} is {value}"),
            json!({ "formula": f.to_string(), "value": value }),
        );
        return Ok(());
    }
    if vars.len() > MAX_FREE {
        return Err(CliError::Usage(format!(
            "formula `{name}` has {} free variables; at most {MAX_FREE} are tabulated",
            vars.len()
        )));
    }
    let mut satisfying = Vec::new();
    for tuple in std::iter::repeat_n(s.domain(), vars.len()).multi_cartesian_product() {
        let sigma: Assignment = vars.iter().cloned().zip(tuple.iter().copied()).collect();
        if eval(s, f, &sigma).map_err(usage(input))? {
            satisfying.push(tuple);
        }
    }
    let shown: Vec<String> = satisfying
        .iter()
        .map(|t| format!("({})", t.iter().map(|&e| s.name_of(e)).join(", ")))
        .collect();
    ctx.info(
        format!("formula:{name}"),
        "logic::eval",
        Some(input),
        format!("{f} holds of {} ({}) tuples: {}", satisfying.len(), vars.join(", "), shown.join(" ")),
        json!({ "formula": f.to_string(), "variables": vars, "satisfied_by": satisfying }),
    );
    Ok(())
}

pub(crate) fn axioms(ctx: &mut Ctx, s: &FiniteStructure, input: Option<&Path>) -> CliResult {
    let report = match check_identity_axioms(s) {
        Ok(r) => r,
        Err(LogicError::MissingEquality) => {
            let input = input.map(|p| p.display().to_string());
            ctx.check(
                CheckReport::new(
                    "identity-axioms",
                    "logic::check_identity_axioms",
                    Verdict::NotApplicable,
                    "no equality relation is designated",
                )
                .with_input(input.as_deref()),
            );
            return Ok(());
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    for w in &report.substitution.witnesses {
        ctx.say(format!(
            "  {} = {} but {} holds of {} and not of {}",
            s.name_of(w.a),
            s.name_of(w.b),
            w.context,
            s.name_of(w.a),
            s.name_of(w.b)
        ));
    }
    let mut parts = vec![
        format!("reflexivity {}", report.reflexivity.holds),
        format!("substitution {}", report.substitution.holds),
    ];
    if let Some(e) = &report.extensionality {
        parts.push(format!("extensionality {}", e.holds));
    }
    ctx.verdict(
        "identity-axioms",
        "logic::check_identity_axioms",
        input,
        report.all_hold(),
        format!("`{}`: {}", report.equality, parts.join(", ")),
        &report,
    );
    Ok(())
}

fn pair_names(s: &FiniteStructure, pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|&(a, b)| format!("({}, {})", s.name_of(a), s.name_of(b)))
        .join(" ")
}

pub(crate) fn pii(ctx: &mut Ctx, s: &FiniteStructure, mode: PiiMode, input: Option<&Path>) {
    if matches!(mode, PiiMode::FirstOrder | PiiMode::All) {
        let fails = pii_first_order(s);
        if !fails.is_empty() {
            ctx.say(format!("indiscernible but distinct: {}", pair_names(s, &fails)));
        }
        ctx.verdict(
            "pii-first-order",
            "logic::pii_first_order",
            input,
            fails.is_empty(),
            format!("{} distinct pairs agree on every predicate", fails.len()),
            json!({ "failures": fails }),
        );
    }
    let semantics: &[Semantics] = match mode {
        PiiMode::FirstOrder => &[],
        PiiMode::Full => &[Semantics::Full],
        PiiMode::OrbitInvariant => &[Semantics::OrbitInvariant],
        PiiMode::All => &[Semantics::Full, Semantics::OrbitInvariant],
    };
    for &sem in semantics {
        let r = pii_second_order_with(s, sem, ctx.max_domain);
        if let Some(w) = &r.warning {
            ctx.say(format!("warning: {w}"));
        }
        if !r.failures.is_empty() {
            ctx.say(format!("no admissible property separates: {}", pair_names(s, &r.failures)));
        }
        let label = match sem {
            Semantics::Full => "full",
            Semantics::OrbitInvariant => "orbit-invariant",
        };
        ctx.verdict(
            format!("pii-second-order:{label}"),
            "logic::pii_second_order_with",
            input,
            r.holds(),
            format!("{} witnesses, {} failures", r.witnesses.len(), r.failures.len()),
            &r,
        );
    }
}

pub(crate) fn run(cmd: LogicCmd, ctx: &mut Ctx) -> CliResult<String> {
    match cmd {
        LogicCmd::Eval { file, formula } => {
            let doc = load(&file)?;
            let s = doc.structure().map_err(usage(&file))?;
            let chosen: Vec<(&str, &Formula)> = match &formula {
                Some(name) => vec![(name.as_str(), doc.formula(name).map_err(usage(&file))?)],
                None => doc.formulas.iter().map(|(n, f)| (n.as_str(), f)).collect(),
            };
            if chosen.is_empty() {
                ctx.say("no formulas in file");
            }
            for (name, f) in chosen {
                eval_formula(ctx, s, name, f, &file)?;
            }
            Ok("logic eval".into())
        }
        LogicCmd::Axioms { file } => {
            let doc = load(&file)?;
            axioms(ctx, doc.structure().map_err(usage(&file))?, Some(&file))?;
            Ok("logic axioms".into())
        }
        LogicCmd::Pii { file, semantics } => {
            let doc = load(&file)?;
            pii(ctx, doc.structure().map_err(usage(&file))?, semantics, Some(&file));
            Ok("logic pii".into())
        }
        LogicCmd::Identity { file, a, b } => {
            let doc = load(&file)?;
            let s = doc.structure().map_err(usage(&file))?;
            let (x, y) = (element(s, &a)?, element(s, &b)?);
            let expansion = expand_defined_identity(s.signature(), s.equality(), "x", "y");
            let same = defined_identity(s, x, y);
            ctx.say(format!("x = y  :=  {expansion}"));
            ctx.info(
                "defined-identity",
                "logic::defined_identity",
                Some(&file),
                format!("{} = {} under the defined identity: {same}", s.name_of(x), s.name_of(y)),
                json!({ "a": x, "b": y, "identical": same, "expansion": expansion.to_string() }),
            );
            Ok("logic identity".into())
        }
    }
}
