use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use itertools::Itertools;
use serde_json::json;

use super::{read_input, usage, CliError, CliResult, Ctx};
use crate::logic::parse_document;
use crate::structures::{
    automorphisms_naive, automorphisms_with, build_ur_universe, extend_permutation, identity_property_witness,
    is_automorphism, is_conservative_extension, is_rigid, orbit_indiscernible, orbits, rigidify, FiniteStructure,
    Permutation,
};

/// Largest domain on which the pruned search is cross-checked against the
/// `n!` enumeration.
pub(crate) const NAIVE_LIMIT: usize = 7;

#[derive(Debug, Subcommand)]
pub(crate) enum StructureCmd {
    /// List the automorphism group.
    Auts(FileArg),
    /// Partition the domain into automorphism orbits.
    Orbits(FileArg),
    /// Report rigidity and build a rigid conservative extension.
    Rigid(FileArg),
    /// Whether an automorphism maps one element to another.
    Indiscernible {
        file: PathBuf,
        /// Element index or label.
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Build a finite-rank universe over named atoms and check atom permutations.
    Ur {
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
}

#[derive(Debug, Args)]
pub(crate) struct FileArg {
    /// A `.qlog` file declaring a structure.
    pub file: PathBuf,
}

pub(crate) fn load_structure(path: &Path) -> CliResult<FiniteStructure> {
    let doc = parse_document(&read_input(path)?).map_err(usage(path))?;
    doc.structure().cloned().map_err(usage(path))
}

pub(crate) fn element(s: &FiniteStructure, name: &str) -> CliResult<usize> {
    s.element_by_name(name)
        .or_else(|| name.parse().ok().filter(|&e| e < s.size()))
        .ok_or_else(|| CliError::Usage(format!("no element `{name}` in a domain of size {}", s.size())))
}

fn render_perm(s: &FiniteStructure, p: &Permutation) -> String {
    let moved: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|&e| s.name_of(e)).join(" ")))
        .collect();
    if moved.is_empty() {
        "identity".to_string()
    } else {
        moved.concat()
    }
}

pub(crate) fn auts(ctx: &mut Ctx, s: &FiniteStructure, input: Option<&Path>) {
    let auts = automorphisms_with(s, ctx.max_domain);
    if let Some(w) = &auts.warning {
        ctx.say(format!("warning: {w}"));
    }
    ctx.say(format!("{} automorphisms", auts.len()));
    for p in &auts.group {
        ctx.say(format!("  {}", render_perm(s, p)));
    }
    let sound = auts.group.iter().all(|h| is_automorphism(s, h));
    ctx.verdict(
        "automorphisms-sound",
        "structures::is_automorphism",
        input,
        sound,
        format!("{} maps checked against every table", auts.len()),
        json!({ "count": auts.len() }),
    );
    if s.size() <= NAIVE_LIMIT {
        let naive = automorphisms_naive(s);
        let ok = naive == auts.group;
        ctx.verdict(
            "pruned-equals-naive",
            "structures::automorphisms_naive",
            input,
            ok,
            format!("pruned search {} maps, enumeration {}", auts.len(), naive.len()),
            json!({ "pruned": auts.len(), "naive": naive.len() }),
        );
    }
    let images: Vec<&[usize]> = auts.group.iter().map(Permutation::images).collect();
    ctx.verdict(
        "automorphism-group",
        "structures::automorphisms_with",
        input,
        auts.is_group(),
        format!("{} automorphisms, closed under composition and inverse", auts.len()),
        json!({ "group": images, "warning": auts.warning }),
    );
}

fn show_orbits(ctx: &mut Ctx, s: &FiniteStructure, input: Option<&Path>) {
    let orbs = orbits(s);
    for o in &orbs {
        ctx.say(format!("  {{{}}}", o.iter().map(|&e| s.name_of(e)).join(", ")));
    }
    let covered: Vec<usize> = orbs.iter().flatten().copied().sorted().collect();
    ctx.verdict(
        "orbits-partition",
        "structures::orbits",
        input,
        covered == s.domain().collect::<Vec<_>>(),
        format!("{} orbits", orbs.len()),
        json!({ "orbits": orbs }),
    );
}

pub(crate) fn rigid(ctx: &mut Ctx, s: &FiniteStructure, input: Option<&Path>) {
    let was_rigid = is_rigid(s);
    let ext = rigidify(s);
    let now_rigid = is_rigid(&ext);
    let conservative = is_conservative_extension(s, &ext);
    let added: Vec<String> = ext
        .signature()
        .relations()
        .iter()
        .filter(|(n, _)| s.signature().arity(n).is_none())
        .map(|(n, _)| n.clone())
        .collect();
    ctx.say(format!("input rigid: {was_rigid}"));
    ctx.verdict(
        "rigidify",
        "structures::rigidify",
        input,
        now_rigid,
        format!("extension adds {} predicates and is rigid: {now_rigid}", added.len()),
        json!({ "input_rigid": was_rigid, "added": added }),
    );
    ctx.verdict(
        "conservative-extension",
        "structures::is_conservative_extension",
        input,
        conservative,
        "original tables and constants unchanged",
        json!({ "conservative": conservative }),
    );
    ctx.info(
        "rigidity",
        "structures::is_rigid",
        input,
        format!("input is {}rigid", if was_rigid { "" } else { "not " }),
        json!({ "rigid": was_rigid }),
    );
}

pub(crate) fn ur(ctx: &mut Ctx, atoms: usize, rank: usize) -> CliResult {
    let names: Vec<String> = (0..atoms).map(|i| format!("a{i}")).collect();
    let u = build_ur_universe(&names, rank).map_err(|e| CliError::Usage(e.to_string()))?;
    ctx.say(format!("{} atoms, rank {rank}, {} members", atoms, u.len()));
    let mut failures = Vec::new();
    let mut checked = 0;
    for images in (0..atoms).permutations(atoms) {
        let pi = Permutation::from_images(images).expect("permutation");
        let map = extend_permutation(&u, &pi).map_err(|e| CliError::Internal(e.to_string()))?;
        let check = map.verify(&u);
        checked += 1;
        if !check.holds() {
            failures.push(json!({ "permutation": pi.images(), "violations": check.violations.len() }));
        }
    }
    ctx.verdict(
        "ur-permutations-extend",
        "structures::extend_permutation",
        None,
        failures.is_empty(),
        format!("{checked} atom permutations extend to membership-preserving bijections"),
        json!({ "atoms": atoms, "rank": rank, "members": u.len(), "permutations": checked, "failures": failures }),
    );
    // level k+1 is every subset of the atoms together with level k
    let sizes: Vec<usize> = (0..=rank).map(|k| u.level(k).len()).collect();
    let expected: Vec<usize> = (0..=rank)
        .scan(0usize, |prev, k| {
            let size = if k == 0 { atoms } else { 1 << (atoms + *prev) };
            *prev = if k == 0 { 0 } else { size };
            Some(size)
        })
        .collect();
    ctx.verdict(
        "ur-universe",
        "structures::build_ur_universe",
        None,
        sizes == expected && u.len() == atoms + if rank > 0 { sizes[rank] } else { 0 },
        format!("level sizes {sizes:?}, {} members", u.len()),
        json!({ "levels": sizes, "expected": expected, "members": u.len() }),
    );
    if rank >= 1 {
        let mut witnesses = Vec::new();
        let mut all = true;
        for a in &names {
            let w = identity_property_witness(&u, a).map_err(|e| CliError::Internal(e.to_string()))?;
            ctx.say(format!("  x in {} holds only of {a}: {}", w.singleton, w.distinct_from_all));
            all &= w.distinct_from_all;
            witnesses.push(w);
        }
        ctx.verdict(
            "identity-witness",
            "structures::identity_property_witness",
            None,
            all,
            format!("each of {atoms} atoms is the only member of its singleton"),
            witnesses,
        );
    }
    Ok(())
}

pub(crate) fn run(cmd: StructureCmd, ctx: &mut Ctx) -> CliResult<String> {
    match cmd {
        StructureCmd::Auts(f) => {
            let s = load_structure(&f.file)?;
            auts(ctx, &s, Some(&f.file));
            Ok("structure auts".into())
        }
        StructureCmd::Orbits(f) => {
            let s = load_structure(&f.file)?;
            show_orbits(ctx, &s, Some(&f.file));
            Ok("structure orbits".into())
        }
        StructureCmd::Rigid(f) => {
            let s = load_structure(&f.file)?;
            rigid(ctx, &s, Some(&f.file));
            Ok("structure rigid".into())
        }
        StructureCmd::Indiscernible { file, a, b } => {
            let s = load_structure(&file)?;
            let (x, y) = (element(&s, &a)?, element(&s, &b)?);
            let same = orbit_indiscernible(&s, x, y).map_err(usage(&file))?;
            let summary = format!(
                "{} and {} {} related by an automorphism",
                s.name_of(x),
                s.name_of(y),
                if same { "are" } else { "are not" }
            );
            ctx.info(
                "orbit-indiscernible",
                "structures::orbit_indiscernible",
                Some(&file),
                summary,
                json!({ "a": x, "b": y, "indiscernible": same }),
            );
            Ok("structure indiscernible".into())
        }
        StructureCmd::Ur { atoms, rank } => {
            ur(ctx, atoms, rank)?;
            Ok("structure ur".into())
        }
    }
}
