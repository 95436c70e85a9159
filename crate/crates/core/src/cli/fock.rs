use std::path::{Path, PathBuf};

use clap::{Subcommand, ValueEnum};
use rand::Rng;
use serde::Deserialize;
use serde_json::json;

use super::{read_input, usage, CliError, CliResult, Ctx};
use crate::fock::{
    apply_annihilation, apply_creation, build_fock_space, check_algebra, classical_quotient_oracle, count_states,
    indistinguishability_check, number_operator, statistics_table, symmetrize, Counting, ExactMatrix, FockSpace,
    Occupancy, Statistics, Surd, ORACLE_MAX,
};
use crate::quantum::random::{random_hermitian, random_state};
use crate::quantum::{diag, CMatrix, CVector};
use crate::structures::Permutation;

#[derive(Debug, Subcommand)]
pub(crate) enum FockCmd {
    /// Count n-particle states over k modes.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = CountArg::All)]
        stat: CountArg,
    },
    /// Check the commutation or anticommutation relations exactly.
    Algebra {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum)]
        stat: StatArg,
    },
    /// Check a Fock space declared in a JSON file:
    /// `{ "modes": 2, "max_total": 2, "statistics": "fermionic" }`.
    Check { file: PathBuf },
    /// MB, BE and FD counts for every n and k up to the bounds.
    Table {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
        /// Comma-separated output.
        #[arg(long)]
        csv: bool,
    },
    /// Apply creation and annihilation operators to one basis state.
    Ladder {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, value_enum)]
        stat: StatArg,
        #[arg(long)]
        mode: usize,
        /// Occupation numbers such as `10` or `1,0`.
        #[arg(long)]
        state: String,
    },
    /// Permutation invariance of expectation values on symmetrized states.
    Indist {
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum CountArg {
    Mb,
    Be,
    Fd,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub(crate) enum StatArg {
    #[value(alias = "boson", alias = "be")]
    Bosonic,
    #[value(alias = "fermion", alias = "fd")]
    Fermionic,
}

impl From<StatArg> for Statistics {
    fn from(s: StatArg) -> Self {
        match s {
            StatArg::Bosonic => Statistics::Bosonic,
            StatArg::Fermionic => Statistics::Fermionic,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FockFile {
    modes: usize,
    max_total: usize,
    statistics: StatArg,
}

fn space(modes: usize, nmax: usize, stat: Statistics) -> CliResult<FockSpace> {
    build_fock_space(modes, nmax, stat).map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn space_from_json(text: &str, path: &std::path::Path) -> CliResult<FockSpace> {
    let decl: FockFile = serde_json::from_str(text).map_err(usage(path))?;
    build_fock_space(decl.modes, decl.max_total, decl.statistics.into()).map_err(usage(path))
}

fn parse_occupancy(text: &str) -> CliResult<Occupancy> {
    let bad = || CliError::Usage(format!("bad occupation numbers `{text}`"));
    let parts: Vec<usize> = if text.contains(',') {
        text.split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<CliResult<_>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<CliResult<_>>()?
    };
    Ok(Occupancy(parts))
}

pub(crate) fn count(ctx: &mut Ctx, n: usize, k: usize, which: &[Counting]) {
    let mut shown = Vec::new();
    for &stat in which {
        match count_states(n, k, stat) {
            Ok(c) => {
                shown.push(format!("{}={}", stat.abbrev(), c.closed_form));
                ctx.verdict(
                    format!("count:{}", stat.abbrev()),
                    "fock::count_states",
                    None,
                    c.agrees(),
                    format!(
                        "closed form {}, enumeration {}",
                        c.closed_form,
                        c.enumerated.map_or("skipped".to_string(), |e| e.to_string())
                    ),
                    json!({ "n": n, "k": k, "closed_form": c.closed_form.to_string(), "enumerated": c.enumerated.map(|e| e.to_string()) }),
                );
                if n <= ORACLE_MAX && k <= ORACLE_MAX {
                    let o = classical_quotient_oracle(n, k, stat).expect("within guard");
                    ctx.verdict(
                        format!("quotient-oracle:{}", stat.abbrev()),
                        "fock::classical_quotient_oracle",
                        None,
                        o == c.closed_form,
                        format!("{} orbits of labeled assignments", o),
                        json!({ "n": n, "k": k, "orbits": o.to_string() }),
                    );
                }
            }
            Err(e) => shown.push(format!("{}=n/a ({e})", stat.abbrev())),
        }
    }
    ctx.say(shown.join(" "));
}

pub(crate) fn algebra(ctx: &mut Ctx, f: &FockSpace, input: Option<&Path>) {
    let r = check_algebra(f);
    for c in r.identities.iter().filter(|c| !c.holds) {
        ctx.say(format!("  {} fails on {} states", c.name, c.failing_columns.len()));
    }
    let tag = format!("{}:{}modes:{}max", f.statistics(), f.modes(), f.max_total());
    ctx.verdict(
        format!("ladder-algebra:{tag}"),
        "fock::check_algebra",
        input,
        r.holds(),
        format!(
            "{} identities on {} states, {} boundary states excluded where mixed",
            r.identities.len(),
            r.dim,
            r.boundary_states.len()
        ),
        &r,
    );
    let predicted: u128 = (0..=f.max_total())
        .map(|n| {
            let stat = match f.statistics() {
                Statistics::Bosonic => Counting::BoseEinstein,
                Statistics::Fermionic => Counting::FermiDirac,
            };
            count_states(n, f.modes(), stat).map_or(0, |c| c.closed_form)
        })
        .sum();
    ctx.verdict(
        format!("fock-dimension:{tag}"),
        "fock::build_fock_space",
        input,
        predicted == f.dim() as u128,
        format!("dimension {} against summed counts {predicted}", f.dim()),
        json!({ "dim": f.dim(), "predicted": predicted.to_string() }),
    );
}

fn number_operator_diagonal(f: &FockSpace) -> bool {
    let n = number_operator(f);
    let want = f
        .basis()
        .iter()
        .enumerate()
        .fold(ExactMatrix::zeros(f.dim()), |mut m, (i, s)| {
            m.set(i, i, Surd::int(s.total() as i64));
            m
        });
    n == want
}

fn ladder(ctx: &mut Ctx, f: &FockSpace, mode: usize, state: &Occupancy) -> CliResult {
    let up = apply_creation(f, mode, state).map_err(|e| CliError::Usage(e.to_string()))?;
    let down = apply_annihilation(f, mode, state).map_err(|e| CliError::Usage(e.to_string()))?;
    let show = |r: &crate::fock::LadderResult| match &r.output {
        Some((c, s)) => format!("({c}) {s}"),
        None if r.truncated => "0 (cut off by the truncation)".to_string(),
        None => "0".to_string(),
    };
    ctx.say(format!("a{mode}+ {state} = {}", show(&up)));
    ctx.say(format!("a{mode} {state} = {}", show(&down)));
    // a+ a on a basis state returns n_m times the state
    let n_m = state.0[mode] as i64;
    let round_trip = match &down.output {
        None => n_m == 0,
        Some((c, s)) => {
            let back = apply_creation(f, mode, s).map_err(|e| CliError::Usage(e.to_string()))?;
            back.output
                .is_some_and(|(c2, s2)| s2 == *state && c.mul(&c2) == Surd::int(n_m))
        }
    };
    ctx.verdict(
        "ladder-round-trip",
        "fock::apply_creation",
        None,
        round_trip,
        format!("a{mode}+ a{mode} {state} = {n_m} {state}"),
        json!({ "creation": show(&up), "annihilation": show(&down) }),
    );
    ctx.verdict(
        "number-operator",
        "fock::number_operator",
        None,
        number_operator_diagonal(f),
        "every basis state is an eigenvector with eigenvalue its total",
        json!({ "dim": f.dim() }),
    );
    Ok(())
}

/// Random observables against random symmetrized and antisymmetrized
/// states, then the unsymmetrized counterexample.
pub(crate) fn indist(ctx: &mut Ctx, count: usize) {
    let mut worst = 0f64;
    let mut failures = Vec::new();
    let mut vanished = 0;
    for trial in 0..count {
        let stat = if trial % 2 == 0 {
            Statistics::Bosonic
        } else {
            Statistics::Fermionic
        };
        let n = ctx.rng.random_range(2..=3);
        let d = ctx.rng.random_range(if stat == Statistics::Fermionic { n } else { 2 }..=3);
        let factors: Vec<CVector> = (0..n).map(|_| random_state(&mut ctx.rng, d)).collect();
        let s = symmetrize(&factors, stat).expect("factors share a dimension");
        if s.vanished {
            vanished += 1;
            continue;
        }
        let o = random_hermitian(&mut ctx.rng, d.pow(n as u32));
        let images = {
            let mut v: Vec<usize> = (0..n).collect();
            let (i, j) = (ctx.rng.random_range(0..n), ctx.rng.random_range(0..n));
            v.swap(i, j);
            v.rotate_left(ctx.rng.random_range(0..n));
            v
        };
        let pi = Permutation::from_images(images).expect("permutation");
        let r = indistinguishability_check(&s.vector, n, d, &o, &pi).expect("shapes agree");
        worst = worst.max(r.difference);
        if !(r.applicable && r.equal) {
            failures.push(json!({ "trial": trial, "statistics": stat, "difference": r.difference }));
        }
    }
    ctx.verdict(
        "permutation-unobservable",
        "fock::indistinguishability_check",
        None,
        failures.is_empty(),
        format!("{count} random observables, worst difference {worst:.2e}"),
        json!({ "trials": count, "vanished": vanished, "worst": worst, "failures": failures }),
    );

    let e = |i: usize| CVector::from_fn(2, |j, _| num_complex::Complex64::new(f64::from(u8::from(i == j)), 0.0));
    let ket01 = e(0).kronecker(&e(1));
    let z_i = diag(&[1.0, -1.0]).kronecker(&CMatrix::identity(2, 2));
    let r = indistinguishability_check(&ket01, 2, 2, &z_i, &Permutation::swap(2, 0, 1)).expect("shapes agree");
    ctx.verdict(
        "unsymmetrized-counterexample",
        "fock::indistinguishability_check",
        None,
        !r.applicable && !r.equal,
        format!(
            "|01> under Z x I gives {} before the swap and {} after",
            r.expectation, r.permuted_expectation
        ),
        &r,
    );
    let anti = symmetrize(&[e(0), e(1)], Statistics::Fermionic).expect("same dimension");
    ctx.verdict(
        "antisymmetrized-pair",
        "fock::symmetrize",
        None,
        !anti.vanished && (anti.vector[1].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12,
        "(|01> - |10>)/sqrt 2",
        json!({ "vector": anti.vector.iter().map(|z| z.re).collect::<Vec<_>>() }),
    );
}

pub(crate) fn table(ctx: &mut Ctx, max_n: usize, max_k: usize, csv: bool) {
    let rows = statistics_table(max_n, max_k);
    let fd = |r: &crate::fock::TableRow| r.fd.map_or("-".to_string(), |v| v.to_string());
    if csv {
        ctx.say("n,k,MB,BE,FD");
        for r in &rows {
            ctx.say(format!("{},{},{},{},{}", r.n, r.k, r.mb, r.be, fd(r)));
        }
    } else {
        ctx.say(format!("{:>2} {:>2} {:>10} {:>6} {:>4}", "n", "k", "MB", "BE", "FD"));
        for r in &rows {
            ctx.say(format!("{:>2} {:>2} {:>10} {:>6} {:>4}", r.n, r.k, r.mb, r.be, fd(r)));
        }
    }
    let bad: Vec<(usize, usize)> = rows.iter().filter(|r| !r.consistent).map(|r| (r.n, r.k)).collect();
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| [r.n.to_string(), r.k.to_string(), r.mb.to_string(), r.be.to_string(), fd(r)])
        .collect();
    ctx.verdict(
        "statistics-table",
        "fock::statistics_table",
        None,
        bad.is_empty(),
        format!("{} rows; closed forms, enumeration and quotient oracle agree", rows.len()),
        json!({ "rows": cells, "inconsistent": bad }),
    );
}

pub(crate) fn run(cmd: FockCmd, ctx: &mut Ctx) -> CliResult<String> {
    match cmd {
        FockCmd::Count { n, k, stat } => {
            let which: Vec<Counting> = match stat {
                CountArg::Mb => vec![Counting::MaxwellBoltzmann],
                CountArg::Be => vec![Counting::BoseEinstein],
                CountArg::Fd => vec![Counting::FermiDirac],
                CountArg::All => Counting::ALL.to_vec(),
            };
            if which == [Counting::FermiDirac] && n > k {
                return Err(CliError::Usage(format!("{n} fermions do not fit in {k} modes")));
            }
            count(ctx, n, k, &which);
            Ok("fock count".into())
        }
        FockCmd::Algebra { modes, nmax, stat } => {
            algebra(ctx, &space(modes, nmax, stat.into())?, None);
            Ok("fock algebra".into())
        }
        FockCmd::Check { file } => {
            let f = space_from_json(&read_input(&file)?, &file)?;
            algebra(ctx, &f, Some(&file));
            Ok("fock check".into())
        }
        FockCmd::Table { max_n, max_k, csv } => {
            table(ctx, max_n, max_k, csv);
            Ok("fock table".into())
        }
        FockCmd::Ladder {
            modes,
            nmax,
            stat,
            mode,
            state,
        } => {
            let f = space(modes, nmax, stat.into())?;
            ladder(ctx, &f, mode, &parse_occupancy(&state)?)?;
            Ok("fock ladder".into())
        }
        FockCmd::Indist { count } => {
            indist(ctx, count);
            Ok("fock indist".into())
        }
    }
}
