use std::path::{Path, PathBuf};

use clap::Subcommand;
use num_complex::Complex64;
use rand::Rng;
use serde_json::json;

use super::{read_input, usage, CliError, CliResult, Ctx};
use crate::quantum::random::{random_degenerate_hermitian, random_hermitian, random_state, random_unitary};
use crate::quantum::{
    born_probability, evolve, norm_sq, position_wavefunction, spectral_decompose, validate_qm_structure, with_phase,
    BorelSet, CMatrix, CVector, Grid, QmStructure, SystemSigma, NORM_TOL,
};

pub(crate) const SUM_TOL: f64 = 1e-10;
pub(crate) const COVARIANCE_TOL: f64 = 1e-9;
pub(crate) const RECONSTRUCTION_TOL: f64 = 1e-9;

#[derive(Debug, Subcommand)]
pub(crate) enum QmCmd {
    /// Validate a QM structure file.
    Check { file: PathBuf },
    /// Born probability that an observable of a system lands in a Borel set.
    Prob {
        file: PathBuf,
        #[arg(long)]
        system: String,
        #[arg(long)]
        observable: String,
        #[arg(long)]
        state: String,
        /// For example `[0,1]`, `{1,-1}` or `(-inf,0) U {2}`.
        #[arg(long, allow_hyphen_values = true)]
        delta: String,
    },
    /// Apply a unitary to a state.
    Evolve {
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long)]
        unitary: String,
    },
    /// Eigenvalues and eigenspace projectors of an observable.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        observable: String,
    },
    /// Read a state's coefficients as a wave function on a uniform grid.
    Wave {
        file: PathBuf,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 1.0)]
        dx: f64,
        /// Region for the position probability.
        #[arg(long, default_value = "R", allow_hyphen_values = true)]
        delta: String,
    },
    /// Born-rule, covariance and spectral laws on random states and observables.
    Laws {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
    },
}

fn load(path: &Path) -> CliResult<QmStructure> {
    QmStructure::from_json(&read_input(path)?).map_err(usage(path))
}

fn fmt_c(z: Complex64) -> String {
    if z.im.abs() < 1e-12 {
        format!("{:.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn fmt_vec(v: &CVector) -> String {
    format!("[{}]", v.iter().map(|&z| fmt_c(z)).collect::<Vec<_>>().join(", "))
}

fn reconstruction_error(a: &CMatrix) -> Result<f64, crate::quantum::QuantumError> {
    let spaces = spectral_decompose(a)?;
    let sum = spaces
        .iter()
        .fold(CMatrix::zeros(a.nrows(), a.ncols()), |acc, e| acc + e.projector.scale(e.value));
    Ok((sum - a).camax())
}

pub(crate) fn check_file(ctx: &mut Ctx, q: &QmStructure, input: &Path) {
    let report = validate_qm_structure(q);
    for d in &report.diagnostics {
        ctx.say(format!("diagnostic: {d}"));
    }
    for c in &report.checks {
        ctx.verdict(
            format!("qm:{}", c.name),
            "quantum::validate_qm_structure",
            Some(input),
            c.passed,
            c.detail.clone(),
            json!({ "diagnostics": report.diagnostics }),
        );
    }
}

/// Criterion-style battery: Born sums over eigenspaces, covariance under a
/// random unitary, phase invariance and spectral reconstruction.
pub(crate) fn laws(ctx: &mut Ctx, count: usize, max_dim: usize) {
    let (mut worst_sum, mut worst_cov, mut worst_phase, mut worst_rec) = (0f64, 0f64, 0f64, 0f64);
    for trial in 0..count {
        let d = ctx.rng.random_range(1..=max_dim);
        let a = if trial % 2 == 0 {
            random_hermitian(&mut ctx.rng, d)
        } else {
            random_degenerate_hermitian(&mut ctx.rng, d)
        };
        let psi = random_state(&mut ctx.rng, d);
        let u = random_unitary(&mut ctx.rng, d);
        let theta = ctx.rng.random_range(0.0..std::f64::consts::TAU);

        let spaces = spectral_decompose(&a).expect("random Hermitian");
        let total: f64 = spaces
            .iter()
            .map(|e| born_probability(&psi, &a, &BorelSet::point(e.value)).expect("dimensions agree"))
            .sum();
        worst_sum = worst_sum.max((total - 1.0).abs());

        let mut delta = BorelSet::empty();
        for e in &spaces {
            if ctx.rng.random_bool(0.5) {
                delta = delta.union(&BorelSet::point(e.value));
            }
        }
        let p = born_probability(&psi, &a, &delta).expect("dimensions agree");
        let moved = evolve(&psi, &u).expect("unitary");
        let a_moved = &u * &a * u.adjoint();
        let a_moved = (&a_moved + a_moved.adjoint()).scale(0.5);
        let p_moved = born_probability(&moved, &a_moved, &delta).expect("dimensions agree");
        worst_cov = worst_cov.max((p - p_moved).abs());

        let p_phase = born_probability(&with_phase(&psi, theta), &a, &delta).expect("dimensions agree");
        worst_phase = worst_phase.max((p - p_phase).abs());

        worst_rec = worst_rec.max(reconstruction_error(&a).expect("random Hermitian"));
    }
    let details = |worst: f64, tol: f64| json!({ "trials": count, "max_dim": max_dim, "max_error": worst, "tolerance": tol });
    ctx.verdict(
        "born-sums",
        "quantum::born_probability",
        None,
        worst_sum <= SUM_TOL,
        format!("{count} pairs, worst |sum - 1| = {worst_sum:.2e}"),
        details(worst_sum, SUM_TOL),
    );
    ctx.verdict(
        "unitary-covariance",
        "quantum::evolve",
        None,
        worst_cov <= COVARIANCE_TOL,
        format!("worst |P(psi, A) - P(U psi, U A U*)| = {worst_cov:.2e}"),
        details(worst_cov, COVARIANCE_TOL),
    );
    ctx.verdict(
        "phase-invariance",
        "quantum::with_phase",
        None,
        worst_phase <= COVARIANCE_TOL,
        format!("worst change under a global phase = {worst_phase:.2e}"),
        details(worst_phase, COVARIANCE_TOL),
    );
    ctx.verdict(
        "spectral-reconstruction",
        "quantum::spectral_decompose",
        None,
        worst_rec <= RECONSTRUCTION_TOL,
        format!("worst |sum lambda P - A| = {worst_rec:.2e}"),
        details(worst_rec, RECONSTRUCTION_TOL),
    );
}

pub(crate) fn run(cmd: QmCmd, ctx: &mut Ctx) -> CliResult<String> {
    match cmd {
        QmCmd::Check { file } => {
            let q = load(&file)?;
            check_file(ctx, &q, &file);
            Ok("qm check".into())
        }
        QmCmd::Prob {
            file,
            system,
            observable,
            state,
            delta,
        } => {
            let q = load(&file)?;
            let set = BorelSet::parse(&delta).map_err(usage(&file))?;
            let p = q.probability(&system, &observable, &state, &set).map_err(usage(&file))?;
            let total: f64 = q
                .algebra()
                .atoms()
                .iter()
                .map(|atom| q.probability(&system, &observable, &state, atom))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage(&file))?
                .iter()
                .sum();
            ctx.say(format!("P({observable} in {set} | {state}) = {p:.12}"));
            ctx.verdict(
                "born-probability",
                "quantum::born_probability",
                Some(&file),
                (0.0..=1.0).contains(&p) && (total - 1.0).abs() <= SUM_TOL,
                format!("{p:.12}; the algebra's atoms sum to {total:.12}"),
                json!({ "system": system, "observable": observable, "state": state, "delta": set, "probability": p, "atom_sum": total }),
            );
            Ok("qm prob".into())
        }
        QmCmd::Evolve { file, state, unitary } => {
            let q = load(&file)?;
            let out = q.evolve_state(&state, &unitary).map_err(usage(&file))?;
            let n = norm_sq(&out);
            ctx.say(format!("{unitary} {state} = {}", fmt_vec(&out)));
            let parts: Vec<[f64; 2]> = out.iter().map(|z| [z.re, z.im]).collect();
            ctx.verdict(
                "evolution-preserves-norm",
                "quantum::evolve",
                Some(&file),
                (n - 1.0).abs() <= NORM_TOL,
                format!("squared norm after evolution {n:.12}"),
                json!({ "state": parts }),
            );
            Ok("qm evolve".into())
        }
        QmCmd::Spectrum { file, observable } => {
            let q = load(&file)?;
            let a = &q.observable(&observable).map_err(usage(&file))?.matrix;
            let spaces = spectral_decompose(a).map_err(usage(&file))?;
            for e in &spaces {
                ctx.say(format!("  eigenvalue {:.9} multiplicity {}", e.value, e.multiplicity));
            }
            let err = reconstruction_error(a).map_err(usage(&file))?;
            let values: Vec<(f64, usize)> = spaces.iter().map(|e| (e.value, e.multiplicity)).collect();
            ctx.verdict(
                "spectral-reconstruction",
                "quantum::spectral_decompose",
                Some(&file),
                err <= RECONSTRUCTION_TOL,
                format!("{} eigenspaces, reconstruction error {err:.2e}", spaces.len()),
                json!({ "eigenvalues": values, "error": err }),
            );
            Ok("qm spectrum".into())
        }
        QmCmd::Wave {
            file,
            state,
            x0,
            dx,
            delta,
        } => {
            if dx <= 0.0 {
                return Err(CliError::Usage("--dx must be positive".into()));
            }
            let q = load(&file)?;
            let psi = &q.state(&state).map_err(usage(&file))?.vector;
            let set = BorelSet::parse(&delta).map_err(usage(&file))?;
            let grid = Grid::new(psi.len(), x0, dx, 0.0);
            let wave = position_wavefunction(psi, None, &grid).map_err(usage(&file))?;
            for j in 0..grid.points {
                ctx.say(format!("  psi({:.6}) = {}", grid.x(j), fmt_c(wave[j])));
            }
            let sigma = SystemSigma::new(grid.clone(), wave, set.clone()).map_err(usage(&file))?;
            let p_grid = sigma.position_probability();
            let p_born = born_probability(psi, &grid.position_operator(), &set).map_err(usage(&file))?;
            ctx.verdict(
                "position-probability",
                "quantum::position_wavefunction",
                Some(&file),
                (p_grid - p_born).abs() <= SUM_TOL,
                format!("integral over {set} = {p_grid:.12}, Born rule = {p_born:.12}"),
                json!({ "grid": p_grid, "born": p_born, "x0": x0, "dx": dx }),
            );
            Ok("qm wave".into())
        }
        QmCmd::Laws { count, max_dim } => {
            if count == 0 || max_dim == 0 {
                return Err(CliError::Usage("--count and --max-dim must be positive".into()));
            }
            laws(ctx, count, max_dim);
            Ok("qm laws".into())
        }
    }
}
