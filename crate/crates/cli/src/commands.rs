//! Implementations of the CLI subcommands.

use gausschain::{
    build_propagator, correlation_blocks, direct_propagator, export_circuit, initial_state,
    log_negativity, reduce_pair, run_sweep, ChainModel, CovarianceMatrix, Engine, Error,
    SweepConfig,
};

use crate::config::{Format, RunConfig};
use crate::emit::{covariance_to_text, records_to_csv, records_to_json, write_output};
use crate::CliError;

fn map_core(e: Error) -> CliError {
    match e {
        Error::InvalidParameter(_)
        | Error::UnstableChain(_)
        | Error::ModeIndex { .. }
        | Error::GridTooLarge(_) => CliError::Config(e.to_string()),
        _ => CliError::Validation(e.to_string()),
    }
}

fn sweep_config(run: &RunConfig, tagging: Option<f64>) -> Result<SweepConfig, CliError> {
    let spec = run.chain_spec()?;
    let mut config = SweepConfig::new(spec);
    config.tau_start = run.tau_start;
    config.tau_end = run.tau_end;
    config.tau_step = run.tau_step;
    if let Some(pairs) = &run.pairs {
        config.pairs = pairs.clone();
    }
    config.tagging = tagging;
    config.record_blocks = run.record_blocks;
    config.engine = run.engine;
    config.validate().map_err(map_core)?;
    Ok(config)
}

fn emit_sweep(run: &RunConfig, config: &SweepConfig) -> Result<(), CliError> {
    let records = run_sweep(config).map_err(map_core)?;
    let text = match run.format {
        Format::Csv => records_to_csv(&records, config.record_blocks),
        Format::Json => records_to_json(&records),
    };
    write_output(&text, run.out.as_deref())
}

/// `sweep`: vacuum-input entanglement sweep.
pub fn cmd_sweep(run: &RunConfig) -> Result<(), CliError> {
    if run.tagging.is_some() {
        return Err(CliError::Config(
            "sweep.r is set but the command is 'sweep'; use 'tag' for tagged sweeps".into(),
        ));
    }
    let config = sweep_config(run, None)?;
    emit_sweep(run, &config)
}

/// `tag`: sweep with the end oscillators pre-squeezed.
pub fn cmd_tag(run: &RunConfig) -> Result<(), CliError> {
    let r = run
        .tagging
        .ok_or_else(|| CliError::Config("command 'tag' requires sweep.r to be set".into()))?;
    let config = sweep_config(run, Some(r))?;
    emit_sweep(run, &config)
}

/// `simulate`: propagate the initial state to a single time and emit the
/// full covariance matrix.
pub fn cmd_simulate(run: &RunConfig) -> Result<(), CliError> {
    let tau = run.simulate_tau.ok_or_else(|| {
        CliError::Config("command 'simulate' requires simulate.tau to be set".into())
    })?;
    let config = sweep_config(run, run.tagging)?;
    let spec = &config.spec;
    spec.validate_stability().map_err(map_core)?;
    let initial = initial_state(&config);
    let t = tau / spec.omega();

    let propagate = |engine: Engine| -> Result<CovarianceMatrix, CliError> {
        let map = match engine {
            Engine::Oracle => direct_propagator(spec, t),
            _ => build_propagator(spec, t)
                .map_err(map_core)?
                .compose()
                .map_err(map_core)?,
        };
        map.apply(&initial).map_err(map_core)
    };

    let v = match run.engine {
        Engine::Decomposition => propagate(Engine::Decomposition)?,
        Engine::Oracle => propagate(Engine::Oracle)?,
        Engine::Both => {
            let a = propagate(Engine::Decomposition)?;
            let b = propagate(Engine::Oracle)?;
            let diff = (a.matrix() - b.matrix()).amax();
            if diff > 1e-8 {
                return Err(CliError::Validation(format!(
                    "engine cross-check failed: covariances differ by {diff:.3e}"
                )));
            }
            a
        }
    };
    write_output(&covariance_to_text(&v, tau, run.format), run.out.as_deref())
}

/// `decompose`: emit the gate sequence for one evolution time in the
/// line-oriented circuit format.
pub fn cmd_decompose(run: &RunConfig) -> Result<(), CliError> {
    let tau = run.decompose_tau.ok_or_else(|| {
        CliError::Config("command 'decompose' requires decompose.tau to be set".into())
    })?;
    let spec = run.chain_spec()?;
    let t = tau / spec.omega();
    let seq = build_propagator(&spec, t).map_err(map_core)?;
    write_output(&export_circuit(&seq), run.out.as_deref())
}

/// `validate`: run the oracle-equivalence, symplecticity, purity and
/// mirror-symmetry suites for the configured chain, print one line per
/// property, and fail (exit 2) when any tolerance is exceeded.
pub fn cmd_validate(run: &RunConfig) -> Result<(), CliError> {
    let spec = run.chain_spec()?;
    let mut all_pass = true;
    let mut report = |name: &str, ok: bool, detail: String| {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        all_pass &= ok;
    };

    if let Err(e) = spec.validate_stability() {
        report("stability", false, e.to_string());
        return Err(CliError::Validation("chain is unstable".into()));
    }
    report(
        "stability",
        true,
        format!("all eigen-frequencies positive (n={})", spec.n()),
    );

    // Sample times across the configured window.
    let samples: Vec<f64> = (0..=24)
        .map(|i| run.tau_start + (run.tau_end - run.tau_start) * i as f64 / 24.0)
        .collect();

    let config = sweep_config(run, run.tagging)?;
    let initial = initial_state(&config);
    let n = spec.n();

    let mut max_equiv = 0.0f64;
    let mut max_symp = 0.0f64;
    let mut max_purity = 0.0f64;
    let mut max_mirror = 0.0f64;
    let mut max_agree = 0.0f64;
    let mut max_rwa = 0.0f64;
    let mut max_end = 0.0f64;
    for &tau in &samples {
        let t = tau / spec.omega();
        let synth = build_propagator(&spec, t)
            .map_err(map_core)?
            .compose()
            .map_err(map_core)?;
        let direct = direct_propagator(&spec, t);
        max_equiv = max_equiv.max((synth.matrix() - direct.matrix()).amax());
        max_symp = max_symp
            .max(synth.symplectic_residual())
            .max(direct.symplectic_residual());

        let v = synth.apply(&initial).map_err(map_core)?;
        let v_oracle = direct.apply(&initial).map_err(map_core)?;
        for nu in v.symplectic_eigenvalues().map_err(map_core)? {
            max_purity = max_purity.max((nu - 1.0).abs());
        }

        let blocks = correlation_blocks(&v);
        max_mirror = max_mirror
            .max((blocks.local(1) - blocks.local(n)).amax())
            .max((blocks.cross(1, 2) - blocks.cross(n - 1, n).transpose()).amax());

        for a in 1..=n {
            for b in a + 1..=n {
                let lam =
                    log_negativity(&reduce_pair(&v, a, b).map_err(map_core)?).map_err(map_core)?;
                let lam_o = log_negativity(&reduce_pair(&v_oracle, a, b).map_err(map_core)?)
                    .map_err(map_core)?;
                max_agree = max_agree.max((lam - lam_o).abs());
                if spec.model() == ChainModel::RotatingWave && run.tagging.is_none() {
                    max_rwa = max_rwa.max(lam);
                }
                if (a, b) == (1, n) {
                    max_end = max_end.max(lam);
                }
            }
        }
    }

    report(
        "oracle-equivalence",
        max_equiv < 1e-9,
        format!("max |decomposition - exponential| = {max_equiv:.3e} (tol 1e-9)"),
    );
    report(
        "symplecticity",
        max_symp < 1e-10,
        format!("max |S Omega S^T - Omega| = {max_symp:.3e} (tol 1e-10)"),
    );
    report(
        "purity",
        max_purity < 1e-9,
        format!("max |nu - 1| = {max_purity:.3e} (tol 1e-9)"),
    );
    report(
        "mirror-symmetry",
        max_mirror < 1e-10,
        format!("max block deviation = {max_mirror:.3e} (tol 1e-10)"),
    );
    report(
        "engine-agreement",
        max_agree < 1e-8,
        format!("max log-negativity difference = {max_agree:.3e} (tol 1e-8)"),
    );
    if spec.model() == ChainModel::RotatingWave && run.tagging.is_none() {
        report(
            "rotating-wave-null",
            max_rwa < 1e-12,
            format!("max pairwise log-negativity = {max_rwa:.3e} (tol 1e-12)"),
        );
    }
    if let Some(r) = run.tagging {
        // Informational only: how the end-to-end entanglement compares
        // to the tagging squeeze over the sampled window.
        println!("INFO end-to-end: max log-negativity (1,{n}) = {max_end:.6} at r = {r}");
    }

    if all_pass {
        Ok(())
    } else {
        Err(CliError::Validation("one or more properties failed".into()))
    }
}
