//! Linear-optics synthesis of the chain propagator.
//!
//! The time evolution factorizes into a palindromic gate sequence
//! `[couplers] [squeezers] [rotators] [inverse squeezers] [inverse couplers]`:
//! the coupler layer rotates the quadratures into the normal-mode basis, one
//! squeezer per mode balances its stiffness against the bare momentum term,
//! the rotators carry the entire time dependence, and the outer layers undo
//! the basis change. Composing the sequence reproduces the direct matrix
//! exponential of the Hamiltonian flow to within 1e-9 (the `oracle` module
//! is the independent arbiter of this equivalence).
//!
//! For the rotating-wave model both quadrature blocks diagonalize at once,
//! so the squeezer layers are absent and each mode just rotates at its
//! eigen-frequency.

use nalgebra::DMatrix;

use crate::chain::{ChainModel, ChainSpec, EigenSystem};
use crate::error::{Error, Result};
use crate::symplectic::{compose, Gate, SymplecticMap};

/// Per-mode squeeze parameters and rotation angles for a given time.
///
/// `squeeze[j] = ln(2 E_j / omega) / 4` (exactly 0 for the bare mode) and
/// `angles[j] = (t/2) sqrt(2 E_j omega)` for the full model;
/// `squeeze[j] = 0`, `angles[j] = E_j t` for the rotating-wave model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSchedule {
    pub squeeze: Vec<f64>,
    pub angles: Vec<f64>,
}

/// An ordered gate list realizing the propagator for `spec` at time `t`.
/// Gates are listed in temporal order (first applied first).
#[derive(Debug, Clone, PartialEq)]
pub struct GateSequence {
    pub gates: Vec<Gate>,
    pub n: usize,
    pub t: f64,
    pub spec: ChainSpec,
}

impl GateSequence {
    /// Composes the sequence into a single symplectic map.
    pub fn compose(&self) -> Result<SymplecticMap> {
        if self.gates.is_empty() {
            return Ok(SymplecticMap::identity(self.n));
        }
        let maps: Vec<SymplecticMap> = self
            .gates
            .iter()
            .map(|g| g.symplectic_map(self.n))
            .collect::<Result<_>>()?;
        compose(&maps)
    }
}

/// The n x n orthogonal matrix implemented by a coupler list (temporal
/// order), acting identically on the position and momentum quadratures.
pub fn pattern_orthogonal(n: usize, gates: &[Gate]) -> Result<DMatrix<f64>> {
    let mut acc = DMatrix::<f64>::identity(n, n);
    for g in gates {
        let Gate::Coupler {
            modes: (a, b),
            theta,
        } = *g
        else {
            return Err(Error::InvalidParameter(
                "pattern may contain only couplers".into(),
            ));
        };
        if a == 0 || a > n || b == 0 || b > n || a == b {
            return Err(Error::ModeIndex { index: b, modes: n });
        }
        let mut c = DMatrix::<f64>::identity(n, n);
        c[(a - 1, a - 1)] = theta.cos();
        c[(b - 1, b - 1)] = theta.cos();
        c[(a - 1, b - 1)] = -theta.sin();
        c[(b - 1, a - 1)] = theta.sin();
        acc = c * acc;
    }
    Ok(acc)
}

/// Givens factorization of the mode matrix into couplers.
///
/// Canonical elimination order: rows bottom-up, each row left-to-right,
/// zeroing `alpha[i][j]` against the diagonal anchor `alpha[i][i]`. The
/// composed pattern reproduces the mode matrix up to row signs (the mode
/// matrix may have determinant -1, which no rotation product can reach;
/// row signs affect neither the propagator nor any covariance produced
/// by it). At most `n(n-1)/2` couplers are emitted.
pub fn coupler_pattern(es: &EigenSystem) -> Result<Vec<Gate>> {
    let n = es.n();
    let alpha = es.mode_matrix();
    let ortho_resid = (alpha * alpha.transpose() - DMatrix::<f64>::identity(n, n)).amax();
    if ortho_resid > 1e-10 {
        return Err(Error::InvalidParameter(format!(
            "mode matrix not orthogonal (residual {ortho_resid:.3e})"
        )));
    }

    let mut work = alpha.clone();
    let mut gates = Vec::with_capacity(n * (n - 1) / 2);
    for i in (1..n).rev() {
        for j in 0..i {
            if work[(i, j)].abs() < 1e-14 {
                continue;
            }
            let theta = (-work[(i, j)]).atan2(work[(i, i)]);
            let (c, s) = (theta.cos(), theta.sin());
            // Right-rotation in the (j, i) column plane.
            for r in 0..n {
                let (wj, wi) = (work[(r, j)], work[(r, i)]);
                work[(r, j)] = c * wj + s * wi;
                work[(r, i)] = -s * wj + c * wi;
            }
            gates.push(Gate::coupler(j + 1, i + 1, -theta));
        }
    }
    Ok(gates)
}

/// Squeeze parameters and rotation angles for every mode at time `t`.
pub fn mode_schedule(es: &EigenSystem, spec: &ChainSpec, t: f64) -> Result<ModeSchedule> {
    let omega = spec.omega();
    let mut squeeze = Vec::with_capacity(es.n());
    let mut angles = Vec::with_capacity(es.n());
    for &e in es.energies() {
        if e <= 0.0 {
            return Err(Error::UnstableChain(format!("E = {e} <= 0")));
        }
        match spec.model() {
            ChainModel::Full => {
                squeeze.push((2.0 * e / omega).ln() / 4.0);
                angles.push(t / 2.0 * (2.0 * e * omega).sqrt());
            }
            ChainModel::RotatingWave => {
                squeeze.push(0.0);
                angles.push(e * t);
            }
        }
    }
    Ok(ModeSchedule { squeeze, angles })
}

/// Synthesizes the full propagator sequence for `spec` at time `t`.
///
/// Every mode gets a rotator, including the bare mode of odd chains
/// (its squeeze is exactly zero and its angle is `omega*t/2`); leaving it
/// out would break the oracle equivalence, and as a purely local rotation
/// it cannot change any correlation.
pub fn build_propagator(spec: &ChainSpec, t: f64) -> Result<GateSequence> {
    let es = spec.eigensystem()?;
    let schedule = mode_schedule(&es, spec, t)?;
    let pattern = coupler_pattern(&es)?;
    let n = es.n();

    let mut gates = Vec::with_capacity(2 * pattern.len() + 3 * n);
    gates.extend(pattern.iter().copied());
    if spec.model() == ChainModel::Full {
        for (j, &s) in schedule.squeeze.iter().enumerate() {
            gates.push(Gate::squeezer(j + 1, -s));
        }
    }
    for (j, &phi) in schedule.angles.iter().enumerate() {
        gates.push(Gate::rotator(j + 1, phi));
    }
    if spec.model() == ChainModel::Full {
        for (j, &s) in schedule.squeeze.iter().enumerate() {
            gates.push(Gate::squeezer(j + 1, s));
        }
    }
    gates.extend(pattern.iter().rev().map(|g| g.inverse()));

    Ok(GateSequence {
        gates,
        n,
        t,
        spec: spec.clone(),
    })
}

/// Serializes a gate list to the line-oriented circuit format: one gate per
/// line (`coupler <j> <k> <theta>`, `squeezer <j> <s>`, `rotator <j> <phi>`),
/// temporal order top to bottom, parameters with 17 significant digits so
/// that parsing reproduces the exact values.
pub fn export_circuit(seq: &GateSequence) -> String {
    let mut out = String::new();
    for g in &seq.gates {
        match *g {
            Gate::Coupler {
                modes: (a, b),
                theta,
            } => {
                out.push_str(&format!("coupler {a} {b} {theta:.17e}\n"));
            }
            Gate::Squeezer { mode, s } => {
                out.push_str(&format!("squeezer {mode} {s:.17e}\n"));
            }
            Gate::Rotator { mode, angle } => {
                out.push_str(&format!("rotator {mode} {angle:.17e}\n"));
            }
        }
    }
    out
}

/// Parses the circuit format back into a gate list. `'#'` starts a comment;
/// blank lines are ignored. Mode indices are validated against `n`.
pub fn parse_circuit(text: &str, n: usize) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let parse_mode = |s: &str| -> Result<usize> {
            let m: usize = s.parse().map_err(|_| Error::CircuitParse {
                line,
                message: format!("invalid mode index '{s}'"),
            })?;
            if m == 0 || m > n {
                return Err(Error::CircuitParse {
                    line,
                    message: format!("mode index {m} out of range for {n} modes"),
                });
            }
            Ok(m)
        };
        let parse_param = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::CircuitParse {
                line,
                message: format!("invalid parameter '{s}'"),
            })
        };
        let gate = match (fields[0], fields.len()) {
            ("coupler", 4) => {
                let a = parse_mode(fields[1])?;
                let b = parse_mode(fields[2])?;
                if a == b {
                    return Err(Error::CircuitParse {
                        line,
                        message: format!("coupler modes must differ, got ({a}, {b})"),
                    });
                }
                Gate::coupler(a, b, parse_param(fields[3])?)
            }
            ("squeezer", 3) => Gate::squeezer(parse_mode(fields[1])?, parse_param(fields[2])?),
            ("rotator", 3) => Gate::rotator(parse_mode(fields[1])?, parse_param(fields[2])?),
            (kind, _) => {
                return Err(Error::CircuitParse {
                    line,
                    message: format!("unrecognized or malformed gate line '{kind}'"),
                })
            }
        };
        gates.push(gate);
    }
    Ok(gates)
}
