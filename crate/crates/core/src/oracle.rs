//! Brute-force propagator: direct matrix exponential of the Hamiltonian
//! flow, independent of the gate decomposition. Used to validate every
//! synthesized sequence and to pin sign conventions.
//!
//! Time convention: the propagator for time `t` is `exp(Omega * (G/2) * t)`
//! with `H = 1/2 x^T G x`. Under this normalization a bare oscillator
//! advances by phase `omega*t/2`, so the rotator schedule angles
//! `phi_j = (t/2) sqrt(2 E_j omega)` are literally the phase-space rotation
//! angles, and the dimensionless interaction time is `tau = omega*t`.

use nalgebra::DMatrix;

use crate::chain::ChainSpec;
use crate::error::{Error, Result};
use crate::symplectic::{symplectic_form, SymplecticMap};

/// Pade(13) coefficients for the scaling-and-squaring matrix exponential
/// (Higham 2005).
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// 1-norm threshold above which the argument is scaled before Pade(13).
const THETA13: f64 = 5.371_920_351_148_152;

fn one_norm(m: &DMatrix<f64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential via scaling-and-squaring with Pade(13).
///
/// Accurate to machine precision for the modest norms arising here
/// (`||Omega G t / 2|| <~ 10^2`).
pub fn matrix_exponential(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter(
            "matrix exponential of non-finite entries".into(),
        ));
    }
    let dim = m.nrows();
    if dim == 0 {
        return Ok(m.clone());
    }

    let norm = one_norm(m);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let a = m / 2f64.powi(squarings as i32);

    let id = DMatrix::<f64>::identity(dim, dim);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let u_inner = &a6 * (&a6 * PADE13[13] + &a4 * PADE13[11] + &a2 * PADE13[9])
        + &a6 * PADE13[7]
        + &a4 * PADE13[5]
        + &a2 * PADE13[3]
        + &id * PADE13[1];
    let u = &a * u_inner;
    let v = &a6 * (&a6 * PADE13[12] + &a4 * PADE13[10] + &a2 * PADE13[8])
        + &a6 * PADE13[6]
        + &a4 * PADE13[4]
        + &a2 * PADE13[2]
        + &id * PADE13[0];

    // exp(a) ~ (v - u)^{-1} (v + u)
    let num = &v + &u;
    let den = &v - &u;
    let mut exp = den
        .lu()
        .solve(&num)
        .ok_or_else(|| Error::InvalidParameter("singular Pade denominator".into()))?;
    for _ in 0..squarings {
        exp = &exp * &exp;
    }
    Ok(exp)
}

/// Phase-space flow of the chain Hamiltonian over time `t`:
/// `exp(Omega * (G/2) * t)` (see the module docs for the time convention).
///
/// The exponential exists for any finite parameters; stability is not
/// required. The result is symplectic within 1e-10.
pub fn direct_propagator(spec: &ChainSpec, t: f64) -> SymplecticMap {
    let n = spec.n();
    let generator = symplectic_form(n) * (spec.quadratic_form().matrix() / 2.0) * t;
    let m = matrix_exponential(&generator).expect("finite generator");
    SymplecticMap::from_matrix_unchecked(m, n)
}
