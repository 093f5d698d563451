//! Covariance matrices, gates, and their symplectic phase-space actions.
//!
//! Conventions, fixed once for the whole library:
//! - quadrature ordering is interleaved, `x = (q1, p1, ..., qN, pN)`;
//! - the symplectic form is `Omega = ⊕_j [[0, 1], [-1, 0]]`;
//! - maps act on quadratures as `x -> S x` and on states as `V -> S V S^T`;
//! - the vacuum covariance is the identity (`V_ab = <{x_a, x_b}>`).

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};

/// Tolerance for the symplectic-condition check `S Omega S^T = Omega`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;
/// Tolerance for symmetry of covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// A state is bona fide when every symplectic eigenvalue is `>= 1 - PHYSICAL_TOL`.
pub const PHYSICAL_TOL: f64 = 1e-10;

/// The symplectic form `⊕_j [[0, 1], [-1, 0]]` on `n` modes.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut o = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for j in 0..n {
        o[(2 * j, 2 * j + 1)] = 1.0;
        o[(2 * j + 1, 2 * j)] = -1.0;
    }
    o
}

/// A single linear-optics element. Mode indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    /// Phase-space rotation of `mode` by `angle`:
    /// `[[cos, sin], [-sin, cos]]`.
    Rotator { mode: usize, angle: f64 },
    /// Single-mode squeezer: `q -> e^{-s} q`, `p -> e^{s} p`.
    Squeezer { mode: usize, s: f64 },
    /// Two-mode coupler (beam splitter) with transmittivity `cos(theta)`,
    /// reflectivity `sin(theta)`; `theta = pi/4` is 50:50.
    Coupler { modes: (usize, usize), theta: f64 },
}

impl Gate {
    pub fn rotator(mode: usize, angle: f64) -> Self {
        Gate::Rotator { mode, angle }
    }

    pub fn squeezer(mode: usize, s: f64) -> Self {
        Gate::Squeezer { mode, s }
    }

    pub fn coupler(a: usize, b: usize, theta: f64) -> Self {
        Gate::Coupler {
            modes: (a, b),
            theta,
        }
    }

    /// The gate with its parameter negated; composing a gate with its
    /// inverse yields the identity map.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::Rotator { mode, angle } => Gate::Rotator {
                mode,
                angle: -angle,
            },
            Gate::Squeezer { mode, s } => Gate::Squeezer { mode, s: -s },
            Gate::Coupler { modes, theta } => Gate::Coupler {
                modes,
                theta: -theta,
            },
        }
    }

    fn check_mode(mode: usize, n: usize) -> Result<()> {
        if mode == 0 || mode > n {
            return Err(Error::ModeIndex {
                index: mode,
                modes: n,
            });
        }
        Ok(())
    }

    /// Embeds the gate's block into the `2n x 2n` identity.
    pub fn symplectic_map(&self, n: usize) -> Result<SymplecticMap> {
        let mut m = DMatrix::<f64>::identity(2 * n, 2 * n);
        match *self {
            Gate::Rotator { mode, angle } => {
                Self::check_mode(mode, n)?;
                let j = 2 * (mode - 1);
                let (c, s) = (angle.cos(), angle.sin());
                m[(j, j)] = c;
                m[(j, j + 1)] = s;
                m[(j + 1, j)] = -s;
                m[(j + 1, j + 1)] = c;
            }
            Gate::Squeezer { mode, s } => {
                Self::check_mode(mode, n)?;
                let j = 2 * (mode - 1);
                m[(j, j)] = (-s).exp();
                m[(j + 1, j + 1)] = s.exp();
            }
            Gate::Coupler {
                modes: (a, b),
                theta,
            } => {
                Self::check_mode(a, n)?;
                Self::check_mode(b, n)?;
                if a == b {
                    return Err(Error::InvalidParameter(format!(
                        "coupler needs two distinct modes, got ({a}, {b})"
                    )));
                }
                let (t, r) = (theta.cos(), theta.sin());
                let (ja, jb) = (2 * (a - 1), 2 * (b - 1));
                for k in 0..2 {
                    m[(ja + k, ja + k)] = t;
                    m[(jb + k, jb + k)] = t;
                    m[(ja + k, jb + k)] = -r;
                    m[(jb + k, ja + k)] = r;
                }
            }
        }
        Ok(SymplecticMap { s: m, n })
    }
}

/// A `2n x 2n` real matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMap {
    s: DMatrix<f64>,
    n: usize,
}

impl SymplecticMap {
    pub fn identity(n: usize) -> Self {
        Self {
            s: DMatrix::identity(2 * n, 2 * n),
            n,
        }
    }

    /// Validates the symplectic condition `S Omega S^T = Omega` within
    /// [`SYMPLECTIC_TOL`].
    pub fn from_matrix(s: DMatrix<f64>) -> Result<Self> {
        if s.nrows() != s.ncols() || !s.nrows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: s.nrows(),
                found: s.ncols(),
            });
        }
        let n = s.nrows() / 2;
        let omega = symplectic_form(n);
        let resid = (&s * &omega * s.transpose() - &omega).amax();
        if resid > SYMPLECTIC_TOL {
            return Err(Error::InvalidParameter(format!(
                "matrix is not symplectic (residual {resid:.3e})"
            )));
        }
        Ok(Self { s, n })
    }

    /// Internal constructor for products of already-validated maps.
    pub(crate) fn from_matrix_unchecked(s: DMatrix<f64>, n: usize) -> Self {
        Self { s, n }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// Residual of the symplectic condition, `max |S Omega S^T - Omega|`.
    pub fn symplectic_residual(&self) -> f64 {
        let omega = symplectic_form(self.n);
        (&self.s * &omega * self.s.transpose() - &omega).amax()
    }

    /// Transforms a state: `V -> S V S^T`. The result is re-symmetrized
    /// to absorb floating-point round-off.
    pub fn apply(&self, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
        if v.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: 2 * self.n,
                found: 2 * v.n,
            });
        }
        let raw = &self.s * &v.v * self.s.transpose();
        let sym = (&raw + raw.transpose()) / 2.0;
        Ok(CovarianceMatrix { v: sym, n: v.n })
    }
}

/// Composes maps in temporal order: the first map in the slice is applied
/// first, so the result is the reversed matrix product.
pub fn compose(maps: &[SymplecticMap]) -> Result<SymplecticMap> {
    let first = maps
        .first()
        .ok_or_else(|| Error::InvalidParameter("cannot compose an empty map list".into()))?;
    let n = first.n;
    let mut acc = DMatrix::<f64>::identity(2 * n, 2 * n);
    for m in maps {
        if m.n != n {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: 2 * m.n,
            });
        }
        acc = &m.s * acc;
    }
    Ok(SymplecticMap { s: acc, n })
}

/// Symmetric second-moment matrix of a Gaussian state, vacuum = identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    v: DMatrix<f64>,
    n: usize,
}

impl CovarianceMatrix {
    /// The n-mode vacuum: `2n x 2n` identity.
    pub fn vacuum(n: usize) -> Self {
        assert!(n >= 1, "need at least one mode");
        Self {
            v: DMatrix::identity(2 * n, 2 * n),
            n,
        }
    }

    /// Validates shape and symmetry (within [`SYMMETRY_TOL`]).
    pub fn from_matrix(v: DMatrix<f64>) -> Result<Self> {
        if v.nrows() != v.ncols() || !v.nrows().is_multiple_of(2) || v.nrows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: v.nrows(),
                found: v.ncols(),
            });
        }
        let asym = (&v - v.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(asym));
        }
        let n = v.nrows() / 2;
        Ok(Self { v, n })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.v
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// The 2x2 block coupling oscillators `j` and `k` (1-based).
    pub fn block(&self, j: usize, k: usize) -> Matrix2<f64> {
        let (r, c) = (2 * (j - 1), 2 * (k - 1));
        Matrix2::new(
            self.v[(r, c)],
            self.v[(r, c + 1)],
            self.v[(r + 1, c)],
            self.v[(r + 1, c + 1)],
        )
    }

    /// Symplectic eigenvalues, one per pair, sorted ascending.
    ///
    /// They are the moduli of the (purely imaginary) eigenvalues of
    /// `Omega V`; a real part beyond tolerance is reported as an error.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        symplectic_eigenvalues_of(&self.v)
    }

    /// True when every symplectic eigenvalue is `>= 1 - PHYSICAL_TOL`.
    pub fn is_physical(&self) -> Result<bool> {
        let nu = self.symplectic_eigenvalues()?;
        Ok(nu.iter().all(|&g| g >= 1.0 - PHYSICAL_TOL))
    }
}

/// Symplectic eigenvalues of an arbitrary symmetric positive-definite
/// matrix in the interleaved ordering (shared by [`CovarianceMatrix`] and
/// pair states).
///
/// Computed through symmetric eigensolves only: with `K = V^{1/2} Omega
/// V^{1/2}` (antisymmetric, similar to `Omega V`), the matrix `K^T K = -K^2`
/// is symmetric positive semi-definite with eigenvalues `nu_j^2`, each
/// doubled. Unsymmetric QR is avoided on purpose — it can stall on the
/// exactly degenerate spectra that pure states produce.
pub(crate) fn symplectic_eigenvalues_of(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let asym = (v - v.transpose()).amax();
    if asym > 1e-9 {
        return Err(Error::NotSymmetric(asym));
    }
    let n = v.nrows() / 2;
    let scale = v.amax().max(1.0);

    let se = nalgebra::linalg::SymmetricEigen::new((v + v.transpose()) / 2.0);
    let min_eig = se.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_eig < -1e-12 * scale {
        return Err(Error::NotPositiveDefinite(min_eig));
    }
    let sqrt_diag = DMatrix::from_diagonal(&se.eigenvalues.map(|e| e.max(0.0).sqrt()));
    let sqrt_v = &se.eigenvectors * sqrt_diag * se.eigenvectors.transpose();

    let k = &sqrt_v * symplectic_form(n) * &sqrt_v;
    let m = k.transpose() * &k;
    let mut nu2: Vec<f64> = nalgebra::linalg::SymmetricEigen::new((&m + m.transpose()) / 2.0)
        .eigenvalues
        .iter()
        .map(|e| e.max(0.0))
        .collect();
    nu2.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // Eigenvalues of -K^2 come doubled; average each pair.
    Ok((0..n)
        .map(|j| ((nu2[2 * j] + nu2[2 * j + 1]) / 2.0).sqrt())
        .collect())
}
