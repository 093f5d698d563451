//! Harmonic-chain definition: quadratic form of the Hamiltonian and its
//! analytic eigen-system.
//!
//! The chain couples `n` oscillators of bare frequency `omega` through
//! nearest-neighbor position-position springs of strength `kappa`,
//! `H = (omega/2) sum_j (q_j^2 + p_j^2) + kappa sum_j q_j q_{j+1}`.
//! In the rotating-wave variant the coupling splits evenly between the
//! position and momentum blocks (`kappa/2` each), which drops the
//! excitation-non-conserving terms.
//!
//! The position block is a tridiagonal Toeplitz matrix, so its spectrum and
//! eigenvectors are known in closed form: eigen-frequencies
//! `E_j = omega/2 + kq * cos(j pi / (n+1))` (with `kq` the q-block coupling)
//! and sine-profile eigenvectors.

use nalgebra::DMatrix;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Coupling model: full position-position springs, or co-rotating terms only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainModel {
    Full,
    RotatingWave,
}

/// Physical definition of the chain. Immutable once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    n: usize,
    omega: f64,
    kappa: f64,
    model: ChainModel,
}

impl ChainSpec {
    /// Validates `n >= 2`, `omega > 0` and finite parameters.
    ///
    /// Stability (all eigen-frequencies positive) is *not* required here;
    /// use [`ChainSpec::validate_stability`].
    pub fn new(n: usize, omega: f64, kappa: f64, model: ChainModel) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "chain needs at least 2 oscillators, got {n}"
            )));
        }
        if !omega.is_finite() || omega <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive and finite, got {omega}"
            )));
        }
        if !kappa.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "kappa must be finite, got {kappa}"
            )));
        }
        Ok(Self {
            n,
            omega,
            kappa,
            model,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn model(&self) -> ChainModel {
        self.model
    }

    /// Off-diagonal coupling of the position block.
    pub(crate) fn q_coupling(&self) -> f64 {
        match self.model {
            ChainModel::Full => self.kappa,
            ChainModel::RotatingWave => self.kappa / 2.0,
        }
    }

    /// Off-diagonal coupling of the momentum block.
    pub(crate) fn p_coupling(&self) -> f64 {
        match self.model {
            ChainModel::Full => 0.0,
            ChainModel::RotatingWave => self.kappa / 2.0,
        }
    }

    /// Quadratic form G of the Hamiltonian, `H = 1/2 x^T G x`, in the
    /// interleaved ordering `(q1, p1, ..., qN, pN)`.
    pub fn quadratic_form(&self) -> QuadraticForm {
        let n = self.n;
        let mut g = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for j in 0..n {
            g[(2 * j, 2 * j)] = self.omega;
            g[(2 * j + 1, 2 * j + 1)] = self.omega;
        }
        let (kq, kp) = (self.q_coupling(), self.p_coupling());
        for j in 0..n - 1 {
            g[(2 * j, 2 * (j + 1))] = kq;
            g[(2 * (j + 1), 2 * j)] = kq;
            g[(2 * j + 1, 2 * (j + 1) + 1)] = kp;
            g[(2 * (j + 1) + 1, 2 * j + 1)] = kp;
        }
        QuadraticForm { g, n }
    }

    /// Eigen-frequencies in the closed-form index order `j = 1..=n`
    /// (not yet re-sorted to the library's mode-ordering convention).
    ///
    /// For odd `n` the middle index is the bare mode; its cosine is
    /// analytically zero, so its energy is set to `omega/2` exactly.
    fn raw_energies(&self) -> Vec<f64> {
        let n = self.n;
        let kq = self.q_coupling();
        (1..=n)
            .map(|j| {
                let c = if n % 2 == 1 && 2 * j == n + 1 {
                    0.0
                } else {
                    (j as f64 * PI / (n as f64 + 1.0)).cos()
                };
                self.omega / 2.0 + kq * c
            })
            .collect()
    }

    /// Checks that every eigen-frequency is positive.
    ///
    /// Frequencies below `1e-12 * omega` count as non-positive: the exact
    /// boundary (e.g. `n=2, kappa=omega`) lands on rounding residue, and the
    /// squeeze parameters diverge logarithmically there anyway.
    pub fn validate_stability(&self) -> Result<()> {
        let energies = self.raw_energies();
        let (jmin, emin) = energies
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(j, &e)| (j + 1, e))
            .unwrap();
        if emin <= 1e-12 * self.omega {
            return Err(Error::UnstableChain(format!(
                "E_{jmin} = {emin:.6} <= 0 for n={}, omega={}, kappa={}",
                self.n, self.omega, self.kappa
            )));
        }
        Ok(())
    }

    /// Analytic eigen-system of the position block, re-sorted to the
    /// library's mode-ordering convention (see [`EigenSystem`]).
    pub fn eigensystem(&self) -> Result<EigenSystem> {
        self.validate_stability()?;
        let n = self.n;
        let energies = self.raw_energies();

        // Sort by energy; for odd n pull the bare mode to the front.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| energies[a].partial_cmp(&energies[b]).unwrap());
        if n % 2 == 1 {
            let bare = n.div_ceil(2) - 1;
            order.retain(|&j| j != bare);
            order.insert(0, bare);
        }

        let norm = (2.0 / (n as f64 + 1.0)).sqrt();
        let mut mode_matrix = DMatrix::<f64>::zeros(n, n);
        for (row, &j) in order.iter().enumerate() {
            for k in 0..n {
                let arg = ((j + 1) as f64) * ((k + 1) as f64) * PI / (n as f64 + 1.0);
                mode_matrix[(row, k)] = norm * arg.sin();
            }
            // Sign convention: first non-negligible entry positive.
            let lead = (0..n).find(|&k| mode_matrix[(row, k)].abs() > 1e-9);
            if let Some(k) = lead {
                if mode_matrix[(row, k)] < 0.0 {
                    for k in 0..n {
                        mode_matrix[(row, k)] = -mode_matrix[(row, k)];
                    }
                }
            }
        }

        Ok(EigenSystem {
            energies: order.iter().map(|&j| energies[j]).collect(),
            mode_matrix,
            ordering: order,
        })
    }
}

/// `2n x 2n` symmetric matrix G with `H = 1/2 x^T G x`, interleaved ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    g: DMatrix<f64>,
    n: usize,
}

impl QuadraticForm {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.g
    }

    pub fn modes(&self) -> usize {
        self.n
    }

    /// The n x n position block (rows/columns `q1..qN`).
    pub fn q_block(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.g[(2 * i, 2 * j)])
    }
}

/// Eigen-frequencies and orthogonal mode matrix of the position block.
///
/// Mode ordering convention: for odd `n` the bare mode (energy exactly
/// `omega/2`) comes first, followed by the remaining modes in increasing
/// energy; for even `n` all modes are in increasing energy. Row signs are
/// fixed so each row's first non-negligible entry is positive. `ordering`
/// records the permutation from the closed-form index `j` (0-based) to the
/// output row.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    energies: Vec<f64>,
    mode_matrix: DMatrix<f64>,
    ordering: Vec<usize>,
}

impl EigenSystem {
    pub fn n(&self) -> usize {
        self.energies.len()
    }

    /// Eigen-frequencies `E_j` in the convention order.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// Orthogonal matrix whose rows are the position-block eigenvectors,
    /// in the convention order.
    pub fn mode_matrix(&self) -> &DMatrix<f64> {
        &self.mode_matrix
    }

    /// Permutation from closed-form index to output row.
    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Row of the bare mode (energy exactly `omega/2`), present for odd `n`.
    pub fn bare_index(&self) -> Option<usize> {
        if self.n() % 2 == 1 {
            Some(0)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::linalg::SymmetricEigen;

    fn spec(n: usize, omega: f64, kappa: f64, model: ChainModel) -> ChainSpec {
        ChainSpec::new(n, omega, kappa, model).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(ChainSpec::new(1, 1.0, 0.1, ChainModel::Full).is_err());
        assert!(ChainSpec::new(3, 0.0, 0.1, ChainModel::Full).is_err());
        assert!(ChainSpec::new(3, -1.0, 0.1, ChainModel::Full).is_err());
        assert!(ChainSpec::new(3, 1.0, f64::NAN, ChainModel::Full).is_err());
    }

    #[test]
    fn uncoupled_form_is_identity_scaled() {
        let g = spec(2, 1.0, 0.0, ChainModel::Full).quadratic_form();
        assert_eq!(g.matrix(), &DMatrix::<f64>::identity(4, 4));
    }

    #[test]
    fn full_model_form_structure() {
        let g = spec(3, 1.0, 0.1, ChainModel::Full).quadratic_form();
        let m = g.matrix();
        // q-block tridiag(0.1, 1, 0.1)
        for i in 0..3 {
            assert_eq!(m[(2 * i, 2 * i)], 1.0);
            assert_eq!(m[(2 * i + 1, 2 * i + 1)], 1.0);
        }
        assert_eq!(m[(0, 2)], 0.1);
        assert_eq!(m[(2, 4)], 0.1);
        assert_eq!(m[(0, 4)], 0.0);
        // p-block diagonal
        assert_eq!(m[(1, 3)], 0.0);
        assert_eq!(m[(3, 5)], 0.0);
        assert_eq!(m.transpose(), *m);
    }

    #[test]
    fn rotating_wave_form_splits_coupling() {
        let g = spec(3, 1.0, 0.1, ChainModel::RotatingWave).quadratic_form();
        let m = g.matrix();
        assert_eq!(m[(0, 2)], 0.05);
        assert_eq!(m[(1, 3)], 0.05);
        assert_eq!(m[(2, 4)], 0.05);
        assert_eq!(m[(3, 5)], 0.05);
    }

    #[test]
    fn three_mode_spectrum_closed_form() {
        let es = spec(3, 1.0, 0.1, ChainModel::Full).eigensystem().unwrap();
        let s2 = 2.0_f64.sqrt();
        let expect = [0.5, (1.0 - s2 * 0.1) / 2.0, (1.0 + s2 * 0.1) / 2.0];
        for (e, x) in es.energies().iter().zip(expect) {
            assert!((e - x).abs() < 1e-15, "{e} vs {x}");
        }
        assert_eq!(es.energies()[0], 0.5); // bare mode exact
    }

    #[test]
    fn three_mode_bare_row() {
        let es = spec(3, 2.0, 0.3, ChainModel::Full).eigensystem().unwrap();
        let a = es.mode_matrix();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!((a[(0, 0)] - r).abs() < 1e-15);
        assert!(a[(0, 1)].abs() < 1e-15);
        assert!((a[(0, 2)] + r).abs() < 1e-15);
    }

    #[test]
    fn five_mode_energy_ordering() {
        let es = spec(5, 1.0, 0.1, ChainModel::Full).eigensystem().unwrap();
        let c = |j: f64| 0.5 + 0.1 * (j * PI / 6.0).cos();
        let expect = [0.5, c(5.0), c(4.0), c(2.0), c(1.0)];
        for (e, x) in es.energies().iter().zip(expect) {
            assert!((e - x).abs() < 1e-15, "{e} vs {x}");
        }
    }

    #[test]
    fn stability_boundaries() {
        assert!(spec(3, 1.0, 0.1, ChainModel::Full)
            .validate_stability()
            .is_ok());
        let err = spec(3, 1.0, 0.8, ChainModel::Full)
            .validate_stability()
            .unwrap_err();
        assert!(err.to_string().contains("unstable chain"));
        // n=2, kappa=1: E_min = 0.5 - 0.5 = 0, non-positive.
        assert!(spec(2, 1.0, 1.0, ChainModel::Full)
            .validate_stability()
            .is_err());
        // Negative kappa is fine while stable.
        assert!(spec(3, 1.0, -0.3, ChainModel::Full)
            .validate_stability()
            .is_ok());
    }

    #[test]
    fn eigensystem_orthogonal_and_diagonalizing() {
        for &(n, kappa, model) in &[
            (2, 0.2, ChainModel::Full),
            (3, 0.1, ChainModel::Full),
            (4, -0.15, ChainModel::Full),
            (5, 0.1, ChainModel::RotatingWave),
            (7, 0.25, ChainModel::Full),
        ] {
            let sp = spec(n, 1.0, kappa, model);
            let es = sp.eigensystem().unwrap();
            let a = es.mode_matrix();
            let ata = a * a.transpose();
            let id = DMatrix::<f64>::identity(n, n);
            assert!((ata - &id).amax() < 1e-12, "orthogonality n={n}");

            // a * (q-block/2) * a^T diagonal with the energies.
            let t = sp.quadratic_form().q_block() / 2.0;
            let d = a * t * a.transpose();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { es.energies()[i] } else { 0.0 };
                    assert!((d[(i, j)] - want).abs() < 1e-12, "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn odd_spectrum_pairs_symmetric_about_bare() {
        for n in [3usize, 5, 7, 9] {
            let es = spec(n, 1.0, 0.2, ChainModel::Full).eigensystem().unwrap();
            let e = es.energies();
            assert_eq!(e[0], 0.5);
            // Remaining energies pair up as 0.5 -+ delta.
            let mut shifts: Vec<f64> = e[1..].iter().map(|x| x - 0.5).collect();
            shifts.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let m = shifts.len();
            for i in 0..m / 2 {
                assert!((shifts[i] + shifts[m - 1 - i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn even_spectrum_avoids_bare() {
        for n in [2usize, 4, 6, 8] {
            let es = spec(n, 1.0, 0.2, ChainModel::Full).eigensystem().unwrap();
            for e in es.energies() {
                assert!((e - 0.5).abs() > 1e-12, "n={n}: {e}");
            }
        }
    }

    /// Dense-eigensolver oracle: the analytic eigensystem must match a
    /// generic symmetric eigensolve of the tridiagonal block, up to the
    /// ordering permutation and row signs.
    #[test]
    fn matches_dense_eigensolver_oracle() {
        for n in 2..=12 {
            let sp = spec(n, 1.3, 0.17, ChainModel::Full);
            let es = sp.eigensystem().unwrap();
            let t = sp.quadratic_form().q_block() / 2.0;
            let dense = SymmetricEigen::new(t);

            for row in 0..n {
                // Find the dense eigenpair with the matching eigenvalue.
                let e = es.energies()[row];
                let k = (0..n)
                    .min_by(|&a, &b| {
                        (dense.eigenvalues[a] - e)
                            .abs()
                            .partial_cmp(&(dense.eigenvalues[b] - e).abs())
                            .unwrap()
                    })
                    .unwrap();
                assert!((dense.eigenvalues[k] - e).abs() < 1e-12);
                let v = dense.eigenvectors.column(k);
                // Match up to overall sign.
                let dot: f64 = (0..n).map(|i| v[i] * es.mode_matrix()[(row, i)]).sum();
                for i in 0..n {
                    let want = dot.signum() * v[i];
                    assert!(
                        (es.mode_matrix()[(row, i)] - want).abs() < 1e-10,
                        "n={n} row={row}"
                    );
                }
            }
        }
    }
}
