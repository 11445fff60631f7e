//! Covariance matrices, symplectic transformations and mode bookkeeping.
//!
//! Quadratures are interleaved as `(q1, p1, …, qN, pN)` and the vacuum is
//! normalized to the identity. First moments are never represented; every
//! state handled here is zero-mean.
//!
//! Mode indices are zero-based throughout the crate.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the smallest symplectic eigenvalue for physical states.
pub const BONA_FIDE_TOL: f64 = 1e-9;
/// Entrywise symmetry tolerance, relative to the entry magnitude once it exceeds one.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Entrywise tolerance on `SᵀΩS − Ω`, relative to `‖S‖²` once that exceeds one.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

/// Block-diagonal `n`-mode symplectic form with blocks `[[0, 1], [-1, 0]]`.
pub fn symplectic_form(n: usize) -> Result<DMatrix<f64>> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "symplectic form needs at least one mode".into(),
        ));
    }
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    Ok(omega)
}

/// Single-mode rotation `[[cos θ, −sin θ], [sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, -s, s, c])
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            let scale = m[(i, j)].abs().max(m[(j, i)].abs()).max(1.0);
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs() / scale);
        }
    }
    worst
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn modes_of(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "phase-space matrices must be 2N×2N with N ≥ 1, got {dim}×{dim}"
        )));
    }
    Ok(dim / 2)
}

/// Second-moment matrix of an `N`-mode zero-mean Gaussian state.
///
/// Construction only enforces shape and symmetry; physicality is checked by
/// [`CovarianceMatrix::is_bona_fide`] and by the operations that need it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct CovarianceMatrix {
    modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidDimension(format!(
                "covariance matrix must be square, got {}×{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        let modes = modes_of(entries.nrows())?;
        if entries.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidDimension(
                "covariance matrix has non-finite entries".into(),
            ));
        }
        let deviation = max_asymmetry(&entries);
        if deviation > SYMMETRY_TOL {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(Self {
            modes,
            entries: symmetrize(&entries),
        })
    }

    pub fn from_row_slice(dim: usize, data: &[f64]) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, data))
    }

    /// Vacuum of `n` modes, the identity.
    pub fn vacuum(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("vacuum needs at least one mode".into()));
        }
        Ok(Self {
            modes: n,
            entries: DMatrix::identity(2 * n, 2 * n),
        })
    }

    /// Single-mode thermal state `(2n̄ + 1)·I`.
    pub fn thermal(occupancy: f64) -> Result<Self> {
        crate::error::check_nonnegative("occupancy", occupancy)?;
        Ok(Self {
            modes: 1,
            entries: DMatrix::identity(2, 2) * (2.0 * occupancy + 1.0),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn det(&self) -> f64 {
        self.entries.determinant()
    }

    /// The 2×2 block coupling modes `i` and `j`.
    pub fn block(&self, i: usize, j: usize) -> Result<DMatrix<f64>> {
        self.check_mode(i)?;
        self.check_mode(j)?;
        Ok(self.entries.view((2 * i, 2 * j), (2, 2)).into_owned())
    }

    /// Principal submatrix on `modes`, in the given order.
    pub fn reduce(&self, modes: &[usize]) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidPartition("no modes to keep".into()));
        }
        for (k, &m) in modes.iter().enumerate() {
            self.check_mode(m)?;
            if modes[..k].contains(&m) {
                return Err(Error::InvalidPartition(format!("mode {m} listed twice")));
            }
        }
        let idx: Vec<usize> = modes.iter().flat_map(|&m| [2 * m, 2 * m + 1]).collect();
        let entries = DMatrix::from_fn(idx.len(), idx.len(), |r, c| self.entries[(idx[r], idx[c])]);
        Ok(Self {
            modes: modes.len(),
            entries,
        })
    }

    /// Symplectic eigenvalues, sorted descending.
    ///
    /// For positive-definite `σ = LLᵀ` these are the singular values of the
    /// antisymmetric `LᵀΩL`, which is better conditioned than diagonalizing
    /// the nonsymmetric `Ωσ`.
    pub fn symplectic_eigenvalues(&self) -> Vec<f64> {
        let omega = symplectic_form(self.modes).expect("modes ≥ 1");
        let mut nu: Vec<f64> = match self.entries.clone().cholesky() {
            Some(chol) => {
                let l = chol.l();
                let k = l.transpose() * &omega * &l;
                let ktk = k.transpose() * &k;
                SymmetricEigen::new(symmetrize(&ktk))
                    .eigenvalues
                    .iter()
                    .map(|x| x.max(0.0).sqrt())
                    .collect()
            }
            None => (&omega * &self.entries)
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .collect(),
        };
        nu.sort_by(|a, b| b.total_cmp(a));
        nu.into_iter().step_by(2).collect()
    }

    /// Smallest eigenvalue of the (symmetric) matrix itself.
    pub fn min_eigenvalue(&self) -> f64 {
        SymmetricEigen::new(self.entries.clone())
            .eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// `σ + iΩ ≥ 0`, checked as positivity plus every symplectic eigenvalue ≥ 1 − 1e-9.
    pub fn is_bona_fide(&self) -> bool {
        if self.min_eigenvalue() <= 0.0 {
            return false;
        }
        self.symplectic_eigenvalues()
            .last()
            .is_some_and(|&nu| nu >= 1.0 - BONA_FIDE_TOL)
    }

    /// Errors unless the state is physical.
    pub fn require_bona_fide(&self) -> Result<()> {
        if self.is_bona_fide() {
            return Ok(());
        }
        let min = self
            .symplectic_eigenvalues()
            .last()
            .copied()
            .unwrap_or(f64::NAN);
        Err(Error::NotBonaFide {
            min_symplectic_eigenvalue: min,
        })
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.det() - 1.0).abs() <= tol
    }

    /// `SσSᵀ`.
    pub fn transform(&self, s: &SymplecticTransform) -> Result<Self> {
        apply_symplectic(self, s)
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.modes {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes,
            })
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    modes: usize,
    entries: Vec<f64>,
}

impl From<CovarianceMatrix> for MatrixJson {
    fn from(cm: CovarianceMatrix) -> Self {
        let dim = 2 * cm.modes;
        let entries = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .map(|(r, c)| cm.entries[(r, c)])
            .collect();
        MatrixJson {
            modes: cm.modes,
            entries,
        }
    }
}

impl TryFrom<MatrixJson> for CovarianceMatrix {
    type Error = Error;

    fn try_from(json: MatrixJson) -> Result<Self> {
        if json.modes == 0 {
            return Err(Error::InvalidDimension("modes must be ≥ 1".into()));
        }
        CovarianceMatrix::from_row_slice(2 * json.modes, &json.entries)
    }
}

/// Real `2N×2N` matrix preserving the symplectic form.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    modes: usize,
    entries: DMatrix<f64>,
}

impl SymplecticTransform {
    /// Validates `SᵀΩS = Ω`.
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::InvalidDimension("symplectic matrix must be square".into()));
        }
        let modes = modes_of(entries.nrows())?;
        let omega = symplectic_form(modes)?;
        let defect = (entries.transpose() * &omega * &entries - &omega).amax();
        let scale = entries.amax().powi(2).max(1.0);
        if !(defect <= SYMPLECTIC_TOL * scale) {
            return Err(Error::InvalidParameter {
                name: "S",
                value: defect,
                reason: "matrix does not preserve the symplectic form",
            });
        }
        Ok(Self { modes, entries })
    }

    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension("transform needs at least one mode".into()));
        }
        Ok(Self {
            modes: n,
            entries: DMatrix::identity(2 * n, 2 * n),
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `self · other`, i.e. `other` acts first.
    pub fn compose(&self, other: &SymplecticTransform) -> Result<Self> {
        if self.modes != other.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                found: other.modes,
            });
        }
        Ok(Self {
            modes: self.modes,
            entries: &self.entries * &other.entries,
        })
    }

    /// Block-diagonal transform acting on the modes of `self` followed by those of `other`.
    pub fn direct_sum(&self, other: &SymplecticTransform) -> Self {
        Self {
            modes: self.modes + other.modes,
            entries: block_diagonal(&self.entries, &other.entries),
        }
    }

    /// `‖SᵀΩS − Ω‖∞` (max-entry norm).
    pub fn symplectic_defect(&self) -> f64 {
        let omega = symplectic_form(self.modes).expect("modes ≥ 1");
        (self.entries.transpose() * &omega * &self.entries - &omega).amax()
    }
}

fn block_diagonal(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let (na, nb) = (a.nrows(), b.nrows());
    let mut out = DMatrix::zeros(na + nb, na + nb);
    out.view_mut((0, 0), (na, na)).copy_from(a);
    out.view_mut((na, na), (nb, nb)).copy_from(b);
    out
}

fn check_index(mode: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidDimension("transform needs at least one mode".into()));
    }
    if mode >= n {
        return Err(Error::ModeOutOfRange { mode, modes: n });
    }
    Ok(())
}

/// Two-mode squeezer `S_{i,j}(r)` embedded in `n` modes.
pub fn two_mode_squeezer(r: f64, i: usize, j: usize, n: usize) -> Result<SymplecticTransform> {
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(Error::InvalidPartition(format!(
            "two-mode squeezer needs distinct modes, got {i} twice"
        )));
    }
    if !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r,
            reason: "squeezing must be finite",
        });
    }
    let (c, s) = (r.cosh(), r.sinh());
    let mut m = DMatrix::identity(2 * n, 2 * n);
    let (qi, pi, qj, pj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
    m[(qi, qi)] = c;
    m[(pi, pi)] = c;
    m[(qj, qj)] = c;
    m[(pj, pj)] = c;
    m[(qi, qj)] = s;
    m[(qj, qi)] = s;
    m[(pi, pj)] = -s;
    m[(pj, pi)] = -s;
    Ok(SymplecticTransform {
        modes: n,
        entries: m,
    })
}

/// Euler-decomposed single-mode transform `R(θ1)·diag(e^z, e^−z)·R(θ2)` on `mode`.
pub fn local_symplectic(
    theta1: f64,
    z: f64,
    theta2: f64,
    mode: usize,
    n: usize,
) -> Result<SymplecticTransform> {
    check_index(mode, n)?;
    let block = single_mode_euler(theta1, z, theta2);
    let mut m = DMatrix::identity(2 * n, 2 * n);
    m.view_mut((2 * mode, 2 * mode), (2, 2)).copy_from(&block);
    Ok(SymplecticTransform {
        modes: n,
        entries: m,
    })
}

pub(crate) fn single_mode_euler(theta1: f64, z: f64, theta2: f64) -> DMatrix<f64> {
    let squeeze = DMatrix::from_row_slice(2, 2, &[z.exp(), 0.0, 0.0, (-z).exp()]);
    rotation(theta1) * squeeze * rotation(theta2)
}

/// `SσSᵀ`.
pub fn apply_symplectic(
    sigma: &CovarianceMatrix,
    s: &SymplecticTransform,
) -> Result<CovarianceMatrix> {
    if sigma.modes != s.modes {
        return Err(Error::DimensionMismatch {
            expected: sigma.modes,
            found: s.modes,
        });
    }
    let out = &s.entries * &sigma.entries * s.entries.transpose();
    Ok(CovarianceMatrix {
        modes: sigma.modes,
        entries: symmetrize(&out),
    })
}

/// `a ⊕ b`, with the modes of `a` first.
pub fn direct_sum(a: &CovarianceMatrix, b: &CovarianceMatrix) -> CovarianceMatrix {
    CovarianceMatrix {
        modes: a.modes + b.modes,
        entries: block_diagonal(&a.entries, &b.entries),
    }
}

/// Reduction onto the modes named by `keep`, subsystem by subsystem.
pub fn partial_trace(sigma: &CovarianceMatrix, keep: &ModePartition) -> Result<CovarianceMatrix> {
    keep.validate(sigma.modes)?;
    sigma.reduce(&keep.all_modes())
}

pub fn vacuum_cm(n: usize) -> Result<CovarianceMatrix> {
    CovarianceMatrix::vacuum(n)
}

pub fn symplectic_eigenvalues(sigma: &CovarianceMatrix) -> Vec<f64> {
    sigma.symplectic_eigenvalues()
}

pub fn is_bona_fide(sigma: &CovarianceMatrix) -> bool {
    sigma.is_bona_fide()
}

/// Named, disjoint groups of modes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModePartition {
    subsystems: Vec<Subsystem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subsystem {
    pub name: String,
    pub modes: Vec<usize>,
}

impl ModePartition {
    pub fn new<S: Into<String>>(subsystems: Vec<(S, Vec<usize>)>) -> Result<Self> {
        let subsystems: Vec<Subsystem> = subsystems
            .into_iter()
            .map(|(name, modes)| Subsystem {
                name: name.into(),
                modes,
            })
            .collect();
        if subsystems.iter().all(|s| s.modes.is_empty()) {
            return Err(Error::InvalidPartition("every subsystem is empty".into()));
        }
        let mut seen = Vec::new();
        for m in subsystems.iter().flat_map(|s| s.modes.iter()) {
            if seen.contains(m) {
                return Err(Error::InvalidPartition(format!("mode {m} appears twice")));
            }
            seen.push(*m);
        }
        Ok(Self { subsystems })
    }

    /// Two subsystems named `A` and `B`.
    pub fn bipartite(a: &[usize], b: &[usize]) -> Result<Self> {
        Self::new(vec![("A", a.to_vec()), ("B", b.to_vec())])
    }

    /// A single subsystem, for reductions.
    pub fn keep(modes: &[usize]) -> Result<Self> {
        Self::new(vec![("kept", modes.to_vec())])
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn modes_of(&self, index: usize) -> &[usize] {
        &self.subsystems[index].modes
    }

    pub fn all_modes(&self) -> Vec<usize> {
        self.subsystems
            .iter()
            .flat_map(|s| s.modes.iter().copied())
            .collect()
    }

    pub fn validate(&self, modes: usize) -> Result<()> {
        for &m in self.subsystems.iter().flat_map(|s| s.modes.iter()) {
            if m >= modes {
                return Err(Error::ModeOutOfRange { mode: m, modes });
            }
        }
        Ok(())
    }

    /// True when every mode `0..modes` belongs to some subsystem.
    pub fn covers(&self, modes: usize) -> bool {
        let all = self.all_modes();
        all.len() == modes && (0..modes).all(|m| all.contains(&m))
    }

    /// Checks that this is a two-way split covering all of `sigma` and
    /// returns the two mode lists.
    pub(crate) fn split_of(&self, sigma: &CovarianceMatrix) -> Result<(Vec<usize>, Vec<usize>)> {
        if self.subsystems.len() != 2 {
            return Err(Error::InvalidPartition(format!(
                "expected two subsystems, got {}",
                self.subsystems.len()
            )));
        }
        self.validate(sigma.modes())?;
        if !self.covers(sigma.modes()) {
            return Err(Error::InvalidPartition(format!(
                "partition does not cover all {} modes",
                sigma.modes()
            )));
        }
        let (a, b) = (self.modes_of(0), self.modes_of(1));
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidPartition("both sides must be nonempty".into()));
        }
        Ok((a.to_vec(), b.to_vec()))
    }
}
