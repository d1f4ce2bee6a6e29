//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything is stored as dense `nalgebra` matrices over `Complex64`;
//! the dimensions in scope (at most 81x81 for the purified two-qutrit
//! cut) need no sparse machinery. States carry their subsystem dimension
//! lists so partial traces and tensor products can do their own index
//! bookkeeping.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{tol, Error, Result};

/// Normalized complex vector with declared subsystem dimensions.
#[derive(Clone, Debug)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Validates the norm (1 within 1e-12) and that the subsystem
    /// dimensions multiply out to the vector length.
    pub fn new(amplitudes: DVector<Complex64>, dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        if d != amplitudes.len() || dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidPureState(format!(
                "subsystem dims {:?} do not match amplitude length {}",
                dims,
                amplitudes.len()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::InvalidPureState(format!(
                "norm {norm} deviates from 1 by more than {:e}",
                tol::NORM
            )));
        }
        Ok(PureState {
            amplitudes,
            dims: dims.to_vec(),
        })
    }

    /// Computational basis state |index> on the given register.
    pub fn basis_state(dims: &[usize], index: usize) -> Self {
        let d: usize = dims.iter().product();
        assert!(index < d, "basis index out of range");
        let mut amp = DVector::zeros(d);
        amp[index] = Complex64::new(1.0, 0.0);
        PureState {
            amplitudes: amp,
            dims: dims.to_vec(),
        }
    }

    /// Maximally entangled state (1/sqrt d) sum_i |ii> on dims [d, d].
    pub fn max_entangled(d: usize) -> Self {
        let mut amp = DVector::zeros(d * d);
        let w = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
        for i in 0..d {
            amp[i * d + i] = w;
        }
        PureState {
            amplitudes: amp,
            dims: vec![d, d],
        }
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// Rank-1 projector |psi><psi|.
    pub fn to_density(&self) -> DensityMatrix {
        density_from_pure(self)
    }
}

/// |psi><psi| as a density matrix. Valid by construction, so no
/// spectral re-validation is performed.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    let d = psi.dim();
    let mut mat = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            mat[(i, j)] = psi.amplitudes[i] * psi.amplitudes[j].conj();
        }
    }
    DensityMatrix {
        mat,
        dims: psi.dims.clone(),
    }
}

/// Hermitian, unit-trace, positive-semidefinite complex matrix with
/// declared subsystem dimensions.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Full validation: Hermiticity and trace within 1e-12 entrywise,
    /// minimum eigenvalue >= -1e-10.
    pub fn new(mat: DMatrix<Complex64>, dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        if mat.nrows() != d || mat.ncols() != d || dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidDensityMatrix(format!(
                "subsystem dims {:?} do not match shape {}x{}",
                dims,
                mat.nrows(),
                mat.ncols()
            )));
        }
        let herm = hermiticity_defect(&mat);
        if herm > tol::CONSTRUCTION {
            return Err(Error::InvalidDensityMatrix(format!(
                "Hermiticity defect {herm:.3e} exceeds {:e}",
                tol::CONSTRUCTION
            )));
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > tol::CONSTRUCTION || trace.im.abs() > tol::CONSTRUCTION {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace {trace} deviates from 1 beyond {:e}",
                tol::CONSTRUCTION
            )));
        }
        let rho = DensityMatrix {
            mat,
            dims: dims.to_vec(),
        };
        let min_eig = rho.spectrum()?.eigenvalues.last().copied().unwrap_or(0.0);
        if min_eig < tol::POSITIVITY_SLACK {
            return Err(Error::InvalidDensityMatrix(format!(
                "minimum eigenvalue {min_eig:.3e} below {:e}",
                tol::POSITIVITY_SLACK
            )));
        }
        Ok(rho)
    }

    /// For outputs that are valid by construction (partial traces,
    /// tensor products of valid states). Skips the spectral check.
    pub(crate) fn trusted(mat: DMatrix<Complex64>, dims: Vec<usize>) -> Self {
        debug_assert!(hermiticity_defect(&mat) <= 1e-11);
        debug_assert!((mat.trace().re - 1.0).abs() <= 1e-11);
        DensityMatrix { mat, dims }
    }

    /// I/D on the given register.
    pub fn maximally_mixed(dims: &[usize]) -> Self {
        let d: usize = dims.iter().product();
        let mat = DMatrix::from_diagonal_element(d, d, Complex64::new(1.0 / d as f64, 0.0));
        DensityMatrix {
            mat,
            dims: dims.to_vec(),
        }
    }

    /// Diagonal density matrix from classical probabilities.
    pub fn from_diagonal(probs: &[f64], dims: &[usize]) -> Result<Self> {
        let mat = DMatrix::from_fn(probs.len(), probs.len(), |i, j| {
            if i == j {
                Complex64::new(probs[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        DensityMatrix::new(mat, dims)
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Reinterpret the register grouping without touching the entries
    /// (e.g. view a [3,3] system as a single 9-level qudit).
    pub fn with_dims(&self, dims: &[usize]) -> Result<Self> {
        let d: usize = dims.iter().product();
        if d != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "dims {:?} do not multiply to {}",
                dims,
                self.dim()
            )));
        }
        Ok(DensityMatrix {
            mat: self.mat.clone(),
            dims: dims.to_vec(),
        })
    }

    /// Tr(rho^2). Computed as the squared Frobenius norm, which agrees
    /// with the trace of the square for Hermitian input and is exactly
    /// real.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reduced state on the kept subsystems. `keep` must be strictly
    /// increasing, nonempty indices into `dims`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() || keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&s| s >= n)
        {
            return Err(Error::InvalidSubsystems(format!(
                "keep set {:?} is not a strictly increasing subset of 0..{}",
                keep, n
            )));
        }
        let traced: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&s| self.dims[s]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&s| self.dims[s]).collect();
        let dk: usize = kept_dims.iter().product();
        let dt: usize = traced_dims.iter().product();

        // Row-major strides of the full register.
        let mut strides = vec![1usize; n];
        for s in (0..n.saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.dims[s + 1];
        }
        let kept_offsets = subset_offsets(&kept_dims, keep, &strides);
        let traced_offsets = subset_offsets(&traced_dims, &traced, &strides);

        let mut out = DMatrix::zeros(dk, dk);
        for ik in 0..dk {
            for jk in 0..dk {
                let mut acc = Complex64::new(0.0, 0.0);
                for &t in traced_offsets.iter().take(dt) {
                    acc += self.mat[(kept_offsets[ik] + t, kept_offsets[jk] + t)];
                }
                out[(ik, jk)] = acc;
            }
        }
        Ok(DensityMatrix::trusted(out, kept_dims))
    }

    /// Kronecker product with concatenated dims.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mat = self.mat.kronecker(&other.mat);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix::trusted(mat, dims)
    }

    /// Eigendecomposition, eigenvalues descending.
    pub fn spectrum(&self) -> Result<Spectrum> {
        spectrum(&self.mat)
    }

    /// Purification |psi> = sum_i sqrt(lambda_i) |e_i>|i>, eigenvalues
    /// descending and the reference in the computational basis. The
    /// reference register is padded to the full dimension D, so the
    /// result always lives on dims [D, D].
    pub fn purify(&self) -> Result<PureState> {
        let d = self.dim();
        let spec = self.spectrum()?;
        let mut amp = DVector::zeros(d * d);
        for (r, &lambda) in spec.eigenvalues.iter().enumerate() {
            let w = Complex64::new(lambda.max(0.0).sqrt(), 0.0);
            if w.re == 0.0 {
                continue;
            }
            for i in 0..d {
                amp[i * d + r] = w * spec.eigenvectors[(i, r)];
            }
        }
        let norm = amp.norm();
        if !(norm.is_finite() && norm > 0.5) {
            return Err(Error::Numerical(
                "purification produced a degenerate amplitude vector".into(),
            ));
        }
        amp /= Complex64::new(norm, 0.0);
        PureState::new(amp, &[d, d])
    }

    /// <v|rho|v> for a basis or measurement vector of matching length.
    pub fn expectation(&self, v: &DVector<Complex64>) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..self.dim() {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..self.dim() {
                row += self.mat[(i, j)] * v[j];
            }
            acc += v[i].conj() * row;
        }
        acc
    }
}

/// Offsets into the flat index contributed by a subset of subsystems:
/// entry m is the flat offset of the m-th multi-index over `sub_dims`
/// placed at positions `positions` of the full register.
fn subset_offsets(sub_dims: &[usize], positions: &[usize], strides: &[usize]) -> Vec<usize> {
    let count: usize = sub_dims.iter().product();
    let mut offsets = vec![0usize; count];
    for (m, offset) in offsets.iter_mut().enumerate() {
        let mut rem = m;
        // Row-major digit order: last subsystem varies fastest.
        for idx in (0..sub_dims.len()).rev() {
            let digit = rem % sub_dims[idx];
            rem /= sub_dims[idx];
            *offset += digit * strides[positions[idx]];
        }
    }
    offsets
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted
/// descending with eigenvector phases canonicalized (first component of
/// significant magnitude made positive real).
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
}

pub fn spectrum(m: &DMatrix<Complex64>) -> Result<Spectrum> {
    let defect = hermiticity_defect(m);
    if defect > 1e-10 {
        return Err(Error::NotHermitian(defect));
    }
    let eig = nalgebra::SymmetricEigen::new(m.clone());
    let n = m.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("eigenvalues are finite")
    });
    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues.push(eig.eigenvalues[src]);
        let mut col: Vec<Complex64> = (0..n).map(|i| eig.eigenvectors[(i, src)]).collect();
        canonicalize_phase(&mut col);
        for i in 0..n {
            eigenvectors[(i, dst)] = col[i];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

pub(crate) fn canonicalize_phase(v: &mut [Complex64]) {
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-8) {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

pub(crate) fn hermiticity_defect(m: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            let diff = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(diff);
        }
    }
    worst
}

/// Haar-like random pure state from normalized Gaussian amplitudes.
pub fn random_pure_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState {
    let d: usize = dims.iter().product();
    let mut amp = DVector::from_fn(d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let norm = amp.norm();
    amp /= Complex64::new(norm, 0.0);
    PureState::new(amp, dims).expect("normalized by construction")
}

/// Random mixture of at most `max_rank` Haar-like pure states with
/// uniform-simplex weights. `max_rank = 0` means the full dimension.
pub fn random_density_matrix<R: Rng + ?Sized>(
    dims: &[usize],
    max_rank: usize,
    rng: &mut R,
) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let cap = if max_rank == 0 { d } else { max_rank };
    let rank = rng.gen_range(1..=cap);
    let mut weights: Vec<f64> = (0..rank).map(|_| rng.gen::<f64>() + 1e-6).collect();
    let total: f64 = weights.iter().sum();
    for w in weights.iter_mut() {
        *w /= total;
    }
    let mut mat = DMatrix::zeros(d, d);
    for &w in &weights {
        let psi = random_pure_state(dims, rng);
        for i in 0..d {
            for j in 0..d {
                mat[(i, j)] +=
                    Complex64::new(w, 0.0) * psi.amplitudes()[i] * psi.amplitudes()[j].conj();
            }
        }
    }
    DensityMatrix::trusted(mat, dims.to_vec())
}

/// Haar-random unitary via QR of a Ginibre matrix with the phases of the
/// R diagonal absorbed into Q.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..d {
            q[(i, j)] *= phase.conj();
        }
    }
    q
}

/// U rho U^dagger with the register grouping preserved.
pub fn conjugate(rho: &DensityMatrix, u: &DMatrix<Complex64>) -> DensityMatrix {
    let mat = u * &rho.mat * u.adjoint();
    DensityMatrix::trusted(mat, rho.dims.to_vec())
}
