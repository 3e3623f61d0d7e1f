//! Dense complex bipartite matrices.
//!
//! Composite basis ordering follows `k = a * N + b` for `|a>_A |b>_B`, where `N` is the
//! dimension of subsystem B. Every routine in the crate relies on this contract.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::Spectrum;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Local dimensions `(M, N)` of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidArgument(format!(
                "subsystem dimensions must be positive, got ({dim_a}, {dim_b})"
            )));
        }
        Ok(Self { dim_a, dim_b })
    }

    /// Composite dimension `M * N`.
    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn of(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.dim_a,
            Subsystem::B => self.dim_b,
        }
    }
}

impl std::fmt::Display for BipartiteDims {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.dim_a, self.dim_b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Numerical tolerances shared by validation, criteria and bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub hermiticity: f64,
    pub trace: f64,
    pub psd: f64,
    /// Eigenvalues below this magnitude count as zero (sign counts, entropies).
    pub eigen: f64,
    pub basis: f64,
    pub support: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-9,
            trace: 1e-9,
            psd: 1e-8,
            eigen: 1e-10,
            basis: 1e-9,
            support: 1e-9,
        }
    }
}

impl Tolerances {
    pub fn strict() -> Self {
        Self {
            hermiticity: 1e-12,
            trace: 1e-12,
            psd: 1e-11,
            eigen: 1e-13,
            basis: 1e-12,
            support: 1e-12,
        }
    }

    pub fn loose() -> Self {
        Self {
            hermiticity: 1e-6,
            trace: 1e-6,
            psd: 1e-6,
            eigen: 1e-9,
            basis: 1e-6,
            support: 1e-7,
        }
    }

    /// Named profile: `default`, `strict` or `loose`.
    pub fn profile(name: &str) -> Option<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "default" | "" => Some(Self::default()),
            "strict" => Some(Self::strict()),
            "loose" => Some(Self::loose()),
            _ => None,
        }
    }
}

/// Read access shared by [`HermitianMatrix`] and [`DensityMatrix`].
pub trait Operator {
    fn entries(&self) -> &CMatrix;
    fn dims(&self) -> BipartiteDims;

    fn side(&self) -> usize {
        self.entries().nrows()
    }
}

/// Hermitian matrix on a bipartite space with no trace or positivity requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: CMatrix,
    dims: BipartiteDims,
}

impl HermitianMatrix {
    pub fn new(entries: CMatrix, dims: BipartiteDims, tol: f64) -> Result<Self> {
        check_side(&entries, dims)?;
        let defect = hermiticity_defect(&entries);
        if defect > tol {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self { entries, dims })
    }

    pub(crate) fn from_parts(entries: CMatrix, dims: BipartiteDims) -> Self {
        debug_assert_eq!(entries.nrows(), dims.total());
        Self { entries, dims }
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }
}

impl Operator for HermitianMatrix {
    fn entries(&self) -> &CMatrix {
        &self.entries
    }
    fn dims(&self) -> BipartiteDims {
        self.dims
    }
}

/// Validated bipartite density matrix with its measured defects.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    dims: BipartiteDims,
    hermiticity_defect: f64,
    min_eigenvalue: f64,
    trace_defect: f64,
}

impl DensityMatrix {
    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn trace_defect(&self) -> f64 {
        self.trace_defect
    }

    pub fn as_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix::from_parts(self.entries.clone(), self.dims)
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }
}

impl Operator for DensityMatrix {
    fn entries(&self) -> &CMatrix {
        &self.entries
    }
    fn dims(&self) -> BipartiteDims {
        self.dims
    }
}

fn check_side(m: &CMatrix, dims: BipartiteDims) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            found: m.nrows(),
        });
    }
    Ok(())
}

fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for k in j..n {
            worst = worst.max((m[(j, k)] - m[(k, j)].conj()).norm());
        }
    }
    worst
}

/// Symmetrize `raw` to `(raw + raw^H) / 2` and check trace and positivity.
pub fn validate_density(raw: CMatrix, dims: BipartiteDims, tol: &Tolerances) -> Result<DensityMatrix> {
    check_side(&raw, dims)?;
    if raw.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Format("matrix contains non-finite entries".into()));
    }
    let defect = hermiticity_defect(&raw);
    if defect > tol.hermiticity {
        return Err(Error::NotHermitian { defect });
    }
    let entries = (&raw + raw.adjoint()).map(|z| z * 0.5);
    let trace_defect = (entries.trace().re - 1.0).abs();
    if trace_defect > tol.trace {
        return Err(Error::NotUnitTrace {
            defect: trace_defect,
        });
    }
    let eig = hermitian_eigenvalues(&entries)?;
    let min_eigenvalue = eig.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPositive { min_eigenvalue });
    }
    Ok(DensityMatrix {
        entries,
        dims,
        hermiticity_defect: defect,
        min_eigenvalue,
        trace_defect,
    })
}

/// Eigenvalues of a Hermitian matrix in solver order.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.0)
}

/// Eigenvalues and eigenvectors (as columns) of a Hermitian matrix.
pub(crate) fn hermitian_eigen(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let side = m.nrows();
    let eig = SymmetricEigen::try_new(m.clone(), f64::EPSILON, 1000 * side.max(1))
        .ok_or(Error::EigensolverFailure { side })?;
    Ok((eig.eigenvalues.iter().copied().collect(), eig.eigenvectors))
}

/// Partial transpose on the named subsystem. A pure index permutation, hence an exact involution.
pub fn partial_transpose<O: Operator>(op: &O, side: Subsystem) -> HermitianMatrix {
    let dims = op.dims();
    let (m, n) = (dims.dim_a, dims.dim_b);
    let input = op.entries();
    let mut out = CMatrix::zeros(m * n, m * n);
    for a in 0..m {
        for b in 0..n {
            for a2 in 0..m {
                for b2 in 0..n {
                    let value = input[(a * n + b, a2 * n + b2)];
                    let (row, col) = match side {
                        Subsystem::A => (a2 * n + b, a * n + b2),
                        Subsystem::B => (a * n + b2, a2 * n + b),
                    };
                    out[(row, col)] = value;
                }
            }
        }
    }
    HermitianMatrix::from_parts(out, dims)
}

/// Descending eigenvalue vector, tagged with the default eigenvalue tolerance.
pub fn spectrum<O: Operator>(op: &O) -> Result<Spectrum> {
    let values = hermitian_eigenvalues(op.entries())?;
    Ok(Spectrum::new(values, Tolerances::default().eigen))
}

/// `Tr(H^n)` for `n = 1..=n_max` by repeated multiplication.
pub fn moments<O: Operator>(op: &O, n_max: usize) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let h = op.entries();
    let mut out = Vec::with_capacity(n_max);
    out.push(h.trace().re);
    if n_max >= 2 {
        // Tr(H^2) = sum |h_jk|^2 for Hermitian H.
        out.push(h.iter().map(|z| z.norm_sqr()).sum());
    }
    let mut power = h.clone();
    for n in 3..=n_max {
        if n == 3 {
            power = h * h;
        }
        // Tr(P H) without forming the product.
        let trace: f64 = (0..h.nrows())
            .map(|j| {
                (0..h.ncols())
                    .map(|k| (power[(j, k)] * h[(k, j)]).re)
                    .sum::<f64>()
            })
            .sum();
        out.push(trace);
        if n < n_max {
            power = &power * h;
        }
    }
    Ok(out)
}

/// Squared Hilbert-Schmidt (Frobenius) distance `sum |x_jk - y_jk|^2`.
pub fn hs_distance_sq<X: Operator, Y: Operator>(x: &X, y: &Y) -> Result<f64> {
    matrix_distance_sq(x.entries(), y.entries())
}

pub(crate) fn matrix_distance_sq(x: &CMatrix, y: &CMatrix) -> Result<f64> {
    if x.shape() != y.shape() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: y.nrows(),
        });
    }
    Ok(x.iter().zip(y.iter()).map(|(p, q)| (p - q).norm_sqr()).sum())
}

/// Sum of singular values.
pub fn trace_norm<O: Operator>(op: &O) -> f64 {
    op.entries().clone().svd(false, false).singular_values.sum()
}

/// Von Neumann entropy in bits of a list of eigenvalues; entries `<= eps` contribute nothing.
pub fn entropy_of_values(values: &[f64], eps: f64) -> f64 {
    values
        .iter()
        .filter(|&&v| v > eps)
        .map(|&v| -v * v.log2())
        .sum()
}

/// Von Neumann entropy in bits.
pub fn entropy(rho: &DensityMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(rho.entries())?;
    Ok(entropy_of_values(&values, Tolerances::default().eigen))
}

/// Relative entropy `S(rho || sigma)` in bits. Returns `f64::INFINITY` when the support of
/// `rho` is not contained in the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.side() != sigma.side() {
        return Err(Error::DimensionMismatch {
            expected: rho.side(),
            found: sigma.side(),
        });
    }
    let tol = Tolerances::default();
    let neg_entropy = -entropy(rho)?;
    let (sigma_vals, sigma_vecs) = hermitian_eigen(sigma.entries())?;
    let mut cross = 0.0;
    for (j, &s) in sigma_vals.iter().enumerate() {
        let v = sigma_vecs.column(j);
        // <v|rho|v>
        let weight = (v.adjoint() * rho.entries() * v)[(0, 0)].re;
        if s <= tol.eigen {
            if weight > tol.support {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * s.log2();
    }
    Ok((neg_entropy - cross).max(0.0))
}

/// Orthonormal rank-1 projective measurement on one subsystem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MeasurementRepr", try_from = "MeasurementRepr")]
pub struct Measurement {
    basis: CMatrix,
    subsystem: Subsystem,
}

#[derive(Serialize, Deserialize)]
struct MeasurementRepr {
    subsystem: Subsystem,
    basis_vectors: Vec<Vec<[f64; 2]>>,
}

impl From<Measurement> for MeasurementRepr {
    fn from(m: Measurement) -> Self {
        MeasurementRepr {
            subsystem: m.subsystem,
            basis_vectors: m
                .basis
                .column_iter()
                .map(|c| c.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<MeasurementRepr> for Measurement {
    type Error = Error;
    fn try_from(r: MeasurementRepr) -> Result<Self> {
        let vectors = r
            .basis_vectors
            .iter()
            .map(|v| CVector::from_iterator(v.len(), v.iter().map(|p| C64::new(p[0], p[1]))))
            .collect();
        Measurement::new(vectors, r.subsystem, Tolerances::default().basis)
    }
}

impl Measurement {
    pub fn new(basis_vectors: Vec<CVector>, subsystem: Subsystem, tol: f64) -> Result<Self> {
        let dim = basis_vectors.len();
        if dim == 0 || basis_vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::InvalidArgument(
                "measurement needs as many basis vectors as the subsystem dimension".into(),
            ));
        }
        let basis = CMatrix::from_columns(&basis_vectors);
        Self::from_unitary(basis, subsystem, tol)
    }

    /// Basis given as the columns of `unitary`.
    pub fn from_unitary(unitary: CMatrix, subsystem: Subsystem, tol: f64) -> Result<Self> {
        if unitary.nrows() != unitary.ncols() {
            return Err(Error::DimensionMismatch {
                expected: unitary.nrows(),
                found: unitary.ncols(),
            });
        }
        let gram = unitary.adjoint() * &unitary;
        let defect = (gram - CMatrix::identity(unitary.nrows(), unitary.ncols()))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if defect > tol {
            return Err(Error::NonOrthonormalBasis { defect });
        }
        Ok(Self {
            basis: unitary,
            subsystem,
        })
    }

    pub fn computational(dim: usize, subsystem: Subsystem) -> Self {
        Self {
            basis: CMatrix::identity(dim, dim),
            subsystem,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn subsystem(&self) -> Subsystem {
        self.subsystem
    }

    /// Basis vectors as columns.
    pub fn unitary(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<CVector> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }
}

fn lift(u: &CMatrix, dims: BipartiteDims, side: Subsystem) -> CMatrix {
    match side {
        Subsystem::A => tensor(u, &CMatrix::identity(dims.dim_b, dims.dim_b)),
        Subsystem::B => tensor(&CMatrix::identity(dims.dim_a, dims.dim_a), u),
    }
}

/// True when composite indices `j`, `k` carry the same local index on `side`.
#[inline]
pub(crate) fn same_block(j: usize, k: usize, dims: BipartiteDims, side: Subsystem) -> bool {
    match side {
        Subsystem::A => j / dims.dim_b == k / dims.dim_b,
        Subsystem::B => j % dims.dim_b == k % dims.dim_b,
    }
}

pub(crate) fn pinch_entries(m: &CMatrix, u: &CMatrix, dims: BipartiteDims, side: Subsystem) -> CMatrix {
    let w = lift(u, dims, side);
    let mut local = w.adjoint() * m * &w;
    for j in 0..local.nrows() {
        for k in 0..local.ncols() {
            if !same_block(j, k, dims, side) {
                local[(j, k)] = C64::new(0.0, 0.0);
            }
        }
    }
    &w * local * w.adjoint()
}

/// Dephase `rho` in the measurement basis on the measurement's subsystem.
pub fn pinch(rho: &DensityMatrix, basis: &Measurement) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let expected = dims.of(basis.subsystem);
    if basis.dim() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: basis.dim(),
        });
    }
    let entries = pinch_entries(rho.entries(), &basis.basis, dims, basis.subsystem);
    validate_density(entries, dims, &Tolerances::default())
}

/// Kronecker product, consistent with `k = a * N + b`.
pub fn tensor(x: &CMatrix, y: &CMatrix) -> CMatrix {
    x.kronecker(y)
}
