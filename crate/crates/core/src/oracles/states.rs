//! Parameterized and seeded state families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{tensor, validate_density, BipartiteDims, CMatrix, CVector, DensityMatrix, Tolerances, C64};

/// A state family and its parameters. Seeded families are reproducible bit-for-bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum StateSpec {
    /// `|phi> = sum_i |ii> / sqrt(d)`.
    MaxEntangled { d: usize },
    /// `p |psi-><psi-| + (1 - p) I / 4`.
    Werner { p: f64 },
    /// Fidelity `f` with the maximally entangled state, white noise elsewhere.
    Isotropic { d: usize, f: f64 },
    /// `(I + sum_i c_i sigma_i (x) sigma_i) / 4`.
    BellDiagonal { c1: f64, c2: f64, c3: f64 },
    /// Two-qubit state supported on the diagonal and anti-diagonal. `outer` is `rho_03`,
    /// `inner` is `rho_12`, both as `[re, im]`.
    XState {
        diag: [f64; 4],
        outer: [f64; 2],
        inner: [f64; 2],
    },
    /// Normalized `G G^H` with `G` an `MN x rank` complex Gaussian matrix.
    RandomGinibre {
        dim_a: usize,
        dim_b: usize,
        rank: usize,
        seed: u64,
    },
    /// `sum_{i<k} f_i |u_i><u_i| (x) rho_i` with `{u_i}` a Haar-random basis on A.
    RandomCq {
        dim_a: usize,
        dim_b: usize,
        k: usize,
        seed: u64,
    },
    /// Convex mixture of `k` random pure product states.
    RandomSeparable {
        dim_a: usize,
        dim_b: usize,
        k: usize,
        seed: u64,
    },
    /// `rho_A (x) rho_B` with full-rank random factors.
    Product { dim_a: usize, dim_b: usize, seed: u64 },
}

impl StateSpec {
    pub fn dims(&self) -> BipartiteDims {
        let (a, b) = match *self {
            StateSpec::MaxEntangled { d } | StateSpec::Isotropic { d, .. } => (d, d),
            StateSpec::Werner { .. } | StateSpec::BellDiagonal { .. } | StateSpec::XState { .. } => (2, 2),
            StateSpec::RandomGinibre { dim_a, dim_b, .. }
            | StateSpec::RandomCq { dim_a, dim_b, .. }
            | StateSpec::RandomSeparable { dim_a, dim_b, .. }
            | StateSpec::Product { dim_a, dim_b, .. } => (dim_a, dim_b),
        };
        BipartiteDims { dim_a: a, dim_b: b }
    }

    /// Short human-readable identifier.
    pub fn label(&self) -> String {
        match self {
            StateSpec::MaxEntangled { d } => format!("max-entangled(d={d})"),
            StateSpec::Werner { p } => format!("werner(p={p})"),
            StateSpec::Isotropic { d, f } => format!("isotropic(d={d}, f={f})"),
            StateSpec::BellDiagonal { c1, c2, c3 } => format!("bell-diagonal(c1={c1}, c2={c2}, c3={c3})"),
            StateSpec::XState { diag, outer, inner } => {
                format!("x-state(diag={diag:?}, outer={outer:?}, inner={inner:?})")
            }
            StateSpec::RandomGinibre { dim_a, dim_b, rank, seed } => {
                format!("random-ginibre({dim_a}x{dim_b}, rank={rank}, seed={seed})")
            }
            StateSpec::RandomCq { dim_a, dim_b, k, seed } => {
                format!("random-cq({dim_a}x{dim_b}, k={k}, seed={seed})")
            }
            StateSpec::RandomSeparable { dim_a, dim_b, k, seed } => {
                format!("random-separable({dim_a}x{dim_b}, k={k}, seed={seed})")
            }
            StateSpec::Product { dim_a, dim_b, seed } => format!("product({dim_a}x{dim_b}, seed={seed})"),
        }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn check_dims(family: &str, a: usize, b: usize) -> Result<BipartiteDims> {
    BipartiteDims::new(a, b).map_err(|_| Error::out_of_range(family, "subsystem dimensions must be >= 1"))
}

fn check_unit_interval(family: &str, name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::out_of_range(family, format!("{name} = {x} must lie in [0, 1]")));
    }
    Ok(())
}

fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

fn max_entangled_vector(d: usize) -> CVector {
    let mut v = CVector::zeros(d * d);
    let amp = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        v[i * d + i] = c(amp);
    }
    v
}

pub(crate) fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub(crate) fn random_unit_vector(n: usize, rng: &mut impl Rng) -> CVector {
    let v = gaussian_matrix(n, 1, rng).column(0).into_owned();
    let norm = v.norm();
    v.map(|z| z / norm)
}

/// Haar-random unitary via QR of a complex Gaussian matrix with phase correction.
pub(crate) fn haar_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let qr = gaussian_matrix(n, n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Unnormalized-then-normalized `G G^H` of the given rank.
pub(crate) fn ginibre_matrix(n: usize, rank: usize, rng: &mut impl Rng) -> CMatrix {
    let g = gaussian_matrix(n, rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    m.map(|z| z / tr)
}

fn random_weights(k: usize, rng: &mut impl Rng) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

/// Builds a validated density matrix for `spec`.
pub fn make_state(spec: &StateSpec) -> Result<DensityMatrix> {
    let tol = Tolerances::default();
    match *spec {
        StateSpec::MaxEntangled { d } => {
            let dims = check_dims("max-entangled", d, d)?;
            let mut m = CMatrix::zeros(d * d, d * d);
            for i in 0..d {
                for j in 0..d {
                    m[(i * d + i, j * d + j)] = c(1.0 / d as f64);
                }
            }
            validate_density(m, dims, &tol)
        }
        StateSpec::Werner { p } => {
            check_unit_interval("werner", "p", p)?;
            let mut singlet = CVector::zeros(4);
            let amp = std::f64::consts::FRAC_1_SQRT_2;
            singlet[1] = c(amp);
            singlet[2] = c(-amp);
            let m = projector(&singlet) * c(p) + CMatrix::identity(4, 4) * c((1.0 - p) / 4.0);
            validate_density(m, BipartiteDims { dim_a: 2, dim_b: 2 }, &tol)
        }
        StateSpec::Isotropic { d, f } => {
            if d < 2 {
                return Err(Error::out_of_range("isotropic", format!("d = {d} must be >= 2")));
            }
            check_unit_interval("isotropic", "f", f)?;
            let phi = projector(&max_entangled_vector(d));
            let n = d * d;
            let rest = (CMatrix::identity(n, n) - &phi) * c((1.0 - f) / (n as f64 - 1.0));
            validate_density(phi * c(f) + rest, BipartiteDims { dim_a: d, dim_b: d }, &tol)
        }
        StateSpec::BellDiagonal { c1, c2, c3 } => {
            let eigen = [
                ("phi+", 1.0 + c1 - c2 + c3),
                ("phi-", 1.0 - c1 + c2 + c3),
                ("psi+", 1.0 + c1 + c2 - c3),
                ("psi-", 1.0 - c1 - c2 - c3),
            ];
            for (name, e) in eigen {
                if e < -1e-12 {
                    return Err(Error::out_of_range(
                        "bell-diagonal",
                        format!("PSD violation: weight of {name} is {:.6}", e / 4.0),
                    ));
                }
            }
            let i = C64::new(0.0, 1.0);
            let sx = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
            let sy = CMatrix::from_row_slice(2, 2, &[c(0.0), -i, i, c(0.0)]);
            let sz = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]);
            let m = (CMatrix::identity(4, 4)
                + tensor(&sx, &sx) * c(c1)
                + tensor(&sy, &sy) * c(c2)
                + tensor(&sz, &sz) * c(c3))
                * c(0.25);
            validate_density(m, BipartiteDims { dim_a: 2, dim_b: 2 }, &tol)
        }
        StateSpec::XState { diag, outer, inner } => {
            if diag.iter().any(|&x| x < 0.0) {
                return Err(Error::out_of_range("x-state", "diagonal entries must be nonnegative"));
            }
            let total: f64 = diag.iter().sum();
            if (total - 1.0).abs() > tol.trace {
                return Err(Error::out_of_range("x-state", format!("diagonal sums to {total}, not 1")));
            }
            let z = C64::new(outer[0], outer[1]);
            let w = C64::new(inner[0], inner[1]);
            if z.norm_sqr() > diag[0] * diag[3] + 1e-15 {
                return Err(Error::out_of_range("x-state", "PSD violation: |rho_03|^2 > rho_00 rho_33"));
            }
            if w.norm_sqr() > diag[1] * diag[2] + 1e-15 {
                return Err(Error::out_of_range("x-state", "PSD violation: |rho_12|^2 > rho_11 rho_22"));
            }
            let mut m = CMatrix::zeros(4, 4);
            for (j, &x) in diag.iter().enumerate() {
                m[(j, j)] = c(x);
            }
            m[(0, 3)] = z;
            m[(3, 0)] = z.conj();
            m[(1, 2)] = w;
            m[(2, 1)] = w.conj();
            validate_density(m, BipartiteDims { dim_a: 2, dim_b: 2 }, &tol)
        }
        StateSpec::RandomGinibre { dim_a, dim_b, rank, seed } => {
            let dims = check_dims("random-ginibre", dim_a, dim_b)?;
            let n = dims.total();
            if rank == 0 || rank > n {
                return Err(Error::out_of_range("random-ginibre", format!("rank = {rank} must lie in 1..={n}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            validate_density(ginibre_matrix(n, rank, &mut rng), dims, &tol)
        }
        StateSpec::RandomCq { dim_a, dim_b, k, seed } => {
            let dims = check_dims("random-cq", dim_a, dim_b)?;
            if k == 0 || k > dim_a {
                return Err(Error::out_of_range("random-cq", format!("k = {k} must lie in 1..={dim_a}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let u = haar_unitary(dim_a, &mut rng);
            let f = random_weights(k, &mut rng);
            let mut m = CMatrix::zeros(dims.total(), dims.total());
            for (i, fi) in f.iter().enumerate() {
                let local = ginibre_matrix(dim_b, dim_b, &mut rng);
                let basis = projector(&u.column(i).into_owned());
                m += tensor(&basis, &local) * c(*fi);
            }
            validate_density(m, dims, &tol)
        }
        StateSpec::RandomSeparable { dim_a, dim_b, k, seed } => {
            let dims = check_dims("random-separable", dim_a, dim_b)?;
            if k == 0 {
                return Err(Error::out_of_range("random-separable", "k must be >= 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let w = random_weights(k, &mut rng);
            let mut m = CMatrix::zeros(dims.total(), dims.total());
            for wi in w {
                let a = random_unit_vector(dim_a, &mut rng);
                let b = random_unit_vector(dim_b, &mut rng);
                m += tensor(&projector(&a), &projector(&b)) * c(wi);
            }
            validate_density(m, dims, &tol)
        }
        StateSpec::Product { dim_a, dim_b, seed } => {
            let dims = check_dims("product", dim_a, dim_b)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ra = ginibre_matrix(dim_a, dim_a, &mut rng);
            let rb = ginibre_matrix(dim_b, dim_b, &mut rng);
            validate_density(tensor(&ra, &rb), dims, &tol)
        }
    }
}
