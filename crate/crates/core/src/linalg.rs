//! Dense complex matrices and the root-of-unity table.
//!
//! Dense operators exist to validate the block-compressed paths at small
//! scale. Every constructor that produces one checks a dimension guard.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Largest dimension any dense oracle path will materialize.
pub const ORACLE_DIM_LIMIT: u128 = 4096;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub(crate) fn guard_dim(what: &'static str, dim: u128, limit: u128) -> Result<usize> {
    if dim > limit {
        return Err(Error::OracleScaleExceeded { what, dim, limit });
    }
    Ok(dim as usize)
}

/// A small dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator(pub(crate) DMatrix<C64>);

impl DenseOperator {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "operator must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.nrows() == 0 {
            return Err(Error::DimensionMismatch("operator must be non-empty".into()));
        }
        Ok(Self(m))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    /// `|v><v|`.
    pub fn projector(v: &[C64]) -> Self {
        let v = DVector::from_column_slice(v);
        Self(&v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// `tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &DenseOperator) -> C64 {
        let (a, b) = (&self.0, &other.0);
        let mut sum = C64::new(0.0, 0.0);
        for j in 0..a.ncols() {
            for i in 0..a.nrows() {
                sum += a[(i, j)] * b[(j, i)];
            }
        }
        sum
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.map(|z| z * s))
    }

    pub fn kron(&self, other: &DenseOperator) -> Self {
        Self(self.0.kronecker(&other.0))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }

    /// Largest entrywise modulus of `U U† - I`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = &self.0 * self.0.adjoint();
        max_abs_diff(&prod, &DMatrix::identity(self.dim(), self.dim()))
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_abs_diff(&self.0, &self.0.adjoint())
    }

    /// Ascending eigenvalues of the Hermitian part.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.0)
    }
}

impl std::ops::Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 * &rhs.0)
    }
}

impl std::ops::Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        DenseOperator(&self.0 - &rhs.0)
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub(crate) fn hermitian_part(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()).map(|z| z * 0.5)
}

/// Ascending eigenvalues of the Hermitian part of `m`.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let h = hermitian_part(m);
    let mut eig: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|a, b| a.total_cmp(b));
    eig
}

/// `M^{-1/2}` on the support of a PSD Hermitian `m`; eigenvalues at or below
/// `rel_cutoff * max_eigenvalue` are treated as zero.
pub(crate) fn pinv_sqrt_psd(m: &DMatrix<C64>, rel_cutoff: f64) -> DMatrix<C64> {
    let h = hermitian_part(m);
    let n = h.nrows();
    let eig = h.symmetric_eigen();
    let max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let cutoff = rel_cutoff * max;
    let mut out = DMatrix::<C64>::zeros(n, n);
    for (i, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= cutoff {
            continue;
        }
        let v = eig.eigenvectors.column(i);
        let w = 1.0 / lambda.sqrt();
        out += (v * v.adjoint()).map(|z| z * w);
    }
    out
}

/// Rank of a PSD Hermitian matrix with a relative cutoff.
#[cfg(test)]
pub(crate) fn psd_rank(m: &DMatrix<C64>, rel_cutoff: f64) -> usize {
    let eig = hermitian_eigenvalues(m);
    let max = eig.last().copied().unwrap_or(0.0).max(0.0);
    eig.iter().filter(|&&l| l > rel_cutoff * max).count()
}

/// Von Neumann entropy in bits.
pub(crate) fn von_neumann_entropy(m: &DMatrix<C64>) -> (f64, Vec<f64>) {
    let eig = hermitian_eigenvalues(m);
    let s = crate::numeric::entropy_bits(eig.iter().copied().filter(|&l| l > 1e-14));
    (s, eig)
}

/// Trace distance `(1/2)||a - b||_1` between Hermitian matrices.
pub(crate) fn trace_distance(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    0.5 * hermitian_eigenvalues(&(a - b)).iter().map(|l| l.abs()).sum::<f64>()
}

/// The N distinct N-th roots of unity, `ω^m = exp(2πi m / N)`.
///
/// Equal exponents (mod N) always return bitwise-identical values, and the
/// table satisfies `ω^{N-m} = conj(ω^m)` exactly.
#[derive(Debug, Clone)]
pub struct RootsOfUnity {
    table: Vec<C64>,
}

impl RootsOfUnity {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "roots of unity need N >= 1");
        let mut table = vec![C64::new(1.0, 0.0); n];
        for m in 1..n {
            table[m] = if 2 * m > n {
                table[n - m].conj()
            } else if 4 * m == n {
                c(0.0, 1.0)
            } else if 2 * m == n {
                c(-1.0, 0.0)
            } else {
                let theta = 2.0 * std::f64::consts::PI * (m as f64) / (n as f64);
                c(theta.cos(), theta.sin())
            };
        }
        Self { table }
    }

    pub fn modulus(&self) -> usize {
        self.table.len()
    }

    /// `ω^m` for a non-negative exponent.
    #[inline]
    pub fn pow(&self, m: usize) -> C64 {
        self.table[m % self.table.len()]
    }

    /// `ω^m` for a signed exponent.
    #[inline]
    pub fn pow_signed(&self, m: i64) -> C64 {
        let n = self.table.len() as i64;
        self.table[m.rem_euclid(n) as usize]
    }
}
