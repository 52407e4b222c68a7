//! Irreducible representations of D_N, the Fourier transform over D_N, and
//! the structure of hidden-subgroup states in the irrep basis.
//!
//! Conventions:
//!
//! * Irrep order: `TwoDim(1), ..., TwoDim(⌈N/2⌉-1)`, then `Trivial`,
//!   `Alternating`, and for even N `Even`, `Odd`.
//! * Rows of the Fourier transform are `(irrep, ℓ, m)` in that order, with
//!   `(ℓ, m)` row-major inside an irrep; columns are group-basis indices.
//! * With these rows `Q D_L(g) Q† = ⊕ Γ(g) ⊗ I` and `Q D_R(g) Q† = ⊕ I ⊗ Γ(g)*`,
//!   so the column register of `Q ρ_H Q†` carries `conj(ρ_{H,x})`.
//! * Equivalence check: for a two-dimensional irrep `x`, row outcome `ℓ = 0`
//!   is reported as label `-x` with the column kept, and `ℓ = 1` as label `x`
//!   after applying `X` to the column. `Trivial`/`Alternating` map to label 0
//!   with columns `|+⟩`/`|-⟩`; `Even`/`Odd` map to label N/2 with columns
//!   `|+⟩`/`|-⟩`.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::dihedral::{hidden_subgroup_state, DihedralElement, Subgroup};
use crate::error::{Error, Result};
use crate::linalg::{c, guard_dim, max_abs_diff, trace_distance, DenseOperator, RootsOfUnity, C64};

/// Largest `2N` accepted by the dense Fourier transform.
pub const QFT_DIM_LIMIT: u128 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IrrepLabel {
    TwoDim(usize),
    Trivial,
    Alternating,
    Even,
    Odd,
}

impl IrrepLabel {
    pub fn dim(&self) -> usize {
        match self {
            IrrepLabel::TwoDim(_) => 2,
            _ => 1,
        }
    }

    /// All irreps of D_N in the documented order.
    pub fn all(n: usize) -> Vec<IrrepLabel> {
        let mut out: Vec<IrrepLabel> = (1..n.div_ceil(2)).map(IrrepLabel::TwoDim).collect();
        out.push(IrrepLabel::Trivial);
        out.push(IrrepLabel::Alternating);
        if n % 2 == 0 {
            out.push(IrrepLabel::Even);
            out.push(IrrepLabel::Odd);
        }
        out
    }

    fn validate(&self, n: usize) -> Result<()> {
        match *self {
            IrrepLabel::TwoDim(x) if x == 0 || x >= n.div_ceil(2) => Err(Error::InvalidArgument(
                format!("two-dimensional irrep label {x} outside 1..={} for N = {n}", n.div_ceil(2) - 1),
            )),
            IrrepLabel::Even | IrrepLabel::Odd if n % 2 != 0 => Err(Error::OddModulus(n)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::TwoDim(x) => write!(f, "2d({x})"),
            IrrepLabel::Trivial => write!(f, "trivial"),
            IrrepLabel::Alternating => write!(f, "alternating"),
            IrrepLabel::Even => write!(f, "even"),
            IrrepLabel::Odd => write!(f, "odd"),
        }
    }
}

/// `Γ(g)` as a monomial matrix: each entry is zero or `ζ^e` with
/// `ζ = exp(πi/N)`, stored as the exponent `e mod 2N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepMatrix {
    pub label: IrrepLabel,
    pub element: DihedralElement,
    dim: usize,
    exponents: Vec<Option<usize>>,
}

impl IrrepMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Exponent of `ζ` at `(row, col)`, or `None` for a zero entry.
    pub fn exponent(&self, row: usize, col: usize) -> Option<usize> {
        self.exponents[row * self.dim + col]
    }

    pub fn entries(&self) -> DMatrix<C64> {
        let z = RootsOfUnity::new(2 * self.element.n());
        DMatrix::from_fn(self.dim, self.dim, |r, col| {
            self.exponent(r, col).map_or(c(0.0, 0.0), |e| z.pow(e))
        })
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.entries()[(i, i)]).sum()
    }

    /// The exact product `self · other`.
    pub fn compose(&self, other: &IrrepMatrix) -> Result<IrrepMatrix> {
        if self.label != other.label || self.dim != other.dim {
            return Err(Error::DimensionMismatch("product of different irreps".into()));
        }
        let two_n = 2 * self.element.n();
        let d = self.dim;
        let mut exponents = vec![None; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut terms = (0..d).filter_map(|m| Some((self.exponent(i, m)? + other.exponent(m, j)?) % two_n));
                let first = terms.next();
                if terms.next().is_some() {
                    return Err(Error::Consistency("irrep matrix is not monomial".into()));
                }
                exponents[i * d + j] = first;
            }
        }
        Ok(IrrepMatrix {
            label: self.label,
            element: self.element.multiply(&other.element)?,
            dim: d,
            exponents,
        })
    }
}

/// `Γ_x(g)` for any `x ∈ Z_N`, not only the canonical labels.
pub fn two_dim_irrep(x: usize, g: DihedralElement) -> IrrepMatrix {
    let n = g.n();
    let two_n = 2 * n;
    // ω^{xk} = ζ^{2xk}.
    let up = (2 * x * g.k()) % two_n;
    let down = (two_n - up) % two_n;
    let exponents = if g.t() == 0 {
        vec![Some(up), None, None, Some(down)]
    } else {
        vec![None, Some(down), Some(up), None]
    };
    IrrepMatrix {
        label: IrrepLabel::TwoDim(x % n),
        element: g,
        dim: 2,
        exponents,
    }
}

pub fn irrep(label: IrrepLabel, g: DihedralElement) -> Result<IrrepMatrix> {
    let n = g.n();
    label.validate(n)?;
    // -1 = ζ^N.
    let sign = |neg: bool| Some(if neg { n } else { 0 });
    let rot_parity = g.k() % 2 == 1;
    let refl = g.t() == 1;
    let entry = match label {
        IrrepLabel::TwoDim(x) => return Ok(two_dim_irrep(x, g)),
        IrrepLabel::Trivial => sign(false),
        IrrepLabel::Alternating => sign(refl),
        IrrepLabel::Even => sign(rot_parity),
        IrrepLabel::Odd => sign(rot_parity ^ refl),
    };
    Ok(IrrepMatrix {
        label,
        element: g,
        dim: 1,
        exponents: vec![entry],
    })
}

/// The dense Fourier transform over D_N.
pub fn qft_dihedral(n: usize) -> Result<DenseOperator> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let dim = guard_dim("Fourier transform over D_N", 2 * n as u128, QFT_DIM_LIMIT)?;
    let mut q = DMatrix::<C64>::zeros(dim, dim);
    let mut row = 0;
    for label in IrrepLabel::all(n) {
        let d = label.dim();
        let scale = (d as f64 / dim as f64).sqrt();
        for g in DihedralElement::all(n) {
            let m = irrep(label, g)?.entries();
            for l in 0..d {
                for mm in 0..d {
                    q[(row + l * d + mm, g.index())] = m[(l, mm)] * scale;
                }
            }
        }
        row += d * d;
    }
    debug_assert_eq!(row, dim);
    DenseOperator::from_matrix(q)
}

/// Left regular representation `|h⟩ ↦ |gh⟩`.
pub fn left_regular(g: DihedralElement) -> Result<DenseOperator> {
    regular(g, |h| g.multiply(&h))
}

/// Right regular representation `|h⟩ ↦ |h g^{-1}⟩`.
pub fn right_regular(g: DihedralElement) -> Result<DenseOperator> {
    let inv = g.inverse();
    regular(g, |h| h.multiply(&inv))
}

fn regular<F>(g: DihedralElement, f: F) -> Result<DenseOperator>
where
    F: Fn(DihedralElement) -> Result<DihedralElement>,
{
    let n = g.n();
    let dim = guard_dim("regular representation", 2 * n as u128, QFT_DIM_LIMIT)?;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for h in DihedralElement::all(n) {
        m[(f(h)?.index(), h.index())] = c(1.0, 0.0);
    }
    DenseOperator::from_matrix(m)
}

/// One irrep's share of `Q ρ_H Q†`.
#[derive(Debug, Clone)]
pub struct IrrepComponent {
    pub label: IrrepLabel,
    /// `p(x) = (d_x/|G|) Σ_{h∈H} χ_x(h)`.
    pub prob: f64,
    /// Reduced state of the row register (maximally mixed).
    pub row_state: Option<DMatrix<C64>>,
    /// `ρ_{H,x} = Σ_h Γ_x(h) / Σ_h χ_x(h)`, recovered from the dense matrix.
    pub column_state: Option<DMatrix<C64>>,
}

#[derive(Debug, Clone)]
pub struct IrrepDecomposition {
    pub n: usize,
    pub components: Vec<IrrepComponent>,
    /// Largest entry of `Q ρ_H Q†` outside the irrep blocks.
    pub off_block_residual: f64,
    /// Largest deviation of a block from `p · (row ⊗ column)`.
    pub product_residual: f64,
    /// Largest deviation of a column state from the character formula.
    pub formula_residual: f64,
    /// Largest deviation of a row state from `I/d_x`.
    pub row_mixing_residual: f64,
}

fn character_sum(label: IrrepLabel, h: &[DihedralElement]) -> Result<(C64, DMatrix<C64>)> {
    let d = label.dim();
    let mut sum = DMatrix::<C64>::zeros(d, d);
    for &el in h {
        sum += irrep(label, el)?.entries();
    }
    Ok((sum.trace(), sum))
}

/// Conjugates `ρ_H` by the Fourier transform and reads off its irrep blocks.
pub fn hidden_state_in_irrep_basis(subgroup: Subgroup, n: usize) -> Result<IrrepDecomposition> {
    let q = qft_dihedral(n)?;
    let rho = hidden_subgroup_state(subgroup, n)?;
    let m = (&(&q * &rho) * &q.adjoint()).into_matrix();
    let h = subgroup.elements(n)?;
    let order = 2 * n;

    let mut components = Vec::new();
    let mut in_block = vec![false; order * order];
    let mut off = 0;
    let (mut product_residual, mut formula_residual, mut row_mixing_residual) = (0.0f64, 0.0f64, 0.0f64);
    let mut total = 0.0;
    for label in IrrepLabel::all(n) {
        let d = label.dim();
        let idx = |l: usize, mm: usize| off + l * d + mm;
        for a in 0..d * d {
            for b in 0..d * d {
                in_block[(off + a) * order + off + b] = true;
            }
        }
        let block = DMatrix::from_fn(d * d, d * d, |a, b| m[(off + a, off + b)]);
        let prob = block.trace().re;
        if !(-1e-12..=1.0 + 1e-12).contains(&prob) {
            return Err(Error::Consistency(format!("p({label}) = {prob} is not a probability")));
        }
        let (chi, gamma_sum) = character_sum(label, &h)?;
        let predicted = d as f64 / order as f64 * chi.re;
        if (predicted - prob).abs() > 1e-10 || chi.im.abs() > 1e-10 {
            return Err(Error::Consistency(format!(
                "p({label}) = {prob} but the character sum gives {predicted}"
            )));
        }
        total += prob;
        let (row_state, column_state) = if prob > 1e-12 {
            let row = DMatrix::from_fn(d, d, |l, l2| (0..d).map(|mm| m[(idx(l, mm), idx(l2, mm))]).sum::<C64>() / prob);
            let col = DMatrix::from_fn(d, d, |mm, m2| (0..d).map(|l| m[(idx(l, mm), idx(l, m2))]).sum::<C64>() / prob);
            let rebuilt = row.kronecker(&col).map(|z| z * prob);
            product_residual = product_residual.max(max_abs_diff(&rebuilt, &block));
            row_mixing_residual = row_mixing_residual
                .max(max_abs_diff(&row, &DMatrix::identity(d, d).map(|z: C64| z / d as f64)));
            let column = col.map(|z| z.conj());
            let formula = gamma_sum.map(|z| z / chi);
            formula_residual = formula_residual.max(max_abs_diff(&column, &formula));
            (Some(row), Some(column))
        } else {
            (None, None)
        };
        components.push(IrrepComponent {
            label,
            prob,
            row_state,
            column_state,
        });
        off += d * d;
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::Consistency(format!("irrep probabilities sum to {total}")));
    }
    let off_block_residual = m
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            // nalgebra stores column-major.
            let (r, col) = (i % order, i / order);
            !in_block[r * order + col]
        })
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    Ok(IrrepDecomposition {
        n,
        components,
        off_block_residual,
        product_residual,
        formula_residual,
        row_mixing_residual,
    })
}

/// Distances between the Fourier-sampling procedure and the
/// conditional-Fourier block decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub d: usize,
    /// Total variation between label distributions.
    pub total_variation: f64,
    /// Largest trace distance between matching column states.
    pub max_trace_distance: f64,
    pub tol: f64,
    pub passed: bool,
}

impl EquivalenceReport {
    pub fn distance(&self) -> f64 {
        self.total_variation + self.max_trace_distance
    }
}

/// Tolerance of [`equivalence_check`].
pub const EQUIVALENCE_TOL: f64 = 1e-9;

/// Runs the Fourier-sampling procedure on `ρ_{{e, rs^d}}` and compares the
/// resulting (label, column) distribution with the target: label `y` with
/// probability `1/N` and column `(|0⟩ + ω^{yd}|1⟩)/√2`.
pub fn equivalence_check(n: usize, d: usize) -> Result<EquivalenceReport> {
    if d >= n {
        return Err(Error::InvalidArgument(format!("shift {d} not in Z_{n}")));
    }
    let q = qft_dihedral(n)?;
    let rho = hidden_subgroup_state(Subgroup::Order2(d), n)?;
    let m = (&(&q * &rho) * &q.adjoint()).into_matrix();

    // Unnormalized column state per label.
    let mut columns: Vec<DMatrix<C64>> = vec![DMatrix::zeros(2, 2); n];
    let x_gate = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
    let plus = DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]).map(|z| z * std::f64::consts::FRAC_1_SQRT_2);
    let minus = DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]).map(|z| z * std::f64::consts::FRAC_1_SQRT_2);
    let plus_proj = &plus * plus.adjoint();
    let minus_proj = &minus * minus.adjoint();

    let mut off = 0;
    for label in IrrepLabel::all(n) {
        match label {
            IrrepLabel::TwoDim(x) => {
                for l in 0..2 {
                    let col = DMatrix::from_fn(2, 2, |a, b| m[(off + 2 * l + a, off + 2 * l + b)]);
                    let (target, col) = if l == 0 {
                        ((n - x) % n, col)
                    } else {
                        (x, &x_gate * col * &x_gate)
                    };
                    columns[target] += col;
                }
                off += 4;
            }
            one_dim => {
                let p = m[(off, off)].re;
                let (target, proj) = match one_dim {
                    IrrepLabel::Trivial => (0, &plus_proj),
                    IrrepLabel::Alternating => (0, &minus_proj),
                    IrrepLabel::Even => (n / 2, &plus_proj),
                    _ => (n / 2, &minus_proj),
                };
                columns[target] += proj.map(|z| z * p);
                off += 1;
            }
        }
    }

    let w = RootsOfUnity::new(n);
    let mut tv = 0.0;
    let mut worst = 0.0f64;
    for (y, col) in columns.iter().enumerate() {
        let p = col.trace().re;
        tv += (p - 1.0 / n as f64).abs();
        if p > 1e-12 {
            let v = DVector::from_vec(vec![c(1.0, 0.0), w.pow(y * d)]).map(|z| z * std::f64::consts::FRAC_1_SQRT_2);
            let target = &v * v.adjoint();
            worst = worst.max(trace_distance(&col.map(|z| z / p), &target));
        }
    }
    let total_variation = 0.5 * tv;
    Ok(EquivalenceReport {
        n,
        d,
        total_variation,
        max_trace_distance: worst,
        tol: EQUIVALENCE_TOL,
        passed: total_variation + worst <= EQUIVALENCE_TOL,
    })
}
