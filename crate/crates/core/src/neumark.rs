//! The partial isometry `Ṽ^x = Σ_p |p⟩⟨S^x_p|` and its unitary completion.
//!
//! Layout of the completion `Ũ^x` (dimension `N + 2^k`):
//!
//! * rows `0..N` are the target register `|p⟩`, rows `N..N+2^k` the extra
//!   summand;
//! * columns `0..2^k` are bit strings `|b⟩`, columns `2^k..2^k+N` the
//!   ancilla directions.
//!
//! The first `2^k` columns are `[Ṽ ; B̃]`. Row `i` of `B̃` is the `i`-th
//! vector accepted by Gram–Schmidt on `e_0, e_1, ...` (bit strings in
//! increasing order) against the rows of `Ṽ` and the rows already accepted;
//! pivots with squared norm below `1e-12` are skipped. The ancilla columns
//! are then Gram–Schmidt of the canonical basis of the extra summand followed
//! by that of the target register, with the same rule. Both steps have the
//! closed forms implemented here and are checked against the literal
//! procedure in the tests.

use nalgebra::DMatrix;

use crate::dihedral::BlockLabel;
use crate::error::{Error, Result};
use crate::linalg::{guard_dim, DenseOperator, C64, ORACLE_DIM_LIMIT};
use crate::subset_sum::{count_eta, guard_enumeration, SubsetProfile};

/// `Ṽ^x` stored through the class `b·x` of every bit string.
#[derive(Debug, Clone)]
pub struct PartialIsometry {
    pub profile: SubsetProfile,
    classes: Vec<usize>,
}

impl PartialIsometry {
    pub fn label(&self) -> &BlockLabel {
        &self.profile.x
    }

    pub fn n(&self) -> usize {
        self.profile.n()
    }

    /// `2^k`.
    pub fn width(&self) -> usize {
        self.classes.len()
    }

    /// `b·x mod N`.
    pub fn class_of(&self, b: usize) -> usize {
        self.classes[b]
    }

    /// Row `p`, which is `|S^x_p⟩` (or zero).
    pub fn row(&self, p: usize) -> Vec<C64> {
        let p = p % self.n();
        let eta = self.profile.eta[p];
        let amp = if eta == 0 { 0.0 } else { 1.0 / (eta as f64).sqrt() };
        self.classes
            .iter()
            .map(|&q| C64::new(if q == p { amp } else { 0.0 }, 0.0))
            .collect()
    }

    /// `Ṽ v` for `v` of length `2^k`.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.n()];
        for (b, z) in v.iter().enumerate() {
            out[self.classes[b]] += z;
        }
        for (p, z) in out.iter_mut().enumerate() {
            let eta = self.profile.eta[p];
            if eta > 0 {
                *z /= (eta as f64).sqrt();
            }
        }
        out
    }

    /// `Ṽ† u` for `u` of length N.
    pub fn apply_adjoint(&self, u: &[C64]) -> Vec<C64> {
        let scaled: Vec<C64> = (0..self.n())
            .map(|p| {
                let eta = self.profile.eta[p];
                if eta == 0 {
                    C64::new(0.0, 0.0)
                } else {
                    u[p] / (eta as f64).sqrt()
                }
            })
            .collect();
        self.classes.iter().map(|&p| scaled[p]).collect()
    }

    /// Dense `N × 2^k` matrix.
    pub fn matrix(&self) -> Result<DMatrix<C64>> {
        guard_dim(
            "partial isometry",
            (self.n() * self.width()) as u128,
            ORACLE_DIM_LIMIT * ORACLE_DIM_LIMIT,
        )?;
        let mut m = DMatrix::<C64>::zeros(self.n(), self.width());
        for p in 0..self.n() {
            for (b, z) in self.row(p).into_iter().enumerate() {
                m[(p, b)] = z;
            }
        }
        Ok(m)
    }
}

pub fn vtilde(x: &BlockLabel) -> Result<PartialIsometry> {
    let dim = guard_enumeration(x.k())?;
    let classes = (0..dim as u64).map(|b| x.dot(b)).collect();
    Ok(PartialIsometry {
        profile: count_eta(x),
        classes,
    })
}

/// One row of `B̃`: the Gram–Schmidt residual of `e_b` inside the class of `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct ComplementRow {
    /// Class `p = b·x` of the pivot.
    class: usize,
    /// Position of the pivot among the class members (0-based).
    pos: usize,
}

/// The structured unitary completion `Ũ^x`.
#[derive(Debug, Clone)]
pub struct NeumarkDilation {
    isometry: PartialIsometry,
    /// Class members in increasing order.
    members: Vec<Vec<usize>>,
    rows: Vec<ComplementRow>,
    /// Output row of each ancilla column.
    ancilla: Vec<usize>,
}

impl NeumarkDilation {
    pub fn new(x: &BlockLabel) -> Result<Self> {
        let isometry = vtilde(x)?;
        let n = isometry.n();
        let width = isometry.width();
        let mut members = vec![Vec::new(); n];
        for b in 0..width {
            members[isometry.classes[b]].push(b);
        }
        // Member `i` of a class of size `m` leaves residual norm² (m-i-1)/(m-i),
        // so every member but the last is accepted.
        let mut rows = Vec::with_capacity(width - isometry.profile.support_size);
        let mut seen = vec![0usize; n];
        for b in 0..width {
            let class = isometry.classes[b];
            let pos = seen[class];
            seen[class] += 1;
            if pos + 1 < members[class].len() {
                rows.push(ComplementRow { class, pos });
            }
        }
        let mut ancilla: Vec<usize> = (n + rows.len()..n + width).collect();
        ancilla.extend((0..n).filter(|&p| isometry.profile.eta[p] == 0));
        debug_assert_eq!(ancilla.len(), n);
        Ok(Self {
            isometry,
            members,
            rows,
            ancilla,
        })
    }

    pub fn isometry(&self) -> &PartialIsometry {
        &self.isometry
    }

    /// `N + 2^k`.
    pub fn dim(&self) -> usize {
        self.isometry.n() + self.isometry.width()
    }

    /// Output row of each ancilla column, in column order.
    pub fn ancilla_rows(&self) -> &[usize] {
        &self.ancilla
    }

    fn complement_scale(m: usize, pos: usize) -> (f64, f64) {
        let tail = (m - pos) as f64;
        ((tail / (tail - 1.0)).sqrt(), 1.0 / tail)
    }

    /// `Ũ v`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check_len(v.len())?;
        let n = self.isometry.n();
        let width = self.isometry.width();
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        out[..n].copy_from_slice(&self.isometry.apply(&v[..width]));
        // Suffix sums of v over each class.
        let suffix: Vec<Vec<C64>> = self
            .members
            .iter()
            .map(|mem| {
                let mut acc = C64::new(0.0, 0.0);
                let mut s = vec![acc; mem.len()];
                for (i, &b) in mem.iter().enumerate().rev() {
                    acc += v[b];
                    s[i] = acc;
                }
                s
            })
            .collect();
        for (i, row) in self.rows.iter().enumerate() {
            let mem = &self.members[row.class];
            let (scale, share) = Self::complement_scale(mem.len(), row.pos);
            out[n + i] = (v[mem[row.pos]] - suffix[row.class][row.pos] * share) * scale;
        }
        for (j, &target) in self.ancilla.iter().enumerate() {
            out[target] += v[width + j];
        }
        Ok(out)
    }

    /// `Ũ† u`.
    pub fn apply_adjoint(&self, u: &[C64]) -> Result<Vec<C64>> {
        self.check_len(u.len())?;
        let n = self.isometry.n();
        let width = self.isometry.width();
        let mut out = vec![C64::new(0.0, 0.0); self.dim()];
        out[..width].copy_from_slice(&self.isometry.apply_adjoint(&u[..n]));
        // Row i contributes scale·u_i to its pivot and -scale·share·u_i to
        // every class member at or after the pivot.
        let mut pivot_weight: Vec<Vec<C64>> =
            self.members.iter().map(|m| vec![C64::new(0.0, 0.0); m.len()]).collect();
        let mut spread: Vec<Vec<C64>> = pivot_weight.clone();
        for (i, row) in self.rows.iter().enumerate() {
            let m = self.members[row.class].len();
            let (scale, share) = Self::complement_scale(m, row.pos);
            pivot_weight[row.class][row.pos] += u[n + i] * scale;
            spread[row.class][row.pos] += u[n + i] * (scale * share);
        }
        for (class, mem) in self.members.iter().enumerate() {
            let mut prefix = C64::new(0.0, 0.0);
            for (pos, &b) in mem.iter().enumerate() {
                prefix += spread[class][pos];
                out[b] += pivot_weight[class][pos] - prefix;
            }
        }
        for (j, &target) in self.ancilla.iter().enumerate() {
            out[width + j] += u[target];
        }
        Ok(out)
    }

    /// `Ũ† |p⟩`: padded `|S^x_p⟩` when `η^x_p > 0`, otherwise the ancilla
    /// basis state assigned to `p`.
    pub fn qsample(&self, p: usize) -> Result<Vec<C64>> {
        let n = self.isometry.n();
        if p >= n {
            return Err(Error::InvalidArgument(format!("outcome {p} not in Z_{n}")));
        }
        let mut e = vec![C64::new(0.0, 0.0); self.dim()];
        e[p] = C64::new(1.0, 0.0);
        self.apply_adjoint(&e)
    }

    /// The dense unitary.
    pub fn matrix(&self) -> Result<DenseOperator> {
        let dim = guard_dim("Neumark completion", self.dim() as u128, ORACLE_DIM_LIMIT)?;
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        let mut e = vec![C64::new(0.0, 0.0); dim];
        for col in 0..dim {
            e[col] = C64::new(1.0, 0.0);
            let image = self.apply(&e)?;
            e[col] = C64::new(0.0, 0.0);
            for (row, z) in image.into_iter().enumerate() {
                m[(row, col)] = z;
            }
        }
        DenseOperator::from_matrix(m)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {len}, completion has dimension {}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// The dense completion `Ũ^x`; requires `N + 2^k ≤ 4096`.
pub fn neumark_complete(x: &BlockLabel) -> Result<DenseOperator> {
    guard_neumark(x)?;
    NeumarkDilation::new(x)?.matrix()
}

/// `Ũ^x† |p⟩`; requires `N + 2^k ≤ 4096`.
pub fn qsample(x: &BlockLabel, p: usize) -> Result<Vec<C64>> {
    guard_neumark(x)?;
    NeumarkDilation::new(x)?.qsample(p)
}

fn guard_neumark(x: &BlockLabel) -> Result<()> {
    let dim = (x.n() as u128).saturating_add(crate::numeric::saturating_pow(2, x.k()));
    guard_dim("Neumark completion", dim, ORACLE_DIM_LIMIT).map(|_| ())
}
