//! The dihedral group D_N, its hidden-subgroup states, and their
//! block-compressed form in the conditionally Fourier-transformed basis.
//!
//! Conventions used throughout the crate:
//!
//! * A group element `r^t s^k` is stored as `(t, k)`; its group-basis index is
//!   `t * N + k`.
//! * A bit string `b ∈ Z_2^k` is the little-endian integer `Σ b_j 2^j`, with
//!   `b_1` the least significant bit.
//! * In the transformed basis, copy `j` of a k-fold tensor power has the
//!   single-copy index `b_j * N + x_j`, and the k-copy index is
//!   `Σ_j (b_j N + x_j) (2N)^{j}` (copy 1 least significant).

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, guard_dim, DenseOperator, RootsOfUnity, C64, ORACLE_DIM_LIMIT};
use crate::numeric::saturating_pow;

/// Longest bit strings handled anywhere (bit strings are `u64`).
pub const MAX_COPIES: usize = 64;

/// Largest `2^k` for which per-block vectors are materialized.
pub const BLOCK_VECTOR_LIMIT: u128 = 1 << 24;

/// A group element `r^t s^k` of D_N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihedralElement {
    t: u8,
    k: usize,
    n: usize,
}

impl DihedralElement {
    /// Builds `r^t s^k`, reducing `t` mod 2 and `k` mod N.
    ///
    /// Panics if `n == 0`.
    pub fn new(t: u8, k: usize, n: usize) -> Self {
        assert!(n >= 1, "D_N needs N >= 1");
        Self { t: t % 2, k: k % n, n }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(0, 0, n)
    }

    /// The rotation `s^k`.
    pub fn rotation(k: usize, n: usize) -> Self {
        Self::new(0, k, n)
    }

    /// The reflection `r s^k`.
    pub fn reflection(k: usize, n: usize) -> Self {
        Self::new(1, k, n)
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        Self::new((index / n) as u8, index % n, n)
    }

    pub fn t(&self) -> u8 {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.t as usize * self.n + self.k
    }

    pub fn is_identity(&self) -> bool {
        self.t == 0 && self.k == 0
    }

    /// `self · other` under `r^{t'} s^{k'} r^t s^k = r^{t+t'} s^{k + (-1)^t k'}`.
    pub fn multiply(&self, other: &DihedralElement) -> Result<DihedralElement> {
        if self.n != other.n {
            return Err(Error::GroupMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let k = if other.t == 0 {
            other.k + self.k
        } else {
            other.k + (n - self.k) % n
        };
        Ok(Self::new(self.t ^ other.t, k, n))
    }

    pub fn inverse(&self) -> DihedralElement {
        if self.t == 1 {
            *self
        } else {
            Self::new(0, (self.n - self.k) % self.n, self.n)
        }
    }

    /// All 2N elements in group-basis index order.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralElement> {
        (0..2 * n).map(move |i| Self::from_index(i, n))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.t, self.k) {
            (0, 0) => write!(f, "e"),
            (0, k) => write!(f, "s^{k}"),
            (_, 0) => write!(f, "r"),
            (_, k) => write!(f, "rs^{k}"),
        }
    }
}

/// The subgroup families of D_N handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subgroup {
    /// `{e}`.
    Trivial,
    /// `{e, r s^d}`.
    Order2(usize),
    /// `C_{N/j} = {e, s^j, ..., s^{-j}}`.
    Cyclic(usize),
    /// `D_{N/j,d} = C_{N/j} ∪ {r s^{d}, r s^{j+d}, ...}`.
    Dihedral(usize, usize),
}

impl Subgroup {
    /// Elements sorted by group-basis index.
    pub fn elements(&self, n: usize) -> Result<Vec<DihedralElement>> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        let rotations = |j: usize| -> Result<Vec<usize>> {
            if j == 0 || j > n || n % j != 0 {
                return Err(Error::InvalidSubgroup(format!("{j} does not divide N = {n}")));
            }
            Ok((0..n / j).map(|m| m * j).collect())
        };
        let check_shift = |d: usize| -> Result<()> {
            if d >= n {
                return Err(Error::InvalidSubgroup(format!("shift {d} not in Z_{n}")));
            }
            Ok(())
        };
        let mut out: Vec<DihedralElement> = match *self {
            Subgroup::Trivial => vec![DihedralElement::identity(n)],
            Subgroup::Order2(d) => {
                check_shift(d)?;
                vec![DihedralElement::identity(n), DihedralElement::reflection(d, n)]
            }
            Subgroup::Cyclic(j) => rotations(j)?
                .into_iter()
                .map(|k| DihedralElement::rotation(k, n))
                .collect(),
            Subgroup::Dihedral(j, d) => {
                check_shift(d)?;
                let rot = rotations(j)?;
                rot.iter()
                    .map(|&k| DihedralElement::rotation(k, n))
                    .chain(rot.iter().map(|&k| DihedralElement::reflection(k + d, n)))
                    .collect()
            }
        };
        out.sort();
        Ok(out)
    }
}

/// Convenience wrapper for [`Subgroup::elements`].
pub fn subgroup_elements(kind: Subgroup, n: usize) -> Result<Vec<DihedralElement>> {
    kind.elements(n)
}

/// What the measurement is trying to identify: an order-two subgroup
/// `{e, r s^d}` (by its shift `d`) or the trivial subgroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Hidden {
    Shift(usize),
    Trivial,
}

impl From<Hidden> for String {
    fn from(h: Hidden) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for Hidden {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        if s == "trivial" {
            return Ok(Hidden::Trivial);
        }
        s.parse()
            .map(Hidden::Shift)
            .map_err(|_| format!("`{s}` is neither a shift nor `trivial`"))
    }
}

impl fmt::Display for Hidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hidden::Shift(d) => write!(f, "{d}"),
            Hidden::Trivial => write!(f, "trivial"),
        }
    }
}

/// One Fourier label per copy: `x ∈ Z_N^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockLabel {
    n: usize,
    x: Vec<usize>,
}

impl BlockLabel {
    pub fn new(n: usize, x: Vec<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("N must be at least 1".into()));
        }
        if x.is_empty() {
            return Err(Error::InvalidArgument("k must be at least 1".into()));
        }
        if x.len() > MAX_COPIES {
            return Err(Error::InvalidArgument(format!(
                "k = {} exceeds the supported maximum {MAX_COPIES}",
                x.len()
            )));
        }
        if let Some(bad) = x.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidArgument(format!("label entry {bad} not in Z_{n}")));
        }
        Ok(Self { n, x })
    }

    /// The label with lexicographic rank `index` (x_1 most significant).
    pub fn from_index(n: usize, k: usize, mut index: u128) -> Result<Self> {
        let mut x = vec![0usize; k];
        for slot in x.iter_mut().rev() {
            *slot = (index % n as u128) as usize;
            index /= n as u128;
        }
        if index != 0 {
            return Err(Error::InvalidArgument("label index out of range".into()));
        }
        Self::new(n, x)
    }

    /// Lexicographic rank, if it fits in u128.
    pub fn flat_index(&self) -> Option<u128> {
        self.x.iter().try_fold(0u128, |acc, &v| {
            acc.checked_mul(self.n as u128)?.checked_add(v as u128)
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.x
    }

    /// `b · x mod N`, accumulated exactly before reduction.
    #[inline]
    pub fn dot(&self, b: u64) -> usize {
        let mut acc: u128 = 0;
        let mut bits = b;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            acc += self.x[j] as u128;
            bits &= bits - 1;
        }
        (acc % self.n as u128) as usize
    }

    /// `2^k` as a usize, checked against the per-block vector guard.
    pub fn block_dim(&self) -> Result<usize> {
        guard_block_dim(self.k())
    }

    /// Index of `(b, x)` in the dense k-copy transformed basis.
    pub fn dense_index(&self, b: u64) -> usize {
        let two_n = 2 * self.n;
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (j, &xj) in self.x.iter().enumerate() {
            let bj = ((b >> j) & 1) as usize;
            idx += (bj * self.n + xj) * stride;
            stride *= two_n;
        }
        idx
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.x.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn guard_block_dim(k: usize) -> Result<usize> {
    let dim = saturating_pow(2, k);
    if dim > BLOCK_VECTOR_LIMIT {
        return Err(Error::EnumerationGuard {
            what: "bit strings per block",
            size: dim,
            limit: BLOCK_VECTOR_LIMIT,
        });
    }
    Ok(dim as usize)
}

/// The conditional state of one block: pure for an order-two subgroup,
/// maximally mixed (flagged, no amplitudes) for the trivial subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockState {
    pub label: BlockLabel,
    pub hidden: Hidden,
    /// `None` for the trivial subgroup.
    pub amplitudes: Option<Vec<C64>>,
}

impl BlockState {
    pub fn trivial(label: BlockLabel) -> Self {
        Self {
            label,
            hidden: Hidden::Trivial,
            amplitudes: None,
        }
    }

    /// The block density matrix (`2^k × 2^k`).
    pub fn density(&self) -> Result<DMatrix<C64>> {
        let dim = self.label.block_dim()?;
        Ok(match &self.amplitudes {
            Some(a) => {
                let v = nalgebra::DVector::from_column_slice(a);
                &v * v.adjoint()
            }
            None => DMatrix::<C64>::identity(dim, dim).map(|z| z / dim as f64),
        })
    }
}

/// `|ρ^x_d⟩` with amplitudes `ω^{d (b·x)} / 2^{k/2}`.
pub fn block_state(x: &BlockLabel, d: usize) -> Result<BlockState> {
    let dim = x.block_dim()?;
    let w = RootsOfUnity::new(x.n());
    let norm = 1.0 / (dim as f64).sqrt();
    let d = d % x.n();
    let amplitudes = (0..dim as u64)
        .map(|b| w.pow(d * x.dot(b)) * norm)
        .collect();
    Ok(BlockState {
        label: x.clone(),
        hidden: Hidden::Shift(d),
        amplitudes: Some(amplitudes),
    })
}

/// `|φ_{k,d}⟩ = (|0,k⟩ + |1,-k+d⟩)/√2` in the group basis.
pub fn coset_state_group_basis(k: usize, d: usize, n: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); 2 * n];
    let amp = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let k = k % n;
    let second = (d % n + n - k) % n;
    v[k] += amp;
    v[n + second] += amp;
    v
}

/// The single-copy hidden subgroup state `ρ_H` in the group basis, built as
/// the uniform mixture of left-coset states `|gH⟩`.
pub fn hidden_subgroup_state(subgroup: Subgroup, n: usize) -> Result<DenseOperator> {
    let dim = guard_dim("group-basis state", 2 * n as u128, ORACLE_DIM_LIMIT)?;
    let h = subgroup.elements(n)?;
    let amp = 1.0 / (h.len() as f64).sqrt();
    let mut rho = DMatrix::<C64>::zeros(dim, dim);
    for g in DihedralElement::all(n) {
        let mut v = nalgebra::DVector::<C64>::zeros(dim);
        for el in &h {
            v[g.multiply(el)?.index()] += amp;
        }
        rho += &v * v.adjoint();
    }
    DenseOperator::from_matrix(rho.map(|z| z / dim as f64))
}

/// The basis change to the transformed basis: inverse Z_N Fourier transform
/// on the second register when the first is 0, forward transform when it is 1.
pub fn tilde_basis_change(n: usize) -> Result<DenseOperator> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let dim = guard_dim("basis change", 2 * n as u128, ORACLE_DIM_LIMIT)?;
    let w = RootsOfUnity::new(n);
    let norm = 1.0 / (n as f64).sqrt();
    let mut u = DMatrix::<C64>::zeros(dim, dim);
    for x in 0..n {
        for k in 0..n {
            u[(x, k)] = w.pow_signed(-((x * k) as i64)) * norm;
            u[(n + x, n + k)] = w.pow(x * k) * norm;
        }
    }
    DenseOperator::from_matrix(u)
}

/// `ρ^{⊗k}` for an order-two subgroup (transformed basis) or the trivial
/// subgroup, as a dense `(2N)^k` matrix.
pub fn dense_state(hidden: Hidden, k: usize, n: usize) -> Result<DenseOperator> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("N and k must be at least 1".into()));
    }
    let dim = guard_dim(
        "k-copy state",
        saturating_pow(2 * n as u128, k),
        ORACLE_DIM_LIMIT,
    )?;
    match hidden {
        Hidden::Trivial => Ok(DenseOperator::identity(dim).scale(1.0 / dim as f64)),
        Hidden::Shift(d) => {
            let single = single_copy_transformed(d, n);
            let mut acc = single.clone();
            for _ in 1..k {
                // Later copies are more significant.
                acc = single.kron(&acc);
            }
            Ok(acc)
        }
    }
}

fn single_copy_transformed(d: usize, n: usize) -> DenseOperator {
    let w = RootsOfUnity::new(n);
    let dim = 2 * n;
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    for x in 0..n {
        for b in 0..2usize {
            for cc in 0..2usize {
                let exp = (b as i64 - cc as i64) * (x * d % n) as i64;
                m[(b * n + x, cc * n + x)] = w.pow_signed(exp) / dim as f64;
            }
        }
    }
    DenseOperator(m)
}

/// Assembles `Σ_x weight(x) · M_x ⊗ |x⟩⟨x|` into the dense k-copy basis.
pub(crate) fn assemble_blocks<F>(n: usize, k: usize, mut block: F) -> Result<DenseOperator>
where
    F: FnMut(&BlockLabel) -> Result<DMatrix<C64>>,
{
    let dim = guard_dim(
        "block assembly",
        saturating_pow(2 * n as u128, k),
        ORACLE_DIM_LIMIT,
    )?;
    let bdim = 1usize << k;
    let blocks = n.pow(k as u32);
    let mut out = DMatrix::<C64>::zeros(dim, dim);
    for idx in 0..blocks {
        let x = BlockLabel::from_index(n, k, idx as u128)?;
        let m = block(&x)?;
        for b in 0..bdim {
            let row = x.dense_index(b as u64);
            for cc in 0..bdim {
                out[(row, x.dense_index(cc as u64))] = m[(b, cc)];
            }
        }
    }
    DenseOperator::from_matrix(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(t: u8, k: usize, n: usize) -> DihedralElement {
        DihedralElement::new(t, k, n)
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(el(0, 2, 5).multiply(&el(0, 1, 5)).unwrap(), el(0, 3, 5));
        let rsr = el(1, 0, 5)
            .multiply(&el(0, 1, 5))
            .unwrap()
            .multiply(&el(1, 0, 5))
            .unwrap();
        assert_eq!(rsr, el(0, 4, 5));
        assert_eq!(el(1, 3, 4).multiply(&el(1, 2, 4)).unwrap(), el(0, 3, 4));
    }

    #[test]
    fn multiply_rejects_mismatched_groups() {
        let err = el(0, 1, 4).multiply(&el(0, 1, 5)).unwrap_err();
        assert!(err.to_string().contains("group mismatch"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(el(0, 2, 5).inverse(), el(0, 3, 5));
        assert_eq!(el(1, 3, 5).inverse(), el(1, 3, 5));
        assert_eq!(el(0, 0, 7).inverse(), el(0, 0, 7));
    }

    #[test]
    fn defining_relations() {
        for n in 1..=16 {
            let r = DihedralElement::reflection(0, n);
            let s = DihedralElement::rotation(1, n);
            let e = DihedralElement::identity(n);
            assert_eq!(r.multiply(&r).unwrap(), e);
            let mut p = e;
            for _ in 0..n {
                p = p.multiply(&s).unwrap();
            }
            assert_eq!(p, e);
            let rsr = r.multiply(&s).unwrap().multiply(&r).unwrap();
            assert_eq!(rsr, s.inverse());
        }
    }

    #[test]
    fn subgroup_examples() {
        assert_eq!(
            Subgroup::Order2(2).elements(4).unwrap(),
            vec![el(0, 0, 4), el(1, 2, 4)]
        );
        for n in 1..8 {
            assert_eq!(Subgroup::Cyclic(n).elements(n).unwrap(), vec![el(0, 0, n)]);
        }
        assert_eq!(
            Subgroup::Dihedral(2, 1).elements(4).unwrap(),
            vec![el(0, 0, 4), el(0, 2, 4), el(1, 1, 4), el(1, 3, 4)]
        );
        assert!(Subgroup::Cyclic(3).elements(4).is_err());
        assert!(Subgroup::Dihedral(0, 1).elements(4).is_err());
    }

    #[test]
    fn subgroups_are_closed() {
        for n in 1..=12 {
            let mut kinds = vec![Subgroup::Trivial];
            for j in (1..=n).filter(|j| n % j == 0) {
                kinds.push(Subgroup::Cyclic(j));
                for d in 0..n {
                    kinds.push(Subgroup::Dihedral(j, d));
                }
            }
            for d in 0..n {
                kinds.push(Subgroup::Order2(d));
            }
            for kind in kinds {
                let h = kind.elements(n).unwrap();
                for a in &h {
                    assert!(h.contains(&a.inverse()));
                    for b in &h {
                        assert!(h.contains(&a.multiply(b).unwrap()), "{kind:?} N={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn coset_state_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let check = |k, d, n, hot: [usize; 2]| {
            let v = coset_state_group_basis(k, d, n);
            for (i, a) in v.iter().enumerate() {
                let expect = if hot.contains(&i) { h } else { 0.0 };
                assert!((a.re - expect).abs() < 1e-15 && a.im == 0.0, "index {i}");
            }
        };
        check(0, 1, 2, [0, 2 + 1]);
        check(3, 1, 4, [3, 4 + 2]);
        check(1, 0, 3, [1, 3 + 2]);
    }

    #[test]
    fn block_state_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = block_state(&BlockLabel::new(2, vec![1]).unwrap(), 0).unwrap();
        let a = s.amplitudes.unwrap();
        assert!((a[0] - c(h, 0.0)).norm() < 1e-15 && (a[1] - c(h, 0.0)).norm() < 1e-15);

        let s = block_state(&BlockLabel::new(2, vec![1]).unwrap(), 1).unwrap();
        let a = s.amplitudes.unwrap();
        assert!((a[0] - c(h, 0.0)).norm() < 1e-15 && (a[1] - c(-h, 0.0)).norm() < 1e-15);

        let s = block_state(&BlockLabel::new(4, vec![1, 2]).unwrap(), 1).unwrap();
        let a = s.amplitudes.unwrap();
        let expect = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        for (got, want) in a.iter().zip(expect) {
            assert!((got - want).norm() < 1e-15);
        }
    }

    #[test]
    fn block_states_are_normalized() {
        for n in 1..=7 {
            for k in 1..=5 {
                for idx in 0..(n as u128).pow(k as u32).min(50) {
                    let x = BlockLabel::from_index(n, k, idx).unwrap();
                    for d in 0..n {
                        let a = block_state(&x, d).unwrap().amplitudes.unwrap();
                        let norm: f64 = a.iter().map(|z| z.norm_sqr()).sum();
                        assert!((norm - 1.0).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn label_index_roundtrip() {
        let x = BlockLabel::new(5, vec![4, 0, 3]).unwrap();
        assert_eq!(x.flat_index(), Some(4 * 25 + 3));
        assert_eq!(BlockLabel::from_index(5, 3, 103).unwrap(), x);
        assert!(BlockLabel::new(5, vec![5]).is_err());
        assert!(BlockLabel::new(5, vec![]).is_err());
    }

    #[test]
    fn tilde_basis_change_is_unitary() {
        assert_eq!(
            tilde_basis_change(1).unwrap().max_abs_diff(&DenseOperator::identity(2)),
            0.0
        );
        for n in 1..=16 {
            assert!(tilde_basis_change(n).unwrap().unitarity_defect() < 1e-12);
        }
        assert!(tilde_basis_change(3000).is_err());
    }

    #[test]
    fn tilde_basis_change_maps_coset_mixture_to_blocks() {
        for n in 1..=9 {
            let u = tilde_basis_change(n).unwrap();
            for d in 0..n {
                let rho = hidden_subgroup_state(Subgroup::Order2(d), n).unwrap();
                let pushed = &(&u * &rho) * &u.adjoint();
                let target = dense_state(Hidden::Shift(d), 1, n).unwrap();
                assert!(pushed.max_abs_diff(&target) < 1e-12, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn tilde_example_n2_d1() {
        // Column states (|0> + (-1)^{x} |1>)/sqrt2 at x = 0, 1, weight 1/2.
        let rho = dense_state(Hidden::Shift(1), 1, 2).unwrap();
        let m = rho.matrix();
        assert!((m[(0, 2)] - c(0.25, 0.0)).norm() < 1e-15);
        assert!((m[(1, 3)] - c(-0.25, 0.0)).norm() < 1e-15);
        assert!(m[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn dense_state_examples() {
        let t = dense_state(Hidden::Trivial, 1, 2).unwrap();
        assert!(t.max_abs_diff(&DenseOperator::identity(4).scale(0.25)) < 1e-15);

        let rho = dense_state(Hidden::Shift(0), 1, 2).unwrap();
        let m = rho.matrix();
        for x in 0..2 {
            for b in 0..2 {
                for cc in 0..2 {
                    assert!((m[(b * 2 + x, cc * 2 + x)] - c(0.25, 0.0)).norm() < 1e-15);
                }
            }
        }
        assert!(m[(0, 1)].norm() < 1e-15);

        for n in 1..=4 {
            for k in 1..=2 {
                for d in 0..n {
                    let rho = dense_state(Hidden::Shift(d), k, n).unwrap();
                    assert!((rho.trace().re - 1.0).abs() < 1e-12);
                    let purity = (&rho * &rho).trace().re;
                    assert!((purity - 1.0 / (n as f64).powi(k as i32)).abs() < 1e-12);
                    assert!(rho.eigenvalues()[0] > -1e-12);
                }
            }
        }
        let err = dense_state(Hidden::Shift(0), 4, 9).unwrap_err();
        assert!(err.to_string().contains("oracle scale exceeded"));
    }

    #[test]
    fn dense_matches_block_assembly() {
        for (n, k) in [(2, 1), (2, 3), (3, 2), (4, 2), (5, 1), (2, 5)] {
            let weight = 1.0 / (n as f64).powi(k as i32);
            for d in 0..n {
                let dense = dense_state(Hidden::Shift(d), k, n).unwrap();
                let assembled = assemble_blocks(n, k, |x| {
                    Ok(block_state(x, d)?.density()?.map(|z| z * weight))
                })
                .unwrap();
                assert!(dense.max_abs_diff(&assembled) < 1e-12, "n={n} k={k} d={d}");
            }
            let trivial = dense_state(Hidden::Trivial, k, n).unwrap();
            let assembled = assemble_blocks(n, k, |x| {
                Ok(BlockState::trivial(x.clone()).density()?.map(|z| z * weight))
            })
            .unwrap();
            assert!(trivial.max_abs_diff(&assembled) < 1e-12);
        }
    }
}
