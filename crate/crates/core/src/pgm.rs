//! The pretty good measurement for the k-copy dihedral ensemble and the
//! certification of its optimality.
//!
//! Per block `x` the effects are rank one, `E^x_j = |e_j⟩⟨e_j|` with
//! `e_j = N^{-1/2} Σ_p ω^{jp} |S^x_p⟩`. Every operator in the ensemble is block
//! diagonal over `x`, so the optimality conditions can be checked one block
//! at a time; the result equals the check on the assembled matrices.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::dihedral::{assemble_blocks, block_state, dense_state, guard_block_dim, BlockLabel, Hidden};
use crate::enumerate::{source_len, LabelSource};
use crate::error::{Error, Result};
use crate::linalg::{
    c, guard_dim, hermitian_eigenvalues, max_abs_diff, pinv_sqrt_psd, DenseOperator, RootsOfUnity,
    C64, ORACLE_DIM_LIMIT,
};
use crate::numeric::saturating_pow;
use crate::subset_sum::{count_eta, SubsetProfile};

/// Relative eigenvalue cutoff for `G^{-1/2}`.
pub const PINV_CUTOFF: f64 = 1e-10;

/// Default tolerance of the optimality conditions.
pub const HOLEVO_TOL: f64 = 1e-9;

/// Largest dimension accepted by [`pgm_dense`].
pub const PGM_DENSE_LIMIT: u128 = 256;

/// Largest `N^k` for an eagerly enumerated Gram operator.
pub const GRAM_EAGER_LIMIT: u128 = 1 << 22;

/// Largest `N · 2^k` for materialized effect vectors.
pub const EFFECT_VECTOR_LIMIT: u128 = 1 << 26;

/// The N rank-one effects of one block.
#[derive(Debug, Clone)]
pub struct PovmBlock {
    pub x: BlockLabel,
    pub profile: SubsetProfile,
    pub effect_vectors: Vec<Vec<C64>>,
    pub support_dim: usize,
}

impl PovmBlock {
    pub fn effect(&self, j: usize) -> DMatrix<C64> {
        let v = DVector::from_column_slice(&self.effect_vectors[j]);
        &v * v.adjoint()
    }

    pub fn effects(&self) -> Vec<DMatrix<C64>> {
        (0..self.effect_vectors.len()).map(|j| self.effect(j)).collect()
    }

    /// `Σ_{p: η>0} |S_p⟩⟨S_p|`.
    pub fn support_projector(&self) -> DMatrix<C64> {
        support_projector(&self.profile, &self.x)
    }

    /// Largest entry of `Σ_j E_j - Π_support`.
    pub fn resolution_defect(&self) -> f64 {
        let mut sum = DMatrix::<C64>::zeros(self.dim(), self.dim());
        for j in 0..self.effect_vectors.len() {
            sum += self.effect(j);
        }
        max_abs_diff(&sum, &self.support_projector())
    }

    pub fn dim(&self) -> usize {
        self.effect_vectors.first().map_or(0, Vec::len)
    }
}

fn support_projector(profile: &SubsetProfile, x: &BlockLabel) -> DMatrix<C64> {
    let dim = 1usize << x.k();
    let classes: Vec<usize> = (0..dim as u64).map(|b| x.dot(b)).collect();
    DMatrix::from_fn(dim, dim, |a, b| {
        if classes[a] == classes[b] {
            c(1.0 / profile.eta[classes[a]] as f64, 0.0)
        } else {
            c(0.0, 0.0)
        }
    })
}

fn guard_effects(x: &BlockLabel) -> Result<usize> {
    let dim = guard_block_dim(x.k())?;
    let size = x.n() as u128 * dim as u128;
    if size > EFFECT_VECTOR_LIMIT {
        return Err(Error::EnumerationGuard {
            what: "effect vector entries",
            size,
            limit: EFFECT_VECTOR_LIMIT,
        });
    }
    Ok(dim)
}

/// The closed-form effects of block `x`.
pub fn povm_block(x: &BlockLabel) -> Result<PovmBlock> {
    let dim = guard_effects(x)?;
    let n = x.n();
    let profile = count_eta(x);
    let w = RootsOfUnity::new(n);
    let norm = 1.0 / (n as f64).sqrt();
    let amp: Vec<f64> = profile
        .eta
        .iter()
        .map(|&e| if e == 0 { 0.0 } else { norm / (e as f64).sqrt() })
        .collect();
    let classes: Vec<usize> = (0..dim as u64).map(|b| x.dot(b)).collect();
    let effect_vectors = (0..n)
        .map(|j| {
            classes
                .iter()
                .map(|&p| w.pow(j * p) * amp[p])
                .collect()
        })
        .collect();
    Ok(PovmBlock {
        x: x.clone(),
        support_dim: profile.support_size,
        profile,
        effect_vectors,
    })
}

/// `|ρ^x_d⟩⟨ρ^x_d|` for every `d ∈ Z_N`.
pub fn block_ensemble(x: &BlockLabel) -> Result<Vec<DMatrix<C64>>> {
    (0..x.n())
        .map(|d| block_state(x, d)?.density())
        .collect()
}

/// Block description of `G = Σ_j ρ_j^{⊗k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramOperator {
    pub n: usize,
    pub k: usize,
    /// `|{(x, p) : η^x_p > 0}|`, present when built eagerly.
    pub rank: Option<u128>,
}

impl GramOperator {
    /// Closed form only; nothing enumerated.
    pub fn lazy(n: usize, k: usize) -> Self {
        Self { n, k, rank: None }
    }

    /// The eigenvalue `N η^x_r / (2N)^k` attached to `|S^x_r⟩`, for every r.
    pub fn block_weights(&self, x: &BlockLabel) -> Vec<f64> {
        let scale = self.n as f64 / (2.0 * self.n as f64).powi(self.k as i32);
        count_eta(x).eta.iter().map(|&e| e as f64 * scale).collect()
    }

    /// The dense `2^k × 2^k` block of G at `x`.
    pub fn block_matrix(&self, x: &BlockLabel) -> Result<DMatrix<C64>> {
        let dim = guard_block_dim(x.k())?;
        guard_dim("Gram block", dim as u128, ORACLE_DIM_LIMIT)?;
        let scale = self.n as f64 / (2.0 * self.n as f64).powi(self.k as i32);
        let classes: Vec<usize> = (0..dim as u64).map(|b| x.dot(b)).collect();
        // η_r |S_r⟩⟨S_r| is the all-ones matrix on the class of r.
        Ok(DMatrix::from_fn(dim, dim, |a, b| {
            c(if classes[a] == classes[b] { scale } else { 0.0 }, 0.0)
        }))
    }
}

/// G with its rank enumerated over all `N^k` labels.
pub fn gram_operator(n: usize, k: usize) -> Result<GramOperator> {
    let total = saturating_pow(n as u128, k);
    if total > GRAM_EAGER_LIMIT {
        return Err(Error::EnumerationGuard {
            what: "Gram operator blocks",
            size: total,
            limit: GRAM_EAGER_LIMIT,
        });
    }
    let rank = support_rank(n, k, LabelSource::Enumerate)?;
    Ok(GramOperator {
        n,
        k,
        rank: Some(rank),
    })
}

/// `Σ_x |{p : η^x_p > 0}|` over the labels of `source`.
pub(crate) fn support_rank(n: usize, k: usize, source: LabelSource) -> Result<u128> {
    crate::enumerate::fold_labels(
        n,
        k,
        source,
        || 0u128,
        |acc, _, eta| *acc += eta.iter().filter(|&&e| e > 0).count() as u128,
        |acc, o| *acc += o,
    )
}

/// The generic square-root measurement `E_i = G^{-1/2} p_i ρ_i G^{-1/2}` with
/// `G = Σ p_i ρ_i`.
pub fn pgm_dense(states: &[DenseOperator], priors: &[f64]) -> Result<Vec<DenseOperator>> {
    let dim = check_ensemble(states, priors)?;
    guard_dim("pgm_dense", dim as u128, PGM_DENSE_LIMIT)?;
    let mats: Vec<DMatrix<C64>> = states.iter().map(|s| s.matrix().clone()).collect();
    Ok(pgm_matrices(&mats, priors)
        .into_iter()
        .map(DenseOperator)
        .collect())
}

pub(crate) fn pgm_matrices(states: &[DMatrix<C64>], priors: &[f64]) -> Vec<DMatrix<C64>> {
    let dim = states[0].nrows();
    let mut g = DMatrix::<C64>::zeros(dim, dim);
    for (s, &p) in states.iter().zip(priors) {
        g += s.map(|z| z * p);
    }
    let root = pinv_sqrt_psd(&g, PINV_CUTOFF);
    states
        .iter()
        .zip(priors)
        .map(|(s, &p)| &root * s.map(|z| z * p) * &root)
        .collect()
}

fn check_ensemble(states: &[DenseOperator], priors: &[f64]) -> Result<usize> {
    if states.is_empty() {
        return Err(Error::InvalidArgument("empty ensemble".into()));
    }
    if states.len() != priors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} states but {} priors",
            states.len(),
            priors.len()
        )));
    }
    let dim = states[0].dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "state of dimension {} in an ensemble of dimension {dim}",
            bad.dim()
        )));
    }
    if priors.iter().any(|&p| p.is_nan() || p < 0.0) {
        return Err(Error::InvalidArgument("priors must be nonnegative".into()));
    }
    let total: f64 = priors.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidArgument(format!("priors sum to {total}, not 1")));
    }
    Ok(dim)
}

/// One named check: `name,value,tol,pass|fail`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRecord {
    pub name: String,
    pub value: f64,
    pub tol: f64,
    pub pass: bool,
}

impl ConditionRecord {
    /// A residual that must not exceed `tol`.
    pub fn at_most(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tol,
            pass: value <= tol,
        }
    }

    /// A value that must be at least `-tol`.
    pub fn at_least_neg(name: impl Into<String>, value: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            tol,
            pass: value >= -tol,
        }
    }
}

impl fmt::Display for ConditionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{:.6e},{:.1e},{}",
            self.name,
            self.value,
            self.tol,
            if self.pass { "pass" } else { "fail" }
        )
    }
}

/// Outcome of the two optimality conditions.
#[derive(Debug, Clone)]
pub struct OptimalityReport {
    /// `max |Γ - Γ†|` with `Γ = Σ_i p_i ρ_i E_i`.
    pub lagrangian_hermiticity_residual: f64,
    /// `min_j λ_min(Γ - p_j ρ_j)`.
    pub dominance_min_eigenvalue: f64,
    pub tol: f64,
    pub passed: bool,
    /// `Γ`, kept for dense runs.
    pub lagrangian: Option<DenseOperator>,
}

impl OptimalityReport {
    fn new(residual: f64, min_eig: f64, tol: f64, lagrangian: Option<DenseOperator>) -> Self {
        Self {
            lagrangian_hermiticity_residual: residual,
            dominance_min_eigenvalue: min_eig,
            tol,
            passed: residual <= tol && min_eig >= -tol,
            lagrangian,
        }
    }

    /// Merges the report of another block.
    pub fn absorb(&mut self, other: &OptimalityReport) {
        *self = Self::new(
            self.lagrangian_hermiticity_residual
                .max(other.lagrangian_hermiticity_residual),
            self.dominance_min_eigenvalue.min(other.dominance_min_eigenvalue),
            self.tol,
            None,
        );
    }

    pub fn records(&self, prefix: &str) -> Vec<ConditionRecord> {
        vec![
            ConditionRecord::at_most(
                format!("{prefix}lagrangian_hermiticity"),
                self.lagrangian_hermiticity_residual,
                self.tol,
            ),
            ConditionRecord::at_least_neg(
                format!("{prefix}dominance_min_eigenvalue"),
                self.dominance_min_eigenvalue,
                self.tol,
            ),
        ]
    }
}

impl fmt::Display for OptimalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let records = self.records("");
        writeln!(f, "{}", records[0])?;
        write!(f, "{}", records[1])
    }
}

/// Checks both optimality conditions for a dense ensemble and POVM.
pub fn verify_holevo(
    states: &[DenseOperator],
    priors: &[f64],
    effects: &[DenseOperator],
    tol: f64,
) -> Result<OptimalityReport> {
    let dim = check_ensemble(states, priors)?;
    guard_dim("verify_holevo", dim as u128, ORACLE_DIM_LIMIT)?;
    if effects.len() != states.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} effects for {} states",
            effects.len(),
            states.len()
        )));
    }
    if let Some(bad) = effects.iter().find(|e| e.dim() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "effect of dimension {} for states of dimension {dim}",
            bad.dim()
        )));
    }
    let s: Vec<DMatrix<C64>> = states.iter().map(|m| m.matrix().clone()).collect();
    let e: Vec<DMatrix<C64>> = effects.iter().map(|m| m.matrix().clone()).collect();
    let (residual, min_eig, gamma) = holevo_core(&s, priors, &e, tol)?;
    Ok(OptimalityReport::new(
        residual,
        min_eig,
        tol,
        Some(DenseOperator(gamma)),
    ))
}

pub(crate) fn holevo_core(
    states: &[DMatrix<C64>],
    priors: &[f64],
    effects: &[DMatrix<C64>],
    tol: f64,
) -> Result<(f64, f64, DMatrix<C64>)> {
    check_povm(states, priors, effects, tol)?;
    let dim = states[0].nrows();
    let mut gamma = DMatrix::<C64>::zeros(dim, dim);
    for ((s, e), &p) in states.iter().zip(effects).zip(priors) {
        gamma += (s * e).map(|z| z * p);
    }
    let residual = max_abs_diff(&gamma, &gamma.adjoint());
    let min_eig = states
        .iter()
        .zip(priors)
        .map(|(s, &p)| {
            let diff = &gamma - s.map(|z| z * p);
            hermitian_eigenvalues(&diff)[0]
        })
        .fold(f64::INFINITY, f64::min);
    Ok((residual, min_eig, gamma))
}

fn check_povm(
    states: &[DMatrix<C64>],
    priors: &[f64],
    effects: &[DMatrix<C64>],
    tol: f64,
) -> Result<()> {
    let dim = states[0].nrows();
    let mut sum = DMatrix::<C64>::zeros(dim, dim);
    for (j, e) in effects.iter().enumerate() {
        if max_abs_diff(e, &e.adjoint()) > tol {
            return Err(Error::NotPovm(format!("effect {j} is not Hermitian")));
        }
        let low = hermitian_eigenvalues(e)[0];
        if low < -tol {
            return Err(Error::NotPovm(format!(
                "effect {j} is not positive semidefinite (eigenvalue {low:.3e})"
            )));
        }
        sum += e;
    }
    let top = *hermitian_eigenvalues(&sum).last().expect("non-empty");
    if top > 1.0 + tol {
        return Err(Error::NotPovm(format!(
            "effects sum to more than the identity (eigenvalue {top:.6})"
        )));
    }
    // On the support of the states the effects must resolve the identity.
    let mut g = DMatrix::<C64>::zeros(dim, dim);
    for (s, &p) in states.iter().zip(priors) {
        g += s.map(|z| z * p);
    }
    let root = pinv_sqrt_psd(&g, PINV_CUTOFF);
    let support = &root * &g * &root;
    let restricted = &support * &sum * &support;
    let defect = max_abs_diff(&restricted, &support);
    if defect > tol.max(1e-8) {
        return Err(Error::NotPovm(format!(
            "effects do not resolve the identity on the support of the states (defect {defect:.3e})"
        )));
    }
    Ok(())
}

/// Oracle guard shared by the certification routines: `(2N)^k ≤ 4096`.
pub fn guard_certification(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("N and k must be at least 1".into()));
    }
    guard_dim(
        "certification",
        saturating_pow(2 * n as u128, k),
        ORACLE_DIM_LIMIT,
    )
    .map(|_| ())
}

fn for_each_block<F>(n: usize, k: usize, mut f: F) -> Result<()>
where
    F: FnMut(&BlockLabel) -> Result<()>,
{
    let total = source_len(n, k, LabelSource::Enumerate)?;
    for idx in 0..total {
        f(&BlockLabel::from_index(n, k, idx)?)?;
    }
    Ok(())
}

/// Optimality of the closed-form PGM, checked block by block with the
/// blocks weighted as in the full operator. With `perturb`, state `j` is
/// paired with effect `j + 1` as a negative control.
pub fn certify_closed_form(n: usize, k: usize, perturb: bool, tol: f64) -> Result<OptimalityReport> {
    guard_certification(n, k)?;
    let weight = 1.0 / (n as f64).powi(k as i32);
    let priors = vec![1.0 / n as f64; n];
    let mut report: Option<OptimalityReport> = None;
    for_each_block(n, k, |x| {
        let states: Vec<DMatrix<C64>> = block_ensemble(x)?
            .into_iter()
            .map(|m| m.map(|z| z * weight))
            .collect();
        let block = povm_block(x)?;
        let mut effects = block.effects();
        if perturb {
            effects.rotate_left(1);
        }
        let (res, eig, _) = holevo_core(&states, &priors, &effects, tol)?;
        let r = OptimalityReport::new(res, eig, tol, None);
        match report.as_mut() {
            Some(acc) => acc.absorb(&r),
            None => report = Some(r),
        }
        Ok(())
    })?;
    Ok(report.expect("at least one block"))
}

/// Largest entry of (generic square-root measurement − closed form), per block.
pub fn closed_form_vs_generic(n: usize, k: usize) -> Result<f64> {
    guard_certification(n, k)?;
    let priors = vec![1.0 / n as f64; n];
    let mut worst = 0.0f64;
    for_each_block(n, k, |x| {
        let generic = pgm_matrices(&block_ensemble(x)?, &priors);
        let closed = povm_block(x)?.effects();
        for (a, b) in generic.iter().zip(&closed) {
            worst = worst.max(max_abs_diff(a, b));
        }
        Ok(())
    })?;
    Ok(worst)
}

/// Largest entry of `Σ_j E^x_j - Π^x_support` over all blocks.
pub fn resolution_defect(n: usize, k: usize) -> Result<f64> {
    guard_certification(n, k)?;
    let mut worst = 0.0f64;
    for_each_block(n, k, |x| {
        worst = worst.max(povm_block(x)?.resolution_defect());
        Ok(())
    })?;
    Ok(worst)
}

/// The dihedral ensemble `ρ_d^{⊗k}`, `d ∈ Z_N`, as dense matrices.
pub fn dihedral_ensemble(n: usize, k: usize) -> Result<Vec<DenseOperator>> {
    (0..n).map(|d| dense_state(Hidden::Shift(d), k, n)).collect()
}

/// The closed-form effects `E_j`, assembled into the dense k-copy basis.
pub fn closed_form_effects(n: usize, k: usize) -> Result<Vec<DenseOperator>> {
    guard_certification(n, k)?;
    let total = source_len(n, k, LabelSource::Enumerate)?;
    let blocks: Vec<PovmBlock> = (0..total)
        .map(|i| povm_block(&BlockLabel::from_index(n, k, i)?))
        .collect::<Result<_>>()?;
    (0..n)
        .map(|j| {
            assemble_blocks(n, k, |x| {
                let idx = x.flat_index().expect("small label") as usize;
                Ok(blocks[idx].effect(j))
            })
        })
        .collect()
}

/// `E_e = I - Σ_j E_j`, dense.
pub fn completion_effect(n: usize, k: usize) -> Result<DenseOperator> {
    let effects = closed_form_effects(n, k)?;
    let dim = effects[0].dim();
    let mut sum = DMatrix::<C64>::zeros(dim, dim);
    for e in &effects {
        sum += e.matrix();
    }
    DenseOperator::from_matrix(DMatrix::identity(dim, dim) - sum)
}

/// The two-outcome measurement of the parity of the hidden shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsbPovm {
    pub n: usize,
    pub k: usize,
}

impl LsbPovm {
    /// `(E_+^x, E_-^x)` with
    /// `E_±^x = (1/2) Σ_r (|S_r⟩⟨S_r| ± |S_r⟩⟨S_{r+N/2}|)`.
    pub fn block(&self, x: &BlockLabel) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
        if x.n() != self.n || x.k() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "label for N = {}, k = {} used with N = {}, k = {}",
                x.n(),
                x.k(),
                self.n,
                self.k
            )));
        }
        let dim = guard_block_dim(x.k())?;
        guard_dim("LSB block", dim as u128, ORACLE_DIM_LIMIT)?;
        let profile = count_eta(x);
        let half = self.n / 2;
        let classes: Vec<usize> = (0..dim as u64).map(|b| x.dot(b)).collect();
        let entry = |a: usize, b: usize| -> (f64, f64) {
            let (p, q) = (classes[a], classes[b]);
            let diag = if p == q {
                0.5 / profile.eta[p] as f64
            } else {
                0.0
            };
            let cross = if (p + half) % self.n == q && half != 0 {
                0.5 / ((profile.eta[p] * profile.eta[q]) as f64).sqrt()
            } else {
                0.0
            };
            (diag, cross)
        };
        let plus = DMatrix::from_fn(dim, dim, |a, b| {
            let (d, x) = entry(a, b);
            c(d + x, 0.0)
        });
        let minus = DMatrix::from_fn(dim, dim, |a, b| {
            let (d, x) = entry(a, b);
            c(d - x, 0.0)
        });
        Ok((plus, minus))
    }
}

pub fn lsb_povm(n: usize, k: usize) -> Result<LsbPovm> {
    if n % 2 != 0 {
        return Err(Error::OddModulus(n));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(LsbPovm { n, k })
}

/// `ρ_±^x` (weighted as in the full operator) for one block.
pub(crate) fn lsb_block_states(x: &BlockLabel) -> Result<[DMatrix<C64>; 2]> {
    let n = x.n();
    let weight = 2.0 / n as f64 / (n as f64).powi(x.k() as i32);
    let dim = guard_block_dim(x.k())?;
    let mut out = [DMatrix::<C64>::zeros(dim, dim), DMatrix::<C64>::zeros(dim, dim)];
    for (d, rho) in block_ensemble(x)?.into_iter().enumerate() {
        out[d % 2] += rho.map(|z| z * weight);
    }
    Ok(out)
}

/// Optimality of `(E_+, E_-)` for the ensemble `(ρ_+, ρ_-)` with equal priors,
/// block by block.
pub fn certify_lsb(n: usize, k: usize, tol: f64) -> Result<OptimalityReport> {
    let povm = lsb_povm(n, k)?;
    guard_certification(n, k)?;
    let priors = [0.5, 0.5];
    let mut report: Option<OptimalityReport> = None;
    for_each_block(n, k, |x| {
        let states = lsb_block_states(x)?;
        let (plus, minus) = povm.block(x)?;
        let (res, eig, _) = holevo_core(&states, &priors, &[plus, minus], tol)?;
        let r = OptimalityReport::new(res, eig, tol, None);
        match report.as_mut() {
            Some(acc) => acc.absorb(&r),
            None => report = Some(r),
        }
        Ok(())
    })?;
    Ok(report.expect("at least one block"))
}

/// Largest entry of `E_± - Σ_{d even/odd} E_d` over all blocks.
pub fn lsb_aggregation_defect(n: usize, k: usize) -> Result<f64> {
    let povm = lsb_povm(n, k)?;
    guard_certification(n, k)?;
    let mut worst = 0.0f64;
    for_each_block(n, k, |x| {
        let (plus, minus) = povm.block(x)?;
        let block = povm_block(x)?;
        let dim = block.dim();
        let mut sums = [DMatrix::<C64>::zeros(dim, dim), DMatrix::<C64>::zeros(dim, dim)];
        for j in 0..n {
            sums[j % 2] += block.effect(j);
        }
        worst = worst
            .max(max_abs_diff(&plus, &sums[0]))
            .max(max_abs_diff(&minus, &sums[1]));
        Ok(())
    })?;
    Ok(worst)
}

/// Dense `ρ_±` and `E_±`.
pub fn lsb_dense(n: usize, k: usize) -> Result<([DenseOperator; 2], [DenseOperator; 2])> {
    let povm = lsb_povm(n, k)?;
    guard_certification(n, k)?;
    let mut states = Vec::new();
    let mut effects = Vec::new();
    for parity in 0..2 {
        states.push(assemble_blocks(n, k, |x| Ok(lsb_block_states(x)?[parity].clone()))?);
        effects.push(assemble_blocks(n, k, |x| {
            let (p, m) = povm.block(x)?;
            Ok(if parity == 0 { p } else { m })
        })?);
    }
    let pair = |mut v: Vec<DenseOperator>| {
        let b = v.pop().expect("two");
        let a = v.pop().expect("two");
        [a, b]
    };
    Ok((pair(states), pair(effects)))
}
