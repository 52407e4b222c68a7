//! Scalar figures of merit: success probability of the optimal measurement,
//! its threshold in the density `ν = k / log2 N`, trivial-subgroup
//! identification, the parity (LSB) measurement, counting identities, and the
//! information-theoretic copy bound.

use std::fmt;

use serde::Serialize;

use crate::dihedral::{dense_state, Hidden};
use crate::enumerate::{fold_labels, label_moments, LabelSource};
use crate::error::{Error, Result};
use crate::linalg::{guard_dim, von_neumann_entropy};
use crate::numeric::{entropy_bits, saturating_pow, CompensatedSum, Moments};
use crate::pgm::{closed_form_effects, guard_certification, lsb_dense, lsb_povm};
use crate::rng::SeedSplitter;

/// Sweeps switch from exact enumeration to Monte Carlo above this `N^k`.
pub const SWEEP_EXACT_LIMIT: u128 = 1 << 16;

/// Largest `2N` for [`chi_single_copy`].
pub const CHI_DIM_LIMIT: u128 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    Exact,
    Mc,
    ClosedForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "EXACT",
            Method::Mc => "MC",
            Method::ClosedForm => "CLOSED_FORM",
        })
    }
}

/// A value with its standard error (zero when exact).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub method: Method,
}

impl Estimate {
    fn from_moments(m: &Moments, source: LabelSource) -> Self {
        if source.is_exact() {
            Self {
                value: m.mean(),
                stderr: 0.0,
                method: Method::Exact,
            }
        } else {
            Self {
                value: m.mean(),
                stderr: m.std_error(),
                method: Method::Mc,
            }
        }
    }
}

/// One row of a threshold sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdPoint {
    pub n: usize,
    pub k: usize,
    pub nu: f64,
    pub p: f64,
    pub stderr: f64,
    pub method: Method,
}

impl ThresholdPoint {
    pub const CSV_HEADER: &'static str = "N,k,nu,p,stderr,method";

    fn new(n: usize, k: usize, est: Estimate) -> Self {
        Self {
            n,
            k,
            nu: density(n, k),
            p: est.value,
            stderr: est.stderr,
            method: est.method,
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.k, self.nu, self.p, self.stderr, self.method
        )
    }
}

/// `ν = k / log2 N` (infinite for N = 1).
pub fn density(n: usize, k: usize) -> f64 {
    k as f64 / (n as f64).log2()
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// `(Σ_r √η_r)² / (2^k N)`: the success probability within one block.
pub fn block_success(eta: &[u128], k: usize) -> f64 {
    let s: CompensatedSum = eta.iter().map(|&e| (e as f64).sqrt()).collect();
    let s = s.value();
    s * s / (2f64.powi(k as i32) * eta.len() as f64)
}

/// Mean of [`block_success`] over a label source.
pub fn success(n: usize, k: usize, source: LabelSource) -> Result<Estimate> {
    check_nk(n, k)?;
    let m = label_moments(n, k, source, |_, eta| block_success(eta, k))?;
    Ok(Estimate::from_moments(&m, source))
}

/// Exact success probability by enumerating all `N^k` labels.
pub fn success_exact(n: usize, k: usize) -> Result<ThresholdPoint> {
    Ok(ThresholdPoint::new(n, k, success(n, k, LabelSource::Enumerate)?))
}

/// Monte Carlo estimate from `samples` uniform labels.
pub fn success_mc(n: usize, k: usize, samples: u64, seed: u64) -> Result<ThresholdPoint> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    Ok(ThresholdPoint::new(
        n,
        k,
        success(n, k, LabelSource::Random { samples, seed })?,
    ))
}

/// `tr(E_d ρ_d^{⊗k})` from dense matrices (oracle scale).
pub fn success_dense(n: usize, k: usize, d: usize) -> Result<f64> {
    let effects = closed_form_effects(n, k)?;
    let rho = dense_state(Hidden::Shift(d % n), k, n)?;
    Ok(effects[d % n].trace_product(&rho).re)
}

/// `p_e = 1 - rank G / (2N)^k`, exact or estimated.
pub fn trivial_success(n: usize, k: usize, source: LabelSource) -> Result<Estimate> {
    check_nk(n, k)?;
    let scale = 2f64.powi(k as i32);
    let m = label_moments(n, k, source, |_, eta| {
        1.0 - eta.iter().filter(|&&e| e > 0).count() as f64 / scale
    })?;
    Ok(Estimate::from_moments(&m, source))
}

/// One point per k: exact when `N^k ≤ 2^16`, Monte Carlo otherwise.
pub fn threshold_sweep(n: usize, ks: &[usize], samples: u64, seed: u64) -> Result<Vec<ThresholdPoint>> {
    let splitter = SeedSplitter::new(seed);
    ks.iter()
        .map(|&k| {
            check_nk(n, k)?;
            if saturating_pow(n as u128, k) <= SWEEP_EXACT_LIMIT {
                success_exact(n, k)
            } else {
                success_mc(n, k, samples, splitter.child(k as u64).seed())
            }
        })
        .collect()
}

/// `(1/2)(1 + Σ_r √(η_r η_{r+N/2}) / 2^k)`: the parity success within one block.
pub fn block_lsb_success(eta: &[u128], k: usize) -> f64 {
    let n = eta.len();
    let half = n / 2;
    let s: CompensatedSum = (0..n)
        .map(|r| ((eta[r] * eta[(r + half) % n]) as f64).sqrt())
        .collect();
    0.5 * (1.0 + s.value() / 2f64.powi(k as i32))
}

/// Success probability of the parity measurement.
pub fn lsb_success(n: usize, k: usize, source: LabelSource) -> Result<Estimate> {
    lsb_povm(n, k)?;
    let m = label_moments(n, k, source, |_, eta| block_lsb_success(eta, k))?;
    Ok(Estimate::from_moments(&m, source))
}

pub fn lsb_success_exact(n: usize, k: usize) -> Result<f64> {
    Ok(lsb_success(n, k, LabelSource::Enumerate)?.value)
}

/// `tr(E_+ ρ_+)` from dense matrices (oracle scale), with
/// `ρ_+ = (2/N) Σ_{d even} ρ_d^{⊗k}`.
pub fn lsb_success_dense(n: usize, k: usize) -> Result<f64> {
    let (_, effects) = lsb_dense(n, k)?;
    let mut p = 0.0;
    for d in (0..n).step_by(2) {
        p += effects[0].trace_product(&dense_state(Hidden::Shift(d), k, n)?).re;
    }
    Ok(2.0 * p / n as f64)
}

/// `(1/2)(1 + 2^k/N + 6/N + 3/2^k)`.
pub fn lsb_upper_bound(n: usize, k: usize) -> f64 {
    let two_k = 2f64.powi(k as i32);
    let n = n as f64;
    0.5 * (1.0 + two_k / n + 6.0 / n + 3.0 / two_k)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LsbCheck {
    pub n: usize,
    pub k: usize,
    pub estimate: Estimate,
    pub upper_bound: f64,
    /// `estimate ≤ bound + 4 stderr`.
    pub passed: bool,
}

/// Monte Carlo parity success against its analytic upper bound.
pub fn lsb_threshold_check(n: usize, k: usize, samples: u64, seed: u64) -> Result<LsbCheck> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let estimate = lsb_success(n, k, LabelSource::Random { samples, seed })?;
    let upper_bound = lsb_upper_bound(n, k);
    Ok(LsbCheck {
        n,
        k,
        estimate,
        upper_bound,
        passed: estimate.value <= upper_bound + 4.0 * estimate.stderr,
    })
}

/// Exact sums of counts over all labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingSums {
    /// `Σ_x η^x_0`.
    pub eta_zero: u128,
    /// `Σ_x η^x_{N/2}`.
    pub eta_half: u128,
    /// `Σ_{r ≠ 0, N/2} Σ_x η^x_r η^x_{-r}`.
    pub cross_negated: u128,
    /// `Σ_r Σ_x η^x_r η^x_{r+N/2}`.
    pub cross_half_shift: u128,
}

impl CountingSums {
    /// Closed forms of the four sums.
    pub fn expected(n: usize, k: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddModulus(n));
        }
        check_nk(n, k)?;
        let big_n = n as u128;
        let two_k = 1u128 << k;
        let nk1 = big_n.pow(k as u32 - 1);
        let cross_negated = if k == 1 {
            0
        } else {
            (big_n - 2) * (two_k - 1) * (two_k - 2) * big_n.pow(k as u32 - 2)
        };
        Ok(Self {
            eta_zero: nk1 * (two_k - 1) + big_n.pow(k as u32),
            eta_half: nk1 * (two_k - 1),
            cross_negated,
            cross_half_shift: two_k * (two_k - 1) * nk1,
        })
    }
}

/// The sums of [`CountingSums`] by enumeration.
pub fn counting_sums(n: usize, k: usize) -> Result<CountingSums> {
    if n % 2 != 0 {
        return Err(Error::OddModulus(n));
    }
    check_nk(n, k)?;
    let half = n / 2;
    let zero = CountingSums {
        eta_zero: 0,
        eta_half: 0,
        cross_negated: 0,
        cross_half_shift: 0,
    };
    fold_labels(
        n,
        k,
        LabelSource::Enumerate,
        || zero,
        |acc, _, eta| {
            acc.eta_zero += eta[0];
            acc.eta_half += eta[half];
            for r in 0..n {
                if r != 0 && r != half {
                    acc.cross_negated += eta[r] * eta[(n - r) % n];
                }
                acc.cross_half_shift += eta[r] * eta[(r + half) % n];
            }
        },
        |acc, o| {
            acc.eta_zero += o.eta_zero;
            acc.eta_half += o.eta_half;
            acc.cross_negated += o.cross_negated;
            acc.cross_half_shift += o.cross_half_shift;
        },
    )
}

/// Fraction of labels with `η^x_r ≥ (2^k - 1)/(2N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LargeCountFraction {
    pub fraction: Estimate,
    /// `1 - 4N/(2^k - 1)`.
    pub lower_bound: f64,
}

pub fn large_count_fraction(n: usize, k: usize, r: usize, source: LabelSource) -> Result<LargeCountFraction> {
    check_nk(n, k)?;
    if k >= 127 {
        return Err(Error::InvalidArgument("k too large".into()));
    }
    let r = r % n;
    let two_k = 1u128 << k;
    let m = label_moments(n, k, source, |_, eta| {
        // η ≥ (2^k - 1)/(2N) ⇔ 2N η ≥ 2^k - 1.
        if 2 * n as u128 * eta[r] >= two_k - 1 {
            1.0
        } else {
            0.0
        }
    })?;
    Ok(LargeCountFraction {
        fraction: Estimate::from_moments(&m, source),
        lower_bound: 1.0 - 4.0 * n as f64 / (two_k - 1) as f64,
    })
}

/// Holevo χ of the single-copy ensemble with its spectra.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiResult {
    pub n: usize,
    pub chi: f64,
    /// Ascending eigenvalues of `(1/N) Σ_d ρ_d`.
    pub mixture_spectrum: Vec<f64>,
    /// Ascending eigenvalues of each `ρ_d`.
    pub state_spectra: Vec<Vec<f64>>,
}

impl ChiResult {
    /// Largest deviation of the mixture spectrum from
    /// `{1/N ×1, 1/(2N) ×(2N-2), 0 ×1}`.
    pub fn mixture_spectrum_defect(&self) -> f64 {
        let n = self.n as f64;
        let mut want = vec![0.0];
        want.extend(std::iter::repeat_n(0.5 / n, 2 * self.n - 2));
        want.push(1.0 / n);
        want.sort_by(f64::total_cmp);
        max_deviation(&self.mixture_spectrum, &want)
    }

    /// Largest deviation of each state spectrum from `{1/N ×N, 0 ×N}`.
    pub fn state_spectrum_defect(&self) -> f64 {
        let mut want = vec![0.0; self.n];
        want.extend(std::iter::repeat_n(1.0 / self.n as f64, self.n));
        self.state_spectra
            .iter()
            .map(|s| max_deviation(s, &want))
            .fold(0.0, f64::max)
    }
}

fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `S((1/N) Σ_d ρ_d) - (1/N) Σ_d S(ρ_d)` for a single copy.
pub fn chi_single_copy(n: usize) -> Result<ChiResult> {
    check_nk(n, 1)?;
    let dim = guard_dim("chi_single_copy", 2 * n as u128, CHI_DIM_LIMIT)?;
    let mut mixture = nalgebra::DMatrix::zeros(dim, dim);
    let mut mean_entropy = CompensatedSum::new();
    let mut state_spectra = Vec::with_capacity(n);
    for d in 0..n {
        let rho = dense_state(Hidden::Shift(d), 1, n)?;
        let (s, eig) = von_neumann_entropy(rho.matrix());
        mean_entropy.add(s / n as f64);
        state_spectra.push(eig);
        mixture += rho.matrix().map(|z| z / n as f64);
    }
    let (s_mix, mixture_spectrum) = von_neumann_entropy(&mixture);
    Ok(ChiResult {
        n,
        chi: s_mix - mean_entropy.value(),
        mixture_spectrum,
        state_spectra,
    })
}

/// The copy lower bound from `k (1 - 1/N) ≥ I_p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoBoundResult {
    pub n: usize,
    pub p: f64,
    /// `1 - 1/N`, the χ bound per copy.
    pub chi_per_copy: f64,
    /// `log N - (1-p) log(N-1) - H(p, 1-p)`.
    pub i_p_lower: f64,
    /// Smallest `k ≥ 1` with `k (1 - 1/N) ≥ I_p`.
    pub k_min: usize,
    /// `p log(N-1) - H(p, 1-p)`.
    pub asymptotic: f64,
}

impl InfoBoundResult {
    pub const CSV_HEADER: &'static str = "N,p,k_min";

    /// `k (1 - 1/N)`.
    pub fn chi_upper(&self, k: usize) -> f64 {
        k as f64 * self.chi_per_copy
    }

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.n, self.p, self.k_min)
    }
}

pub fn info_lower_bound(n: usize, p: f64) -> Result<InfoBoundResult> {
    if n < 2 {
        return Err(Error::InvalidArgument("N must be at least 2".into()));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidArgument(format!("p = {p} is outside (0, 1]")));
    }
    let log_n = (n as f64).log2();
    let log_n1 = ((n - 1) as f64).log2();
    let h = entropy_bits([p, 1.0 - p]);
    let i_p_lower = log_n - (1.0 - p) * log_n1 - h;
    let chi_per_copy = 1.0 - 1.0 / n as f64;
    let ratio = i_p_lower / chi_per_copy;
    // Absorb rounding when the ratio is an integer.
    let k_min = ((ratio - 1e-12).ceil().max(1.0)) as usize;
    Ok(InfoBoundResult {
        n,
        p,
        chi_per_copy,
        i_p_lower,
        k_min,
        asymptotic: p * log_n1 - h,
    })
}

/// Oracle-scale check that the closed-form success probability equals
/// `tr(E_d ρ_d)` for every d.
pub fn success_dense_defect(n: usize, k: usize) -> Result<f64> {
    guard_certification(n, k)?;
    let exact = success_exact(n, k)?.p;
    let mut worst = 0.0f64;
    for d in 0..n {
        worst = worst.max((success_dense(n, k, d)? - exact).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn success_examples() {
        assert_eq!(success_exact(2, 1).unwrap().p, 0.75);
        for n in 2..=32 {
            let p = success_exact(n, 1).unwrap().p;
            let closed = (2.0 * n as f64 - 1.0) / (n * n) as f64;
            assert!((p - closed).abs() < 1e-12, "N={n}");
        }
        let p = success_exact(4, 1).unwrap().p;
        assert!((p - 7.0 / 16.0).abs() < 1e-15 && p < 0.5);
        assert!(success_exact(64, 5).is_err());
        assert_eq!(success_exact(2, 1).unwrap().method, Method::Exact);
    }

    #[test]
    fn success_matches_dense_oracle() {
        for (n, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 2), (5, 1), (2, 4)] {
            assert!(success_dense_defect(n, k).unwrap() < 1e-10, "N={n} k={k}");
        }
    }

    #[test]
    fn mc_with_enumeration_source_is_bitwise_exact() {
        for (n, k) in [(2, 5), (4, 6), (16, 3), (64, 2)] {
            let exact = success_exact(n, k).unwrap().p;
            let via = success(n, k, LabelSource::Enumerate).unwrap().value;
            assert_eq!(exact.to_bits(), via.to_bits());
        }
    }

    #[test]
    fn mc_examples() {
        let pt = success_mc(2, 1, 100_000, 1).unwrap();
        assert!((pt.p - 0.75).abs() <= 4.0 * pt.stderr);
        assert_eq!(pt.method, Method::Mc);
        let again = success_mc(2, 1, 100_000, 1).unwrap();
        assert_eq!(pt, again);
        assert!(success_mc(2, 1, 1, 1).is_err());
    }

    #[test]
    fn bound_sandwich_on_exact_points() {
        for n in [2usize, 3, 4, 8, 16] {
            for k in 1..=6 {
                if (n as u128).pow(k as u32) > 1 << 18 {
                    continue;
                }
                let p = success_exact(n, k).unwrap().p;
                let cap = (2f64.powi(k as i32) / n as f64).min(1.0);
                assert!(p <= cap + 1e-12, "N={n} k={k} p={p}");
                if k as f64 >= (n as f64).log2() + 4.0 {
                    assert!(p >= 0.125);
                }
            }
        }
    }

    #[test]
    fn trivial_examples() {
        let pe = trivial_success(2, 1, LabelSource::Enumerate).unwrap().value;
        assert_eq!(pe, 0.25);
        let pe = trivial_success(2, 5, LabelSource::Enumerate).unwrap().value;
        assert!(pe >= 15.0 / 16.0);
        let rank = crate::pgm::gram_operator(3, 3).unwrap().rank.unwrap();
        let pe = trivial_success(3, 3, LabelSource::Enumerate).unwrap().value;
        assert!((pe - (1.0 - rank as f64 / 216.0)).abs() < 1e-14);
    }

    #[test]
    fn sweep_rows() {
        let rows = threshold_sweep(8, &[1, 2, 3, 4, 5], 2000, 7).unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.method == Method::Exact));
        for w in rows.windows(2) {
            assert!(w[1].p >= w[0].p - 1e-12);
        }
        assert!(threshold_sweep(8, &[0, 1], 10, 1).is_err());
        let rows = threshold_sweep(64, &[2, 3], 2000, 7).unwrap();
        assert_eq!(rows[0].method, Method::Exact);
        assert_eq!(rows[1].method, Method::Mc);
        assert_eq!(
            ThresholdPoint::new(2, 1, Estimate { value: 0.75, stderr: 0.0, method: Method::Exact }).csv_row(),
            "2,1,1,0.75,0,EXACT"
        );
    }

    #[test]
    fn counting_identities_hold_exactly() {
        for n in [2usize, 4, 6, 8] {
            for k in 1..=6 {
                assert_eq!(counting_sums(n, k).unwrap(), CountingSums::expected(n, k).unwrap(), "N={n} k={k}");
            }
        }
        assert!(counting_sums(3, 2).is_err());
    }

    #[test]
    fn lsb_closed_form_matches_dense() {
        assert_eq!(lsb_success_exact(2, 1).unwrap(), 0.75);
        for (n, k) in [(2, 1), (2, 2), (2, 4), (4, 1), (4, 2), (6, 1), (8, 1)] {
            let exact = lsb_success_exact(n, k).unwrap();
            let dense = lsb_success_dense(n, k).unwrap();
            assert!((exact - dense).abs() < 1e-10, "N={n} k={k}: {exact} vs {dense}");
            assert!(exact <= lsb_upper_bound(n, k) + 1e-12);
        }
        assert!(lsb_success_exact(3, 1).is_err());
    }

    #[test]
    fn lsb_exact_via_counting_sums() {
        for n in [2usize, 4, 8, 16] {
            let p = lsb_success_exact(n, 1).unwrap();
            // k = 1: only x = N/2 pairs 0 with N/2, giving Σ_r = 2.
            let want = 0.5 * (1.0 + 2.0 / (2.0 * n as f64));
            assert!((p - want).abs() < 1e-15);
        }
    }

    #[test]
    fn lsb_bound_values() {
        assert_eq!(lsb_upper_bound(256, 4), 0.63671875);
        assert!((lsb_upper_bound(1024, 5) - 0.565_429_687_5).abs() < 1e-12);
        let check = lsb_threshold_check(2, 1, 10_000, 3).unwrap();
        assert!((check.estimate.value - 0.75).abs() <= 4.0 * check.estimate.stderr);
        assert!(lsb_threshold_check(5, 1, 100, 3).is_err());
    }

    #[test]
    fn chi_examples() {
        for n in [2usize, 4, 8] {
            let r = chi_single_copy(n).unwrap();
            assert!((r.chi - (1.0 - 1.0 / n as f64)).abs() < 1e-9);
            assert!(r.mixture_spectrum_defect() < 1e-9);
            assert!(r.state_spectrum_defect() < 1e-9);
        }
        assert!(chi_single_copy(300).is_err());
    }

    #[test]
    fn info_bound_examples() {
        assert_eq!(info_lower_bound(2, 1.0).unwrap().k_min, 2);
        let r = info_lower_bound(1024, 0.125).unwrap();
        assert!(r.k_min < 10);
        assert_eq!(r.k_min, 1);
        assert_eq!(info_lower_bound(1 << 20, 0.125).unwrap().k_min, 2);
        assert_eq!(info_lower_bound(64, 1e-9).unwrap().k_min, 1);
        assert_eq!(info_lower_bound(3, 1e-9).unwrap().k_min, 1);
        assert_eq!(info_lower_bound(2, 1e-9).unwrap().k_min, 2);
        assert!(info_lower_bound(4, 0.0).is_err());
        assert!(info_lower_bound(4, 1.5).is_err());
        assert!(info_lower_bound(1, 0.5).is_err());
        let r = info_lower_bound(16, 0.5).unwrap();
        assert!(r.chi_upper(r.k_min) >= r.i_p_lower);
        assert!(r.k_min == 1 || r.chi_upper(r.k_min - 1) < r.i_p_lower);
        assert_eq!(info_lower_bound(2, 1.0).unwrap().csv_row(), "2,1,2");
    }

    #[test]
    fn large_count_fraction_is_exact_on_enumeration() {
        let r = large_count_fraction(4, 4, 0, LabelSource::Enumerate).unwrap();
        // (2^4 - 1)/8 < 2, so the condition is η_0 ≥ 2.
        let mut hits = 0;
        for idx in 0..256u128 {
            let x = crate::dihedral::BlockLabel::from_index(4, 4, idx).unwrap();
            if crate::subset_sum::count_eta(&x).eta[0] >= 2 {
                hits += 1;
            }
        }
        assert_eq!(r.fraction.value, hits as f64 / 256.0);
    }
}
