//! End-to-end simulation: draw a label, compute the exact outcome
//! distribution of the optimal measurement within that block, and sample.
//!
//! Nothing here touches `2^k`-dimensional vectors; every probability comes
//! from the counts `η^x`.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dihedral::{BlockLabel, Hidden};
use crate::enumerate::{label_moments, LabelSource, SHARD_SIZE};
use crate::error::{Error, Result};
use crate::linalg::{RootsOfUnity, C64};
use crate::numeric::{CompensatedSum, Moments};
use crate::rng::SeedSplitter;
use crate::subset_sum::{count_eta, dp_step};
use crate::success::{Estimate, Method};

/// Probabilities of the N labelled outcomes followed by the trivial outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeDistribution {
    pub x: BlockLabel,
    pub hidden: Hidden,
    pub probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn trivial_prob(&self) -> f64 {
        *self.probs.last().expect("N + 1 entries")
    }

    /// Probability of identifying `hidden` correctly.
    pub fn success(&self) -> f64 {
        match self.hidden {
            Hidden::Shift(d) => self.probs[d],
            Hidden::Trivial => self.trivial_prob(),
        }
    }

    /// Inverse-CDF sample from one uniform draw; ties go to the smaller index.
    pub fn sample(&self, u: f64) -> Hidden {
        index_to_outcome(inverse_cdf(&self.probs, u), self.probs.len() - 1)
    }
}

fn index_to_outcome(i: usize, n: usize) -> Hidden {
    if i == n {
        Hidden::Trivial
    } else {
        Hidden::Shift(i)
    }
}

fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut cum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        cum += p;
        if u < cum {
            return i;
        }
    }
    // Rounding left u above the total: take the last positive entry.
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// `q[m] = |Σ_p ω^{mp} √η_p|² / (N 2^k)`; outcome j under shift d has
/// probability `q[(d - j) mod N]`.
fn shift_kernel(eta: &[u128], k: usize, w: &RootsOfUnity) -> Vec<f64> {
    let n = eta.len();
    let support: Vec<(usize, f64)> = eta
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(p, &e)| (p, (e as f64).sqrt()))
        .collect();
    let scale = 1.0 / (n as f64 * 2f64.powi(k as i32));
    (0..n)
        .map(|m| {
            let z: C64 = support.iter().map(|&(p, a)| w.pow(m * p) * a).sum();
            z.norm_sqr() * scale
        })
        .collect()
}

fn probs_from_eta(eta: &[u128], k: usize, hidden: Hidden, w: &RootsOfUnity) -> Vec<f64> {
    let n = eta.len();
    let mut probs = vec![0.0; n + 1];
    match hidden {
        Hidden::Shift(d) => {
            let q = shift_kernel(eta, k, w);
            for (j, slot) in probs.iter_mut().take(n).enumerate() {
                *slot = q[(d + n - j) % n];
            }
        }
        Hidden::Trivial => {
            let support = eta.iter().filter(|&&e| e > 0).count() as f64;
            let two_k = 2f64.powi(k as i32);
            let each = support / (n as f64 * two_k);
            probs[..n].iter_mut().for_each(|p| *p = each);
            probs[n] = 1.0 - support / two_k;
        }
    }
    probs
}

fn check_hidden(hidden: Hidden, n: usize) -> Result<()> {
    if let Hidden::Shift(d) = hidden {
        if d >= n {
            return Err(Error::InvalidArgument(format!("shift {d} not in Z_{n}")));
        }
    }
    Ok(())
}

/// The exact outcome distribution of the optimal measurement in block `x`.
pub fn outcome_distribution(x: &BlockLabel, hidden: Hidden) -> Result<OutcomeDistribution> {
    check_hidden(hidden, x.n())?;
    let w = RootsOfUnity::new(x.n());
    let eta = count_eta(x).eta;
    Ok(OutcomeDistribution {
        x: x.clone(),
        hidden,
        probs: probs_from_eta(&eta, x.k(), hidden, &w),
    })
}

/// `E_x[probs[hidden]]` over a label source.
pub fn outcome_success(n: usize, k: usize, hidden: Hidden, source: LabelSource) -> Result<Estimate> {
    check_hidden(hidden, n)?;
    let w = RootsOfUnity::new(n);
    let m = label_moments(n, k, source, |_, eta| {
        let probs = probs_from_eta(eta, k, hidden, &w);
        match hidden {
            Hidden::Shift(d) => probs[d],
            Hidden::Trivial => probs[n],
        }
    })?;
    Ok(if source.is_exact() {
        Estimate {
            value: m.mean(),
            stderr: 0.0,
            method: Method::Exact,
        }
    } else {
        Estimate {
            value: m.mean(),
            stderr: m.std_error(),
            method: Method::Mc,
        }
    })
}

/// One simulated measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub hidden: Hidden,
    pub x: BlockLabel,
    pub outcome: Hidden,
    pub correct: bool,
}

impl TrialRecord {
    pub const CSV_HEADER: &'static str = "trial,hidden,outcome,correct";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.trial, self.hidden, self.outcome, self.correct)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub n: usize,
    pub k: usize,
    pub hidden: Hidden,
    pub trials: u64,
    pub successes: u64,
    pub rate: f64,
    pub stderr: f64,
    #[serde(skip)]
    pub records: Vec<TrialRecord>,
}

/// Runs `trials` independent measurements against `hidden`.
pub fn run_trials(n: usize, k: usize, hidden: Hidden, trials: u64, seed: u64) -> Result<TrialSummary> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("N and k must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    check_hidden(hidden, n)?;
    BlockLabel::new(n, vec![0; k])?;
    let w = RootsOfUnity::new(n);
    let splitter = SeedSplitter::new(seed);
    let shards = trials.div_ceil(SHARD_SIZE);
    let parts: Vec<Result<Vec<TrialRecord>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = splitter.stream(s);
            let start = s * SHARD_SIZE;
            let end = (start + SHARD_SIZE).min(trials);
            let mut cur = vec![0u128; n];
            let mut next = vec![0u128; n];
            let mut out = Vec::with_capacity((end - start) as usize);
            for trial in start..end {
                let xs: Vec<usize> = (0..k).map(|_| rng.random_range(0..n)).collect();
                cur.iter_mut().for_each(|v| *v = 0);
                cur[0] = 1;
                for &xj in &xs {
                    dp_step(&cur, &mut next, xj);
                    std::mem::swap(&mut cur, &mut next);
                }
                let probs = probs_from_eta(&cur, k, hidden, &w);
                let u: f64 = rng.random();
                let outcome = index_to_outcome(inverse_cdf(&probs, u), n);
                out.push(TrialRecord {
                    trial,
                    hidden,
                    x: BlockLabel::new(n, xs)?,
                    outcome,
                    correct: outcome == hidden,
                });
            }
            Ok(out)
        })
        .collect();
    let mut records = Vec::with_capacity(trials as usize);
    for part in parts {
        records.extend(part?);
    }
    let mut m = Moments::default();
    for r in &records {
        m.push(if r.correct { 1.0 } else { 0.0 });
    }
    let successes = records.iter().filter(|r| r.correct).count() as u64;
    Ok(TrialSummary {
        n,
        k,
        hidden,
        trials,
        successes,
        rate: m.mean(),
        stderr: m.std_error(),
        records,
    })
}

/// Checks on sampled blocks that shifting the hidden shift by δ shifts the
/// outcome distribution by δ, bit for bit.
pub fn shift_covariance_check(n: usize, k: usize, samples: u64, seed: u64) -> Result<bool> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("N and k must be at least 1".into()));
    }
    let w = RootsOfUnity::new(n);
    let splitter = SeedSplitter::new(seed);
    let mut rng = splitter.stream(0);
    for _ in 0..samples {
        let x = BlockLabel::new(n, (0..k).map(|_| rng.random_range(0..n)).collect())?;
        let eta = count_eta(&x).eta;
        let d = rng.random_range(0..n);
        let base = probs_from_eta(&eta, k, Hidden::Shift(d), &w);
        let deltas: Vec<usize> = if n <= 64 {
            (0..n).collect()
        } else {
            (0..8).map(|_| rng.random_range(0..n)).collect()
        };
        for delta in deltas {
            let shifted = probs_from_eta(&eta, k, Hidden::Shift((d + delta) % n), &w);
            for j in 0..n {
                if base[j].to_bits() != shifted[(j + delta) % n].to_bits() {
                    return Ok(false);
                }
            }
        }
        let sum: CompensatedSum = base.iter().copied().collect();
        if (sum.value() - 1.0).abs() > 1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}
