//! Subsets of a label `x ∈ Z_N^k` summing to a target mod N: exact counts,
//! enumeration, uniform sampling, and the uniform superpositions `|S^x_r⟩`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dihedral::{guard_block_dim, BlockLabel};
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Largest `2^k` that enumeration and dense per-block vectors accept.
pub const ENUMERATION_LIMIT: u128 = 1 << 24;

/// A k-bit string, `b_1` in the least significant bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString {
    pub bits: u64,
    pub k: usize,
}

impl BitString {
    pub fn new(bits: u64, k: usize) -> Self {
        Self { bits, k }
    }

    pub fn bit(&self, j: usize) -> bool {
        (self.bits >> j) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for BitString {
    /// `b_1 b_2 ... b_k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.k {
            f.write_str(if self.bit(j) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The counts `η^x_r` for every `r ∈ Z_N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetProfile {
    pub x: BlockLabel,
    pub eta: Vec<u128>,
    pub support_size: usize,
}

impl SubsetProfile {
    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn k(&self) -> usize {
        self.x.k()
    }

    /// `η^x_r` with `r` reduced mod N.
    pub fn count(&self, r: usize) -> u128 {
        self.eta[r % self.n()]
    }

    /// `Σ_r √η_r`.
    pub fn sqrt_sum(&self) -> f64 {
        self.eta.iter().map(|&e| (e as f64).sqrt()).sum()
    }

    pub fn total(&self) -> u128 {
        self.eta.iter().sum()
    }
}

/// Exact counts by the dynamic program `T_j[r] = T_{j-1}[r] + T_{j-1}[r - x_j]`.
pub fn count_eta(x: &BlockLabel) -> SubsetProfile {
    let n = x.n();
    let mut cur = vec![0u128; n];
    let mut next = vec![0u128; n];
    cur[0] = 1;
    for &xj in x.values() {
        dp_step(&cur, &mut next, xj);
        std::mem::swap(&mut cur, &mut next);
    }
    profile_from_eta(x.clone(), cur)
}

pub(crate) fn profile_from_eta(x: BlockLabel, eta: Vec<u128>) -> SubsetProfile {
    let support_size = eta.iter().filter(|&&e| e > 0).count();
    SubsetProfile {
        x,
        eta,
        support_size,
    }
}

#[inline]
pub(crate) fn dp_step(prev: &[u128], next: &mut [u128], xj: usize) {
    let n = prev.len();
    let (lo, hi) = next.split_at_mut(xj);
    // r >= x_j reads prev[r - x_j]; r < x_j wraps to prev[r + N - x_j].
    for (r, slot) in hi.iter_mut().enumerate() {
        *slot = prev[r + xj] + prev[r];
    }
    for (r, slot) in lo.iter_mut().enumerate() {
        *slot = prev[r] + prev[r + n - xj];
    }
}

/// Every `b` with `b·x ≡ r`, in increasing integer order.
pub fn enumerate_subsets(x: &BlockLabel, r: usize) -> Result<Vec<BitString>> {
    let dim = guard_enumeration(x.k())?;
    let r = r % x.n();
    Ok((0..dim as u64)
        .filter(|&b| x.dot(b) == r)
        .map(|b| BitString::new(b, x.k()))
        .collect())
}

pub(crate) fn guard_enumeration(k: usize) -> Result<usize> {
    let dim = guard_block_dim(k)?;
    if dim as u128 > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            what: "subsets",
            size: dim as u128,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(dim)
}

/// `|S^x_r⟩` as a dense vector over bit strings; zero when `η^x_r = 0`.
pub fn superposition_vector(x: &BlockLabel, r: usize) -> Result<Vec<C64>> {
    let dim = guard_enumeration(x.k())?;
    let r = r % x.n();
    let eta = count_eta(x).eta[r];
    let mut v = vec![C64::new(0.0, 0.0); dim];
    if eta == 0 {
        return Ok(v);
    }
    let amp = 1.0 / (eta as f64).sqrt();
    for (b, slot) in v.iter_mut().enumerate() {
        if x.dot(b as u64) == r {
            *slot = C64::new(amp, 0.0);
        }
    }
    Ok(v)
}

/// A subset-sum instance `(x, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumInstance {
    pub x: BlockLabel,
    pub t: usize,
}

impl SubsetSumInstance {
    pub fn new(x: BlockLabel, t: usize) -> Result<Self> {
        if t >= x.n() {
            return Err(Error::InvalidArgument(format!(
                "target {t} not in Z_{}",
                x.n()
            )));
        }
        Ok(Self { x, t })
    }

    pub fn is_legal(&self) -> bool {
        count_eta(&self.x).eta[self.t] > 0
    }

    /// Parses `N k t x_1 ... x_k`.
    pub fn parse_line(line: &str) -> std::result::Result<Self, String> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 3 {
            return Err("expected `N k t x_1 ... x_k`".into());
        }
        let num = |s: &str, what: &str| -> std::result::Result<usize, String> {
            usize::from_str(s).map_err(|_| format!("{what} `{s}` is not a non-negative integer"))
        };
        let n = num(fields[0], "N")?;
        let k = num(fields[1], "k")?;
        let t = num(fields[2], "t")?;
        if n == 0 {
            return Err("N must be at least 1".into());
        }
        if k == 0 {
            return Err("k must be at least 1".into());
        }
        if fields.len() != 3 + k {
            return Err(format!(
                "expected {k} values of x, found {}",
                fields.len() - 3
            ));
        }
        let x = fields[3..]
            .iter()
            .map(|s| num(s, "x"))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        let label = BlockLabel::new(n, x).map_err(|e| e.to_string())?;
        Self::new(label, t).map_err(|e| e.to_string())
    }
}

impl fmt::Display for SubsetSumInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.x.n(), self.x.k(), self.t)?;
        for v in self.x.values() {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// Parses one instance per non-blank line; lines starting with `#` are skipped.
pub fn parse_instances(text: &str) -> Result<Vec<SubsetSumInstance>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let inst = SubsetSumInstance::parse_line(trimmed).map_err(|message| Error::Parse {
            line: i + 1,
            message,
        })?;
        out.push(inst);
    }
    Ok(out)
}

/// Prefix DP tables for one label, reusable across many draws.
#[derive(Debug, Clone)]
pub struct SolutionSampler {
    x: BlockLabel,
    /// `tables[j][r] = T_j[r]` for `j = 0..=k`.
    tables: Vec<Vec<u128>>,
}

impl SolutionSampler {
    pub fn new(x: &BlockLabel) -> Self {
        let n = x.n();
        let mut tables = Vec::with_capacity(x.k() + 1);
        let mut t0 = vec![0u128; n];
        t0[0] = 1;
        tables.push(t0);
        for &xj in x.values() {
            let mut next = vec![0u128; n];
            dp_step(tables.last().expect("non-empty"), &mut next, xj);
            tables.push(next);
        }
        Self {
            x: x.clone(),
            tables,
        }
    }

    pub fn label(&self) -> &BlockLabel {
        &self.x
    }

    pub fn count(&self, t: usize) -> u128 {
        self.tables[self.x.k()][t % self.x.n()]
    }

    /// A uniformly random `b` with `b·x ≡ t`, by backtracking through the tables.
    pub fn sample<R: Rng + ?Sized>(&self, t: usize, rng: &mut R) -> Result<BitString> {
        let n = self.x.n();
        let mut r = t % n;
        if self.tables[self.x.k()][r] == 0 {
            return Err(Error::NoSolution { target: r });
        }
        let mut bits = 0u64;
        for j in (1..=self.x.k()).rev() {
            let xj = self.x.values()[j - 1];
            let total = self.tables[j][r];
            let r_without = (r + n - xj) % n;
            let with_bit = self.tables[j - 1][r_without];
            if rng.random_range(0..total) < with_bit {
                bits |= 1 << (j - 1);
                r = r_without;
            }
        }
        debug_assert_eq!(r, 0);
        Ok(BitString::new(bits, self.x.k()))
    }
}

/// One uniform draw from the solutions of `inst`.
pub fn sample_solution<R: Rng + ?Sized>(inst: &SubsetSumInstance, rng: &mut R) -> Result<BitString> {
    SolutionSampler::new(&inst.x).sample(inst.t, rng)
}
