use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use serde::Serialize;

use dihedral_pgm::pgm::{
    certify_lsb, closed_form_effects, closed_form_vs_generic, dihedral_ensemble, lsb_aggregation_defect,
    resolution_defect, HOLEVO_TOL,
};
use dihedral_pgm::success::{lsb_success_dense, success_dense_defect};
use dihedral_pgm::{
    certify_closed_form, equivalence_check, info_lower_bound, lsb_povm, lsb_success, lsb_success_exact,
    lsb_threshold_check, lsb_upper_bound, parse_instances, pgm_dense, run_trials, success_exact,
    threshold_sweep, ConditionRecord, Hidden, LabelSource, NeumarkDilation, SeedSplitter, SolutionSampler,
    ThresholdPoint, TrialRecord,
};

use crate::{
    Format, InfoBoundArgs, LsbArgs, Report, SimulateArgs, SubsetSumArgs, SweepArgs, Usage, VerifyArgs,
};

const CLOSED_FORM_TOL: f64 = 1e-10;
/// Largest `(2N)^k` at which `verify` also runs the full-space oracles.
const DENSE_VERIFY_LIMIT: u64 = 1024;
const PGM_DENSE_VERIFY_LIMIT: u64 = 256;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn positive(name: &str, v: usize) -> Result<usize> {
    if v == 0 {
        return Err(usage(format!("--{name} must be at least 1")));
    }
    Ok(v)
}

/// Parses `a..b` (inclusive) or a single `a`.
pub fn parse_k_range(s: &str) -> Result<Vec<usize>> {
    let bad = || usage(format!("bad k range `{s}`: expected `a..b` or `a`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<usize>().map_err(|_| bad())?,
            b.trim().trim_start_matches('=').parse::<usize>().map_err(|_| bad())?,
        ),
        None => {
            let v = s.trim().parse::<usize>().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 {
        return Err(usage(format!("bad k range `{s}`: k must be at least 1")));
    }
    if lo > hi {
        return Err(usage(format!("bad k range `{s}`: empty")));
    }
    Ok((lo..=hi).collect())
}

pub fn parse_hidden(s: &str, n: usize) -> Result<Hidden> {
    if s.eq_ignore_ascii_case("trivial") {
        return Ok(Hidden::Trivial);
    }
    let d: usize = s
        .parse()
        .map_err(|_| usage(format!("--hidden must be a shift in Z_{n} or `trivial`, got `{s}`")))?;
    if d >= n {
        return Err(usage(format!("--hidden {d} is not in Z_{n}")));
    }
    Ok(Hidden::Shift(d))
}

fn json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn sweep(a: &SweepArgs) -> Result<Report> {
    positive("N", a.n)?;
    let ks = parse_k_range(&a.k)?;
    let points: Vec<ThresholdPoint> = if a.exact {
        ks.iter().map(|&k| success_exact(a.n, k)).collect::<Result<_, _>>()?
    } else {
        if a.samples < 2 {
            return Err(usage("--samples must be at least 2"));
        }
        threshold_sweep(a.n, &ks, a.samples, a.seed)?
    };
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = format!("{}\n", ThresholdPoint::CSV_HEADER);
            for p in &points {
                writeln!(s, "{}", p.csv_row())?;
            }
            s
        }
        Format::Json => json(&points)?,
    };
    Ok(Report { text, passed: true })
}

pub fn verify(a: &VerifyArgs) -> Result<Report> {
    let (n, k) = (positive("N", a.n)?, positive("k", a.k)?);
    let mut records = certify_closed_form(n, k, a.perturb, HOLEVO_TOL)?.records("closed_form.");
    records.push(ConditionRecord::at_most(
        "closed_form.vs_generic_per_block",
        closed_form_vs_generic(n, k)?,
        CLOSED_FORM_TOL,
    ));
    records.push(ConditionRecord::at_most(
        "closed_form.resolution_defect",
        resolution_defect(n, k)?,
        CLOSED_FORM_TOL,
    ));
    let dim = (2 * n as u64).pow(k as u32);
    if dim <= PGM_DENSE_VERIFY_LIMIT {
        let generic = pgm_dense(&dihedral_ensemble(n, k)?, &vec![1.0 / n as f64; n])?;
        let closed = closed_form_effects(n, k)?;
        let worst = generic
            .iter()
            .zip(&closed)
            .map(|(g, c)| g.max_abs_diff(c))
            .fold(0.0, f64::max);
        records.push(ConditionRecord::at_most("closed_form.vs_dense_pgm", worst, CLOSED_FORM_TOL));
    }
    if dim <= DENSE_VERIFY_LIMIT {
        records.push(ConditionRecord::at_most(
            "success.exact_vs_dense",
            success_dense_defect(n, k)?,
            CLOSED_FORM_TOL,
        ));
    }
    if n % 2 == 0 {
        records.extend(certify_lsb(n, k, HOLEVO_TOL)?.records("lsb."));
        records.push(ConditionRecord::at_most(
            "lsb.aggregation_defect",
            lsb_aggregation_defect(n, k)?,
            CLOSED_FORM_TOL,
        ));
        if dim <= DENSE_VERIFY_LIMIT {
            let diff = (lsb_success_exact(n, k)? - lsb_success_dense(n, k)?).abs();
            records.push(ConditionRecord::at_most("lsb.exact_vs_dense", diff, CLOSED_FORM_TOL));
        }
    }
    for d in 0..n {
        let r = equivalence_check(n, d)?;
        records.push(ConditionRecord::at_most(
            format!("fourier_sampling.equivalence_d{d}"),
            r.distance(),
            r.tol,
        ));
    }
    let passed = records.iter().all(|r| r.pass);
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut s = String::from("condition,value,tol,result\n");
            for r in &records {
                writeln!(s, "{r}")?;
            }
            s
        }
        Format::Json => json(&records)?,
    };
    Ok(Report { text, passed })
}

pub fn simulate(a: &SimulateArgs) -> Result<Report> {
    let (n, k) = (positive("N", a.n)?, positive("k", a.k)?);
    let hidden = parse_hidden(&a.hidden, n)?;
    if a.samples == 0 {
        return Err(usage("--samples must be at least 1"));
    }
    let summary = run_trials(n, k, hidden, a.samples, a.seed)?;
    if let Some(path) = &a.log {
        let mut s = format!("{}\n", TrialRecord::CSV_HEADER);
        for r in &summary.records {
            writeln!(s, "{}", r.csv_row())?;
        }
        fs::write(path, s).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&summary)?,
        Format::Csv => format!(
            "N,k,hidden,trials,successes,rate,stderr\n{},{},{},{},{},{},{}\n",
            summary.n, summary.k, summary.hidden, summary.trials, summary.successes, summary.rate, summary.stderr
        ),
    };
    Ok(Report { text, passed: true })
}

#[derive(Serialize)]
struct Solutions {
    instance: usize,
    instance_text: String,
    solutions: Vec<String>,
}

#[derive(Serialize)]
struct Amplitude {
    instance: usize,
    index: usize,
    re: f64,
    im: f64,
}

pub fn subsetsum(a: &SubsetSumArgs) -> Result<Report> {
    let text = fs::read_to_string(&a.file)
        .map_err(|e| usage(format!("cannot read {}: {e}", a.file.display())))?;
    let instances = parse_instances(&text)?;
    let splitter = SeedSplitter::new(a.seed);
    let format = a.out.format.unwrap_or(Format::Csv);
    let mut out = String::new();
    if a.quantum {
        let mut amps = Vec::new();
        for (i, inst) in instances.iter().enumerate() {
            let state = NeumarkDilation::new(&inst.x)?.qsample(inst.t)?;
            for (index, z) in state.iter().enumerate() {
                if z.norm() > 0.0 {
                    amps.push(Amplitude { instance: i, index, re: z.re, im: z.im });
                }
            }
        }
        match format {
            Format::Csv => {
                out.push_str("instance,index,re,im\n");
                for amp in &amps {
                    writeln!(out, "{},{},{},{}", amp.instance, amp.index, amp.re, amp.im)?;
                }
            }
            Format::Json => out = json(&amps)?,
        }
    } else {
        let mut all = Vec::new();
        for (i, inst) in instances.iter().enumerate() {
            let sampler = SolutionSampler::new(&inst.x);
            let mut rng = splitter.stream(i as u64);
            let solutions = (0..a.samples)
                .map(|_| sampler.sample(inst.t, &mut rng).map(|b| b.to_string()))
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("instance {} (`{inst}`)", i + 1))?;
            all.push(Solutions {
                instance: i,
                instance_text: inst.to_string(),
                solutions,
            });
        }
        match format {
            Format::Csv => {
                for s in &all {
                    for b in &s.solutions {
                        writeln!(out, "{b}")?;
                    }
                }
            }
            Format::Json => out = json(&all)?,
        }
    }
    Ok(Report { text: out, passed: true })
}

#[derive(Serialize)]
struct LsbRow {
    n: usize,
    k: usize,
    p: f64,
    stderr: f64,
    method: String,
    bound: f64,
    pass: bool,
}

pub fn lsb(a: &LsbArgs) -> Result<Report> {
    let (n, k) = (positive("N", a.n)?, positive("k", a.k)?);
    lsb_povm(n, k)?;
    let (estimate, bound, pass) = if a.exact {
        let est = lsb_success(n, k, LabelSource::Enumerate)?;
        let bound = lsb_upper_bound(n, k);
        (est, bound, est.value <= bound)
    } else {
        if a.samples < 2 {
            return Err(usage("--samples must be at least 2"));
        }
        let c = lsb_threshold_check(n, k, a.samples, a.seed)?;
        (c.estimate, c.upper_bound, c.passed)
    };
    let row = LsbRow {
        n,
        k,
        p: estimate.value,
        stderr: estimate.stderr,
        method: estimate.method.to_string(),
        bound,
        pass,
    };
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => format!(
            "N,k,p,stderr,method,bound,pass\n{},{},{},{},{},{},{}\n",
            row.n, row.k, row.p, row.stderr, row.method, row.bound, row.pass
        ),
        Format::Json => json(&row)?,
    };
    Ok(Report { text, passed: pass })
}

pub fn infobound(a: &InfoBoundArgs) -> Result<Report> {
    let r = info_lower_bound(a.n, a.p)?;
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Csv => format!("{}\n{}\n", dihedral_pgm::InfoBoundResult::CSV_HEADER, r.csv_row()),
        Format::Json => json(&r)?,
    };
    Ok(Report { text, passed: true })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_ranges() {
        assert_eq!(parse_k_range("2..12").unwrap().len(), 11);
        assert_eq!(parse_k_range("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_k_range("4").unwrap(), vec![4]);
        assert!(parse_k_range("0..3").is_err());
        assert!(parse_k_range("5..3").is_err());
        assert!(parse_k_range("a..3").is_err());
    }

    #[test]
    fn hidden_values() {
        assert_eq!(parse_hidden("trivial", 4).unwrap(), Hidden::Trivial);
        assert_eq!(parse_hidden("3", 4).unwrap(), Hidden::Shift(3));
        assert!(parse_hidden("4", 4).is_err());
        assert!(parse_hidden("x", 4).is_err());
    }
}
