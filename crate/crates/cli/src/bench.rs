//! Wall-clock timing of the construction, share verification and recovery
//! phases across a range of thresholds.

use std::fmt;
use std::time::Instant;

use mss_core::ajtai::verify_commitment;
use mss_core::scheme::{self, SchemeParams, SecretSet, Variant};
use mss_core::{DealerRng, FieldPrime, IndexedTerms};
use rand::{Rng, SeedableRng};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Phase {
    Construction,
    Verification,
    RecoveryVandermonde,
    RecoveryLagrange,
    RecoveryBackward,
}

impl Phase {
    pub const ALL: [Phase; 5] = [
        Phase::Construction,
        Phase::Verification,
        Phase::RecoveryVandermonde,
        Phase::RecoveryLagrange,
        Phase::RecoveryBackward,
    ];
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Construction => "construction",
            Phase::Verification => "verification",
            Phase::RecoveryVandermonde => "recovery_vandermonde",
            Phase::RecoveryLagrange => "recovery_lagrange",
            Phase::RecoveryBackward => "recovery_backward",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub variant: Variant,
    pub n: usize,
    pub k: usize,
    pub thresholds: Vec<usize>,
    pub trials: usize,
    pub q: FieldPrime,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub variant: Variant,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub phase: Phase,
    pub trials: usize,
    /// Every trial of this phase produced a verified result.
    pub ok: bool,
    pub median_ns: u128,
}

pub const CSV_HEADER: &str = "variant,n,k,t,phase,trials,ok,median_ns";

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.variant, self.n, self.k, self.t, self.phase, self.trials, self.ok, self.median_ns
        )
    }
}

pub fn median(samples: &mut [u128]) -> u128 {
    samples.sort_unstable();
    let m = samples.len() / 2;
    if samples.is_empty() {
        0
    } else if samples.len() % 2 == 1 {
        samples[m]
    } else {
        (samples[m - 1] + samples[m]) / 2
    }
}

/// Parses `a..b` (inclusive) or a comma list.
pub fn parse_t_range(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("invalid t-range {s:?}; use `lo..hi` or `a,b,c`"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo..=hi).collect())
    } else {
        s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
    }
}

fn time<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_nanos())
}

/// Runs every phase `trials` times per threshold. Each threshold gets one
/// deal; each trial picks a fresh quorum and consecutive window for secret 1.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>, CliError> {
    if cfg.trials == 0 {
        return Err(CliError::Usage("trials must be positive".into()));
    }
    let mut rows = Vec::new();
    for &t in &cfg.thresholds {
        let params = SchemeParams::new(cfg.variant, cfg.n, vec![t; cfg.k], cfg.q)?;
        let mut rng = DealerRng::seed_from_u64(cfg.seed ^ (t as u64).rotate_left(32));
        let secrets = SecretSet::random(&params, &mut rng);
        let (shares, setup) = scheme::setup(&params, &mut rng)?;
        let bulletin = scheme::construct(setup.clone(), &secrets, &shares, &mut rng)?;
        let expected = secrets.get(1).expect("k >= 1").clone();
        let all = scheme::shadows_for(&bulletin, 1, &shares)?;
        let all = scheme::assemble_subshadows(&bulletin, 1, &all)?;

        let mut samples: Vec<Vec<u128>> = vec![Vec::with_capacity(cfg.trials); Phase::ALL.len()];
        let mut ok = [true; 5];
        for _ in 0..cfg.trials {
            let (built, ns) = time(|| scheme::construct(setup.clone(), &secrets, &shares, &mut rng));
            ok[0] &= built.is_ok();
            samples[0].push(ns);

            let j = rng.gen_range(0..cfg.n);
            let (valid, ns) = time(|| {
                verify_commitment(&bulletin.f, &shares[j], &bulletin.commitments[j], cfg.q)
            });
            ok[1] &= valid == Ok(true);
            samples[1].push(ns);

            let quorum = random_quorum(&all, t, &mut rng);
            let (rec, ns) = time(|| scheme::recover_way1_vandermonde(&bulletin, 1, &quorum));
            ok[2] &= rec.as_ref() == Ok(&expected);
            samples[2].push(ns);
            let (rec, ns) = time(|| scheme::recover_way1_lagrange(&bulletin, 1, &quorum));
            ok[3] &= rec.as_ref() == Ok(&expected);
            samples[3].push(ns);

            let start = rng.gen_range(1..=cfg.n - t + 1);
            let window: IndexedTerms = (start..start + t).map(|j| (j, all[&j].clone())).collect();
            let (rec, ns) = time(|| scheme::recover_way2(&bulletin, 1, &window));
            ok[4] &= rec.as_ref() == Ok(&expected);
            samples[4].push(ns);
        }
        for (p, phase) in Phase::ALL.into_iter().enumerate() {
            rows.push(BenchRow {
                variant: cfg.variant,
                n: cfg.n,
                k: cfg.k,
                t,
                phase,
                trials: cfg.trials,
                ok: ok[p],
                median_ns: median(&mut samples[p]),
            });
        }
    }
    Ok(rows)
}

fn random_quorum(all: &IndexedTerms, t: usize, rng: &mut DealerRng) -> IndexedTerms {
    let mut idx: Vec<usize> = all.keys().copied().collect();
    for i in 0..t {
        let j = rng.gen_range(i..idx.len());
        idx.swap(i, j);
    }
    idx[..t].iter().map(|j| (*j, all[j].clone())).collect()
}

/// Median of `phase` at threshold `t`, if present.
pub fn median_for(rows: &[BenchRow], t: usize, phase: Phase) -> Option<u128> {
    rows.iter()
        .find(|r| r.t == t && r.phase == phase)
        .map(|r| r.median_ns)
}
