use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mss_core::ajtai::verify_commitment;
use mss_core::bulletin::{self, RecoveredSecret};
use mss_core::scheme::{self, Bulletin, SchemeParams, SecretSet, Variant};
use mss_core::{DealerRng, FieldPrime, Share};
use rand::SeedableRng;

use crate::counts::{self, BulletinCount, PublicValueCounts};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Vandermonde,
    Lagrange,
    Backward,
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    bulletin::write_atomic(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn io_out(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "<stdout>".into(),
        source: e,
    }
}

pub fn rng_from(seed: Option<u64>) -> DealerRng {
    match seed {
        Some(s) => DealerRng::seed_from_u64(s),
        None => DealerRng::from_entropy(),
    }
}

pub fn load_bulletin(path: &Path) -> Result<Bulletin, CliError> {
    Ok(bulletin::decode_bulletin(&read(path)?)?)
}

pub fn load_share(path: &Path, b: &Bulletin) -> Result<Share, CliError> {
    let share = bulletin::decode_share_for(&read(path)?, b)?;
    Ok(share)
}

/// Expands a single threshold to `k` copies; otherwise `k` must match.
pub fn resolve_thresholds(thresholds: &[usize], k: Option<usize>) -> Result<Vec<usize>, CliError> {
    match (thresholds, k) {
        ([t], Some(k)) if k >= 1 => Ok(vec![*t; k]),
        (ts, Some(k)) if ts.len() != k => Err(CliError::Usage(format!(
            "--k {k} does not match {} thresholds",
            ts.len()
        ))),
        (ts, _) => Ok(ts.to_vec()),
    }
}

#[derive(Clone, Debug)]
pub struct DealArgs {
    pub variant: Variant,
    pub n: usize,
    pub k: Option<usize>,
    pub thresholds: Vec<usize>,
    pub q: u64,
    pub seed: Option<u64>,
    pub secrets: Option<PathBuf>,
    pub out: PathBuf,
}

/// Runs setup and construction, writing `bulletin.json` and one
/// `share_<j>.json` per participant. Without a secrets file, random secrets
/// are drawn and written to `secrets.json`.
pub fn deal(args: &DealArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let q = FieldPrime::new(args.q)?;
    let thresholds = resolve_thresholds(&args.thresholds, args.k)?;
    let params = SchemeParams::new(args.variant, args.n, thresholds, q)?;
    let mut rng = rng_from(args.seed);
    let (secrets, generated) = match &args.secrets {
        Some(path) => {
            let raw = bulletin::decode_secrets(&read(path)?, q)?;
            (SecretSet::new(&params, raw)?, false)
        }
        None => (SecretSet::random(&params, &mut rng), true),
    };
    let (shares, bulletin) = scheme::deal(&params, &secrets, &mut rng)?;
    let id = bulletin::deal_id(&bulletin.setup());

    let mut files = vec![(args.out.join("bulletin.json"), bulletin::encode_bulletin(&bulletin))];
    for s in &shares {
        files.push((
            args.out.join(format!("share_{}.json", s.owner)),
            bulletin::encode_share(s, Some(&id)),
        ));
    }
    if generated {
        files.push((args.out.join("secrets.json"), bulletin::encode_secrets(secrets.as_slice())));
    }
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.display().to_string(),
        source,
    })?;
    for (path, bytes) in &files {
        write(path, bytes)?;
    }

    let c = BulletinCount::of(&bulletin);
    writeln!(out, "deal {id}").map_err(io_out)?;
    writeln!(
        out,
        "variant {} n={} k={} thresholds={:?} q={} r={}",
        params.variant(),
        params.n(),
        params.k(),
        params.thresholds(),
        params.q(),
        params.r()
    )
    .map_err(io_out)?;
    writeln!(
        out,
        "public values: {} matrices + {} commitments + {} hashes + {} constants + {} offsets + {} extras = {}",
        c.matrices,
        c.commitments,
        c.hashes,
        c.constants,
        c.offsets,
        c.extras,
        c.total()
    )
    .map_err(io_out)?;
    writeln!(out, "wrote {} files to {}", files.len(), args.out.display()).map_err(io_out)?;
    Ok(())
}

/// Checks `F sh_j = h_j` for one share file.
pub fn verify_share(bulletin_path: &Path, share_path: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let b = load_bulletin(bulletin_path)?;
    let share = load_share(share_path, &b)?;
    let h = b
        .commitment(share.owner)
        .ok_or_else(|| CliError::Usage(format!("no commitment for participant {}", share.owner)))?;
    if verify_commitment(&b.f, &share, h, b.params.q())? {
        writeln!(out, "share {} verified", share.owner).map_err(io_out)?;
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "share {} does not match its commitment",
            share.owner
        )))
    }
}

#[derive(Clone, Debug)]
pub struct RecoverArgs {
    pub bulletin: PathBuf,
    pub shares: Vec<PathBuf>,
    pub secret: usize,
    pub method: Method,
    pub out: PathBuf,
}

/// Picks exactly `t` participants: the lowest indices, or the first run of
/// `t` consecutive indices for the backward method.
fn select_quorum(owners: &[usize], t: usize, method: Method) -> Result<Vec<usize>, CliError> {
    if owners.len() < t {
        return Err(CliError::Usage(format!(
            "QuorumError: secret needs {t} shares, got {}",
            owners.len()
        )));
    }
    match method {
        Method::Vandermonde | Method::Lagrange => Ok(owners[..t].to_vec()),
        Method::Backward => owners
            .windows(t)
            .find(|w| w[t - 1] - w[0] == t - 1)
            .map(<[usize]>::to_vec)
            .ok_or_else(|| CliError::Usage(mss_core::Error::NotConsecutive.to_string())),
    }
}

/// Recovers one secret and writes `recovered_<i>.json`. Returns the report;
/// fails with a verification error (after writing) if the hash check fails.
pub fn recover(args: &RecoverArgs, out: &mut dyn Write) -> Result<RecoveredSecret, CliError> {
    let b = load_bulletin(&args.bulletin)?;
    let i = args.secret;
    let t = b.params.threshold(i)?;
    let q = b.params.q();
    let mut shares: BTreeMap<usize, Share> = BTreeMap::new();
    for path in &args.shares {
        let share = load_share(path, &b)?;
        let h = b
            .commitment(share.owner)
            .ok_or_else(|| CliError::Usage(format!("no commitment for participant {}", share.owner)))?;
        if !verify_commitment(&b.f, &share, h, q)? {
            return Err(CliError::Verification(format!(
                "share {} does not match its commitment",
                share.owner
            )));
        }
        shares.insert(share.owner, share);
    }
    let owners: Vec<usize> = shares.keys().copied().collect();
    let quorum: Vec<Share> = select_quorum(&owners, t, args.method)?
        .into_iter()
        .map(|j| shares[&j].clone())
        .collect();
    let shadows = scheme::shadows_for(&b, i, &quorum)?;
    let subshadows = scheme::assemble_subshadows(&b, i, &shadows)?;
    let secret = match args.method {
        Method::Vandermonde => scheme::recover_way1_vandermonde(&b, i, &subshadows)?,
        Method::Lagrange => scheme::recover_way1_lagrange(&b, i, &subshadows)?,
        Method::Backward => scheme::recover_way2(&b, i, &subshadows)?,
    };
    let verified = scheme::verify_secret(&b, i, &secret);
    let report = RecoveredSecret {
        secret_index: i,
        secret,
        verified,
    };
    fs::create_dir_all(&args.out).map_err(|source| CliError::Io {
        path: args.out.display().to_string(),
        source,
    })?;
    let path = args.out.join(format!("recovered_{i}.json"));
    write(&path, &bulletin::encode_recovered(&report))?;
    writeln!(
        out,
        "secret {i} recovered from participants {:?}: {}",
        quorum.iter().map(|s| s.owner).collect::<Vec<_>>(),
        if verified { "verified" } else { "HASH MISMATCH" }
    )
    .map_err(io_out)?;
    if verified {
        Ok(report)
    } else {
        Err(CliError::Verification(format!("secret {i} failed verification")))
    }
}

/// Checks a `recovered_<i>.json` candidate against the published hash.
pub fn verify_secret(bulletin_path: &Path, i: usize, candidate: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let b = load_bulletin(bulletin_path)?;
    b.params.threshold(i)?;
    let rec = bulletin::decode_recovered(&read(candidate)?, b.params.q())?;
    if rec.secret_index != i {
        return Err(CliError::Usage(format!(
            "candidate is for secret {}, not {i}",
            rec.secret_index
        )));
    }
    if scheme::verify_secret(&b, i, &rec.secret) {
        writeln!(out, "secret {i} verified").map_err(io_out)?;
        Ok(())
    } else {
        Err(CliError::Verification(format!("secret {i} does not match its published hash")))
    }
}

pub fn counts(t: u64, k: u64, n: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let c = PublicValueCounts::new(t, k, n)
        .ok_or_else(|| CliError::Usage(format!("t = {t} exceeds n = {n}")))?;
    writeln!(out, "scheme,public_values").map_err(io_out)?;
    for (name, v) in c.labeled() {
        writeln!(out, "{name},{v}").map_err(io_out)?;
    }
    Ok(())
}

pub fn figure1(out: &mut dyn Write) -> Result<(), CliError> {
    out.write_all(counts::figure1_csv().as_bytes()).map_err(io_out)
}
