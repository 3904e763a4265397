//! The four multi-stage schemes: dealer setup and construction, the three
//! recovery procedures, and secret verification.
//!
//! Secrets and participants are both indexed from 1, matching the
//! evaluation points the recovery systems use.
//!
//! | variant | recursion family | `t` | `l` | constants          | extras      |
//! |---------|------------------|-----|-----|--------------------|-------------|
//! | S1      | plain            | t_i | 1   | one `c_i` per secret | 2         |
//! | S2      | alternating      | t_i | 1   | one `c_i` per secret | 2         |
//! | S3      | plain            | 1   | t_i | shared `c`, truncated | t_i + 1  |
//! | S4      | alternating      | 1   | t_i | shared `c`, truncated | t_i + 1  |

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{CryptoRng, Rng, RngCore};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ajtai::{self, Commitment, Share};
use crate::error::{Error, Result};
use crate::field::{self, FieldMatrix, FieldPrime, FieldVec, Residue, Solution};
use crate::ilr::{IlrSequence, IlrSpec};

/// SHA-256 digest of a secret.
pub type SecretHash = [u8; 32];

/// Subshadows or shadows keyed by participant index.
pub type IndexedTerms = BTreeMap<usize, FieldVec>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    S1,
    S2,
    S3,
    S4,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::S1, Variant::S2, Variant::S3, Variant::S4];

    /// Alternating-sign recursion family (S2, S4).
    pub fn alternating(self) -> bool {
        matches!(self, Variant::S2 | Variant::S4)
    }

    /// Threshold carried by `l` with `t = 1` (S3, S4).
    pub fn threshold_in_l(self) -> bool {
        matches!(self, Variant::S3 | Variant::S4)
    }

    /// Number of published extra terms for a secret with this threshold.
    pub fn extras(self, threshold: usize) -> usize {
        if self.threshold_in_l() {
            threshold + 1
        } else {
            2
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::S1 => "s1",
            Variant::S2 => "s2",
            Variant::S3 => "s3",
            Variant::S4 => "s4",
        };
        f.write_str(s)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s1" | "1" => Ok(Variant::S1),
            "s2" | "2" => Ok(Variant::S2),
            "s3" | "3" => Ok(Variant::S3),
            "s4" | "4" => Ok(Variant::S4),
            other => Err(Error::InvalidParams(format!("unknown variant {other:?}"))),
        }
    }
}

/// Public parameters of a deal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeParams {
    variant: Variant,
    n: usize,
    thresholds: Vec<usize>,
    q: FieldPrime,
    r: usize,
}

impl SchemeParams {
    /// Validates the parameters and picks the share length from the
    /// largest threshold and `n`.
    pub fn new(variant: Variant, n: usize, thresholds: Vec<usize>, q: FieldPrime) -> Result<Self> {
        let max_t = thresholds.iter().copied().max().unwrap_or(0);
        let r = ajtai::share_length(max_t, n);
        Self::with_share_length(variant, n, thresholds, q, r)
    }

    pub fn with_share_length(
        variant: Variant,
        n: usize,
        thresholds: Vec<usize>,
        q: FieldPrime,
        r: usize,
    ) -> Result<Self> {
        let params = SchemeParams {
            variant,
            n,
            thresholds,
            q,
            r,
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n < 2 {
            return bad(format!("need at least 2 participants, got {}", self.n));
        }
        if self.thresholds.is_empty() {
            return bad("need at least one secret".into());
        }
        for (i, &t) in self.thresholds.iter().enumerate() {
            if t < 2 || t > self.n {
                return bad(format!(
                    "threshold {t} for secret {} outside [2, {}]",
                    i + 1,
                    self.n
                ));
            }
        }
        let max_t = self.max_threshold();
        if (self.q.modulus() as u128) <= (self.n + max_t + 1) as u128 {
            return bad(format!(
                "q = {} must exceed n + max threshold + 1 = {}",
                self.q,
                self.n + max_t + 1
            ));
        }
        if self.r < max_t {
            return bad(format!(
                "share length {} shorter than max threshold {max_t}",
                self.r
            ));
        }
        Ok(())
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.thresholds.len()
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }

    pub fn q(&self) -> FieldPrime {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn max_threshold(&self) -> usize {
        self.thresholds.iter().copied().max().unwrap_or(0)
    }

    /// Threshold of secret `i` (1-based).
    pub fn threshold(&self, i: usize) -> Result<usize> {
        Ok(self.thresholds[self.slot(i)?])
    }

    /// Number of published extra terms for secret `i`.
    pub fn extras_count(&self, i: usize) -> Result<usize> {
        Ok(self.variant.extras(self.threshold(i)?))
    }

    fn slot(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.k() {
            Err(Error::BadIndex(i))
        } else {
            Ok(i - 1)
        }
    }

    /// Number of constant vectors on the bulletin.
    pub fn constant_count(&self) -> usize {
        if self.variant.threshold_in_l() {
            1
        } else {
            self.k()
        }
    }

    /// Required length of the `m`-th published constant vector (0-based).
    pub fn constant_len(&self, m: usize) -> usize {
        if self.variant.threshold_in_l() {
            self.max_threshold()
        } else {
            self.thresholds[m]
        }
    }
}

/// The dealer's secrets, `S_i` of length `t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecretSet(Vec<FieldVec>);

impl SecretSet {
    pub fn new(params: &SchemeParams, secrets: Vec<FieldVec>) -> Result<Self> {
        if secrets.len() != params.k() {
            return Err(Error::InvalidParams(format!(
                "expected {} secrets, got {}",
                params.k(),
                secrets.len()
            )));
        }
        for (i, (s, &t)) in secrets.iter().zip(params.thresholds()).enumerate() {
            if s.len() != t {
                return Err(Error::InvalidParams(format!(
                    "secret {} has {} components, threshold is {t}",
                    i + 1,
                    s.len()
                )));
            }
            if let Some(&a) = s.iter().find(|&&a| !params.q().is_reduced(a)) {
                return Err(Error::InvalidParams(format!(
                    "secret {} component {a} not reduced mod {}",
                    i + 1,
                    params.q()
                )));
            }
        }
        Ok(SecretSet(secrets))
    }

    pub fn random<R: RngCore + CryptoRng>(params: &SchemeParams, rng: &mut R) -> Self {
        let q = params.q().modulus();
        SecretSet(
            params
                .thresholds()
                .iter()
                .map(|&t| (0..t).map(|_| rng.gen_range(0..q)).collect())
                .collect(),
        )
    }

    /// Secret `i` (1-based).
    pub fn get(&self, i: usize) -> Option<&FieldVec> {
        i.checked_sub(1).and_then(|s| self.0.get(s))
    }

    pub fn as_slice(&self) -> &[FieldVec] {
        &self.0
    }
}

/// Public output of the setup phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Setup {
    pub params: SchemeParams,
    pub g: Vec<FieldMatrix>,
    pub f: FieldMatrix,
    pub commitments: Vec<Commitment>,
}

/// Everything the dealer publishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bulletin {
    pub params: SchemeParams,
    /// `G_i`, one `t_i x r` matrix per secret.
    pub g: Vec<FieldMatrix>,
    /// `F`, `max t_i x r`.
    pub f: FieldMatrix,
    pub commitments: Vec<Commitment>,
    pub secret_hashes: Vec<SecretHash>,
    /// `c_1..c_k` for S1/S2, the single shared `c` for S3/S4.
    pub constants: Vec<FieldVec>,
    /// `offsets[i-1][j - t_i] = r_{i,j}` for `t_i <= j <= n`.
    pub offsets: Vec<Vec<FieldVec>>,
    /// `extras[i-1][e] = u_{i,n+1+e}`.
    pub extras: Vec<Vec<FieldVec>>,
}

impl Bulletin {
    pub fn setup(&self) -> Setup {
        Setup {
            params: self.params.clone(),
            g: self.g.clone(),
            f: self.f.clone(),
            commitments: self.commitments.clone(),
        }
    }

    /// Recursion instance for secret `i`, rebuilt from public values.
    pub fn ilr_spec(&self, i: usize) -> Result<IlrSpec> {
        let slot = self.params.slot(i)?;
        let c = if self.params.variant.threshold_in_l() {
            &self.constants[0]
        } else {
            &self.constants[slot]
        };
        ilr_spec_for(&self.params, i, c)
    }

    pub fn commitment(&self, owner: usize) -> Option<&Commitment> {
        self.commitments.iter().find(|c| c.owner == owner)
    }

    /// Checks every structural invariant of a bulletin.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        p.validate()?;
        let q = p.q();
        let bad = |msg: String| Err(Error::Validation(msg));
        let reduced = |v: &[Residue]| v.iter().all(|&a| q.is_reduced(a));

        if self.g.len() != p.k() {
            return bad(format!("{} G matrices for {} secrets", self.g.len(), p.k()));
        }
        for (i, (g, &t)) in self.g.iter().zip(p.thresholds()).enumerate() {
            if g.rows() != t || g.cols() != p.r() {
                return bad(format!("G_{} is {}x{}, expected {t}x{}", i + 1, g.rows(), g.cols(), p.r()));
            }
            if !g.is_reduced(q) {
                return bad(format!("G_{} has unreduced entries", i + 1));
            }
        }
        if self.f.rows() != p.max_threshold() || self.f.cols() != p.r() {
            return bad(format!("F is {}x{}", self.f.rows(), self.f.cols()));
        }
        if !self.f.is_reduced(q) {
            return bad("F has unreduced entries".into());
        }
        if self.commitments.len() != p.n() {
            return bad(format!("{} commitments for {} participants", self.commitments.len(), p.n()));
        }
        for (j, c) in self.commitments.iter().enumerate() {
            if c.owner != j + 1 {
                return bad(format!("commitment {} has owner {}", j + 1, c.owner));
            }
            if c.h.len() != p.max_threshold() || !reduced(&c.h) {
                return bad(format!("commitment {} malformed", j + 1));
            }
        }
        if self.secret_hashes.len() != p.k() {
            return bad(format!("{} secret hashes for {} secrets", self.secret_hashes.len(), p.k()));
        }
        if self.constants.len() != p.constant_count() {
            return bad(format!("{} constant vectors, expected {}", self.constants.len(), p.constant_count()));
        }
        for (m, c) in self.constants.iter().enumerate() {
            if c.len() != p.constant_len(m) || !reduced(c) {
                return bad(format!("constant vector {} malformed", m + 1));
            }
        }
        if self.constants.iter().enumerate().any(|(m, c)| self.constants[..m].contains(c)) {
            return bad("constant vectors are not distinct".into());
        }
        if self.offsets.len() != p.k() || self.extras.len() != p.k() {
            return bad("offsets/extras must have one entry per secret".into());
        }
        for (slot, &t) in p.thresholds().iter().enumerate() {
            let i = slot + 1;
            let offsets = &self.offsets[slot];
            if offsets.len() != p.n() - t + 1 {
                return bad(format!("secret {i} has {} offsets, expected {}", offsets.len(), p.n() - t + 1));
            }
            let extras = &self.extras[slot];
            if extras.len() != p.variant().extras(t) {
                return bad(format!("secret {i} has {} extras, expected {}", extras.len(), p.variant().extras(t)));
            }
            for v in offsets.iter().chain(extras) {
                if v.len() != t || !reduced(v) {
                    return bad(format!("secret {i} has a malformed published vector"));
                }
            }
        }
        Ok(())
    }
}

/// Recursion for secret `i` given its constant vector (`c_i`, or the shared
/// `c` which is truncated to the first `t_i` components).
pub fn ilr_spec_for(params: &SchemeParams, i: usize, c: &[Residue]) -> Result<IlrSpec> {
    let t_i = params.threshold(i)?;
    let alt = params.variant.alternating();
    if c.len() < t_i {
        return Err(Error::InvalidParams(format!(
            "constant vector has {} components, secret {i} needs {t_i}",
            c.len()
        )));
    }
    let c = c[..t_i].to_vec();
    if params.variant.threshold_in_l() {
        IlrSpec::new(1, t_i, alt, c, params.q())
    } else {
        IlrSpec::new(t_i, 1, alt, c, params.q())
    }
}

/// Setup phase: distinct binary shares, full-rank `G_i` and `F`, commitments.
pub fn setup<R: RngCore + CryptoRng>(params: &SchemeParams, rng: &mut R) -> Result<(Vec<Share>, Setup)> {
    let q = params.q();
    let shares = ajtai::sample_distinct_shares(params.n(), params.r(), rng)?;
    let g = params
        .thresholds()
        .iter()
        .map(|&t| ajtai::sample_matrix_full_rank(t, params.r(), rng, q))
        .collect::<Result<Vec<_>>>()?;
    let f = ajtai::sample_matrix_full_rank(params.max_threshold(), params.r(), rng, q)?;
    let commitments = shares
        .iter()
        .map(|s| ajtai::commit(&f, s, q))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        shares,
        Setup {
            params: params.clone(),
            g,
            f,
            commitments,
        },
    ))
}

/// Construction phase. See [`construct_traced`].
pub fn construct<R: RngCore + CryptoRng>(
    setup: Setup,
    secrets: &SecretSet,
    shares: &[Share],
    rng: &mut R,
) -> Result<Bulletin> {
    construct_traced(setup, secrets, shares, rng).map(|(b, _)| b)
}

/// Construction phase, also returning the dealer's full sequences
/// `u_{i,0..=n+e_i}`.
pub fn construct_traced<R: RngCore + CryptoRng>(
    setup: Setup,
    secrets: &SecretSet,
    shares: &[Share],
    rng: &mut R,
) -> Result<(Bulletin, Vec<IlrSequence>)> {
    let Setup {
        params,
        g,
        f,
        commitments,
    } = setup;
    let q = params.q();
    let n = params.n();
    if secrets.as_slice().len() != params.k() {
        return Err(Error::InvalidParams("secret set does not match parameters".into()));
    }
    SecretSet::new(&params, secrets.as_slice().to_vec())?;
    if shares.len() != n {
        return Err(Error::BadShares(format!("expected {n} shares, got {}", shares.len())));
    }
    for (j, s) in shares.iter().enumerate() {
        if s.owner != j + 1 || s.len() != params.r() {
            return Err(Error::BadShares(format!("share {} malformed", j + 1)));
        }
    }

    let mut constants: Vec<FieldVec> = Vec::with_capacity(params.constant_count());
    while constants.len() < params.constant_count() {
        let len = params.constant_len(constants.len());
        let c: FieldVec = (0..len).map(|_| rng.gen_range(0..q.modulus())).collect();
        if !constants.contains(&c) {
            constants.push(c);
        }
    }

    let mut bulletin = Bulletin {
        params: params.clone(),
        g,
        f,
        commitments,
        secret_hashes: Vec::with_capacity(params.k()),
        constants,
        offsets: Vec::with_capacity(params.k()),
        extras: Vec::with_capacity(params.k()),
    };
    let mut sequences = Vec::with_capacity(params.k());
    for (slot, secret) in secrets.as_slice().iter().enumerate() {
        let i = slot + 1;
        let t = params.thresholds()[slot];
        let spec = bulletin.ilr_spec(i)?;
        let shadows = shares
            .iter()
            .map(|s| compute_shadow(&bulletin.g[slot], s, q))
            .collect::<Result<Vec<_>>>()?;
        let mut initial = Vec::with_capacity(t);
        initial.push(secret.clone());
        initial.extend(shadows[..t - 1].iter().cloned());
        let e = params.variant().extras(t);
        let seq = spec.forward_extend(&initial, n + e)?;
        let offsets = (t..=n)
            .map(|j| {
                seq.terms()[j]
                    .iter()
                    .zip(&shadows[j - 1])
                    .map(|(&u, &d)| q.sub(u, d))
                    .collect()
            })
            .collect();
        bulletin.offsets.push(offsets);
        bulletin.extras.push(seq.terms()[n + 1..=n + e].to_vec());
        bulletin.secret_hashes.push(secret_hash(q, secret));
        sequences.push(seq);
    }
    Ok((bulletin, sequences))
}

/// Setup followed by construction.
pub fn deal<R: RngCore + CryptoRng>(
    params: &SchemeParams,
    secrets: &SecretSet,
    rng: &mut R,
) -> Result<(Vec<Share>, Bulletin)> {
    let (shares, setup) = setup(params, rng)?;
    let bulletin = construct(setup, secrets, &shares, rng)?;
    Ok((shares, bulletin))
}

/// Shadow `d_j^i = G_i sh_j`.
pub fn compute_shadow(g: &FieldMatrix, share: &Share, q: FieldPrime) -> Result<FieldVec> {
    ajtai::ajtai_hash(g, &share.bits, q)
}

/// Shadows of secret `i` for each of the given shares.
pub fn shadows_for(bulletin: &Bulletin, i: usize, shares: &[Share]) -> Result<IndexedTerms> {
    let slot = bulletin.params.slot(i)?;
    shares
        .iter()
        .map(|s| Ok((s.owner, compute_shadow(&bulletin.g[slot], s, bulletin.params.q())?)))
        .collect()
}

/// Turns shadows into subshadows: `u_{i,j} = d_j^i` below the threshold,
/// `d_j^i + r_{i,j}` from the threshold on.
pub fn assemble_subshadows(bulletin: &Bulletin, i: usize, shadows: &IndexedTerms) -> Result<IndexedTerms> {
    let params = &bulletin.params;
    let slot = params.slot(i)?;
    let t = params.thresholds()[slot];
    let q = params.q();
    shadows
        .iter()
        .map(|(&j, d)| {
            if j == 0 || j > params.n() {
                return Err(Error::BadIndex(j));
            }
            if d.len() != t {
                return Err(Error::DimMismatch {
                    expected: t,
                    actual: d.len(),
                });
            }
            let u = if j < t {
                d.clone()
            } else {
                d.iter()
                    .zip(&bulletin.offsets[slot][j - t])
                    .map(|(&a, &b)| q.add(a, b))
                    .collect()
            };
            Ok((j, u))
        })
        .collect()
}

/// Quorum subshadows plus the published extras, as `(index, term)` samples.
fn samples_with_extras(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<Vec<(u64, FieldVec)>> {
    let params = &bulletin.params;
    let slot = params.slot(i)?;
    let t = params.thresholds()[slot];
    let n = params.n();
    let mut samples = Vec::with_capacity(subshadows.len() + bulletin.extras[slot].len());
    for (&j, u) in subshadows {
        if j == 0 || j > n {
            return Err(Error::BadIndex(j));
        }
        if u.len() != t {
            return Err(Error::DimMismatch {
                expected: t,
                actual: u.len(),
            });
        }
        samples.push((j as u64, u.clone()));
    }
    for (e, u) in bulletin.extras[slot].iter().enumerate() {
        samples.push(((n + 1 + e) as u64, u.clone()));
    }
    Ok(samples)
}

fn check_quorum(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<usize> {
    let t = bulletin.params.threshold(i)?;
    if subshadows.len() != t {
        return Err(Error::BadQuorum(format!(
            "secret {i} needs exactly {t} subshadows, got {}",
            subshadows.len()
        )));
    }
    Ok(t)
}

/// Way 1, method 1: solve the Vandermonde system for the general-term
/// coefficients of each component and read off the constant term.
pub fn recover_way1_vandermonde(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<FieldVec> {
    let t = check_quorum(bulletin, i, subshadows)?;
    let spec = bulletin.ilr_spec(i)?;
    let samples = samples_with_extras(bulletin, i, subshadows)?;
    (0..t)
        .map(|s| spec.fit_general_term(&samples, s).map(|coeffs| coeffs[0]))
        .collect()
}

/// Way 1, method 2: Lagrange interpolation at zero for each component.
pub fn recover_way1_lagrange(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<FieldVec> {
    let t = check_quorum(bulletin, i, subshadows)?;
    let spec = bulletin.ilr_spec(i)?;
    let q = bulletin.params.q();
    let samples = samples_with_extras(bulletin, i, subshadows)?;
    (0..t)
        .map(|s| {
            let points: Vec<(Residue, Residue)> = samples
                .iter()
                .map(|(j, u)| (*j, spec.fold_sign(*j, u[s])))
                .collect();
            field::lagrange_at_zero(&points, q)
        })
        .collect()
}

/// Way 2: walk the recursion backwards from `t_i` consecutive subshadows.
pub fn recover_way2(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<FieldVec> {
    let t = check_quorum(bulletin, i, subshadows)?;
    let start = *subshadows.keys().next().expect("quorum is nonempty");
    if subshadows.keys().zip(start..).any(|(&j, expected)| j != expected) {
        return Err(Error::NotConsecutive);
    }
    let n = bulletin.params.n();
    if start == 0 || start + t - 1 > n {
        return Err(Error::BadIndex(start));
    }
    let spec = bulletin.ilr_spec(i)?;
    let window: Vec<FieldVec> = subshadows.values().cloned().collect();
    let mut back = spec.backward_recover(&window, start)?;
    Ok(back.pop().expect("start >= 1 yields at least u_0"))
}

/// SHA-256 over `q || len || components`, each a big-endian `u64`.
pub fn secret_hash(q: FieldPrime, secret: &[Residue]) -> SecretHash {
    let mut h = Sha256::new();
    h.update(q.modulus().to_be_bytes());
    h.update((secret.len() as u64).to_be_bytes());
    for &a in secret {
        h.update(a.to_be_bytes());
    }
    h.finalize().into()
}

/// Compares a candidate against the published `H(S_i)`.
pub fn verify_secret(bulletin: &Bulletin, i: usize, candidate: &[Residue]) -> bool {
    let Ok(slot) = bulletin.params.slot(i) else {
        return false;
    };
    candidate.len() == bulletin.params.thresholds()[slot]
        && secret_hash(bulletin.params.q(), candidate) == bulletin.secret_hashes[slot]
}

/// Per-component result of [`privacy_rank_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub rank: usize,
    pub free_dims: usize,
    /// The Vandermonde system built from the available samples.
    pub system: FieldMatrix,
    pub rhs: FieldVec,
    /// One solution when the system is determined; otherwise two solutions
    /// with different constant terms.
    pub solutions: Vec<FieldVec>,
}

impl ProbeReport {
    pub fn constant_terms(&self) -> Vec<Residue> {
        self.solutions.iter().map(|s| s[0]).collect()
    }
}

/// Builds the general-term system for secret `i` from at most `t_i`
/// subshadows plus the extras and reports its rank. Below the threshold the
/// constant term is left free.
pub fn privacy_rank_probe(bulletin: &Bulletin, i: usize, subshadows: &IndexedTerms) -> Result<Vec<ProbeReport>> {
    let t = bulletin.params.threshold(i)?;
    if subshadows.len() > t {
        return Err(Error::BadQuorum(format!(
            "probe takes at most {t} subshadows, got {}",
            subshadows.len()
        )));
    }
    let spec = bulletin.ilr_spec(i)?;
    let q = bulletin.params.q();
    let samples = samples_with_extras(bulletin, i, subshadows)?;
    let nodes: Vec<Residue> = samples.iter().map(|(j, _)| *j).collect();
    let system = FieldMatrix::vandermonde(&nodes, spec.unknowns(), q);
    (0..t)
        .map(|s| {
            let rhs: FieldVec = samples.iter().map(|(j, u)| spec.fold_sign(*j, u[s])).collect();
            let report = match field::solve_linear(&system, &rhs, q)? {
                Solution::Unique(x) => ProbeReport {
                    rank: x.len(),
                    free_dims: 0,
                    system: system.clone(),
                    rhs,
                    solutions: vec![x],
                },
                Solution::Underdetermined {
                    rank,
                    free_dims,
                    particular,
                    kernel,
                } => {
                    let mut solutions = vec![particular.clone()];
                    if let Some(k) = kernel.iter().find(|k| k[0] != 0) {
                        solutions.push(particular.iter().zip(k).map(|(&a, &b)| q.add(a, b)).collect());
                    }
                    ProbeReport {
                        rank,
                        free_dims,
                        system: system.clone(),
                        rhs,
                        solutions,
                    }
                }
            };
            Ok(report)
        })
        .collect()
}
