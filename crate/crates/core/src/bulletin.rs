//! Versioned JSON encodings for the bulletin board, share files, dealer
//! secret files and recovery reports.
//!
//! Residues are written as decimal strings so values above 2^53 survive any
//! JSON reader. Object keys are sorted, which makes the encoding canonical.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::ajtai::{Commitment, Share};
use crate::error::{Error, Result};
use crate::field::{FieldMatrix, FieldPrime, FieldVec, Residue};
use crate::scheme::{Bulletin, SchemeParams, SecretHash, Setup, Variant};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    variant: Variant,
    n: usize,
    k: usize,
    thresholds: Vec<usize>,
    q: String,
    r: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    data: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CommitmentDoc {
    owner: usize,
    h: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetupDoc {
    format_version: u64,
    params: ParamsDoc,
    g: Vec<MatrixDoc>,
    f: MatrixDoc,
    commitments: Vec<CommitmentDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BulletinDoc {
    format_version: u64,
    params: ParamsDoc,
    g: Vec<MatrixDoc>,
    f: MatrixDoc,
    commitments: Vec<CommitmentDoc>,
    secret_hashes: Vec<String>,
    constants: Vec<Vec<String>>,
    offsets: Vec<Vec<Vec<String>>>,
    extras: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShareDoc {
    format_version: u64,
    owner: usize,
    r: usize,
    bits: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    deal_id: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SecretsDoc {
    format_version: u64,
    secrets: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecoveredDoc {
    format_version: u64,
    secret_index: usize,
    secret: Vec<String>,
    verified: bool,
}

fn vec_doc(v: &[Residue]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

fn matrix_doc(m: &FieldMatrix) -> MatrixDoc {
    MatrixDoc {
        rows: m.rows(),
        cols: m.cols(),
        data: vec_doc(m.data()),
    }
}

fn params_doc(p: &SchemeParams) -> ParamsDoc {
    ParamsDoc {
        variant: p.variant(),
        n: p.n(),
        k: p.k(),
        thresholds: p.thresholds().to_vec(),
        q: p.q().to_string(),
        r: p.r(),
    }
}

fn parse_u64(s: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) || (s.len() > 1 && s.starts_with('0')) {
        return Err(Error::Parse(format!("{s:?} is not a canonical decimal integer")));
    }
    s.parse().map_err(|_| Error::Parse(format!("{s:?} does not fit in 64 bits")))
}

fn parse_residue(s: &str, q: FieldPrime) -> Result<Residue> {
    let a = parse_u64(s)?;
    if !q.is_reduced(a) {
        return Err(Error::Validation(format!("residue {a} not reduced mod {q}")));
    }
    Ok(a)
}

fn parse_vec(v: &[String], q: FieldPrime) -> Result<FieldVec> {
    v.iter().map(|s| parse_residue(s, q)).collect()
}

fn parse_matrix(m: &MatrixDoc, q: FieldPrime) -> Result<FieldMatrix> {
    FieldMatrix::new(m.rows, m.cols, parse_vec(&m.data, q)?)
        .map_err(|e| Error::Validation(format!("matrix: {e}")))
}

fn parse_params(p: &ParamsDoc) -> Result<SchemeParams> {
    let q = FieldPrime::new(parse_u64(&p.q)?).map_err(|e| Error::Validation(e.to_string()))?;
    if p.k != p.thresholds.len() {
        return Err(Error::Validation(format!(
            "k = {} but {} thresholds",
            p.k,
            p.thresholds.len()
        )));
    }
    SchemeParams::with_share_length(p.variant, p.n, p.thresholds.clone(), q, p.r)
        .map_err(|e| Error::Validation(e.to_string()))
}

/// Rebuilds every object with its keys in sorted order.
fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

fn to_canonical_bytes<T: Serialize>(doc: &T, pretty: bool) -> Vec<u8> {
    let value = canonical(serde_json::to_value(doc).expect("documents are always representable"));
    let mut out = if pretty {
        serde_json::to_vec_pretty(&value)
    } else {
        serde_json::to_vec(&value)
    }
    .expect("values always serialize");
    if pretty {
        out.push(b'\n');
    }
    out
}

/// Parses JSON, checks `format_version`, then decodes the typed document.
fn from_versioned<T: DeserializeOwned>(bytes: &[u8]) -> Result<T> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
    let version = value
        .get("format_version")
        .ok_or_else(|| Error::Parse("missing format_version".into()))?
        .as_u64()
        .ok_or_else(|| Error::Parse("format_version is not an integer".into()))?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
}

fn setup_doc(setup: &Setup) -> SetupDoc {
    SetupDoc {
        format_version: FORMAT_VERSION,
        params: params_doc(&setup.params),
        g: setup.g.iter().map(matrix_doc).collect(),
        f: matrix_doc(&setup.f),
        commitments: setup
            .commitments
            .iter()
            .map(|c| CommitmentDoc {
                owner: c.owner,
                h: vec_doc(&c.h),
            })
            .collect(),
    }
}

/// SHA-256 (hex) of the canonical encoding of the setup section.
pub fn deal_id(setup: &Setup) -> String {
    hex::encode(Sha256::digest(to_canonical_bytes(&setup_doc(setup), false)))
}

pub fn encode_bulletin(b: &Bulletin) -> Vec<u8> {
    let s = setup_doc(&b.setup());
    let doc = BulletinDoc {
        format_version: FORMAT_VERSION,
        params: s.params,
        g: s.g,
        f: s.f,
        commitments: s.commitments,
        secret_hashes: b.secret_hashes.iter().map(hex::encode).collect(),
        constants: b.constants.iter().map(|c| vec_doc(c)).collect(),
        offsets: b
            .offsets
            .iter()
            .map(|per| per.iter().map(|v| vec_doc(v)).collect())
            .collect(),
        extras: b
            .extras
            .iter()
            .map(|per| per.iter().map(|v| vec_doc(v)).collect())
            .collect(),
    };
    to_canonical_bytes(&doc, true)
}

pub fn decode_bulletin(bytes: &[u8]) -> Result<Bulletin> {
    let doc: BulletinDoc = from_versioned(bytes)?;
    let params = parse_params(&doc.params)?;
    let q = params.q();
    let hashes = doc
        .secret_hashes
        .iter()
        .map(|h| {
            let raw = hex::decode(h).map_err(|e| Error::Parse(format!("secret hash: {e}")))?;
            SecretHash::try_from(raw.as_slice())
                .map_err(|_| Error::Validation(format!("secret hash has {} bytes", raw.len())))
        })
        .collect::<Result<Vec<_>>>()?;
    let nested = |outer: &[Vec<Vec<String>>]| -> Result<Vec<Vec<FieldVec>>> {
        outer
            .iter()
            .map(|per| per.iter().map(|v| parse_vec(v, q)).collect())
            .collect()
    };
    let bulletin = Bulletin {
        g: doc.g.iter().map(|m| parse_matrix(m, q)).collect::<Result<_>>()?,
        f: parse_matrix(&doc.f, q)?,
        commitments: doc
            .commitments
            .iter()
            .map(|c| {
                Ok(Commitment {
                    owner: c.owner,
                    h: parse_vec(&c.h, q)?,
                })
            })
            .collect::<Result<_>>()?,
        secret_hashes: hashes,
        constants: doc.constants.iter().map(|c| parse_vec(c, q)).collect::<Result<_>>()?,
        offsets: nested(&doc.offsets)?,
        extras: nested(&doc.extras)?,
        params,
    };
    bulletin.validate()?;
    Ok(bulletin)
}

/// A decoded share file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareFile {
    pub share: Share,
    pub deal_id: Option<String>,
}

impl ShareFile {
    /// Fails with [`Error::WrongDeal`] if the share is bound to another deal.
    pub fn check_deal(&self, bulletin: &Bulletin) -> Result<()> {
        match &self.deal_id {
            Some(id) if *id != deal_id(&bulletin.setup()) => Err(Error::WrongDeal),
            _ => Ok(()),
        }
    }
}

/// Bits as hex, most significant bit first, left-padded to whole nibbles.
fn bits_to_hex(bits: &[u8]) -> String {
    let nibbles = bits.len().div_ceil(4);
    let pad = nibbles * 4 - bits.len();
    let padded: Vec<u8> = std::iter::repeat_n(0, pad).chain(bits.iter().copied()).collect();
    padded
        .chunks(4)
        .map(|c| {
            let v = c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32);
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

fn hex_to_bits(s: &str, r: usize) -> Result<Vec<u8>> {
    let nibbles = r.div_ceil(4);
    if s.len() != nibbles {
        return Err(Error::Validation(format!(
            "bit string has {} hex digits, r = {r} needs {nibbles}",
            s.len()
        )));
    }
    let mut bits = Vec::with_capacity(nibbles * 4);
    for ch in s.chars() {
        let v = ch
            .to_digit(16)
            .filter(|_| !ch.is_ascii_uppercase())
            .ok_or_else(|| Error::Parse(format!("invalid hex digit {ch:?}")))?;
        bits.extend((0..4).rev().map(|k| ((v >> k) & 1) as u8));
    }
    let pad = nibbles * 4 - r;
    if bits[..pad].iter().any(|&b| b != 0) {
        return Err(Error::Validation(format!("bit string longer than r = {r}")));
    }
    Ok(bits.split_off(pad))
}

pub fn encode_share(share: &Share, deal_id: Option<&str>) -> Vec<u8> {
    let doc = ShareDoc {
        format_version: FORMAT_VERSION,
        owner: share.owner,
        r: share.len(),
        bits: bits_to_hex(&share.bits),
        deal_id: deal_id.map(str::to_owned),
    };
    to_canonical_bytes(&doc, true)
}

pub fn decode_share(bytes: &[u8]) -> Result<ShareFile> {
    let doc: ShareDoc = from_versioned(bytes)?;
    if doc.owner == 0 {
        return Err(Error::Validation("share owner must be at least 1".into()));
    }
    if doc.r == 0 {
        return Err(Error::Validation("share length must be positive".into()));
    }
    if let Some(id) = &doc.deal_id {
        if id.len() != 64 || hex::decode(id).is_err() {
            return Err(Error::Validation("deal_id is not a SHA-256 hex digest".into()));
        }
    }
    let bits = hex_to_bits(&doc.bits, doc.r)?;
    Ok(ShareFile {
        share: Share::new(doc.owner, bits)?,
        deal_id: doc.deal_id,
    })
}

/// Decodes a share and checks it belongs to `bulletin` and has its length.
pub fn decode_share_for(bytes: &[u8], bulletin: &Bulletin) -> Result<Share> {
    let file = decode_share(bytes)?;
    file.check_deal(bulletin)?;
    if file.share.len() != bulletin.params.r() {
        return Err(Error::Validation(format!(
            "share has {} bits, deal uses r = {}",
            file.share.len(),
            bulletin.params.r()
        )));
    }
    if file.share.owner > bulletin.params.n() {
        return Err(Error::Validation(format!("share owner {} exceeds n", file.share.owner)));
    }
    Ok(file.share)
}

pub fn encode_secrets(secrets: &[FieldVec]) -> Vec<u8> {
    let doc = SecretsDoc {
        format_version: FORMAT_VERSION,
        secrets: secrets.iter().map(|s| vec_doc(s)).collect(),
    };
    to_canonical_bytes(&doc, true)
}

/// Decodes a dealer secrets file; residues are checked against `q`.
pub fn decode_secrets(bytes: &[u8], q: FieldPrime) -> Result<Vec<FieldVec>> {
    let doc: SecretsDoc = from_versioned(bytes)?;
    doc.secrets.iter().map(|s| parse_vec(s, q)).collect()
}

/// A recovered secret together with its verification verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredSecret {
    pub secret_index: usize,
    pub secret: FieldVec,
    pub verified: bool,
}

pub fn encode_recovered(rec: &RecoveredSecret) -> Vec<u8> {
    let doc = RecoveredDoc {
        format_version: FORMAT_VERSION,
        secret_index: rec.secret_index,
        secret: vec_doc(&rec.secret),
        verified: rec.verified,
    };
    to_canonical_bytes(&doc, true)
}

pub fn decode_recovered(bytes: &[u8], q: FieldPrime) -> Result<RecoveredSecret> {
    let doc: RecoveredDoc = from_versioned(bytes)?;
    Ok(RecoveredSecret {
        secret_index: doc.secret_index,
        secret: parse_vec(&doc.secret, q)?,
        verified: doc.verified,
    })
}

/// Writes `bytes` to a sibling temp file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
