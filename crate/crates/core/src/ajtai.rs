//! Ajtai's function `f_A(x) = A x mod q` on binary inputs, share sampling,
//! and the share commitments built on top of it.

use rand::{CryptoRng, Rng, RngCore};

use crate::error::{Error, Result};
use crate::field::{FieldMatrix, FieldPrime, FieldVec};

const MIN_SHARE_BITS: usize = 16;
const MAX_SHARE_REJECTIONS: usize = 1000;
const MAX_RANK_RETRIES: usize = 100;

/// A participant's long-lived binary share.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Share {
    pub owner: usize,
    pub bits: Vec<u8>,
}

impl Share {
    pub fn new(owner: usize, bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::NotBinary);
        }
        Ok(Share { owner, bits })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Published commitment `h_j = F sh_j` to participant `owner`'s share.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Commitment {
    pub owner: usize,
    pub h: FieldVec,
}

/// Share bit length `max(ceil(t log2 t), ceil(log2 n), 16)` for the largest
/// threshold `t` and participant count `n`.
pub fn share_length(max_threshold: usize, n: usize) -> usize {
    let t = max_threshold.max(1) as f64;
    let by_threshold = (t * t.log2()).ceil() as usize;
    let by_count = ceil_log2(n);
    by_threshold.max(by_count).max(MIN_SHARE_BITS)
}

fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Uniform binary vector of length `r`.
pub fn sample_binary_share<R: RngCore + CryptoRng>(r: usize, rng: &mut R) -> Vec<u8> {
    (0..r).map(|_| rng.gen_range(0..=1u8)).collect()
}

/// Draws `n` pairwise distinct binary shares, owners `1..=n`.
pub fn sample_distinct_shares<R: RngCore + CryptoRng>(
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<Vec<Share>> {
    let mut shares: Vec<Share> = Vec::with_capacity(n);
    let mut rejections = 0;
    while shares.len() < n {
        let bits = sample_binary_share(r, rng);
        if shares.iter().any(|s| s.bits == bits) {
            rejections += 1;
            if rejections >= MAX_SHARE_REJECTIONS {
                return Err(Error::ShareSpaceExhausted { bits: r, needed: n });
            }
            continue;
        }
        shares.push(Share {
            owner: shares.len() + 1,
            bits,
        });
    }
    Ok(shares)
}

/// `A x mod q` for binary `x`: the sum of the columns of `A` selected by `x`.
pub fn ajtai_hash(a: &FieldMatrix, x: &[u8], q: FieldPrime) -> Result<FieldVec> {
    if x.len() != a.cols() {
        return Err(Error::DimMismatch {
            expected: a.cols(),
            actual: x.len(),
        });
    }
    if x.iter().any(|&b| b > 1) {
        return Err(Error::NotBinary);
    }
    Ok((0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .zip(x)
                .filter(|(_, &bit)| bit == 1)
                .fold(0, |acc, (&v, _)| q.add(acc, v))
        })
        .collect())
}

/// Uniform `rows x cols` matrix, resampled until it has full row rank.
pub fn sample_matrix_full_rank<R: RngCore + CryptoRng>(
    rows: usize,
    cols: usize,
    rng: &mut R,
    q: FieldPrime,
) -> Result<FieldMatrix> {
    if rows > cols {
        return Err(Error::DimMismatch {
            expected: cols,
            actual: rows,
        });
    }
    for _ in 0..MAX_RANK_RETRIES {
        let data = (0..rows * cols)
            .map(|_| rng.gen_range(0..q.modulus()))
            .collect();
        let m = FieldMatrix::new(rows, cols, data)?;
        if m.rank(q) == rows {
            return Ok(m);
        }
    }
    Err(Error::RngSuspect {
        rows,
        cols,
        attempts: MAX_RANK_RETRIES,
    })
}

pub fn commit(f: &FieldMatrix, share: &Share, q: FieldPrime) -> Result<Commitment> {
    Ok(Commitment {
        owner: share.owner,
        h: ajtai_hash(f, &share.bits, q)?,
    })
}

/// Checks `F sh_j == h_j`.
pub fn verify_commitment(
    f: &FieldMatrix,
    share: &Share,
    h: &Commitment,
    q: FieldPrime,
) -> Result<bool> {
    if h.h.len() != f.rows() {
        return Err(Error::DimMismatch {
            expected: f.rows(),
            actual: h.h.len(),
        });
    }
    Ok(share.owner == h.owner && ajtai_hash(f, &share.bits, q)? == h.h)
}
