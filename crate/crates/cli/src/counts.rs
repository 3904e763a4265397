//! Public-value counts for several multi-stage secret sharing schemes, plus
//! the count for an actual bulletin.

use mss_core::scheme::Bulletin;

/// Reference `(t, k, n)` tuples emitted by `counts --figure1`.
pub const FIGURE1_TUPLES: [(u64, u64, u64); 5] =
    [(3, 4, 7), (6, 7, 10), (8, 9, 12), (11, 12, 14), (12, 13, 14)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublicValueCounts {
    pub hd: u64,
    pub lh: u64,
    pub sm: u64,
    pub pe: u64,
    pub os12: u64,
    pub os34: u64,
}

impl PublicValueCounts {
    pub fn new(t: u64, k: u64, n: u64) -> Option<Self> {
        if t > n {
            return None;
        }
        Some(PublicValueCounts {
            hd: k * n,
            lh: k * (n - t),
            sm: k * (n - t + 2) + 1,
            pe: 2 * (n + k) + 1,
            os12: k * (n - t + 6) + (n + 1),
            os34: k * (n + 4) + (n + 2),
        })
    }

    pub fn labeled(&self) -> [(&'static str, u64); 6] {
        [
            ("HD", self.hd),
            ("LH", self.lh),
            ("SM", self.sm),
            ("PE", self.pe),
            ("OS1&2", self.os12),
            ("OS3&4", self.os34),
        ]
    }
}

pub const CSV_HEADER: &str = "t,k,n,HD,LH,SM,PE,OS1&2,OS3&4";

pub fn csv_row(t: u64, k: u64, n: u64, c: &PublicValueCounts) -> String {
    format!(
        "{t},{k},{n},{},{},{},{},{},{}",
        c.hd, c.lh, c.sm, c.pe, c.os12, c.os34
    )
}

/// CSV for the reference tuples, header included, newline terminated.
pub fn figure1_csv() -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for (t, k, n) in FIGURE1_TUPLES {
        let c = PublicValueCounts::new(t, k, n).expect("reference tuples have t <= n");
        out.push_str(&csv_row(t, k, n, &c));
        out.push('\n');
    }
    out
}

/// Itemized public values on a bulletin, each matrix or vector counted as one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BulletinCount {
    pub matrices: usize,
    pub commitments: usize,
    pub hashes: usize,
    pub constants: usize,
    pub offsets: usize,
    pub extras: usize,
}

impl BulletinCount {
    pub fn of(b: &Bulletin) -> Self {
        BulletinCount {
            matrices: b.g.len() + 1,
            commitments: b.commitments.len(),
            hashes: b.secret_hashes.len(),
            constants: b.constants.len(),
            offsets: b.offsets.iter().map(Vec::len).sum(),
            extras: b.extras.iter().map(Vec::len).sum(),
        }
    }

    pub fn total(&self) -> usize {
        self.matrices + self.commitments + self.hashes + self.constants + self.offsets + self.extras
    }
}
