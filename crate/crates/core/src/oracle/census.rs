//! Brute-force census of subalgebras and ideals of `p`-power index in the
//! Lie ring of `G_n`.
//!
//! Work is split by diagonal composition of the HNF; each composition is
//! counted independently and the partial counts are summed, so the result
//! does not depend on scheduling.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use super::hnf::{compositions, CompositionLattices, HnfBasis};
use super::lie::LieRing;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusKind {
    Subalgebra,
    Ideal,
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CensusKind::Subalgebra => "leq",
            CensusKind::Ideal => "normal",
        })
    }
}

fn row(b: &HnfBasis, i: usize) -> Vec<i128> {
    b.rows()[i].iter().map(|&x| x as i128).collect()
}

/// `[h_a, h_b] ∈ H` for all pairs of basis rows.
pub fn is_subalgebra(ring: &LieRing, b: &HnfBasis) -> bool {
    let rows: Vec<Vec<i128>> = (0..b.dim()).map(|i| row(b, i)).collect();
    (0..rows.len()).all(|i| (i + 1..rows.len()).all(|j| b.contains(&ring.bracket(&rows[i], &rows[j]))))
}

/// `[e_a, h_b] ∈ H` for all ambient basis vectors and basis rows.
pub fn is_ideal(ring: &LieRing, b: &HnfBasis) -> bool {
    let rows: Vec<Vec<i128>> = (0..b.dim()).map(|i| row(b, i)).collect();
    (0..ring.dim()).all(|a| {
        let e = ring.basis_vector(a);
        rows.iter().all(|h| b.contains(&ring.bracket(&e, h)))
    })
}

pub fn count(kind: CensusKind, n: usize, p: u64, k: u32) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidInput(format!("p must be a prime, got {p}")));
    }
    let ring = LieRing::new(n)?;
    let parts = compositions(k, ring.dim());
    parts
        .par_iter()
        .map(|c| {
            let lattices = CompositionLattices::new(p, c)?;
            Ok(lattices
                .filter(|b| match kind {
                    CensusKind::Subalgebra => is_subalgebra(&ring, b),
                    CensusKind::Ideal => is_ideal(&ring, b),
                })
                .count() as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Number of subalgebras of index `p^k` in the Lie ring of `G_n`.
pub fn count_subalgebras(n: usize, p: u64, k: u32) -> Result<u64> {
    count(CensusKind::Subalgebra, n, p, k)
}

/// Number of ideals of index `p^k` in the Lie ring of `G_n`.
pub fn count_ideals(n: usize, p: u64, k: u32) -> Result<u64> {
    count(CensusKind::Ideal, n, p, k)
}

/// One census measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub p: u64,
    pub k: u32,
    pub kind: CensusKind,
    pub count: u64,
    pub elapsed_ms: u128,
}

impl CensusRow {
    pub const CSV_HEADER: &'static str = "n,p,k,kind,count,elapsed_ms";

    pub fn measure(kind: CensusKind, n: usize, p: u64, k: u32) -> Result<Self> {
        let start = Instant::now();
        let count = count(kind, n, p, k)?;
        Ok(CensusRow { n, p, k, kind, count, elapsed_ms: start.elapsed().as_millis() })
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{},{},{}", self.n, self.p, self.k, self.kind, self.count, self.elapsed_ms)
    }
}
