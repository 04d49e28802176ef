//! Target problems of the reductions: bichromatic closest pair and
//! nearest-neighbor search, under Euclidean and discrete Fréchet distance.
//!
//! All solvers are exact and break ties towards the smallest index (or the
//! lexicographically smallest index pair).

mod kdtree;
mod nn;

pub use kdtree::KdTree;
pub use nn::{nn_build, nn_query, Dataset, Metric, NnIndex, Query};

use crate::error::{Error, Result};
use crate::frechet::frechet_sq_value;
use crate::model::{squared_euclidean, Curve2, PointD, SqDist};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BcpResult {
    pub index_p: usize,
    pub index_q: usize,
    pub sq_value: SqDist,
}

pub fn bcp_euclid(p: &[PointD], q: &[PointD]) -> Result<BcpResult> {
    nonempty(p.len(), q.len())?;
    let dim = p[0].dim();
    if let Some(bad) = p.iter().chain(q).find(|x| x.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: bad.dim(),
        });
    }
    pairwise_min(p, q, squared_euclidean)
}

/// Naive `O(|P| |Q| d²)` closest pair under discrete Fréchet distance.
pub fn bcp_frechet(p: &[Curve2], q: &[Curve2]) -> Result<BcpResult> {
    nonempty(p.len(), q.len())?;
    pairwise_min(p, q, frechet_sq_value)
}

fn nonempty(p: usize, q: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Empty("set P"));
    }
    if q == 0 {
        return Err(Error::Empty("set Q"));
    }
    Ok(())
}

fn pairwise_min<T>(
    p: &[T],
    q: &[T],
    dist: impl Fn(&T, &T) -> Result<SqDist>,
) -> Result<BcpResult> {
    let mut best: Option<BcpResult> = None;
    for (ip, x) in p.iter().enumerate() {
        for (iq, y) in q.iter().enumerate() {
            let d = dist(x, y)?;
            if best.as_ref().is_none_or(|b| d < b.sq_value) {
                best = Some(BcpResult {
                    index_p: ip,
                    index_q: iq,
                    sq_value: d,
                });
            }
        }
    }
    Ok(best.expect("both sets non-empty"))
}
