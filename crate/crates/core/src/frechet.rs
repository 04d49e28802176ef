//! Discrete Fréchet distance between planar curves.
//!
//! The value DP fills `value(i,j)`, the squared Fréchet distance of the
//! prefixes `π_1..π_i` and `σ_1..σ_j`:
//!
//! ```text
//! value(1,1) = |π_1 - σ_1|²
//! value(i,j) = max(|π_i - σ_j|², min(value(i-1,j), value(i,j-1), value(i-1,j-1)))
//! ```
//!
//! Everything is exact; no square roots are taken.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Curve2, SqDist};

/// Total vertex count above which [`brute_force_frechet_sq`] refuses to run.
pub const DEFAULT_ORACLE_CAP: usize = 16;

/// A monotone walk through the index grid. Steps are stored 0-based;
/// [`Traversal::one_based`] gives the 1-based form used in output.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Traversal {
    steps: Vec<(usize, usize)>,
}

impl Traversal {
    pub fn new(steps: Vec<(usize, usize)>) -> Self {
        Traversal { steps }
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn one_based(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.steps.iter().map(|&(i, j)| (i + 1, j + 1))
    }

    /// Starts at the first vertex pair, ends at `(n, m)`, and every step
    /// advances one or both indices by exactly one.
    pub fn is_valid_for(&self, n: usize, m: usize) -> bool {
        let (Some(&first), Some(&last)) = (self.steps.first(), self.steps.last()) else {
            return false;
        };
        if first != (0, 0) || n == 0 || m == 0 || last != (n - 1, m - 1) {
            return false;
        }
        self.steps.windows(2).all(|w| {
            let (i, j) = w[0];
            let next = w[1];
            next == (i + 1, j) || next == (i, j + 1) || next == (i + 1, j + 1)
        })
    }

    /// Max squared distance over the steps.
    pub fn cost(&self, pi: &Curve2, sigma: &Curve2) -> SqDist {
        self.steps
            .iter()
            .map(|&(i, j)| pi.point(i).sq_dist(sigma.point(j)))
            .max()
            .unwrap_or_else(SqDist::zero)
    }
}

impl fmt::Display for Traversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.one_based().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrechetResult {
    pub sq_value: SqDist,
    pub traversal: Traversal,
}

/// Exact squared discrete Fréchet distance with one optimal traversal.
///
/// Keeps the whole `n × m` table for backtracking. On ties the backtrack
/// prefers the diagonal predecessor, then `(i-1, j)`, then `(i, j-1)`.
pub fn frechet_sq(pi: &Curve2, sigma: &Curve2) -> Result<FrechetResult> {
    check_nonempty(pi, sigma)?;
    let (n, m) = (pi.len(), sigma.len());
    let mut table: Vec<SqDist> = Vec::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            let d = pi.point(i).sq_dist(sigma.point(j));
            let v = if i == 0 && j == 0 {
                d
            } else {
                let best = [
                    (i > 0 && j > 0).then(|| &table[(i - 1) * m + j - 1]),
                    (i > 0).then(|| &table[(i - 1) * m + j]),
                    (j > 0).then(|| &table[i * m + j - 1]),
                ]
                .into_iter()
                .flatten()
                .min()
                .expect("at least one predecessor");
                d.max(best.clone())
            };
            table.push(v);
        }
    }

    let mut steps = Vec::with_capacity(n + m - 1);
    let (mut i, mut j) = (n - 1, m - 1);
    steps.push((i, j));
    while (i, j) != (0, 0) {
        let candidates = [
            (i > 0 && j > 0).then(|| (i - 1, j - 1)),
            (i > 0).then(|| (i - 1, j)),
            (j > 0).then(|| (i, j - 1)),
        ];
        // first minimum in preference order
        let mut pick: Option<(usize, usize)> = None;
        for c in candidates.into_iter().flatten() {
            match pick {
                Some(p) if table[p.0 * m + p.1] <= table[c.0 * m + c.1] => {}
                _ => pick = Some(c),
            }
        }
        (i, j) = pick.expect("at least one predecessor");
        steps.push((i, j));
    }
    steps.reverse();

    Ok(FrechetResult {
        sq_value: table.pop().expect("non-empty table"),
        traversal: Traversal::new(steps),
    })
}

/// Value-only variant of [`frechet_sq`] using two rows of memory.
pub fn frechet_sq_value(pi: &Curve2, sigma: &Curve2) -> Result<SqDist> {
    check_nonempty(pi, sigma)?;
    let m = sigma.len();
    let mut prev: Vec<SqDist> = Vec::with_capacity(m);
    let mut cur: Vec<SqDist> = Vec::with_capacity(m);
    for (i, p) in pi.points().iter().enumerate() {
        cur.clear();
        for (j, q) in sigma.points().iter().enumerate() {
            let d = p.sq_dist(q);
            let v = match (i, j) {
                (0, 0) => d,
                (0, _) => d.max(cur[j - 1].clone()),
                (_, 0) => d.max(prev[0].clone()),
                _ => {
                    let best = (&prev[j - 1]).min(&prev[j]).min(&cur[j - 1]);
                    d.max(best.clone())
                }
            };
            cur.push(v);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev.pop().expect("non-empty row"))
}

/// `true` iff the squared Fréchet distance is at most `tau_sq`.
///
/// Reachability over the free cells `{(i,j) : |π_i - σ_j|² <= tau_sq}`.
pub fn frechet_decide(pi: &Curve2, sigma: &Curve2, tau_sq: &SqDist) -> Result<bool> {
    check_nonempty(pi, sigma)?;
    let m = sigma.len();
    let mut prev = vec![false; m];
    let mut cur = vec![false; m];
    for (i, p) in pi.points().iter().enumerate() {
        let mut any = false;
        for (j, q) in sigma.points().iter().enumerate() {
            let reach = match (i, j) {
                (0, 0) => true,
                (0, _) => cur[j - 1],
                (_, 0) => prev[0],
                _ => prev[j - 1] || prev[j] || cur[j - 1],
            };
            cur[j] = reach && p.sq_dist(q) <= *tau_sq;
            any |= cur[j];
        }
        if !any {
            return Ok(false);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m - 1])
}

/// Enumerates every traversal and takes the minimum bottleneck.
/// Independent of the DP; exponential, hence the cap on `n + m`.
pub fn brute_force_frechet_sq(pi: &Curve2, sigma: &Curve2) -> Result<SqDist> {
    brute_force_frechet_sq_capped(pi, sigma, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_frechet_sq_capped(pi: &Curve2, sigma: &Curve2, cap: usize) -> Result<SqDist> {
    check_nonempty(pi, sigma)?;
    let (n, m) = (pi.len(), sigma.len());
    if n + m > cap {
        return Err(Error::OverCap {
            what: "total curve vertices",
            size: n + m,
            cap,
        });
    }
    let dist: Vec<Vec<SqDist>> = pi
        .points()
        .iter()
        .map(|p| sigma.points().iter().map(|q| p.sq_dist(q)).collect())
        .collect();

    let mut best: Option<SqDist> = None;
    // (i, j, bottleneck so far)
    let mut stack = vec![(0usize, 0usize, dist[0][0].clone())];
    while let Some((i, j, worst)) = stack.pop() {
        if (i, j) == (n - 1, m - 1) {
            if best.as_ref().is_none_or(|b| worst < *b) {
                best = Some(worst);
            }
            continue;
        }
        for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
            let (ni, nj) = (i + di, j + dj);
            if ni < n && nj < m {
                let w = (&worst).max(&dist[ni][nj]).clone();
                stack.push((ni, nj, w));
            }
        }
    }
    Ok(best.expect("at least one traversal"))
}

fn check_nonempty(pi: &Curve2, sigma: &Curve2) -> Result<()> {
    if pi.is_empty() || sigma.is_empty() {
        return Err(Error::Empty("curve"));
    }
    Ok(())
}
