//! Brute-force Orthogonal Vectors solvers and the unbalanced block split.

use std::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{orthogonal, OvInstance};
use crate::rat::Rat;

/// An orthogonal pair, as 0-based positions into `A` and `B`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OvWitness {
    pub index_a: usize,
    pub index_b: usize,
}

/// Lexicographically smallest orthogonal pair, or `None`. `O(|A| |B| d)`.
pub fn ov_decide(inst: &OvInstance) -> Option<OvWitness> {
    scan(inst, 0..inst.b().len())
}

/// Number of orthogonal pairs in `A × B`.
pub fn ov_count(inst: &OvInstance) -> u64 {
    inst.a()
        .iter()
        .map(|a| inst.b().iter().filter(|b| orthogonal(a, b)).count() as u64)
        .sum()
}

fn scan(inst: &OvInstance, b_range: Range<usize>) -> Option<OvWitness> {
    let bs = &inst.b()[b_range.clone()];
    inst.a().iter().enumerate().find_map(|(ia, a)| {
        bs.iter().position(|b| orthogonal(a, b)).map(|k| OvWitness {
            index_a: ia,
            index_b: b_range.start + k,
        })
    })
}

/// Partition of `B`'s index range into consecutive blocks of size
/// `⌈n^α⌉` (the last block takes the remainder).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnbalancedPlan {
    pub alpha: Rat,
    pub block_size: usize,
    /// 0-based half-open ranges.
    pub blocks: Vec<Range<usize>>,
}

impl UnbalancedPlan {
    pub fn covered_len(&self) -> usize {
        self.blocks.last().map_or(0, |r| r.end)
    }

    fn check(&self, n: usize) -> Result<()> {
        let mut next = 0;
        for r in &self.blocks {
            if r.start != next || r.end <= r.start || r.len() > self.block_size {
                return Err(Error::InconsistentPlan(format!(
                    "block {r:?} does not continue at {next} with size in 1..={}",
                    self.block_size
                )));
            }
            next = r.end;
        }
        if next != n {
            return Err(Error::InconsistentPlan(format!(
                "blocks cover {next} indices but |B| = {n}"
            )));
        }
        Ok(())
    }
}

/// `⌈n^(p/q)⌉` by integer root extraction.
pub fn ceil_rational_power(n: usize, alpha: &Rat) -> Result<usize> {
    let p = alpha.numer().to_u32();
    let q = alpha.denom().to_u32();
    let (Some(p), Some(q)) = (p, q) else {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    };
    let target = num_traits::pow(BigUint::from(n), p as usize);
    let mut root = target.nth_root(q);
    if num_traits::pow(root.clone(), q as usize) < target {
        root += BigUint::one();
    }
    root.to_usize()
        .ok_or_else(|| Error::AlphaOutOfRange(alpha.to_string()))
}

pub fn plan_unbalanced(n: usize, alpha: &Rat) -> Result<UnbalancedPlan> {
    if !(alpha.is_positive() && *alpha < Rat::one()) {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    }
    if n == 0 {
        return Err(Error::Empty("set B"));
    }
    let block_size = ceil_rational_power(n, alpha)?.max(1);
    let blocks = (0..n)
        .step_by(block_size)
        .map(|start| start..(start + block_size).min(n))
        .collect();
    Ok(UnbalancedPlan {
        alpha: alpha.clone(),
        block_size,
        blocks,
    })
}

/// Solves `(A, B_i)` for every block independently and combines. The
/// witness is the lexicographically smallest one across blocks, so the
/// answer does not depend on which block finishes first.
pub fn ov_decide_blocked(inst: &OvInstance, plan: &UnbalancedPlan) -> Result<Option<OvWitness>> {
    plan.check(inst.b().len())?;
    Ok(plan
        .blocks
        .par_iter()
        .filter_map(|r| scan(inst, r.clone()))
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: usize, b: usize) -> Option<OvWitness> {
        Some(OvWitness {
            index_a: a,
            index_b: b,
        })
    }

    #[test]
    fn decide_examples() {
        let i = OvInstance::from_rows(&[&[1, 1]], &[&[1, 1]]).unwrap();
        assert_eq!(ov_decide(&i), None);
        let i = OvInstance::from_rows(&[&[1, 0]], &[&[0, 1]]).unwrap();
        assert_eq!(ov_decide(&i), w(0, 0));
        // (1,0)·(0,1) is the only orthogonal pair: 1-based (2,2)
        let i = OvInstance::from_rows(&[&[1, 1], &[1, 0]], &[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(ov_decide(&i), w(1, 1));
    }

    #[test]
    fn decide_picks_lexicographic_smallest() {
        let i = OvInstance::from_rows(&[&[1, 1], &[0, 0], &[0, 0]], &[&[1, 0], &[0, 0]]).unwrap();
        assert_eq!(ov_decide(&i), w(0, 1));
    }

    #[test]
    fn count_examples() {
        let i = OvInstance::from_rows(&[&[0]], &[&[0]]).unwrap();
        assert_eq!(ov_count(&i), 1);
        let i = OvInstance::from_rows(&[&[1]], &[&[1]]).unwrap();
        assert_eq!(ov_count(&i), 0);
        let i = OvInstance::from_rows(&[&[1, 0], &[0, 1]], &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(ov_count(&i), 2);
    }

    #[test]
    fn plan_examples() {
        let half = Rat::new(1, 2);
        let p = plan_unbalanced(100, &half).unwrap();
        assert_eq!(p.block_size, 10);
        assert_eq!(p.blocks.len(), 10);

        let p = plan_unbalanced(1, &half).unwrap();
        assert_eq!(p.blocks, vec![0..1]);

        let p = plan_unbalanced(10, &half).unwrap();
        assert_eq!(p.block_size, 4);
        let sizes: Vec<_> = p.blocks.iter().map(|r| r.len()).collect();
        assert_eq!(sizes, vec![4, 4, 2]);
    }

    #[test]
    fn plan_rejects_alpha() {
        for a in [Rat::zero(), Rat::one(), Rat::new(3, 2), Rat::new(-1, 2)] {
            assert!(matches!(
                plan_unbalanced(10, &a),
                Err(Error::AlphaOutOfRange(_))
            ));
        }
    }

    #[test]
    fn ceil_power_exact_and_inexact() {
        assert_eq!(ceil_rational_power(64, &Rat::new(1, 3)).unwrap(), 4);
        assert_eq!(ceil_rational_power(65, &Rat::new(1, 3)).unwrap(), 5);
        assert_eq!(ceil_rational_power(16, &Rat::new(3, 4)).unwrap(), 8);
        assert_eq!(ceil_rational_power(17, &Rat::new(3, 4)).unwrap(), 9);
    }

    #[test]
    fn blocked_examples() {
        let i = OvInstance::from_rows(&[&[1, 1]], &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let p = plan_unbalanced(3, &Rat::new(1, 2)).unwrap();
        assert_eq!(ov_decide_blocked(&i, &p).unwrap(), None);

        let i = OvInstance::from_rows(&[&[1, 0]], &[&[1, 1], &[0, 1]]).unwrap();
        let plan = UnbalancedPlan {
            alpha: Rat::new(1, 2),
            block_size: 1,
            blocks: vec![0..1, 1..2],
        };
        assert_eq!(ov_decide_blocked(&i, &plan).unwrap(), w(0, 1));
    }

    #[test]
    fn blocked_rejects_bad_plan() {
        let i = OvInstance::from_rows(&[&[1, 0]], &[&[1, 1], &[0, 1]]).unwrap();
        let mut plan = plan_unbalanced(2, &Rat::new(1, 2)).unwrap();
        plan.blocks.pop();
        assert!(matches!(
            ov_decide_blocked(&i, &plan),
            Err(Error::InconsistentPlan(_))
        ));
        let plan = UnbalancedPlan {
            alpha: Rat::new(1, 2),
            block_size: 1,
            blocks: std::iter::once(0..2).collect(),
        };
        assert!(ov_decide_blocked(&i, &plan).is_err());
    }
}
