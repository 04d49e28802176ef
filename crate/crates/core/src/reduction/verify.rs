//! Runs a reduction, solves the reduced instance with its own solver, and
//! compares against the brute-force OV answer.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::embed::{embed_euclid, embed_frechet, reduce_ov_to_bcp};
use super::gadget::{or_gadget, GadgetConfig};
use crate::error::{Error, Result};
use crate::frechet::frechet_decide;
use crate::gen::{enumerate_instances, generate_sized, random_family};
use crate::model::{squared_euclidean, OvInstance, SqDist};
use crate::ov::{ov_decide, plan_unbalanced};
use crate::proximity::{bcp_euclid, bcp_frechet, nn_build, nn_query, Dataset, Metric, Query};
use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    /// Per-pair Euclidean embedding check.
    EuclidEmbed,
    /// Per-pair curve embedding, solved as closest pair under Fréchet.
    FrechetEmbed,
    OvToBcp,
    /// The OR-gadget curve pair.
    OvToFrechet,
    /// NN index on the embedded `A` side, queried block by block with `B`.
    UnbalancedNn,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 5] = [
        ReductionKind::EuclidEmbed,
        ReductionKind::FrechetEmbed,
        ReductionKind::OvToBcp,
        ReductionKind::OvToFrechet,
        ReductionKind::UnbalancedNn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::EuclidEmbed => "euclid-embed",
            ReductionKind::FrechetEmbed => "frechet-embed",
            ReductionKind::OvToBcp => "ov-to-bcp",
            ReductionKind::OvToFrechet => "ov-to-frechet",
            ReductionKind::UnbalancedNn => "unbalanced-nn",
        }
    }

    /// Comma-separated list; `all` expands to every kind, blanks are
    /// skipped so an empty string yields an empty list.
    pub fn parse_list(s: &str) -> Result<Vec<ReductionKind>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "all" {
                out.extend(ReductionKind::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ReductionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ReductionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("unknown reduction kind {s:?}"),
            })
    }
}

/// Largest instance `verify_reduction` accepts.
#[derive(Clone, Copy, Debug)]
pub struct VerifyCaps {
    pub max_side: usize,
    pub max_d: usize,
}

impl Default for VerifyCaps {
    fn default() -> Self {
        VerifyCaps {
            max_side: 256,
            max_d: 64,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyContext {
    pub gadget: GadgetConfig,
    pub caps: VerifyCaps,
    /// Exponent of the block split used by `unbalanced-nn`.
    pub alpha: Rat,
    /// Test hook: halves every reduced threshold, which breaks every
    /// reduction on instances that do have an orthogonal pair.
    pub corrupt: bool,
}

impl VerifyContext {
    pub fn new(gadget: GadgetConfig) -> Self {
        VerifyContext {
            gadget,
            caps: VerifyCaps::default(),
            alpha: Rat::new(1, 2),
            corrupt: false,
        }
    }

    fn threshold(&self, tau_sq: SqDist) -> SqDist {
        if self.corrupt {
            SqDist::new(tau_sq.into_value() * Rat::new(1, 2)).expect("non-negative")
        } else {
            tau_sq
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub instance_id: String,
    pub kind: ReductionKind,
    pub oracle_answer: bool,
    pub reduced_answer: bool,
    pub agree: bool,
    #[serde(rename = "oracle_ns", serialize_with = "nanos")]
    pub oracle_time: Duration,
    #[serde(rename = "reduced_ns", serialize_with = "nanos")]
    pub reduced_time: Duration,
}

fn nanos<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_nanos())
}

pub fn verify_reduction(
    kind: ReductionKind,
    inst: &OvInstance,
    instance_id: impl Into<String>,
    ctx: &VerifyContext,
) -> Result<ReductionReport> {
    let side = inst.a().len().max(inst.b().len());
    if side > ctx.caps.max_side {
        return Err(Error::OverCap {
            what: "instance side",
            size: side,
            cap: ctx.caps.max_side,
        });
    }
    if inst.dim() > ctx.caps.max_d {
        return Err(Error::OverCap {
            what: "dimension",
            size: inst.dim(),
            cap: ctx.caps.max_d,
        });
    }

    let start = Instant::now();
    let oracle_answer = ov_decide(inst).is_some();
    let oracle_time = start.elapsed();

    let start = Instant::now();
    let reduced_answer = solve_reduced(kind, inst, ctx)?;
    let reduced_time = start.elapsed();

    Ok(ReductionReport {
        instance_id: instance_id.into(),
        kind,
        oracle_answer,
        reduced_answer,
        agree: oracle_answer == reduced_answer,
        oracle_time,
        reduced_time,
    })
}

fn solve_reduced(kind: ReductionKind, inst: &OvInstance, ctx: &VerifyContext) -> Result<bool> {
    Ok(match kind {
        ReductionKind::EuclidEmbed => {
            let e = embed_euclid(inst);
            let tau = ctx.threshold(e.tau_sq);
            let mut found = false;
            'outer: for p in &e.p {
                for q in &e.q {
                    if squared_euclidean(p, q)? <= tau {
                        found = true;
                        break 'outer;
                    }
                }
            }
            found
        }
        ReductionKind::OvToBcp => {
            let e = reduce_ov_to_bcp(inst);
            let best = bcp_euclid(&e.p, &e.q)?;
            best.sq_value <= ctx.threshold(e.tau_sq)
        }
        ReductionKind::FrechetEmbed => {
            let e = embed_frechet(inst);
            let best = bcp_frechet(&e.p, &e.q)?;
            best.sq_value <= ctx.threshold(e.tau_sq)
        }
        ReductionKind::OvToFrechet => {
            let out = or_gadget(inst, &ctx.gadget)?;
            frechet_decide(&out.pi, &out.sigma, &ctx.threshold(out.tau_sq))?
        }
        ReductionKind::UnbalancedNn => {
            let e = embed_euclid(inst);
            let tau = ctx.threshold(e.tau_sq);
            let plan = plan_unbalanced(e.q.len(), &ctx.alpha)?;
            let index = nn_build(Dataset::Points(e.p), Metric::EuclidKdTree)?;
            let mut found = false;
            for block in &plan.blocks {
                for q in &e.q[block.clone()] {
                    let (_, d) = nn_query(&index, Query::Point(q))?;
                    found |= d <= tau;
                }
                if found {
                    break;
                }
            }
            found
        }
    })
}

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub kinds: Vec<ReductionKind>,
    pub trials: usize,
    pub max_n: usize,
    pub max_d: usize,
    pub seed: u64,
    /// Also run every instance with `|A|, |B| <= 2`, `d <= 2`.
    pub exhaustive: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            kinds: ReductionKind::ALL.to_vec(),
            trials: 500,
            max_n: 8,
            max_d: 6,
            seed: 1,
            exhaustive: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KindSummary {
    pub kind: ReductionKind,
    pub total: usize,
    pub agreed: usize,
    /// Instances where the oracle found an orthogonal pair.
    pub positives: usize,
    pub disagreements: Vec<ReductionReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub kinds: Vec<KindSummary>,
}

impl SweepSummary {
    pub fn all_agree(&self) -> bool {
        self.kinds.iter().all(|k| k.disagreements.is_empty())
    }

    /// 0 when every report agreed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_agree() {
            0
        } else {
            1
        }
    }
}

/// Instance list used by sweeps: the exhaustive block (if requested)
/// followed by `trials` random instances. Deterministic in `opts.seed`.
pub fn sweep_instances(opts: &SweepOptions) -> Result<Vec<(String, OvInstance)>> {
    let mut out = Vec::new();
    if opts.exhaustive {
        for d in 1..=2 {
            for n_a in 1..=2 {
                for n_b in 1..=2 {
                    for (k, inst) in enumerate_instances(n_a, n_b, d).enumerate() {
                        out.push((format!("exh-d{d}-{n_a}x{n_b}-{k}"), inst));
                    }
                }
            }
        }
    }
    if opts.trials > 0 && (opts.max_n == 0 || opts.max_d == 0) {
        return Err(Error::Empty("sweep size range"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for k in 0..opts.trials {
        let n_a = rng.gen_range(1..=opts.max_n);
        let n_b = rng.gen_range(1..=opts.max_n);
        let d = rng.gen_range(1..=opts.max_d);
        let family = random_family(&mut rng);
        let inst = generate_sized(&mut rng, n_a, n_b, d, &family)?;
        out.push((format!("rand-{}-{k}", opts.seed), inst));
    }
    Ok(out)
}

/// Verifies every kind on every sweep instance, in parallel. Counts and
/// the order of reported disagreements do not depend on scheduling.
pub fn run_sweep(opts: &SweepOptions, ctx: &VerifyContext) -> Result<SweepSummary> {
    let instances = if opts.kinds.is_empty() {
        Vec::new()
    } else {
        sweep_instances(opts)?
    };
    let kinds = opts
        .kinds
        .iter()
        .map(|&kind| {
            let reports = instances
                .par_iter()
                .map(|(id, inst)| verify_reduction(kind, inst, id.clone(), ctx))
                .collect::<Result<Vec<_>>>()?;
            Ok(KindSummary {
                kind,
                total: reports.len(),
                agreed: reports.iter().filter(|r| r.agree).count(),
                positives: reports.iter().filter(|r| r.oracle_answer).count(),
                disagreements: reports.into_iter().filter(|r| !r.agree).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSummary { kinds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, Family, GenSpec};
    use crate::reduction::gadget::validated_default;

    fn ctx() -> VerifyContext {
        VerifyContext::new(validated_default().unwrap())
    }

    #[test]
    fn all_ones_instances_agree_negative() {
        let ctx = ctx();
        let ones: &[u8] = &[1, 1, 1];
        let inst = OvInstance::from_rows(&[ones, ones], &[ones]).unwrap();
        for kind in ReductionKind::ALL {
            let r = verify_reduction(kind, &inst, "ones", &ctx).unwrap();
            assert!(r.agree && !r.oracle_answer && !r.reduced_answer, "{kind}");
        }
    }

    #[test]
    fn planted_instance_agrees_positive() {
        let ctx = ctx();
        let inst = generate(&GenSpec {
            n: 8,
            d: 6,
            family: Family::PlantedOrthogonal,
            seed: 3,
        })
        .unwrap();
        for kind in ReductionKind::ALL {
            let r = verify_reduction(kind, &inst, "planted", &ctx).unwrap();
            assert!(r.agree && r.oracle_answer, "{kind}");
        }
    }

    #[test]
    fn caps_enforced() {
        let mut ctx = ctx();
        ctx.caps.max_d = 2;
        let inst = OvInstance::from_rows(&[&[1, 0, 1]], &[&[0, 1, 0]]).unwrap();
        assert!(matches!(
            verify_reduction(ReductionKind::OvToBcp, &inst, "x", &ctx),
            Err(Error::OverCap { .. })
        ));
    }

    #[test]
    fn unvalidated_gadget_is_an_error() {
        let ctx = VerifyContext::new(GadgetConfig::default());
        let inst = OvInstance::from_rows(&[&[1]], &[&[0]]).unwrap();
        assert!(verify_reduction(ReductionKind::OvToFrechet, &inst, "x", &ctx).is_err());
    }

    #[test]
    fn corrupted_reductions_disagree() {
        let mut ctx = ctx();
        ctx.corrupt = true;
        let opts = SweepOptions {
            trials: 20,
            ..SweepOptions::default()
        };
        let s = run_sweep(&opts, &ctx).unwrap();
        assert_eq!(s.exit_code(), 1);
        for k in &s.kinds {
            assert_eq!(k.disagreements.len(), k.positives, "{}", k.kind);
        }
    }

    #[test]
    fn empty_kinds() {
        let opts = SweepOptions {
            kinds: vec![],
            ..SweepOptions::default()
        };
        let s = run_sweep(&opts, &ctx()).unwrap();
        assert!(s.kinds.is_empty());
        assert_eq!(s.exit_code(), 0);
    }

    #[test]
    fn kind_lists() {
        assert_eq!(ReductionKind::parse_list("").unwrap(), vec![]);
        assert_eq!(ReductionKind::parse_list("all").unwrap().len(), 5);
        assert_eq!(
            ReductionKind::parse_list("ov-to-bcp, unbalanced-nn").unwrap(),
            vec![ReductionKind::OvToBcp, ReductionKind::UnbalancedNn]
        );
        assert!(ReductionKind::parse_list("ov-to-sat").is_err());
    }
}
