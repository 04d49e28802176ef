//! Vector gadgets and the OR gadget: one pair of curves whose discrete
//! Fréchet distance is at most 1 iff the whole OV instance has an
//! orthogonal pair.
//!
//! Layout (`δ` small, all coordinates exact):
//!
//! * A-side vector gadget `VG(a)`: vertex `i` sits at `y = 1/2 - (-1)^{a_i} δ²`,
//!   B-side `VG(b)` at `y = -1/2 + (-1)^{b_i} δ²`. Matching vertices are at
//!   vertical distance `1 - 2δ²`, `1`, `1` or `1 + 2δ²`; only the last one,
//!   `a_i = b_i = 1`, exceeds the threshold.
//! * The x-coordinate labels the position: `-δ` for vertex 1, `+δ` for even
//!   vertices, `+3δ` for odd vertices from 3 on. Two vertices with different
//!   labels are more than 1 apart, consecutive vertices never share a label,
//!   and only gadget starts carry `-δ`. A gadget on one side can therefore
//!   only be walked in lockstep with one whole gadget on the other side.
//! * `π = (s, VG(a_1), t, s, VG(a_2), t, …)`,
//!   `σ = (s, s*, VG(b_1), …, VG(b_n), t*, t)` with `s = (-1/2, 0)`,
//!   `t = (1/2, 0)`, `s* = (-1/2, -1)`, `t* = (1/2, -1)`. `s*` and `t*`
//!   are far from every A-side gadget vertex; while `σ` stands on them, `π`
//!   must stand on an `s` or a `t` respectively.
//!
//! Correctness of a concrete `δ` is checked by [`validate_gadget_config`]
//! against the brute-force OV oracle before any gadget output is produced.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frechet::frechet_decide;
use crate::gen::{enumerate_instances, generate_sized, random_family};
use crate::model::{BitVector, Curve2, OvInstance, Point2, SqDist};
use crate::ov::ov_decide;
use crate::rat::Rat;

use rand::Rng;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    A,
    B,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GadgetConfig {
    delta: Rat,
    validated: bool,
}

impl GadgetConfig {
    /// Passes the sweep; see [`validate_gadget_config`].
    pub fn default_delta() -> Rat {
        Rat::new(1, 16)
    }

    pub fn new(delta: Rat) -> Result<Self> {
        if !delta.is_positive() || delta.square() >= delta {
            return Err(Error::InvalidGadgetConfig(format!(
                "delta must satisfy 0 < delta and delta^2 < delta, got {delta}"
            )));
        }
        Ok(GadgetConfig {
            delta,
            validated: false,
        })
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
}

impl Default for GadgetConfig {
    fn default() -> Self {
        GadgetConfig::new(GadgetConfig::default_delta()).expect("1/16 is in range")
    }
}

fn half() -> Rat {
    Rat::new(1, 2)
}

pub fn point_s() -> Point2 {
    Point2::new(-half(), Rat::zero())
}

pub fn point_t() -> Point2 {
    Point2::new(half(), Rat::zero())
}

pub fn point_s_star() -> Point2 {
    Point2::new(-half(), Rat::from_int(-1))
}

pub fn point_t_star() -> Point2 {
    Point2::new(half(), Rat::from_int(-1))
}

/// Curve of length `d` encoding `z` on the given side.
pub fn vector_gadget(z: &BitVector, side: Side, cfg: &GadgetConfig) -> Curve2 {
    let delta = &cfg.delta;
    let delta_sq = delta.square();
    let points = z
        .iter()
        .enumerate()
        .map(|(k, bit)| {
            let i = k + 1;
            let x = match i {
                1 => -delta,
                _ if i % 2 == 0 => delta.clone(),
                _ => delta * &Rat::from_int(3),
            };
            // (-1)^bit δ²
            let signed = if bit { -&delta_sq } else { delta_sq.clone() };
            let y = match side {
                Side::A => half() - signed,
                Side::B => -half() + signed,
            };
            Point2::new(x, y)
        })
        .collect();
    Curve2::new(points).expect("bit vectors are non-empty")
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrGadgetOutput {
    pub pi: Curve2,
    pub sigma: Curve2,
    pub tau_sq: SqDist,
}

/// Builds the OR gadget curves. Refuses configurations that have not been
/// through [`validate_gadget_config`].
pub fn or_gadget(inst: &OvInstance, cfg: &GadgetConfig) -> Result<OrGadgetOutput> {
    if !cfg.validated {
        return Err(Error::UnvalidatedGadget(cfg.delta.to_string()));
    }
    Ok(build_or_gadget(inst, cfg))
}

fn build_or_gadget(inst: &OvInstance, cfg: &GadgetConfig) -> OrGadgetOutput {
    let d = inst.dim();
    let mut pi = Vec::with_capacity(inst.a().len() * (d + 2));
    for a in inst.a() {
        pi.push(point_s());
        pi.extend_from_slice(vector_gadget(a, Side::A, cfg).points());
        pi.push(point_t());
    }
    let mut sigma = Vec::with_capacity(inst.b().len() * d + 4);
    sigma.push(point_s());
    sigma.push(point_s_star());
    for b in inst.b() {
        sigma.extend_from_slice(vector_gadget(b, Side::B, cfg).points());
    }
    sigma.push(point_t_star());
    sigma.push(point_t());
    OrGadgetOutput {
        pi: Curve2::new(pi).expect("A is non-empty"),
        sigma: Curve2::new(sigma).expect("sigma has its four anchors"),
        tau_sq: SqDist::from_int(1),
    }
}

#[derive(Clone, Debug)]
pub struct ValidationOptions {
    pub trials: usize,
    pub max_n: usize,
    pub max_d: usize,
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            trials: 500,
            max_n: 8,
            max_d: 6,
            seed: 0x5eed_0f0a,
        }
    }
}

/// Upper limits for random validation instances.
pub const VALIDATION_MAX_N: usize = 64;
pub const VALIDATION_MAX_D: usize = 32;

#[derive(Clone, Debug)]
pub enum GadgetValidation {
    Passed {
        config: GadgetConfig,
        checked: usize,
    },
    Failed {
        counterexample: OvInstance,
        /// What the OV oracle says about the counterexample.
        expected: bool,
        checked: usize,
    },
}

impl GadgetValidation {
    pub fn passed(&self) -> bool {
        matches!(self, GadgetValidation::Passed { .. })
    }

    pub fn config(&self) -> Option<&GadgetConfig> {
        match self {
            GadgetValidation::Passed { config, .. } => Some(config),
            GadgetValidation::Failed { .. } => None,
        }
    }
}

/// Checks the OR gadget against `ov_decide` on every instance with
/// `|A|, |B| <= 2` and `d <= 2`, then on `trials` random instances with
/// sides up to `max_n` and dimension up to `max_d`. On success the returned
/// config carries the validated flag.
pub fn validate_gadget_config(
    cfg: &GadgetConfig,
    opts: &ValidationOptions,
) -> Result<GadgetValidation> {
    if opts.max_n > VALIDATION_MAX_N {
        return Err(Error::OverCap {
            what: "validation max_n",
            size: opts.max_n,
            cap: VALIDATION_MAX_N,
        });
    }
    if opts.max_d > VALIDATION_MAX_D {
        return Err(Error::OverCap {
            what: "validation max_d",
            size: opts.max_d,
            cap: VALIDATION_MAX_D,
        });
    }
    if opts.trials > 0 && (opts.max_n == 0 || opts.max_d == 0) {
        return Err(Error::Empty("validation size range"));
    }

    let mut instances: Vec<OvInstance> = Vec::new();
    for d in 1..=2 {
        for n_a in 1..=2 {
            for n_b in 1..=2 {
                instances.extend(enumerate_instances(n_a, n_b, d));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let n_a = rng.gen_range(1..=opts.max_n);
        let n_b = rng.gen_range(1..=opts.max_n);
        let d = rng.gen_range(1..=opts.max_d);
        let family = random_family(&mut rng);
        instances.push(generate_sized(&mut rng, n_a, n_b, d, &family)?);
    }

    let checked = instances.len();
    let failure = instances.into_par_iter().find_map_first(|inst| {
        let out = build_or_gadget(&inst, cfg);
        let expected = ov_decide(&inst).is_some();
        let got = frechet_decide(&out.pi, &out.sigma, &out.tau_sq).expect("non-empty curves");
        (got != expected).then_some((inst, expected))
    });
    Ok(match failure {
        None => GadgetValidation::Passed {
            config: GadgetConfig {
                delta: cfg.delta.clone(),
                validated: true,
            },
            checked,
        },
        Some((counterexample, expected)) => GadgetValidation::Failed {
            counterexample,
            expected,
            checked,
        },
    })
}

/// Default `δ`, validated with the default sweep.
pub fn validated_default() -> Result<GadgetConfig> {
    match validate_gadget_config(&GadgetConfig::default(), &ValidationOptions::default())? {
        GadgetValidation::Passed { config, .. } => Ok(config),
        GadgetValidation::Failed { .. } => Err(Error::InvalidGadgetConfig(format!(
            "default delta {} failed validation",
            GadgetConfig::default_delta()
        ))),
    }
}
