use crate::model::{BitVector, Curve2, OvInstance, Point2, PointD, SqDist};
use crate::rat::Rat;

/// `P = 𝒜(A)`, `Q = ℬ(B)` in `R^d` with threshold `τ² = d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EuclidEmbedding {
    pub p: Vec<PointD>,
    pub q: Vec<PointD>,
    pub tau_sq: SqDist,
}

/// `p_i = 1 + 2 a_i`, so every coordinate is 1 or 3.
pub fn euclid_point_a(a: &BitVector) -> PointD {
    PointD::new(a.iter().map(|bit| Rat::from_int(1 + 2 * bit as i64)).collect())
}

/// `q_i = 2 - 2 b_i`, so every coordinate is 2 or 0.
pub fn euclid_point_b(b: &BitVector) -> PointD {
    PointD::new(b.iter().map(|bit| Rat::from_int(2 - 2 * bit as i64)).collect())
}

/// Per coordinate `|p_i - q_i|` is 3 when `a_i = b_i = 1` and 1 otherwise,
/// so `|𝒜(a) - ℬ(b)|² = d + 8⟨a,b⟩`.
pub fn embed_euclid(inst: &OvInstance) -> EuclidEmbedding {
    EuclidEmbedding {
        p: inst.a().iter().map(euclid_point_a).collect(),
        q: inst.b().iter().map(euclid_point_b).collect(),
        tau_sq: SqDist::from_int(inst.dim() as u64),
    }
}

/// The OV → bichromatic closest pair reduction. Same instance as
/// [`embed_euclid`]; the closest pair is within `τ` iff an orthogonal pair
/// exists.
pub fn reduce_ov_to_bcp(inst: &OvInstance) -> EuclidEmbedding {
    embed_euclid(inst)
}

/// Curves of length `d` with threshold `τ² = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrechetEmbedding {
    pub p: Vec<Curve2>,
    pub q: Vec<Curve2>,
    pub tau_sq: SqDist,
}

/// `π_i = (3i, 1 + 2a_i)` for `i = 1..d`.
pub fn frechet_curve_a(a: &BitVector) -> Curve2 {
    curve(a, |bit| 1 + 2 * bit as i64)
}

/// `σ_i = (3i, 2 - 2b_i)` for `i = 1..d`.
pub fn frechet_curve_b(b: &BitVector) -> Curve2 {
    curve(b, |bit| 2 - 2 * bit as i64)
}

fn curve(z: &BitVector, y: impl Fn(bool) -> i64) -> Curve2 {
    Curve2::new(
        z.iter()
            .enumerate()
            .map(|(k, bit)| Point2::from_ints(3 * (k as i64 + 1), y(bit)))
            .collect(),
    )
    .expect("bit vectors are non-empty")
}

/// Off-diagonal vertex pairs are at squared distance >= 9, so the only
/// traversal under 3 is the lockstep one, whose cost is 1 exactly when
/// the vectors are orthogonal.
pub fn embed_frechet(inst: &OvInstance) -> FrechetEmbedding {
    FrechetEmbedding {
        p: inst.a().iter().map(frechet_curve_a).collect(),
        q: inst.b().iter().map(frechet_curve_b).collect(),
        tau_sq: SqDist::from_int(1),
    }
}
