//! Domain types shared by every module: Boolean vectors, OV instances,
//! points, planar curves and squared distances.
//!
//! Nothing here uses floating point. Distances are only ever compared in
//! squared form, so a threshold `τ` is carried around as `τ²`.

use std::fmt;

use crate::error::{Error, Result};
use crate::rat::Rat;

/// A vector in `{0,1}^d`, `d >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    bits: Vec<bool>,
}

impl BitVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Empty("bit vector"));
        }
        Ok(BitVector { bits })
    }

    /// Builds from `0`/`1` bytes, rejecting anything else.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let bits = bits
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::NotABit(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        BitVector::new(bits)
    }

    pub fn ones(d: usize) -> Result<Self> {
        BitVector::new(vec![true; d])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// 0-based access.
    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.bits.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// `⟨a,b⟩ = Σ a_i b_i`.
pub fn inner_product(a: &BitVector, b: &BitVector) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(a.bits.iter().zip(&b.bits).filter(|(x, y)| **x && **y).count())
}

/// Orthogonality test for vectors already known to share a dimension.
pub(crate) fn orthogonal(a: &BitVector, b: &BitVector) -> bool {
    !a.bits.iter().zip(&b.bits).any(|(x, y)| *x && *y)
}

/// An Orthogonal Vectors instance `(A, B)` over `{0,1}^d`. The two sides
/// may have different sizes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OvInstance {
    a: Vec<BitVector>,
    b: Vec<BitVector>,
    d: usize,
}

impl OvInstance {
    pub fn new(a: Vec<BitVector>, b: Vec<BitVector>) -> Result<Self> {
        let first = a.first().ok_or(Error::Empty("set A"))?;
        if b.is_empty() {
            return Err(Error::Empty("set B"));
        }
        let d = first.len();
        for v in a.iter().chain(&b) {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
        }
        Ok(OvInstance { a, b, d })
    }

    /// Convenience for tests and examples: rows of `0`/`1` bytes.
    pub fn from_rows(a: &[&[u8]], b: &[&[u8]]) -> Result<Self> {
        let conv = |rows: &[&[u8]]| {
            rows.iter()
                .map(|r| BitVector::from_bits(r))
                .collect::<Result<Vec<_>>>()
        };
        OvInstance::new(conv(a)?, conv(b)?)
    }

    pub fn a(&self) -> &[BitVector] {
        &self.a
    }

    pub fn b(&self) -> &[BitVector] {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.d
    }
}

/// A point in `R^d` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointD {
    coords: Vec<Rat>,
}

impl PointD {
    pub fn new(coords: Vec<Rat>) -> Self {
        PointD { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        PointD::new(coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, axis: usize) -> &Rat {
        &self.coords[axis]
    }
}

/// Exact squared Euclidean distance `Σ (p_i - q_i)²`.
pub fn squared_euclidean(p: &PointD, q: &PointD) -> Result<SqDist> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let sum = p
        .coords
        .iter()
        .zip(&q.coords)
        .fold(Rat::zero(), |acc, (x, y)| acc + (x - y).square());
    Ok(SqDist(sum))
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(Rat::from_int(x), Rat::from_int(y))
    }

    pub fn sq_dist(&self, other: &Point2) -> SqDist {
        SqDist((&self.x - &other.x).square() + (&self.y - &other.y).square())
    }
}

/// A planar polyline `(π_1, …, π_n)`, `n >= 1`. Documentation and file
/// formats index vertices from 1; the accessors here are 0-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Curve2 {
    points: Vec<Point2>,
}

impl Curve2 {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Empty("curve"));
        }
        Ok(Curve2 { points })
    }

    pub fn from_ints(points: &[(i64, i64)]) -> Result<Self> {
        Curve2::new(
            points
                .iter()
                .map(|&(x, y)| Point2::from_ints(x, y))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &Point2 {
        &self.points[i]
    }
}

/// A squared distance; never negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SqDist(Rat);

impl SqDist {
    pub fn new(value: Rat) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::NegativeDistance(value.to_string()));
        }
        Ok(SqDist(value))
    }

    pub fn zero() -> Self {
        SqDist(Rat::zero())
    }

    pub fn from_int(v: u64) -> Self {
        SqDist(Rat::from_int(v as i64))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn into_value(self) -> Rat {
        self.0
    }
}

impl fmt::Display for SqDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
