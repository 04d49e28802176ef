use std::fmt;
use std::str::FromStr;

use super::kdtree::KdTree;
use crate::error::{Error, Result};
use crate::frechet::frechet_sq_value;
use crate::model::{squared_euclidean, Curve2, PointD, SqDist};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Metric {
    EuclidLinear,
    EuclidKdTree,
    /// Linear scan only; no sublinear structure is expected to exist here.
    FrechetLinear,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::EuclidLinear => "euclid-linear",
            Metric::EuclidKdTree => "euclid-kdtree",
            Metric::FrechetLinear => "frechet-linear",
        })
    }
}

impl FromStr for Metric {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclid-linear" => Ok(Metric::EuclidLinear),
            "euclid-kdtree" => Ok(Metric::EuclidKdTree),
            "frechet-linear" => Ok(Metric::FrechetLinear),
            _ => Err(Error::MetricMismatch("unknown metric")),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Dataset {
    Points(Vec<PointD>),
    Curves(Vec<Curve2>),
}

#[derive(Clone, Copy, Debug)]
pub enum Query<'a> {
    Point(&'a PointD),
    Curve(&'a Curve2),
}

/// Preprocessed set `P`; immutable once built.
#[derive(Clone, Debug)]
pub enum NnIndex {
    EuclidLinear(Vec<PointD>),
    EuclidKdTree(KdTree),
    FrechetLinear(Vec<Curve2>),
}

pub fn nn_build(data: Dataset, metric: Metric) -> Result<NnIndex> {
    match (data, metric) {
        (Dataset::Points(p), Metric::EuclidLinear | Metric::EuclidKdTree) => {
            let dim = p.first().ok_or(Error::Empty("set P"))?.dim();
            if let Some(bad) = p.iter().find(|x| x.dim() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: bad.dim(),
                });
            }
            Ok(if metric == Metric::EuclidKdTree {
                NnIndex::EuclidKdTree(KdTree::build(p))
            } else {
                NnIndex::EuclidLinear(p)
            })
        }
        (Dataset::Curves(c), Metric::FrechetLinear) => {
            if c.is_empty() {
                return Err(Error::Empty("set P"));
            }
            Ok(NnIndex::FrechetLinear(c))
        }
        (Dataset::Points(_), Metric::FrechetLinear) => Err(Error::MetricMismatch(
            "frechet-linear needs curves",
        )),
        (Dataset::Curves(_), _) => Err(Error::MetricMismatch(
            "euclidean metrics need points",
        )),
    }
}

/// Exact nearest stored element as `(position, squared distance)`.
pub fn nn_query(index: &NnIndex, q: Query<'_>) -> Result<(usize, SqDist)> {
    match (index, q) {
        (NnIndex::EuclidLinear(p), Query::Point(q)) => {
            check_dim(p[0].dim(), q)?;
            scan(p, |x| squared_euclidean(x, q))
        }
        (NnIndex::EuclidKdTree(t), Query::Point(q)) => {
            check_dim(t.dim(), q)?;
            Ok(t.nearest(q))
        }
        (NnIndex::FrechetLinear(c), Query::Curve(q)) => scan(c, |x| frechet_sq_value(x, q)),
        (NnIndex::FrechetLinear(_), Query::Point(_)) => {
            Err(Error::MetricMismatch("curve index queried with a point"))
        }
        (_, Query::Curve(_)) => Err(Error::MetricMismatch("point index queried with a curve")),
    }
}

impl NnIndex {
    pub fn len(&self) -> usize {
        match self {
            NnIndex::EuclidLinear(p) => p.len(),
            NnIndex::EuclidKdTree(t) => t.points().len(),
            NnIndex::FrechetLinear(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn metric(&self) -> Metric {
        match self {
            NnIndex::EuclidLinear(_) => Metric::EuclidLinear,
            NnIndex::EuclidKdTree(_) => Metric::EuclidKdTree,
            NnIndex::FrechetLinear(_) => Metric::FrechetLinear,
        }
    }
}

fn check_dim(dim: usize, q: &PointD) -> Result<()> {
    if q.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: q.dim(),
        });
    }
    Ok(())
}

fn scan<T>(items: &[T], dist: impl Fn(&T) -> Result<SqDist>) -> Result<(usize, SqDist)> {
    let mut best: Option<(usize, SqDist)> = None;
    for (i, x) in items.iter().enumerate() {
        let d = dist(x)?;
        if best.as_ref().is_none_or(|(_, b)| d < *b) {
            best = Some((i, d));
        }
    }
    best.ok_or(Error::Empty("set P"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    #[test]
    fn singleton_answers_everything() {
        for metric in [Metric::EuclidLinear, Metric::EuclidKdTree] {
            let idx = nn_build(Dataset::Points(vec![PointD::from_ints(&[4, 4])]), metric).unwrap();
            for q in [[0, 0], [4, 4], [-9, 3]] {
                assert_eq!(nn_query(&idx, Query::Point(&PointD::from_ints(&q))).unwrap().0, 0);
            }
        }
    }

    #[test]
    fn fractional_query() {
        let p = vec![PointD::from_ints(&[0, 0]), PointD::from_ints(&[2, 0])];
        let q = PointD::new(vec![Rat::new(9, 10), Rat::zero()]);
        for metric in [Metric::EuclidLinear, Metric::EuclidKdTree] {
            let idx = nn_build(Dataset::Points(p.clone()), metric).unwrap();
            let (i, d) = nn_query(&idx, Query::Point(&q)).unwrap();
            assert_eq!(i, 0);
            assert_eq!(d, SqDist::new(Rat::new(81, 100)).unwrap());
        }
    }

    #[test]
    fn exact_match_is_zero() {
        let p: Vec<_> = (0..20).map(|k| PointD::from_ints(&[k, -k, k * k])).collect();
        let idx = nn_build(Dataset::Points(p.clone()), Metric::EuclidKdTree).unwrap();
        for (k, x) in p.iter().enumerate() {
            assert_eq!(nn_query(&idx, Query::Point(x)).unwrap(), (k, SqDist::zero()));
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let pts = vec![PointD::from_ints(&[0, 0])];
        let curve = Curve2::from_ints(&[(0, 0)]).unwrap();
        assert!(nn_build(Dataset::Points(pts.clone()), Metric::FrechetLinear).is_err());
        assert!(nn_build(Dataset::Curves(vec![curve.clone()]), Metric::EuclidKdTree).is_err());
        assert!(nn_build(Dataset::Points(vec![]), Metric::EuclidLinear).is_err());

        let idx = nn_build(Dataset::Points(pts), Metric::EuclidKdTree).unwrap();
        assert!(nn_query(&idx, Query::Curve(&curve)).is_err());
        assert!(nn_query(&idx, Query::Point(&PointD::from_ints(&[1]))).is_err());

        let idx = nn_build(Dataset::Curves(vec![curve]), Metric::FrechetLinear).unwrap();
        assert!(nn_query(&idx, Query::Point(&PointD::from_ints(&[0, 0]))).is_err());
    }

    #[test]
    fn metric_names_roundtrip() {
        for m in [Metric::EuclidLinear, Metric::EuclidKdTree, Metric::FrechetLinear] {
            assert_eq!(m.to_string().parse::<Metric>().unwrap(), m);
        }
    }
}
