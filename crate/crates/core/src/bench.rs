//! Wall-clock scaling measurements, one CSV row per (size, repeat).
//!
//! Runs are strictly sequential. Inputs are generated before the timer
//! starts; only the solver call is measured. For `nn-query` the k-d tree
//! is part of the input, so the timed part is the `n` queries.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frechet::frechet_sq_value;
use crate::gen::{generate_sized, random_curve, Family};
use crate::ov::ov_decide;
use crate::proximity::{bcp_euclid, bcp_frechet, nn_build, nn_query, Dataset, Metric, NnIndex, Query};
use crate::reduction::{embed_euclid, embed_frechet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BenchProblem {
    Ov,
    BcpEuclid,
    BcpFrechet,
    FrechetPair,
    NnQuery,
}

impl BenchProblem {
    pub const ALL: [BenchProblem; 5] = [
        BenchProblem::Ov,
        BenchProblem::BcpEuclid,
        BenchProblem::BcpFrechet,
        BenchProblem::FrechetPair,
        BenchProblem::NnQuery,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchProblem::Ov => "ov",
            BenchProblem::BcpEuclid => "bcp-euclid",
            BenchProblem::BcpFrechet => "bcp-frechet",
            BenchProblem::FrechetPair => "frechet-pair",
            BenchProblem::NnQuery => "nn-query",
        }
    }
}

impl fmt::Display for BenchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchProblem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BenchProblem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bench problem {s:?}")))
    }
}

/// Column order is the CSV schema: `problem,n,d,seed,repeat,wall_ns,answer`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub repeat: usize,
    pub wall_ns: u128,
    pub answer: String,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub problem: BenchProblem,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    /// Vector dimension, or curve length for `bcp-frechet`. Unused by
    /// `frechet-pair`, where `n` is the curve length.
    pub d: usize,
    pub seed: u64,
}

enum Input {
    Ov(crate::model::OvInstance),
    Points(Vec<crate::model::PointD>, Vec<crate::model::PointD>),
    Curves(Vec<crate::model::Curve2>, Vec<crate::model::Curve2>),
    Pair(crate::model::Curve2, crate::model::Curve2),
    Index(NnIndex, Vec<crate::model::PointD>),
}

const CURVE_COORD_BOUND: i64 = 16;

fn make_input(problem: BenchProblem, n: usize, d: usize, seed: u64) -> Result<Input> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ov = |rng: &mut ChaCha8Rng| generate_sized(rng, n, n, d, &Family::UniformRandom);
    Ok(match problem {
        BenchProblem::Ov => Input::Ov(ov(&mut rng)?),
        BenchProblem::BcpEuclid => {
            let e = embed_euclid(&ov(&mut rng)?);
            Input::Points(e.p, e.q)
        }
        BenchProblem::NnQuery => {
            let e = embed_euclid(&ov(&mut rng)?);
            Input::Index(nn_build(Dataset::Points(e.p), Metric::EuclidKdTree)?, e.q)
        }
        BenchProblem::BcpFrechet => {
            let e = embed_frechet(&ov(&mut rng)?);
            Input::Curves(e.p, e.q)
        }
        BenchProblem::FrechetPair => Input::Pair(
            random_curve(&mut rng, n, CURVE_COORD_BOUND)?,
            random_curve(&mut rng, n, CURVE_COORD_BOUND)?,
        ),
    })
}

fn solve(problem: BenchProblem, input: &Input) -> Result<String> {
    Ok(match (problem, input) {
        (BenchProblem::Ov, Input::Ov(inst)) => match ov_decide(inst) {
            Some(w) => format!("{}:{}", w.index_a + 1, w.index_b + 1),
            None => "none".to_string(),
        },
        (BenchProblem::BcpEuclid, Input::Points(p, q)) => bcp_euclid(p, q)?.sq_value.to_string(),
        (BenchProblem::NnQuery, Input::Index(index, q)) => {
            let mut best = None;
            for x in q {
                let (_, d) = nn_query(index, Query::Point(x))?;
                if best.as_ref().is_none_or(|b| d < *b) {
                    best = Some(d);
                }
            }
            best.expect("q is non-empty").to_string()
        }
        (BenchProblem::BcpFrechet, Input::Curves(p, q)) => bcp_frechet(p, q)?.sq_value.to_string(),
        (BenchProblem::FrechetPair, Input::Pair(p, q)) => frechet_sq_value(p, q)?.to_string(),
        _ => unreachable!("input built for this problem"),
    })
}

/// Seed of the input at size `n`; every repeat of a size sees the same input.
pub fn size_seed(seed: u64, n: usize) -> u64 {
    seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs the benchmark, handing each record to `sink` as soon as it is
/// measured, and returns all of them.
pub fn run_bench(opts: &BenchOptions, mut sink: impl FnMut(&BenchRecord) -> Result<()>) -> Result<Vec<BenchRecord>> {
    if opts.sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("sizes must be sorted ascending".into()));
    }
    if opts.sizes.contains(&0) {
        return Err(Error::InvalidArgument("sizes must be positive".into()));
    }
    let mut records = Vec::with_capacity(opts.sizes.len() * opts.repeats);
    if opts.repeats == 0 {
        return Ok(records);
    }
    for &n in &opts.sizes {
        let input = make_input(opts.problem, n, opts.d, size_seed(opts.seed, n))?;
        for repeat in 0..opts.repeats {
            let start = Instant::now();
            let answer = solve(opts.problem, &input)?;
            let wall_ns = start.elapsed().as_nanos();
            let rec = BenchRecord {
                problem: opts.problem.name().to_string(),
                n,
                d: opts.d,
                seed: opts.seed,
                repeat,
                wall_ns,
                answer,
            };
            sink(&rec)?;
            records.push(rec);
        }
    }
    Ok(records)
}

/// Writes the header and then one row per record.
pub fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().has_headers(true).from_writer(w)
}

pub fn write_csv<W: Write>(w: W, records: &[BenchRecord]) -> Result<()> {
    let mut wtr = csv_writer(w);
    if records.is_empty() {
        write_header(&mut wtr)?;
    }
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Header row on its own, for runs that produce no records.
pub fn write_header<W: Write>(wtr: &mut csv::Writer<W>) -> Result<()> {
    wtr.write_record(["problem", "n", "d", "seed", "repeat", "wall_ns", "answer"])?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(r: R) -> Result<Vec<BenchRecord>> {
    let mut rdr = csv::Reader::from_reader(r);
    Ok(rdr.deserialize().collect::<std::result::Result<Vec<_>, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SqDist;
    use crate::rat::Rat;

    fn opts(problem: BenchProblem, sizes: Vec<usize>, repeats: usize) -> BenchOptions {
        BenchOptions {
            problem,
            sizes,
            repeats,
            d: 6,
            seed: 11,
        }
    }

    #[test]
    fn zero_repeats_header_only() {
        let recs = run_bench(&opts(BenchProblem::Ov, vec![4, 8], 0), |_| Ok(())).unwrap();
        assert!(recs.is_empty());
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "problem,n,d,seed,repeat,wall_ns,answer\n");
    }

    #[test]
    fn unsorted_sizes_rejected() {
        assert!(run_bench(&opts(BenchProblem::Ov, vec![8, 4], 1), |_| Ok(())).is_err());
    }

    #[test]
    fn rows_and_determinism() {
        for p in BenchProblem::ALL {
            let o = opts(p, vec![3, 5], 2);
            let a = run_bench(&o, |_| Ok(())).unwrap();
            let b = run_bench(&o, |_| Ok(())).unwrap();
            assert_eq!(a.len(), 4, "{p}");
            let answers = |r: &[BenchRecord]| r.iter().map(|x| x.answer.clone()).collect::<Vec<_>>();
            assert_eq!(answers(&a), answers(&b), "{p}");
            assert_eq!(a[0].answer, a[1].answer);
        }
    }

    #[test]
    fn bcp_euclid_answers_respect_gap() {
        let o = BenchOptions {
            d: 5,
            ..opts(BenchProblem::BcpEuclid, vec![1, 2, 4, 8, 16], 1)
        };
        for r in run_bench(&o, |_| Ok(())).unwrap() {
            let v: Rat = r.answer.parse().unwrap();
            assert!(v == Rat::from_int(5) || v >= Rat::from_int(13), "{}", r.answer);
        }
    }

    #[test]
    fn csv_roundtrip() {
        let recs = run_bench(&opts(BenchProblem::FrechetPair, vec![4], 2), |_| Ok(())).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &recs).unwrap();
        assert!(buf.starts_with(b"problem,n,d,seed,repeat,wall_ns,answer\n"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), recs);
        let v: Rat = recs[0].answer.parse().unwrap();
        assert!(SqDist::new(v).is_ok());
    }
}
