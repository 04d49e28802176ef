//! Plain-text file formats. Blank lines and lines starting with `#` are
//! ignored everywhere.
//!
//! OV instance:
//! ```text
//! n_A n_B d
//! <n_A lines of d space-separated bits: the vectors of A>
//! <n_B lines: the vectors of B>
//! ```
//!
//! Curve (one block), vertices in order, coordinates as exact `num/den`:
//! ```text
//! <vertex count>
//! x y
//! ```
//! A curve set file is several curve blocks back to back.
//!
//! Point set:
//! ```text
//! <count> <dim>
//! c_1 c_2 … c_dim
//! ```

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{BitVector, Curve2, OvInstance, Point2, PointD};
use crate::rat::Rat;

struct Lines<'a> {
    inner: Box<dyn Iterator<Item = (usize, std::io::Result<String>)> + 'a>,
}

impl<'a> Lines<'a> {
    fn new<R: BufRead + 'a>(r: R) -> Self {
        Lines {
            inner: Box::new(r.lines().enumerate().map(|(i, l)| (i + 1, l))),
        }
    }

    /// Next meaningful line with its 1-based line number.
    fn next(&mut self) -> Result<Option<(usize, String)>> {
        for (no, line) in self.inner.by_ref() {
            let line = line?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Ok(Some((no, t.to_string())));
        }
        Ok(None)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, String)> {
        self.next()?.ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of input, expected {what}"),
        })
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn usizes(line: usize, s: &str, count: usize) -> Result<Vec<usize>> {
    let v = s
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(line, format!("bad count {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != count {
        return Err(parse_err(line, format!("expected {count} numbers, got {}", v.len())));
    }
    Ok(v)
}

fn rats(line: usize, s: &str, count: usize) -> Result<Vec<Rat>> {
    let v = s
        .split_whitespace()
        .map(|t| {
            t.parse::<Rat>()
                .map_err(|_| parse_err(line, format!("bad rational {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != count {
        return Err(parse_err(line, format!("expected {count} coordinates, got {}", v.len())));
    }
    Ok(v)
}

fn trailing(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next()? {
        Some((no, _)) => Err(parse_err(no, "unexpected trailing content")),
        None => Ok(()),
    }
}

pub fn write_instance<W: Write>(mut w: W, inst: &OvInstance, header: Option<&str>) -> Result<()> {
    if let Some(h) = header {
        for l in h.lines() {
            if l.starts_with('#') {
                writeln!(w, "{l}")?;
            } else {
                writeln!(w, "# {l}")?;
            }
        }
    }
    writeln!(w, "{} {} {}", inst.a().len(), inst.b().len(), inst.dim())?;
    for v in inst.a().iter().chain(inst.b()) {
        let row: Vec<&str> = v.iter().map(|b| if b { "1" } else { "0" }).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_instance<R: BufRead>(r: R) -> Result<OvInstance> {
    let mut lines = Lines::new(r);
    let (no, head) = lines.expect("header `n_A n_B d`")?;
    let h = usizes(no, &head, 3)?;
    let (n_a, n_b, d) = (h[0], h[1], h[2]);
    let mut rows = Vec::with_capacity(n_a + n_b);
    for _ in 0..n_a + n_b {
        let (no, line) = lines.expect("bit vector row")?;
        let bits = line
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(parse_err(no, format!("bad bit {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        if bits.len() != d {
            return Err(parse_err(no, format!("expected {d} bits, got {}", bits.len())));
        }
        rows.push(BitVector::new(bits).map_err(|e| parse_err(no, e.to_string()))?);
    }
    trailing(&mut lines)?;
    let b = rows.split_off(n_a);
    OvInstance::new(rows, b)
}

pub fn write_curve<W: Write>(mut w: W, c: &Curve2) -> Result<()> {
    writeln!(w, "{}", c.len())?;
    for p in c.points() {
        writeln!(w, "{} {}", p.x, p.y)?;
    }
    Ok(())
}

pub fn write_curve_set<W: Write>(mut w: W, curves: &[Curve2]) -> Result<()> {
    for c in curves {
        write_curve(&mut w, c)?;
    }
    Ok(())
}

fn read_curve_block(lines: &mut Lines<'_>, first: (usize, String)) -> Result<Curve2> {
    let (no, head) = first;
    let n = usizes(no, &head, 1)?[0];
    if n == 0 {
        return Err(parse_err(no, "curve needs at least one vertex"));
    }
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = lines.expect("vertex `x y`")?;
        let mut xy = rats(no, &line, 2)?;
        let y = xy.pop().expect("two coordinates");
        let x = xy.pop().expect("two coordinates");
        pts.push(Point2::new(x, y));
    }
    Curve2::new(pts)
}

/// Reads exactly one curve.
pub fn read_curve<R: BufRead>(r: R) -> Result<Curve2> {
    let mut lines = Lines::new(r);
    let first = lines.expect("vertex count")?;
    let c = read_curve_block(&mut lines, first)?;
    trailing(&mut lines)?;
    Ok(c)
}

pub fn read_curve_set<R: BufRead>(r: R) -> Result<Vec<Curve2>> {
    let mut lines = Lines::new(r);
    let mut out = Vec::new();
    while let Some(first) = lines.next()? {
        out.push(read_curve_block(&mut lines, first)?);
    }
    Ok(out)
}

pub fn write_points<W: Write>(mut w: W, points: &[PointD]) -> Result<()> {
    let dim = points.first().map_or(0, PointD::dim);
    writeln!(w, "{} {}", points.len(), dim)?;
    for p in points {
        let row: Vec<String> = p.coords().iter().map(Rat::to_string).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

pub fn read_points<R: BufRead>(r: R) -> Result<Vec<PointD>> {
    let mut lines = Lines::new(r);
    let (no, head) = lines.expect("header `count dim`")?;
    let h = usizes(no, &head, 2)?;
    let (count, dim) = (h[0], h[1]);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let (no, line) = lines.expect("point row")?;
        out.push(PointD::new(rats(no, &line, dim)?));
    }
    trailing(&mut lines)?;
    Ok(out)
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<OvInstance> {
    read_instance(open(path.as_ref())?)
}

pub fn save_instance(path: impl AsRef<Path>, inst: &OvInstance, header: Option<&str>) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_instance(&mut w, inst, header)?;
    w.flush()?;
    Ok(())
}

pub fn load_curve(path: impl AsRef<Path>) -> Result<Curve2> {
    read_curve(open(path.as_ref())?)
}

pub fn save_curve(path: impl AsRef<Path>, curve: &Curve2) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_curve(&mut w, curve)?;
    w.flush()?;
    Ok(())
}

pub fn load_curve_set(path: impl AsRef<Path>) -> Result<Vec<Curve2>> {
    read_curve_set(open(path.as_ref())?)
}

pub fn save_curve_set(path: impl AsRef<Path>, curves: &[Curve2]) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_curve_set(&mut w, curves)?;
    w.flush()?;
    Ok(())
}

pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<PointD>> {
    read_points(open(path.as_ref())?)
}

pub fn save_points(path: impl AsRef<Path>, points: &[PointD]) -> Result<()> {
    let mut w = create(path.as_ref())?;
    write_points(&mut w, points)?;
    w.flush()?;
    Ok(())
}
