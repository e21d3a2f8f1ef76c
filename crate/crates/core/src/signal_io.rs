//! Signal files: CSV (one node per row) and raw little-endian `f64` pairs
//! with a JSON grid sidecar.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{GridSignal, SpatialGrid};

/// Writes `x0,…,x{n-1},re,im` rows in grid order, with a header line.
pub fn write_csv<W: Write>(f: &GridSignal, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let grid = f.grid();
    let n = grid.n_dims();
    let header: Vec<String> = (0..n).map(|a| format!("x{a}")).chain(["re".into(), "im".into()]).collect();
    writeln!(out, "{}", header.join(","))?;
    let mut x = vec![0.0; n];
    for (i, v) in f.values().iter().enumerate() {
        grid.node_into(i, &mut x);
        for c in &x {
            write!(out, "{c:.17e},")?;
        }
        writeln!(out, "{:.17e},{:.17e}", v.re, v.im)?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a CSV written by [`write_csv`]. The grid is inferred from the
/// coordinate columns, which must enumerate a full grid in row-major order.
pub fn read_csv<R: Read>(input: R) -> Result<GridSignal> {
    let mut lines = BufReader::new(input).lines();
    let header = lines.next().ok_or_else(|| Error::Format("empty CSV".into()))??;
    let cols = header.split(',').count();
    if cols < 3 {
        return Err(Error::Format(format!("need coordinate, re and im columns, got {cols}")));
    }
    let n = cols - 2;
    let mut coords: Vec<Vec<f64>> = Vec::new();
    let mut values = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Format(format!("row {}: {e}", row + 2)))?;
        if fields.len() != cols {
            return Err(Error::Format(format!("row {}: {} fields, expected {cols}", row + 2, fields.len())));
        }
        coords.push(fields[..n].to_vec());
        values.push(Complex64::new(fields[n], fields[n + 1]));
    }
    let grid = infer_grid(&coords)?;
    let mut x = vec![0.0; n];
    for (i, c) in coords.iter().enumerate() {
        grid.node_into(i, &mut x);
        let tol = 1e-9 * (0..n).map(|a| grid.spacing(a)).fold(f64::INFINITY, f64::min);
        if c.iter().zip(&x).any(|(a, b)| (a - b).abs() > tol) {
            return Err(Error::Format(format!("row {} is out of grid order", i + 2)));
        }
    }
    GridSignal::new(grid, values)
}

fn infer_grid(coords: &[Vec<f64>]) -> Result<SpatialGrid> {
    let n = coords.first().map(Vec::len).ok_or_else(|| Error::Format("no data rows".into()))?;
    let mut extent = Vec::with_capacity(n);
    let mut samples = Vec::with_capacity(n);
    let mut origin = Vec::with_capacity(n);
    // the last axis varies fastest
    let mut stride = 1;
    for axis in (0..n).rev() {
        let start = coords[0][axis];
        let mut count = 1;
        while count * stride < coords.len() && coords[count * stride][axis] != start {
            count += 1;
        }
        if count < 2 {
            return Err(Error::Format(format!("axis {axis} has a single coordinate")));
        }
        let dx = coords[stride][axis] - start;
        let l = dx * count as f64 / 2.0;
        extent.push(l);
        samples.push(count);
        origin.push(start + l);
        stride *= count;
    }
    if stride != coords.len() {
        return Err(Error::Format(format!("{} rows do not form a full grid of {stride}", coords.len())));
    }
    extent.reverse();
    samples.reverse();
    origin.reverse();
    SpatialGrid::new(extent, samples, origin)
}

/// Writes `path` (interleaved `re, im` as little-endian `f64`) and the grid
/// sidecar `path.json`.
pub fn write_raw(f: &GridSignal, path: &Path) -> Result<PathBuf> {
    let mut out = BufWriter::new(File::create(path)?);
    for v in f.values() {
        out.write_all(&v.re.to_le_bytes())?;
        out.write_all(&v.im.to_le_bytes())?;
    }
    out.flush()?;
    let sidecar = sidecar_path(path);
    serde_json::to_writer_pretty(BufWriter::new(File::create(&sidecar)?), f.grid())
        .map_err(|e| Error::Format(e.to_string()))?;
    Ok(sidecar)
}

pub fn read_raw(path: &Path) -> Result<GridSignal> {
    let grid: SpatialGrid = serde_json::from_reader(BufReader::new(File::open(sidecar_path(path))?))
        .map_err(|e| Error::Format(e.to_string()))?;
    let grid = grid.validated()?;
    let mut bytes = Vec::new();
    File::open(path)?.read_to_end(&mut bytes)?;
    if bytes.len() != grid.len() * 16 {
        return Err(Error::Format(format!("payload has {} bytes, grid needs {}", bytes.len(), grid.len() * 16)));
    }
    let values = bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8-byte chunk"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8-byte chunk"));
            Complex64::new(re, im)
        })
        .collect();
    GridSignal::new(grid, values)
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Reads a signal by extension: `.csv` as CSV, anything else as raw.
pub fn read_signal(path: &Path) -> Result<GridSignal> {
    if path.extension().is_some_and(|e| e == "csv") {
        read_csv(File::open(path)?)
    } else {
        read_raw(path)
    }
}

pub fn write_signal(f: &GridSignal, path: &Path) -> Result<()> {
    if path.extension().is_some_and(|e| e == "csv") {
        write_csv(f, File::create(path)?)
    } else {
        write_raw(f, path).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GridSignal {
        let grid = SpatialGrid::new(vec![2.0, 3.0], vec![4, 6], vec![0.5, -1.0]).unwrap();
        GridSignal::from_fn(grid, |x| Complex64::new(x[0] * 0.3 + x[1], x[0] - 2.0 * x[1]))
    }

    #[test]
    fn csv_round_trip_recovers_grid_and_values() {
        let f = sample();
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        let g = read_csv(buf.as_slice()).unwrap();
        assert_eq!(g.grid().samples(), f.grid().samples());
        for a in 0..2 {
            assert!((g.grid().extent()[a] - f.grid().extent()[a]).abs() < 1e-12);
            assert!((g.grid().origin()[a] - f.grid().origin()[a]).abs() < 1e-12);
        }
        assert_eq!(g.values(), f.values());
    }

    #[test]
    fn raw_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("signal.f64");
        let f = sample();
        write_raw(&f, &path).unwrap();
        assert_eq!(read_raw(&path).unwrap(), f);
    }

    #[test]
    fn truncated_payload_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("signal.f64");
        write_raw(&sample(), &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
        assert!(matches!(read_raw(&path), Err(Error::Format(_))));
    }
}
