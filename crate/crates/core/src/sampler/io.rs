//! Ensemble serialization: CSV, JSON, and a binary column-major format.
//!
//! Binary layout (little-endian), 64-byte header then payload:
//!
//! ```text
//! offset  size  field
//!      0     8  magic "MGFBMBIN"
//!      8     2  version (1)
//!     10     2  method (0 = cholesky, 1 = circulant)
//!     12     4  n_times (u32)
//!     16     4  n_paths (u32)
//!     20     8  seed (u64)
//!     28    32  a, b, c, hurst (f64 each)
//!     60     4  padding (zero)
//!     64     —  grid times (n_times f64), then values column-major
//!               (for each time index, all paths' values), f64
//! ```
//!
//! CSV: first row is the grid times, then one row per path; numbers carry 17
//! significant digits so `f64` values round-trip. JSON is the full ensemble
//! object. CSV needs a metadata sidecar ([`EnsembleMeta`]) to be read back.

use std::io::{BufRead, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::TimeGrid;
use crate::kernel::ProcessParams;
use crate::real::Real;
use crate::sampler::{PathEnsemble, SampleMethod, GAUSSIAN_ALGORITHM, RNG_ALGORITHM};

const MAGIC: &[u8; 8] = b"MGFBMBIN";
const VERSION: u16 = 1;
const HEADER_LEN: usize = 64;

/// Provenance record emitted next to formats that cannot hold it inline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EnsembleMeta {
    pub params: ProcessParams<f64>,
    pub seed: u64,
    pub method: SampleMethod,
    pub n_paths: usize,
    pub n_times: usize,
    pub rng: String,
    pub gaussian: String,
}

impl EnsembleMeta {
    pub fn describe<T: Real>(ens: &PathEnsemble<T>) -> Self {
        let p = ens.params();
        Self {
            params: ProcessParams::new(
                p.a().as_f64(),
                p.b().as_f64(),
                p.c().as_f64(),
                p.hurst().as_f64(),
            )
            .expect("valid params stay valid in f64"),
            seed: ens.seed(),
            method: ens.method(),
            n_paths: ens.n_paths(),
            n_times: ens.n_times(),
            rng: RNG_ALGORITHM.to_string(),
            gaussian: GAUSSIAN_ALGORITHM.to_string(),
        }
    }
}

/// 17-significant-digit rendering, round-trip safe for `f64`.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl<T: Real> PathEnsemble<T> {
    pub fn write_binary<W: Write>(&self, w: &mut W) -> Result<()> {
        let n_times = self.n_times();
        let n_paths = self.n_paths();
        if n_times > u32::MAX as usize || n_paths > u32::MAX as usize {
            return Err(Error::Format("ensemble too large for binary header".into()));
        }
        let mut header = [0u8; HEADER_LEN];
        header[0..8].copy_from_slice(MAGIC);
        header[8..10].copy_from_slice(&VERSION.to_le_bytes());
        let method: u16 = match self.method() {
            SampleMethod::Cholesky => 0,
            SampleMethod::Circulant => 1,
        };
        header[10..12].copy_from_slice(&method.to_le_bytes());
        header[12..16].copy_from_slice(&(n_times as u32).to_le_bytes());
        header[16..20].copy_from_slice(&(n_paths as u32).to_le_bytes());
        header[20..28].copy_from_slice(&self.seed().to_le_bytes());
        let p = self.params();
        for (k, v) in [p.a(), p.b(), p.c(), p.hurst()].into_iter().enumerate() {
            header[28 + 8 * k..36 + 8 * k].copy_from_slice(&v.as_f64().to_le_bytes());
        }
        w.write_all(&header)?;
        for &t in self.grid().times() {
            w.write_all(&t.as_f64().to_le_bytes())?;
        }
        // Column-major: one time index at a time across all paths.
        let mut col = Vec::with_capacity(n_paths * 8);
        for j in 0..n_times {
            col.clear();
            for i in 0..n_paths {
                col.extend_from_slice(&self.path(i)[j].as_f64().to_le_bytes());
            }
            w.write_all(&col)?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        let mut line = String::new();
        for (j, &t) in self.grid().times().iter().enumerate() {
            if j > 0 {
                line.push(',');
            }
            line.push_str(&format_value(t.as_f64()));
        }
        line.push('\n');
        w.write_all(line.as_bytes())?;
        for i in 0..self.n_paths() {
            line.clear();
            for (j, &v) in self.path(i).iter().enumerate() {
                if j > 0 {
                    line.push(',');
                }
                line.push_str(&format_value(v.as_f64()));
            }
            line.push('\n');
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: &mut W) -> Result<()>
    where
        T: Serialize,
    {
        serde_json::to_writer(&mut *w, self)
            .map_err(|e| Error::Format(format!("json encode failed: {e}")))?;
        w.write_all(b"\n")?;
        Ok(())
    }
}

impl PathEnsemble<f64> {
    pub fn read_binary<R: Read>(r: &mut R) -> Result<Self> {
        let mut header = [0u8; HEADER_LEN];
        r.read_exact(&mut header)?;
        if &header[0..8] != MAGIC {
            return Err(Error::Format("bad magic; not an ensemble file".into()));
        }
        let version = u16::from_le_bytes(header[8..10].try_into().unwrap());
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let method = match u16::from_le_bytes(header[10..12].try_into().unwrap()) {
            0 => SampleMethod::Cholesky,
            1 => SampleMethod::Circulant,
            m => return Err(Error::Format(format!("unknown method tag {m}"))),
        };
        let n_times = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
        let n_paths = u32::from_le_bytes(header[16..20].try_into().unwrap()) as usize;
        let seed = u64::from_le_bytes(header[20..28].try_into().unwrap());
        let mut fields = [0f64; 4];
        for (k, f) in fields.iter_mut().enumerate() {
            *f = f64::from_le_bytes(header[28 + 8 * k..36 + 8 * k].try_into().unwrap());
        }
        let params = ProcessParams::new(fields[0], fields[1], fields[2], fields[3])
            .map_err(|e| Error::Format(format!("invalid parameters in header: {e}")))?;

        let mut buf = vec![0u8; n_times * 8];
        r.read_exact(&mut buf)?;
        let times: Vec<f64> = buf
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let grid = TimeGrid::new(times).map_err(|e| Error::Format(format!("bad grid: {e}")))?;

        let mut values = vec![0f64; n_paths * n_times];
        let mut col = vec![0u8; n_paths * 8];
        for j in 0..n_times {
            r.read_exact(&mut col)?;
            for (i, c) in col.chunks_exact(8).enumerate() {
                values[i * n_times + j] = f64::from_le_bytes(c.try_into().unwrap());
            }
        }
        PathEnsemble::from_parts(grid, params, seed, method, n_paths, values)
    }

    /// Read the CSV form back; metadata comes from the sidecar.
    pub fn read_csv<R: BufRead>(r: &mut R, meta: &EnsembleMeta) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty csv".into()))??;
        let times = parse_csv_row(&header, 1)?;
        let grid = TimeGrid::new(times).map_err(|e| Error::Format(format!("bad grid: {e}")))?;
        let n_times = grid.len();
        let mut values = Vec::new();
        let mut n_paths = 0;
        for (idx, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row = parse_csv_row(&line, idx + 2)?;
            if row.len() != n_times {
                return Err(Error::Format(format!(
                    "row {} has {} columns, expected {n_times}",
                    idx + 2,
                    row.len()
                )));
            }
            values.extend_from_slice(&row);
            n_paths += 1;
        }
        PathEnsemble::from_parts(grid, meta.params, meta.seed, meta.method, n_paths, values)
    }

    pub fn read_json<R: Read>(r: &mut R) -> Result<Self> {
        serde_json::from_reader(r).map_err(|e| Error::Format(format!("json decode failed: {e}")))
    }
}

fn parse_csv_row(line: &str, lineno: usize) -> Result<Vec<f64>> {
    line.split(',')
        .map(|cell| {
            cell.trim()
                .parse::<f64>()
                .map_err(|e| Error::Format(format!("line {lineno}: bad number '{cell}': {e}")))
        })
        .collect()
}
