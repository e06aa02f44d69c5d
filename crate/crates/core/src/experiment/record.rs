use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{FracError, Result};

/// One output row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationRecord {
    pub t: f64,
    pub value: f64,
    pub analytic: f64,
    pub abs_error: f64,
    pub stored_points: usize,
    pub conv_terms: usize,
    /// Seconds spent stepping up to this row, excluding output.
    pub wall_clock: f64,
}

impl SimulationRecord {
    pub fn new(t: f64, value: f64, analytic: f64, stored_points: usize, conv_terms: usize, wall_clock: f64) -> Self {
        Self {
            t,
            value,
            analytic,
            abs_error: (value - analytic).abs(),
            stored_points,
            conv_terms,
            wall_clock,
        }
    }
}

pub const CSV_HEADER: &str = "t,value,analytic,abs_error,stored_points,conv_terms,wall_clock";

fn io_err(path: &Path, source: std::io::Error) -> FracError {
    FracError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `# key = value` comment lines, the header row and one row per
/// record. Floats carry 17 significant digits. The file is written next to
/// `path` and renamed into place, so a failed write leaves nothing behind.
pub fn emit_csv(records: &[SimulationRecord], path: &Path, comments: &[(String, String)]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| FracError::Config(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));

    let result = (|| -> std::io::Result<()> {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        write_csv(&mut w, records, comments)?;
        w.into_inner().map_err(|e| e.into_error())?.sync_all()
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(io_err(path, e));
    }
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io_err(path, e)
    })
}

pub fn write_csv<W: Write>(w: &mut W, records: &[SimulationRecord], comments: &[(String, String)]) -> std::io::Result<()> {
    for (k, v) in comments {
        writeln!(w, "# {k} = {v}")?;
    }
    writeln!(w, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{},{:.16e}",
            r.t, r.value, r.analytic, r.abs_error, r.stored_points, r.conv_terms, r.wall_clock
        )?;
    }
    Ok(())
}

/// Parses rows written by [`write_csv`], skipping comments and the header.
pub fn read_csv(text: &str) -> Result<Vec<SimulationRecord>> {
    let bad = |line: &str| FracError::Config(format!("malformed csv row '{line}'"));
    let mut out = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line == CSV_HEADER || line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(bad(line));
        }
        let p = |s: &str| s.parse::<f64>().map_err(|_| bad(line));
        let u = |s: &str| s.parse::<usize>().map_err(|_| bad(line));
        out.push(SimulationRecord {
            t: p(f[0])?,
            value: p(f[1])?,
            analytic: p(f[2])?,
            abs_error: p(f[3])?,
            stored_points: u(f[4])?,
            conv_terms: u(f[5])?,
            wall_clock: p(f[6])?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("e.csv");
        emit_csv(&[], &p, &[]).unwrap();
        assert_eq!(fs::read_to_string(&p).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let r = SimulationRecord::new(0.1 + 0.2, 1.0 / 3.0, std::f64::consts::PI, 17, 16, 1e-7);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.csv");
        emit_csv(&[r], &p, &[("alpha".into(), "0.5".into())]).unwrap();
        let text = fs::read_to_string(&p).unwrap();
        assert!(text.starts_with("# alpha = 0.5\n"));
        assert!(!text.contains('\r'));
        let back = read_csv(&text).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].t.to_bits(), r.t.to_bits());
        assert_eq!(back[0].value.to_bits(), r.value.to_bits());
        assert_eq!(back[0].analytic.to_bits(), r.analytic.to_bits());
        assert_eq!(back[0], r);
    }

    #[test]
    fn failed_write_leaves_no_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("missing").join("x.csv");
        assert!(matches!(emit_csv(&[], &p, &[]), Err(FracError::Io { .. })));
        assert!(!p.exists());
    }
}
