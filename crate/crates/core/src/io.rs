//! Signal files: CSV with the header `index,x,re,im`.
//!
//! Values are written with 17 significant digits so a write/read round trip
//! is bit-exact for finite doubles.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{DomainLabel, SampledSignal, UniformGrid};

pub const HEADER: [&str; 4] = ["index", "x", "re", "im"];

/// Maximum relative deviation of a row spacing from the mean spacing.
pub const SPACING_TOLERANCE: f64 = 1e-9;

/// One parsed row of a signal file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalFileRecord {
    pub index: u64,
    pub coordinate: f64,
    pub value: Complex64,
}

/// Parses the rows of a signal file. The header line is optional.
pub fn read_records(path: &Path) -> Result<Vec<SignalFileRecord>> {
    let file = File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })?;
    parse_records(file, path)
}

/// Parses signal rows from any reader; `path` only labels errors.
pub fn parse_records(input: impl Read, path: &Path) -> Result<Vec<SignalFileRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(input);

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| csv_error(path, e))?;
        let line = row.position().map_or(0, |p| p.line());
        if row.iter().all(str::is_empty) {
            continue;
        }
        if records.is_empty()
            && row
                .iter()
                .zip(HEADER)
                .all(|(a, b)| a.eq_ignore_ascii_case(b))
            && row.len() == 4
        {
            continue;
        }
        if row.len() != 4 {
            return Err(parse_error(
                path,
                line,
                format!("expected 4 fields, found {}", row.len()),
            ));
        }
        let index: u64 = row[0]
            .parse()
            .map_err(|_| parse_error(path, line, format!("bad index `{}`", &row[0])))?;
        let mut nums = [0.0f64; 3];
        for (slot, field) in nums.iter_mut().zip(row.iter().skip(1)) {
            *slot = field
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| parse_error(path, line, format!("bad number `{field}`")))?;
        }
        if index != records.len() as u64 {
            return Err(parse_error(
                path,
                line,
                format!(
                    "index {index} breaks the contiguous sequence (expected {})",
                    records.len()
                ),
            ));
        }
        records.push(SignalFileRecord {
            index,
            coordinate: nums[0],
            value: Complex64::new(nums[1], nums[2]),
        });
    }
    Ok(records)
}

/// Reads a signal file onto its inferred uniform grid.
pub fn read_signal(path: impl AsRef<Path>, domain: DomainLabel) -> Result<SampledSignal> {
    let path = path.as_ref();
    signal_from_records(read_records(path)?, path, domain)
}

/// Builds a signal from parsed rows, checking the grid is uniform.
pub fn signal_from_records(
    records: Vec<SignalFileRecord>,
    path: &Path,
    domain: DomainLabel,
) -> Result<SampledSignal> {
    if records.is_empty() {
        return Err(Error::EmptyFile {
            path: path.to_path_buf(),
        });
    }
    if records.len() < 2 {
        return Err(Error::InvalidGrid(format!(
            "{}: a grid needs at least 2 rows",
            path.display()
        )));
    }
    let first = records[0].coordinate;
    let last = records[records.len() - 1].coordinate;
    let step = (last - first) / (records.len() - 1) as f64;
    if step.is_nan() || step <= 0.0 {
        return Err(Error::NonUniformGrid {
            path: path.to_path_buf(),
            row: 1,
            spacing: records[1].coordinate - first,
            expected: step,
        });
    }
    for (row, pair) in records.windows(2).enumerate() {
        let spacing = pair[1].coordinate - pair[0].coordinate;
        if (spacing - step).abs() > SPACING_TOLERANCE * step {
            return Err(Error::NonUniformGrid {
                path: path.to_path_buf(),
                row: row + 1,
                spacing,
                expected: step,
            });
        }
    }
    let grid = UniformGrid::new(first, step, records.len())?;
    SampledSignal::new(grid, records.into_iter().map(|r| r.value).collect(), domain)
}

/// Writes rows `index,x,re,im`. Coordinates are the grid points.
pub fn write_signal(path: impl AsRef<Path>, signal: &SampledSignal) -> Result<()> {
    let mut out = BufWriter::new(File::create(path.as_ref())?);
    write_signal_to(&mut out, signal)?;
    out.flush()?;
    Ok(())
}

pub fn write_signal_to(out: &mut impl Write, signal: &SampledSignal) -> Result<()> {
    writeln!(out, "{}", HEADER.join(","))?;
    for (i, (x, v)) in signal.grid().points().zip(signal.values()).enumerate() {
        writeln!(out, "{i},{x:.16e},{:.16e},{:.16e}", v.re, v.im)?;
    }
    Ok(())
}

/// Writes `(x, value)` rows for points that need not be uniformly spaced.
pub fn write_rows(
    path: impl AsRef<Path>,
    rows: impl IntoIterator<Item = (f64, Complex64)>,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path.as_ref())?);
    writeln!(out, "{}", HEADER.join(","))?;
    for (i, (x, v)) in rows.into_iter().enumerate() {
        writeln!(out, "{i},{x:.16e},{:.16e},{:.16e}", v.re, v.im)?;
    }
    out.flush()?;
    Ok(())
}

fn parse_error(path: &Path, line: u64, reason: String) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    }
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => parse_error(path, line, format!("{other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn file_with(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn reads_three_rows() {
        let f = file_with("0,0.0,1.0,0.0\n1,0.1,2.0,-1.0\n2,0.2,3.0,0.5\n");
        let s = read_signal(f.path(), DomainLabel::Time).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.values()[1], Complex64::new(2.0, -1.0));
        assert_eq!(s.domain(), DomainLabel::Time);
    }

    #[test]
    fn header_is_skipped() {
        let f = file_with("index,x,re,im\n0,-1,0,0\n1,0,1,0\n2,1,0,0\n");
        let s = read_signal(f.path(), DomainLabel::Coordinate).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.grid().x_min(), -1.0);
        assert_eq!(s.grid().step(), 1.0);
    }

    #[test]
    fn distinct_errors() {
        let f = file_with("0,0.0,1,0\n1,0.1,1,0\n2,0.2,1,0\n3,0.4,1,0\n");
        let e = read_signal(f.path(), DomainLabel::Time).unwrap_err();
        assert!(matches!(e, Error::NonUniformGrid { .. }), "{e}");

        let f = file_with("index,x,re,im\n");
        let e = read_signal(f.path(), DomainLabel::Time).unwrap_err();
        assert!(matches!(e, Error::EmptyFile { .. }), "{e}");

        let f = file_with("0,0.0,1,0\n1,0.1,oops,0\n");
        let e = read_signal(f.path(), DomainLabel::Time).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");

        let f = file_with("0,0.0,1,0\n2,0.1,1,0\n");
        assert!(matches!(
            read_signal(f.path(), DomainLabel::Time),
            Err(Error::Parse { .. })
        ));

        let f = file_with("0,0.0,1\n");
        assert!(matches!(
            read_signal(f.path(), DomainLabel::Time),
            Err(Error::Parse { .. })
        ));

        let codes: Vec<u8> = [
            Error::NonUniformGrid {
                path: "a".into(),
                row: 0,
                spacing: 0.0,
                expected: 0.0,
            },
            Error::EmptyFile { path: "a".into() },
            Error::Parse {
                path: "a".into(),
                line: 0,
                reason: String::new(),
            },
        ]
        .iter()
        .map(Error::code)
        .collect();
        assert_eq!(codes, vec![21, 22, 20]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn round_trip_is_bit_exact(
            values in prop::collection::vec((prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
                                             prop::num::f64::NORMAL), 2..50),
            x_min in -1e3f64..1e3,
            step in 1e-3f64..10.0,
        ) {
            let grid = UniformGrid::new(x_min, step, values.len()).unwrap();
            let vals: Vec<Complex64> = values.iter().map(|(a, b)| Complex64::new(*a, *b)).collect();
            let s = SampledSignal::new(grid, vals, DomainLabel::Coordinate).unwrap();
            let f = tempfile::NamedTempFile::new().unwrap();
            write_signal(f.path(), &s).unwrap();
            let back = read_signal(f.path(), DomainLabel::Coordinate).unwrap();
            for (a, b) in s.values().iter().zip(back.values()) {
                prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
                prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            prop_assert!(back.grid().same_as(s.grid()) || (back.grid().step() - step).abs() < 1e-9 * step);
        }
    }
}
