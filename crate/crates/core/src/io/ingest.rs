//! Reading one numeric column from a comma-separated file.

use std::fs::File;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::dist_est::Sample;
use crate::error::{Error, Result};

/// Zero-based column index, or a header name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl FromStr for ColumnSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::config("empty column selector"));
        }
        Ok(match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct Ingested {
    pub sample: Sample,
    /// Rows whose value parsed but was NaN or infinite, or whose cell was empty.
    pub dropped_nonfinite: usize,
    /// Rows whose cell did not parse as a number.
    pub dropped_nonnumeric: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IngestOptions {
    /// How many non-numeric cells are skipped before the file is rejected.
    pub nonnumeric_tolerance: usize,
}

pub fn ingest_csv(path: &Path, column: &ColumnSelector, opts: IngestOptions) -> Result<Ingested> {
    let file = File::open(path).map_err(|e| Error::data(format!("cannot open {}: {e}", path.display())))?;
    ingest_reader(file, column, opts).map_err(|e| match e {
        Error::Data(msg) => Error::data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// A first row whose selected cell is not a number is taken as a header.
pub fn ingest_reader<R: Read>(reader: R, column: &ColumnSelector, opts: IngestOptions) -> Result<Ingested> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);

    let mut values = Vec::new();
    let (mut nonfinite, mut nonnumeric) = (0, 0);
    let mut index = match column {
        ColumnSelector::Index(i) => Some(*i),
        ColumnSelector::Name(_) => None,
    };
    let mut first = true;

    for (row, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::data(format!("malformed CSV: {e}")))?;
        if first {
            first = false;
            if let ColumnSelector::Name(name) = column {
                let pos = rec.iter().position(|h| h == name);
                index = Some(pos.ok_or_else(|| Error::data(format!("no column named {name:?} in header")))?);
                continue;
            }
            let cell = rec.get(index.unwrap()).unwrap_or("");
            if !cell.is_empty() && cell.parse::<f64>().is_err() {
                continue;
            }
        }
        let col = index.unwrap();
        let cell = rec.get(col).unwrap_or("");
        if cell.is_empty() {
            nonfinite += 1;
            continue;
        }
        match cell.parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(_) => nonfinite += 1,
            Err(_) => {
                nonnumeric += 1;
                if nonnumeric > opts.nonnumeric_tolerance {
                    return Err(Error::data(format!(
                        "non-numeric value {cell:?} at row {} in column {col}",
                        row + 1
                    )));
                }
            }
        }
    }

    if values.len() < 2 {
        return Err(Error::data(format!("insufficient data: {} valid rows, at least 2 needed", values.len())));
    }
    Ok(Ingested { sample: Sample::new(values)?, dropped_nonfinite: nonfinite, dropped_nonnumeric: nonnumeric })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str, col: ColumnSelector, tol: usize) -> Result<Ingested> {
        ingest_reader(text.as_bytes(), &col, IngestOptions { nonnumeric_tolerance: tol })
    }

    #[test]
    fn sorts_and_skips_header() {
        let got = read("3\n1\n2\n", ColumnSelector::Index(0), 0).unwrap();
        assert_eq!(got.sample.values(), &[1.0, 2.0, 3.0]);
        let got = read("age\n3\n1\n2\n", ColumnSelector::Index(0), 0).unwrap();
        assert_eq!(got.sample.values(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn selects_by_name_and_index() {
        let text = "year,age\n2001,71.5\n2001,80\n2001,64.25\n";
        let by_name = read(text, ColumnSelector::Name("age".into()), 0).unwrap();
        let by_index = read(text, ColumnSelector::Index(1), 0).unwrap();
        assert_eq!(by_name.sample.values(), &[64.25, 71.5, 80.0]);
        assert_eq!(by_name.sample.values(), by_index.sample.values());
        assert!(matches!(read(text, ColumnSelector::Name("sex".into()), 0), Err(Error::Data(_))));
    }

    #[test]
    fn counts_dropped_rows() {
        let got = read("x\n1\nNaN\ninf\n\n2\n-3e-1\n", ColumnSelector::Index(0), 0).unwrap();
        assert_eq!(got.sample.values(), &[-0.3, 1.0, 2.0]);
        assert_eq!(got.dropped_nonfinite, 2);

        let text = "1\nabc\n2\nn/a\n3\n";
        assert!(read(text, ColumnSelector::Index(0), 1).is_err());
        let got = read(text, ColumnSelector::Index(0), 2).unwrap();
        assert_eq!(got.dropped_nonnumeric, 2);
        assert_eq!(got.sample.len(), 3);
    }

    #[test]
    fn too_few_rows() {
        let err = read("5\n", ColumnSelector::Index(0), 0).unwrap_err();
        assert!(matches!(err, Error::Data(ref m) if m.contains("insufficient data")));
        assert!(read("header\n", ColumnSelector::Index(0), 0).is_err());
        assert!(read("", ColumnSelector::Index(0), 0).is_err());
    }

    #[test]
    fn selector_parsing() {
        assert_eq!("2".parse::<ColumnSelector>().unwrap(), ColumnSelector::Index(2));
        assert_eq!("age".parse::<ColumnSelector>().unwrap(), ColumnSelector::Name("age".into()));
        assert!("".parse::<ColumnSelector>().is_err());
    }
}
