//! CSV and `.dat` writers with fixed float formatting.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// 16 significant digits in scientific notation, e.g. `7.615000000000000e-6`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.15e}")
    } else {
        format!("{v}")
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|| "-".into())
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

/// Header plus rows, kept as strings so CSV and `.dat` share one source.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Whitespace separated, header as a `#` comment.
    pub fn to_dat(&self) -> String {
        let mut s = format!("# {}\n", self.header.join(" "));
        for r in &self.rows {
            s.push_str(&r.join(" "));
            s.push('\n');
        }
        s
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    let io = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut f = fs::File::create(path).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)
}

/// Writes `<stem>.csv` and, if requested, `<stem>.dat` into `dir`.
pub fn write_table(dir: &Path, stem: &str, table: &Table, dat: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let csv = dir.join(format!("{stem}.csv"));
    write_file(&csv, &table.to_csv())?;
    written.push(csv);
    if dat {
        let path = dir.join(format!("{stem}.dat"));
        write_file(&path, &table.to_dat())?;
        written.push(path);
    }
    Ok(written)
}

/// File-name friendly version of a label.
pub fn slug(s: &str) -> String {
    s.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}
