//! Text persistence shared by every model file: one `acx-gnn v1` header line,
//! optional `#` metadata comments, then row-major weight matrices with one
//! row per line. Floats are printed in shortest round-trip form, so
//! save/load is bit-exact.

use crate::error::{Error, Result};
use crate::numeric::DenseMatrix;
use std::path::{Path, PathBuf};

pub(crate) const FORMAT_NAME: &str = "acx-gnn";
pub(crate) const FORMAT_VERSION: &str = "v1";

pub(crate) struct ModelWriter {
    buf: String,
}

impl ModelWriter {
    pub fn new(header_rest: &str, snapshot: Option<&str>) -> Self {
        let mut buf = format!("{FORMAT_NAME} {FORMAT_VERSION} {header_rest}\n");
        if let Some(hash) = snapshot {
            buf.push_str(&format!("# snapshot {hash}\n"));
        }
        ModelWriter { buf }
    }

    pub fn push_matrix(&mut self, m: &DenseMatrix) {
        for r in 0..m.rows() {
            let row: Vec<String> = m.row(r).iter().map(|v| format!("{v}")).collect();
            self.buf.push_str(&row.join(" "));
            self.buf.push('\n');
        }
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

pub(crate) struct ModelReader {
    path: PathBuf,
    /// Whitespace tokens of the header line after the version tag.
    pub header: Vec<String>,
    pub snapshot: Option<String>,
    lines: Vec<(usize, String)>,
    cursor: usize,
}

impl ModelReader {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Format {
            path: path.to_path_buf(),
            msg: e.to_string(),
        })?;
        let mut lines_iter = text.lines().enumerate();
        let (_, header_line) = lines_iter.next().ok_or_else(|| Error::Format {
            path: path.to_path_buf(),
            msg: "empty file".into(),
        })?;
        let mut header: Vec<String> = header_line.split_whitespace().map(String::from).collect();
        if header.len() < 2 || header[0] != FORMAT_NAME || header[1] != FORMAT_VERSION {
            return Err(Error::Version {
                path: path.to_path_buf(),
                found: header_line.to_string(),
                expected: format!("{FORMAT_NAME} {FORMAT_VERSION} ..."),
            });
        }
        header.drain(..2);
        let mut snapshot = None;
        let mut lines = Vec::new();
        for (idx, line) in lines_iter {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(hash) = rest.strip_prefix("snapshot ") {
                    snapshot = Some(hash.trim().to_string());
                }
                continue;
            }
            lines.push((idx + 1, line.to_string()));
        }
        Ok(ModelReader {
            path: path.to_path_buf(),
            header,
            snapshot,
            lines,
            cursor: 0,
        })
    }

    pub fn next_matrix(&mut self, rows: usize, cols: usize) -> Result<DenseMatrix> {
        let mut values = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let (line_no, line) = self.lines.get(self.cursor).ok_or_else(|| Error::Format {
                path: self.path.clone(),
                msg: format!("truncated file: expected {rows}x{cols} matrix rows"),
            })?;
            self.cursor += 1;
            let mut count = 0;
            for token in line.split_whitespace() {
                let v: f64 = token.parse().map_err(|_| Error::Parse {
                    path: self.path.clone(),
                    line: *line_no,
                    msg: format!("bad float {token:?}"),
                })?;
                values.push(v);
                count += 1;
            }
            if count != cols {
                return Err(Error::Parse {
                    path: self.path.clone(),
                    line: *line_no,
                    msg: format!("expected {cols} values per row, got {count}"),
                });
            }
        }
        DenseMatrix::from_vec(rows, cols, values)
    }

    pub fn finish(self) -> Result<()> {
        if self.cursor != self.lines.len() {
            return Err(Error::Format {
                path: self.path,
                msg: format!(
                    "{} unexpected trailing data lines",
                    self.lines.len() - self.cursor
                ),
            });
        }
        Ok(())
    }
}
