//! Finite quasigroups stored as validated Latin squares.
//!
//! Symbols are dense integers `0..n`. Tables read from 1-based sources (every
//! entry in `1..=n`) are shifted down on construction.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is not square (or empty)")]
    NotSquare,
    #[error("symbol {symbol} at row {row}, column {col} is outside the symbol range")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
    },
    #[error("row {0} repeats a symbol")]
    RowDuplicate(usize),
    #[error("column {0} repeats a symbol")]
    ColumnDuplicate(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An order-`n` quasigroup `(Q, ·)` with `table[x][y] = x·y`.
///
/// Left and right division are answered from inverse lookup tables built once
/// at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    order: usize,
    table: Vec<usize>,
    // ldiv[x * n + z] = x\z
    ldiv: Vec<usize>,
    // rdiv[y * n + z] = z/y
    rdiv: Vec<usize>,
}

impl Quasigroup {
    /// Validates `rows` as a Latin square. Accepts 0-based symbols, or 1-based
    /// symbols spanning exactly `1..=n`.
    pub fn from_table<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.as_ref().len() != n) {
            return Err(TableError::NotSquare);
        }
        let one_based = rows
            .iter()
            .flat_map(|r| r.as_ref().iter())
            .all(|&s| (1..=n).contains(&s));
        let shift = usize::from(one_based);
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            for (col, &symbol) in r.as_ref().iter().enumerate() {
                if symbol < shift || symbol - shift >= n {
                    return Err(TableError::SymbolOutOfRange { row, col, symbol });
                }
                table.push(symbol - shift);
            }
        }
        Self::from_flat(n, table)
    }

    /// Builds from a row-major 0-based table.
    pub fn from_flat(order: usize, table: Vec<usize>) -> Result<Self, TableError> {
        let n = order;
        if n == 0 || table.len() != n * n {
            return Err(TableError::NotSquare);
        }
        const UNSET: usize = usize::MAX;
        let mut ldiv = vec![UNSET; n * n];
        let mut rdiv = vec![UNSET; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                if z >= n {
                    return Err(TableError::SymbolOutOfRange {
                        row: x,
                        col: y,
                        symbol: z,
                    });
                }
                if ldiv[x * n + z] != UNSET {
                    return Err(TableError::RowDuplicate(x));
                }
                ldiv[x * n + z] = y;
            }
        }
        // rows are permutations at this point, so a second scan by column
        // reports the first offending column.
        for y in 0..n {
            for x in 0..n {
                let z = table[x * n + y];
                if rdiv[y * n + z] != UNSET {
                    return Err(TableError::ColumnDuplicate(y));
                }
                rdiv[y * n + z] = x;
            }
        }
        Ok(Self {
            order: n,
            table,
            ldiv,
            rdiv,
        })
    }

    pub(crate) fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Self::from_flat(order, table).expect("generator must produce a Latin square")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `x·y`.
    #[inline]
    pub fn multiply(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// `x\z`: the unique `y` with `x·y = z`.
    #[inline]
    pub fn left_divide(&self, x: usize, z: usize) -> usize {
        self.ldiv[x * self.order + z]
    }

    /// `z/y`: the unique `x` with `x·y = z`.
    #[inline]
    pub fn right_divide(&self, z: usize, y: usize) -> usize {
        self.rdiv[y * self.order + z]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn column(&self, y: usize) -> Vec<usize> {
        (0..self.order).map(|x| self.multiply(x, y)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[usize]> {
        self.table.chunks(self.order)
    }

    /// Row-major 0-based table.
    pub fn as_flat(&self) -> &[usize] {
        &self.table
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        self.rows().map(<[usize]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |x, y| self.multiply(y, x))
    }

    /// Iterates the triple set `{(x, y, x·y)}` in row-major order.
    pub fn triples(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        let n = self.order;
        self.table
            .iter()
            .enumerate()
            .map(move |(i, &z)| [i / n, i % n, z])
    }

    /// Reduced: first row and first column in natural order.
    pub fn is_reduced(&self) -> bool {
        (0..self.order).all(|i| self.multiply(0, i) == i && self.multiply(i, 0) == i)
    }

    /// Two-sided identity element, if any.
    pub fn identity_element(&self) -> Option<usize> {
        (0..self.order).find(|&e| {
            (0..self.order).all(|x| self.multiply(e, x) == x && self.multiply(x, e) == x)
        })
    }

    /// Number of 2×2 Latin subsquares.
    pub fn intercalate_count(&self) -> usize {
        let n = self.order;
        let mut count = 0;
        for r1 in 0..n {
            for r2 in r1 + 1..n {
                for c1 in 0..n {
                    let a = self.multiply(r1, c1);
                    let b = self.multiply(r2, c1);
                    // the column of r2 holding `a` is the only candidate c2
                    let c2 = self.left_divide(r1, b);
                    if c2 > c1 && self.multiply(r2, c2) == a {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Text form: `n` lines of `n` space-separated symbols.
    pub fn to_text(&self, one_based: bool) -> String {
        let shift = usize::from(one_based);
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|s| (s + shift).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text form, with an optional leading `n=<order>` line.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut declared = None;
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if declared.is_some() || !rows.is_empty() {
                    return Err(TableError::Parse {
                        line: line_no,
                        message: "order header must be the first line".into(),
                    });
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| TableError::Parse {
                        line: line_no,
                        message: format!("bad order: {e}"),
                    })?;
                declared = Some(n);
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|e| TableError::Parse {
                        line: line_no,
                        message: format!("bad symbol {tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if let Some(n) = declared {
            if rows.len() != n {
                return Err(TableError::Parse {
                    line: 1,
                    message: format!("header declares order {n} but {} rows follow", rows.len()),
                });
            }
        }
        Self::from_table(&rows)
    }
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Quasigroup")
            .field("order", &self.order)
            .field("rows", &self.to_rows())
            .finish()
    }
}

impl fmt::Display for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl std::str::FromStr for Quasigroup {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
