//! Betti tables: storage, text layout and line records.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}` on the window `0 <= i <= i_max`,
/// `0 <= j <= j_max`. Entries outside the window read as zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub i_max: usize,
    pub j_max: usize,
    /// prime of the ground field
    pub p: u32,
    /// digest of the ring the table belongs to
    pub digest: String,
    /// whether every nonzero entry is known to lie inside the window
    pub complete: bool,
    entries: Vec<Vec<u64>>,
}

impl BettiTable {
    pub fn new(i_max: usize, j_max: usize, p: u32, digest: impl Into<String>) -> Self {
        BettiTable {
            i_max,
            j_max,
            p,
            digest: digest.into(),
            complete: false,
            entries: vec![vec![0; j_max + 1]; i_max + 1],
        }
    }

    /// Builds a table from `(i, j, beta)` triples; the window is the
    /// smallest one containing them.
    pub fn from_entries(entries: &[(usize, usize, u64)]) -> Self {
        let i_max = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let j_max = entries.iter().map(|e| e.1).max().unwrap_or(0);
        let mut t = BettiTable::new(i_max, j_max, 0, "");
        for &(i, j, b) in entries {
            t.set(i, j, b);
        }
        t.complete = true;
        t
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(i).and_then(|row| row.get(j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i][j] = v;
    }

    /// `beta_i = sum_j beta_{i,j}`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.get(i).map_or(0, |r| r.iter().sum())
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.i_max).map(|i| self.total(i)).collect()
    }

    /// Largest `i` with a nonzero entry.
    pub fn pdim(&self) -> usize {
        (0..=self.i_max).rev().find(|&i| self.total(i) > 0).unwrap_or(0)
    }

    /// Nonzero entries in increasing `(i, j)` order.
    pub fn nonzero(&self) -> Vec<(usize, usize, u64)> {
        let mut out = Vec::new();
        for i in 0..=self.i_max {
            for j in 0..=self.j_max {
                let b = self.entries[i][j];
                if b != 0 {
                    out.push((i, j, b));
                }
            }
        }
        out
    }

    /// Same nonzero entries, ignoring window and metadata.
    pub fn same_entries(&self, other: &BettiTable) -> bool {
        self.nonzero() == other.nonzero()
    }

    /// Largest `j - i` over nonzero entries.
    pub fn max_row(&self) -> usize {
        self.nonzero().iter().map(|&(i, j, _)| j.saturating_sub(i)).max().unwrap_or(0)
    }

    /// Macaulay2-style layout: columns are homological degrees `i`, rows
    /// are `j - i`, zeros print as `--`.
    pub fn render(&self) -> String {
        let ncols = self.pdim() + 1;
        let nrows = self.max_row() + 1;
        let cell = |i: usize, r: usize| -> String {
            match self.get(i, i + r) {
                0 => "--".to_string(),
                b => b.to_string(),
            }
        };
        let mut width = 2;
        for i in 0..ncols {
            width = width.max(self.total(i).to_string().len());
            for r in 0..nrows {
                width = width.max(cell(i, r).len());
            }
        }
        let label_w = "total:".len().max(format!("{}:", nrows - 1).len());
        let mut s = String::new();
        let _ = write!(s, "{:label_w$}", "");
        for i in 0..ncols {
            let _ = write!(s, " {i:>width$}");
        }
        s.push('\n');
        let _ = write!(s, "{:>label_w$}", "total:");
        for i in 0..ncols {
            let _ = write!(s, " {:>width$}", self.total(i));
        }
        s.push('\n');
        for r in 0..nrows {
            let _ = write!(s, "{:>label_w$}", format!("{r}:"));
            for i in 0..ncols {
                let _ = write!(s, " {:>width$}", cell(i, r));
            }
            s.push('\n');
        }
        s
    }

    /// Line records: a `window` header, then one line per nonzero entry.
    pub fn to_records(&self) -> String {
        let mut s = format!(
            "window imax={} jmax={} p={} digest={} complete={}\n",
            self.i_max,
            self.j_max,
            self.p,
            if self.digest.is_empty() { "-" } else { &self.digest },
            self.complete
        );
        for (i, j, b) in self.nonzero() {
            let _ = writeln!(s, "i={i} j={j} beta={b}");
        }
        s
    }

    /// Inverse of [`BettiTable::to_records`].
    pub fn from_records(text: &str) -> Result<Self> {
        let mut table: Option<BettiTable> = None;
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields = parse_fields(line, ln + 1)?;
            let get = |k: &str| -> Result<&str> {
                fields
                    .iter()
                    .find(|f| f.0 == k)
                    .map(|f| f.1)
                    .ok_or_else(|| Error::parse(ln + 1, 1, format!("missing field `{k}`")))
            };
            let num = |k: &str| -> Result<u64> {
                get(k)?.parse().map_err(|_| Error::parse(ln + 1, 1, format!("field `{k}` is not a number")))
            };
            if line.starts_with("window") {
                let digest = get("digest")?;
                let mut t = BettiTable::new(
                    num("imax")? as usize,
                    num("jmax")? as usize,
                    num("p")? as u32,
                    if digest == "-" { "" } else { digest },
                );
                t.complete = match get("complete")? {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(Error::parse(ln + 1, 1, format!("bad flag `{other}`")));
                    }
                };
                table = Some(t);
            } else {
                let t =
                    table.as_mut().ok_or_else(|| Error::parse(ln + 1, 1, "entry before window record"))?;
                let (i, j) = (num("i")? as usize, num("j")? as usize);
                if i > t.i_max || j > t.j_max {
                    return Err(Error::parse(ln + 1, 1, format!("entry ({i},{j}) outside window")));
                }
                t.set(i, j, num("beta")?);
            }
        }
        table.ok_or_else(|| Error::parse(1, 1, "no window record"))
    }
}

fn parse_fields(line: &str, ln: usize) -> Result<Vec<(&str, &str)>> {
    line.split_whitespace()
        .filter(|w| *w != "window")
        .map(|w| {
            w.split_once('=').ok_or_else(|| Error::parse(ln, 1, format!("expected key=value, got `{w}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_dashes() {
        let t = BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 1), (2, 4, 2), (3, 5, 1)]);
        let expect = "        0  1  2  3\n\
                      total:  1  3  3  1\n    \
                      0:  1 -- -- --\n    \
                      1: --  3  1 --\n    \
                      2: -- --  2  1\n";
        assert_eq!(t.render(), expect);
    }

    #[test]
    fn records_round_trip() {
        let mut t = BettiTable::new(3, 6, 32003, "abc");
        t.set(0, 0, 1);
        t.set(1, 2, 3);
        t.set(2, 4, 3);
        t.set(3, 6, 1);
        t.complete = true;
        assert_eq!(BettiTable::from_records(&t.to_records()).unwrap(), t);
        assert_eq!(t.pdim(), 3);
        assert_eq!(t.totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn bad_records_rejected() {
        assert!(BettiTable::from_records("i=0 j=0 beta=1\n").is_err());
        assert!(BettiTable::from_records("window imax=1 jmax=1 p=7 digest=- complete=true\ni=2 j=0 beta=1")
            .is_err());
    }
}
