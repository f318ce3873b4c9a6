//! Prime fields and the point/line incidence system over `F_q²`.
//!
//! Rows are pairs `(x, v)`, columns are pairs `(c0, c1)`, and row `(x, v)`
//! contains column `(c0, c1)` exactly when `c0 + c1·x = v (mod q)`. Both are
//! flattened lexicographically: `r = x·q + v`, `c = c0·q + c1`.

use std::fmt;

use crate::error::{Error, Result};

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest prime `p <= x`.
pub fn largest_prime_leq(x: u64) -> Result<u64> {
    if x < 2 {
        return Err(Error::domain(format!("no prime <= {x}")));
    }
    Ok((2..=x).rev().find(|&p| is_prime(p)).expect("2 is prime"))
}

/// The field `Z/qZ` for a prime `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        // row/column indices are q² and must fit a u32 symbol
        if q > 65_521 {
            return Err(Error::domain(format!("field size {q} too large")));
        }
        Ok(PrimeField { q })
    }

    pub fn order(self) -> u64 {
        self.q
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.q
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.q
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.q - b % self.q) % self.q
    }
}

/// Zero-one `q² × q²` matrix stored as sorted per-row column supports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSystem {
    q: u64,
    row_supports: Vec<Vec<u32>>,
}

impl IncidenceSystem {
    /// Wraps arbitrary supports, e.g. to exercise [`check_incidence`]. Each
    /// support is sorted; indices must be below `q²`.
    pub fn from_supports(q: u64, mut row_supports: Vec<Vec<u32>>) -> Result<Self> {
        let n = q * q;
        for support in &mut row_supports {
            if let Some(&c) = support.iter().find(|&&c| u64::from(c) >= n) {
                return Err(Error::SymbolRange {
                    value: i64::from(c),
                    max: n.saturating_sub(1),
                });
            }
            support.sort_unstable();
        }
        Ok(IncidenceSystem { q, row_supports })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.row_supports.len()
    }

    pub fn columns(&self) -> usize {
        (self.q * self.q) as usize
    }

    pub fn row_support(&self, r: usize) -> &[u32] {
        &self.row_supports[r]
    }

    pub fn row_supports(&self) -> &[Vec<u32>] {
        &self.row_supports
    }

    pub fn contains(&self, r: usize, c: u32) -> bool {
        self.row_supports[r].binary_search(&c).is_ok()
    }
}

pub fn build_incidence(q: u64) -> Result<IncidenceSystem> {
    let f = PrimeField::new(q)?;
    let mut row_supports = Vec::with_capacity((q * q) as usize);
    for x in 0..q {
        for v in 0..q {
            // c0 is determined by c1: c0 = v - c1·x
            let mut support: Vec<u32> = (0..q)
                .map(|c1| {
                    let c0 = f.sub(v, f.mul(c1, x));
                    (c0 * q + c1) as u32
                })
                .collect();
            support.sort_unstable();
            row_supports.push(support);
        }
    }
    Ok(IncidenceSystem { q, row_supports })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncidenceReport {
    Pass,
    RowDegree {
        row: usize,
        found: usize,
    },
    /// Two rows share more than one column: a 2×2 all-ones submatrix.
    RowOverlap {
        rows: (usize, usize),
        shared: usize,
    },
    ColumnDegree {
        column: usize,
        found: usize,
    },
    RowCount {
        found: usize,
    },
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        matches!(self, IncidenceReport::Pass)
    }
}

impl fmt::Display for IncidenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceReport::Pass => write!(f, "pass"),
            IncidenceReport::RowCount { found } => write!(f, "system has {found} rows"),
            IncidenceReport::RowDegree { row, found } => {
                write!(f, "row {row} has {found} ones")
            }
            IncidenceReport::RowOverlap {
                rows: (r1, r2),
                shared,
            } => write!(f, "rows {r1},{r2} share {shared} common columns"),
            IncidenceReport::ColumnDegree { column, found } => {
                write!(f, "column {column} has {found} ones")
            }
        }
    }
}

fn intersection_size(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Checks row count and degrees, exhaustive pairwise row intersections,
/// then column degrees. Reports the first violation found.
pub fn check_incidence(sys: &IncidenceSystem) -> IncidenceReport {
    let q = sys.q as usize;
    if sys.rows() != q * q {
        return IncidenceReport::RowCount { found: sys.rows() };
    }
    for (row, support) in sys.row_supports.iter().enumerate() {
        let mut distinct = support.clone();
        distinct.dedup();
        if support.len() != q || distinct.len() != q {
            return IncidenceReport::RowDegree {
                row,
                found: distinct.len(),
            };
        }
    }
    for r1 in 0..sys.rows() {
        for r2 in r1 + 1..sys.rows() {
            let shared = intersection_size(&sys.row_supports[r1], &sys.row_supports[r2]);
            if shared > 1 {
                return IncidenceReport::RowOverlap {
                    rows: (r1, r2),
                    shared,
                };
            }
        }
    }
    let mut degree = vec![0usize; sys.columns()];
    for &c in sys.row_supports.iter().flatten() {
        degree[c as usize] += 1;
    }
    if let Some((column, &found)) = degree.iter().enumerate().find(|(_, &d)| d != q) {
        return IncidenceReport::ColumnDegree { column, found };
    }
    IncidenceReport::Pass
}
