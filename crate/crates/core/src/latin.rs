//! Latin squares of prime order and the linear family of mutually
//! orthogonal squares that drives every construction in this crate.
//!
//! Cells are addressed and reported 1-based, matching the usual `[n]`
//! notation; storage is 0-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Latin square of order `n`. Construction guarantees that every row and
/// every column is a permutation of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LatinSquareJson", into = "LatinSquareJson")]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

/// `{"order": n, "rows": [[...], ...]}` with 1-based values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatinSquareJson {
    pub order: usize,
    pub rows: Vec<Vec<usize>>,
}

impl TryFrom<LatinSquareJson> for LatinSquare {
    type Error = Error;

    fn try_from(value: LatinSquareJson) -> Result<Self> {
        if value.rows.len() != value.order {
            return Err(Error::contract(format!(
                "order {} but {} rows",
                value.order,
                value.rows.len()
            )));
        }
        LatinSquare::from_rows(&value.rows)
    }
}

impl From<LatinSquare> for LatinSquareJson {
    fn from(sq: LatinSquare) -> Self {
        LatinSquareJson {
            order: sq.order,
            rows: sq.rows(),
        }
    }
}

impl LatinSquare {
    /// Accepts 1-based rows; rejects arrays that are not Latin.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        if !is_latin(rows)? {
            return Err(Error::contract("rows do not form a Latin square"));
        }
        Ok(LatinSquare {
            order: rows.len(),
            cells: rows.iter().flatten().map(|&x| x - 1).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry in row `j`, column `k` (both 1-based), as a value in `1..=n`.
    pub fn get(&self, j: usize, k: usize) -> usize {
        assert!((1..=self.order).contains(&j) && (1..=self.order).contains(&k));
        self.cells[(j - 1) * self.order + (k - 1)] + 1
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x + 1).collect())
            .collect()
    }

    /// True iff the `n²` superimposed pairs are pairwise distinct.
    pub fn is_orthogonal_to(&self, other: &LatinSquare) -> Result<bool> {
        if self.order != other.order {
            return Err(Error::contract(format!(
                "orders differ: {} vs {}",
                self.order, other.order
            )));
        }
        let n = self.order;
        let mut seen = vec![false; n * n];
        for (&a, &b) in self.cells.iter().zip(&other.cells) {
            let slot = &mut seen[a * n + b];
            if *slot {
                return Ok(false);
            }
            *slot = true;
        }
        Ok(true)
    }
}

/// Grid layout with ruled cells, one row per line.
impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.order.to_string().len();
        let rule = format!("+{}", format!("{}+", "-".repeat(width + 2)).repeat(self.order));
        writeln!(f, "{rule}")?;
        for row in self.rows() {
            write!(f, "|")?;
            for x in row {
                write!(f, " {x:>width$} |")?;
            }
            writeln!(f)?;
            writeln!(f, "{rule}")?;
        }
        Ok(())
    }
}

pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    a.is_orthogonal_to(b)
}

/// Checks the row and column permutation conditions of a 1-based array.
/// Ragged arrays and entries outside `1..=n` are contract violations.
pub fn is_latin(rows: &[Vec<usize>]) -> Result<bool> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::contract("empty array"));
    }
    for (r, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::contract(format!("row {} has length {}, expected {n}", r + 1, row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::contract(format!("entry {x} outside 1..={n}")));
        }
    }
    let mut row_seen = vec![false; n * n];
    let mut col_seen = vec![false; n * n];
    for (r, row) in rows.iter().enumerate() {
        for (c, &x) in row.iter().enumerate() {
            let (rs, cs) = (r * n + x - 1, c * n + x - 1);
            if row_seen[rs] || col_seen[cs] {
                return Ok(false);
            }
            row_seen[rs] = true;
            col_seen[cs] = true;
        }
    }
    Ok(true)
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Rejects orders for which the linear family is not defined.
pub fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderTooSmall(n));
    }
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    Ok(())
}

/// `L_i(j, k)` for the linear family, without building the square:
/// `1 + ((j - 1) + i(k - 1)) mod n`, all arguments 1-based.
pub fn linear_entry(n: usize, i: usize, j: usize, k: usize) -> usize {
    1 + ((j - 1) + i * (k - 1)) % n
}

/// The squares `L_1, ..., L_{n-1}` with `L_i(j, k) = j + i(k - 1) (mod n)`,
/// residues represented in `1..=n`. Pairwise orthogonal for prime `n`.
pub fn mols_family(n: usize) -> Result<Vec<LatinSquare>> {
    check_order(n)?;
    Ok((1..n)
        .map(|i| LatinSquare {
            order: n,
            cells: (1..=n)
                .flat_map(|j| (1..=n).map(move |k| linear_entry(n, i, j, k) - 1))
                .collect(),
        })
        .collect())
}
