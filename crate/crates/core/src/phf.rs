//! Perfect hash families: verification, a closed form for two symbols and
//! a backtracking search.

use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};

/// `N x k` array over `v` symbols; every `t` columns must have a row with
/// pairwise distinct entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PhfDoc", into = "PhfDoc")]
pub struct PhfArray {
    pub v: u32,
    pub t: u32,
    k: usize,
    rows: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhfDoc {
    v: u32,
    t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    array: Vec<Vec<u32>>,
}

impl TryFrom<PhfDoc> for PhfArray {
    type Error = Error;
    fn try_from(doc: PhfDoc) -> Result<Self> {
        let k = match (doc.k, doc.array.first()) {
            (Some(k), _) => k,
            (None, Some(row)) => row.len(),
            (None, None) => return Err(precondition("empty array needs an explicit column count k")),
        };
        PhfArray::new(doc.array, k, doc.v, doc.t)
    }
}

impl From<PhfArray> for PhfDoc {
    fn from(a: PhfArray) -> Self {
        let k = a.rows.is_empty().then_some(a.k);
        PhfDoc { v: a.v, t: a.t, k, array: a.rows }
    }
}

/// Outcome of [`verify_phf`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum PhfCheck {
    Valid,
    /// Lexicographically first column set with no separating row.
    Invalid { columns: Vec<usize> },
}

impl PhfCheck {
    pub fn is_valid(&self) -> bool {
        *self == PhfCheck::Valid
    }
}

impl PhfArray {
    /// Checks dimensions and symbol ranges.
    pub fn new(rows: Vec<Vec<u32>>, k: usize, v: u32, t: u32) -> Result<Self> {
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(precondition(format!("row {i} has {} entries, expected {k}", row.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(&x) = row.iter().find(|&&x| x >= v) {
                return Err(precondition(format!("row {i} holds symbol {x} >= v = {v}")));
            }
        }
        Ok(PhfArray { v, t, k, rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.k
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.rows[row][col]
    }

    /// The first `k` columns.
    pub fn truncate_columns(&self, k: usize) -> Result<Self> {
        if k > self.k {
            return Err(precondition(format!("cannot keep {k} of {} columns", self.k)));
        }
        Ok(PhfArray { v: self.v, t: self.t, k, rows: self.rows.iter().map(|r| r[..k].to_vec()).collect() })
    }

    fn separated(&self, cols: &[usize]) -> bool {
        self.rows.iter().any(|row| {
            let mut seen = 0u64;
            cols.iter().all(|&c| {
                let bit = 1u64 << row[c];
                let fresh = seen & bit == 0;
                seen |= bit;
                fresh
            })
        })
    }

    /// First bad `t`-set whose smallest column is `first`, if any.
    pub fn first_bad_with_min(&self, first: usize) -> Option<Vec<usize>> {
        let t = self.t as usize;
        if t == 0 || first + t > self.k {
            return None;
        }
        let mut cols: Vec<usize> = (first..first + t).collect();
        loop {
            if !self.separated(&cols) {
                return Some(cols);
            }
            // advance cols[1..] as a combination of first+1..k
            let mut i = t;
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                if cols[i] < self.k - t + i {
                    cols[i] += 1;
                    for j in i + 1..t {
                        cols[j] = cols[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

fn check_shape(a: &PhfArray) -> Result<()> {
    if a.t as usize > a.column_count() {
        return Err(precondition(format!("t = {} exceeds k = {}", a.t, a.column_count())));
    }
    if a.v > 64 {
        return Err(Error::Unsupported("more than 64 symbols".into()));
    }
    Ok(())
}

/// Exhaustive check over all `t`-subsets of columns.
pub fn verify_phf(array: &PhfArray) -> Result<PhfCheck> {
    check_shape(array)?;
    for first in 0..array.column_count() {
        if let Some(columns) = array.first_bad_with_min(first) {
            return Ok(PhfCheck::Invalid { columns });
        }
    }
    Ok(PhfCheck::Valid)
}

/// Column `j` is the binary expansion of `j` over `ceil(log2 k)` rows, most
/// significant bit in row 0.
pub fn binary_separating(k: usize) -> PhfArray {
    let k = k.max(1);
    let n = (usize::BITS - (k - 1).leading_zeros()) as usize;
    let rows = (0..n).map(|r| (0..k).map(|j| ((j >> (n - 1 - r)) & 1) as u32).collect()).collect();
    PhfArray { v: 2, t: 2, k, rows }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PhfArray),
    NoneFound,
    BudgetExceeded,
}

struct PhfSearch {
    n: usize,
    v: u64,
    t: usize,
    /// rows of each (t-1)-subset of placed columns whose entries are
    /// pairwise distinct, as a row mask, with the subset
    cache: Vec<(Vec<usize>, u64)>,
    cache_marks: Vec<usize>,
    digits: Vec<Vec<u32>>,
}

impl PhfSearch {
    fn digits_of(&self, mut code: u64) -> Vec<u32> {
        let mut d = alloc::vec![0; self.n];
        for slot in d.iter_mut().rev() {
            *slot = (code % self.v) as u32;
            code /= self.v;
        }
        d
    }

    fn fits(&self, cand: &[u32]) -> bool {
        self.cache.iter().all(|(cols, mask)| {
            (0..self.n).any(|r| mask >> r & 1 == 1 && cols.iter().all(|&c| self.digits[c][r] != cand[r]))
        })
    }

    /// Registers the (t-1)-subsets that end in the newest column.
    fn push_column(&mut self, digits: Vec<u32>) {
        self.cache_marks.push(self.cache.len());
        let j = self.digits.len();
        self.digits.push(digits);
        let m = self.t - 1;
        if m == 0 || j + 1 < m {
            return;
        }
        // all (m-1)-subsets of 0..j, each extended by j
        let mut pick: Vec<usize> = (0..m - 1).collect();
        loop {
            let mut cols = pick.clone();
            cols.push(j);
            let mask = (0..self.n).fold(0u64, |acc, r| {
                let mut seen = 0u64;
                let distinct = cols.iter().all(|&c| {
                    let bit = 1u64 << self.digits[c][r];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                });
                acc | (u64::from(distinct) << r)
            });
            self.cache.push((cols, mask));
            let k = m - 1;
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if pick[i] < j - k + i {
                    pick[i] += 1;
                    for q in i + 1..k {
                        pick[q] = pick[q - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn pop_column(&mut self) {
        self.digits.pop();
        let mark = self.cache_marks.pop().expect("column to pop");
        self.cache.truncate(mark);
    }
}

/// Backtracking over columns as base-`v` codes in strictly increasing
/// order, the first column fixed to zero (symbols may be renamed per row).
/// A candidate column must separate every `(t-1)`-set of earlier columns.
pub fn search_phf(n: usize, k: usize, v: u32, t: u32, node_budget: u64) -> Result<SearchOutcome> {
    if t == 0 || t as usize > k {
        return Err(precondition(format!("search needs 1 <= t <= k, got t = {t}, k = {k}")));
    }
    if n > 64 || v > 64 {
        return Err(Error::Unsupported("search beyond 64 rows or symbols".into()));
    }
    if t > v || n == 0 {
        return Ok(SearchOutcome::NoneFound);
    }
    if t == 1 {
        return Ok(SearchOutcome::Found(PhfArray { v, t, k, rows: alloc::vec![alloc::vec![0; k]; n] }));
    }
    let space = (v as u64).checked_pow(n as u32).filter(|&s| s <= 1 << 40);
    let Some(space) = space else { return Ok(SearchOutcome::BudgetExceeded) };
    if (space as u128) < k as u128 {
        return Ok(SearchOutcome::NoneFound);
    }
    let mut search =
        PhfSearch { n, v: v as u64, t: t as usize, cache: Vec::new(), cache_marks: Vec::new(), digits: Vec::new() };
    let mut codes: Vec<u64> = alloc::vec![0];
    search.push_column(search.digits_of(0));
    let mut nodes = 0u64;
    // codes[j] is the column being tried at depth j; the next candidate
    // for the deepest column is codes[j] + 1.
    let mut next = 1u64;
    loop {
        if codes.len() == k {
            let rows = (0..n).map(|r| search.digits.iter().map(|d| d[r]).collect()).collect();
            return Ok(SearchOutcome::Found(PhfArray { v, t, k, rows }));
        }
        let remaining = (k - codes.len()) as u64;
        let mut placed = false;
        while next + remaining <= space {
            nodes += 1;
            if nodes > node_budget {
                return Ok(SearchOutcome::BudgetExceeded);
            }
            let d = search.digits_of(next);
            if search.fits(&d) {
                codes.push(next);
                search.push_column(d);
                next += 1;
                placed = true;
                break;
            }
            next += 1;
        }
        if placed {
            continue;
        }
        if codes.len() == 1 {
            return Ok(SearchOutcome::NoneFound);
        }
        next = codes.pop().expect("column") + 1;
        search.pop_column();
    }
}
