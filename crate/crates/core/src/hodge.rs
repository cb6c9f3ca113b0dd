//! Compactly supported Hodge numbers of balanced type.
//!
//! A table `h[k][p]` (`k = 0..=2d`, `p = 0..=d`) is admissible when its
//! columns add up to the compact Betti numbers, its rows have alternating
//! sums equal to the E-polynomial coefficients and, unless disabled, it
//! vanishes above the weight line `2p > k`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::EPolynomial;

/// `b_c[k]` for `k = 0..=2d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    dim: usize,
    values: Vec<u64>,
}

impl BettiVector {
    pub fn new(dim: usize, values: Vec<u64>) -> Result<Self> {
        if values.len() != 2 * dim + 1 {
            return Err(Error::InvalidParameter(alloc::format!(
                "expected {} Betti numbers for dimension {dim}, got {}",
                2 * dim + 1,
                values.len()
            )));
        }
        Ok(BettiVector { dim, values })
    }

    /// Like [`BettiVector::new`], additionally requiring the Euler
    /// characteristic to equal `e(1)`.
    pub fn with_check(dim: usize, values: Vec<u64>, e: &EPolynomial) -> Result<Self> {
        let b = Self::new(dim, values)?;
        b.check_against(e)?;
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> u64 {
        self.values.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i128 {
        self.values
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i128 } else { -(b as i128) })
            .sum()
    }

    pub fn check_against(&self, e: &EPolynomial) -> Result<()> {
        let chi = e.eval(1)?;
        if chi != self.euler_characteristic() {
            return Err(Error::InvalidParameter(alloc::format!(
                "Euler characteristic {} does not match e(1) = {chi}",
                self.euler_characteristic()
            )));
        }
        Ok(())
    }
}

/// Poincaré duality: `b_c[k]` is the coefficient of `t^{2d-k}`.
pub fn compact_betti_from_poincare(poincare: &EPolynomial, dim: usize) -> Result<BettiVector> {
    let limit = 2 * dim;
    if let Some(deg) = poincare.degree() {
        if deg > limit {
            return Err(Error::DegreeOverflow { degree: deg, limit });
        }
    }
    let mut values = vec![0u64; limit + 1];
    for (j, &c) in poincare.coeffs().iter().enumerate() {
        values[limit - j] = u64::try_from(c).map_err(|_| {
            Error::InvalidParameter(alloc::format!(
                "Poincaré coefficient {c} of t^{j} is negative"
            ))
        })?;
    }
    BettiVector::new(dim, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeOptions {
    /// Impose `h[k][p] = 0` for `2p > k`.
    pub weight_bound: bool,
}

impl Default for HodgeOptions {
    fn default() -> Self {
        HodgeOptions { weight_bound: true }
    }
}

impl HodgeOptions {
    fn allowed(&self, k: usize, p: usize) -> bool {
        !self.weight_bound || 2 * p <= k
    }
}

/// `h[k][p]`, columns indexed by degree `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HodgeTable {
    dim: usize,
    cells: Vec<Vec<u64>>,
}

impl HodgeTable {
    pub fn zero(dim: usize) -> Self {
        HodgeTable {
            dim,
            cells: vec![vec![0; dim + 1]; 2 * dim + 1],
        }
    }

    pub fn from_cells(cells: Vec<Vec<u64>>) -> Result<Self> {
        if cells.is_empty() || cells.len().is_multiple_of(2) {
            return Err(Error::InvalidParameter(
                "a table needs 2d + 1 columns".into(),
            ));
        }
        let dim = cells.len() / 2;
        if cells.iter().any(|c| c.len() != dim + 1) {
            return Err(Error::InvalidParameter(alloc::format!(
                "every column needs {} entries",
                dim + 1
            )));
        }
        Ok(HodgeTable { dim, cells })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Vec<u64>] {
        &self.cells
    }

    pub fn get(&self, k: usize, p: usize) -> u64 {
        self.cells
            .get(k)
            .and_then(|c| c.get(p))
            .copied()
            .unwrap_or(0)
    }

    pub fn set(&mut self, k: usize, p: usize, v: u64) {
        self.cells[k][p] = v;
    }

    pub fn column_sum(&self, k: usize) -> u64 {
        self.cells[k].iter().sum()
    }

    pub fn row_alternating_sum(&self, p: usize) -> i128 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, col)| {
                if k % 2 == 0 {
                    col[p] as i128
                } else {
                    -(col[p] as i128)
                }
            })
            .sum()
    }

    pub fn betti(&self) -> BettiVector {
        BettiVector {
            dim: self.dim,
            values: (0..self.cells.len()).map(|k| self.column_sum(k)).collect(),
        }
    }

    pub fn e_polynomial(&self) -> EPolynomial {
        EPolynomial::new(
            (0..=self.dim)
                .map(|p| self.row_alternating_sum(p))
                .collect(),
        )
    }

    pub fn respects_weights(&self) -> bool {
        self.cells
            .iter()
            .enumerate()
            .all(|(k, col)| col.iter().enumerate().all(|(p, &h)| h == 0 || 2 * p <= k))
    }

    pub fn satisfies(&self, e: &EPolynomial, b: &BettiVector, opts: HodgeOptions) -> bool {
        self.dim == b.dim
            && (0..self.cells.len()).all(|k| self.column_sum(k) == b.get(k))
            && e.degree().is_none_or(|d| d <= self.dim)
            && (0..=self.dim).all(|p| self.row_alternating_sum(p) == e.coeff(p))
            && (!opts.weight_bound || self.respects_weights())
    }
}

impl fmt::Display for HodgeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p\\k")?;
        for k in 0..self.cells.len() {
            write!(f, " {k:>3}")?;
        }
        for p in (0..=self.dim).rev() {
            write!(f, "\n{p:>3}")?;
            for col in &self.cells {
                write!(f, " {:>3}", col[p])?;
            }
        }
        Ok(())
    }
}

/// Every way to write `total` as a sum over `slots`, lexicographically.
fn compositions(total: u64, slots: &[usize], width: usize) -> Vec<Vec<u64>> {
    fn go(total: u64, slots: &[usize], cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        match slots {
            [] => {
                if total == 0 {
                    out.push(cur.clone());
                }
            }
            [last] => {
                cur[*last] = total;
                out.push(cur.clone());
                cur[*last] = 0;
            }
            [first, rest @ ..] => {
                for v in 0..=total {
                    cur[*first] = v;
                    go(total - v, rest, cur, out);
                }
                cur[*first] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(total, slots, &mut vec![0; width], &mut out);
    out
}

/// All admissible tables, column by column with row-sum pruning.
pub fn enumerate_tables(e: &EPolynomial, b: &BettiVector, opts: HodgeOptions) -> Vec<HodgeTable> {
    let d = b.dim;
    let cols = 2 * d + 1;
    if e.degree().is_some_and(|deg| deg > d) {
        return Vec::new();
    }
    let target: Vec<i128> = (0..=d).map(|p| e.coeff(p)).collect();
    // reach[k][p]: the largest positive and negative change columns k.. can
    // still make to row p.
    let mut reach = vec![vec![(0i128, 0i128); d + 1]; cols + 1];
    for k in (0..cols).rev() {
        let (head, tail) = reach.split_at_mut(k + 1);
        for (p, (cell, &(mut pos, mut neg))) in head[k].iter_mut().zip(&tail[0]).enumerate() {
            if opts.allowed(k, p) {
                if k % 2 == 0 {
                    pos += b.get(k) as i128;
                } else {
                    neg += b.get(k) as i128;
                }
            }
            *cell = (pos, neg);
        }
    }
    let column_choices: Vec<Vec<Vec<u64>>> = (0..cols)
        .map(|k| {
            let slots: Vec<usize> = (0..=d).filter(|&p| opts.allowed(k, p)).collect();
            compositions(b.get(k), &slots, d + 1)
        })
        .collect();

    struct Search<'a> {
        target: &'a [i128],
        reach: &'a [Vec<(i128, i128)>],
        choices: &'a [Vec<Vec<u64>>],
        table: HodgeTable,
        out: Vec<HodgeTable>,
    }
    impl Search<'_> {
        fn run(&mut self, k: usize, sums: &mut [i128]) {
            if k == self.choices.len() {
                if sums == self.target {
                    self.out.push(self.table.clone());
                }
                return;
            }
            let sign = if k.is_multiple_of(2) { 1 } else { -1 };
            for choice in &self.choices[k] {
                let feasible = sums.iter().zip(choice).enumerate().all(|(p, (&s, &c))| {
                    let gap = self.target[p] - (s + sign * c as i128);
                    let (pos, neg) = self.reach[k + 1][p];
                    -neg <= gap && gap <= pos
                });
                if !feasible {
                    continue;
                }
                for (s, &c) in sums.iter_mut().zip(choice) {
                    *s += sign * c as i128;
                }
                self.table.cells[k].clone_from(choice);
                self.run(k + 1, sums);
                for (s, &c) in sums.iter_mut().zip(choice) {
                    *s -= sign * c as i128;
                }
            }
            self.table.cells[k].iter_mut().for_each(|c| *c = 0);
        }
    }
    let mut search = Search {
        target: &target,
        reach: &reach,
        choices: &column_choices,
        table: HodgeTable::zero(d),
        out: Vec::new(),
    };
    search.run(0, &mut vec![0; d + 1]);
    search.out
}

/// Reference enumeration: every combination of column compositions over all
/// `p`, filtered by the full set of constraints. No pruning.
pub fn brute_force_tables(e: &EPolynomial, b: &BettiVector, opts: HodgeOptions) -> Vec<HodgeTable> {
    let d = b.dim;
    let all: Vec<usize> = (0..=d).collect();
    let choices: Vec<Vec<Vec<u64>>> = (0..=2 * d)
        .map(|k| compositions(b.get(k), &all, d + 1))
        .collect();
    let mut idx = vec![0usize; choices.len()];
    let mut out = Vec::new();
    loop {
        let cells = idx
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        let table = HodgeTable { dim: d, cells };
        if table.satisfies(e, b, opts) {
            out.push(table);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                out.sort();
                return out;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Cell-by-cell enumeration with every entry in `0..=max(b)`. Refuses
/// instances with more than `max_candidates` candidate tables.
pub fn cellwise_brute_force_tables(
    e: &EPolynomial,
    b: &BettiVector,
    opts: HodgeOptions,
    max_candidates: u64,
) -> Result<Vec<HodgeTable>> {
    let d = b.dim;
    let n_cells = (2 * d + 1) * (d + 1);
    let base = b.values.iter().copied().max().unwrap_or(0) + 1;
    let candidates = u32::try_from(n_cells)
        .ok()
        .and_then(|n| base.checked_pow(n));
    match candidates {
        Some(c) if c <= max_candidates => {}
        _ => {
            return Err(Error::InvalidParameter(alloc::format!(
                "{base}^{n_cells} candidate tables exceed the limit of {max_candidates}"
            )))
        }
    }
    let mut flat = vec![0u64; n_cells];
    let mut out = Vec::new();
    loop {
        let cells = flat.chunks(d + 1).map(|c| c.to_vec()).collect();
        let table = HodgeTable { dim: d, cells };
        if table.satisfies(e, b, opts) {
            out.push(table);
        }
        let mut i = 0;
        loop {
            if i == n_cells {
                out.sort();
                return Ok(out);
            }
            flat[i] += 1;
            if flat[i] < base {
                break;
            }
            flat[i] = 0;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ForcedEntry {
    pub k: usize,
    pub p: usize,
    pub value: u64,
}

/// Entries that take the same value in every table.
pub fn forced_entries(tables: &[HodgeTable]) -> Result<Vec<ForcedEntry>> {
    let first = tables.first().ok_or(Error::EmptyInput("no tables"))?;
    if tables.iter().any(|t| t.dim != first.dim) {
        return Err(Error::InvalidParameter(
            "tables of different dimensions".into(),
        ));
    }
    let mut out = Vec::new();
    for k in 0..=2 * first.dim {
        for p in 0..=first.dim {
            let value = first.get(k, p);
            if tables.iter().all(|t| t.get(k, p) == value) {
                out.push(ForcedEntry { k, p, value });
            }
        }
    }
    Ok(out)
}

/// The character variety instance: `e = q^4 + 2q^3 + 6q^2 + 2q + 1`,
/// `P = 10t^4 + 2t^3 + 3t^2 + 1`, `d = 4`.
pub fn standard_instance() -> (EPolynomial, EPolynomial, usize) {
    (
        EPolynomial::new(vec![1, 2, 6, 2, 1]),
        EPolynomial::new(vec![1, 0, 3, 2, 10]),
        4,
    )
}

/// Compact listing of a table's nonzero cells, `h[k][p]=v` separated by
/// spaces.
pub fn describe(table: &HodgeTable) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (k, col) in table.cells.iter().enumerate() {
        for (p, &v) in col.iter().enumerate() {
            if v != 0 {
                if !s.is_empty() {
                    s.push(' ');
                }
                let _ = write!(s, "h[{k}][{p}]={v}");
            }
        }
    }
    s
}
