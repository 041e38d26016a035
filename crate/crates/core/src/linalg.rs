//! Exact linear algebra over the rationals.
//!
//! Sparse row elimination picks, within each column, the candidate pivot of
//! smallest bit size. Dense rank uses fraction-free (Bareiss) elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::rational::bit_size;
use crate::exactalg::Rational;

/// A sparse row: strictly increasing column indices, no zero entries.
pub type SparseRow = Vec<(usize, Rational)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<SparseRow>,
}

/// Reduced row echelon form: `rows[k]` has a leading 1 in `pivots[k]` and
/// zeros in every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    /// Adds a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, Rational)>) {
        let mut row: Vec<(usize, Rational)> = entries.into_iter().collect();
        row.sort_by_key(|e| e.0);
        let mut out: SparseRow = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range");
            match out.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => out.push((c, v)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        self.rows.push(out);
    }

    pub fn from_dense(ncols: usize, rows: &[Vec<Rational>]) -> Self {
        let mut m = SparseMatrix::new(ncols);
        for r in rows {
            assert_eq!(r.len(), ncols);
            m.push_row(r.iter().cloned().enumerate());
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rref(&self) -> Echelon {
        // Rows bucketed by leading column.
        let mut buckets: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
        for r in self.rows.iter().filter(|r| !r.is_empty()) {
            buckets.entry(r[0].0).or_default().push(r.clone());
        }
        let mut pivots = Vec::new();
        let mut reduced: Vec<SparseRow> = Vec::new();
        while let Some((col, mut cands)) = buckets.pop_first() {
            let best = (0..cands.len())
                .min_by_key(|&i| (bit_size(&cands[i][0].1), cands[i].len()))
                .expect("bucket is never empty");
            let mut piv = cands.swap_remove(best);
            let inv = piv[0].1.recip();
            for e in piv.iter_mut() {
                e.1 *= &inv;
            }
            for r in cands {
                let f = -r[0].1.clone();
                let next = axpy(&r, &f, &piv);
                if let Some(&(c, _)) = next.first() {
                    buckets.entry(c).or_default().push(next);
                }
            }
            pivots.push(col);
            reduced.push(piv);
        }
        // Back substitution.
        for k in (0..reduced.len()).rev() {
            let col = pivots[k];
            let (head, tail) = reduced.split_at_mut(k);
            let src = &tail[0];
            for row in head.iter_mut() {
                if let Ok(i) = row.binary_search_by_key(&col, |e| e.0) {
                    let f = -row[i].1.clone();
                    *row = axpy(row, &f, src);
                }
            }
        }
        Echelon { ncols: self.ncols, pivots, rows: reduced }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Nullspace basis in reduced echelon form: each vector's first nonzero
    /// entry is 1 and no other basis vector is nonzero there.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.rref().nullspace()
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let n = self.ncols;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut raw = SparseMatrix::new(n);
        for f in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v: SparseRow = vec![(f, Rational::one())];
            for (k, row) in self.rows.iter().enumerate() {
                if let Ok(i) = row.binary_search_by_key(&f, |e| e.0) {
                    v.push((self.pivots[k], -row[i].1.clone()));
                }
            }
            raw.push_row(v);
        }
        raw.rref().rows.into_iter().map(|r| densify(n, &r)).collect()
    }
}

fn densify(n: usize, row: &SparseRow) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    for (c, x) in row {
        v[*c] = x.clone();
    }
    v
}

/// `dst + f * src`
fn axpy(dst: &SparseRow, f: &Rational, src: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let ci = dst.get(i).map_or(usize::MAX, |e| e.0);
        let cj = src.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push(dst[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, f * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + f * &src[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a dense rational matrix by fraction-free elimination. Rows are
/// first cleared of denominators; within a column the nonzero entry of
/// smallest magnitude is chosen as pivot.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}
