//! Sparse elimination on unit pivots. Each pivot is a run of column
//! additions followed by deleting a row and column whose only common entry
//! is ±1, which leaves the cokernel unchanged; whatever has no unit entry
//! left is handed to the dense Smith form.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::snf::{invariant_factors, IntMatrix};

pub(crate) type Column = Vec<(u32, i64)>;

/// What is left after elimination: the number of surviving rows, and the
/// surviving columns in their original order (rows renumbered densely).
pub(crate) struct Residual {
    pub pivots: usize,
    pub rows: usize,
    pub cols: Vec<Column>,
}

/// Writes `col − k · piv`, merged by row, into `out`, and the rows it gains
/// into `gained`; `None` on overflow.
fn axpy_into(col: &Column, k: i64, piv: &Column, out: &mut Column, gained: &mut Vec<u32>) -> Option<()> {
    out.clear();
    gained.clear();
    let (mut i, mut j) = (0, 0);
    while i < col.len() || j < piv.len() {
        let take_col = j == piv.len() || (i < col.len() && col[i].0 < piv[j].0);
        let take_piv = i == col.len() || (j < piv.len() && piv[j].0 < col[i].0);
        if take_col {
            out.push(col[i]);
            i += 1;
        } else if take_piv {
            out.push((piv[j].0, k.checked_mul(piv[j].1)?.checked_neg()?));
            gained.push(piv[j].0);
            j += 1;
        } else {
            let v = col[i].1.checked_sub(k.checked_mul(piv[j].1)?)?;
            if v != 0 {
                out.push((col[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(())
}

/// Eliminates unit pivots. The last `protected` columns are never used as
/// pivots, only updated.
pub(crate) fn eliminate(nrows: usize, mut cols: Vec<Column>, protected: usize) -> Residual {
    let ncols = cols.len();
    let free_cols = ncols - protected;
    for c in &mut cols {
        c.retain(|&(_, v)| v != 0);
        c.sort_unstable_by_key(|&(r, _)| r);
    }
    let mut degree = vec![0usize; nrows];
    for col in &cols {
        for &(r, _) in col {
            degree[r as usize] += 1;
        }
    }
    let mut row_cols: Vec<Vec<u32>> = degree.iter().map(|&d| Vec::with_capacity(d + 2)).collect();
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_cols[r as usize].push(c as u32);
        }
    }
    let mut col_alive = vec![true; ncols];
    let mut row_alive = vec![true; nrows];
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        (0..free_cols).filter(|&c| !cols[c].is_empty()).map(|c| Reverse((cols[c].len(), c as u32))).collect();
    let mut pivots = 0;
    let mut scratch: Column = Vec::new();
    let mut gained: Vec<u32> = Vec::new();
    'outer: while let Some(Reverse((len, c))) = heap.pop() {
        let c = c as usize;
        if !col_alive[c] || cols[c].len() != len {
            continue;
        }
        // Among the unit entries, prefer the row touching the fewest columns.
        let Some(&(r, u)) = cols[c]
            .iter()
            .filter(|&&(_, v)| v == 1 || v == -1)
            .min_by_key(|&&(r, _)| row_cols[r as usize].len())
        else {
            continue;
        };
        let piv = std::mem::take(&mut cols[c]);
        let touching = std::mem::take(&mut row_cols[r as usize]);
        for &c2 in &touching {
            let c2 = c2 as usize;
            if c2 == c || !col_alive[c2] {
                continue;
            }
            let Ok(pos) = cols[c2].binary_search_by_key(&r, |&(x, _)| x) else { continue };
            let k = cols[c2][pos].1 * u;
            if axpy_into(&cols[c2], k, &piv, &mut scratch, &mut gained).is_none() {
                // Overflow: stop here; every finished update was a valid column
                // operation, and the row index is not consulted again.
                cols[c] = piv;
                break 'outer;
            }
            for &row in &gained {
                row_cols[row as usize].push(c2 as u32);
            }
            std::mem::swap(&mut cols[c2], &mut scratch);
            if c2 < free_cols && !cols[c2].is_empty() {
                heap.push(Reverse((cols[c2].len(), c2 as u32)));
            }
        }
        col_alive[c] = false;
        row_alive[r as usize] = false;
        pivots += 1;
    }
    let mut row_new = vec![u32::MAX; nrows];
    let mut rows = 0;
    for r in 0..nrows {
        if row_alive[r] {
            row_new[r] = rows as u32;
            rows += 1;
        }
    }
    let mut out_cols = Vec::new();
    for (c, col) in cols.into_iter().enumerate() {
        if col_alive[c] && (c >= free_cols || !col.is_empty()) {
            out_cols.push(col.into_iter().map(|(r, v)| (row_new[r as usize], v)).collect());
        }
    }
    Residual { pivots, rows, cols: out_cols }
}

/// Rank and invariant factors greater than one of the matrix with these columns.
pub(crate) fn rank_and_torsion(nrows: usize, cols: Vec<Column>) -> (usize, Vec<BigInt>) {
    let res = eliminate(nrows, cols, 0);
    if res.cols.is_empty() {
        return (res.pivots, Vec::new());
    }
    // Only rows that still carry entries matter.
    let mut used = vec![u32::MAX; res.rows];
    let mut n = 0;
    for col in &res.cols {
        for &(r, _) in col {
            if used[r as usize] == u32::MAX {
                used[r as usize] = n;
                n += 1;
            }
        }
    }
    let mut m = IntMatrix::zeros(n as usize, res.cols.len());
    for (j, col) in res.cols.iter().enumerate() {
        for &(r, v) in col {
            m[(used[r as usize] as usize, j)] = BigInt::from(v);
        }
    }
    let f = invariant_factors(&m);
    let rank = res.pivots + f.len();
    (rank, f.into_iter().filter(|x| !x.is_one() && !x.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn columns(rows: &[Vec<i64>]) -> (usize, Vec<Column>) {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| rows[i][j] != 0).map(|i| (i as u32, rows[i][j])).collect())
            .collect();
        (nrows, cols)
    }

    #[test]
    fn matches_dense_on_examples() {
        let (n, c) = columns(&[vec![2, 0, 1], vec![0, 3, 1]]);
        assert_eq!(rank_and_torsion(n, c), (2, vec![]));
        let (n, c) = columns(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_and_torsion(n, c), (2, vec![BigInt::from(6)]));
        let (n, c) = columns(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank_and_torsion(n, c), (2, vec![BigInt::from(2)]));
    }

    #[test]
    fn overflow_falls_back_to_dense() {
        let big = i64::MAX / 2;
        let (n, c) = columns(&[vec![1, big, 0], vec![big, 1, 0], vec![3, 0, 5]]);
        let dense = IntMatrix::from_rows(&[vec![1, big, 0], vec![big, 1, 0], vec![3, 0, 5]]);
        let f = invariant_factors(&dense);
        let (rank, tors) = rank_and_torsion(n, c);
        assert_eq!(rank, f.len());
        assert_eq!(tors, f.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7)
            .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -1i64..2, 1 => -5i64..6], c), r))
    }

    proptest! {
        #[test]
        fn agrees_with_dense(rows in matrix()) {
            let dense = invariant_factors(&IntMatrix::from_rows(&rows));
            let (n, c) = columns(&rows);
            let (rank, tors) = rank_and_torsion(n, c);
            prop_assert_eq!(rank, dense.len());
            prop_assert_eq!(tors, dense.into_iter().filter(|x| !x.is_one()).collect::<Vec<_>>());
        }
    }
}
