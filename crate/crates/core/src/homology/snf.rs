use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|r| self.row(r).to_vec())).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        if n == 0 {
            return BigInt::one();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of a Smith normal form computation: `u · m · v` is diagonal with
/// entries `factors` (nonzero, each dividing the next) followed by zeros.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Recomputes `u · m · v` and checks it against `factors`, and that `u`, `v` are unimodular.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let d = self.u.mul(m).mul(&self.v);
        let diag_ok = d.is_diagonal()
            && (0..d.rows.min(d.cols)).all(|i| match self.factors.get(i) {
                Some(f) => d[(i, i)] == *f,
                None => d[(i, i)].is_zero(),
            });
        let chain_ok = self.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
            && self.factors.iter().all(|f| f.is_positive());
        diag_ok && chain_ok && self.u.is_unimodular() && self.v.is_unimodular()
    }
}

/// Smith normal form with unimodular transforms, pivoting on entries of
/// least absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let factors = reduce(&mut a, Some((&mut u, &mut v)));
    SmithForm { factors, u, v }
}

/// Nonzero diagonal entries of the Smith form, without transforms.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    reduce(&mut a, None)
}

fn reduce(a: &mut IntMatrix, mut tr: Option<(&mut IntMatrix, &mut IntMatrix)>) -> Vec<BigInt> {
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[(i, j)];
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some((u, v)) = tr.as_mut() {
            u.swap_rows(t, pi);
            v.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row(i, t, &q);
                if let Some((u, _)) = tr.as_mut() {
                    u.add_row(i, t, &q);
                }
                if !a[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col(j, t, &q);
                if let Some((_, v)) = tr.as_mut() {
                    v.add_col(j, t, &q);
                }
                if !a[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Row and column are clear; enforce divisibility of the rest.
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !(&a[(i, j)] % &a[(t, t)]).is_zero());
                match bad {
                    None => break,
                    Some((i, _)) => {
                        let one = BigInt::one();
                        a.add_row(t, i, &one);
                        if let Some((u, _)) = tr.as_mut() {
                            u.add_row(t, i, &one);
                        }
                    }
                }
            }
            // Move the smallest remaining entry of row/column t into the pivot.
            let mut bi = (t, t);
            for i in t + 1..rows {
                let x = &a[(i, t)];
                if !x.is_zero() && x.abs() < a[bi].abs() {
                    bi = (i, t);
                }
            }
            for j in t + 1..cols {
                let x = &a[(t, j)];
                if !x.is_zero() && x.abs() < a[bi].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                a.swap_rows(t, bi.0);
                if let Some((u, _)) = tr.as_mut() {
                    u.swap_rows(t, bi.0);
                }
            } else if bi.1 != t {
                a.swap_cols(t, bi.1);
                if let Some((_, v)) = tr.as_mut() {
                    v.swap_cols(t, bi.1);
                }
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some((u, _)) = tr.as_mut() {
                u.negate_row(t);
            }
        }
        factors.push(a[(t, t)].clone());
        t += 1;
    }
    factors
}

impl IntMatrix {
    fn negate_row(&mut self, r: usize) {
        for x in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *x = -std::mem::take(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![0, 3, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, big(&[1, 1]));
        assert!(s.verify(&m));
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).factors, big(&[1, 1, 1]));
        assert_eq!(smith_normal_form(&IntMatrix::from_rows(&[vec![6]])).factors, big(&[6]));
    }

    #[test]
    fn divisibility_is_enforced() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, big(&[1, 6]));
        assert!(s.verify(&m));
        let m = IntMatrix::from_rows(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.factors, big(&[2, 12]));
        assert!(s.verify(&m));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_rows(&[vec![2, 1], vec![7, 4]]).determinant(), BigInt::from(1));
        assert_eq!(IntMatrix::from_rows(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).determinant(), BigInt::from(-2));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::from(1));
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..7, c), r))
    }

    proptest! {
        #[test]
        fn transforms_verify(rows in matrix()) {
            let m = IntMatrix::from_rows(&rows);
            let s = smith_normal_form(&m);
            prop_assert!(s.verify(&m));
            prop_assert_eq!(invariant_factors(&m), s.factors.clone());
            // Product of factors is the gcd of maximal minors when square and full rank.
            if m.rows() == m.cols() {
                let det = m.determinant().abs();
                if s.factors.len() == m.rows() {
                    let prod: BigInt = s.factors.iter().product();
                    prop_assert_eq!(prod, det);
                } else {
                    prop_assert!(det.is_zero());
                }
            }
        }
    }
}
