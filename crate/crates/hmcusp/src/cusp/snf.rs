//! Dense integer matrices and Smith normal form with transforms.

use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i128>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += a * o[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i128]) -> Vec<i128> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Rows `r0..` of the matrix.
    pub fn rows_from(&self, r0: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows - r0, self.cols);
        for i in r0..self.rows {
            for j in 0..self.cols {
                out[(i - r0, j)] = self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k·col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            self[(r, j)] = -self[(r, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<i128>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)]).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// D = U·A·V with U, V unimodular and D diagonal with d_i | d_{i+1}.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub rank: usize,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<i128> {
        self.diag.iter().copied().filter(|&d| d > 1).collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Column operations are mirrored on V (columns) and V⁻¹ (rows).
    let col_add = |d: &mut IntMatrix,
                   v: &mut IntMatrix,
                   vi: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   k: i128| {
        d.add_col(dst, src, k);
        v.add_col(dst, src, k);
        vi.add_row(src, dst, -k);
    };
    let col_swap =
        |d: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, x: usize, y: usize| {
            d.swap_cols(x, y);
            v.swap_cols(x, y);
            vi.swap_rows(x, y);
        };

    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d[(i, j)];
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        col_swap(&mut d, &mut v, &mut v_inv, t, pj);

        loop {
            let p = d[(t, t)];
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(p);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(p);
                if q != 0 {
                    col_add(&mut d, &mut v, &mut v_inv, j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the trailing block by the pivot
                let bad = (t + 1..m)
                    .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| d[(i, j)] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        d.add_row(t, i, 1);
                        u.add_row(t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t + 1..m {
                if d[(i, t)] != 0 && d[(i, t)].abs() < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..n {
                if d[(t, j)] != 0 && d[(t, j)].abs() < d[best].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
            } else if best.1 != t {
                col_swap(&mut d, &mut v, &mut v_inv, t, best.1);
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<i128> = (0..m.min(n)).map(|i| d[(i, i)]).collect();
    let rank = diag.iter().filter(|&&x| x != 0).count();
    Smith {
        diag,
        rank,
        u,
        v,
        v_inv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_small_matrix() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = s.u.mul(&a).mul(&s.v);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[(i, j)], if i == j { s.diag[i] } else { 0 });
            }
        }
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(3));
    }

    #[test]
    fn smith_of_zero_and_empty() {
        let s = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank, 0);
        let s = smith_normal_form(&IntMatrix::zeros(0, 4));
        assert_eq!(s.rank, 0);
        assert_eq!(s.v, IntMatrix::identity(4));
    }
}
