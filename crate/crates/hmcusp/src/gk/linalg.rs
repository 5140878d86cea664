//! Gaussian elimination over ℚ(R).

use super::poly::RatFunc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// x with A·x = b (free variables set to zero).
    Solved(Vec<RatFunc>),
    /// y with y·A = 0 and y·b ≠ 0.
    Inconsistent(Vec<RatFunc>),
}

/// Picks a pivot in column `col` at or below `row`, preferring constants.
fn pivot(m: &[Vec<RatFunc>], row: usize, col: usize) -> Option<usize> {
    let mut found = None;
    for (r, line) in m.iter().enumerate().skip(row) {
        let x = &line[col];
        if x.is_zero() {
            continue;
        }
        if x.is_constant() {
            return Some(r);
        }
        found.get_or_insert(r);
    }
    found
}

/// Row-reduces `m` in place over its first `cols` columns, applying the same
/// operations to the remaining columns. Returns the pivot columns.
fn eliminate(m: &mut [Vec<RatFunc>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = pivot(m, row, col) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv();
        let scaled: Vec<RatFunc> = m[row].iter().map(|x| x * &inv).collect();
        m[row] = scaled;
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..m[r].len() {
                if !m[row][c].is_zero() {
                    let t = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<RatFunc>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut work = m.to_vec();
    eliminate(&mut work, cols).len()
}

/// Solves A·x = b, or returns a left-null certificate.
pub fn solve(a: &[Vec<RatFunc>], b: &[RatFunc]) -> Solution {
    let rows = a.len();
    assert_eq!(rows, b.len(), "dimension mismatch");
    let cols = a.first().map_or(0, |r| r.len());
    // [A | b | I] so that row operations are recorded
    let mut m: Vec<Vec<RatFunc>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(r, (line, bv))| {
            let mut v = line.clone();
            v.push(bv.clone());
            v.extend((0..rows).map(|c| {
                if c == r {
                    RatFunc::one()
                } else {
                    RatFunc::zero()
                }
            }));
            v
        })
        .collect();
    let pivots = eliminate(&mut m, cols);
    for line in &m[pivots.len()..] {
        if !line[cols].is_zero() {
            return Solution::Inconsistent(line[cols + 1..].to_vec());
        }
    }
    let mut x = vec![RatFunc::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Solution::Solved(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> RatFunc {
        RatFunc::from_int(n)
    }

    #[test]
    fn solves_with_symbol() {
        let r = RatFunc::var();
        let a = vec![vec![r.clone(), c(1)], vec![c(0), c(1)]];
        let b = vec![c(1), c(1)];
        let Solution::Solved(x) = solve(&a, &b) else {
            panic!()
        };
        assert!(x[0].is_zero());
        assert_eq!(x[1], c(1));
        let a = vec![vec![r.clone()], vec![c(2)]];
        let Solution::Inconsistent(y) = solve(&a, &[c(1), c(1)]) else {
            panic!()
        };
        assert!((&(&y[0] * &r) + &(&y[1] * &c(2))).is_zero());
        assert!(!(&y[0] + &y[1]).is_zero());
        assert_eq!(rank(&a), 1);
    }
}
