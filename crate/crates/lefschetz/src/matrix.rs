//! Exact integer matrices over `BigInt`, plus Smith normal form.
//!
//! Everything here is sized for the ranks that actually occur (2g ≤ ~12 for
//! the symplectic representation, a few hundred columns for presentation
//! matrices of first homology), so a dense row-major representation is fine.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix with exact integer entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows
            .into_iter()
            .flatten()
            .map(BigInt::from)
            .collect::<Vec<_>>();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let cell = &out[(i, j)] + a * b;
                        out[(i, j)] = cell;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// The standard symplectic Gram matrix J on basis (a₁,b₁,…,a_g,b_g):
    /// block-diagonal copies of `[[0,1],[-1,0]]`.
    pub fn symplectic_form(g: usize) -> IntMatrix {
        let mut j = IntMatrix::zero(2 * g, 2 * g);
        for h in 0..g {
            j[(2 * h, 2 * h + 1)] = BigInt::one();
            j[(2 * h + 1, 2 * h)] = -BigInt::one();
        }
        j
    }

    /// Checks MᵀJM = J, i.e. membership in Sp(2g, ℤ) for the standard form.
    pub fn is_symplectic(&self) -> bool {
        if self.rows != self.cols || !self.rows.is_multiple_of(2) {
            return false;
        }
        let j = IntMatrix::symplectic_form(self.rows / 2);
        self.transpose().mul(&j).mul(self) == j
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form diagonal of an integer matrix.
///
/// Returns the invariant factors d₁ | d₂ | … (non-negative, trailing zeros
/// for the kernel/cokernel free part trimmed away; see `cokernel_factors`
/// for the quotient-group reading).
pub fn smith_normal_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let n = rows.min(cols);
    let mut t = 0usize;

    while t < n {
        // Find a pivot of minimal nonzero absolute value in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);

        // Clear row and column t; restart if a remainder re-introduces entries.
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = div_round(&a[(i, t)], &a[(t, t)]);
                    row_axpy(&mut a, i, t, &-q);
                    if !a[(i, t)].is_zero() {
                        swap_rows(&mut a, t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = div_round(&a[(t, j)], &a[(t, t)]);
                    col_axpy(&mut a, j, t, &-q);
                    if !a[(t, j)].is_zero() {
                        swap_cols(&mut a, t, j);
                        dirty = true;
                    }
                }
            }
        }

        // Divisibility sweep: the pivot must divide the rest of the block.
        let mut again = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&a[(i, j)] % &a[(t, t)]).is_zero() {
                    // Fold row i into row t and redo the elimination.
                    for j2 in 0..cols {
                        let v = &a[(t, j2)] + &a[(i, j2)];
                        a[(t, j2)] = v;
                    }
                    again = true;
                    break 'scan;
                }
            }
        }
        if again {
            continue;
        }

        if a[(t, t)].is_negative() {
            for j in 0..cols {
                let v = -a[(t, j)].clone();
                a[(t, j)] = v;
            }
        }
        t += 1;
    }

    (0..t).map(|i| a[(i, i)].clone()).collect()
}

/// Invariant factors of ℤ^rows / (column span of `m`).
///
/// Factors of 1 are dropped; each free ℤ summand is reported as a 0,
/// so the trivial group is `[]` and ℤ^k is `[0; k]`.
pub fn cokernel_factors(m: &IntMatrix) -> Vec<BigInt> {
    let diag = smith_normal_diagonal(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let mut factors: Vec<BigInt> = diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    let free = m.nrows() - rank;
    factors.extend(std::iter::repeat_n(BigInt::zero(), free));
    factors
}

fn swap_rows(a: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.ncols() {
        let x = a[(r1, j)].clone();
        a[(r1, j)] = a[(r2, j)].clone();
        a[(r2, j)] = x;
    }
}

fn swap_cols(a: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.nrows() {
        let x = a[(i, c1)].clone();
        a[(i, c1)] = a[(i, c2)].clone();
        a[(i, c2)] = x;
    }
}

/// row_i += q * row_k
fn row_axpy(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..a.ncols() {
        let v = &a[(i, j)] + q * &a[(k, j)];
        a[(i, j)] = v;
    }
}

/// col_j += q * col_k
fn col_axpy(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..a.nrows() {
        let v = &a[(i, j)] + q * &a[(i, k)];
        a[(i, j)] = v;
    }
}

/// Rounded division so remainders shrink in absolute value.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (q, r) = n.div_rem(d);
    if &r.abs() * 2 > d.abs() {
        if (r.is_negative()) == (d.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors(rows: Vec<Vec<i64>>) -> Vec<i64> {
        smith_normal_diagonal(&IntMatrix::from_rows(rows))
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn snf_diagonal_basics() {
        assert_eq!(factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(factors(vec![vec![2, 4], vec![4, 8]]), vec![2]);
        assert_eq!(
            factors(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn snf_divisibility_chain() {
        let m = IntMatrix::from_rows(vec![vec![6, 4, 4], vec![4, 6, 8], vec![4, 8, 6]]);
        let d = smith_normal_diagonal(&m);
        for w in d.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero(), "not a divisor chain: {d:?}");
            }
        }
    }

    #[test]
    fn cokernel_readings() {
        // ℤ² / span{(1,0)} = ℤ
        let m = IntMatrix::from_rows(vec![vec![1], vec![0]]);
        assert_eq!(cokernel_factors(&m), vec![BigInt::zero()]);
        // ℤ² / span{(2,0),(0,1)} = ℤ/2
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 1]]);
        assert_eq!(cokernel_factors(&m), vec![BigInt::from(2)]);
        // ℤ² / 0 = ℤ²
        let m = IntMatrix::zero(2, 0);
        assert_eq!(cokernel_factors(&m).len(), 2);
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let j = IntMatrix::symplectic_form(3);
        let neg: Vec<BigInt> = (0..6)
            .flat_map(|i| (0..6).map(move |j2| (i, j2)))
            .map(|(i, j2)| -j[(j2, i)].clone())
            .collect();
        assert_eq!(j.data, neg);
    }
}
