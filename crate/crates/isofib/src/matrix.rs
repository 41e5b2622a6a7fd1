//! Dense integer matrices and the lattice algorithms built on them.
//!
//! Everything here is exact `BigInt` arithmetic: multiplication, Bareiss
//! determinants, Smith normal form with recorded transforms, and a column
//! Hermite normal form used to give sublattices a canonical basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix over the integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len(), "shape/data mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self[(i, j)].is_one()
                    } else {
                        self[(i, j)].is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        IntMatrix::new(self.rows, self.cols, data)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
        let mut m = IntMatrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for i in 0..rows {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// Fraction-free determinant (Bareiss algorithm).
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let det = m[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Inverse of a matrix with determinant ±1. Returns `None` otherwise.
    pub fn inverse_unimodular(&self) -> Option<IntMatrix> {
        if !self.is_square() {
            return None;
        }
        let det = self.determinant();
        if !det.abs().is_one() {
            return None;
        }
        // Gauss-Jordan over the integers works because every pivot along the
        // way can be made ±1 by the Smith transforms; easier: solve via SNF.
        let snf = smith_normal_form(self);
        // self = u^-1 d v^-1, so self^-1 = v d^-1 u with d diagonal ±1 units.
        let n = self.rows;
        let mut dinv = IntMatrix::zero(n, n);
        for i in 0..n {
            let di = &snf.d[(i, i)];
            if !di.abs().is_one() {
                return None;
            }
            dinv[(i, i)] = di.clone();
        }
        Some(snf.v.mul(&dinv).mul(&snf.u))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += q * row_j
    fn add_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let t = q * &self[(j, c)];
            self[(i, c)] += t;
        }
    }

    /// col_i += q * col_j
    fn add_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let t = q * &self[(r, j)];
            self[(r, i)] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = -self[(i, c)].clone();
            self[(i, c)] = v;
        }
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
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Smith normal form `d = u * a * v` with unimodular `u`, `v` and `d`
/// diagonal with the divisibility chain d_1 | d_2 | ... .
pub struct SmithNormalForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Diagonal entries, padded with zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let rows = a.rows();
    let cols = a.cols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let t_max = rows.min(cols);

    for t in 0..t_max {
        // Find a pivot of minimal absolute value in the trailing block.
        let pivot = |d: &IntMatrix| -> Option<(usize, usize)> {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match &best {
                        None => best = Some((i, j)),
                        Some(&(bi, bj)) => {
                            if d[(i, j)].abs() < d[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            best
        };

        let Some((pi, pj)) = pivot(&d) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -div_nearest(&d[(i, t)], &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -div_nearest(&d[(t, j)], &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // A nonzero remainder is strictly smaller than the pivot; make
            // it the new pivot and repeat.
            let Some((pi, pj)) = pivot(&d) else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }

        // Enforce divisibility of the trailing block by the pivot.
        'divis: loop {
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        let one = BigInt::one();
                        d.add_row_multiple(t, i, &one);
                        u.add_row_multiple(t, i, &one);
                        // Re-clear row/col t.
                        loop {
                            let mut dirty = false;
                            for jj in t + 1..cols {
                                if d[(t, jj)].is_zero() {
                                    continue;
                                }
                                let q = -div_nearest(&d[(t, jj)], &d[(t, t)]);
                                d.add_col_multiple(jj, t, &q);
                                v.add_col_multiple(jj, t, &q);
                                if !d[(t, jj)].is_zero() {
                                    dirty = true;
                                }
                            }
                            for ii in t + 1..rows {
                                if d[(ii, t)].is_zero() {
                                    continue;
                                }
                                let q = -div_nearest(&d[(ii, t)], &d[(t, t)]);
                                d.add_row_multiple(ii, t, &q);
                                u.add_row_multiple(ii, t, &q);
                                if !d[(ii, t)].is_zero() {
                                    dirty = true;
                                }
                            }
                            if !dirty {
                                break;
                            }
                            let Some((pi, pj)) = ({
                                let mut best: Option<(usize, usize)> = None;
                                for bi in t..rows {
                                    for bj in t..cols {
                                        if d[(bi, bj)].is_zero() {
                                            continue;
                                        }
                                        match &best {
                                            None => best = Some((bi, bj)),
                                            Some(&(ci, cj)) => {
                                                if d[(bi, bj)].abs() < d[(ci, cj)].abs() {
                                                    best = Some((bi, bj));
                                                }
                                            }
                                        }
                                    }
                                }
                                best
                            }) else {
                                break;
                            };
                            d.swap_rows(t, pi);
                            u.swap_rows(t, pi);
                            d.swap_cols(t, pj);
                            v.swap_cols(t, pj);
                        }
                        continue 'divis;
                    }
                }
            }
            break;
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    SmithNormalForm { d, u, v }
}

/// Rounded division minimizing the remainder's absolute value.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = 2 * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Canonical column Hermite normal form of the lattice spanned by the
/// columns of `a`. Zero columns are dropped; pivots are positive and
/// strictly below-left of earlier pivots; entries left of a pivot are
/// reduced into `[0, pivot)`.
pub fn column_hermite(a: &IntMatrix) -> IntMatrix {
    let rows = a.rows();
    let cols = a.cols();
    let mut h = a.clone();
    let mut c = 0usize; // next pivot column
    for r in 0..rows {
        if c >= cols {
            break;
        }
        // Euclid across columns c.. on row r.
        loop {
            let mut nonzero: Vec<usize> = (c..cols).filter(|&j| !h[(r, j)].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            if nonzero.len() == 1 {
                h.swap_cols(c, nonzero[0]);
                break;
            }
            nonzero.sort_by_key(|&j| h[(r, j)].abs());
            let jmin = nonzero[0];
            for &j in &nonzero[1..] {
                let q = -div_nearest(&h[(r, j)], &h[(r, jmin)]);
                h.add_col_multiple(j, jmin, &q);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            for i in 0..rows {
                let v = -h[(i, c)].clone();
                h[(i, c)] = v;
            }
        }
        // Reduce earlier columns against this pivot.
        for j in 0..c {
            let q = -h[(r, j)].div_floor(&h[(r, c)]);
            h.add_col_multiple(j, c, &q);
        }
        c += 1;
    }
    // Keep the first c columns (the rest are zero).
    let mut out = IntMatrix::zero(rows, c);
    for i in 0..rows {
        for j in 0..c {
            out[(i, j)] = h[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[1, 1], &[-1, 0]]).determinant(), BigInt::one());
        assert_eq!(m(&[&[2, 0], &[0, 3]]).determinant(), BigInt::from(6));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), BigInt::zero());
        assert_eq!(
            m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).determinant(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn snf_reconstructs() {
        let cases = [
            m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            m(&[&[1, 0], &[0, 1]]),
            m(&[&[0, 0], &[0, 0]]),
            m(&[&[-2, 0, 0], &[0, -2, 0], &[0, 0, 0]]),
            m(&[&[6, 10], &[15, 4]]),
        ];
        for a in cases {
            let snf = smith_normal_form(&a);
            assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "d = u a v");
            assert!(snf.u.determinant().abs().is_one());
            assert!(snf.v.determinant().abs().is_one());
            let diag = snf.diagonal();
            for w in diag.windows(2) {
                if !w[1].is_zero() {
                    assert!(!w[0].is_zero(), "zero before nonzero in chain");
                }
                if !w[0].is_zero() && !w[1].is_zero() {
                    assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
                }
            }
            for (i, di) in diag.iter().enumerate() {
                assert!(!di.is_negative());
                for j in 0..snf.d.cols() {
                    if j != i && i < snf.d.rows() {
                        assert!(snf.d[(i, j)].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn snf_diagonal_of_classical_example() {
        // diag entries of [[2,4,4],[-6,6,12],[10,4,16]] are 2, 2, 156.
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let snf = smith_normal_form(&a);
        let diag: Vec<i64> = snf
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(diag, vec![2, 2, 156]);
    }

    #[test]
    fn unimodular_inverse() {
        let a = m(&[&[1, 1], &[-1, 0]]);
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        assert!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_none());
    }

    #[test]
    fn hermite_is_canonical_for_equal_lattices() {
        // Two bases of the same lattice give the same HNF.
        let b1 = m(&[&[2, 1], &[0, 3]]);
        let b2 = m(&[&[1, 2], &[3, 0]]); // swapped columns + column op
        let h1 = column_hermite(&b1);
        let h2 = column_hermite(&b2);
        assert_eq!(h1, h2);
    }

    #[test]
    fn hermite_drops_zero_columns() {
        let b = m(&[&[0, 2], &[0, 0]]);
        let h = column_hermite(&b);
        assert_eq!(h.cols(), 1);
        assert_eq!(h[(0, 0)], BigInt::from(2));
    }
}
