//! Exact Gaussian elimination over the rationals.

use num::{One, Zero};

use super::vector::{Rat, RatVec};

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let mut pivot_row = 0;
    for col in 0..dim {
        let Some(p) = (pivot_row..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = Rat::one() / &m[pivot_row][col];
        for a in m[pivot_row].iter_mut() {
            *a *= &inv;
        }
        let pivot = m[pivot_row].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != pivot_row && !row[col].is_zero() {
                let c = row[col].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a -= &c * b;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m.into_iter().map(RatVec::new).collect()
}

pub fn rank(rows: &[RatVec], dim: usize) -> usize {
    rref(rows, dim).len()
}

/// Basis of `{x : <r, x> = 0 for all rows r}`, read off the RREF.
pub fn nullspace(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    let red = rref(rows, dim);
    let pivots: Vec<usize> = red
        .iter()
        .map(|r| r.iter().position(|a| !a.is_zero()).unwrap())
        .collect();
    (0..dim)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rat::zero(); dim];
            v[free] = Rat::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            RatVec::new(v)
        })
        .collect()
}

/// Canonical basis of the span of `rows`: RREF rows scaled to primitive
/// integer vectors.
pub fn canonical_span_basis(rows: &[RatVec], dim: usize) -> Vec<RatVec> {
    rref(rows, dim).iter().map(RatVec::primitive_line).collect()
}

/// Coefficients `c` with `v = sum c_i basis_i`, if `v` lies in the span.
/// `basis` must be linearly independent.
pub fn coordinates_in_span(basis: &[RatVec], v: &RatVec) -> Option<Vec<Rat>> {
    let dim = v.dim();
    let k = basis.len();
    // Solve B^T c = v by elimination on the augmented system.
    let mut m: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(v[i].clone());
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..dim).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rat::one() / &m[r][col];
        for a in m[r].iter_mut() {
            *a *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a -= &c * b;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (i, &col) in pivot_cols.iter().enumerate() {
        c[col] = m[i][k].clone();
    }
    Some(c)
}

/// Orthogonal projection of `v` onto the orthogonal complement of
/// `span(basis)`.
pub fn project_off(v: &RatVec, basis: &[RatVec]) -> RatVec {
    if basis.is_empty() {
        return v.clone();
    }
    // Gram system G c = B v, then v - B^T c.
    let k = basis.len();
    let gram: Vec<RatVec> = (0..k)
        .map(|i| RatVec::new((0..k).map(|j| basis[i].dot(&basis[j])).collect()))
        .collect();
    let rhs = RatVec::new(basis.iter().map(|b| b.dot(v)).collect());
    let c = solve_square(&gram, &rhs).expect("basis is linearly independent");
    basis
        .iter()
        .zip(&c)
        .fold(v.clone(), |acc, (b, ci)| acc.add_scaled(&-ci.clone(), b))
}

/// Solves `A x = b` for square invertible `A` (rows given).
pub fn solve_square(a: &[RatVec], b: &RatVec) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, bi)| {
            let mut r = row.entries().to_vec();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let inv = Rat::one() / &m[col][col];
        for a in m[col].iter_mut() {
            *a *= &inv;
        }
        let pivot = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let c = row[col].clone();
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a -= &c * b;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square matrix given by rows.
pub fn inverse(a: &[RatVec]) -> Option<Vec<RatVec>> {
    let n = a.len();
    let cols: Option<Vec<Vec<Rat>>> = (0..n)
        .map(|j| solve_square(a, &RatVec::unit(n, j)))
        .collect();
    let cols = cols?;
    Some(
        (0..n)
            .map(|i| RatVec::new((0..n).map(|j| cols[j][i].clone()).collect()))
            .collect(),
    )
}

pub fn determinant(a: &[RatVec]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.iter().map(|r| r.entries().to_vec()).collect();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rat::zero();
        };
        if p != col {
            m.swap(col, p);
            det = -det;
        }
        det *= &m[col][col];
        let pivot = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            if !row[col].is_zero() {
                let c = &row[col] / &pivot[col];
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a -= &c * b;
                }
            }
        }
    }
    det
}
