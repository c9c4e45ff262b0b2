//! Integer row reduction: Hermite normal form, integer kernels and
//! unimodular basis completion.

use num::{BigInt, Integer, One, Signed, Zero};

use super::linalg;
use super::vector::RatVec;

type Row = Vec<BigInt>;

fn sub_scaled(a: &mut Row, c: &BigInt, b: &Row) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= c * y;
    }
}

/// Row-reduces `m` to Hermite normal form, applying the same unimodular row
/// operations to `t`. Returns the rank.
fn echelon(m: &mut [Row], t: &mut [Row], ncols: usize) -> usize {
    let nrows = m.len();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            // smallest nonzero |entry| at or below r becomes the pivot
            let best = (r..nrows)
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(p) = best else { break };
            m.swap(r, p);
            t.swap(r, p);
            let mut done = true;
            for i in r + 1..nrows {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[r][col]);
                    let (pm, pt) = (m[r].clone(), t[r].clone());
                    sub_scaled(&mut m[i], &q, &pm);
                    sub_scaled(&mut t[i], &q, &pt);
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for x in m[r].iter_mut().chain(t[r].iter_mut()) {
                *x = -x.clone();
            }
        }
        let (pm, pt) = (m[r].clone(), t[r].clone());
        for i in 0..r {
            let q = m[i][col].div_floor(&pm[col]);
            if !q.is_zero() {
                sub_scaled(&mut m[i], &q, &pm);
                sub_scaled(&mut t[i], &q, &pt);
            }
        }
        r += 1;
    }
    r
}

fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect()
}

/// Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hermite_normal_form(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let mut t = vec![Vec::new(); m.len()];
    let rank = echelon(&mut m, &mut t, ncols);
    m.truncate(rank);
    m
}

/// Lattice basis (in Hermite normal form) of `{x in Z^n : A x = 0}`.
pub fn integer_kernel(a: &[Row], n: usize) -> Vec<Row> {
    let mut m: Vec<Row> = (0..n)
        .map(|i| a.iter().map(|row| row[i].clone()).collect())
        .collect();
    let mut t = identity(n);
    let rank = echelon(&mut m, &mut t, a.len());
    hermite_normal_form(&t[rank..], n)
}

/// Extends the rows of `rays` to a basis of `Z^n`, keeping them as the first
/// rows. Returns `None` when they do not span a saturated sublattice with a
/// basis given by themselves.
pub fn complete_to_basis(rays: &[Row], n: usize) -> Option<Vec<Row>> {
    let k = rays.len();
    let mut m: Vec<Row> = (0..n)
        .map(|i| rays.iter().map(|row| row[i].clone()).collect())
        .collect();
    let mut u = identity(n);
    let rank = echelon(&mut m, &mut u, k);
    if rank != k {
        return None;
    }
    let top: Vec<RatVec> = m[..k].iter().map(|r| RatVec::from_integers(r)).collect();
    if !linalg::determinant(&top).abs().is_one() {
        return None;
    }
    // rays * U^T = [H^T | 0]; the trailing rows of (U^T)^{-1} complete the basis.
    let ut: Vec<RatVec> = (0..n)
        .map(|i| RatVec::from_integers(&(0..n).map(|j| u[j][i].clone()).collect::<Vec<_>>()))
        .collect();
    let w = linalg::inverse(&ut)?;
    let mut basis: Vec<Row> = rays.to_vec();
    for row in &w[k..] {
        basis.push(row.to_integers()?);
    }
    Some(basis)
}
