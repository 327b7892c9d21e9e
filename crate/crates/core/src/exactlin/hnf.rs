//! Row-style Hermite normal form and the lattice utilities built on it.

use super::int::{combine, ext_gcd, lift, lower, ExactInt};
use super::matrix::IntMatrix;
use crate::config::Arith;
use crate::error::Result;

/// Returns `(h, u)` with `u` unimodular and `h = u * m` in row Hermite normal
/// form: echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are at the bottom.
pub fn hnf(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    hnf_with(m, Arith::Auto)
}

pub fn hnf_with(m: &IntMatrix, arith: Arith) -> Result<(IntMatrix, IntMatrix)> {
    let rows = m.to_rows();
    let (h, u) = dispatch!(arith, hnf_rows(&rows, m.cols()))?;
    Ok((IntMatrix::from_rows(&h, m.cols())?, IntMatrix::from_rows(&u, m.rows())?))
}

type RowsPair<T> = (Vec<Vec<T>>, Vec<Vec<T>>);

fn hnf_rows<T: ExactInt>(rows: &[Vec<i64>], cols: usize) -> Result<RowsPair<i64>> {
    let (h, u) = hnf_generic::<T>(rows.iter().map(|r| lift(r)).collect(), cols)?;
    let h = h.iter().map(|r| lower(r)).collect::<Result<_>>()?;
    let u = u.iter().map(|r| lower(r)).collect::<Result<_>>()?;
    Ok((h, u))
}

pub(crate) fn hnf_generic<T: ExactInt>(mut h: Vec<Vec<T>>, cols: usize) -> Result<RowsPair<T>> {
    let n = h.len();
    let mut u: Vec<Vec<T>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut piv = 0;
    for c in 0..cols {
        if piv == n {
            break;
        }
        for r in piv + 1..n {
            if h[r][c].is_zero() {
                continue;
            }
            let a = h[piv][c].clone();
            let b = h[r][c].clone();
            let (g, x, y) = ext_gcd(&a, &b)?;
            let bg = b.div_floor(&g)?.neg()?;
            let ag = a.div_floor(&g)?;
            let new_p = combine(&x, &h[piv], &y, &h[r])?;
            let new_r = combine(&bg, &h[piv], &ag, &h[r])?;
            h[piv] = new_p;
            h[r] = new_r;
            let new_up = combine(&x, &u[piv], &y, &u[r])?;
            let new_ur = combine(&bg, &u[piv], &ag, &u[r])?;
            u[piv] = new_up;
            u[r] = new_ur;
        }
        if h[piv][c].is_zero() {
            continue;
        }
        if h[piv][c].is_negative() {
            for x in h[piv].iter_mut().chain(u[piv].iter_mut()) {
                *x = x.neg()?;
            }
        }
        let p = h[piv][c].clone();
        for r in 0..piv {
            let q = h[r][c].div_floor(&p)?;
            if q.is_zero() {
                continue;
            }
            let mq = q.neg()?;
            h[r] = combine(&T::one(), &h[r], &mq, &h[piv])?;
            u[r] = combine(&T::one(), &u[r], &mq, &u[piv])?;
        }
        piv += 1;
    }
    Ok((h, u))
}

/// Rank of an integer matrix given by rows.
pub fn matrix_rank(rows: &[Vec<i64>]) -> Result<usize> {
    dispatch!(Arith::Auto, rank_rows(rows))
}

fn rank_rows<T: ExactInt>(rows: &[Vec<i64>]) -> Result<usize> {
    let lifted: Vec<Vec<T>> = rows.iter().map(|r| lift(r)).collect();
    super::int::rank(&lifted)
}

/// Lattice basis, in Hermite normal form, of `{x in Z^cols : A x = 0}`.
pub fn integer_kernel(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    dispatch!(Arith::Auto, kernel_rows(rows, cols))
}

fn kernel_rows<T: ExactInt>(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    let k = kernel_generic::<T>(rows, cols)?;
    k.iter().map(|r| lower(r)).collect()
}

pub(crate) fn kernel_generic<T: ExactInt>(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<T>>> {
    // Rows of U annihilating A^T span the left kernel of A^T, which is the
    // right kernel of A; U unimodular makes them a lattice basis.
    let at: Vec<Vec<T>> = (0..cols).map(|c| rows.iter().map(|r| T::from_i64(r[c])).collect()).collect();
    let (h, u) = hnf_generic(at, rows.len())?;
    let basis: Vec<Vec<T>> =
        h.iter().zip(u).filter(|(hr, _)| hr.iter().all(ExactInt::is_zero)).map(|(_, ur)| ur).collect();
    let (hb, _) = hnf_generic(basis, cols)?;
    Ok(hb.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect())
}

/// HNF basis of the saturation `span_R(rows) ∩ Z^cols`.
pub fn saturate(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    let perp = integer_kernel(rows, cols)?;
    integer_kernel(&perp, cols)
}

/// Coordinates of `x` in a lattice basis given in row Hermite normal form.
/// Returns `None` if `x` is not in the lattice.
pub fn lattice_coordinates(basis_hnf: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let mut rest: Vec<i128> = x.iter().map(|&v| v as i128).collect();
    let mut coords = Vec::with_capacity(basis_hnf.len());
    for row in basis_hnf {
        let c = row.iter().position(|&v| v != 0)?;
        let p = row[c] as i128;
        if rest.iter().take(c).any(|&v| v != 0) || rest[c] % p != 0 {
            return None;
        }
        let q = rest[c] / p;
        for (r, &b) in rest.iter_mut().zip(row) {
            *r -= q * b as i128;
        }
        coords.push(i64::try_from(q).ok()?);
    }
    rest.iter().all(|&v| v == 0).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols).unwrap()
    }

    #[test]
    fn identity_is_its_own_form() {
        let id = IntMatrix::identity(2);
        let (h, u) = hnf(&id).unwrap();
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn determinant_preserved_up_to_sign() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let (h, u) = hnf(&a).unwrap();
        assert_eq!(h.determinant().unwrap().abs(), 2);
        assert_eq!(u.determinant().unwrap().abs(), 1);
        assert_eq!(u.mul(&a).unwrap(), h);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn empty_matrix() {
        let e = IntMatrix::zeros(0, 3);
        let (h, u) = hnf(&e).unwrap();
        assert_eq!(h.rows(), 0);
        assert_eq!(u.rows(), 0);
    }

    #[test]
    fn backends_agree() {
        let a = m(&[&[6, 10, 15], &[4, -2, 7], &[0, 3, 9]]);
        assert_eq!(hnf_with(&a, Arith::Checked64).unwrap(), hnf_with(&a, Arith::Big).unwrap());
    }

    #[test]
    fn kernel_and_saturation() {
        // x + y + z = 0 has kernel lattice basis of rank 2
        let k = integer_kernel(&[vec![1, 1, 1]], 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v.iter().sum::<i64>(), 0);
        }
        let s = saturate(&[vec![2, 0], vec![0, 4]], 2).unwrap();
        assert_eq!(s, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn coordinates_in_hnf_basis() {
        let basis = vec![vec![1, 0, -1], vec![0, 1, -1]];
        assert_eq!(lattice_coordinates(&basis, &[3, -2, -1]), Some(vec![3, -2]));
        assert_eq!(lattice_coordinates(&basis, &[1, 1, 1]), None);
    }
}
