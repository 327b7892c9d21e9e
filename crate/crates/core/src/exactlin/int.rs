//! Integer backends for the exact kernels.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact integer arithmetic where every operation may fail on overflow.
///
/// `i64` reports overflow as [`Error::Overflow`]; `BigInt` never fails.
pub trait ExactInt: Clone + Eq + Ord + Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn zero() -> Self;
    fn one() -> Self {
        Self::from_i64(1)
    }
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, rhs: &Self) -> Result<Self>;
    fn sub(&self, rhs: &Self) -> Result<Self>;
    fn mul(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Result<Self>;
    /// Floor division; `rhs` must be nonzero.
    fn div_floor(&self, rhs: &Self) -> Result<Self>;
    /// Nonnegative gcd.
    fn gcd(&self, rhs: &Self) -> Self;
}

const OVERFLOW: Error = Error::Overflow("checked 64-bit kernel");

impl ExactInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(*rhs).ok_or(OVERFLOW)
    }
    fn sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(*rhs).ok_or(OVERFLOW)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(*rhs).ok_or(OVERFLOW)
    }
    fn neg(&self) -> Result<Self> {
        self.checked_neg().ok_or(OVERFLOW)
    }
    fn div_floor(&self, rhs: &Self) -> Result<Self> {
        if *self == i64::MIN && *rhs == -1 {
            return Err(OVERFLOW);
        }
        Ok(Integer::div_floor(self, rhs))
    }
    fn gcd(&self, rhs: &Self) -> Self {
        // i64::MIN has no positive counterpart; callers never reach it after
        // checked arithmetic, but keep gcd total.
        let g = Integer::gcd(&(*self as i128), &(*rhs as i128));
        i64::try_from(g).unwrap_or(i64::MAX)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn neg(&self) -> Result<Self> {
        Ok(-self)
    }
    fn div_floor(&self, rhs: &Self) -> Result<Self> {
        Ok(Integer::div_floor(self, rhs))
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
}

pub(crate) fn lift<T: ExactInt>(v: &[i64]) -> Vec<T> {
    v.iter().map(|&x| T::from_i64(x)).collect()
}

pub(crate) fn lower<T: ExactInt>(v: &[T]) -> Result<Vec<i64>> {
    v.iter().map(|x| x.to_i64().ok_or(Error::Overflow("result does not fit in 64 bits"))).collect()
}

pub(crate) fn dot<T: ExactInt>(a: &[T], b: &[T]) -> Result<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y)?)?;
        }
    }
    Ok(acc)
}

/// `alpha * a + beta * b`, entrywise.
pub(crate) fn combine<T: ExactInt>(alpha: &T, a: &[T], beta: &T, b: &[T]) -> Result<Vec<T>> {
    a.iter().zip(b).map(|(x, y)| alpha.mul(x)?.add(&beta.mul(y)?)).collect()
}

/// Divides out the content of `v`. Returns false for the zero vector.
pub(crate) fn make_primitive<T: ExactInt>(v: &mut [T]) -> Result<bool> {
    let mut g = T::zero();
    for x in v.iter() {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Ok(false);
    }
    if g != T::one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g)?;
        }
    }
    Ok(true)
}

/// Extended gcd: returns `(g, x, y)` with `x*a + y*b = g >= 0`.
pub(crate) fn ext_gcd<T: ExactInt>(a: &T, b: &T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r)?;
        let next_r = old_r.sub(&q.mul(&r)?)?;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s.sub(&q.mul(&s)?)?;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t.sub(&q.mul(&t)?)?;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        Ok((old_r.neg()?, old_s.neg()?, old_t.neg()?))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

/// Rank of a list of integer vectors by fraction-free elimination.
pub(crate) fn rank<T: ExactInt>(rows: &[Vec<T>]) -> Result<usize> {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].neg()?;
            let mut row = combine(&a, &m[i], &b, &m[r])?;
            make_primitive(&mut row)?;
            m[i] = row;
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Ok(r)
}
