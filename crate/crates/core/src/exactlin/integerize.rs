use num_traits::{One, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Rounds `z` to integers inside `intervals` without changing the sum `c`.
///
/// Entries are processed left to right. Each value plus the carried rounding
/// error is pushed to the nearest integer still compatible with the remaining
/// intervals (ties round down), and the difference is carried forward.
pub fn integerize_interval_sum(c: i64, intervals: &[(i64, i64)], z: &[Rational]) -> Result<Vec<i64>> {
    if intervals.len() != z.len() {
        return Err(Error::InvalidInput("intervals and values differ in length".into()));
    }
    let mut total = Rational::zero();
    for (&(a, b), zi) in intervals.iter().zip(z) {
        if a > b || *zi < Rational::from_integer(a.into()) || *zi > Rational::from_integer(b.into()) {
            return Err(Error::InvalidInput(format!("value {zi} outside [{a}, {b}]")));
        }
        total += zi;
    }
    if total != Rational::from_integer(c.into()) {
        return Err(Error::InvalidInput(format!("values sum to {total}, not {c}")));
    }

    let n = z.len();
    let mut rest_lo = vec![0i128; n + 1];
    let mut rest_hi = vec![0i128; n + 1];
    for i in (0..n).rev() {
        rest_lo[i] = rest_lo[i + 1] + intervals[i].0 as i128;
        rest_hi[i] = rest_hi[i + 1] + intervals[i].1 as i128;
    }
    let half = Rational::new(1.into(), 2.into());
    let mut remaining = c as i128;
    let mut carry = Rational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let w = &z[i] + &carry;
        let fl = w.floor();
        let nearest = if &w - &fl > half { fl + Rational::one() } else { fl };
        let mut t = nearest.to_integer().to_i128().ok_or(Error::Overflow("integerize"))?;
        let lo = (intervals[i].0 as i128).max(remaining - rest_hi[i + 1]);
        let hi = (intervals[i].1 as i128).min(remaining - rest_lo[i + 1]);
        t = t.clamp(lo, hi);
        carry = w - Rational::from_integer(t.into());
        remaining -= t;
        out.push(t as i64);
    }
    Ok(out)
}
