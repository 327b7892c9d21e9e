//! Packing of graded points into `u128` keys.
//!
//! Coordinate `i` at degree `d` is stored as `x_i - d * m_i` where `m_i` is
//! the smallest vertex coordinate, in a field wide enough for degree `D`.
//! The degree occupies the most significant field. Adding keys adds points,
//! and key order is the lexicographic order of points.

use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct Codec {
    offsets: Vec<i64>,
    shifts: Vec<u32>,
    degree_shift: u32,
}

fn bits(v: u128) -> u32 {
    128 - v.leading_zeros()
}

impl Codec {
    /// Encodes the first `vmin.len()` coordinates of points of degree at most `max_degree`.
    pub(crate) fn new(vmin: &[i64], vmax: &[i64], max_degree: u64) -> Result<Self> {
        let mut widths = Vec::with_capacity(vmin.len());
        let mut total = bits(max_degree as u128);
        for (&lo, &hi) in vmin.iter().zip(vmax) {
            let range = (hi as i128 - lo as i128) as u128 * max_degree as u128;
            let w = bits(range);
            widths.push(w);
            total += w;
        }
        if total > 128 {
            return Err(Error::EncodingTooWide { bits: total });
        }
        let mut shifts = vec![0u32; widths.len()];
        let mut acc = 0;
        for i in (0..widths.len()).rev() {
            shifts[i] = acc;
            acc += widths[i];
        }
        Ok(Self { offsets: vmin.to_vec(), shifts, degree_shift: acc })
    }

    pub(crate) fn encode(&self, degree: u64, x: &[i64]) -> u128 {
        let mut key = (degree as u128) << self.degree_shift;
        for ((&xi, &m), &s) in x.iter().zip(&self.offsets).zip(&self.shifts) {
            let v = (xi as i128 - degree as i128 * m as i128) as u128;
            key |= v << s;
        }
        key
    }

    #[cfg(test)]
    pub(crate) fn decode(&self, key: u128) -> (u64, Vec<i64>) {
        let degree = (key >> self.degree_shift) as u64;
        let mut x = Vec::with_capacity(self.offsets.len());
        let mut upper = self.degree_shift;
        for (&m, &s) in self.offsets.iter().zip(&self.shifts) {
            let mask = if upper - s == 128 { u128::MAX } else { (1u128 << (upper - s)) - 1 };
            let v = ((key >> s) & mask) as i128;
            x.push((v + degree as i128 * m as i128) as i64);
            upper = s;
        }
        (degree, x)
    }
}
