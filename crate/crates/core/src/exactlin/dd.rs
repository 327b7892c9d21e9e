//! Double description: facets of the cone spanned by integer generators.

use super::cone::HRepCone;
use super::hnf::kernel_generic;
use super::int::{combine, dot, lift, lower, make_primitive, rank, ExactInt};
use crate::config::Arith;
use crate::error::{Error, Result};

/// H-representation of the cone spanned by `generators`.
///
/// Generators are inserted in lexicographic order; two rays are combined
/// only when the constraints tight on both have rank `dim - 2` in the current
/// quotient by the lineality space. The result is in canonical form.
pub fn double_description(generators: &[Vec<i64>]) -> Result<HRepCone> {
    double_description_with(generators, Arith::Auto)
}

pub fn double_description_with(generators: &[Vec<i64>], arith: Arith) -> Result<HRepCone> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidInput("double description needs at least one generator".into()));
    };
    let dim = first.len();
    if generators.iter().any(|g| g.len() != dim) {
        return Err(Error::InvalidInput("generators of different lengths".into()));
    }
    if generators.iter().any(|g| g.iter().all(|&x| x == 0)) {
        return Err(Error::InvalidInput("zero generator".into()));
    }
    let mut gens = generators.to_vec();
    gens.sort();
    gens.dedup();
    let (equations, inequalities) = dispatch!(arith, dd_generic(&gens, dim))?;
    let cone = HRepCone::new(dim, equations, inequalities)?.canonical()?;
    if !cone.is_pointed()? {
        return Err(Error::NotPointed);
    }
    Ok(cone)
}

struct Ray<T> {
    v: Vec<T>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

type RowsPair = (Vec<Vec<i64>>, Vec<Vec<i64>>);

fn dd_generic<T: ExactInt>(gens: &[Vec<i64>], dim: usize) -> Result<RowsPair> {
    let words = gens.len().div_ceil(64).max(1);
    let lifted: Vec<Vec<T>> = gens.iter().map(|g| lift(g)).collect();

    // Dual cone {n : g.n >= 0 for all processed g} = lineality + rays.
    let mut lineality: Vec<Vec<T>> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
    let mut rays: Vec<Ray<T>> = Vec::new();

    for (gi, g) in lifted.iter().enumerate() {
        let values: Vec<T> = lineality.iter().map(|l| dot(g, l)).collect::<Result<_>>()?;
        if let Some(p) = values.iter().position(|v| !v.is_zero()) {
            let mut lp = lineality.remove(p);
            let mut a = values[p].clone();
            if a.is_negative() {
                for x in lp.iter_mut() {
                    *x = x.neg()?;
                }
                a = a.neg()?;
            }
            for l in lineality.iter_mut() {
                let b = dot(g, l)?;
                if !b.is_zero() {
                    let mut nl = combine(&a, l, &b.neg()?, &lp)?;
                    make_primitive(&mut nl)?;
                    *l = nl;
                }
            }
            for r in rays.iter_mut() {
                let b = dot(g, &r.v)?;
                if !b.is_zero() {
                    let mut nr = combine(&a, &r.v, &b.neg()?, &lp)?;
                    make_primitive(&mut nr)?;
                    r.v = nr;
                }
                bit_set(&mut r.zeros, gi);
            }
            let mut zeros = vec![0u64; words];
            for j in 0..gi {
                bit_set(&mut zeros, j);
            }
            make_primitive(&mut lp)?;
            rays.push(Ray { v: lp, zeros });
            continue;
        }

        let qdim = dim - lineality.len();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next: Vec<Ray<T>> = Vec::new();
        for r in rays.drain(..) {
            let s = dot(g, &r.v)?;
            if s.is_zero() {
                let mut r = r;
                bit_set(&mut r.zeros, gi);
                next.push(r);
            } else if s.is_negative() {
                neg.push((r, s));
            } else {
                pos.push((r, s));
            }
        }
        if qdim >= 2 {
            for (rp, sp) in &pos {
                for (rn, sn) in &neg {
                    let common: Vec<u64> = rp.zeros.iter().zip(&rn.zeros).map(|(a, b)| a & b).collect();
                    let count: usize = common.iter().map(|w| w.count_ones() as usize).sum();
                    if count < qdim - 2 {
                        continue;
                    }
                    let tight: Vec<Vec<T>> =
                        (0..gi).filter(|&j| common[j / 64] >> (j % 64) & 1 == 1).map(|j| lifted[j].clone()).collect();
                    if rank(&tight)? != qdim - 2 {
                        continue;
                    }
                    let mut v = combine(sp, &rn.v, &sn.neg()?, &rp.v)?;
                    make_primitive(&mut v)?;
                    let mut zeros = common;
                    bit_set(&mut zeros, gi);
                    next.push(Ray { v, zeros });
                }
            }
        }
        next.extend(pos.into_iter().map(|(r, _)| r));
        rays = next;
    }

    let equations: Vec<Vec<i64>> = kernel_generic::<T>(gens, dim)?.iter().map(|r| lower(r)).collect::<Result<_>>()?;
    let inequalities: Vec<Vec<i64>> = rays.iter().map(|r| lower(&r.v)).collect::<Result<_>>()?;
    Ok((equations, inequalities))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant() {
        let c = double_description(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(c.equations().is_empty());
        assert_eq!(c.inequalities(), &[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn square_cone_has_four_facets() {
        let gens: Vec<Vec<i64>> = vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![1, 1, 1]];
        let c = double_description(&gens).unwrap();
        assert_eq!(c.inequalities().len(), 4);
        for g in &gens {
            assert!(c.contains(g));
        }
        assert!(!c.contains(&[1, 2, 0]));
        assert!(c.contains(&[2, 1, 1]));
    }

    #[test]
    fn lower_dimensional_cone() {
        // segment from (1,0) to (0,1) at height 1 in Z^3: plane x0 = x1 + x2
        let c = double_description(&[vec![1, 1, 0], vec![1, 0, 1]]).unwrap();
        assert_eq!(c.equations().len(), 1);
        assert_eq!(c.inequalities().len(), 2);
        assert!(c.contains(&[3, 1, 2]));
        assert!(!c.contains(&[3, 4, -1]));
    }

    #[test]
    fn lines_are_rejected() {
        assert_eq!(double_description(&[vec![1, 0], vec![-1, 0], vec![0, 1]]), Err(Error::NotPointed));
        assert!(double_description(&[vec![0, 0]]).is_err());
        assert!(double_description(&[]).is_err());
    }

    #[test]
    fn backends_agree_on_pyramid() {
        let gens = vec![vec![1, 0, 0, 0], vec![1, 3, 0, 0], vec![1, 0, 3, 0], vec![1, 3, 3, 0], vec![1, 1, 1, 2]];
        let a = double_description_with(&gens, Arith::Checked64).unwrap();
        let b = double_description_with(&gens, Arith::Big).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.inequalities().len(), 5);
    }
}
