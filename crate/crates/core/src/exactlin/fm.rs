//! Fourier–Motzkin elimination.
//!
//! A row `[c, a_1, .., a_n]` stands for `c + a.x >= 0`; column 0 is the
//! constant term and is never eliminated.

use super::int::{combine, lift, lower, make_primitive, ExactInt};
use crate::config::Arith;
use crate::error::{Error, Result};

/// Eliminates column `var` from `ineqs` and drops that column.
pub fn fm_eliminate(ineqs: &[Vec<i64>], var: usize) -> Result<Vec<Vec<i64>>> {
    fm_project(ineqs, &[], &[var])
}

/// Projects `{x : ineqs(x) >= 0, eqs(x) = 0}` away from the columns in
/// `eliminate`. Equations are used for substitution when possible; otherwise
/// the variable is eliminated with Chernikov's history bound. The surviving
/// columns keep their relative order.
pub fn fm_project(ineqs: &[Vec<i64>], eqs: &[Vec<i64>], eliminate: &[usize]) -> Result<Vec<Vec<i64>>> {
    let width = ineqs.iter().chain(eqs).map(Vec::len).next().unwrap_or(0);
    if ineqs.iter().chain(eqs).any(|r| r.len() != width) {
        return Err(Error::InvalidInput("rows of different lengths".into()));
    }
    let mut cols: Vec<usize> = eliminate.to_vec();
    cols.sort_unstable();
    cols.dedup();
    if cols.iter().any(|&v| v == 0 || v >= width) {
        return Err(Error::InvalidInput("cannot eliminate this column".into()));
    }
    let kept: Vec<usize> = (0..width).filter(|c| cols.binary_search(c).is_err()).collect();
    dispatch!(Arith::Auto, project_generic(ineqs, eqs, &cols, &kept))
}

struct Row<T> {
    v: Vec<T>,
    history: Vec<u64>,
}

fn project_generic<T: ExactInt>(
    ineqs: &[Vec<i64>],
    eqs: &[Vec<i64>],
    cols: &[usize],
    kept: &[usize],
) -> Result<Vec<Vec<i64>>> {
    let words = ineqs.len().div_ceil(64).max(1);
    let mut rows: Vec<Row<T>> = ineqs
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut history = vec![0u64; words];
            history[i / 64] |= 1 << (i % 64);
            Row { v: lift(r), history }
        })
        .collect();
    let mut eqs: Vec<Vec<T>> = eqs.iter().map(|r| lift(r)).collect();
    let mut fm_steps = 0usize;

    for &var in cols {
        if let Some(p) = eqs.iter().position(|e| !e[var].is_zero()) {
            let mut e = eqs.remove(p);
            if e[var].is_negative() {
                for x in e.iter_mut() {
                    *x = x.neg()?;
                }
            }
            let a = e[var].clone();
            for r in rows.iter_mut() {
                let b = r.v[var].clone();
                if !b.is_zero() {
                    r.v = combine(&a, &r.v, &b.neg()?, &e)?;
                    make_primitive(&mut r.v)?;
                }
            }
            for f in eqs.iter_mut() {
                let b = f[var].clone();
                if !b.is_zero() {
                    *f = combine(&a, f, &b.neg()?, &e)?;
                    make_primitive(f)?;
                }
            }
            continue;
        }

        fm_steps += 1;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut next = Vec::new();
        for r in rows.drain(..) {
            if r.v[var].is_zero() {
                next.push(r);
            } else if r.v[var].is_negative() {
                neg.push(r);
            } else {
                pos.push(r);
            }
        }
        for p in &pos {
            for n in &neg {
                let history: Vec<u64> = p.history.iter().zip(&n.history).map(|(a, b)| a | b).collect();
                let size: usize = history.iter().map(|w| w.count_ones() as usize).sum();
                if size > fm_steps + 1 {
                    continue;
                }
                let mut v = combine(&p.v[var], &n.v, &n.v[var].neg()?, &p.v)?;
                make_primitive(&mut v)?;
                next.push(Row { v, history });
            }
        }
        rows = next;
    }

    let mut out: Vec<Vec<i64>> = Vec::with_capacity(rows.len() + 2 * eqs.len());
    let push = |v: &[T], out: &mut Vec<Vec<i64>>| -> Result<()> {
        let full = lower(v)?;
        let r: Vec<i64> = kept.iter().map(|&c| full[c]).collect();
        if r.iter().any(|&x| x != 0) {
            out.push(r);
        }
        Ok(())
    };
    for r in &rows {
        push(&r.v, &mut out)?;
    }
    for e in &eqs {
        push(e, &mut out)?;
        let minus: Vec<T> = e.iter().map(|x| x.neg()).collect::<Result<_>>()?;
        push(&minus, &mut out)?;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// True when every row `[c, a]` of a fully eliminated or partially
/// eliminated system holds at `x` (with `x` not including the constant).
pub fn satisfies(rows: &[Vec<i64>], x: &[i64]) -> bool {
    rows.iter().all(|r| r[0] as i128 + r[1..].iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum::<i128>() >= 0)
}

/// Inequalities in `p` (with zero constant column) describing the real cone
/// spanned by `generators`: the projection of `{(p, l) : l >= 0, sum l_j g_j = p}`.
pub fn cone_membership_system(generators: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidInput("no generators".into()));
    };
    let n = first.len();
    let m = generators.len();
    let width = 1 + n + m;
    let mut ineqs = Vec::with_capacity(m);
    for j in 0..m {
        let mut r = vec![0; width];
        r[1 + n + j] = 1;
        ineqs.push(r);
    }
    let mut eqs = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = vec![0; width];
        r[1 + i] = -1;
        for (j, g) in generators.iter().enumerate() {
            if g.len() != n {
                return Err(Error::InvalidInput("generators of different lengths".into()));
            }
            r[1 + n + j] = g[i];
        }
        eqs.push(r);
    }
    let lambdas: Vec<usize> = (1 + n..width).collect();
    fm_project(&ineqs, &eqs, &lambdas)
}
