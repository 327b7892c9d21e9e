use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::codec::Codec;
use crate::config::{ComputeConfig, Engine};
use crate::error::{Error, Result};
use crate::fibration::require_fibration;
use crate::polytope::{GradedPoint, LatticePolytope, LevelRows};

/// Counts and holes at one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelLedger {
    pub degree: u64,
    /// `|L_d|`, the lattice points of `dP`.
    pub level_points: u64,
    /// `|G_d|`, the sums of `d` lattice points of `P`.
    pub reachable: u64,
    /// `|H_d| = |L_d| - |G_d|`.
    pub hole_count: u64,
    /// The holes in lexicographic order, possibly truncated to the hole cap.
    pub holes: Vec<GradedPoint>,
    pub holes_truncated: bool,
}

/// The graded semigroup of a polytope, degree by degree up to `max_degree`.
///
/// `levels[d]` describes degree `d`. Since every reachable point is a level
/// point, the level counts together with the hole sets determine `G_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureLedger {
    pub max_degree: u64,
    pub engine: Engine,
    pub levels: Vec<LevelLedger>,
}

impl ClosureLedger {
    pub fn gap_vector(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.hole_count).collect()
    }

    pub fn hilbert_function(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.reachable).collect()
    }

    pub fn ehrhart_counts(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.level_points).collect()
    }

    pub fn holes(&self) -> impl Iterator<Item = &GradedPoint> {
        self.levels.iter().flat_map(|l| l.holes.iter())
    }

    pub fn is_hole_free(&self) -> bool {
        self.levels.iter().all(|l| l.hole_count == 0)
    }
}

/// Computes `L_d`, `G_d` and `H_d` for `d <= max_degree`.
pub fn closure(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<ClosureLedger> {
    if max_degree < 1 {
        return Err(Error::InvalidInput("closure needs a maximal degree of at least 1".into()));
    }
    let engine = match config.engine {
        Engine::Generic => Engine::Generic,
        Engine::Fiber => {
            require_fibration(p, config)?;
            Engine::Fiber
        }
        Engine::Auto => {
            let l1 = p.level_rows(1, config)?;
            if l1.point_count() >= 2 * l1.len() as u64 {
                Engine::Fiber
            } else {
                Engine::Generic
            }
        }
    };
    config.install(|| match engine {
        Engine::Generic => generic(p, max_degree, config),
        _ => fiber(p, max_degree, config),
    })
}

pub fn gap_vector(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<Vec<u64>> {
    Ok(closure(p, max_degree, config)?.gap_vector())
}

/// `|G_d|`, the number of points of `dP` that are sums of `d` points of `P`.
pub fn hilbert_function(p: &LatticePolytope, d: u64, config: &ComputeConfig) -> Result<u64> {
    if d == 0 {
        return Ok(1);
    }
    Ok(closure(p, d, config)?.levels[d as usize].reachable)
}

fn vertex_box(p: &LatticePolytope, coords: usize) -> (Vec<i64>, Vec<i64>) {
    let v = p.vertices();
    let lo = (0..coords).map(|i| v.iter().map(|x| x[i]).min().unwrap_or(0)).collect();
    let hi = (0..coords).map(|i| v.iter().map(|x| x[i]).max().unwrap_or(0)).collect();
    (lo, hi)
}

fn level_zero() -> LevelLedger {
    LevelLedger { degree: 0, level_points: 1, reachable: 1, hole_count: 0, holes: Vec::new(), holes_truncated: false }
}

struct HoleSink {
    cap: usize,
    holes: Vec<GradedPoint>,
    count: u64,
}

impl HoleSink {
    fn new(cap: usize) -> Self {
        Self { cap, holes: Vec::new(), count: 0 }
    }

    fn push(&mut self, degree: u64, x: &[i64]) {
        self.count += 1;
        if self.holes.len() < self.cap {
            self.holes.push(GradedPoint::new(degree, x));
        }
    }

    fn finish(self, level: &LevelRows) -> LevelLedger {
        LevelLedger {
            degree: level.degree(),
            level_points: level.point_count(),
            reachable: level.point_count() - self.count,
            hole_count: self.count,
            holes_truncated: (self.holes.len() as u64) < self.count,
            holes: self.holes,
        }
    }
}

fn generic(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<ClosureLedger> {
    let n = p.ambient_dim();
    let (lo, hi) = vertex_box(p, n);
    let codec = Codec::new(&lo, &hi, max_degree)?;
    let l1 = p.level_rows(1, config)?;
    let mut gens = Vec::with_capacity(l1.point_count() as usize);
    l1.for_each_point(|x| gens.push(codec.encode(1, x)));

    let mut levels = vec![level_zero()];
    levels.push(HoleSink::new(config.hole_cap).finish(&l1));
    let mut current: Vec<u128> = gens.clone();
    for d in 2..=max_degree {
        let level = p.level_rows(d, config)?;
        let reached: FxHashSet<u128> = current
            .par_chunks(4096)
            .fold(FxHashSet::default, |mut acc, chunk| {
                for &g in chunk {
                    for &l in &gens {
                        acc.insert(g + l);
                    }
                }
                acc
            })
            .reduce(FxHashSet::default, |mut a, b| {
                if a.len() < b.len() {
                    return union(b, a);
                }
                a.extend(b);
                a
            });
        let mut sink = HoleSink::new(config.hole_cap);
        level.for_each_point(|x| {
            if !reached.contains(&codec.encode(d, x)) {
                sink.push(d, x);
            }
        });
        levels.push(sink.finish(&level));
        if d < max_degree {
            current = reached.into_iter().collect();
        }
    }
    Ok(ClosureLedger { max_degree, engine: Engine::Generic, levels })
}

fn union(mut a: FxHashSet<u128>, b: FxHashSet<u128>) -> FxHashSet<u128> {
    a.extend(b);
    a
}

type Intervals = Vec<(i64, i64)>;

fn normalize(mut v: Intervals) -> Intervals {
    v.sort_unstable();
    let mut out: Intervals = Vec::with_capacity(v.len());
    for (s, e) in v {
        match out.last_mut() {
            Some(last) if s <= last.1 + 1 => last.1 = last.1.max(e),
            _ => out.push((s, e)),
        }
    }
    out
}

fn fiber(p: &LatticePolytope, max_degree: u64, config: &ComputeConfig) -> Result<ClosureLedger> {
    let n = p.ambient_dim();
    let (lo, hi) = vertex_box(p, n - 1);
    let codec = Codec::new(&lo, &hi, max_degree)?;
    let l1 = p.level_rows(1, config)?;
    let gens: Vec<(u128, i64, i64)> = (0..l1.len())
        .map(|i| {
            let (a, b) = l1.bounds(i);
            (codec.encode(1, l1.prefix(i)), a, b)
        })
        .collect();

    let mut levels = vec![level_zero()];
    levels.push(HoleSink::new(config.hole_cap).finish(&l1));
    let mut current: Vec<(u128, Intervals)> = gens.iter().map(|&(k, a, b)| (k, vec![(a, b)])).collect();
    for d in 2..=max_degree {
        let level = p.level_rows(d, config)?;
        let merged: FxHashMap<u128, Intervals> = current
            .par_chunks(256)
            .fold(FxHashMap::default, |mut acc: FxHashMap<u128, Intervals>, chunk| {
                for (key, ints) in chunk {
                    for &(gk, a, b) in &gens {
                        let slot = acc.entry(key + gk).or_default();
                        slot.extend(ints.iter().map(|&(s, e)| (s + a, e + b)));
                    }
                }
                for v in acc.values_mut() {
                    *v = normalize(std::mem::take(v));
                }
                acc
            })
            .reduce(FxHashMap::default, |mut a, b| {
                for (k, v) in b {
                    match a.get_mut(&k) {
                        Some(slot) => {
                            slot.extend(v);
                            *slot = normalize(std::mem::take(slot));
                        }
                        None => {
                            a.insert(k, v);
                        }
                    }
                }
                a
            });
        let mut sink = HoleSink::new(config.hole_cap);
        let mut x = vec![0i64; n];
        for i in 0..level.len() {
            let prefix = level.prefix(i);
            let (a, b) = level.bounds(i);
            x[..n - 1].copy_from_slice(prefix);
            let reach = merged.get(&codec.encode(d, prefix)).map(Vec::as_slice).unwrap_or(&[]);
            let mut t = a;
            for &(s, e) in reach {
                while t < s.min(b + 1) {
                    x[n - 1] = t;
                    sink.push(d, &x);
                    t += 1;
                }
                t = t.max(e + 1);
            }
            while t <= b {
                x[n - 1] = t;
                sink.push(d, &x);
                t += 1;
            }
        }
        levels.push(sink.finish(&level));
        if d < max_degree {
            let mut next: Vec<(u128, Intervals)> = merged.into_iter().collect();
            next.sort_unstable_by_key(|e| e.0);
            current = next;
        }
    }
    Ok(ClosureLedger { max_degree, engine: Engine::Fiber, levels })
}
