//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use latgap::exactlin::{cone_membership_system, double_description, satisfies};
use latgap::fibration::{build_fibration, make_pka, make_qab, FiberSpec};
use latgap::graphs::{complete_graph, connected_graphs, cycle_graph, edge_polytope, has_two_disjoint_odd_cycles};
use latgap::monoid::{closure, facet_normality, hilbert_basis, is_very_ample, mu_invariants, mu_invariants_product};
use latgap::oracle::{
    corollary_pka_predicates, gap_formula_pka, gap_formula_qab, hilbert_basis_pka, holes_pka, holes_qab,
    product_identities,
};
use latgap::{ComputeConfig, Engine, GradedPoint, LatticePolytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg(engine: Engine) -> ComputeConfig {
    ComputeConfig::default().with_engine(engine)
}

fn holes_by_degree(p: &LatticePolytope, d: u64, engine: Engine) -> Result<(Vec<u64>, Vec<Vec<GradedPoint>>), String> {
    let led = closure(p, d, &cfg(engine)).map_err(|e| e.to_string())?;
    let holes = led.levels.iter().map(|l| l.holes.clone()).collect();
    Ok((led.gap_vector(), holes))
}

fn c1() -> Check {
    let p = make_pka(3, 5).map_err(|e| e.to_string())?;
    let want_hole = GradedPoint { coords: vec![3, 1, 1, 1, 1, 1, 1, 4] };
    for engine in [Engine::Generic, Engine::Fiber] {
        let (gamma, holes) = holes_by_degree(&p, 6, engine)?;
        ensure(gamma == vec![0, 0, 0, 1, 0, 0, 0], || format!("{engine:?}: gamma {gamma:?}"))?;
        let all: Vec<_> = holes.concat();
        ensure(all == vec![want_hole.clone()], || format!("{engine:?}: holes {all:?}"))?;
    }
    Ok("gamma (0,0,0,1,0,0,0), hole (3,1,1,1,1,1,1,4), generic and fiber".into())
}

fn pka_against_oracle(k: u64, a: i64, d: u64) -> Result<Vec<u64>, String> {
    let p = make_pka(k, a).map_err(|e| e.to_string())?;
    let (gamma, holes) = holes_by_degree(&p, d, Engine::Auto)?;
    let want = gap_formula_pka(k, a, d).map_err(|e| e.to_string())?;
    ensure(gamma == want, || format!("P_({k},{a}): gamma {gamma:?}, formula {want:?}"))?;
    for (level, h) in holes.iter().enumerate() {
        let oracle = holes_pka(k, a, level as u64).map_err(|e| e.to_string())?;
        ensure(*h == oracle, || format!("P_({k},{a}) level {level}: hole sets differ"))?;
    }
    Ok(gamma)
}

fn c2() -> Check {
    let g37 = pka_against_oracle(3, 7, 7)?;
    let g46 = pka_against_oracle(4, 6, 8)?;
    Ok(format!("P_(3,7) gamma {g37:?}; P_(4,6) gamma {g46:?}; hole sets equal"))
}

fn c3() -> Check {
    let mut summary = Vec::new();
    for (k, a) in [(2u64, 4i64), (3, 5), (3, 7), (4, 6)] {
        let p = make_pka(k, a).map_err(|e| e.to_string())?;
        let top = if a > k as i64 + 1 { k } else { 1 };
        let d = top + p.dim() as u64;
        let report = hilbert_basis(&p, d, &ComputeConfig::default()).map_err(|e| e.to_string())?;
        let oracle = hilbert_basis_pka(k, a).map_err(|e| e.to_string())?;
        ensure(report.elements == oracle, || format!("P_({k},{a}): basis differs from B u A"))?;
        ensure(report.complete, || format!("P_({k},{a}): no stabilization window up to {d}"))?;
        let extra = report.elements.iter().filter(|x| x.degree() > 1).count() as i64;
        ensure(extra == a - k as i64 - 1, || format!("P_({k},{a}): |A| = {extra}"))?;
        summary.push(format!("P_({k},{a}) {}+{extra} to D={d}", 4 * k));
    }
    Ok(summary.join(", "))
}

fn qab_against_oracle(a: i64, b: i64, d: u64) -> Result<Vec<u64>, String> {
    let q = make_qab(a, b).map_err(|e| e.to_string())?;
    let (gamma, holes) = holes_by_degree(&q, d, Engine::Fiber)?;
    let want = gap_formula_qab(a, b, d).map_err(|e| e.to_string())?;
    ensure(gamma == want, || format!("Q_({a},{b}): gamma {gamma:?}, formula {want:?}"))?;
    for (level, h) in holes.iter().enumerate().skip(2) {
        let oracle = holes_qab(a, b, level as u64).map_err(|e| e.to_string())?;
        ensure(*h == oracle, || format!("Q_({a},{b}) level {level}: hole sets differ"))?;
    }
    Ok(gamma)
}

fn c4() -> Check {
    let g = qab_against_oracle(1, 8, 9)?;
    Ok(format!("Q_(1,8) gamma {g:?}; hole sets equal"))
}

fn c5() -> Check {
    let q = make_qab(2, 15).map_err(|e| e.to_string())?;
    let g = closure(&q, 11, &cfg(Engine::Fiber)).map_err(|e| e.to_string())?.gap_vector();
    let want = gap_formula_qab(2, 15, 11).map_err(|e| e.to_string())?;
    ensure(g == want, || format!("gamma {g:?}, formula {want:?}"))?;
    ensure((g[9], g[10], g[11]) == (288, 270, 275), || format!("gamma_9..11 = {:?}", &g[9..]))?;
    ensure(g[9] > g[10] && g[10] < g[11], || "not a valley".into())?;
    Ok(format!("gamma_9 = {} > gamma_10 = {} < gamma_11 = {}", g[9], g[10], g[11]))
}

fn c6() -> Check {
    let mut out = Vec::new();
    for (k, a) in [(4u64, 6i64), (3, 5)] {
        let p = make_pka(k, a).map_err(|e| e.to_string())?;
        let r = mu_invariants(&p, k + 1, 5, 3, &ComputeConfig::default()).map_err(|e| e.to_string())?;
        let non_normal: Vec<u64> = (1..=5).filter(|&s| !r.normal_dilations[s as usize - 1]).collect();
        let predicted: Vec<u64> =
            (1..=5).filter(|&s| !corollary_pka_predicates(k, s).map(|c| c.normal).unwrap_or(true)).collect();
        ensure(non_normal == predicted, || format!("k={k}: non-normal {non_normal:?}, predicted {predicted:?}"))?;
        let c = corollary_pka_predicates(k, 1).map_err(|e| e.to_string())?;
        let got = (r.mu_hilb, r.mu_midp, r.mu_idp);
        ensure(got == (c.mu_hilb, c.mu_midp, c.mu_idp), || format!("k={k}: mu {got:?}"))?;
        out.push(format!("k={k}: non-normal s {non_normal:?}, mu {got:?}"));
    }
    Ok(out.join("; "))
}

fn c7() -> Check {
    let q = make_qab(1, 8).map_err(|e| e.to_string())?;
    let fq = facet_normality(&q, 4, &ComputeConfig::default()).map_err(|e| e.to_string())?;
    ensure(!fq.is_empty() && fq.iter().all(|f| f.normal), || "a facet of Q_(1,8) is not normal".into())?;
    ensure(fq.iter().all(|f| f.dim == 3), || "facet of wrong dimension".into())?;
    let prod = make_pka(3, 5).and_then(|p| p.product(&make_pka(4, 6)?)).map_err(|e| e.to_string())?;
    let fp = facet_normality(&prod, 3, &ComputeConfig::default()).map_err(|e| e.to_string())?;
    let bad = fp.iter().filter(|f| !f.normal).count();
    ensure(bad > 0, || "all product facets normal up to degree 3".into())?;
    Ok(format!("Q_(1,8): {} facets normal to D=4; P_(3,5)xP_(4,6): {bad} of {} facets with holes", fq.len(), fp.len()))
}

fn c8() -> Check {
    let p = make_pka(3, 5).map_err(|e| e.to_string())?;
    let q = make_pka(4, 6).map_err(|e| e.to_string())?;
    let pq = p.product(&q).map_err(|e| e.to_string())?;
    let c = ComputeConfig::default();
    let lp = closure(&p, 5, &c).map_err(|e| e.to_string())?;
    let lq = closure(&q, 5, &c).map_err(|e| e.to_string())?;
    let lpq = closure(&pq, 5, &c).map_err(|e| e.to_string())?;
    let pred = product_identities(&lp, &lq).map_err(|e| e.to_string())?;
    ensure(lpq.ehrhart_counts() == pred.level_points, || {
        format!("|L_d| {:?} vs {:?}", lpq.ehrhart_counts(), pred.level_points)
    })?;
    ensure(lpq.hilbert_function() == pred.reachable, || {
        format!("|G_d| {:?} vs {:?}", lpq.hilbert_function(), pred.reachable)
    })?;
    let gamma = lpq.gap_vector();
    let support: Vec<usize> = (0..gamma.len()).filter(|&d| gamma[d] > 0).collect();
    ensure(support == vec![3, 4], || format!("gamma {gamma:?}"))?;
    let mu = mu_invariants_product(&p, &q, 5, 5, 3, &c).map_err(|e| e.to_string())?;
    ensure(mu.mu_idp == 3, || format!("mu_idp {}", mu.mu_idp))?;
    Ok(format!("|L_5| = {}, gamma {gamma:?}, mu_idp 3", pred.level_points[5]))
}

fn c9() -> Check {
    let c = ComputeConfig::default();
    let p = make_pka(3, 5).map_err(|e| e.to_string())?;
    let q = make_qab(1, 8).map_err(|e| e.to_string())?;
    ensure(is_very_ample(&p, 40, &c).map_err(|e| e.to_string())?.is_very_ample(), || "P_(3,5) not very ample".into())?;
    ensure(is_very_ample(&q, 60, &c).map_err(|e| e.to_string())?.is_very_ample(), || "Q_(1,8) not very ample".into())?;
    let gp = closure(&p, 6, &c).map_err(|e| e.to_string())?.gap_vector();
    ensure(gp[4..=6].iter().all(|&g| g == 0), || format!("P_(3,5) gamma {gp:?}"))?;
    let gq = closure(&q, 11, &c).map_err(|e| e.to_string())?.gap_vector();
    ensure(gq[8] > 0 && gq[9..=11].iter().all(|&g| g == 0), || format!("Q_(1,8) gamma {gq:?}"))?;
    Ok("VeryAmpleUpTo(40) for P_(3,5), VeryAmpleUpTo(60) for Q_(1,8); 3 empty degrees past the last gap".into())
}

fn c10() -> Check {
    let normal = |k: u64, s: u64| corollary_pka_predicates(k, s).map(|c| c.normal).map_err(|e| e.to_string());
    ensure(normal(25, 2)? && normal(25, 3)? && !normal(25, 5)?, || "k=25 pattern".into())?;
    let mut fact = 1u64;
    for n in 1..=5u64 {
        fact *= n;
        if n < 3 {
            continue;
        }
        for s in 1..=n {
            ensure(!normal(fact, s)?, || format!("k={fact}: {s}P predicted normal"))?;
        }
    }
    // at n = 2 the factor s = 2 reaches k = 2! and the dilation is normal
    ensure(normal(2, 2)? && !normal(2, 1)?, || "k=2 boundary".into())?;
    let c = ComputeConfig::default();
    for (k, a) in [(3u64, 5i64), (4, 6)] {
        let p = make_pka(k, a).map_err(|e| e.to_string())?;
        for s in 1..=k {
            let m = 3u64.max(k.div_ceil(s));
            let got = latgap::monoid::is_normal_dilation(&p, s, m, &c).map_err(|e| e.to_string())?;
            ensure(got == normal(k, s)?, || format!("k={k}, s={s}: engine {got}"))?;
        }
    }
    Ok("k=25: 2P,3P normal, 5P not; k=n! (n=3,4,5): sP non-normal for s<=n; engine agrees at k=3,4".into())
}

fn c11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bases = [
        edge_polytope(&cycle_graph(4).unwrap()).unwrap(),
        edge_polytope(&cycle_graph(6).unwrap()).unwrap(),
        edge_polytope(&complete_graph(4).unwrap()).unwrap(),
    ];
    for case in 0..50 {
        let base = bases[case % 3].clone();
        let heights = (0..base.vertices().len())
            .map(|_| {
                let lo = rng.gen_range(0..5);
                (lo, rng.gen_range(lo + 1..=5))
            })
            .collect();
        let p = build_fibration(&FiberSpec { base, heights }).map_err(|e| e.to_string())?;
        let g = closure(&p, 4, &cfg(Engine::Generic)).map_err(|e| e.to_string())?;
        let f = closure(&p, 4, &cfg(Engine::Fiber)).map_err(|e| e.to_string())?;
        ensure(g.levels == f.levels, || format!("fibration case {case}: ledgers differ"))?;
    }
    let mut cones = 0;
    while cones < 200 {
        let dim = rng.gen_range(1..=4usize);
        let count = rng.gen_range(1..=6usize);
        let gens: Vec<Vec<i64>> = (0..count)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..=3)).collect())
            .filter(|g: &Vec<i64>| g.iter().any(|&x| x != 0))
            .collect();
        if gens.is_empty() {
            continue;
        }
        let cone = double_description(&gens).map_err(|e| e.to_string())?;
        let fm = cone_membership_system(&gens).map_err(|e| e.to_string())?;
        let mut x = vec![-5i64; dim];
        loop {
            ensure(cone.contains(&x) == satisfies(&fm, &x), || format!("{gens:?} at {x:?}"))?;
            let mut i = 0;
            while i < dim && x[i] == 5 {
                x[i] = -5;
                i += 1;
            }
            if i == dim {
                break;
            }
            x[i] += 1;
        }
        cones += 1;
    }
    let mut graphs = 0;
    for n in 2..=6 {
        for g in connected_graphs(n).map_err(|e| e.to_string())? {
            if has_two_disjoint_odd_cycles(&g).map_err(|e| e.to_string())? {
                continue;
            }
            let p = edge_polytope(&g).map_err(|e| e.to_string())?;
            let gamma = closure(&p, 4, &ComputeConfig::default()).map_err(|e| e.to_string())?.gap_vector();
            ensure(gamma.iter().all(|&x| x == 0), || format!("{g:?}: gamma {gamma:?}"))?;
            graphs += 1;
        }
    }
    Ok(format!("50 fibrations, 200 cones, {graphs} unimodular graphs"))
}

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 single hole of P_(3,5), both engines", c1),
        ("2 gap vectors and hole sets of P_(3,7), P_(4,6)", c2),
        ("3 Hilbert bases of P_(k,a)", c3),
        ("4 gap vector and hole sets of Q_(1,8)", c4),
        ("5 non-unimodal gap vector of Q_(2,15)", c5),
        ("6 dilation normality and mu for k=4, k=3", c6),
        ("7 facet normality", c7),
        ("8 product laws on P_(3,5) x P_(4,6)", c8),
        ("9 bounded very ampleness and empty hole windows", c9),
        ("10 out-of-scale claims via oracle and small-k engine", c10),
        ("11 property suites", c11),
    ];
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        let id = name.split(' ').next().unwrap_or_default();
        if !only.is_empty() && !only.iter().any(|o| o == id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {msg}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
