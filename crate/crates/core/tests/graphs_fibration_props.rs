use latgap::exactlin::matrix_rank;
use latgap::fibration::{build_fibration, make_pka, validate_fibration, FiberSpec};
use latgap::graphs::{
    complete_graph, connected_graphs, cycle_graph, edge_polytope, edge_vertex, is_unimodular_edge_polytope,
};
use latgap::monoid::{closure, gap_vector, is_very_ample};
use latgap::{ComputeConfig, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> ComputeConfig {
    ComputeConfig::default()
}

#[test]
fn unimodular_edge_polytopes_are_normal() {
    let mut checked = 0;
    for n in 2..=7 {
        for g in connected_graphs(n).unwrap() {
            if is_unimodular_edge_polytope(&g).unwrap() {
                let gaps = gap_vector(&edge_polytope(&g).unwrap(), 4, &cfg()).unwrap();
                assert!(gaps.iter().all(|&x| x == 0), "{g:?}: {gaps:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 400);
}

#[test]
fn edge_polytope_dimension() {
    for n in 2..=6 {
        for g in connected_graphs(n).unwrap() {
            let p = edge_polytope(&g).unwrap();
            let homogenized: Vec<Vec<i64>> =
                p.vertices().iter().map(|v| std::iter::once(1).chain(v.iter().copied()).collect()).collect();
            let affine = matrix_rank(&homogenized).unwrap() - 1;
            let want = if g.is_bipartite() { n - 2 } else { n - 1 };
            assert_eq!(affine, want, "{g:?}");
            assert_eq!(p.dim(), want);
        }
    }
}

#[test]
fn disjoint_triangles_without_bridge_are_not_normal() {
    let bridged = Graph::new(6, vec![(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 4)]).unwrap();
    assert!(!is_unimodular_edge_polytope(&bridged).unwrap());
    assert!(gap_vector(&edge_polytope(&bridged).unwrap(), 3, &cfg()).unwrap().iter().all(|&x| x == 0));
    let g = Graph::new(7, vec![(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (3, 7), (4, 7)]).unwrap();
    let gaps = gap_vector(&edge_polytope(&g).unwrap(), 3, &cfg()).unwrap();
    assert_eq!(gaps[..3], [0, 0, 0]);
    assert!(gaps[3] > 0);
}

fn random_spec(rng: &mut ChaCha8Rng, base: &latgap::LatticePolytope) -> FiberSpec {
    let heights = (0..base.vertices().len())
        .map(|_| {
            let lo = rng.gen_range(0..5);
            (lo, rng.gen_range(lo + 1..=5))
        })
        .collect();
    FiberSpec { base: base.clone(), heights }
}

fn bases() -> Vec<latgap::LatticePolytope> {
    [cycle_graph(4), cycle_graph(6), complete_graph(4)]
        .into_iter()
        .map(|g| edge_polytope(&g.unwrap()).unwrap())
        .collect()
}

#[test]
fn fibrations_over_unimodular_bases_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bases = bases();
    for i in 0..200 {
        let spec = random_spec(&mut rng, &bases[i % 3]);
        let p = build_fibration(&spec).unwrap();
        let report = validate_fibration(&p, &cfg()).unwrap();
        assert!(report.valid, "{:?}", spec.heights);
        assert!(report.fibers.iter().all(|f| f.lattice_points >= 2));
    }
}

#[test]
fn fibrations_over_unimodular_bases_are_very_ample() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases = bases();
    for i in 0..24 {
        let spec = random_spec(&mut rng, &bases[i % 3]);
        let p = build_fibration(&spec).unwrap();
        let v = is_very_ample(&p, 12, &cfg()).unwrap();
        assert!(v.is_very_ample(), "{:?}: {v:?}", spec.heights);
    }
}

#[test]
fn pka_is_a_fibration_over_an_even_cycle() {
    for (k, a) in [(2u64, 4i64), (3, 5), (3, 7), (4, 6)] {
        let m = 2 * k as usize;
        let base = edge_polytope(&cycle_graph(m).unwrap()).unwrap();
        let heights =
            base.vertices().iter().map(|v| if *v == edge_vertex(m, 1, 2) { (a, a + 1) } else { (0, 1) }).collect();
        let built = build_fibration(&FiberSpec { base, heights }).unwrap();
        let mut x = built.vertices().to_vec();
        let mut y = make_pka(k, a).unwrap().vertices().to_vec();
        x.sort();
        y.sort();
        assert_eq!(x, y, "P_({k},{a})");
        assert!(validate_fibration(&built, &cfg()).unwrap().valid);
    }
}

#[test]
fn non_segmental_projection_is_rejected() {
    let base = latgap::LatticePolytope::new(1, vec![vec![0], vec![2]]).unwrap();
    let p = build_fibration(&FiberSpec { base: base.clone(), heights: vec![(0, 2), (2, 4)] }).unwrap();
    assert!(validate_fibration(&p, &cfg()).unwrap().valid);
    // the fiber over 1 is [0, 3/2]
    let p = build_fibration(&FiberSpec { base, heights: vec![(0, 1), (0, 2)] }).unwrap();
    let report = validate_fibration(&p, &cfg()).unwrap();
    assert!(!report.endpoints_integral && !report.valid);
    let strict = ComputeConfig::default().with_engine(latgap::Engine::Fiber);
    assert!(matches!(closure(&p, 2, &strict), Err(latgap::Error::NotAFibration(_))));
}
