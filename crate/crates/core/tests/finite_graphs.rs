use mhg_twist::finite_graphs::*;
use mhg_twist::parameter_space::{derive_parameters, K1};
use mhg_twist::Twist;

fn neighbor_lists(g: &FiniteMetricGraph) -> Vec<Vec<usize>> {
    (0..g.len()).map(|u| g.neighbors(u).to_vec()).collect()
}

fn homogeneous_zoo() -> Vec<(&'static str, FiniteMetricGraph)> {
    let mut zoo = vec![
        ("icosahedron", icosahedron()),
        ("cube", hypercube(3).unwrap()),
        ("K2,2,2", complete_multipartite(&[2, 2, 2]).unwrap()),
        ("K3x3", rook_graph(3).unwrap()),
    ];
    for n in 5..=12 {
        zoo.push(("cycle", cycle_graph(n).unwrap()));
    }
    for m in 3..=6 {
        zoo.push(("crown", crown_graph(m).unwrap()));
    }
    zoo
}

#[test]
fn zoo_is_homogeneous() {
    for (name, g) in homogeneous_zoo() {
        assert!(
            is_metrically_homogeneous(&g).unwrap().is_homogeneous(),
            "{name} n={}",
            g.len()
        );
    }
}

#[test]
fn non_homogeneous_graphs_yield_partial_isometries() {
    let prism_with_chord = FiniteMetricGraph::from_edges(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
            (0, 2),
        ],
    )
    .unwrap();
    // Q4 is distance-transitive but not metrically homogeneous
    for g in [
        path_graph(5).unwrap(),
        prism_with_chord,
        hypercube(4).unwrap(),
    ] {
        let Homogeneity::NotHomogeneous(w) = is_metrically_homogeneous(&g).unwrap() else {
            panic!("expected a witness");
        };
        let m = g.metric();
        for i in 0..w.domain.len() {
            for j in 0..w.domain.len() {
                assert_eq!(
                    m.get(w.domain[i], w.domain[j]),
                    m.get(w.range[i], w.range[j])
                );
            }
        }
        // and no isometry of the whole graph extends it
        let all = all_isometries(m);
        assert!(!all
            .iter()
            .any(|f| w.domain.iter().zip(&w.range).all(|(&a, &b)| f[a] == b)));
    }
}

fn all_isometries(m: &DistanceMatrix) -> Vec<Vec<usize>> {
    fn go(m: &DistanceMatrix, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let x = map.len();
        if x == m.len() {
            out.push(map.clone());
            return;
        }
        for y in 0..m.len() {
            if !map.contains(&y) && (0..x).all(|p| m.get(p, x) == m.get(map[p], y)) {
                map.push(y);
                go(m, map, out);
                map.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut out);
    out
}

#[test]
fn derived_parameters_match_fiber_edges() {
    for (name, g) in homogeneous_zoo() {
        let t = g.triangle_set().unwrap();
        let p = derive_parameters(&t).unwrap().params;
        let edge_in = |i: u32| {
            let f = g.fiber(0, i);
            f.iter().any(|&a| f.iter().any(|&b| g.adjacent(a, b)))
        };
        let ks: Vec<u32> = (1..=g.diameter()).filter(|&i| edge_in(i)).collect();
        match ks.first() {
            None => assert_eq!((p.k1(), p.k2()), (K1::Infinity, 0), "{name}"),
            Some(&lo) => {
                assert_eq!(p.k1(), K1::Finite(lo), "{name}");
                assert_eq!(p.k2(), *ks.last().unwrap(), "{name}");
            }
        }
        assert_eq!(p.is_bipartite(), g.is_bipartite(), "{name}");
    }
}

#[test]
fn antipodal_law_on_homogeneous_antipodal_graphs() {
    let mut seen = 0;
    for (name, g) in homogeneous_zoo() {
        if g.is_antipodal() {
            seen += 1;
            assert_eq!(check_antipodal_law(&g), AntipodalLaw::Holds, "{name}");
        }
    }
    assert!(seen >= 8);
}

#[test]
fn cycle_twists_by_units_and_non_units() {
    for n in 7..=50usize {
        let c = cycle_graph(n).unwrap();
        for k in 1..n {
            let g = num_gcd(k, n);
            if g == 1 {
                let t = Twist::mu(n as u32, k as u32).unwrap();
                let tm = apply_twist_metric(&c, &t).unwrap();
                assert!(tm.report.is_valid(), "n={n} k={k}");
                assert!(find_isometry(&tm.matrix, c.metric()).is_some());
            } else {
                // k·d mod n, folded, is always a multiple of gcd(k, n):
                // no pair lands at distance 1.
                assert!(Twist::mu(n as u32, k as u32).is_err());
                let relabelled = |d: usize| {
                    let r = k * d % n;
                    r.min(n - r)
                };
                assert!((1..=n / 2).all(|d| relabelled(d) % g == 0 && relabelled(d) != 1));
            }
        }
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn double_covers_of_small_graphs() {
    // Taylor's construction over C5, the empty graph and K3 x K3.
    let c5 = cycle_graph(5).unwrap();
    let ico = antipodal_double_cover(&neighbor_lists(&c5)).unwrap();
    assert!(find_isometry(ico.metric(), icosahedron().metric()).is_some());

    let rook = rook_graph(3).unwrap();
    let cover = antipodal_double_cover(&neighbor_lists(&rook)).unwrap();
    assert_eq!((cover.len(), cover.diameter()), (20, 3));
    assert!(cover.is_antipodal());
    assert_eq!(check_antipodal_law(&cover), AntipodalLaw::Holds);
    assert!(is_metrically_homogeneous(&cover).unwrap().is_homogeneous());

    // Over C6 the construction is antipodal but not homogeneous.
    let c6 = cycle_graph(6).unwrap();
    let bad = antipodal_double_cover(&neighbor_lists(&c6)).unwrap();
    assert!(!is_metrically_homogeneous(&bad).unwrap().is_homogeneous());
}

#[test]
fn diameter_two_complements() {
    let rook = complement_twist(&rook_graph(3).unwrap()).unwrap();
    assert!(rook.is_twistable());
    let h = FiniteMetricGraph::from_adjacency(rook.complement.clone()).unwrap();
    // K3 x K3 is self-complementary
    assert!(find_isometry(h.metric(), rook_graph(3).unwrap().metric()).is_some());
    let c5 = complement_twist(&cycle_graph(5).unwrap()).unwrap();
    assert!(c5.is_twistable());
    let oct = complement_twist(&complete_multipartite(&[2, 2, 2]).unwrap()).unwrap();
    assert_eq!(oct.components, 3);
    assert!(!oct.is_twistable());
    let k33 = complement_twist(&complete_multipartite(&[3, 3]).unwrap()).unwrap();
    assert_eq!(k33.components, 2);
}

#[test]
fn twists_of_cube_and_icosahedron() {
    let perms: Vec<Twist> = ["(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"]
        .iter()
        .map(|s| Twist::from_cycles(3, s).unwrap())
        .collect();
    let cube = hypercube(3).unwrap();
    assert!(perms
        .iter()
        .all(|t| !apply_twist_metric(&cube, t).unwrap().report.is_valid()));
    let ico = icosahedron();
    let valid: Vec<String> = perms
        .iter()
        .filter(|t| apply_twist_metric(&ico, t).unwrap().report.is_valid())
        .map(ToString::to_string)
        .collect();
    assert_eq!(valid, vec!["(1 2)"]);
}
