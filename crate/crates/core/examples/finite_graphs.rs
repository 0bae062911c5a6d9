//! Explicit finite graphs: homogeneity, antipodality, and which distance
//! permutations turn them into graphs again.
//!
//! cargo run --release --example finite_graphs

use mhg_twist::finite_graphs::{
    antipodal_double_cover, apply_twist_metric, check_antipodal_law, complement_twist, crown_graph,
    cycle_graph, icosahedron, is_metrically_homogeneous, path_graph, rook_graph, FiniteMetricGraph,
    Homogeneity,
};
use mhg_twist::Twist;

fn describe(name: &str, g: &FiniteMetricGraph) -> mhg_twist::Result<()> {
    let h = match is_metrically_homogeneous(g)? {
        Homogeneity::Homogeneous => "homogeneous".to_string(),
        Homogeneity::NotHomogeneous(w) => format!("not homogeneous, e.g. {w}"),
    };
    println!(
        "{name}: n={} diameter={} bipartite={} antipodal law {:?}; {h}",
        g.len(),
        g.diameter(),
        g.is_bipartite(),
        check_antipodal_law(g)
    );
    Ok(())
}

fn main() -> mhg_twist::Result<()> {
    let ico = icosahedron();
    describe("icosahedron", &ico)?;
    describe("crown(4)", &crown_graph(4)?)?;
    describe("C9", &cycle_graph(9)?)?;
    describe("P4", &path_graph(4)?)?;

    let rook = rook_graph(3)?;
    let base: Vec<Vec<usize>> = (0..rook.len())
        .map(|u| rook.neighbors(u).to_vec())
        .collect();
    describe("double cover of K3xK3", &antipodal_double_cover(&base)?)?;

    for g in [("icosahedron", ico), ("crown(4)", crown_graph(4)?)] {
        for s in ["(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"] {
            let t = Twist::from_cycles(3, s)?;
            let r = apply_twist_metric(&g.1, &t)?.report;
            println!(
                "  {} by {s:<8} valid={} components={} path-metric={}",
                g.0,
                r.is_valid(),
                r.unit_components,
                r.is_path_metric
            );
        }
    }

    let c = complement_twist(&cycle_graph(5)?)?;
    println!("complement of C5: twistable={}", c.is_twistable());
    Ok(())
}
