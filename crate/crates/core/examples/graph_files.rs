//! Reading and writing graphs as edge lists and adjacency JSON.
//!
//! cargo run --example graph_files -- my_graph.txt

use mhg_twist::finite_graphs::{icosahedron, FiniteMetricGraph};

fn main() -> mhg_twist::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => {
            let file = std::io::BufReader::new(std::fs::File::open(path)?);
            FiniteMetricGraph::read_edge_list(file)?
        }
        None => icosahedron(),
    };
    println!(
        "n={} edges={} diameter={}",
        g.len(),
        g.edge_count(),
        g.diameter()
    );

    let mut text = Vec::new();
    g.write_edge_list(&mut text)?;
    println!("edge list:\n{}", String::from_utf8_lossy(&text));
    println!("json: {}", g.to_json()?);

    let again = FiniteMetricGraph::from_json(&g.to_json()?)?;
    assert_eq!(again, g);
    Ok(())
}
