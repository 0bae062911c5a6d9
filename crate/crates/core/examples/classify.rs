//! Exhaustive search over all permutations and admissible tuples, compared
//! with the generic twists and the table of twistable tuples.
//!
//! cargo run --release --example classify -- 3 8

use mhg_twist::classifier::{find_twists, table1_report, theorem_report};

fn main() -> mhg_twist::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u32>().ok());
    let lo = args.next().flatten().unwrap_or(3);
    let hi = args.next().flatten().unwrap_or(6);

    for delta in lo..=hi {
        let started = std::time::Instant::now();
        let families = find_twists(delta)?;
        let theorem = theorem_report(delta, &families)?;
        let table = table1_report(delta, &families)?;
        println!(
            "δ={delta}: {} twists, theorem {}, table {} ({:.1?})",
            families.len(),
            if theorem.pass { "PASS" } else { "FAIL" },
            if table.pass { "PASS" } else { "FAIL" },
            started.elapsed()
        );
        for (t, names) in &theorem.found {
            let names: Vec<_> = names.iter().map(|k| k.name()).collect();
            println!("  {:<24} {:<8}", t.to_string(), names.join("/"));
            for m in &families[t] {
                println!("      {}  ->  {}", m.params, m.image);
            }
        }
        for (kind, p) in &table.unlisted {
            println!("  unlisted {} tuple {p}", kind.name());
        }
    }
    Ok(())
}
