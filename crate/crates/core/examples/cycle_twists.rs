//! Twists of the n-cycle: one per pair {k, n-k} of units mod n.
//!
//! cargo run --example cycle_twists -- 7 8 12 13

use mhg_twist::classifier::classify_cycle_twists;

fn main() -> mhg_twist::Result<()> {
    let ns: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let ns = if ns.is_empty() {
        vec![6, 7, 12, 13]
    } else {
        ns
    };
    for n in ns {
        let twists = classify_cycle_twists(n)?;
        println!("C_{n}: {} twist(s)", twists.len());
        for c in twists {
            println!(
                "  k={:<3} {:<20} verified={}",
                c.k,
                c.twist.to_string(),
                c.verified
            );
        }
    }
    Ok(())
}
