//! Lists admissible parameter tuples of one diameter as CSV, and explains
//! why some nearby tuples are rejected.
//!
//! cargo run --example enumerate_tuples -- 4 > tuples.csv

use mhg_twist::parameter_space::{
    check_admissible, enumerate_candidates, structural_tuples, write_tuples_csv,
};

fn main() -> mhg_twist::Result<()> {
    let delta: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let tuples = enumerate_candidates(delta)?;
    write_tuples_csv(std::io::stdout().lock(), &tuples)?;

    let all = structural_tuples(delta)?;
    eprintln!(
        "{} of {} structurally valid tuples are admissible",
        tuples.len(),
        all.len()
    );
    for p in all.iter().filter(|p| !tuples.contains(p)).take(8) {
        if let Err(why) = check_admissible(p) {
            eprintln!("  {p}: {why}");
        }
    }
    Ok(())
}
