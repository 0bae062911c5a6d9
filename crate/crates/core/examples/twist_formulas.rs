//! The four generic twists, cycle twists, and basic permutation algebra.
//!
//! cargo run --example twist_formulas -- 7

use mhg_twist::{GenericKind, Twist};

fn main() -> mhg_twist::Result<()> {
    let delta: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);

    for kind in GenericKind::ALL {
        let t = kind.twist(delta)?;
        println!(
            "{:<8} {:<24} images {:?}",
            kind.name(),
            t.to_string(),
            t.images()
        );
    }

    let rho = Twist::rho(delta)?;
    println!(
        "rho o rho_inv = {}",
        rho.compose(&Twist::rho_inverse(delta)?)?
    );
    println!(
        "tau1 o tau1   = {}",
        Twist::tau(delta, 1)?.compose(&Twist::tau(delta, 1)?)?
    );

    let parsed = Twist::from_cycles(delta, "(1 2)")?;
    println!("(1 2) is an involution: {}", parsed.is_involution());

    // distances of C_13 under v -> 5v
    println!("mu(13, 5) = {}", Twist::mu(13, 5)?);
    Ok(())
}
