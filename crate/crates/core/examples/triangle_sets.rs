//! Triangle sets realized by a parameter tuple, and their twisted images.
//!
//! cargo run --example triangle_sets

use mhg_twist::parameter_space::{derive_parameters, ParameterTuple, K1};
use mhg_twist::triangle_catalog::realized_set;
use mhg_twist::Twist;

fn main() -> mhg_twist::Result<()> {
    let p = ParameterTuple::from_c_pair(3, K1::Finite(1), 2, 10, 11)?;
    let set = realized_set(&p);
    println!("{p}: {} triangle types", set.len());
    for t in set.iter() {
        println!("  {t}  perimeter {}", t.perimeter());
    }
    for i in 1..=3 {
        println!("fiber {i}: distances {:?}", set.fiber_distances(i));
    }

    let tau1 = Twist::tau(3, 1)?;
    let image = set.image(&tau1)?;
    println!(
        "image under {tau1}: metric={}, geodesics={}",
        image.is_metric(),
        image.contains_geodesics()
    );
    println!("derived from image: {}", derive_parameters(&image)?.params);

    let rho = Twist::rho(3)?;
    match set.image(&rho)?.metric_violation() {
        Some(bad) => println!("under {rho} the set is not metric: {bad}"),
        None => println!("under {rho} the set stays metric"),
    }
    Ok(())
}
