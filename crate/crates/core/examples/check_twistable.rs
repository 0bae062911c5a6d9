//! Twistability verdicts for a handful of tuples, as JSON records.
//!
//! cargo run --example check_twistable

use mhg_twist::parameter_space::{ParameterTuple, K1};
use mhg_twist::twistability::check_twistable;
use mhg_twist::{GenericKind, Twist};

fn main() -> mhg_twist::Result<()> {
    let cases = [
        (
            ParameterTuple::from_c_pair(3, K1::Finite(1), 2, 10, 11)?,
            GenericKind::Tau1.twist(3)?,
        ),
        (
            ParameterTuple::from_c_pair(3, K1::Finite(1), 3, 10, 11)?,
            GenericKind::Tau1.twist(3)?,
        ),
        (
            ParameterTuple::from_c_pair(6, K1::Finite(1), 6, 14, 15)?,
            GenericKind::Rho.twist(6)?,
        ),
        (
            ParameterTuple::from_c_pair(5, K1::Finite(2), 3, 11, 12)?,
            Twist::from_cycles(5, "(1 2)")?,
        ),
        (
            ParameterTuple::from_c_pair(4, K1::Infinity, 0, 9, 10)?,
            GenericKind::Tau0.twist(4)?,
        ),
    ];
    for (p, t) in cases {
        let v = check_twistable(&p, &t)?;
        println!("{p} by {t}");
        println!("  {}", serde_json::to_string(&v.to_record())?);
    }
    Ok(())
}
