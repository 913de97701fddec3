//! Hydrogen in a uniform magnetic field: the closed-form upper bound
//! -1/2 + B/2 and the sampled maximum of the local energy.

use eigenbounds::continuum::{zeeman_profile, zeeman_upper_bound, Axis, GridDomain};
use eigenbounds::io::write_profile_csv;

fn main() -> eigenbounds::Result<()> {
    let with_axis = GridDomain::new(vec![Axis::new(0.0, 4.0, 81)?, Axis::new(-4.0, 4.0, 161)?])?;
    let off_axis = GridDomain::new(vec![Axis::new(0.5, 4.0, 71)?, Axis::new(-4.0, 4.0, 161)?])?;
    for b in [0.0, 0.5, 1.0, 2.0, 10.0] {
        let (analytic, sampled) = zeeman_upper_bound(b, &with_axis)?;
        let (_, sampled_off) = zeeman_upper_bound(b, &off_axis)?;
        println!("B = {b:5}: analytic {analytic:8.4}  sampled {sampled:8.4}  without rho = 0 {sampled_off:8.4}");
    }
    if let Some(path) = std::env::args().nth(1) {
        write_profile_csv(
            std::fs::File::create(&path)?,
            &zeeman_profile(1.0, &with_axis)?,
        )?;
        println!("B = 1 profile written to {path}");
    }
    Ok(())
}
