//! Searches for the configurations of N points maximizing the angular
//! function F_N and compares them with the known geometries.

use std::time::Instant;

use eigenbounds::manybody::{
    angles_sum_fn, bipyramid_value, h0_root, maximize_fn, named_configuration, octahedron_value,
    twisted_squares_value, ConfigurationName,
};
use eigenbounds::OptimizerConfig;

fn main() -> eigenbounds::Result<()> {
    let config = OptimizerConfig::new(5000, 1e-10, 50, 1)?;
    let references = [
        (3, 1.5, "equilateral"),
        (4, 6.0, "tetrahedron"),
        (5, bipyramid_value(h0_root()), "bipyramid"),
        (6, octahedron_value(), "octahedron"),
        (8, twisted_squares_value(), "twisted_squares"),
    ];
    for (n, reference, name) in references {
        let t = Instant::now();
        let best = maximize_fn(n, 3, &config)?;
        let exact = angles_sum_fn(&named_configuration(
            name.parse::<ConfigurationName>()?,
            None,
        )?)?
        .value;
        println!(
            "N = {n}: best {:.10}  {name} {:.10}  closed form {:.10}  ({:.2?})",
            best.best_value,
            exact,
            reference,
            t.elapsed()
        );
    }
    Ok(())
}
