//! Bottom edge of the Hofstadter butterfly: rigorous bounds for every
//! coprime flux M/N up to a maximal period, written as CSV.

use eigenbounds::discrete::{coprime_fractions, hofstadter_bottom};
use eigenbounds::io::write_butterfly_csv;
use eigenbounds::OptimizerConfig;

fn main() -> eigenbounds::Result<()> {
    let n_max = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(12);
    let config = OptimizerConfig {
        max_iterations: 100_000,
        tolerance: 1e-8,
        ..OptimizerConfig::default()
    };
    let rows = hofstadter_bottom(&coprime_fractions(n_max), 1.0, &config)?;
    write_butterfly_csv(std::io::stdout().lock(), &rows)?;
    let worst = rows.iter().map(|r| r.upper - r.lower).fold(0.0, f64::max);
    eprintln!("{} fluxes, widest enclosure {worst:.2e}", rows.len());
    Ok(())
}
