//! Ground-energy bounds for N identical bosons with attractive Coulomb
//! interactions, with the proven and the conjectural angular densities.

use eigenbounds::manybody::{
    identical_coulomb_bounds, local_energy_identical, named_configuration, AlphaSource,
    ConfigurationName,
};

fn main() -> eigenbounds::Result<()> {
    let d = 3;
    println!(
        "{:>3} {:>8} {:>14} {:>14}  conjectural",
        "N", "alpha", "lower", "upper"
    );
    for n in [2, 3, 5, 8, 10, 20] {
        for source in [
            AlphaSource::Lemma3,
            AlphaSource::C5,
            AlphaSource::C8,
            AlphaSource::CInf,
        ] {
            let Ok(b) = identical_coulomb_bounds(n, d, source) else {
                continue;
            };
            println!(
                "{n:>3} {:>8} {:>14.6} {:>14.6}  {}",
                b.alpha_source, b.lower, b.upper, b.conjectural
            );
        }
    }

    // the local energy at a fixed configuration is one sample of the profile
    let octahedron = named_configuration(ConfigurationName::Octahedron, None)?;
    println!(
        "local energy at the octahedron: {:.6}",
        local_energy_identical(&octahedron)?
    );
    Ok(())
}
