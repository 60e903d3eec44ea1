//! Free-space gain of a single isotropic element and how many such elements
//! fit on the sphere around the transmitter before all power is collected.

use std::error::Error;

use reflect_lab::propagation::{
    free_space_gain, spherical_capacity, spherical_total_gain, ElementGeometry, PropagationPath,
};

pub fn run() -> Result<(), Box<dyn Error>> {
    for freq in [3e9, 30e9] {
        let geom = ElementGeometry::from_frequency(freq)?;
        println!(
            "f = {:.0} GHz, lambda = {:.5} m, A = {:.4e} m^2",
            freq / 1e9,
            geom.wavelength(),
            geom.area()
        );
        for d in [2.5, 5.0, 10.0, 25.0] {
            let beta = free_space_gain(&geom, &PropagationPath::new(d)?)?;
            println!(
                "  d = {d:>5} m  beta = {beta:.4e} ({:>6.2} dB)  sphere holds {} elements",
                10.0 * beta.log10(),
                spherical_capacity(beta)
            );
        }
    }

    let beta = 1e-5;
    println!("\nspherical gain with beta = {beta:e}:");
    for n in [1, 1_000, 100_000, 100_001] {
        match spherical_total_gain(n, beta) {
            Ok(g) => println!("  N = {n:>7}: {:.6}", g.value),
            Err(e) => println!("  N = {n:>7}: {e}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
