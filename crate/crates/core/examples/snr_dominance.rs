//! Random LoS channels: the optimally configured IRS never beats an mMIMO
//! array of the same size, and the gap is exactly `mu^2 N beta_g`.

use std::error::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reflect_lab::links::{
    build_los_channel, combiner_snr, irs_combiner_loss, irs_snr, irs_snr_factorized,
    optimal_irs_phases, random_phases, Combiner, RadioBudget, ReflectionConfig,
};
use reflect_lab::propagation::{free_space_gain, ElementGeometry, PropagationPath};

pub fn run() -> Result<(), Box<dyn Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(2020);
    let geom = ElementGeometry::from_frequency(3e9)?;
    let beta_h = free_space_gain(&geom, &PropagationPath::new(25.0)?)?;
    let beta_g = free_space_gain(&geom, &PropagationPath::new(2.5)?)?;
    let budget = RadioBudget::new(0.01, 1e-8)?;
    let mu = 0.9;

    println!("{:>6} {:>12} {:>12} {:>12} {:>10}", "N", "SNR mMIMO", "SNR IRS", "fraction", "loss");
    for n in [1usize, 16, 64, 256, 1024, 4096] {
        let h = build_los_channel(beta_h, &random_phases(&mut rng, n))?;
        let g = build_los_channel(beta_g, &random_phases(&mut rng, n))?;
        let mrc = combiner_snr(&Combiner::mrc(&h)?, &h, &budget)?;
        let cfg = ReflectionConfig::new(mu, optimal_irs_phases(&h, &g)?)?;
        let irs = irs_snr(&h, &g, &cfg, &budget)?;
        let f = irs_snr_factorized(&h, &g, mu, &budget)?;
        println!(
            "{n:>6} {mrc:>12.4e} {irs:>12.4e} {:>12.4e} {:>10.4e}",
            f.reflected_fraction,
            irs_combiner_loss(&g, mu)?
        );
        assert!(irs <= mrc);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
