//! Transmit power needed for a 20 dB SNR: 1/N for mMIMO, 1/N^2 for an IRS
//! in the far field, and back to 1/N once the exact IRS gain saturates.

use std::error::Error;

use reflect_lab::analysis::{required_power, LinkModel};
use reflect_lab::config::preset;

pub fn run() -> Result<(), Box<dyn Error>> {
    let s = preset("fig4-near")?.scenario;
    let target = 100.0;
    println!("{:>9} {:>14} {:>14} {:>14}", "N", "mMIMO [dBm]", "IRS ff [dBm]", "IRS exact [dBm]");
    let dbm = |w: f64| 10.0 * (w * 1e3).log10();
    for k in 0..=8 {
        let n = 10u64.pow(k);
        println!(
            "{n:>9} {:>14.2} {:>14.2} {:>14.2}",
            dbm(required_power(&s, LinkModel::Mmimo, n, target)?),
            dbm(required_power(&s, LinkModel::IrsFarField, n, target)?),
            dbm(required_power(&s, LinkModel::IrsExact, n, target)?),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
