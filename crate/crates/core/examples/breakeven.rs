//! How many IRS elements match the rate of a 64-antenna mMIMO array.

use std::error::Error;

use reflect_lab::analysis::{breakeven_elements, LinkModel};
use reflect_lab::config::preset;

pub fn run() -> Result<(), Box<dyn Error>> {
    for name in ["fig4-far", "fig4-near"] {
        let s = preset(name)?.scenario;
        let beta_g = s.beta_g()?;
        for model in [LinkModel::IrsFarField, LinkModel::IrsExact] {
            let n = breakeven_elements(&s, model, 64)?;
            println!("{name:>10} d_g = {:>4} m  {model:<14} N = {n}", s.d_g.distance());
        }
        println!("{:>10} closed form ceil(8 / sqrt(beta_g)) = {}", "", (8.0 / beta_g.sqrt()).ceil());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
