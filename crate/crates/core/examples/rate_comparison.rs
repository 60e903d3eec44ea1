//! Rates of mMIMO, far-field IRS and exact IRS versus N for a receiver
//! 25 m and 2.5 m away from the surface. The table for each preset is also
//! written as CSV into the system temp directory.

use std::error::Error;

use reflect_lab::analysis::{run_sweep, LinkModel};
use reflect_lab::config::preset;
use reflect_lab::report::emit_csv;

pub fn run() -> Result<(), Box<dyn Error>> {
    for name in ["fig4-far", "fig4-near"] {
        let cfg = preset(name)?;
        let table = run_sweep(&cfg.scenario, &cfg.models)?;
        let path = std::env::temp_dir().join(format!("reflect-lab-{name}.csv"));
        emit_csv(&table, &path)?;
        println!("{name}: d_g = {} m, {} rows -> {}", cfg.scenario.d_g.distance(), table.rows.len(), path.display());
        println!("{:>9} {:>10} {:>14} {:>10}", "N", "mMIMO", "IRS far-field", "IRS exact");
        for n in [1, 10, 64, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let rate = |m: LinkModel| {
                table.rows.iter().find(|r| r.model == m && r.n == n).map(|r| {
                    if r.model == LinkModel::IrsFarField && r.energy_bound_exceeded {
                        "-".to_string()
                    } else {
                        format!("{:.3}", r.rate)
                    }
                })
            };
            if let (Some(a), Some(b), Some(c)) =
                (rate(LinkModel::Mmimo), rate(LinkModel::IrsFarField), rate(LinkModel::IrsExact))
            {
                println!("{n:>9} {a:>10} {b:>14} {c:>10}");
            }
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
