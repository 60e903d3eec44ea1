//! Total gain of a square planar array versus its size: exact expression,
//! far-field approximation, and where the approximation breaks down.

use std::error::Error;

use reflect_lab::analysis::gain_sweep;
use reflect_lab::config::preset;
use reflect_lab::propagation::{far_field_relative_error, rule_of_thumb_max};

pub fn run() -> Result<(), Box<dyn Error>> {
    let cfg = preset("fig2")?;
    let s = cfg.scenario;
    println!("lambda = {} m, d = {} m", s.geometry.wavelength(), s.d_h.distance());
    println!("{:>14} {:>12} {:>12} {:>10}", "N", "exact", "far-field", "error");
    let decades: Vec<u64> = (0..=10).map(|k| 10u64.pow(k)).collect();
    for row in gain_sweep(&s)?.iter().filter(|r| decades.contains(&r.n)) {
        println!(
            "{:>14} {:>12.4e} {:>12.4e} {:>9.2}%",
            row.n,
            row.rho_exact,
            row.rho_far_field,
            100.0 * row.relative_error
        );
    }

    let mut n = 1;
    while far_field_relative_error(n, &s.geometry, &s.d_h)? <= 0.05 {
        n += 1;
    }
    let n_star = rule_of_thumb_max(&s.geometry, &s.d_h);
    println!("\nfar-field error first exceeds 5% at N = {n}");
    println!(
        "rule-of-thumb limit N* = {n_star}, error there {:.1}%",
        100.0 * far_field_relative_error(n_star, &s.geometry, &s.d_h)?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run()
}
