// Every example doubles as a smoke test.

#[allow(dead_code)]
#[path = "../examples/free_space_gain.rs"]
mod free_space_gain;
#[allow(dead_code)]
#[path = "../examples/planar_array_gain.rs"]
mod planar_array_gain;
#[allow(dead_code)]
#[path = "../examples/snr_dominance.rs"]
mod snr_dominance;
#[allow(dead_code)]
#[path = "../examples/rate_comparison.rs"]
mod rate_comparison;
#[allow(dead_code)]
#[path = "../examples/breakeven.rs"]
mod breakeven;
#[allow(dead_code)]
#[path = "../examples/power_scaling.rs"]
mod power_scaling;

#[test]
fn examples_run() {
    free_space_gain::run().unwrap();
    planar_array_gain::run().unwrap();
    snr_dominance::run().unwrap();
    rate_comparison::run().unwrap();
    breakeven::run().unwrap();
    power_scaling::run().unwrap();
}
