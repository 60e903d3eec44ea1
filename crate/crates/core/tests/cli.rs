use std::fs;
use std::path::Path;
use std::process::Command;

use reflect_lab::config::preset;
use reflect_lab::propagation::planar_exact_gain;
use reflect_lab::report::{GAIN_HEADER, SWEEP_HEADER};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_reflect-lab"));
    c.env_remove("REFLECT_LAB_SEED");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn read(p: &Path) -> String {
    fs::read_to_string(p).unwrap()
}

#[test]
fn gain_sweep_rho_matches_planar_gain() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, err) = run(&["gain-sweep", "--preset", "fig2", "--out", out]);
    assert_eq!(code, 0, "{err}");
    let csv = read(&dir.path().join("gain_sweep.csv"));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(GAIN_HEADER));
    let s = preset("fig2").unwrap().scenario;
    let mut count = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let n: u64 = cols[0].parse().unwrap();
        let rho: f64 = cols[1].parse().unwrap();
        let exact = planar_exact_gain(n, &s.geometry, &s.d_h).unwrap().value;
        assert!((rho - exact).abs() / exact < 1e-11, "n={n}");
        count += 1;
    }
    assert_eq!(count, s.n_grid().len());
    assert!(dir.path().join("gain_sweep.manifest.json").exists());
}

#[test]
fn breakeven_near_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, err) = run(&[
        "breakeven", "--preset", "fig4-near", "--ref", "64", "--model", "irs-exact", "--out", out,
    ]);
    assert_eq!(code, 0, "{err}");
    let n: u64 = stdout.trim().parse().unwrap();
    assert!((2_500..=3_500).contains(&n), "{n}");
    let csv = read(&dir.path().join("breakeven.csv"));
    assert!(csv.lines().nth(1).unwrap().starts_with(&format!("irs-exact,64,{n},")));
}

#[test]
fn rate_compare_rejects_inverted_grid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    let text = reflect_lab::config::preset_text("fig4-far")
        .unwrap()
        .replace("n_min = 1\n", "n_min = 1000\n")
        .replace("n_max = 1e6", "n_max = 10");
    fs::write(&cfg, text).unwrap();
    let (code, _, err) = run(&["rate-compare", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.starts_with("reflect-lab: error[config]:"), "{err}");
    assert_eq!(err.lines().count(), 1);
}

#[test]
fn rate_compare_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, err) = run(&["rate-compare", "--preset", "fig4-far", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let csv = read(&dir.path().join("rate_compare.csv"));
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 7);
        let snr: f64 = cols[2].parse().unwrap();
        let snr_db: f64 = cols[3].parse().unwrap();
        let rate: f64 = cols[4].parse().unwrap();
        assert!((snr_db - 10.0 * snr.log10()).abs() < 1e-9 * snr_db.abs().max(1.0));
        assert!((rate - (1.0 + snr).log2()).abs() < 1e-10 * rate.max(1e-6));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(run(&["rate-compare", "--preset", "fig9", "--out", out]).0, 2);
    assert_eq!(run(&["rate-compare"]).0, 2);
    assert_eq!(run(&["rate-compare", "--config", "/nonexistent/x.cfg"]).0, 4);

    // output directory path is an existing file
    let file = dir.path().join("occupied");
    fs::write(&file, "").unwrap();
    let (code, _, err) = run(&["rate-compare", "--preset", "fig2", "--out", file.to_str().unwrap()]);
    assert_eq!(code, 4);
    assert!(err.starts_with("reflect-lab: error[io]:"));

    // unreachable breakeven is a model error
    let cfg = dir.path().join("tiny.cfg");
    let text = reflect_lab::config::preset_text("fig4-far")
        .unwrap()
        .replace("element_area_m2 = isotropic", "element_area_m2 = 1e-12")
        .replace("d_g_m = 25", "d_g_m = 1000");
    fs::write(&cfg, text).unwrap();
    let (code, _, err) = run(&[
        "breakeven", "--config", cfg.to_str().unwrap(), "--ref", "1000000000", "--out", out,
    ]);
    assert_eq!(code, 3, "{err}");
    assert!(err.starts_with("reflect-lab: error[model]:"));
}

#[test]
fn preset_command_prints_document() {
    let dir = tempfile::tempdir().unwrap();
    let (code, stdout, _) = run(&["preset", "fig4-near", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(stdout, reflect_lab::config::preset_text("fig4-near").unwrap());
    assert_eq!(read(&dir.path().join("fig4-near.cfg")), stdout);
    assert_eq!(run(&["preset", "nope"]).0, 2);
}

#[test]
fn seed_env_override_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["power-scaling", "--preset", "fig4-far", "--out", dir.path().to_str().unwrap()])
        .env("REFLECT_LAB_SEED", "42")
        .output()
        .unwrap();
    assert!(out.status.success());
    let m: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("power_scaling.manifest.json"))).unwrap();
    assert_eq!(m["seed"], 42);
    assert_eq!(m["beta_h"]["convention"], "override");
    assert_eq!(m["beta_g"]["convention"], "free-space");
    assert!(m["config"].as_str().unwrap().contains("seed = 42"));

    let bad = bin()
        .args(["power-scaling", "--preset", "fig4-far", "--out", dir.path().to_str().unwrap()])
        .env("REFLECT_LAB_SEED", "minus one")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn power_scaling_halves_per_doubling() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("pow.cfg");
    let text = reflect_lab::config::preset_text("fig4-far")
        .unwrap()
        .replace("n_max = 1e6", "n_max = 1024")
        .replace("models = mmimo,irs-far-field,irs-exact", "models = mmimo");
    fs::write(&cfg, text).unwrap();
    let (code, _, err) = run(&[
        "power-scaling", "--config", cfg.to_str().unwrap(), "--target-snr-db", "-3", "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let csv = read(&dir.path().join("power_scaling.csv"));
    let rows: Vec<(u64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[0].parse().unwrap(), c[2].parse().unwrap())
        })
        .collect();
    let p = |n: u64| rows.iter().find(|r| r.0 == n).unwrap().1;
    assert!((p(1) / p(2) - 2.0).abs() < 1e-10);
    assert!((p(1) / p(1024) - 1024.0).abs() < 1e-7);
}
