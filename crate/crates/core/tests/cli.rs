use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fracmem::experiment::{read_csv, SimulationRecord};

fn fracmem(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fracmem"));
    cmd.args(args).env_remove("FRACMEM_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn records(path: &Path) -> Vec<SimulationRecord> {
    read_csv(&fs::read_to_string(path).unwrap()).unwrap()
}

// CSV bytes with the wall-clock column dropped.
fn without_timing(path: &Path) -> String {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| if l.starts_with('#') { l } else { l.rsplit_once(',').map_or(l, |(head, _)| head) })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn cost_model_succeeds_and_reports_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cost.csv");
    let o = fracmem(&["cost-model", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("wrote"));
    let full = records(&dir.path().join("cost-full.csv"));
    let fixed = records(&dir.path().join("cost-fixed.csv"));
    let adaptive = records(&dir.path().join("cost-adaptive-present.csv"));
    assert_eq!(full.last().unwrap().analytic, 3240.0);
    assert_eq!(full.last().unwrap().value, 3240.0);
    assert_eq!(fixed.last().unwrap().value, 755.0);
    assert_eq!(adaptive.last().unwrap().analytic, 2140.0);
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "alpha = 0.5\nthis line has no separator\n").unwrap();
    let unknown = dir.path().join("unknown.cfg");
    fs::write(&unknown, "colour = blue\n").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["no-such-experiment"],
        vec!["kelvin-voigt", "--alpha", "1.5"],
        vec!["kelvin-voigt", "--dt", "-0.01"],
        vec!["kelvin-voigt", "--t-end", "1.005"],
        vec!["kelvin-voigt", "--policy", "sometimes"],
        vec!["kelvin-voigt", "--config", bad.to_str().unwrap()],
        vec!["kelvin-voigt", "--config", unknown.to_str().unwrap()],
        vec!["kelvin-voigt", "--config", "/nonexistent/file.cfg"],
        vec!["kelvin-voigt", "--bogus-flag"],
    ];
    for args in cases {
        let o = fracmem(&args, &[]);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty());
    }
    let o = fracmem(&["kelvin-voigt", "--t-end", "1"], &[("FRACMEM_THREADS", "zero")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn io_failure_exits_with_one_and_leaves_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("kv.csv");
    let o = fracmem(&["kelvin-voigt", "--policy", "full", "--t-end", "1", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists());
}

#[test]
fn runs_are_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "diffusion".to_string(),
            "--t-end".into(),
            "1.6".into(),
            "--out".into(),
            p.to_str().unwrap().to_string(),
        ]
    };
    let run = |p: &Path, threads: &str| {
        let v = args(p);
        let refs: Vec<&str> = v.iter().map(String::as_str).collect();
        let o = fracmem(&refs, &[("FRACMEM_THREADS", threads)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    };
    run(&a, "1");
    run(&b, "4");
    for label in ["full", "fixed", "adaptive-present", "adaptive-gl"] {
        let name = |stem: &str| dir.path().join(format!("{stem}-{label}-a0.5-dt0.01.csv"));
        assert_eq!(without_timing(&name("a")), without_timing(&name("b")), "{label}");
    }
}

#[test]
fn csv_echoes_resolved_config_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("kv.cfg");
    fs::write(&cfg, "# creep run\nalpha = 0.3\neta = 2\npolicy = full\nt_end = 2\n").unwrap();
    let out = dir.path().join("kv.csv");
    let o = fracmem(
        &["kelvin-voigt", "--config", cfg.to_str().unwrap(), "--alpha", "0.7", "--out", out.to_str().unwrap()],
        &[],
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let header: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    for expect in ["# experiment = kelvin-voigt", "# alpha = 0.7", "# eta = 2", "# t_end = 2", "# policy = full"] {
        assert!(header.contains(&expect), "missing {expect} in {header:?}");
    }
    assert_eq!(text.lines().nth(header.len()).unwrap(), fracmem::experiment::CSV_HEADER);
    let rows = records(&out);
    assert!(rows.iter().all(|r| r.abs_error == (r.value - r.analytic).abs()));
    assert_eq!(rows.last().unwrap().t, 2.0);
}

#[test]
fn full_memory_creep_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("kv.csv");
    let o = fracmem(&["kelvin-voigt", "--policy", "full", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let golden = records(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/kelvin_voigt_full.csv"));
    let fresh = records(&out);
    assert_eq!(golden.len(), fresh.len());
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(1.0);
    for (g, f) in golden.iter().zip(&fresh) {
        assert_eq!(g.t, f.t);
        assert!(close(g.value, f.value), "t={}: {} vs {}", g.t, g.value, f.value);
        assert!(close(g.analytic, f.analytic));
        assert!(close(g.abs_error, f.abs_error));
        assert_eq!((g.stored_points, g.conv_terms), (f.stored_points, f.conv_terms));
    }
}

#[test]
fn help_exits_cleanly() {
    let o = fracmem(&["--help"], &[]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("memory-length"));
}
