use std::path::Path;
use std::process::{Command, Output};

fn roadfield(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roadfield"))
        .args(args)
        .arg("--out-dir")
        .arg(dir)
        .env_remove("ROADFIELD_THREADS")
        .output()
        .expect("binary runs")
}

fn read_rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn speed_reports_both_regimes() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(dir.path(), &["speed"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("speed.csv")).unwrap();
    assert!(text.starts_with("D,d,mu,fp0,c_kpp,c_star,regime\n"));
    let row = &read_rows(&dir.path().join("speed.csv"))[0];
    assert_eq!(num(&row[5]), 2.0);
    assert_eq!(row[6], "SubThreshold");

    let out = roadfield(dir.path(), &["speed", "--set", "D=4"]);
    assert!(out.status.success());
    let row = &read_rows(&dir.path().join("speed.csv"))[0];
    assert!(num(&row[5]) > 2.0);
    assert_eq!(row[6], "SuperThreshold");
}

#[test]
fn config_file_and_overrides_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("params.cfg");
    std::fs::write(&cfg, "# field and exchange\nd = 1\nmu = 1\nD = 2\n").unwrap();
    let out = roadfield(
        dir.path(),
        &["speed", "--config", cfg.to_str().unwrap(), "--set", "D=10"],
    );
    assert!(out.status.success());
    let row = &read_rows(&dir.path().join("speed.csv"))[0];
    assert_eq!(num(&row[0]), 10.0);
    assert!((num(&row[5]) - 3.206356678).abs() < 1e-7);
}

#[test]
fn malformed_config_fails_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "D = fast\n").unwrap();
    let out_dir = dir.path().join("out");
    let out = roadfield(&out_dir, &["speed", "--config", cfg.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
    assert!(!out_dir.join("speed.csv").exists());

    let out = roadfield(&out_dir, &["speed", "--set", "colour=blue"]);
    assert!(!out.status.success());
    assert!(!out_dir.join("speed.csv").exists());
}

#[test]
fn sweep_rows_follow_the_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(dir.path(), &["sweep", "--D-list", "1,2,4,16,64,256,1024"]);
    assert!(out.status.success());
    let rows = read_rows(&dir.path().join("sweep.csv"));
    let ds: Vec<f64> = rows.iter().map(|r| num(&r[0])).collect();
    assert_eq!(ds, vec![1.0, 2.0, 4.0, 16.0, 64.0, 256.0, 1024.0]);
    assert_eq!(num(&rows[0][5]), 2.0);
    assert_eq!(num(&rows[1][5]), 2.0);
    let speeds: Vec<f64> = rows[2..].iter().map(|r| num(&r[5])).collect();
    assert!(speeds.windows(2).all(|w| w[1] > w[0]));
    // (c*/sqrt D)^2 at the largest D lies in the limiting window
    let last = num(&rows[6][7]);
    assert!(last * last >= 5f64.sqrt() - 2.0 && last * last <= 1.0);
}

#[test]
fn sweep_output_does_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let sub = dir.path().join(name);
        let out = Command::new(env!("CARGO_BIN_EXE_roadfield"))
            .args(["sweep", "--D-list", "3,5,8,13,21", "--out-dir"])
            .arg(&sub)
            .env("ROADFIELD_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(sub.join("sweep.csv")).unwrap()
    };
    assert_eq!(run("1", "one"), run("0", "auto"));
}

#[test]
fn unsorted_sweep_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(dir.path(), &["sweep", "--D-list", "4,2"]);
    assert!(!out.status.success());
    assert!(!dir.path().join("sweep.csv").exists());
}

#[test]
fn strip_and_limit_outputs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(roadfield(dir.path(), &["strip", "--L", "10", "--set", "D=4"])
        .status
        .success());
    let row = &read_rows(&dir.path().join("strip.csv"))[0];
    let (strip, full) = (num(&row[6]), num(&row[7]));
    assert!(strip > 2.0 && strip < full);

    let out = roadfield(dir.path(), &["strip", "--L", "10"]);
    assert!(!out.status.success(), "below threshold there is no strip enhancement");

    assert!(roadfield(dir.path(), &["limit"]).status.success());
    let row = &read_rows(&dir.path().join("limit.csv"))[0];
    let sq = num(&row[4]);
    assert!(num(&row[5]) <= sq && sq <= num(&row[6]));
}

#[test]
fn conservation_preset_writes_its_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(
        dir.path(),
        &["simulate", "--preset", "conservation", "--dx", "0.5", "--t-end", "1"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["mass.csv", "road.csv", "trace.csv", "fronts.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    let mass = read_rows(&dir.path().join("mass.csv"));
    let m0 = num(&mass[0][1]);
    for row in &mass {
        assert!((num(&row[1]) - m0).abs() <= 1e-6 * m0);
    }
    let header = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    assert!(header.starts_with("t,x,v0\n"));
}

#[test]
fn kpp_preset_reports_prediction_and_speed() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(
        dir.path(),
        &["simulate", "--preset", "kpp", "--dx", "1", "--t-end", "20"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("predicted spreading speed c* = 2.0000000000000000e0"));
    let summary = std::fs::read_to_string(dir.path().join("speed_summary.csv")).unwrap();
    assert!(summary.starts_with("speed,intercept,residual_rms,t_lo,t_hi\n"));
}

#[test]
fn oversized_time_step_fails_the_simulation() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(dir.path(), &["simulate", "--preset", "steady", "--safety", "2"]);
    assert!(!out.status.success());
    assert!(!dir.path().join("mass.csv").exists());
}

#[test]
fn validate_flags_designed_failures() {
    let dir = tempfile::tempdir().unwrap();
    let out = roadfield(dir.path(), &["validate", "--t-end", "60", "--dx", "0.5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let report = std::fs::read_to_string(dir.path().join("validate.csv")).unwrap();
    for suite in ["kpp", "cfl", "equilibrium", "ordering", "conservation", "steady"] {
        assert!(report.contains(&format!("{suite},pass,")), "{suite}: {report}");
    }

    let out = roadfield(
        dir.path(),
        &["validate", "--safety", "2", "--t-end", "60", "--dx", "0.5"],
    );
    assert!(!out.status.success());
    let report = std::fs::read_to_string(dir.path().join("validate.csv")).unwrap();
    assert!(report.contains("cfl,FAIL,"));

    let out = roadfield(
        dir.path(),
        &["validate", "--set", "reaction=custom:5", "--t-end", "60", "--dx", "0.5"],
    );
    assert!(!out.status.success());
    let report = std::fs::read_to_string(dir.path().join("validate.csv")).unwrap();
    assert!(report.contains("kpp,FAIL,"));
}
