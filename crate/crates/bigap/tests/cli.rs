//! End-to-end tests of the installed binary: every subcommand is exercised
//! through `std::process::Command`, and the stable scripting contract —
//! exit codes, `key=value` stdout, positioned `path:line:` errors on
//! stderr — is asserted byte-for-byte where it is pinned.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bigap"))
}

/// Run the binary with `args` and return `(exit code, stdout, stderr)`.
fn run(args: &[&str]) -> (i32, String, String) {
    run_with(args, |_| {})
}

fn run_with(args: &[&str], tweak: impl FnOnce(&mut Command)) -> (i32, String, String) {
    let mut cmd = bin();
    cmd.args(args);
    tweak(&mut cmd);
    let out = cmd.output().expect("binary should spawn");
    (
        out.status.code().expect("binary should not be signal-killed"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Per-test scratch directory, removed on drop.
struct Scratch(PathBuf);

impl Scratch {
    fn new(name: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("bigap_cli_{name}"));
        std::fs::remove_dir_all(&dir).ok();
        std::fs::create_dir_all(&dir).unwrap();
        Scratch(dir)
    }

    fn path(&self, file: &str) -> PathBuf {
        self.0.join(file)
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn s(p: &Path) -> String {
    p.display().to_string()
}

#[test]
fn sample_is_deterministic_and_writes_the_declared_edge_count() {
    let dir = Scratch::new("sample");
    let (a, b) = (dir.path("a.txt"), dir.path("b.txt"));
    let args = ["sample", "--n1", "20", "--n2", "30", "--p", "0.3", "--seed", "5", "--out"];
    let (code, stdout, _) = run(&[&args[..], &[&s(&a)]].concat());
    assert_eq!(code, 0);
    let (code2, stdout2, _) = run(&[&args[..], &[&s(&b)]].concat());
    assert_eq!(code2, 0);
    assert_eq!(stdout, stdout2, "same seed must print the same edge count");

    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap(), "files must be byte-identical");

    // stdout's m= matches the header's third field.
    let header: Vec<&str> = text.lines().next().unwrap().split(' ').collect();
    assert_eq!(header[0], "20");
    assert_eq!(header[1], "30");
    assert_eq!(stdout.trim(), format!("m={}", header[2]));
    assert_eq!(text.lines().count(), 1 + header[2].parse::<usize>().unwrap());
}

#[test]
fn sample_at_p_one_writes_the_complete_graph() {
    let dir = Scratch::new("sample_complete");
    let out = dir.path("k23.txt");
    let (code, stdout, _) =
        run(&["sample", "--n1", "2", "--n2", "3", "--p", "1.0", "--seed", "0", "--out", &s(&out)]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "m=6\n");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "2 3 6\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n");
}

#[test]
fn sample_rejects_probability_above_one() {
    let dir = Scratch::new("sample_bad_p");
    let out = dir.path("x.txt");
    let (code, _, stderr) =
        run(&["sample", "--n1", "2", "--n2", "3", "--p", "1.5", "--seed", "0", "--out", &s(&out)]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"), "{stderr}");
    assert!(stderr.contains("1.5"), "should name the offending value: {stderr}");
    assert!(!out.exists(), "no file should be written on failure");
}

#[test]
fn spectrum_reports_closed_forms_for_complete_bipartite() {
    let dir = Scratch::new("spectrum");
    let input = dir.path("k23.txt");
    std::fs::write(&input, "2 3 6\n0 0\n0 1\n0 2\n1 0\n1 1\n1 2\n").unwrap();
    let (code, stdout, _) = run(&["spectrum", "--in", &s(&input), "--mode", "both"]);
    assert_eq!(code, 0);
    // K_{2,3}: adjacency spectrum {±sqrt(6), 0, 0, 0}; normalized {±1, 0, 0, 0}.
    for line in [
        "n1=2",
        "n2=3",
        "m=6",
        "mu1=2.449490",
        "mu2=0.000000",
        "mu_min=-2.449490",
        "mu_abs=2.449490",
        "mu_plus=2.449490",
        "mu_plus_certified=true",
        "norm_mu1=1.000000",
        "norm_mu2=0.000000",
        "norm_mu_min=-1.000000",
        "norm_gap=0.000000",
    ] {
        assert!(stdout.lines().any(|l| l == line), "missing `{line}` in:\n{stdout}");
    }
}

#[test]
fn spectrum_defaults_to_adjacency_only() {
    let dir = Scratch::new("spectrum_default");
    let input = dir.path("k11.txt");
    std::fs::write(&input, "1 1 1\n0 0\n").unwrap();
    let (code, stdout, _) = run(&["spectrum", "--in", &s(&input)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("mu1=1.000000"), "{stdout}");
    assert!(!stdout.contains("norm_"), "adjacency mode must not print normalized lines");
}

#[test]
fn spectrum_rejects_unknown_mode() {
    let dir = Scratch::new("spectrum_mode");
    let input = dir.path("k11.txt");
    std::fs::write(&input, "1 1 1\n0 0\n").unwrap();
    let (code, _, stderr) = run(&["spectrum", "--in", &s(&input), "--mode", "fancy"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("fancy"), "{stderr}");
}

#[test]
fn spectrum_names_the_malformed_line() {
    let dir = Scratch::new("spectrum_malformed");
    let input = dir.path("bad.txt");
    std::fs::write(&input, "2 3 1\n0 x\n").unwrap();
    let (code, _, stderr) = run(&["spectrum", "--in", &s(&input)]);
    assert_eq!(code, 2);
    let expected = format!("{}:2:", s(&input));
    assert!(stderr.contains(&expected), "compiler-style position missing: {stderr}");
    assert!(stderr.contains('x'), "offending token missing: {stderr}");
}

#[test]
fn spectrum_missing_file_is_an_io_error() {
    let dir = Scratch::new("spectrum_missing");
    let input = dir.path("nope.txt");
    let (code, _, stderr) = run(&["spectrum", "--in", &s(&input)]);
    assert_eq!(code, 1);
    assert!(stderr.contains("nope.txt"), "should name the path: {stderr}");
}

#[test]
fn verify_passes_and_reports_each_identity() {
    let (code, stdout, _) =
        run(&["verify", "--n1", "12", "--n2", "15", "--p", "0.4", "--trials", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    for line in [
        "trials=5",
        "reconstruction=5/5",
        "weyl=5/5",
        "negation=5/5",
        "symmetry=5/5",
        "k_residual_computed=5/5",
        "all_passed=true",
    ] {
        assert!(stdout.lines().any(|l| l == line), "missing `{line}` in:\n{stdout}");
    }
}

#[test]
fn verify_beyond_the_oracle_cap_is_a_config_error() {
    let (code, _, stderr) = run(&[
        "verify", "--n1", "20", "--n2", "20", "--p", "0.5", "--trials", "2", "--oracle-cap", "30",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("40"), "should name the union dimension: {stderr}");
    assert!(stderr.contains("30"), "should name the cap: {stderr}");
}

#[test]
fn experiment_runs_from_a_config_file_with_flag_overrides() {
    let dir = Scratch::new("experiment_config");
    let cfg = dir.path("run.cfg");
    std::fs::write(
        &cfg,
        "# spectral-gap run\nn1 = 12\nn2 = 18\np = 0.35\ntrials = 6\nseed = 9\nmode = both\n",
    )
    .unwrap();
    let csv = dir.path("out.csv");
    let (code, stdout, _) = run(&["experiment", "--config", &s(&cfg), "--out", &s(&csv)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("trials=6"), "{stdout}");
    assert!(stdout.contains("satisfied_fraction=1.000000"), "{stdout}");
    assert!(stdout.contains("norm_satisfied_fraction="), "mode=both must report the gap");
    assert!(stdout.lines().any(|l| l == format!("csv={}", s(&csv))), "{stdout}");

    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("trial,seed,n1,n2,p,m,mu1,mu2,"), "{}", lines[0]);
    // header + 6 data rows + 3 summary comments.
    assert_eq!(lines.len(), 10);
    assert!(lines[9].starts_with("# excluded="), "{}", lines[9]);

    // A flag on top of the config overrides just that key.
    let csv2 = dir.path("out2.csv");
    let (code, stdout, _) =
        run(&["experiment", "--config", &s(&cfg), "--trials", "4", "--out", &s(&csv2)]);
    assert_eq!(code, 0);
    assert!(stdout.contains("trials=4"), "{stdout}");
    assert_eq!(std::fs::read_to_string(&csv2).unwrap().lines().count(), 8);
}

#[test]
fn experiment_names_the_bad_config_line() {
    let dir = Scratch::new("experiment_bad_config");
    let cfg = dir.path("run.cfg");
    std::fs::write(&cfg, "n1 = 4\np = banana\n").unwrap();
    let (code, _, stderr) = run(&["experiment", "--config", &s(&cfg), "--out", "/dev/null"]);
    assert_eq!(code, 2);
    let expected = format!("{}:2:", s(&cfg));
    assert!(stderr.contains(&expected), "{stderr}");
    assert!(stderr.contains("banana"), "{stderr}");
}

#[test]
fn experiment_rejects_zero_trials() {
    let (code, _, stderr) = run(&[
        "experiment", "--n1", "4", "--n2", "4", "--p", "0.5", "--trials", "0", "--seed", "1",
        "--out", "/dev/null",
    ]);
    assert_eq!(code, 2);
    assert!(stderr.contains("trials"), "{stderr}");
}

#[test]
fn experiment_without_config_requires_each_flag() {
    let (code, _, stderr) = run(&["experiment", "--out", "/dev/null"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--n1"), "should name the first missing flag: {stderr}");
    assert!(stderr.contains("--config"), "should point at the alternative: {stderr}");
}

#[test]
fn workers_flag_and_environment_variable_give_identical_results() {
    let dir = Scratch::new("workers_env");
    let base = ["experiment", "--n1", "10", "--n2", "12", "--p", "0.4", "--trials", "5",
        "--seed", "2", "--out"];
    let (flag_csv, env_csv) = (dir.path("flag.csv"), dir.path("env.csv"));
    let (code, _, _) =
        run(&[&base[..], &[&s(&flag_csv), "--workers", "1"]].concat());
    assert_eq!(code, 0);
    let (code, _, _) = run_with(&[&base[..], &[&s(&env_csv)]].concat(), |cmd| {
        cmd.env("BIGAP_WORKERS", "3");
    });
    assert_eq!(code, 0);

    let strip_ms = |text: String| -> Vec<String> {
        text.lines()
            .map(|l| match l.rfind(',') {
                Some(i) if !l.starts_with('#') && !l.starts_with("trial,") => l[..i].to_string(),
                _ => l.to_string(),
            })
            .collect()
    };
    let a = strip_ms(std::fs::read_to_string(&flag_csv).unwrap());
    let b = strip_ms(std::fs::read_to_string(&env_csv).unwrap());
    assert_eq!(a, b, "worker count must not change any value");
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let (code, _, stderr) = run(&["conjecture"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("conjecture"), "{stderr}");
}

#[test]
fn help_exits_zero_and_lists_subcommands() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["sample", "spectrum", "verify", "experiment", "selftest"] {
        assert!(stdout.contains(sub), "help must list `{sub}`:\n{stdout}");
    }
}

#[test]
fn selftest_prints_one_ok_line_per_check_and_exits_zero() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    let ok_lines = stdout.lines().filter(|l| l.starts_with("ok ")).count();
    assert_eq!(ok_lines, bigap::cli::selftest_checks().len());
    assert!(stdout.lines().any(|l| l == "selftest passed"), "{stdout}");
    assert!(!stdout.contains("FAIL"), "{stdout}");
}
