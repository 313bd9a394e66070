use besselsum_cli::record::{parse, Format, OutputRecord};
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselsum")).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<OutputRecord> {
    parse(&String::from_utf8_lossy(&out.stdout), Format::Csv).expect("valid csv")
}

#[test]
fn anger_of_order_zero_without_modulation_is_one() {
    let out = run(&["eval", "anger", "--order", "0", "--x", "", "--y", ""]);
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    assert_eq!(r.len(), 1);
    assert!((r[0].value_re.unwrap() - 1.0).abs() < 1e-15);
    assert!(r[0].value_im.unwrap().abs() < 1e-15);
}

#[test]
fn qubit_sweep_methods_agree() {
    let out = run(&[
        "qubit", "sweep", "--gamma2", "3", "--epsilon", "2.1", "--omega", "0.07", "--param", "A", "--start", "0", "--stop", "5",
        "--count", "200", "--method", "both",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    assert_eq!(r.len(), 200);
    for rec in &r {
        let (c, d) = (rec.value_re.unwrap(), rec.reference_re.unwrap());
        assert!((c - d).abs() <= 1e-6 * d, "{}: {c} vs {d}", rec.inputs);
    }
    assert!(r.last().unwrap().inputs.ends_with("A=5"));
}

#[test]
fn appendix_verification_passes() {
    let out = run(&["verify", "appendix", "--n", "4000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = records(&out);
    let get = |t: &str| r.iter().find(|x| x.target == t).unwrap_or_else(|| panic!("{t} missing"));
    assert!((get("gap-ratio").value_re.unwrap() - 1.0).abs() < 1e-3);
    assert!((get("gap-richardson").value_re.unwrap() / get("gap").reference_re.unwrap() - 1.0).abs() < 1e-4);
    assert!(get("bound").value_re.unwrap() >= 0.0);
    assert!(r.iter().all(|x| x.error.is_none()));
}

#[test]
fn identities_hold_for_random_draws() {
    let out = run(&["verify", "identities", "--draws", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(records(&out).len(), 8);
}

#[test]
fn exit_statuses() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["eval", "bessel", "--order", "1"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "bessel", "--order", "1", "--z", "abc"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    // gamma above one is an input error, reported as a record.
    let out = run(&["sum", "classical", "--alpha", "0", "--beta", "0", "--gamma", "1.5", "--mu", "0.3", "--z", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(records(&out)[0].error.is_some());
    // A pole of the closed form is numerical.
    let out = run(&["sum", "harmonic", "--mu", "1", "--theta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // Failing the bound with no margin is numerical.
    assert_eq!(run(&["verify", "appendix", "--n", "100", "--m", "0"]).status.code(), Some(2));
}

#[test]
fn config_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(
        &path,
        "command = \"sum\"\ntarget = \"classical\"\n[params]\nalpha = \"0.5\"\nbeta = \"1.2-0.3j\"\ngamma = 0.8\nmu = \"0.3+0.2j\"\nz = 2\n",
    )
    .unwrap();
    let a = run(&["--config", path.to_str().unwrap()]);
    let b = run(&["sum", "classical", "--alpha", "0.5", "--beta", "1.2-0.3j", "--gamma", "0.8", "--mu", "0.3+0.2j", "--z", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    std::fs::write(&path, "command = \"eval\"\ntarget = \"gamma\"\n[params]\nz = \"1\"\nw = \"2\"\n").unwrap();
    let out = run(&["--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown key `w`"));
}

#[test]
fn output_is_deterministic() {
    let args = ["sum", "gbf-square", "--mu", "0.4", "--x", "1.5", "--y", "0.5", "--method", "both", "--format", "json"];
    let first = run(&args);
    assert_eq!(first.stdout, run(&args).stdout);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let mut with_file = args.to_vec();
    with_file.extend(["-o", path.to_str().unwrap()]);
    assert_eq!(run(&with_file).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first.stdout);
}
