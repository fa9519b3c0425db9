use std::process::Command;

fn homtree() -> Command {
    Command::new(env!("CARGO_BIN_EXE_homtree"))
}

#[test]
fn tables_writes_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables.csv");
    let status = homtree().args(["tables", "--z", "tau/8", "--z", "-i/2", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(out).unwrap();
    assert!(text.starts_with("suite,q,z_re,z_im,p,r,n,seed,metric,value,bound,tol,pass\n"));
}

#[test]
fn json_output_parses() {
    let output = homtree().args(["inversion", "--depth", "8", "--trials", "1", "--format", "json"]).output().unwrap();
    assert!(output.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
    assert!(!rows.as_array().unwrap().is_empty());
}

#[test]
fn same_seed_same_bytes() {
    let run = || homtree().args(["radial", "--depth", "8", "--trials", "2", "--seed", "9"]).output().unwrap().stdout;
    assert_eq!(run(), run());
}

#[test]
fn bad_configuration_exits_with_two() {
    for args in [
        vec!["theorem-p", "--q", "1"],
        vec!["radial", "--p", "3"],
        vec!["inversion", "--z", "not-a-number"],
        vec!["theorem-star", "--level", "20", "--depth", "4"],
    ] {
        let status = homtree().args(&args).status().unwrap();
        assert_eq!(status.code(), Some(2), "{args:?}");
    }
}
