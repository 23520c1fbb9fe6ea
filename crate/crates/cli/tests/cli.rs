use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn cubic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

const TENNIS: &str = r#"
[lattice]
Lx = 5
Ly = 5
Lz = 3
faces = "mem;mee"

[[regions]]
name = "mid"
lo = [0, 0, 1]
hi = [4, 4, 1]
"#;

#[test]
fn analyze_reports_k_and_oracle() {
    let cfg = temp(TENNIS);
    let out = cubic(&["analyze", "--config", cfg.path().to_str().unwrap(), "--regions"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\nn 150\n"), "{text}");
    assert!(text.contains("\nk 6\n"), "{text}");
    assert!(text.contains("(match)"), "{text}");
    assert!(text.contains("region mid logicals 4"), "{text}");
}

#[test]
fn periodic_cube_of_four() {
    let cfg = temp("[lattice]\nLx = 4\nLy = 4\nLz = 4\nfaces = \"ppp;ppp\"\n");
    let out = cubic(&["analyze", "--config", cfg.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\nk 14\n"));
}

#[test]
fn bad_notation_exits_2() {
    let cfg = temp(&TENNIS.replace("mem;mee", "mex;mee"));
    let out = cubic(&["analyze", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mex;mee"));
}

#[test]
fn unknown_key_exits_2() {
    let cfg = temp(&TENNIS.replace("Lz = 3", "Lz = 3\nLw = 1"));
    let out = cubic(&["analyze", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_defect_exits_3() {
    let text = format!(
        "{TENNIS}\n[[defects]]\nkind = \"vacancy\"\nflavor = \"m\"\norigin = [40, 40, 0]\nsize = [2, 2, 1]\n"
    );
    let cfg = temp(&text);
    let out = cubic(&["analyze", "--config", cfg.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn scan_k_csv() {
    let out = cubic(&["scan-k", "--family", "tennis1", "--values", "3..5", "--dims", "11,11,{}", "--jobs", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "Lx,Ly,Lz,n,s,k,k_oracle,match");
    assert_eq!(lines.len(), 4);
    for (line, lz) in lines[1..].iter().zip(3..) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[2], lz.to_string());
        assert_eq!(f[5], (2 * lz).to_string());
        assert_eq!(f[7], "true");
    }
}

#[test]
fn scan_k_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.csv");
    let out = cubic(&["scan-k", "--family", "ppp", "--values", "2,4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text, "Lx,Ly,Lz,n,s,k,k_oracle,match\n2,2,2,16,10,6,6,true\n4,4,4,128,114,14,14,true\n");
}

#[test]
fn single_qubit_syndrome() {
    let cfg = temp("[lattice]\nLx = 4\nLy = 4\nLz = 4\nfaces = \"ppp;ppp\"\n");
    let op = temp("(1,1,1,1,Z)");
    let out = cubic(&[
        "syndrome",
        "--config",
        cfg.path().to_str().unwrap(),
        "--operator",
        op.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().all(|l| l.starts_with("e ")));
}

#[test]
fn oracle_values() {
    assert_eq!(stdout(&cubic(&["oracle", "ppp", "l=4"])).trim(), "14");
    assert_eq!(stdout(&cubic(&["oracle", "zeta", "48"])).trim(), "16");
    assert_eq!(stdout(&cubic(&["oracle", "tau", "48", "3"])).trim(), "3");
    assert_eq!(cubic(&["oracle", "nonsense"]).status.code(), Some(2));
}

#[test]
fn cascade_scan_rows() {
    let out = cubic(&["cascade-scan", "--variant", "m:yz", "--values", "1..3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,weight,peak_energy");
    assert_eq!(lines.len(), 4);
}

#[test]
fn validate_subset() {
    let out = cubic(&["validate", "--only", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS [3]"));
}
