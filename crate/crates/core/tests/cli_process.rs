//! Process-level checks of the `orecalc` binary: exit codes, environment
//! overrides, the shipped golden case files, and REPL/batch agreement.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_orecalc")
}

fn repo_path(relative: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(relative)
}

#[test]
fn rewrite_cap_env_override_reports_an_engine_error() {
    let out = Command::new(exe())
        .args(["normalize", "-a", "weyl", "x^6*t^6"])
        .env("ORECALC_MAX_REWRITES", "3")
        .output()
        .expect("binary launches");
    assert_eq!(out.status.code(), Some(3), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("did not terminate within 3 rule applications"),
        "unexpected message: {stderr}"
    );

    // The same computation finishes under the default cap.
    let ok = Command::new(exe())
        .args(["normalize", "-a", "weyl", "x^6*t^6"])
        .output()
        .expect("binary launches");
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn define_quarantines_the_broken_endomorphism_and_exits_1() {
    let path = repo_path("algebras/su2.json");
    let out = Command::new(exe())
        .arg("define")
        .arg(&path)
        .output()
        .expect("binary launches");
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("swap"), "report must name the offender:\n{stdout}");
    assert!(stdout.contains("FAIL"), "report must show the violated relation:\n{stdout}");
    assert!(stdout.contains("2*i*J3"), "report must show the residual image:\n{stdout}");

    // The quarantine is not a quarantine of the file: expressions that avoid the
    // broken endomorphism still evaluate.
    let nf = Command::new(exe())
        .args(["normalize", "-a"])
        .arg(&path)
        .arg("J2*J1")
        .output()
        .expect("binary launches");
    assert_eq!(nf.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&nf.stdout), "J1*J2 - i*J3\n");
}

#[test]
fn every_golden_case_file_passes() {
    let golden = repo_path("golden");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&golden)
        .expect("golden directory is present")
        .map(|entry| entry.expect("readable directory entry").path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    files.sort();
    assert_eq!(files.len(), 7, "expected seven golden case files, found {files:?}");

    for file in files {
        let stem = file.file_stem().unwrap().to_string_lossy().into_owned();
        let algebra = stem.strip_suffix("_cases").unwrap_or(&stem).to_string();
        let out = Command::new(exe())
            .args(["oracle", "-a", &algebra, "--cases"])
            .arg(&file)
            .output()
            .expect("binary launches");
        let stdout = String::from_utf8_lossy(&out.stdout);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{algebra} golden run failed:\n{stdout}\n{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!stdout.contains("FAIL"), "{algebra} golden run:\n{stdout}");
        let summary = stdout.lines().last().unwrap_or_default().to_string();
        assert!(
            summary.ends_with("cases passed") && !summary.starts_with('0'),
            "{algebra} golden run summary: {summary}"
        );
    }
}

#[test]
fn repl_session_agrees_with_batch_normalization() {
    let queries = ["J2*J1", "[L01, L12]", "adj(i*L01)"];
    let mut script = queries.join("\n");
    script.push_str("\n:algebra weyl\nx^2*t^2\n:quit\n");

    let mut child = Command::new(exe())
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary launches");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(script.as_bytes())
        .expect("script is delivered");
    let out = child.wait_with_output().expect("session terminates");
    assert_eq!(out.status.code(), Some(0));

    let mut expected = String::new();
    for query in queries {
        let batch = Command::new(exe())
            .args(["normalize", "-a", "so13", query])
            .output()
            .expect("binary launches");
        assert_eq!(batch.status.code(), Some(0));
        expected.push_str(&String::from_utf8_lossy(&batch.stdout));
    }
    let weyl_batch = Command::new(exe())
        .args(["normalize", "-a", "weyl", "x^2*t^2"])
        .output()
        .expect("binary launches");
    expected.push_str(&String::from_utf8_lossy(&weyl_batch.stdout));

    assert_eq!(String::from_utf8_lossy(&out.stdout), expected);

    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("orecalc>"), "prompt should land on stderr: {stderr}");
}

#[test]
fn repl_reports_errors_without_dying() {
    let mut child = Command::new(exe())
        .arg("repl")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary launches");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(b"J1 + (\nnosuchgen\nJ2*J1\n")
        .expect("script is delivered");
    let out = child.wait_with_output().expect("session terminates");
    assert_eq!(out.status.code(), Some(0), "errors inside the loop must not kill it");
    assert_eq!(String::from_utf8_lossy(&out.stdout), "-L13*L23\n");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error"), "both bad lines should be reported: {stderr}");
}
