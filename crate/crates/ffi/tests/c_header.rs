//! Builds a small C program against the generated header and static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "motzeta.h"

int main(void) {
    MzCurve *curve = NULL;
    MzSeries *s = NULL;
    MzClass *c = NULL;
    if (mz_curve_builtin("node", &curve) != MZ_STATUS_OK) return 1;
    if (mz_curve_poincare(curve, 3, &s) != MZ_STATUS_OK) return 2;
    if (mz_series_coeff(s, 2, &c) != MZ_STATUS_OK) return 3;
    char *t = mz_class_to_string(c);
    printf("%s\n", t);
    mz_string_free(t);
    mz_class_free(c);
    mz_series_free(s);
    mz_curve_free(curve);
    if (mz_class_parse("L^", &c) != MZ_STATUS_PARSE) return 4;
    printf("%s\n", mz_last_error());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests/<name>-<hash> lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libmotzeta_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some("(L-1)/(L^2)"));
    assert!(lines.next().unwrap().contains("parse error"));
}
