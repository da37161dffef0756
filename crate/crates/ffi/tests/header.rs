use std::path::{Path, PathBuf};
use std::process::Command;

const SMOKE: &str = r#"
#include <stdio.h>
#include "ballout.h"

int main(void) {
    double pts[] = {0, 0, 0.1, 0, 0, 0.1, 0.1, 0.1, 0.05, 0.05, 50, 50};
    BalloutDataset *ds = NULL;
    BalloutResult *res = NULL;
    BalloutParams p = ballout_params_default();
    p.gamma = 0.1;
    p.delta = 0.5;
    p.forest_size = 3;
    if (ballout_dataset_new(pts, 6, 2, &ds) != BALLOUT_STATUS_OK) return 1;
    if (ballout_recognize(ds, &p, &res) != BALLOUT_STATUS_OK) {
        fprintf(stderr, "%s\n", ballout_last_error());
        return 2;
    }
    size_t m = ballout_result_inlier_count(res);
    const size_t *idx = ballout_result_inliers(res);
    for (size_t i = 0; i < m; i++) {
        if (idx[i] == 5) return 3;
    }
    printf("%zu\n", m);
    ballout_result_free(res);
    ballout_dataset_free(ds);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests run from target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn header_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header_dir().join("ballout.h")).unwrap();
    for sym in [
        "BALLOUT_H",
        "typedef struct BalloutDataset BalloutDataset;",
        "typedef struct BalloutResult BalloutResult;",
        "BALLOUT_STATUS_SPEC_INFEASIBLE = 6",
        "ballout_recognize(",
        "ballout_peel(",
        "ballout_last_error(",
        "ballout_result_free(",
    ] {
        assert!(h.contains(sym), "missing {sym}");
    }
}

#[test]
fn c_program_links_against_staticlib() {
    let lib = target_dir().join("libballout_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, SMOKE).unwrap();
    let cc = match Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header_dir())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
    {
        Ok(o) => o,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
            eprintln!("skipping: no C compiler");
            return;
        }
        Err(e) => panic!("{e}"),
    };
    assert!(cc.status.success(), "{}", String::from_utf8_lossy(&cc.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    // k = ceil(1.5 * 0.1 * 6) = 1
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "5");
}
