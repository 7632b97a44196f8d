use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use rc_insertion_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    rc_string_free(s);
    out
}

unsafe fn graph(json: &str) -> *mut RcGraph {
    let mut g = ptr::null_mut();
    assert_eq!(rc_graph_from_json(c(json).as_ptr(), &mut g), RcStatus::Ok);
    g
}

unsafe fn last_error() -> String {
    CStr::from_ptr(rc_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn insert_and_invert_the_second_example() {
    unsafe {
        let r = graph(r#"{"crossings":[[1,2],[1,3],[2,2]]}"#);
        let y = graph(r#"{"crossings":[[1,3],[2,1],[2,3],[3,1]]}"#);
        let mut u = ptr::null_mut();
        let mut t = ptr::null_mut();
        assert_eq!(rc_insert(r, y, 3, &mut u, &mut t), RcStatus::Ok);

        let mut s = ptr::null_mut();
        assert_eq!(rc_tableau_word(t, &mut s), RcStatus::Ok);
        assert_eq!(take(s), "(35)(36)(14)(26)");
        assert_eq!(rc_graph_to_json(u, &mut s), RcStatus::Ok);
        assert_eq!(take(s), r#"{"crossings":[[1,1],[1,3],[1,4],[2,1],[2,3],[2,4],[3,1]]}"#);
        assert_eq!(rc_tableau_to_json(t, &mut s), RcStatus::Ok);
        assert_eq!(take(s), r#"{"shape":[2,2],"r":3,"entries":[[3,5],[3,6],[1,4],[2,6]]}"#);

        let mut len = 0;
        assert_eq!(rc_graph_permutation(r, ptr::null_mut(), 0, &mut len), RcStatus::Ok);
        let mut w = vec![0usize; len];
        assert_eq!(rc_graph_permutation(r, w.as_mut_ptr(), len, &mut len), RcStatus::Ok);
        assert_eq!(w, [1, 4, 3, 2]);

        let mut r_back = ptr::null_mut();
        let mut y_back = ptr::null_mut();
        assert_eq!(
            rc_inverse_insert(u, t, w.as_ptr(), w.len(), 3, &mut r_back, &mut y_back),
            RcStatus::Ok
        );
        assert_eq!(rc_graph_to_json(y_back, &mut s), RcStatus::Ok);
        assert_eq!(take(s), r#"{"crossings":[[1,3],[2,1],[2,3],[3,1]]}"#);
        assert_eq!(rc_graph_len(r_back), 3);

        for g in [r, y, u, r_back, y_back] {
            rc_graph_free(g);
        }
        rc_tableau_free(t);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(rc_graph_from_json(c("not json").as_ptr(), &mut g), RcStatus::Malformed);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(rc_graph_from_json(ptr::null(), &mut g), RcStatus::NullPointer);
        assert_eq!(rc_graph_from_json(c(r#"{"crossings":[]}"#).as_ptr(), ptr::null_mut()), RcStatus::NullPointer);

        let doubled = graph(r#"{"crossings":[[1,2],[2,1],[2,2],[3,1]]}"#);
        assert_eq!(rc_graph_is_reduced(doubled), 0);
        let y = graph(r#"{"crossings":[[2,1],[2,2]]}"#);
        let mut u = ptr::null_mut();
        let mut t = ptr::null_mut();
        assert_eq!(rc_insert(doubled, y, 2, &mut u, &mut t), RcStatus::Precondition);
        assert!(last_error().contains("not an rc-graph"));
        assert!(u.is_null() && t.is_null());
        rc_graph_free(doubled);
        rc_graph_free(y);

        let w = [1usize, 2, 4, 3];
        let lambda = [2usize, 2];
        let mut s = ptr::null_mut();
        let status = rc_lr_coefficients(w.as_ptr(), w.len(), lambda.as_ptr(), lambda.len(), 2, 0, &mut s);
        assert_eq!(status, RcStatus::Precondition);
        let status = rc_lr_coefficients([1usize, 1].as_ptr(), 2, ptr::null(), 0, 2, 0, &mut s);
        assert_eq!(status, RcStatus::Malformed);

        rc_graph_free(ptr::null_mut());
        rc_tableau_free(ptr::null_mut());
        rc_string_free(ptr::null_mut());
    }
}

#[test]
fn lr_report() {
    unsafe {
        let w = [1usize, 4, 3, 2];
        let lambda = [2usize, 2];
        let mut s = ptr::null_mut();
        let status = rc_lr_coefficients(w.as_ptr(), w.len(), lambda.as_ptr(), lambda.len(), 3, 0, &mut s);
        assert_eq!(status, RcStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        let us: Vec<&serde_json::Value> = report["coefficients"].as_array().unwrap().iter().map(|c| &c["u"]).collect();
        assert!(us.contains(&&serde_json::json!([2, 5, 6, 1, 3, 4])));
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/rc_insertion.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct RcGraph RcGraph;",
        "typedef struct RcTableau RcTableau;",
        "RC_STATUS_PRECONDITION = 2",
        "RcStatus rc_insert(",
        "RcStatus rc_inverse_insert(",
        "RcStatus rc_lr_coefficients(",
        "const char *rc_last_error(void);",
        "void rc_string_free(char *s);",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

/// Builds the static library, compiles the C smoke test against it and runs
/// it. `cargo test` does not produce the staticlib, so a nested build with its
/// own target directory provides it.
#[test]
fn c_program_links_and_runs() {
    let workspace = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..");
    let target = workspace.join("target/c-smoke");
    let built = Command::new(env!("CARGO"))
        .args(["build", "--quiet", "-p", "rc-insertion-ffi", "--target-dir"])
        .arg(&target)
        .current_dir(&workspace)
        .status()
        .unwrap();
    assert!(built.success());
    let lib = target.join("debug/librc_insertion_ffi.a");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::temp_dir().join(format!("rc_insertion_smoke_{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler named `cc`");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    let _ = std::fs::remove_file(&exe);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "(24)(23) {\"crossings\":[[2,1],[2,2]]}\n");
}
