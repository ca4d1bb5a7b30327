use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qsprep_ffi::*;

fn last_error() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 512];
    let n = unsafe { qsprep_last_error(buf.as_mut_ptr(), buf.len()) };
    if n == 0 {
        return String::new();
    }
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_string_lossy().into_owned()
}

#[test]
fn synthesize_compile_and_simulate_w4() {
    unsafe {
        let family = CString::new("w").unwrap();
        let mut state = ptr::null_mut();
        assert_eq!(qsprep_state_generate(family.as_ptr(), 4, 0, 0, &mut state), QsprepStatus::Ok);
        assert_eq!(qsprep_state_support(state), 4);
        let method = CString::new("sparse").unwrap();
        let mut logical = ptr::null_mut();
        assert_eq!(qsprep_synthesize(state, method.as_ptr(), 8, &mut logical), QsprepStatus::Ok);
        let mode = CString::new("gidney").unwrap();
        let mut compiled = ptr::null_mut();
        assert_eq!(qsprep_compile(logical, 12, mode.as_ptr(), false, &mut compiled), QsprepStatus::Ok);
        let mut counts = QsprepCounts::default();
        assert_eq!(qsprep_circuit_counts(compiled, &mut counts), QsprepStatus::Ok);
        assert_eq!(counts.n_t + counts.n_tdg, counts.compiled_t);
        let mut f = 0.0;
        assert_eq!(qsprep_state_fidelity(compiled, state, 26, &mut f), QsprepStatus::Ok);
        assert!(f > 1.0 - 1e-3, "fidelity {f}");
        qsprep_circuit_free(compiled);
        qsprep_circuit_free(logical);
        qsprep_state_free(state);
    }
}

#[test]
fn text_round_trip() {
    unsafe {
        let amps = [0.6, 0.0, 0.0, 0.8];
        let mut state = ptr::null_mut();
        assert_eq!(qsprep_state_from_amplitudes(amps.as_ptr(), amps.len(), &mut state), QsprepStatus::Ok);
        let method = CString::new("dense").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(qsprep_synthesize(state, method.as_ptr(), 4, &mut c), QsprepStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(qsprep_circuit_to_text(c, &mut text), QsprepStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(qsprep_circuit_from_text(text, &mut back), QsprepStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(qsprep_circuit_to_text(back, &mut again), QsprepStatus::Ok);
        assert_eq!(CStr::from_ptr(text), CStr::from_ptr(again));
        assert_eq!(qsprep_circuit_num_qubits(back), 2);
        qsprep_string_free(text);
        qsprep_string_free(again);
        qsprep_circuit_free(back);
        qsprep_circuit_free(c);
        qsprep_state_free(state);
    }
}

#[test]
fn alias_marginal_over_c_abi() {
    unsafe {
        let p = [0.5, 0.25, 0.25];
        let mut t = ptr::null_mut();
        assert_eq!(qsprep_alias_table_build(p.as_ptr(), p.len(), 4, &mut t), QsprepStatus::Ok);
        assert_eq!(qsprep_alias_table_len(t), 4);
        let mut m = [0.0; 4];
        assert_eq!(qsprep_alias_table_marginal(t, m.as_mut_ptr(), 4), QsprepStatus::Ok);
        assert_eq!(m, [0.5, 0.25, 0.25, 0.0]);
        assert_eq!(qsprep_alias_table_marginal(t, m.as_mut_ptr(), 3), QsprepStatus::InvalidArgument);
        qsprep_alias_table_free(t);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut state = ptr::null_mut();
        let bogus = CString::new("bogus").unwrap();
        assert_eq!(qsprep_state_generate(bogus.as_ptr(), 4, 0, 0, &mut state), QsprepStatus::InvalidArgument);
        assert!(last_error().contains("bogus"));
        assert!(state.is_null());
        assert_eq!(qsprep_state_generate(ptr::null(), 4, 0, 0, &mut state), QsprepStatus::NullPointer);
        let bad = [0.5, 0.5];
        assert_eq!(qsprep_state_from_amplitudes(bad.as_ptr(), 2, &mut state), QsprepStatus::Validation);
        let neg = [1.5, -0.5];
        let mut t = ptr::null_mut();
        assert_ne!(qsprep_alias_table_build(neg.as_ptr(), 2, 4, &mut t), QsprepStatus::Ok);
        assert!(!last_error().is_empty());
        // a success clears the message
        let w = CString::new("w").unwrap();
        assert_eq!(qsprep_state_generate(w.as_ptr(), 2, 0, 0, &mut state), QsprepStatus::Ok);
        assert_eq!(last_error(), "");
        let mut c = ptr::null_mut();
        let dense = CString::new("dense").unwrap();
        assert_eq!(qsprep_synthesize(state, dense.as_ptr(), 4, &mut c), QsprepStatus::Ok);
        let mut f = 0.0;
        assert_eq!(qsprep_state_fidelity(c, state, 1, &mut f), QsprepStatus::Capacity);
        qsprep_circuit_free(c);
        qsprep_state_free(state);
        qsprep_state_free(ptr::null_mut());
    }
}

#[test]
fn version_is_nul_terminated() {
    let v = unsafe { CStr::from_ptr(qsprep_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn have_gcc() -> bool {
    Command::new("gcc").arg("--version").output().is_ok()
}

#[test]
fn header_compiles_as_c_and_cpp() {
    if !have_gcc() {
        eprintln!("gcc not found; skipping header check");
        return;
    }
    let header = manifest_dir().join("include/qsprep.h");
    for lang in ["c", "c++"] {
        let status = Command::new("gcc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang]).arg(&header).status().unwrap();
        assert!(status.success(), "header fails as {lang}");
    }
}

fn static_lib() -> Option<PathBuf> {
    // tests/<binary> lives in target/<profile>/deps
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libqsprep_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping link test");
        return;
    };
    if !have_gcc() {
        eprintln!("gcc not found; skipping link test");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("demo");
    let status = Command::new("gcc")
        .args(["-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(manifest_dir().join("tests/demo.c"))
        .arg("-I")
        .arg(manifest_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("support 8"), "{stdout}");
    assert!(stdout.contains("status 2"), "{stdout}");
}
