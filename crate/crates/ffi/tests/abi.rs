use std::ffi::{CStr, CString};
use std::ptr;

use sfl_ffi::*;

fn last_error() -> String {
    let p = sfl_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn graph6(s: &str) -> *mut SflGraph {
    let text = CString::new(s).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sfl_graph_from_graph6(text.as_ptr(), &mut g) }, SflStatus::Ok);
    assert!(!g.is_null());
    g
}

#[test]
fn graph_lifecycle() {
    unsafe {
        let g = graph6("C~");
        assert_eq!(sfl_graph_order(g), 4);
        assert_eq!(sfl_graph_edge_count(g), 6);
        let mut s = ptr::null_mut();
        assert_eq!(sfl_graph_to_graph6(g, &mut s), SflStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "C~");
        sfl_string_free(s);
        sfl_graph_free(g);
        sfl_graph_free(ptr::null_mut());
        assert_eq!(sfl_graph_order(ptr::null()), 0);
    }
}

#[test]
fn edges_and_edge_list() {
    unsafe {
        let pairs = [0usize, 1, 1, 2, 2, 3, 3, 4, 4, 0];
        let mut g = ptr::null_mut();
        assert_eq!(sfl_graph_from_edges(5, pairs.as_ptr(), 5, &mut g), SflStatus::Ok);
        let mut rho = 0.0;
        let mut res = 1.0;
        assert_eq!(sfl_spectral_radius(g, 0.0, 0, &mut rho, &mut res), SflStatus::Ok);
        assert!((rho - 2.0).abs() < 1e-9);
        assert!(res < 1e-9);
        let mut doubled = 0;
        assert_eq!(sfl_fractional_matching_doubled(g, &mut doubled), SflStatus::Ok);
        assert_eq!(doubled, 5);
        sfl_graph_free(g);

        let text = CString::new("3\n0 1\n1 2\n").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(sfl_graph_from_edge_list(text.as_ptr(), &mut p), SflStatus::Ok);
        assert_eq!(sfl_graph_edge_count(p), 2);
        let mut d = 0i64;
        assert_eq!(sfl_max_deficiency(p, 1, &mut d), SflStatus::Ok);
        assert_eq!(d, 1);
        sfl_graph_free(p);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let bad = CString::new("not graph6 at all").unwrap();
        assert_eq!(sfl_graph_from_graph6(bad.as_ptr(), &mut g), SflStatus::Parse);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(sfl_graph_from_graph6(ptr::null(), &mut g), SflStatus::NullPointer);
        assert!(last_error().contains("null"));

        let pairs = [0usize, 0];
        assert_eq!(sfl_graph_from_edges(3, pairs.as_ptr(), 1, &mut g), SflStatus::InvalidArgument);
        let pairs = [0usize, 7];
        assert_eq!(sfl_graph_from_edges(3, pairs.as_ptr(), 1, &mut g), SflStatus::InvalidArgument);

        let mut t = 0.0;
        assert_eq!(sfl_threshold(SflFamily::Main2, 10, 1, 1, &mut t, ptr::null_mut()), SflStatus::InvalidArgument);

        // A success clears the stored message.
        let k = graph6("C~");
        let mut n = 0;
        assert_eq!(sfl_fractional_matching_doubled(k, &mut n), SflStatus::Ok);
        assert!(sfl_last_error().is_null());
        sfl_graph_free(k);
    }
}

#[test]
fn factors_and_certificates() {
    unsafe {
        // K_{1,3}: a star factor needs k >= 3; no edge-or-cycle factor exists.
        let g = graph6("Cs");
        assert_eq!(sfl_graph_edge_count(g), 3);
        let mut exists = true;
        assert_eq!(sfl_has_factor(g, SflFactorKind::Star, 2, &mut exists), SflStatus::Ok);
        assert!(!exists);
        assert_eq!(sfl_has_factor(g, SflFactorKind::Star, 3, &mut exists), SflStatus::Ok);
        assert!(exists);
        assert_eq!(sfl_has_factor(g, SflFactorKind::K2Ck, 3, &mut exists), SflStatus::Ok);
        assert!(!exists);

        let mut json = ptr::null_mut();
        assert_eq!(sfl_factor_certificate_json(g, SflFactorKind::Star, 3, &mut json), SflStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        assert_eq!(v["exists"], serde_json::json!(true));
        assert_eq!(v["outcome"], serde_json::json!("factor"));
        sfl_string_free(json);

        assert_eq!(sfl_has_factor(g, SflFactorKind::Star, 1, &mut exists), SflStatus::InvalidArgument);
        sfl_graph_free(g);
    }
}

#[test]
fn extremal_and_threshold() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(sfl_extremal_graph(SflFamily::Main1, 10, 1, 1, &mut g), SflStatus::Ok);
        assert_eq!(sfl_graph_order(g), 10);
        let mut rho = 0.0;
        assert_eq!(sfl_spectral_radius(g, 1e-12, 0, &mut rho, ptr::null_mut()), SflStatus::Ok);
        let mut t = 0.0;
        let mut holds = true;
        assert_eq!(sfl_threshold(SflFamily::Main1, 10, 1, 1, &mut t, &mut holds), SflStatus::Ok);
        assert!((t - rho).abs() < 1e-8);
        assert!(!holds);
        assert_eq!(sfl_threshold(SflFamily::Main1, 12, 1, 1, &mut t, &mut holds), SflStatus::Ok);
        assert!(holds);
        sfl_graph_free(g);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(sfl_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
