use std::ffi::{c_char, CStr, CString};
use std::ptr;

use sparsity_forge_ffi::*;

fn graph6(text: &str) -> *mut SfGraph {
    let text = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sf_graph_from_graph6(text.as_ptr(), &mut g) }, SfStatus::Ok);
    g
}

fn take(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let value = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { sf_string_free(s) };
    value
}

fn last_error() -> String {
    let p = sf_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn check_triangle_against_forests() {
    // "Bw" is the triangle.
    let g = graph6("Bw");
    assert_eq!(unsafe { sf_graph_vertex_count(g) }, 3);
    assert_eq!(unsafe { sf_graph_edge_count(g) }, 3);
    let (a, b) = (CString::new("1").unwrap(), CString::new("-1").unwrap());
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sf_check(g, a.as_ptr(), b.as_ptr(), &mut out) }, SfStatus::No);
    let cert = take(out);
    assert_eq!(cert["verdict"], "not_sparse");
    assert_eq!(cert["witness"], serde_json::json!([0, 1, 2]));
    let b = CString::new("0").unwrap();
    assert_eq!(unsafe { sf_check(g, a.as_ptr(), b.as_ptr(), &mut out) }, SfStatus::Ok);
    take(out);
    unsafe { sf_graph_free(g) };
}

#[test]
fn partition_and_decompose_from_pairs() {
    let k5: Vec<usize> = (0..5usize)
        .flat_map(|u| (u + 1..5).flat_map(move |v| [u, v]))
        .collect();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sf_graph_new(5, k5.as_ptr(), 10, &mut g) }, SfStatus::Ok);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sf_partition(g, 1, 0, 1, 0, &mut out) }, SfStatus::Ok);
    let split = take(out);
    assert_eq!(split["outcome"], "success");

    // Two forests hold at most 8 of the 10 edges.
    assert_eq!(unsafe { sf_partition(g, 1, -1, 1, -1, &mut out) }, SfStatus::No);
    take(out);

    let m = CString::new("2").unwrap();
    assert_eq!(unsafe { sf_decompose(g, m.as_ptr(), &mut out) }, SfStatus::Ok);
    let d = take(out);
    assert_eq!(d["verified"], true);
    assert_eq!(d["m"], "2/1");
    let total = d["F"].as_array().unwrap().len() + d["Gprime"].as_array().unwrap().len();
    assert_eq!(total, 10);

    let m = CString::new("3/2").unwrap();
    assert_eq!(unsafe { sf_decompose(g, m.as_ptr(), &mut out) }, SfStatus::No);
    assert_eq!(take(out)["verdict"], "not_sparse");
    unsafe { sf_graph_free(g) };
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("B~~").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sf_graph_from_graph6(bad.as_ptr(), &mut g) }, SfStatus::Parse);
    assert!(g.is_null());
    assert!(last_error().contains("graph6"));

    let loops = [0usize, 0];
    assert_eq!(unsafe { sf_graph_new(1, loops.as_ptr(), 1, &mut g) }, SfStatus::InvalidArgument);

    assert_eq!(unsafe { sf_graph_from_edgelist(ptr::null(), &mut g) }, SfStatus::NullArgument);

    let g = graph6("Bw");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sf_partition(g, 1, -3, 1, 0, &mut out) }, SfStatus::InvalidArgument);
    assert!(out.is_null());
    assert!(last_error().contains("matroid"));
    let m = CString::new("1").unwrap();
    assert_eq!(unsafe { sf_decompose(g, m.as_ptr(), &mut out) }, SfStatus::InvalidArgument);
    unsafe { sf_graph_free(g) };
    unsafe { sf_graph_free(ptr::null_mut()) };
    unsafe { sf_string_free(ptr::null_mut()) };
}

#[test]
fn edgelist_and_version() {
    let text = CString::new("n = 4\n0 1\n1 2\n2 3\n").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { sf_graph_from_edgelist(text.as_ptr(), &mut g) }, SfStatus::Ok);
    assert_eq!(unsafe { sf_graph_vertex_count(g) }, 4);
    unsafe { sf_graph_free(g) };
    let version = unsafe { CStr::from_ptr(sf_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
