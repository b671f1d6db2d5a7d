use std::ffi::{CStr, CString};
use std::ptr;

use biclique_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = bq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn system_lifecycle() {
    let text = cstr("n 4\nb 1 | 2 3 4\nb 2 | 3 4\nb 3 | 4\n");
    let mut sys = ptr::null_mut();
    unsafe {
        assert_eq!(bq_system_parse(text.as_ptr(), &mut sys), BqStatus::Ok);
        let mut len = 0;
        assert_eq!(bq_system_len(sys, &mut len), BqStatus::Ok);
        assert_eq!(len, 3);

        let mut partition = false;
        assert_eq!(bq_system_is_partition(sys, &mut partition), BqStatus::Ok);
        assert!(partition);

        let (mut colors, mut proper) = (0, false);
        assert_eq!(bq_system_color(sys, &mut colors, &mut proper), BqStatus::Ok);
        assert_eq!((colors, proper), (4, true));

        let mut g = ptr::null_mut();
        assert_eq!(bq_system_union_graph(sys, &mut g), BqStatus::Ok);
        let (mut n, mut e) = (0, 0);
        assert_eq!(bq_graph_size(g, &mut n, &mut e), BqStatus::Ok);
        assert_eq!((n, e), (4, 6));
        let mut covers = false;
        assert_eq!(bq_system_covers(sys, g, &mut covers), BqStatus::Ok);
        assert!(covers);

        let mut out = 0;
        assert_eq!(
            bq_graph_oracle(g, BqOracle::ChromaticNumber, 0.0, &mut out),
            BqStatus::Ok
        );
        assert_eq!(out, 4);
        assert_eq!(
            bq_graph_oracle(g, BqOracle::MinBicliquePartition, 0.0, &mut out),
            BqStatus::Ok
        );
        assert_eq!(out, 3);
        assert_eq!(
            bq_graph_oracle(g, BqOracle::MinCoverWeight, 0.0, &mut out),
            BqStatus::Ok
        );
        assert_eq!(out, 8);
        assert_eq!(
            bq_graph_oracle(g, BqOracle::IndependenceNumber, 0.0, &mut out),
            BqStatus::Ok
        );
        assert_eq!(out, 1);

        let mut s = ptr::null_mut();
        assert_eq!(bq_system_write(sys, &mut s), BqStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), text.to_str().unwrap());
        bq_string_free(s);

        bq_graph_free(g);
        bq_system_free(sys);
    }
}

#[test]
fn extraction_reports_required_capacity() {
    let text = cstr("n 6\nb 1 2 | 3\nb 4 | 5 6\n");
    let mut sys = ptr::null_mut();
    unsafe {
        assert_eq!(bq_system_parse(text.as_ptr(), &mut sys), BqStatus::Ok);
        let mut len = 0;
        assert_eq!(
            bq_system_extract(sys, ptr::null_mut(), 0, &mut len),
            BqStatus::BufferTooSmall
        );
        assert!(len >= 2);
        let mut buf = vec![0usize; len];
        assert_eq!(
            bq_system_extract(sys, buf.as_mut_ptr(), buf.len(), &mut len),
            BqStatus::Ok
        );
        assert!(buf.windows(2).all(|w| w[0] < w[1]));
        bq_system_free(sys);
    }
}

#[test]
fn errors_set_status_and_message() {
    let mut sys = ptr::null_mut();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(
            bq_system_parse(cstr("n 3\nb 1 | 7\n").as_ptr(), &mut sys),
            BqStatus::Parse
        );
        assert!(last_error().contains("line 2"));
        assert!(sys.is_null());

        assert_eq!(bq_graph_parse(ptr::null(), &mut g), BqStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(bq_graph_parse(bad.as_ptr().cast(), &mut g), BqStatus::InvalidUtf8);

        assert_eq!(
            bq_system_parse(cstr("n 4\nb 1 2 | 3 4\nb 1 3 | 2 4\n").as_ptr(), &mut sys),
            BqStatus::Ok
        );
        let (mut colors, mut proper) = (0, false);
        assert_eq!(bq_system_color(sys, &mut colors, &mut proper), BqStatus::Validation);
        bq_system_free(sys);

        let mut k = String::from("n 7\n");
        for u in 1..=7 {
            for v in u + 1..=7 {
                k += &format!("e {u} {v}\n");
            }
        }
        assert_eq!(bq_graph_parse(cstr(&k).as_ptr(), &mut g), BqStatus::Ok);
        let mut out = 0;
        assert_eq!(
            bq_graph_oracle(g, BqOracle::MinBicliquePartition, 0.0, &mut out),
            BqStatus::Resource
        );
        assert!(last_error().contains("edges"));
        bq_graph_free(g);

        let mut v = 0u64;
        assert_eq!(bq_colors_bound(4, &mut v), BqStatus::Ok);
        assert_eq!(v, 21);
        assert_eq!(bq_colors_bound(10_000, &mut v), BqStatus::Overflow);
        assert_eq!(bq_invert_bound(6, &mut v), BqStatus::Ok);
        assert_eq!(v, 3);
        assert_eq!(bq_invert_bound(6, ptr::null_mut()), BqStatus::NullPointer);

        bq_graph_free(ptr::null_mut());
        bq_system_free(ptr::null_mut());
        bq_string_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/biclique.h")).unwrap();
    for name in [
        "typedef struct BqGraph BqGraph",
        "typedef struct BqSystem BqSystem",
        "BQ_STATUS_OK = 0",
        "BQ_STATUS_BUFFER_TOO_SMALL",
        "BQ_ORACLE_MIN_COVER_WEIGHT",
        "bq_last_error(void)",
        "bq_graph_parse(",
        "bq_system_parse(",
        "bq_system_color(",
        "bq_system_extract(",
        "bq_graph_oracle(",
        "bq_colors_bound(",
        "bq_invert_bound(",
        "bq_string_free(",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
