use std::ffi::{CStr, CString};
use std::ptr;

use intercat_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ic_last_error()) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { ic_string_free(p) };
    s
}

const TERMINAL: &str = r#"{"kind":"category","objects":["*"],"morphisms":[{"name":"*","src":"*","tgt":"*"}],
    "identities":{"*":"*"},"composition":[]}"#;

fn endpoint(two: &str, at: &str) -> CString {
    let id = format!("id_{at}");
    CString::new(format!(
        r#"{{"kind":"functor","dom":{TERMINAL},"cod":{two},"on_objects":{{"*":"{at}"}},"on_morphisms":{{"*":"{id}"}}}}"#
    ))
    .unwrap()
}

#[test]
fn category_round_trip_through_handles() {
    let mut two = ptr::null_mut();
    assert_eq!(unsafe { ic_two_e(&mut two) }, IcStatus::Ok);
    let (mut o, mut m) = (0, 0);
    assert_eq!(unsafe { ic_category_counts(two, &mut o, &mut m) }, IcStatus::Ok);
    assert_eq!((o, m), (2, 3));
    assert_eq!(unsafe { ic_category_validate(two) }, IcStatus::Ok);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ic_category_to_json(two, &mut text) }, IcStatus::Ok);
    let json = take_string(text);
    let c = CString::new(json.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { ic_category_from_json(c.as_ptr(), &mut back) }, IcStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { ic_category_to_json(back, &mut again) }, IcStatus::Ok);
    assert_eq!(take_string(again), json);
    unsafe {
        ic_category_free(two);
        ic_category_free(back);
    }
}

#[test]
fn coequalising_the_endpoints_is_inexact() {
    let mut two = ptr::null_mut();
    unsafe { ic_two_e(&mut two) };
    let mut text = ptr::null_mut();
    unsafe { ic_category_to_json(two, &mut text) };
    let two_json = take_string(text);
    let (s, t) = (endpoint(&two_json, "s"), endpoint(&two_json, "t"));
    let (mut f, mut g) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { ic_functor_from_json(s.as_ptr(), &mut f) }, IcStatus::Ok, "{}", last_error());
    assert_eq!(unsafe { ic_functor_from_json(t.as_ptr(), &mut g) }, IcStatus::Ok);
    let mut q = ptr::null_mut();
    let mut exact = true;
    assert_eq!(unsafe { ic_coequalize(f, g, 3, &mut q, &mut exact) }, IcStatus::Ok);
    assert!(!exact);
    let mut cod = ptr::null_mut();
    assert_eq!(unsafe { ic_functor_codomain(q, &mut cod) }, IcStatus::Ok);
    let (mut o, mut m) = (0, 0);
    unsafe { ic_category_counts(cod, &mut o, &mut m) };
    assert_eq!((o, m), (1, 4));
    unsafe {
        ic_category_free(cod);
        ic_category_free(two);
        for h in [f, g, q] {
            ic_functor_free(h);
        }
    }
}

#[test]
fn suspensions_are_conduche() {
    let f = CString::new(r#"{"kind":"function","dom":["a","b"],"cod":["x"],"map":{"a":"x","b":"x"}}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ic_suspend(f.as_ptr(), &mut s) }, IcStatus::Ok);
    let mut yes = false;
    assert_eq!(unsafe { ic_is_conduche(s, &mut yes) }, IcStatus::Ok);
    assert!(yes);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ic_functor_to_json(s, &mut text) }, IcStatus::Ok);
    assert!(take_string(text).contains("\"kind\": \"functor\""));
    unsafe { ic_functor_free(s) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ic_category_from_json(ptr::null(), &mut out) }, IcStatus::NullArgument);
    assert!(last_error().contains("json"));

    let bad = CString::new("{\"kind\": ").unwrap();
    assert_eq!(unsafe { ic_category_from_json(bad.as_ptr(), &mut out) }, IcStatus::Parse);
    assert!(!last_error().is_empty());

    // `id_t∘u` recorded as `id_t`, which has the wrong source.
    let unlawful = CString::new(
        r#"{"kind":"category","objects":["s","t"],
            "morphisms":[{"name":"id_s","src":"s","tgt":"s"},{"name":"id_t","src":"t","tgt":"t"},{"name":"u","src":"s","tgt":"t"}],
            "identities":{"s":"id_s","t":"id_t"},"composition":[["id_t","u","id_t"]]}"#,
    )
    .unwrap();
    assert_eq!(unsafe { ic_category_from_json(unlawful.as_ptr(), &mut out) }, IcStatus::LawViolation);

    let function = CString::new(r#"{"kind":"function","dom":[],"cod":[],"map":{}}"#).unwrap();
    assert_eq!(unsafe { ic_category_from_json(function.as_ptr(), &mut out) }, IcStatus::Mismatch);

    let mut two = ptr::null_mut();
    unsafe { ic_two_e(&mut two) };
    assert_eq!(last_error(), "");
    unsafe { ic_category_free(two) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(ic_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
