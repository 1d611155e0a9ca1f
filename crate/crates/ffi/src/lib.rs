//! C ABI over `intercat`.
//!
//! Categories and functors cross the boundary as opaque handles; data goes
//! in and out as the same JSON documents the CLI reads and writes. Every
//! call returns an [`IcStatus`]; on failure [`ic_last_error`] describes it.
//! Strings handed out by the library are freed with [`ic_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use intercat::cli::json::{self, Document};
use intercat::colimits::{coequalize, two_e};
use intercat::fibrations::{is_discrete_conduche, suspend_fn};
use intercat::graphcat::{Functor, InternalCat};
use intercat::Error;

/// Result of every call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IcStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// The data breaks a category, functor or transformation law.
    LawViolation = 4,
    /// Inputs do not fit together (domains, codomains, shapes, kinds).
    Mismatch = 5,
    TooLarge = 6,
    PreconditionViolated = 7,
    /// A bug: the library panicked.
    Internal = 99,
}

/// An internal category.
pub struct IcCategory(InternalCat);

/// A functor between internal categories.
pub struct IcFunctor(Functor);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> IcStatus {
    match e {
        Error::Parse(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_) => IcStatus::Parse,
        Error::Invalid(_) => IcStatus::LawViolation,
        Error::TooLarge(_) => IcStatus::TooLarge,
        Error::PreconditionViolated(_)
        | Error::InexactInput
        | Error::CyclicGraph(_)
        | Error::DomainNotDiscrete
        | Error::NotSurjective(_) => IcStatus::PreconditionViolated,
        _ => IcStatus::Mismatch,
    }
}

/// Runs `f`, recording any error or panic for `ic_last_error`.
fn guard(f: impl FnOnce() -> Result<(), (IcStatus, String)>) -> IcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            IcStatus::Internal
        }
    }
}

fn lib(e: Error) -> (IcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (IcStatus, String) {
    (IcStatus::NullArgument, format!("`{what}` is null"))
}

/// # Safety
/// `s` is null or a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (IcStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and NUL-terminated by the caller's contract.
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| (IcStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

/// # Safety
/// `p` is null or points to a live `T`.
unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (IcStatus, String)> {
    // SAFETY: by the caller's contract.
    unsafe { p.as_ref() }.ok_or_else(|| null(what))
}

/// # Safety
/// `out` is null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (IcStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    // SAFETY: non-null and writable by the caller's contract.
    unsafe { out.write(value) };
    Ok(())
}

fn parse(text: &str) -> Result<Document, (IcStatus, String)> {
    json::parse_str(text, Path::new(".")).map_err(lib)
}

fn to_c_string(s: String) -> Result<*mut c_char, (IcStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| (IcStatus::Internal, "output contains NUL".into()))
}

/// The message for the last failed call on this thread; empty after a
/// success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ic_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn ic_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn ic_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: allocated by `CString::into_raw` in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a category document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_category_from_json(json: *const c_char, out: *mut *mut IcCategory) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let text = unsafe { read_str(json, "json") }?;
        match parse(text)? {
            Document::Category(c) => unsafe { write_out(out, Box::into_raw(Box::new(IcCategory(c))), "out") },
            other => Err((IcStatus::Mismatch, format!("expected a category, found a {}", other.kind()))),
        }
    })
}

/// The free arrow `s → t`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_two_e(out: *mut *mut IcCategory) -> IcStatus {
    // SAFETY: forwarded caller contract.
    guard(|| unsafe { write_out(out, Box::into_raw(Box::new(IcCategory(two_e()))), "out") })
}

/// Canonical JSON for a category; free with `ic_string_free`.
///
/// # Safety
/// `cat` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_category_to_json(cat: *const IcCategory, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let c = unsafe { read_ref(cat, "cat") }?;
        let s = to_c_string(json::render(&Document::Category(c.0.clone())))?;
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, s, "out") }
    })
}

/// Object and morphism counts.
///
/// # Safety
/// `cat` is a live handle; the outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn ic_category_counts(
    cat: *const IcCategory,
    objects: *mut usize,
    morphisms: *mut usize,
) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let c = unsafe { read_ref(cat, "cat") }?;
        unsafe {
            write_out(objects, c.0.n_objects(), "objects")?;
            write_out(morphisms, c.0.n_morphisms(), "morphisms")
        }
    })
}

/// Re-runs the category law suite (handles are validated on creation, so
/// this only fails on a null handle).
///
/// # Safety
/// `cat` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn ic_category_validate(cat: *const IcCategory) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let c = unsafe { read_ref(cat, "cat") }?;
        c.0.validate().map_err(|v| (IcStatus::LawViolation, v.to_string()))
    })
}

/// # Safety
/// `cat` is null or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn ic_category_free(cat: *mut IcCategory) {
    if !cat.is_null() {
        // SAFETY: created by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(cat) });
    }
}

/// Parses a functor document with inline domain and codomain.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_functor_from_json(json: *const c_char, out: *mut *mut IcFunctor) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let text = unsafe { read_str(json, "json") }?;
        match parse(text)? {
            Document::Functor(f) => unsafe { write_out(out, Box::into_raw(Box::new(IcFunctor(f))), "out") },
            other => Err((IcStatus::Mismatch, format!("expected a functor, found a {}", other.kind()))),
        }
    })
}

/// Canonical JSON for a functor; free with `ic_string_free`.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_functor_to_json(f: *const IcFunctor, out: *mut *mut c_char) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let f = unsafe { read_ref(f, "f") }?;
        let s = to_c_string(json::render(&Document::Functor(f.0.clone())))?;
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, s, "out") }
    })
}

/// A new handle on the codomain of `f`.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_functor_codomain(f: *const IcFunctor, out: *mut *mut IcCategory) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let f = unsafe { read_ref(f, "f") }?;
        let c = Box::into_raw(Box::new(IcCategory(f.0.cod().clone())));
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, c, "out") }
    })
}

/// # Safety
/// `f` is null or an unfreed handle.
#[no_mangle]
pub unsafe extern "C" fn ic_functor_free(f: *mut IcFunctor) {
    if !f.is_null() {
        // SAFETY: created by `Box::into_raw` in this library.
        drop(unsafe { Box::from_raw(f) });
    }
}

/// Coequaliser `Q` of a parallel pair, materialised at depth `bound`.
/// `exact` reports whether the codomain of `Q` is the whole quotient or a
/// truncation of an infinite one.
///
/// # Safety
/// `f`, `g` are live handles; `q` and `exact` are writable.
#[no_mangle]
pub unsafe extern "C" fn ic_coequalize(
    f: *const IcFunctor,
    g: *const IcFunctor,
    bound: usize,
    q: *mut *mut IcFunctor,
    exact: *mut bool,
) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let (f, g) = unsafe { (read_ref(f, "f")?, read_ref(g, "g")?) };
        if q.is_null() || exact.is_null() {
            return Err(null("q/exact"));
        }
        let c = coequalize(&f.0, &g.0, bound).map_err(lib)?;
        // SAFETY: checked non-null; writable by the caller's contract.
        unsafe {
            write_out(exact, c.materialized.exact, "exact")?;
            write_out(q, Box::into_raw(Box::new(IcFunctor(c.q))), "q")
        }
    })
}

/// `2[f]` for a function document `f`.
///
/// # Safety
/// `function_json` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_suspend(function_json: *const c_char, out: *mut *mut IcFunctor) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let text = unsafe { read_str(function_json, "function_json") }?;
        match parse(text)? {
            Document::Function(f) => unsafe {
                write_out(out, Box::into_raw(Box::new(IcFunctor(suspend_fn(&f)))), "out")
            },
            other => Err((IcStatus::Mismatch, format!("expected a function, found a {}", other.kind()))),
        }
    })
}

/// Whether `f` is a discrete Conduché fibration.
///
/// # Safety
/// `f` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn ic_is_conduche(f: *const IcFunctor, out: *mut bool) -> IcStatus {
    guard(|| {
        // SAFETY: forwarded caller contract.
        let f = unsafe { read_ref(f, "f") }?;
        // SAFETY: forwarded caller contract.
        unsafe { write_out(out, is_discrete_conduche(&f.0).holds(), "out") }
    })
}
