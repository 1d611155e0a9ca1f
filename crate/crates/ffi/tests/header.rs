use std::path::Path;
use std::process::Command;

fn header() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/intercat.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "ic_last_error",
        "ic_string_free",
        "ic_category_from_json",
        "ic_category_to_json",
        "ic_category_counts",
        "ic_category_free",
        "ic_functor_from_json",
        "ic_functor_free",
        "ic_coequalize",
        "ic_suspend",
        "ic_is_conduche",
    ] {
        assert!(h.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(h.contains("typedef struct IcCategory IcCategory;"));
    assert!(h.contains("IC_STATUS_OK = 0"));
}

/// Compiles the header as C when a compiler is on PATH.
#[test]
fn header_is_valid_c() {
    let Ok(out) = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(header())
        .output()
    else {
        eprintln!("no C compiler; skipped");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
