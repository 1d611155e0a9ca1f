//! The cocomma check over every span of categories with at most two
//! objects and four morphisms. About three million span classes; hours of
//! CPU on one core, hence ignored by default.

use intercat::colimits::cocomma;
use intercat::oracle::{generate, verify_cocomma, TestFamily, Verdict};

#[test]
#[ignore = "exhaustive: hours of CPU"]
fn cocomma_all_spans_two_objects_four_morphisms() {
    let fam = TestFamily::generate(2, 5);
    let legs = TestFamily::generate(2, 4);
    let spans = generate::span_classes(&legs, &legs);
    eprintln!("{} span classes", spans.len());
    for (i, (f, g)) in spans.iter().enumerate() {
        let cc = cocomma(f, g).unwrap();
        let v = verify_cocomma(f, g, &cc.cat, (&cc.j, &cc.k, &cc.theta), &fam).unwrap();
        assert!(matches!(v, Verdict::Ok { .. }), "span {i}: {v:?}");
    }
}
