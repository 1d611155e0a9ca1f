//! Colimits of internal categories.
//!
//! Finite colimits that stay finite (coproducts, copowers, coequalisers that
//! agree on objects, coequifiers, cocommas) are computed exactly. Free
//! categories and coequalisers that glue objects may be infinite; they come
//! back as a [`Presentation`] together with a [`MaterializedCat`], which is
//! exact when every normal form fits and a lawful truncation otherwise.

mod coproduct;
mod discrete;
mod free;
mod general;
mod on_objects;

pub use coproduct::{coproduct_cat, copower2, two_e, Copower, CoproductCat};
pub use discrete::{coequalize_from_discrete, DiscreteCoeq, DiscreteCoeqTrace, FiniteRoute};
pub use free::{
    free_category, FreeCategory, MaterializedCat, Presentation, WordVerdict, DEFAULT_BOUND, EXACT_LIMIT,
    TRUNCATED_LIMIT,
};
pub use general::{
    coequalize, coinserter, cocomma, cycles_lift_check, Cocomma, Coequaliser, Coinserter, CycleLift, Pushout,
    pushout,
};
pub use on_objects::{coequalize_on_objects, coequifier, CoequaliserTrace};
