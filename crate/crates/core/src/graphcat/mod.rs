//! Graphs and categories internal to finite sets, their functors and natural
//! transformations.

mod category;
mod constructions;
mod functor;
mod graph;
mod iso;

pub use category::{
    associativity_sweep, disc, indisc, nerve_level, objects_of, terminal, underlying_graph,
    validate_category, CatParts, InternalCat,
};
pub use constructions::{arrow_category, product_cat, ArrowCat, ProductCat};
pub use functor::{
    check_functor_laws, check_nattrans_laws, counit, validate_functor, validate_nattrans, Functor,
    NatTrans,
};
pub use graph::{paths_up_to, Graph, GraphMorphism, Path};
pub use iso::{find_isomorphism, find_isomorphism_over};
