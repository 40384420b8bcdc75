//! Homomorphic image orders on finite graphs, digraphs and tournaments.
//!
//! A structure is a binary relation on `0..n` stored as bitset rows. `A ⪯ B`
//! when some surjective homomorphism maps `B` onto `A`; the strong variant also
//! requires every edge of `A` to be the image of an edge of `B`. On top of the
//! epimorphism engine the crate provides named families, bounded
//! decompositions with type signatures, verdicts on which single-obstruction
//! avoidance classes are well-quasi-ordered, and an isomorph-free enumerator
//! used to check all of it exhaustively at small sizes.
//!
//! ```
//! use homorder::{families, precedes, Model, Strength};
//!
//! let k2 = families::complete_graph(2, Model::Reflexive).unwrap();
//! let k3 = families::complete_graph(3, Model::Reflexive).unwrap();
//! assert!(precedes(&k2, &k3, Strength::Standard));
//! assert!(!precedes(&k3, &k2, Strength::Standard));
//! ```

pub mod canon;
pub mod classification;
pub mod decomposition;
pub mod enumeration;
pub mod error;
pub mod families;
pub mod hom;
pub mod structure;
pub mod text;

pub use canon::{are_isomorphic, canonical_form, canonical_labeling};
pub use classification::{
    avoids, canonical_antichain, classify, recognize_subcomplete_digraph, recognize_subcomplete_graph,
    AntichainFamily, Outcome, StructureClass, Subcomplete, Verdict, WitnessFamily,
};
pub use decomposition::{
    dominates, epi_from_dominance, find_decomposition, find_decomposition_with, max_disjoint_edges,
    max_disjoint_nonedges, max_disjoint_partial_pairs, tau_signature, vertex_type, Decomposition,
    PartRestriction, Signature, VertexType,
};
pub use enumeration::{
    enumerate_structures, enumerate_up_to, find_antichain, ideal_members, verify_antichain,
    verify_proposition, AntichainSearch, EnumerationBounds, PropositionTag, Report,
};
pub use error::{Error, Result};
pub use families::Family;
pub use hom::{
    enumerate_epimorphisms, find_epimorphism, homomorphic_images, image_edges, is_epimorphism,
    is_homomorphism, is_strong_epimorphism, precedes, Mapping, Strength,
};
pub use structure::{Kind, Model, Shape, Structure, MAX_VERTICES};
pub use text::{parse, write_dot, write_text, TypedStructure};
