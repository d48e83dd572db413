//! Exact computations around the partial orders on degree sequences and root
//! sequences of Boij–Söderberg theory: pure Betti diagrams and their greedy
//! decomposition, supernatural cohomology tables, and explicit certificates
//! for nonzero homomorphisms between modules with pure resolutions and
//! between supernatural sheaves.

pub mod arith;
pub mod betti;
pub mod equivariant;
pub mod error;
pub mod es;
pub mod supernatural;

pub use arith::{binomial, horizontal_strips, weyl_dim, ExponentMatrix, GLWeight, Rational};
pub use betti::{
    decompose, deg_hom_exists, deg_leq, pure_diagram, shift_reduction, BettiDiagram, Decomposition,
    DegreeSequence, PureDiagram,
};
pub use equivariant::{
    bwb, efw_base_case, efw_shapes, eq_hom_witness, eq_root_hom_exists, eq_supernatural_weight,
    increment_chain, verify_supernatural_equivariant, BWBResult, EqHomCertificate, EqResolutionShape,
    EqRootCertificate,
};
pub use error::{Error, Result};
pub use es::{es_setup, hom_witness, EsData, Side, WitnessCertificate};
pub use supernatural::{hom_lower_bound, root_leq, split_hom_dim, RootSequence, SupernaturalTable};
