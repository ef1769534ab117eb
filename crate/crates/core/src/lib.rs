//! Positive opetopes, opetopic cardinals and their dual tree and thicket
//! complexes.

pub mod complex;
pub mod constellation;
pub mod duality;
pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod io;
pub mod iota;
pub mod omega;
pub mod poset;
pub mod render;
pub mod report;

pub use complex::{
    complexes_isomorphic, compose_complex_morphisms, size_of, validate_complex,
    validate_complex_morphism, Complex, ComplexMorphism, SizeSequence,
};
pub use constellation::{
    constellation_order, validate_constellation, validate_constellation_morphism, Constellation,
    ConstellationOrder, Mode, Node,
};
pub use duality::{
    check_epsilon_naturality, check_eta_naturality, dualize_complex, dualize_complex_morphism,
    dualize_iota_epi, dualize_opetope, dualize_opetope_as, epsilon_iso, eta_iso, IsoKind,
    NaturalIsoWitness,
};
pub use enumerate::{
    canonical_code, canonical_form, enumerate_complex_morphisms, enumerate_complexes,
    enumerate_iota_epis, enumerate_trees, CanonicalCode, EnumSpec,
};
pub use error::{Error, Result};
pub use hypergraph::{
    validate_face_map, Classification, Face, FaceMap, FaceSet, HypergraphClass, IotaReading,
    OrderKind, OrderRelation, PositiveHypergraph,
};
pub use iota::{
    analyze_iota_map, check_iota_corollaries, compose_iota, validate_iota_map, IotaAnalysis,
    IotaMap,
};
pub use omega::{check_omega_laws, Cell, Omega, Side};
pub use poset::{ConvexSubtree, Poset, PosetClass};
pub use report::{Diagnostic, ValidationReport};
