//! Construction and analysis of the cubic code on finite lattices with boundaries and defects.

pub mod analysis;
pub mod closed_forms;
pub mod config;
pub mod error;
pub mod excitation;
pub mod gf2;
pub mod lattice;
pub mod pauli;
pub mod validation;

pub use analysis::{
    box_region, classify, count_logicals_in_region, gauge_out, logical_basis, min_support_width,
    min_support_width_within, slab_region,
    num_logical_qubits, LogicalBasis, OperatorClass, SlabProtocol,
};
pub use closed_forms::{k_formula, ConfigKey, Family, KValue};
pub use config::Config;
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec};
pub use lattice::{
    build_geometry, build_stabilizers, Axis, BoundarySpec, CellAnchor, DefectSpec, Face,
    Flavor, GeneratorKind, LatticeGeometry, Site, StabilizerSet,
};
pub use pauli::{Pauli, PauliWord};
