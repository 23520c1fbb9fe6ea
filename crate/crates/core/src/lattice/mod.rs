//! Lattice geometry, boundaries, defects, and the stabilizer generators built on them.

mod boundary;
mod defect;
mod geometry;
mod ops;
mod stabilizers;
mod template;

pub use boundary::{Axis, BoundarySpec, Face, FaceType, Flavor};
pub use defect::{DefectSpec, Handedness};
pub use geometry::{
    build_geometry, corner_delta, Corner, DroppedCell, FacePattern, LatticeGeometry, TwistLine,
};
pub use ops::{
    charge_color, face_uv, format_word, parse_word, translate_operator, triangular_preset,
    ChargeColor,
};
pub use stabilizers::{
    build_stabilizers, build_stabilizers_with, derive_local_stabilizers, touches_face, window_of_box,
    BuildOptions, Generator, GeneratorKind, StabilizerSet,
};
pub use template::{SiteOp, StabilizerTemplate};

pub(crate) use defect::{global_to_local, local_to_global};


/// Integer lattice coordinates `(x, y, z)` of a site.
pub type Site = [i64; 3];

/// Cube cell named by its lowest corner.
pub type CellAnchor = [i64; 3];
