//! Morse-Smale diffeomorphisms on closed 3-manifolds, described by their
//! scheme of periodic orbits and intersections, and the question of whether
//! they admit an energy function whose critical points are exactly the
//! periodic points, ordered by the Smale relation.

pub mod classification;
pub mod cli;
pub mod diagram;
pub mod energy;
pub mod examples;
pub mod filtration;
pub mod generate;
pub mod io;
pub mod ordering;
pub mod report;

pub use classification::{classify, ClassifyError, ManifoldClass};
pub use diagram::{
    validate, Diagram, EdgeKind, EmbeddingAnnotation, IntersectionEdge, Orbit, OrbitId, OrbitPoint, SeparatrixRecord,
    Side, ValidationReport, Violation,
};
pub use energy::{
    build_certificate, certificate_defects, check_lyapunov_schedule, decide, EnergyCertificate, EnergyError, Status,
    Verdict,
};
pub use filtration::{build_filtration, AttractorData, Filtration, FiltrationError};
pub use io::{emit_document, parse_document, DocumentError};
pub use ordering::{
    behaviour, canonical_numbering, compute_order, count_numberings, induced_inverse_numbering, Numbering, OrderError,
    OrderRelation,
};
pub use report::{Report, Sections};
