//! Combinatorial model of a Morse-Smale diffeomorphism on a closed 3-manifold.
//!
//! A [`Diagram`] lists the periodic orbits, the intersections between their
//! invariant manifolds, the separatrix limit data of the saddles and the
//! embedding annotations of the one-dimensional attractors and repellers.
//! Nothing here is geometric: every topological fact that cannot be derived
//! from counting is an input.

mod validate;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use validate::{validate, ValidationReport, Violation};

/// Identifier of a periodic orbit, unique within a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrbitId(pub String);

impl OrbitId {
    pub fn new(id: impl Into<String>) -> Self {
        OrbitId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OrbitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for OrbitId {
    fn from(s: &str) -> Self {
        OrbitId(s.to_owned())
    }
}

/// A periodic orbit. `index` is the dimension of the unstable manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Orbit {
    pub id: OrbitId,
    pub period: u32,
    pub index: u8,
    /// Whether the period-th return swaps the two one-dimensional separatrices
    /// (unstable ones for index 1, stable ones for index 2).
    #[serde(default)]
    pub separatrix_swap: bool,
}

impl Orbit {
    pub fn new(id: impl Into<String>, period: u32, index: u8) -> Self {
        Orbit {
            id: OrbitId::new(id),
            period,
            index,
            separatrix_swap: false,
        }
    }

    pub fn with_swap(mut self, swap: bool) -> Self {
        self.separatrix_swap = swap;
        self
    }

    pub fn is_sink(&self) -> bool {
        self.index == 0
    }

    pub fn is_source(&self) -> bool {
        self.index == 3
    }

    pub fn is_saddle(&self) -> bool {
        self.index == 1 || self.index == 2
    }
}

/// One point of a periodic orbit. The map sends point `j` to `(j + 1) mod period`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitPoint {
    pub orbit: OrbitId,
    pub point: u32,
}

impl OrbitPoint {
    pub fn new(orbit: impl Into<String>, point: u32) -> Self {
        OrbitPoint {
            orbit: OrbitId::new(orbit),
            point,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// The lower orbit is a sink or the upper orbit is a source.
    NodeBasin,
    /// Isolated transverse intersection of a one-dimensional and a
    /// two-dimensional manifold of two saddles of the same index.
    HeteroclinicPoint,
    /// Intersection curve of the two-dimensional unstable manifold of an
    /// index-2 saddle with the two-dimensional stable manifold of an index-1 saddle.
    HeteroclinicCurve,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::NodeBasin => "node_basin",
            EdgeKind::HeteroclinicPoint => "heteroclinic_point",
            EdgeKind::HeteroclinicCurve => "heteroclinic_curve",
        }
    }
}

/// `W^u(upper)` meets `W^s(lower)`, so `lower` precedes `upper` in the Smale order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionEdge {
    pub upper: OrbitId,
    pub lower: OrbitId,
    pub kind: EdgeKind,
}

impl IntersectionEdge {
    pub fn new(upper: impl Into<String>, lower: impl Into<String>, kind: EdgeKind) -> Self {
        IntersectionEdge {
            upper: OrbitId::new(upper),
            lower: OrbitId::new(lower),
            kind,
        }
    }
}

/// Limit points of the two one-dimensional separatrices of one saddle point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatrixRecord {
    pub saddle_point: OrbitPoint,
    pub branch_targets: [Vec<OrbitPoint>; 2],
}

impl SeparatrixRecord {
    pub fn new(saddle_point: OrbitPoint, first: Vec<OrbitPoint>, second: Vec<OrbitPoint>) -> Self {
        SeparatrixRecord {
            saddle_point,
            branch_targets: [first, second],
        }
    }

    pub fn targets(&self) -> impl Iterator<Item = &OrbitPoint> {
        self.branch_targets.iter().flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingAnnotation {
    pub saddle_orbit: OrbitId,
    pub tight: bool,
    pub strongly_tight: bool,
    /// Genus of a known handle trapping neighborhood.
    pub handle_genus_witness: u32,
}

impl EmbeddingAnnotation {
    pub fn new(saddle_orbit: impl Into<String>, tight: bool, strongly_tight: bool, witness: u32) -> Self {
        EmbeddingAnnotation {
            saddle_orbit: OrbitId::new(saddle_orbit),
            tight,
            strongly_tight,
            handle_genus_witness: witness,
        }
    }
}

/// Attractor side (index-1 saddles, sinks) or repeller side (index-2 saddles, sources).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Attractor,
    Repeller,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Attractor => "attractor",
            Side::Repeller => "repeller",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub name: String,
    pub orbits: Vec<Orbit>,
    pub edges: Vec<IntersectionEdge>,
    /// Records for index-1 saddle points.
    pub separatrices: Vec<SeparatrixRecord>,
    /// Records for index-2 saddle points (stable separatrices, i.e. unstable for the inverse map).
    pub mirror_separatrices: Vec<SeparatrixRecord>,
    pub annotations: Vec<EmbeddingAnnotation>,
    pub mirror_annotations: Vec<EmbeddingAnnotation>,
    pub no_heteroclinic_curves: bool,
}

impl Diagram {
    pub fn orbit(&self, id: &OrbitId) -> Option<&Orbit> {
        self.orbits.iter().find(|o| &o.id == id)
    }

    /// Orbit id to its position in `orbits`. Later duplicates win.
    pub fn orbit_index(&self) -> HashMap<&OrbitId, usize> {
        self.orbits.iter().enumerate().map(|(i, o)| (&o.id, i)).collect()
    }

    /// Number of periodic points of each Morse index.
    pub fn point_counts(&self) -> [u64; 4] {
        let mut counts = [0u64; 4];
        for o in &self.orbits {
            if let Some(c) = counts.get_mut(o.index as usize) {
                *c += o.period as u64;
            }
        }
        counts
    }

    /// Number of periodic orbits of each Morse index.
    pub fn orbit_counts(&self) -> [usize; 4] {
        let mut counts = [0usize; 4];
        for o in &self.orbits {
            if let Some(c) = counts.get_mut(o.index as usize) {
                *c += 1;
            }
        }
        counts
    }

    /// Both sides of `1 + |Ω1| - |Ω0| = 1 + |Ω2| - |Ω3|`, counted in points.
    pub fn duality_sides(&self) -> (i64, i64) {
        let [p0, p1, p2, p3] = self.point_counts().map(|c| c as i64);
        (1 + p1 - p0, 1 + p2 - p3)
    }

    pub fn has_heteroclinic_curves(&self) -> bool {
        self.edges.iter().any(|e| e.kind == EdgeKind::HeteroclinicCurve)
    }

    pub fn separatrices_for(&self, side: Side) -> &[SeparatrixRecord] {
        match side {
            Side::Attractor => &self.separatrices,
            Side::Repeller => &self.mirror_separatrices,
        }
    }

    pub fn annotations_for(&self, side: Side) -> &[EmbeddingAnnotation] {
        match side {
            Side::Attractor => &self.annotations,
            Side::Repeller => &self.mirror_annotations,
        }
    }

    pub fn annotation(&self, side: Side, saddle: &OrbitId) -> Option<&EmbeddingAnnotation> {
        self.annotations_for(side).iter().find(|a| &a.saddle_orbit == saddle)
    }

    /// The diagram of the inverse map: indices `q -> 3 - q`, every edge
    /// reversed, attractor and repeller data exchanged. An involution.
    pub fn inverse(&self) -> Diagram {
        Diagram {
            name: self.name.clone(),
            orbits: self
                .orbits
                .iter()
                .map(|o| Orbit {
                    index: 3u8.saturating_sub(o.index),
                    ..o.clone()
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| IntersectionEdge {
                    upper: e.lower.clone(),
                    lower: e.upper.clone(),
                    kind: e.kind,
                })
                .collect(),
            separatrices: self.mirror_separatrices.clone(),
            mirror_separatrices: self.separatrices.clone(),
            annotations: self.mirror_annotations.clone(),
            mirror_annotations: self.annotations.clone(),
            no_heteroclinic_curves: self.no_heteroclinic_curves,
        }
    }
}
