//! Ambient manifold of a diagram without heteroclinic curves.
//!
//! With `r` saddle points and `l` node points, `m = (r - l + 2) / 2` must be a
//! non-negative integer; the manifold is S³ when `m = 0` and the connected sum
//! of `m` copies of S²×S¹ otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ClassRepr", try_from = "ClassRepr")]
pub enum ManifoldClass {
    Sphere3,
    ConnectedSumS2xS1(u64),
}

/// Wire form: `{"class": "Sphere3", "m": 0}`.
#[derive(Serialize, Deserialize)]
struct ClassRepr {
    class: String,
    m: u64,
}

impl From<ManifoldClass> for ClassRepr {
    fn from(c: ManifoldClass) -> Self {
        let class = match c {
            ManifoldClass::Sphere3 => "Sphere3",
            ManifoldClass::ConnectedSumS2xS1(_) => "ConnectedSumS2xS1",
        };
        ClassRepr {
            class: class.into(),
            m: c.m(),
        }
    }
}

impl TryFrom<ClassRepr> for ManifoldClass {
    type Error = String;

    fn try_from(r: ClassRepr) -> Result<Self, Self::Error> {
        match (r.class.as_str(), r.m) {
            ("Sphere3", 0) => Ok(ManifoldClass::Sphere3),
            ("ConnectedSumS2xS1", m) if m > 0 => Ok(ManifoldClass::ConnectedSumS2xS1(m)),
            (class, m) => Err(format!("inconsistent manifold class {class} with m = {m}")),
        }
    }
}

impl ManifoldClass {
    pub fn from_m(m: u64) -> Self {
        if m == 0 {
            ManifoldClass::Sphere3
        } else {
            ManifoldClass::ConnectedSumS2xS1(m)
        }
    }

    pub fn m(self) -> u64 {
        match self {
            ManifoldClass::Sphere3 => 0,
            ManifoldClass::ConnectedSumS2xS1(m) => m,
        }
    }

    pub fn is_sphere(self) -> bool {
        self == ManifoldClass::Sphere3
    }
}

impl fmt::Display for ManifoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldClass::Sphere3 => write!(f, "S^3 (m = 0)"),
            ManifoldClass::ConnectedSumS2xS1(1) => write!(f, "S^2 x S^1 (m = 1)"),
            ManifoldClass::ConnectedSumS2xS1(m) => write!(f, "#{m} S^2 x S^1 (m = {m})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("diagram has heteroclinic curves; no classification applies")]
    NotApplicable,
    #[error("r = {saddles}, l = {nodes} give m = (r - l + 2)/2 that is not a non-negative integer")]
    Inconsistent { saddles: u64, nodes: u64 },
}

pub fn classify(diagram: &Diagram) -> Result<ManifoldClass, ClassifyError> {
    if !diagram.no_heteroclinic_curves || diagram.has_heteroclinic_curves() {
        return Err(ClassifyError::NotApplicable);
    }
    let [p0, p1, p2, p3] = diagram.point_counts();
    let (saddles, nodes) = (p1 + p2, p0 + p3);
    let twice_m = (saddles + 2)
        .checked_sub(nodes)
        .ok_or(ClassifyError::Inconsistent { saddles, nodes })?;
    if twice_m % 2 != 0 {
        return Err(ClassifyError::Inconsistent { saddles, nodes });
    }
    Ok(ManifoldClass::from_m(twice_m / 2))
}
