//! Built-in diagrams.

use crate::diagram::{Diagram, EdgeKind, EmbeddingAnnotation, IntersectionEdge, Orbit, OrbitPoint, SeparatrixRecord};

/// Names accepted by [`by_name`]; `chain-N` takes any non-negative `N`.
pub const BUILTIN_NAMES: [&str; 5] = ["north-south", "pixton", "pixton-strong", "s2xs1-basic", "chain-N"];

fn basin(upper: &str, lower: &str) -> IntersectionEdge {
    IntersectionEdge::new(upper, lower, EdgeKind::NodeBasin)
}

fn fixed_record(saddle: &str, first: &str, second: &str) -> SeparatrixRecord {
    SeparatrixRecord::new(
        OrbitPoint::new(saddle, 0),
        vec![OrbitPoint::new(first, 0)],
        vec![OrbitPoint::new(second, 0)],
    )
}

/// One sink, one source.
pub fn north_south() -> Diagram {
    Diagram {
        name: "north-south".into(),
        orbits: vec![Orbit::new("omega", 1, 0), Orbit::new("alpha", 1, 3)],
        edges: vec![basin("alpha", "omega")],
        separatrices: vec![],
        mirror_separatrices: vec![],
        annotations: vec![],
        mirror_annotations: vec![],
        no_heteroclinic_curves: true,
    }
}

/// Two sinks joined by the separatrices of one index-1 saddle, one source.
/// The attractor `A_3` is not tightly embedded.
pub fn pixton() -> Diagram {
    Diagram {
        name: "pixton".into(),
        orbits: vec![
            Orbit::new("w1", 1, 0),
            Orbit::new("w2", 1, 0),
            Orbit::new("sigma", 1, 1),
            Orbit::new("alpha", 1, 3),
        ],
        edges: vec![basin("sigma", "w1"), basin("sigma", "w2"), basin("alpha", "sigma")],
        separatrices: vec![fixed_record("sigma", "w1", "w2")],
        mirror_separatrices: vec![],
        annotations: vec![EmbeddingAnnotation::new("sigma", false, false, 0)],
        mirror_annotations: vec![],
        no_heteroclinic_curves: true,
    }
}

/// The Pixton roster with a strongly tight attractor, for certificate demos.
pub fn pixton_strong() -> Diagram {
    Diagram {
        name: "pixton-strong".into(),
        annotations: vec![EmbeddingAnnotation::new("sigma", true, true, 0)],
        ..pixton()
    }
}

/// Sink, index-1 saddle with both separatrices on the sink, index-2 saddle
/// with both stable separatrices on the source, source. Lives on S²×S¹.
pub fn s2xs1_basic() -> Diagram {
    Diagram {
        name: "s2xs1-basic".into(),
        orbits: vec![
            Orbit::new("w", 1, 0),
            Orbit::new("s", 1, 1),
            Orbit::new("t", 1, 2),
            Orbit::new("a", 1, 3),
        ],
        edges: vec![basin("s", "w"), basin("t", "w"), basin("a", "s"), basin("a", "t")],
        separatrices: vec![fixed_record("s", "w", "w")],
        mirror_separatrices: vec![fixed_record("t", "a", "a")],
        annotations: vec![EmbeddingAnnotation::new("s", true, false, 1)],
        mirror_annotations: vec![EmbeddingAnnotation::new("t", true, false, 1)],
        no_heteroclinic_curves: true,
    }
}

/// `w ≺ s1 ≺ s2 ≺ a` given only the adjacent intersections; `s2 -> s1` is a
/// heteroclinic curve.
pub fn four_orbit_chain() -> Diagram {
    Diagram {
        name: "four-orbit-chain".into(),
        orbits: vec![
            Orbit::new("w", 1, 0),
            Orbit::new("s1", 1, 1),
            Orbit::new("s2", 1, 2),
            Orbit::new("a", 1, 3),
        ],
        edges: vec![
            basin("s1", "w"),
            IntersectionEdge::new("s2", "s1", EdgeKind::HeteroclinicCurve),
            basin("a", "s2"),
        ],
        separatrices: vec![fixed_record("s1", "w", "w")],
        mirror_separatrices: vec![fixed_record("s2", "a", "a")],
        annotations: vec![EmbeddingAnnotation::new("s1", true, false, 1)],
        mirror_annotations: vec![EmbeddingAnnotation::new("s2", true, false, 1)],
        no_heteroclinic_curves: false,
    }
}

/// Gradient-like diagram on S³: sinks `w0..wn` in a row, saddle `sk` joining
/// `w(k-1)` and `wk`, one source above every saddle. All attractors are
/// tight with genus 0.
pub fn chain(n: usize) -> Diagram {
    let mut orbits: Vec<Orbit> = (0..=n).map(|k| Orbit::new(format!("w{k}"), 1, 0)).collect();
    orbits.extend((1..=n).map(|k| Orbit::new(format!("s{k}"), 1, 1)));
    orbits.push(Orbit::new("a", 1, 3));

    let mut edges = Vec::new();
    let mut separatrices = Vec::new();
    let mut annotations = Vec::new();
    for k in 1..=n {
        let (s, left, right) = (format!("s{k}"), format!("w{}", k - 1), format!("w{k}"));
        edges.push(basin(&s, &left));
        edges.push(basin(&s, &right));
        edges.push(basin("a", &s));
        separatrices.push(fixed_record(&s, &left, &right));
        annotations.push(EmbeddingAnnotation::new(s.as_str(), true, false, 0));
    }
    if n == 0 {
        edges.push(basin("a", "w0"));
    }
    Diagram {
        name: format!("chain-{n}"),
        orbits,
        edges,
        separatrices,
        mirror_separatrices: vec![],
        annotations,
        mirror_annotations: vec![],
        no_heteroclinic_curves: true,
    }
}

pub fn by_name(name: &str) -> Option<Diagram> {
    match name {
        "north-south" => Some(north_south()),
        "pixton" => Some(pixton()),
        "pixton-strong" => Some(pixton_strong()),
        "s2xs1-basic" => Some(s2xs1_basic()),
        _ => name.strip_prefix("chain-")?.parse().ok().map(chain),
    }
}

/// Every fixed built-in plus a few chains.
pub fn builtin_all() -> Vec<Diagram> {
    vec![
        north_south(),
        pixton(),
        pixton_strong(),
        s2xs1_basic(),
        four_orbit_chain(),
        chain(0),
        chain(1),
        chain(4),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("pixton").unwrap().orbits.len(), 4);
        assert_eq!(by_name("chain-3").unwrap().orbits.len(), 8);
        assert!(by_name("chain-x").is_none());
        assert!(by_name("torus").is_none());
    }
}
