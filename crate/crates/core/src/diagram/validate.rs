use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Diagram, EdgeKind, OrbitId, OrbitPoint, Side};
use crate::filtration::{annotation_consistency, build_filtration};
use crate::ordering::{canonical_numbering, compute_order, OrderError};

/// One violated invariant, with the ids of the offending elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    NoOrbits,
    EmptyOrbitId,
    DuplicateOrbitId {
        orbit: OrbitId,
    },
    ZeroPeriod {
        orbit: OrbitId,
    },
    IndexOutOfRange {
        orbit: OrbitId,
        index: u8,
    },
    UnknownOrbit {
        context: String,
        orbit: OrbitId,
    },
    SelfIntersection {
        orbit: OrbitId,
    },
    /// Transversality forces `index(lower) <= index(upper)`, with equality only between saddles.
    IndexOrder {
        upper: OrbitId,
        lower: OrbitId,
    },
    EdgeKindMismatch {
        upper: OrbitId,
        lower: OrbitId,
        kind: EdgeKind,
    },
    CurveFlagMismatch {
        declared_curve_free: bool,
    },
    DualityIdentity {
        lhs: i64,
        rhs: i64,
    },
    MissingNodeType {
        index: u8,
    },
    NothingAbove {
        orbit: OrbitId,
    },
    NothingBelow {
        orbit: OrbitId,
    },

    SeparatrixNotSaddle {
        side: Side,
        orbit: OrbitId,
    },
    PointOutOfRange {
        side: Side,
        orbit: OrbitId,
        point: u32,
    },
    DuplicateSeparatrix {
        side: Side,
        orbit: OrbitId,
        point: u32,
    },
    MissingSeparatrix {
        side: Side,
        orbit: OrbitId,
        point: u32,
    },
    EmptyBranch {
        side: Side,
        orbit: OrbitId,
        point: u32,
        branch: usize,
    },
    TargetIndex {
        side: Side,
        saddle: OrbitId,
        target: OrbitId,
    },
    TargetWithoutEdge {
        side: Side,
        saddle: OrbitId,
        target: OrbitId,
    },
    Equivariance {
        side: Side,
        orbit: OrbitId,
        point: u32,
    },

    AnnotationNotSaddle {
        side: Side,
        orbit: OrbitId,
    },
    DuplicateAnnotation {
        side: Side,
        orbit: OrbitId,
    },
    MissingAnnotation {
        side: Side,
        orbit: OrbitId,
    },
    StronglyTightNotTight {
        side: Side,
        orbit: OrbitId,
    },
    WitnessBelowGenus {
        side: Side,
        orbit: OrbitId,
        witness: u32,
        genus: i64,
    },
    TightGenusMismatch {
        side: Side,
        orbit: OrbitId,
        witness: u32,
        genus: i64,
    },

    CyclicRelation {
        cycle: Vec<OrbitId>,
    },
    FiltrationFailed {
        message: String,
    },
    /// The last attractor (or repeller) must be connected.
    DisconnectedAttractor {
        side: Side,
        components: u64,
    },
    SplittingGenusMismatch {
        attractor: i64,
        repeller: i64,
    },

    LevelValue {
        orbit: OrbitId,
        expected: usize,
        found: usize,
    },
    MorseIndex {
        orbit: OrbitId,
        expected: u8,
        found: u8,
    },
    SplittingBand {
        expected: (u64, i64),
        found: (u64, i64),
    },
    ScheduleOrder {
        lower: OrbitId,
        upper: OrbitId,
    },
    ScheduleTarget {
        side: Side,
        saddle: OrbitId,
        target: OrbitId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            NoOrbits => write!(f, "diagram has no orbits"),
            EmptyOrbitId => write!(f, "orbit with empty id"),
            DuplicateOrbitId { orbit } => write!(f, "duplicate orbit id `{orbit}`"),
            ZeroPeriod { orbit } => write!(f, "orbit `{orbit}` has period 0"),
            IndexOutOfRange { orbit, index } => write!(f, "orbit `{orbit}` has index {index} outside 0..=3"),
            UnknownOrbit { context, orbit } => write!(f, "{context} refers to unknown orbit `{orbit}`"),
            SelfIntersection { orbit } => write!(f, "edge from `{orbit}` to itself"),
            IndexOrder { upper, lower } => {
                write!(
                    f,
                    "edge `{upper}` -> `{lower}` violates the transversality index constraint"
                )
            }
            EdgeKindMismatch { upper, lower, kind } => {
                write!(f, "edge `{upper}` -> `{lower}` cannot have kind {}", kind.as_str())
            }
            CurveFlagMismatch { declared_curve_free } => write!(
                f,
                "no_heteroclinic_curves is {declared_curve_free} but the edge list says otherwise"
            ),
            DualityIdentity { lhs, rhs } => {
                write!(f, "1 + |Ω1| - |Ω0| = {lhs} differs from 1 + |Ω2| - |Ω3| = {rhs}")
            }
            MissingNodeType { index } => write!(f, "no orbit of index {index}"),
            NothingAbove { orbit } => write!(f, "orbit `{orbit}` is below no other orbit"),
            NothingBelow { orbit } => write!(f, "orbit `{orbit}` is above no other orbit"),
            SeparatrixNotSaddle { side, orbit } => {
                write!(
                    f,
                    "{side} separatrix record for `{orbit}` which is not a saddle of that side"
                )
            }
            PointOutOfRange { side, orbit, point } => {
                write!(
                    f,
                    "{side} separatrix data uses point {point} of `{orbit}` beyond its period"
                )
            }
            DuplicateSeparatrix { side, orbit, point } => {
                write!(f, "duplicate {side} separatrix record for `{orbit}`:{point}")
            }
            MissingSeparatrix { side, orbit, point } => {
                write!(f, "missing {side} separatrix record for `{orbit}`:{point}")
            }
            EmptyBranch {
                side,
                orbit,
                point,
                branch,
            } => {
                write!(f, "{side} branch {branch} of `{orbit}`:{point} has no limit points")
            }
            TargetIndex { side, saddle, target } => {
                write!(
                    f,
                    "{side} separatrix of `{saddle}` ends on `{target}` of inadmissible index"
                )
            }
            TargetWithoutEdge { side, saddle, target } => {
                write!(
                    f,
                    "{side} separatrix of `{saddle}` ends on `{target}` without an intersection edge"
                )
            }
            Equivariance { side, orbit, point } => {
                write!(
                    f,
                    "{side} separatrix data of `{orbit}` is not equivariant at point {point}"
                )
            }
            AnnotationNotSaddle { side, orbit } => {
                write!(f, "{side} annotation on `{orbit}` which is not a saddle of that side")
            }
            DuplicateAnnotation { side, orbit } => write!(f, "duplicate {side} annotation for `{orbit}`"),
            MissingAnnotation { side, orbit } => write!(f, "missing {side} annotation for `{orbit}`"),
            StronglyTightNotTight { side, orbit } => {
                write!(f, "{side} annotation of `{orbit}` is strongly tight but not tight")
            }
            WitnessBelowGenus {
                side,
                orbit,
                witness,
                genus,
            } => {
                write!(f, "{side} `{orbit}`: handle genus witness {witness} below g = {genus}")
            }
            TightGenusMismatch {
                side,
                orbit,
                witness,
                genus,
            } => {
                write!(
                    f,
                    "{side} `{orbit}`: tight but witness {witness} differs from g = {genus}"
                )
            }
            CyclicRelation { cycle } => {
                let ids: Vec<&str> = cycle.iter().map(OrbitId::as_str).collect();
                write!(f, "intersection relation has a cycle through {}", ids.join(", "))
            }
            FiltrationFailed { message } => write!(f, "filtration failed: {message}"),
            DisconnectedAttractor { side, components } => {
                write!(f, "last {side} has {components} components, expected 1")
            }
            SplittingGenusMismatch { attractor, repeller } => {
                write!(f, "g_k1 = {attractor} differs from mirror genus {repeller}")
            }
            LevelValue { orbit, expected, found } => {
                write!(f, "`{orbit}` sits at level {found}, expected {expected}")
            }
            MorseIndex { orbit, expected, found } => {
                write!(f, "`{orbit}` has Morse index {found}, expected {expected}")
            }
            SplittingBand { expected, found } => {
                write!(f, "splitting band (c, g) = {found:?} does not match {expected:?}")
            }
            ScheduleOrder { lower, upper } => {
                write!(f, "`{lower}` precedes `{upper}` but is not at a lower level")
            }
            ScheduleTarget { side, saddle, target } => {
                write!(
                    f,
                    "{side} separatrix of `{saddle}` ends on `{target}` at a level on the wrong side"
                )
            }
        }
    }
}

/// Violations found by a check. Empty means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(violations: Vec<Violation>) -> Self {
        ValidationReport { violations }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn into_violations(self) -> Vec<Violation> {
        self.violations
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

/// Checks every structural and combinatorial invariant of a diagram.
///
/// Deeper checks (order, filtration, annotations) only run when the layers
/// they depend on are sound, so one broken reference does not cascade.
pub fn validate(diagram: &Diagram) -> ValidationReport {
    let mut v = Vec::new();
    let structural_ok = check_orbits_and_edges(diagram, &mut v);

    let (lhs, rhs) = diagram.duality_sides();
    if lhs != rhs {
        v.push(Violation::DualityIdentity { lhs, rhs });
    }

    let mut separatrices_ok = structural_ok;
    if structural_ok {
        separatrices_ok &= check_separatrices(diagram, Side::Attractor, &mut v);
        separatrices_ok &= check_separatrices(&diagram.inverse(), Side::Repeller, &mut v);
        check_annotation_roster(diagram, Side::Attractor, &mut v);
        check_annotation_roster(&diagram.inverse(), Side::Repeller, &mut v);
    }
    if !structural_ok {
        return ValidationReport::new(v);
    }

    let order = match compute_order(diagram) {
        Ok(order) => order,
        Err(OrderError::CyclicRelation(cycle)) => {
            v.push(Violation::CyclicRelation { cycle });
            return ValidationReport::new(v);
        }
        Err(OrderError::UnknownOrbit(orbit)) => {
            v.push(Violation::UnknownOrbit {
                context: "edge".into(),
                orbit,
            });
            return ValidationReport::new(v);
        }
    };
    if !separatrices_ok {
        return ValidationReport::new(v);
    }

    let numbering = canonical_numbering(diagram, &order);
    match build_filtration(diagram, &numbering) {
        Ok(f) => {
            for (side, rows) in [(Side::Attractor, &f.attractors), (Side::Repeller, &f.repellers)] {
                if let Some(last) = rows.last() {
                    if last.c != 1 {
                        v.push(Violation::DisconnectedAttractor {
                            side,
                            components: last.c,
                        });
                    }
                }
            }
            if let (Some(a), Some(r)) = (f.splitting_genus(), f.mirror_splitting_genus()) {
                if a != r {
                    v.push(Violation::SplittingGenusMismatch {
                        attractor: a,
                        repeller: r,
                    });
                }
            }
            // missing annotations were already reported by the roster check
            v.extend(
                annotation_consistency(diagram, &f)
                    .into_violations()
                    .into_iter()
                    .filter(|x| !matches!(x, Violation::MissingAnnotation { .. })),
            );
        }
        Err(e) => v.push(Violation::FiltrationFailed { message: e.to_string() }),
    }
    ValidationReport::new(v)
}

/// Orbit roster, edge references, edge kinds, node presence. Returns false
/// when references are broken badly enough that deeper checks are meaningless.
fn check_orbits_and_edges(d: &Diagram, v: &mut Vec<Violation>) -> bool {
    let mut ok = true;
    if d.orbits.is_empty() {
        v.push(Violation::NoOrbits);
        return false;
    }
    let mut seen = HashSet::new();
    for o in &d.orbits {
        if o.id.as_str().is_empty() {
            v.push(Violation::EmptyOrbitId);
            ok = false;
        }
        if !seen.insert(&o.id) {
            v.push(Violation::DuplicateOrbitId { orbit: o.id.clone() });
            ok = false;
        }
        if o.period == 0 {
            v.push(Violation::ZeroPeriod { orbit: o.id.clone() });
            ok = false;
        }
        if o.index > 3 {
            v.push(Violation::IndexOutOfRange {
                orbit: o.id.clone(),
                index: o.index,
            });
            ok = false;
        }
    }
    for index in [0, 3] {
        if !d.orbits.iter().any(|o| o.index == index) {
            v.push(Violation::MissingNodeType { index });
        }
    }

    let by_id: HashMap<&OrbitId, u8> = d.orbits.iter().map(|o| (&o.id, o.index)).collect();
    let mut has_above: HashSet<&OrbitId> = HashSet::new();
    let mut has_below: HashSet<&OrbitId> = HashSet::new();
    for e in &d.edges {
        let (Some(&qu), Some(&ql)) = (by_id.get(&e.upper), by_id.get(&e.lower)) else {
            for id in [&e.upper, &e.lower] {
                if !by_id.contains_key(id) {
                    v.push(Violation::UnknownOrbit {
                        context: "edge".into(),
                        orbit: id.clone(),
                    });
                }
            }
            ok = false;
            continue;
        };
        if e.upper == e.lower {
            v.push(Violation::SelfIntersection { orbit: e.upper.clone() });
            ok = false;
            continue;
        }
        has_above.insert(&e.lower);
        has_below.insert(&e.upper);
        let saddles = (1..=2).contains(&qu) && (1..=2).contains(&ql);
        if ql > qu || (ql == qu && !saddles) {
            v.push(Violation::IndexOrder {
                upper: e.upper.clone(),
                lower: e.lower.clone(),
            });
            continue;
        }
        let kind_ok = match e.kind {
            EdgeKind::NodeBasin => ql == 0 || qu == 3,
            EdgeKind::HeteroclinicPoint => saddles && qu == ql,
            EdgeKind::HeteroclinicCurve => qu == 2 && ql == 1,
        };
        if !kind_ok {
            v.push(Violation::EdgeKindMismatch {
                upper: e.upper.clone(),
                lower: e.lower.clone(),
                kind: e.kind,
            });
        }
    }
    if d.no_heteroclinic_curves == d.has_heteroclinic_curves() {
        v.push(Violation::CurveFlagMismatch {
            declared_curve_free: d.no_heteroclinic_curves,
        });
    }
    for o in &d.orbits {
        if !o.is_source() && !has_above.contains(&o.id) {
            v.push(Violation::NothingAbove { orbit: o.id.clone() });
        }
        if !o.is_sink() && !has_below.contains(&o.id) {
            v.push(Violation::NothingBelow { orbit: o.id.clone() });
        }
    }
    ok
}

/// Attractor-side separatrix invariants of `d`. The repeller side is checked
/// by calling this on the inverse diagram.
fn check_separatrices(d: &Diagram, side: Side, v: &mut Vec<Violation>) -> bool {
    let start = v.len();
    let orbits: HashMap<&OrbitId, (u32, u8, bool)> = d
        .orbits
        .iter()
        .map(|o| (&o.id, (o.period, o.index, o.separatrix_swap)))
        .collect();
    let below: HashSet<(&OrbitId, &OrbitId)> = d.edges.iter().map(|e| (&e.upper, &e.lower)).collect();

    let in_range = |p: &OrbitPoint| orbits.get(&p.orbit).is_some_and(|&(period, _, _)| p.point < period);
    let mut records: HashMap<(&OrbitId, u32), [BTreeSet<&OrbitPoint>; 2]> = HashMap::new();
    for rec in &d.separatrices {
        let sp = &rec.saddle_point;
        let Some(&(period, index, _)) = orbits.get(&sp.orbit) else {
            v.push(Violation::UnknownOrbit {
                context: format!("{side} separatrix record"),
                orbit: sp.orbit.clone(),
            });
            continue;
        };
        if index != 1 {
            v.push(Violation::SeparatrixNotSaddle {
                side,
                orbit: sp.orbit.clone(),
            });
            continue;
        }
        if sp.point >= period {
            v.push(Violation::PointOutOfRange {
                side,
                orbit: sp.orbit.clone(),
                point: sp.point,
            });
            continue;
        }
        for (branch, targets) in rec.branch_targets.iter().enumerate() {
            if targets.is_empty() {
                v.push(Violation::EmptyBranch {
                    side,
                    orbit: sp.orbit.clone(),
                    point: sp.point,
                    branch,
                });
            }
            for t in targets {
                let Some(&(_, tq, _)) = orbits.get(&t.orbit) else {
                    v.push(Violation::UnknownOrbit {
                        context: format!("{side} separatrix target"),
                        orbit: t.orbit.clone(),
                    });
                    continue;
                };
                if !in_range(t) {
                    v.push(Violation::PointOutOfRange {
                        side,
                        orbit: t.orbit.clone(),
                        point: t.point,
                    });
                }
                let same_index_ok = tq == 1 && t.orbit != sp.orbit;
                if !(tq == 0 || same_index_ok) {
                    v.push(Violation::TargetIndex {
                        side,
                        saddle: sp.orbit.clone(),
                        target: t.orbit.clone(),
                    });
                } else if !below.contains(&(&sp.orbit, &t.orbit)) {
                    v.push(Violation::TargetWithoutEdge {
                        side,
                        saddle: sp.orbit.clone(),
                        target: t.orbit.clone(),
                    });
                }
            }
        }
        let sets = [
            rec.branch_targets[0].iter().collect(),
            rec.branch_targets[1].iter().collect(),
        ];
        if records.insert((&sp.orbit, sp.point), sets).is_some() {
            v.push(Violation::DuplicateSeparatrix {
                side,
                orbit: sp.orbit.clone(),
                point: sp.point,
            });
        }
    }

    let shift = |p: &OrbitPoint| -> OrbitPoint {
        let period = orbits.get(&p.orbit).map_or(1, |o| o.0.max(1));
        OrbitPoint {
            orbit: p.orbit.clone(),
            point: (p.point + 1) % period,
        }
    };
    for o in d.orbits.iter().filter(|o| o.index == 1) {
        let missing: Vec<u32> = (0..o.period).filter(|p| !records.contains_key(&(&o.id, *p))).collect();
        for &point in &missing {
            v.push(Violation::MissingSeparatrix {
                side,
                orbit: o.id.clone(),
                point,
            });
        }
        if !missing.is_empty() {
            continue;
        }
        for j in 0..o.period {
            let next = (j + 1) % o.period;
            let flip = usize::from(j + 1 == o.period && o.separatrix_swap);
            let here = &records[&(&o.id, j)];
            let there = &records[&(&o.id, next)];
            let consistent = (0..2).all(|b| {
                let shifted: BTreeSet<OrbitPoint> = here[b].iter().map(|p| shift(p)).collect();
                let expected: BTreeSet<OrbitPoint> = there[b ^ flip].iter().map(|p| (*p).clone()).collect();
                shifted == expected
            });
            if !consistent {
                v.push(Violation::Equivariance {
                    side,
                    orbit: o.id.clone(),
                    point: j,
                });
            }
        }
    }
    v.len() == start
}

fn check_annotation_roster(d: &Diagram, side: Side, v: &mut Vec<Violation>) {
    let index: HashMap<&OrbitId, u8> = d.orbits.iter().map(|o| (&o.id, o.index)).collect();
    let mut seen = HashSet::new();
    for a in &d.annotations {
        if index.get(&a.saddle_orbit) != Some(&1) {
            v.push(Violation::AnnotationNotSaddle {
                side,
                orbit: a.saddle_orbit.clone(),
            });
        }
        if !seen.insert(&a.saddle_orbit) {
            v.push(Violation::DuplicateAnnotation {
                side,
                orbit: a.saddle_orbit.clone(),
            });
        }
        if a.strongly_tight && !a.tight {
            v.push(Violation::StronglyTightNotTight {
                side,
                orbit: a.saddle_orbit.clone(),
            });
        }
    }
    for o in d.orbits.iter().filter(|o| o.index == 1) {
        if !seen.contains(&o.id) {
            v.push(Violation::MissingAnnotation {
                side,
                orbit: o.id.clone(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{EmbeddingAnnotation, IntersectionEdge, Orbit};
    use crate::examples;

    #[test]
    fn builtins_are_valid() {
        for d in examples::builtin_all() {
            let report = validate(&d);
            assert!(report.is_empty(), "{}: {:?}", d.name, report);
        }
    }

    #[test]
    fn pixton_without_a_sink_breaks_duality() {
        let mut d = examples::pixton();
        d.orbits.retain(|o| o.id.as_str() != "w2");
        let report = validate(&d);
        assert!(report
            .violations()
            .contains(&Violation::DualityIdentity { lhs: 1, rhs: 0 }));
    }

    #[test]
    fn validate_is_idempotent() {
        let mut d = examples::pixton();
        d.orbits.push(Orbit::new("extra", 2, 0));
        assert_eq!(validate(&d), validate(&d));
    }

    #[test]
    fn heteroclinic_point_requires_equal_saddle_indices() {
        let mut d = examples::s2xs1_basic();
        d.edges
            .push(IntersectionEdge::new("t", "s", EdgeKind::HeteroclinicPoint));
        let report = validate(&d);
        assert!(report.violations().iter().any(|x| matches!(
            x,
            Violation::EdgeKindMismatch {
                kind: EdgeKind::HeteroclinicPoint,
                ..
            }
        )));
    }

    #[test]
    fn curve_flag_must_match() {
        let mut d = examples::s2xs1_basic();
        d.edges
            .push(IntersectionEdge::new("t", "s", EdgeKind::HeteroclinicCurve));
        let report = validate(&d);
        assert!(report.violations().contains(&Violation::CurveFlagMismatch {
            declared_curve_free: true
        }));
        d.no_heteroclinic_curves = false;
        assert!(validate(&d).is_empty(), "{:?}", validate(&d));
    }

    #[test]
    fn index_order_enforced() {
        let mut d = examples::north_south();
        d.edges
            .push(IntersectionEdge::new("omega", "alpha", EdgeKind::NodeBasin));
        assert!(validate(&d).violations().contains(&Violation::IndexOrder {
            upper: "omega".into(),
            lower: "alpha".into()
        }));
    }

    #[test]
    fn equivariance_detected() {
        let mut d = examples::s2xs1_basic();
        // period-2 saddle whose two points send branch 0 to different-looking targets
        d.orbits.push(Orbit::new("w2", 2, 0));
        d.orbits.push(Orbit::new("s2", 2, 1));
        d.edges.push(IntersectionEdge::new("s2", "w2", EdgeKind::NodeBasin));
        d.edges.push(IntersectionEdge::new("s2", "w", EdgeKind::NodeBasin));
        d.edges.push(IntersectionEdge::new("a", "s2", EdgeKind::NodeBasin));
        d.separatrices.push(crate::diagram::SeparatrixRecord::new(
            OrbitPoint::new("s2", 0),
            vec![OrbitPoint::new("w", 0)],
            vec![OrbitPoint::new("w2", 0)],
        ));
        d.separatrices.push(crate::diagram::SeparatrixRecord::new(
            OrbitPoint::new("s2", 1),
            vec![OrbitPoint::new("w", 0)],
            vec![OrbitPoint::new("w2", 0)],
        ));
        d.annotations.push(EmbeddingAnnotation::new("s2", false, false, 5));
        let report = validate(&d);
        assert!(report
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::Equivariance { .. })));
    }

    #[test]
    fn missing_annotation_reported_once() {
        let mut d = examples::pixton();
        d.annotations.clear();
        let missing: Vec<_> = validate(&d)
            .into_violations()
            .into_iter()
            .filter(|x| matches!(x, Violation::MissingAnnotation { .. }))
            .collect();
        assert_eq!(missing.len(), 1);
    }

    #[test]
    fn cycle_reported() {
        let mut d = examples::chain(2);
        d.edges
            .push(IntersectionEdge::new("s1", "s2", EdgeKind::HeteroclinicPoint));
        d.edges
            .push(IntersectionEdge::new("s2", "s1", EdgeKind::HeteroclinicPoint));
        let report = validate(&d);
        assert!(report
            .violations()
            .iter()
            .any(|x| matches!(x, Violation::CyclicRelation { cycle } if cycle.len() == 2)));
    }
}
