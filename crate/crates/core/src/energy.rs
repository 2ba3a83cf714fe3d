//! Existence of a dynamically ordered energy function and its symbolic
//! certificate.
//!
//! The decision only looks at the embedding annotations of the
//! one-dimensional attractors and repellers:
//!
//! * some attractor or repeller is not tightly embedded: no such function;
//! * all of them are strongly tightly embedded: a function exists;
//! * the manifold is S³, there are no heteroclinic curves and all are
//!   tightly embedded: a function exists (every genus is then 0);
//! * otherwise the answer is unknown.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classification::{classify, ManifoldClass};
use crate::diagram::{Diagram, OrbitId, Side, ValidationReport, Violation};
use crate::filtration::Filtration;
use crate::ordering::{Numbering, OrderRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Exists,
    NotExists,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    /// A function forces every one-dimensional attractor and repeller to be tight.
    ThmNecessity,
    /// Strong tightness everywhere is enough.
    ThmSufficiency,
    /// On S³ without heteroclinic curves tightness is enough.
    ThmSphereCriterion,
    Inconclusive,
}

/// The one-dimensional attractor (or repeller) `A_i` created by `orbit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub side: Side,
    pub i: usize,
    pub orbit: OrbitId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub rule: Rule,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reasons: Vec<Reason>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnergyError {
    #[error("no {side} annotation for saddle orbit `{orbit}`")]
    IncompleteAnnotations { side: Side, orbit: OrbitId },
    #[error("S³ diagram without heteroclinic curves has {side} A_{i} of genus {genus}, expected 0")]
    Inconsistent { side: Side, i: usize, genus: i64 },
    #[error("no certificate: verdict is {0:?}")]
    NotApplicable(Status),
}

/// Decides existence from annotations. `classification` may be passed when
/// already known; otherwise it is computed for curve-free diagrams.
pub fn decide(
    diagram: &Diagram,
    filtration: &Filtration,
    classification: Option<ManifoldClass>,
) -> Result<Verdict, EnergyError> {
    let mut entries = Vec::new();
    for side in [Side::Attractor, Side::Repeller] {
        for row in filtration.one_dimensional(side) {
            let orbit = row.orbit_ids.last().expect("filtration rows are non-empty").clone();
            let annotation = diagram
                .annotation(side, &orbit)
                .ok_or_else(|| EnergyError::IncompleteAnnotations {
                    side,
                    orbit: orbit.clone(),
                })?;
            entries.push((Witness { side, i: row.i, orbit }, annotation, row.g));
        }
    }

    let not_tight: Vec<Reason> = entries
        .iter()
        .filter(|(_, a, _)| !a.tight)
        .map(|(w, _, _)| Reason {
            rule: Rule::ThmNecessity,
            witness: Some(w.clone()),
        })
        .collect();
    if !not_tight.is_empty() {
        return Ok(Verdict {
            status: Status::NotExists,
            reasons: not_tight,
        });
    }

    if entries.iter().all(|(_, a, _)| a.strongly_tight) {
        return Ok(Verdict {
            status: Status::Exists,
            reasons: vec![Reason {
                rule: Rule::ThmSufficiency,
                witness: None,
            }],
        });
    }

    let curve_free = diagram.no_heteroclinic_curves && !diagram.has_heteroclinic_curves();
    let class = match classification {
        Some(c) => Some(c),
        None if curve_free => classify(diagram).ok(),
        None => None,
    };
    if curve_free && class == Some(ManifoldClass::Sphere3) {
        if let Some((w, _, g)) = entries.iter().find(|(_, _, g)| *g != 0) {
            return Err(EnergyError::Inconsistent {
                side: w.side,
                i: w.i,
                genus: *g,
            });
        }
        return Ok(Verdict {
            status: Status::Exists,
            reasons: vec![Reason {
                rule: Rule::ThmSphereCriterion,
                witness: None,
            }],
        });
    }

    Ok(Verdict {
        status: Status::Unknown,
        reasons: entries
            .iter()
            .filter(|(_, a, _)| !a.strongly_tight)
            .map(|(w, _, _)| Reason {
                rule: Rule::Inconclusive,
                witness: Some(w.clone()),
            })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalLevel {
    pub value: usize,
    pub orbit: OrbitId,
    pub morse_index: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandSource {
    /// Boundary of a trapping neighborhood of `A_i`.
    Attractor,
    /// The level between `A_k1` and the complementary repeller.
    Splitting,
    /// Boundary of a trapping neighborhood of a repeller, read through the
    /// induced numbering.
    Repeller,
}

/// The regular level between critical values `lower` and `lower + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub lower: usize,
    pub upper: usize,
    pub components: u64,
    pub genus: i64,
    pub source: BandSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyCertificate {
    pub critical_levels: Vec<CriticalLevel>,
    pub regular_bands: Vec<Band>,
    /// `k1`, the last attractor level.
    pub splitting_level: usize,
    /// `g_k1`.
    pub splitting_genus: i64,
    /// `(c, g)` of the last repeller, which must describe the same surface.
    pub mirror_splitting: (u64, i64),
}

/// Level schedule of the function the construction would produce. Fails
/// unless [`decide`] answers `Exists`.
pub fn build_certificate(
    diagram: &Diagram,
    numbering: &Numbering,
    filtration: &Filtration,
) -> Result<EnergyCertificate, EnergyError> {
    let verdict = decide(diagram, filtration, None)?;
    if verdict.status != Status::Exists {
        return Err(EnergyError::NotApplicable(verdict.status));
    }
    let index: HashMap<&OrbitId, u8> = diagram.orbits.iter().map(|o| (&o.id, o.index)).collect();
    let critical_levels = numbering
        .iter()
        .enumerate()
        .map(|(k, id)| CriticalLevel {
            value: k + 1,
            orbit: id.clone(),
            morse_index: index.get(id).copied().unwrap_or_default(),
        })
        .collect();

    let kf = numbering.len();
    let k1 = filtration.k1;
    let regular_bands = (1..kf)
        .map(|i| {
            let (row, source) = if i <= k1 {
                let source = if i == k1 {
                    BandSource::Splitting
                } else {
                    BandSource::Attractor
                };
                (&filtration.attractors[i - 1], source)
            } else {
                (&filtration.repellers[kf - i - 1], BandSource::Repeller)
            };
            Band {
                lower: i,
                upper: i + 1,
                components: row.c,
                genus: row.g,
                source,
            }
        })
        .collect();

    let last = |rows: &[crate::filtration::AttractorData]| rows.last().map_or((0, 0), |r| (r.c, r.g));
    Ok(EnergyCertificate {
        critical_levels,
        regular_bands,
        splitting_level: k1,
        splitting_genus: last(&filtration.attractors).1,
        mirror_splitting: last(&filtration.repellers),
    })
}

/// The certificate's own invariants: value `i` at `O_i`, Morse index equal
/// to the unstable dimension, and a splitting band that both sides agree on.
pub fn certificate_defects(certificate: &EnergyCertificate, diagram: &Diagram) -> ValidationReport {
    let mut v = Vec::new();
    let index: HashMap<&OrbitId, u8> = diagram.orbits.iter().map(|o| (&o.id, o.index)).collect();
    for (k, level) in certificate.critical_levels.iter().enumerate() {
        if level.value != k + 1 {
            v.push(Violation::LevelValue {
                orbit: level.orbit.clone(),
                expected: k + 1,
                found: level.value,
            });
        }
        match index.get(&level.orbit) {
            Some(&q) if q != level.morse_index => v.push(Violation::MorseIndex {
                orbit: level.orbit.clone(),
                expected: q,
                found: level.morse_index,
            }),
            Some(_) => {}
            None => v.push(Violation::UnknownOrbit {
                context: "certificate".into(),
                orbit: level.orbit.clone(),
            }),
        }
    }
    if let Some(band) = certificate
        .regular_bands
        .iter()
        .find(|b| b.lower == certificate.splitting_level)
    {
        let found = (band.components, band.genus);
        let expected = (certificate.mirror_splitting.0, certificate.splitting_genus);
        if found != expected || certificate.mirror_splitting.1 != certificate.splitting_genus {
            v.push(Violation::SplittingBand {
                expected: certificate.mirror_splitting,
                found,
            });
        }
    }
    ValidationReport::new(v)
}

/// Combinatorial descent conditions of a Lyapunov function: `O_i ≺ O_j`
/// forces a lower level for `O_i`, and every separatrix runs downhill.
pub fn check_lyapunov_schedule(
    certificate: &EnergyCertificate,
    diagram: &Diagram,
    order: &OrderRelation,
) -> ValidationReport {
    let mut v = Vec::new();
    let level: HashMap<&OrbitId, usize> = certificate
        .critical_levels
        .iter()
        .map(|l| (&l.orbit, l.value))
        .collect();
    for id in order.ids() {
        if !level.contains_key(id) {
            v.push(Violation::UnknownOrbit {
                context: "certificate".into(),
                orbit: id.clone(),
            });
        }
    }
    if !v.is_empty() {
        return ValidationReport::new(v);
    }

    for (lower, upper) in order.strict_pairs() {
        if level[&lower] >= level[&upper] {
            v.push(Violation::ScheduleOrder { lower, upper });
        }
    }
    for (side, records) in [
        (Side::Attractor, &diagram.separatrices),
        (Side::Repeller, &diagram.mirror_separatrices),
    ] {
        for rec in records {
            let saddle = &rec.saddle_point.orbit;
            let Some(&at) = level.get(saddle) else { continue };
            let mut flagged = Vec::new();
            for t in rec.targets() {
                let Some(&there) = level.get(&t.orbit) else { continue };
                let downhill = match side {
                    Side::Attractor => there < at,
                    Side::Repeller => there > at,
                };
                if !downhill && !flagged.contains(&&t.orbit) {
                    flagged.push(&t.orbit);
                    v.push(Violation::ScheduleTarget {
                        side,
                        saddle: saddle.clone(),
                        target: t.orbit.clone(),
                    });
                }
            }
        }
    }
    ValidationReport::new(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::EmbeddingAnnotation;
    use crate::examples;
    use crate::filtration::build_filtration;
    use crate::ordering::{canonical_numbering, compute_order};

    struct Built {
        diagram: Diagram,
        order: OrderRelation,
        numbering: Numbering,
        filtration: Filtration,
    }

    fn build(diagram: Diagram) -> Built {
        let order = compute_order(&diagram).unwrap();
        let numbering = canonical_numbering(&diagram, &order);
        let filtration = build_filtration(&diagram, &numbering).unwrap();
        Built {
            diagram,
            order,
            numbering,
            filtration,
        }
    }

    fn bands(cert: &EnergyCertificate) -> Vec<(usize, usize, u64, i64)> {
        cert.regular_bands
            .iter()
            .map(|b| (b.lower, b.upper, b.components, b.genus))
            .collect()
    }

    #[test]
    fn pixton_not_exists() {
        let b = build(examples::pixton());
        let verdict = decide(&b.diagram, &b.filtration, None).unwrap();
        assert_eq!(verdict.status, Status::NotExists);
        assert_eq!(
            verdict.reasons,
            vec![Reason {
                rule: Rule::ThmNecessity,
                witness: Some(Witness {
                    side: Side::Attractor,
                    i: 3,
                    orbit: "sigma".into()
                })
            }]
        );
        assert_eq!(
            build_certificate(&b.diagram, &b.numbering, &b.filtration),
            Err(EnergyError::NotApplicable(Status::NotExists))
        );
    }

    #[test]
    fn north_south_vacuous() {
        let b = build(examples::north_south());
        let verdict = decide(&b.diagram, &b.filtration, None).unwrap();
        assert_eq!(verdict.status, Status::Exists);
        assert_eq!(verdict.reasons[0].rule, Rule::ThmSufficiency);
        let cert = build_certificate(&b.diagram, &b.numbering, &b.filtration).unwrap();
        let levels: Vec<(usize, &str, u8)> = cert
            .critical_levels
            .iter()
            .map(|l| (l.value, l.orbit.as_str(), l.morse_index))
            .collect();
        assert_eq!(levels, vec![(1, "omega", 0), (2, "alpha", 3)]);
        assert_eq!(bands(&cert), vec![(1, 2, 1, 0)]);
        assert_eq!(cert.splitting_genus, 0);
        assert!(certificate_defects(&cert, &b.diagram).is_empty());
        assert!(check_lyapunov_schedule(&cert, &b.diagram, &b.order).is_empty());
    }

    #[test]
    fn s2xs1_tight_not_strong_is_unknown() {
        let b = build(examples::s2xs1_basic());
        let verdict = decide(&b.diagram, &b.filtration, None).unwrap();
        assert_eq!(verdict.status, Status::Unknown);
        assert!(verdict.reasons.iter().all(|r| r.rule == Rule::Inconclusive));
        assert_eq!(verdict.reasons.len(), 2);
    }

    #[test]
    fn s2xs1_strong_certificate() {
        let mut d = examples::s2xs1_basic();
        d.annotations = vec![EmbeddingAnnotation::new("s", true, true, 1)];
        d.mirror_annotations = vec![EmbeddingAnnotation::new("t", true, true, 1)];
        let b = build(d);
        let cert = build_certificate(&b.diagram, &b.numbering, &b.filtration).unwrap();
        assert_eq!(cert.splitting_genus, 1);
        assert_eq!(bands(&cert), vec![(1, 2, 1, 0), (2, 3, 1, 1), (3, 4, 1, 0)]);
        assert_eq!(cert.regular_bands[1].source, BandSource::Splitting);
        assert!(certificate_defects(&cert, &b.diagram).is_empty());
    }

    #[test]
    fn pixton_strong_certificate() {
        let b = build(examples::pixton_strong());
        let cert = build_certificate(&b.diagram, &b.numbering, &b.filtration).unwrap();
        let levels: Vec<(usize, &str, u8)> = cert
            .critical_levels
            .iter()
            .map(|l| (l.value, l.orbit.as_str(), l.morse_index))
            .collect();
        assert_eq!(
            levels,
            vec![(1, "w1", 0), (2, "w2", 0), (3, "sigma", 1), (4, "alpha", 3)]
        );
        assert_eq!(bands(&cert), vec![(1, 2, 1, 0), (2, 3, 2, 0), (3, 4, 1, 0)]);
        assert!(check_lyapunov_schedule(&cert, &b.diagram, &b.order).is_empty());
    }

    #[test]
    fn swapped_levels_break_schedule() {
        let b = build(examples::pixton_strong());
        let mut cert = build_certificate(&b.diagram, &b.numbering, &b.filtration).unwrap();
        cert.critical_levels[1].value = 3;
        cert.critical_levels[2].value = 2;
        let report = check_lyapunov_schedule(&cert, &b.diagram, &b.order);
        assert!(report.violations().contains(&Violation::ScheduleTarget {
            side: Side::Attractor,
            saddle: "sigma".into(),
            target: "w2".into()
        }));
        assert!(report.violations().contains(&Violation::ScheduleOrder {
            lower: "w2".into(),
            upper: "sigma".into()
        }));
    }

    #[test]
    fn reversed_north_south_breaks_schedule() {
        let b = build(examples::north_south());
        let mut cert = build_certificate(&b.diagram, &b.numbering, &b.filtration).unwrap();
        cert.critical_levels[0].value = 2;
        cert.critical_levels[1].value = 1;
        assert!(!check_lyapunov_schedule(&cert, &b.diagram, &b.order).is_empty());
        assert!(!certificate_defects(&cert, &b.diagram).is_empty());
    }

    #[test]
    fn sphere_criterion_on_chain() {
        let b = build(examples::chain(3));
        let verdict = decide(&b.diagram, &b.filtration, None).unwrap();
        assert_eq!(verdict.status, Status::Exists);
        assert_eq!(verdict.reasons[0].rule, Rule::ThmSphereCriterion);
        // passing the classification explicitly gives the same answer
        assert_eq!(
            decide(&b.diagram, &b.filtration, Some(ManifoldClass::Sphere3)).unwrap(),
            verdict
        );
    }

    #[test]
    fn missing_annotation_is_an_error() {
        let mut b = build(examples::pixton());
        b.diagram.annotations.clear();
        assert_eq!(
            decide(&b.diagram, &b.filtration, None),
            Err(EnergyError::IncompleteAnnotations {
                side: Side::Attractor,
                orbit: "sigma".into()
            })
        );
    }

    #[test]
    fn sphere_with_positive_genus_is_inconsistent() {
        // Claim S³ for the S²×S¹ diagram: the genus check must object.
        let mut b = build(examples::s2xs1_basic());
        b.diagram.name = "mislabelled".into();
        let err = decide(&b.diagram, &b.filtration, Some(ManifoldClass::Sphere3)).unwrap_err();
        assert_eq!(
            err,
            EnergyError::Inconsistent {
                side: Side::Attractor,
                i: 2,
                genus: 1
            }
        );
    }
}
