//! Attractor filtration `A_1 ⊂ … ⊂ A_k1` and its repeller mirror.
//!
//! `A_i` is the union of the unstable manifolds of the first `i` orbits of a
//! dynamical numbering. Its components are counted on the point-level
//! incidence graph: one vertex per sink point and per index-1 saddle point,
//! one edge per listed separatrix limit point.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, OrbitId, OrbitPoint, SeparatrixRecord, Side, ValidationReport, Violation};
use crate::ordering::{induced_inverse_numbering, Numbering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("index-1 saddle orbit `{orbit}` lacks separatrix data for point {point}")]
    MissingSeparatrixData { orbit: OrbitId, point: u32 },
    #[error("numbering refers to unknown orbit `{0}`")]
    UnknownOrbit(OrbitId),
    #[error("numbering does not list sinks, then index-1 saddles, first (at position {position})")]
    NotDynamical { position: usize },
    #[error("separatrix of `{saddle}` ends at {}:{} which is not in the attractor yet", .target.orbit, .target.point)]
    TargetOutsideAttractor { saddle: OrbitId, target: OrbitPoint },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorData {
    /// 1-based filtration index.
    pub i: usize,
    pub orbit_ids: Vec<OrbitId>,
    /// Connected components.
    pub c: u64,
    /// Saddle points.
    pub r: u64,
    /// Sink points.
    pub s: u64,
    pub g: i64,
}

impl AttractorData {
    /// Euler characteristic of a handle neighborhood with this component
    /// count and total genus.
    pub fn euler_characteristic(&self) -> i64 {
        self.c as i64 - self.g
    }

    /// `c - g == s - r`, both forms of the Euler characteristic.
    pub fn chi_consistent(&self) -> bool {
        self.euler_characteristic() == self.s as i64 - self.r as i64
            && self.g == self.c as i64 + self.r as i64 - self.s as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    pub attractors: Vec<AttractorData>,
    /// Attractors of the inverse map under the induced numbering.
    pub repellers: Vec<AttractorData>,
    pub k0: usize,
    pub k1: usize,
    /// Number of sources.
    pub k_tilde0: usize,
    /// `kf - k1`.
    pub k_tilde1: usize,
}

impl Filtration {
    pub fn rows(&self, side: Side) -> &[AttractorData] {
        match side {
            Side::Attractor => &self.attractors,
            Side::Repeller => &self.repellers,
        }
    }

    pub fn k0_for(&self, side: Side) -> usize {
        match side {
            Side::Attractor => self.k0,
            Side::Repeller => self.k_tilde0,
        }
    }

    /// Rows of one-dimensional attractors (`i > k0`).
    pub fn one_dimensional(&self, side: Side) -> &[AttractorData] {
        let rows = self.rows(side);
        &rows[self.k0_for(side).min(rows.len())..]
    }

    /// `g_k1`, the genus of the last attractor.
    pub fn splitting_genus(&self) -> Option<i64> {
        self.attractors.last().map(|r| r.g)
    }

    pub fn mirror_splitting_genus(&self) -> Option<i64> {
        self.repellers.last().map(|r| r.g)
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct sets were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Builds the attractor rows for `i = 1..=k1` and the repeller rows from the
/// inverse diagram under the induced numbering.
pub fn build_filtration(diagram: &Diagram, numbering: &Numbering) -> Result<Filtration, FiltrationError> {
    let attractors = side_rows(diagram, numbering)?;
    let inverse = diagram.inverse();
    let repellers = side_rows(&inverse, &induced_inverse_numbering(numbering))?;
    let counts = diagram.orbit_counts();
    let k0 = counts[0];
    let k1 = attractors.len();
    Ok(Filtration {
        attractors,
        repellers,
        k0,
        k1,
        k_tilde0: counts[3],
        k_tilde1: diagram.orbits.len() - k1,
    })
}

/// Attractor rows of one diagram: the numbered prefix of sinks and index-1 saddles.
pub fn side_rows(diagram: &Diagram, numbering: &Numbering) -> Result<Vec<AttractorData>, FiltrationError> {
    let orbit_index = diagram.orbit_index();
    let mut prefix = Vec::new();
    let mut seen_saddle = false;
    for (k, id) in numbering.iter().enumerate() {
        let orbit = &diagram.orbits[*orbit_index
            .get(id)
            .ok_or_else(|| FiltrationError::UnknownOrbit(id.clone()))?];
        match orbit.index {
            0 if seen_saddle => return Err(FiltrationError::NotDynamical { position: k + 1 }),
            0 => prefix.push(orbit),
            1 => {
                seen_saddle = true;
                prefix.push(orbit);
            }
            _ => break,
        }
    }
    let low_count = diagram.orbits.iter().filter(|o| o.index <= 1).count();
    if prefix.len() != low_count {
        return Err(FiltrationError::NotDynamical {
            position: prefix.len() + 1,
        });
    }

    let mut vertex: HashMap<(&OrbitId, u32), usize> = HashMap::new();
    for o in &prefix {
        for p in 0..o.period {
            let next = vertex.len();
            vertex.insert((&o.id, p), next);
        }
    }
    let records: HashMap<(&OrbitId, u32), &SeparatrixRecord> = diagram
        .separatrices
        .iter()
        .map(|r| ((&r.saddle_point.orbit, r.saddle_point.point), r))
        .collect();

    let mut uf = UnionFind::new(vertex.len());
    let mut active = vec![false; vertex.len()];
    let (mut c, mut r, mut s) = (0u64, 0u64, 0u64);
    let mut rows = Vec::with_capacity(prefix.len());
    for (k, orbit) in prefix.iter().enumerate() {
        for p in 0..orbit.period {
            active[vertex[&(&orbit.id, p)]] = true;
        }
        c += orbit.period as u64;
        if orbit.is_sink() {
            s += orbit.period as u64;
        } else {
            r += orbit.period as u64;
            for p in 0..orbit.period {
                let here = vertex[&(&orbit.id, p)];
                let record = records
                    .get(&(&orbit.id, p))
                    .ok_or_else(|| FiltrationError::MissingSeparatrixData {
                        orbit: orbit.id.clone(),
                        point: p,
                    })?;
                for target in record.targets() {
                    let there = vertex
                        .get(&(&target.orbit, target.point))
                        .copied()
                        .filter(|&v| active[v])
                        .ok_or_else(|| FiltrationError::TargetOutsideAttractor {
                            saddle: orbit.id.clone(),
                            target: target.clone(),
                        })?;
                    if uf.union(here, there) {
                        c -= 1;
                    }
                }
            }
        }
        rows.push(AttractorData {
            i: k + 1,
            orbit_ids: prefix[..=k].iter().map(|o| o.id.clone()).collect(),
            c,
            r,
            s,
            g: c as i64 + r as i64 - s as i64,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityRow {
    pub i: usize,
    pub g_i: i64,
    pub g_next: i64,
    /// `c_i - c_{i+1} <= r_{i+1} - r_i`
    pub premise_ok: bool,
    pub ok: bool,
}

/// Genus steps `g_i -> g_{i+1}` for `i = k0..k1-1` on the attractor side.
pub fn genus_monotonicity_report(filtration: &Filtration) -> Vec<MonotonicityRow> {
    monotonicity_rows(&filtration.attractors, filtration.k0)
}

/// Same report for the repeller rows.
pub fn repeller_monotonicity_report(filtration: &Filtration) -> Vec<MonotonicityRow> {
    monotonicity_rows(&filtration.repellers, filtration.k_tilde0)
}

fn monotonicity_rows(rows: &[AttractorData], k0: usize) -> Vec<MonotonicityRow> {
    rows.windows(2)
        .filter(|w| w[0].i >= k0.max(1))
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            MonotonicityRow {
                i: a.i,
                g_i: a.g,
                g_next: b.g,
                premise_ok: a.c as i64 - b.c as i64 <= b.r as i64 - a.r as i64,
                ok: b.g >= a.g,
            }
        })
        .collect()
}

/// Checks the annotation of every one-dimensional attractor and repeller
/// against the computed genus.
pub fn annotation_consistency(diagram: &Diagram, filtration: &Filtration) -> ValidationReport {
    let mut violations = Vec::new();
    for side in [Side::Attractor, Side::Repeller] {
        for row in filtration.one_dimensional(side) {
            let Some(saddle) = row.orbit_ids.last() else { continue };
            let Some(a) = diagram.annotation(side, saddle) else {
                violations.push(Violation::MissingAnnotation {
                    side,
                    orbit: saddle.clone(),
                });
                continue;
            };
            let witness = a.handle_genus_witness as i64;
            if witness < row.g {
                violations.push(Violation::WitnessBelowGenus {
                    side,
                    orbit: saddle.clone(),
                    witness: a.handle_genus_witness,
                    genus: row.g,
                });
            }
            if a.tight && witness != row.g {
                violations.push(Violation::TightGenusMismatch {
                    side,
                    orbit: saddle.clone(),
                    witness: a.handle_genus_witness,
                    genus: row.g,
                });
            }
            if a.strongly_tight && !a.tight {
                violations.push(Violation::StronglyTightNotTight {
                    side,
                    orbit: saddle.clone(),
                });
            }
        }
    }
    ValidationReport::new(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::EmbeddingAnnotation;
    use crate::examples;
    use crate::ordering::{canonical_numbering, compute_order};

    fn filtration_of(d: &Diagram) -> Filtration {
        let order = compute_order(d).unwrap();
        build_filtration(d, &canonical_numbering(d, &order)).unwrap()
    }

    fn csg(row: &AttractorData) -> (u64, u64, u64, i64) {
        (row.c, row.r, row.s, row.g)
    }

    #[test]
    fn pixton_rows() {
        let f = filtration_of(&examples::pixton());
        assert_eq!((f.k0, f.k1, f.k_tilde0, f.k_tilde1), (2, 3, 1, 1));
        assert_eq!(csg(&f.attractors[0]), (1, 0, 1, 0));
        assert_eq!(csg(&f.attractors[1]), (2, 0, 2, 0));
        assert_eq!(csg(&f.attractors[2]), (1, 1, 2, 0));
        assert_eq!(csg(&f.repellers[0]), (1, 0, 1, 0));
    }

    #[test]
    fn s2xs1_genus_one() {
        let f = filtration_of(&examples::s2xs1_basic());
        assert_eq!(csg(&f.attractors[1]), (1, 1, 1, 1));
        assert_eq!(f.attractors[1].euler_characteristic(), 0);
        assert_eq!(f.splitting_genus(), f.mirror_splitting_genus());
        let report = genus_monotonicity_report(&f);
        assert_eq!(report.len(), 1);
        assert_eq!(
            (report[0].i, report[0].g_i, report[0].g_next, report[0].ok),
            (1, 0, 1, true)
        );
    }

    #[test]
    fn pixton_monotonicity_single_row() {
        let f = filtration_of(&examples::pixton());
        let report = genus_monotonicity_report(&f);
        assert_eq!(report.len(), 1);
        assert_eq!((report[0].i, report[0].g_i, report[0].g_next), (2, 0, 0));
        assert!(report[0].ok && report[0].premise_ok);
    }

    #[test]
    fn north_south_has_no_steps() {
        let f = filtration_of(&examples::north_south());
        assert!(genus_monotonicity_report(&f).is_empty());
    }

    #[test]
    fn missing_separatrix_data() {
        let mut d = examples::pixton();
        d.separatrices.clear();
        let order = compute_order(&d).unwrap();
        let err = build_filtration(&d, &canonical_numbering(&d, &order)).unwrap_err();
        assert_eq!(
            err,
            FiltrationError::MissingSeparatrixData {
                orbit: "sigma".into(),
                point: 0
            }
        );
    }

    #[test]
    fn numbering_with_saddle_before_sink_rejected() {
        let d = examples::pixton();
        let n = Numbering::new(vec!["w1".into(), "sigma".into(), "w2".into(), "alpha".into()]);
        assert!(matches!(
            build_filtration(&d, &n),
            Err(FiltrationError::NotDynamical { position: 3 })
        ));
    }

    #[test]
    fn annotation_checks() {
        let d = examples::pixton();
        let f = filtration_of(&d);
        assert!(annotation_consistency(&d, &f).is_empty());

        let mut tight_wrong = d.clone();
        tight_wrong.annotations = vec![EmbeddingAnnotation::new("sigma", true, false, 1)];
        let report = annotation_consistency(&tight_wrong, &f);
        assert!(matches!(report.violations(), [Violation::TightGenusMismatch { .. }]));

        let mut strong_only = d.clone();
        strong_only.annotations = vec![EmbeddingAnnotation::new("sigma", false, true, 0)];
        let report = annotation_consistency(&strong_only, &f);
        assert!(matches!(report.violations(), [Violation::StronglyTightNotTight { .. }]));
    }

    #[test]
    fn union_find_counts_merges() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 3));
        assert_eq!(uf.find(0), uf.find(2));
    }
}
