//! Reports and their text, JSON and DOT renderings.

use std::fmt::Write as _;

use serde::Serialize;

use crate::classification::{classify, ClassifyError, ManifoldClass};
use crate::diagram::{validate, Diagram, EdgeKind, OrbitId, Violation};
use crate::energy::{build_certificate, check_lyapunov_schedule, decide, EnergyCertificate, Verdict};
use crate::filtration::{
    build_filtration, genus_monotonicity_report, repeller_monotonicity_report, AttractorData, MonotonicityRow,
};
use crate::ordering::{behaviour_indices, canonical_numbering, compute_order, count_numberings};

/// Which sections to compute.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Sections {
    pub order: bool,
    pub filtration: bool,
    pub classification: bool,
    pub energy: bool,
}

impl Sections {
    pub const ALL: Sections = Sections {
        order: true,
        filtration: true,
        classification: true,
        energy: true,
    };
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumberingEntry {
    pub position: usize,
    pub id: OrbitId,
    pub index: u8,
    pub behaviour: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderPair {
    pub lower: OrbitId,
    pub upper: OrbitId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderSection {
    pub pairs: Vec<OrderPair>,
    /// Decimal, since the count can exceed any fixed-width integer.
    pub numbering_count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationSection {
    pub k0: usize,
    pub k1: usize,
    pub k_tilde0: usize,
    pub k_tilde1: usize,
    pub attractors: Vec<AttractorData>,
    pub repellers: Vec<AttractorData>,
    pub monotonicity: Vec<MonotonicityRow>,
    pub mirror_monotonicity: Vec<MonotonicityRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationStatus {
    Classified,
    NotApplicable,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationSection {
    pub status: ClassificationStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifold: Option<ManifoldClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnergySection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<EnergyCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub schedule_violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub validation: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub numbering: Vec<NumberingEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtration: Option<FiltrationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<EnergySection>,
}

impl Report {
    /// Validates, then computes the requested sections. An invalid diagram
    /// gets only its validation section.
    pub fn build(diagram: &Diagram, sections: Sections) -> Report {
        let mut report = Report {
            name: diagram.name.clone(),
            validation: validate(diagram).into_violations(),
            numbering: Vec::new(),
            order: None,
            filtration: None,
            classification: None,
            energy: None,
        };
        if !report.validation.is_empty() {
            return report;
        }
        let order = compute_order(diagram).expect("validated diagram has an acyclic order");
        let numbering = canonical_numbering(diagram, &order);
        let filtration = build_filtration(diagram, &numbering).expect("validated diagram has a filtration");

        if sections.order || sections.filtration {
            report.numbering = numbering_entries(diagram, &order, &numbering);
        }
        if sections.order {
            report.order = Some(OrderSection {
                pairs: order
                    .strict_pairs()
                    .into_iter()
                    .map(|(lower, upper)| OrderPair { lower, upper })
                    .collect(),
                numbering_count: count_numberings(diagram, &order).to_string(),
            });
        }
        if sections.filtration {
            report.filtration = Some(FiltrationSection {
                k0: filtration.k0,
                k1: filtration.k1,
                k_tilde0: filtration.k_tilde0,
                k_tilde1: filtration.k_tilde1,
                monotonicity: genus_monotonicity_report(&filtration),
                mirror_monotonicity: repeller_monotonicity_report(&filtration),
                attractors: filtration.attractors.clone(),
                repellers: filtration.repellers.clone(),
            });
        }
        if sections.classification {
            report.classification = Some(match classify(diagram) {
                Ok(class) => ClassificationSection {
                    status: ClassificationStatus::Classified,
                    manifold: Some(class),
                    message: None,
                },
                Err(e) => ClassificationSection {
                    status: match e {
                        ClassifyError::NotApplicable => ClassificationStatus::NotApplicable,
                        ClassifyError::Inconsistent { .. } => ClassificationStatus::Inconsistent,
                    },
                    manifold: None,
                    message: Some(e.to_string()),
                },
            });
        }
        if sections.energy {
            let mut section = EnergySection {
                verdict: None,
                error: None,
                certificate: None,
                schedule_violations: Vec::new(),
            };
            match decide(diagram, &filtration, None) {
                Ok(verdict) => {
                    if verdict.status == crate::energy::Status::Exists {
                        match build_certificate(diagram, &numbering, &filtration) {
                            Ok(cert) => {
                                section.schedule_violations =
                                    check_lyapunov_schedule(&cert, diagram, &order).into_violations();
                                section.certificate = Some(cert);
                            }
                            Err(e) => section.error = Some(e.to_string()),
                        }
                    }
                    section.verdict = Some(verdict);
                }
                Err(e) => section.error = Some(e.to_string()),
            }
            report.energy = Some(section);
        }
        report
    }

    /// True when the report carries anything that should exit with status 2.
    pub fn has_violations(&self) -> bool {
        !self.validation.is_empty()
            || self
                .classification
                .as_ref()
                .is_some_and(|c| c.status == ClassificationStatus::Inconsistent)
            || self
                .energy
                .as_ref()
                .is_some_and(|e| e.error.is_some() || !e.schedule_violations.is_empty())
    }

    /// Pretty JSON with fields in declaration order.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "diagram: {}", self.name);
        if self.validation.is_empty() {
            let _ = writeln!(out, "validation: ok");
        } else {
            let _ = writeln!(out, "validation: {} violation(s)", self.validation.len());
            for v in &self.validation {
                let _ = writeln!(out, "  - {v}");
            }
        }
        if !self.numbering.is_empty() {
            let _ = writeln!(out, "\nnumbering:");
            let _ = writeln!(out, "  {:>3}  {:<12} {:>2} {:>3}", "i", "orbit", "q", "b");
            for e in &self.numbering {
                let _ = writeln!(
                    out,
                    "  {:>3}  {:<12} {:>2} {:>3}",
                    e.position,
                    e.id.as_str(),
                    e.index,
                    e.behaviour
                );
            }
        }
        if let Some(order) = &self.order {
            let _ = writeln!(out, "\norder ({} strict pairs):", order.pairs.len());
            for p in &order.pairs {
                let _ = writeln!(out, "  {} < {}", p.lower, p.upper);
            }
            let _ = writeln!(out, "dynamical numberings: {}", order.numbering_count);
        }
        if let Some(f) = &self.filtration {
            let _ = writeln!(
                out,
                "\nfiltration: k0 = {}, k1 = {}, k~0 = {}, k~1 = {}",
                f.k0, f.k1, f.k_tilde0, f.k_tilde1
            );
            write_rows(&mut out, "attractors", &f.attractors);
            write_rows(&mut out, "repellers", &f.repellers);
            write_monotonicity(&mut out, "genus steps", &f.monotonicity);
            write_monotonicity(&mut out, "mirror genus steps", &f.mirror_monotonicity);
        }
        if let Some(c) = &self.classification {
            let _ = write!(out, "\nclassification: ");
            match (&c.manifold, &c.message) {
                (Some(m), _) => {
                    let _ = writeln!(out, "{m}");
                }
                (None, Some(msg)) => {
                    let _ = writeln!(out, "{msg}");
                }
                (None, None) => {
                    let _ = writeln!(out, "-");
                }
            }
        }
        if let Some(e) = &self.energy {
            if let Some(v) = &e.verdict {
                let _ = writeln!(out, "\nenergy function: {:?}", v.status);
                for r in &v.reasons {
                    match &r.witness {
                        Some(w) => {
                            let _ = writeln!(out, "  {:?}: {} A_{} from `{}`", r.rule, w.side, w.i, w.orbit);
                        }
                        None => {
                            let _ = writeln!(out, "  {:?}", r.rule);
                        }
                    }
                }
            }
            if let Some(err) = &e.error {
                let _ = writeln!(out, "\nenergy function: error: {err}");
            }
            if let Some(cert) = &e.certificate {
                let _ = writeln!(out, "\ncertificate:");
                for l in &cert.critical_levels {
                    let _ = writeln!(
                        out,
                        "  level {:>3}  {:<12} index {}",
                        l.value,
                        l.orbit.as_str(),
                        l.morse_index
                    );
                }
                for b in &cert.regular_bands {
                    let _ = writeln!(
                        out,
                        "  band ({}, {})  components {} genus {} [{:?}]",
                        b.lower, b.upper, b.components, b.genus, b.source
                    );
                }
                let _ = writeln!(
                    out,
                    "  splitting level {} genus {}; mirror (c, g) = ({}, {})",
                    cert.splitting_level, cert.splitting_genus, cert.mirror_splitting.0, cert.mirror_splitting.1
                );
                for v in &e.schedule_violations {
                    let _ = writeln!(out, "  schedule violation: {v}");
                }
            }
        }
        out
    }

    /// Phase diagram: orbits labelled `(id, q, b, position)`, edges from
    /// upper to lower styled by kind.
    pub fn to_dot(&self, diagram: &Diagram) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", escape(&diagram.name));
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=circle];");
        for o in &diagram.orbits {
            let entry = self.numbering.iter().find(|e| e.id == o.id);
            let label = match entry {
                Some(e) => format!("({}, q={}, b={}, #{})", o.id, o.index, e.behaviour, e.position),
                None => format!("({}, q={})", o.id, o.index),
            };
            let shape = match o.index {
                0 => "doublecircle",
                3 => "box",
                _ => "circle",
            };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\", shape={}, period={}];",
                escape(o.id.as_str()),
                escape(&label),
                shape,
                o.period
            );
        }
        for e in &diagram.edges {
            let style = match e.kind {
                EdgeKind::NodeBasin => "style=solid",
                EdgeKind::HeteroclinicPoint => "style=dashed",
                EdgeKind::HeteroclinicCurve => "style=\"bold,dotted\"",
            };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [{}, kind={}];",
                escape(e.upper.as_str()),
                escape(e.lower.as_str()),
                style,
                e.kind.as_str()
            );
        }
        out.push_str("}\n");
        out
    }
}

fn numbering_entries(
    diagram: &Diagram,
    order: &crate::ordering::OrderRelation,
    numbering: &crate::ordering::Numbering,
) -> Vec<NumberingEntry> {
    let b = behaviour_indices(diagram, order);
    let pos = diagram.orbit_index();
    numbering
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let at = pos[id];
            NumberingEntry {
                position: k + 1,
                id: id.clone(),
                index: diagram.orbits[at].index,
                behaviour: b[at],
            }
        })
        .collect()
}

fn write_rows(out: &mut String, title: &str, rows: &[AttractorData]) {
    let _ = writeln!(out, "  {title}:");
    let _ = writeln!(out, "    {:>3} {:>4} {:>4} {:>4} {:>4}  added", "i", "c", "r", "s", "g");
    for row in rows {
        let _ = writeln!(
            out,
            "    {:>3} {:>4} {:>4} {:>4} {:>4}  {}",
            row.i,
            row.c,
            row.r,
            row.s,
            row.g,
            row.orbit_ids.last().map_or("", |id| id.as_str())
        );
    }
}

fn write_monotonicity(out: &mut String, title: &str, rows: &[MonotonicityRow]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "  {title}:");
    for m in rows {
        let _ = writeln!(
            out,
            "    g_{} = {} -> {}  {}{}",
            m.i,
            m.g_i,
            m.g_next,
            if m.ok { "ok" } else { "DECREASES" },
            if m.premise_ok { "" } else { " (premise fails)" }
        );
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
