//! Random diagrams that pass [`validate`](crate::diagram::validate).
//!
//! Each side (sinks with index-1 saddles, sources with index-2 saddles) is
//! grown as a connected, shift-equivariant incidence graph. Tree steps add a
//! node orbit together with a saddle orbit joining it to what exists;
//! genus steps add a saddle orbit with both separatrices on existing
//! vertices. Both sides receive the same total genus `g`, which makes the
//! point counts satisfy `1 + |Ω1| - |Ω0| = g = 1 + |Ω2| - |Ω3|` and, without
//! heteroclinic curves, places the diagram on `#g S²×S¹` (S³ for `g = 0`).

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{
    Diagram, EdgeKind, EmbeddingAnnotation, IntersectionEdge, Orbit, OrbitPoint, SeparatrixRecord, Side,
};
use crate::filtration::build_filtration;
use crate::ordering::{canonical_numbering, compute_order};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationMode {
    /// Each one-dimensional attractor is independently not tight, tight, or strongly tight.
    Random,
    AllTight,
    AllStrong,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Tree steps per side are drawn from `0..=max_tree_steps`.
    pub max_tree_steps: usize,
    /// Genus drawn from `0..=max_genus`, shared by both sides.
    pub max_genus: u32,
    /// Allow orbits of period 2 and 3.
    pub periodic: bool,
    pub heteroclinic_points: bool,
    pub heteroclinic_curves: bool,
    pub annotations: AnnotationMode,
    /// Cap on the number of orbits produced by tree steps on both sides.
    pub max_orbits: Option<usize>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_tree_steps: 4,
            max_genus: 2,
            periodic: true,
            heteroclinic_points: true,
            heteroclinic_curves: true,
            annotations: AnnotationMode::Random,
            max_orbits: None,
        }
    }
}

impl GeneratorConfig {
    /// Curve-free diagrams on S³.
    pub fn sphere() -> Self {
        GeneratorConfig {
            max_genus: 0,
            heteroclinic_curves: false,
            ..Default::default()
        }
    }

    /// Genus-zero diagrams with at most `max_orbits` orbits.
    pub fn small(max_orbits: usize) -> Self {
        GeneratorConfig {
            max_tree_steps: max_orbits.saturating_sub(2) / 2,
            max_genus: 0,
            max_orbits: Some(max_orbits),
            ..Default::default()
        }
    }
}

struct SideOrbit {
    name: String,
    period: u32,
    saddle: bool,
    swap: bool,
}

/// `(saddle orbit, point, branch targets as (orbit, point))`
type Record = (usize, u32, [Vec<(usize, u32)>; 2]);

/// One side under construction, in attractor coordinates.
struct SideGraph {
    node_prefix: &'static str,
    saddle_prefix: &'static str,
    orbits: Vec<SideOrbit>,
    records: Vec<Record>,
    nodes: usize,
    saddles: usize,
}

impl SideGraph {
    fn new(node_prefix: &'static str, saddle_prefix: &'static str) -> Self {
        let mut side = SideGraph {
            node_prefix,
            saddle_prefix,
            orbits: Vec::new(),
            records: Vec::new(),
            nodes: 0,
            saddles: 0,
        };
        side.add_orbit(1, false, false);
        side
    }

    fn add_orbit(&mut self, period: u32, saddle: bool, swap: bool) -> usize {
        let name = if saddle {
            self.saddles += 1;
            format!("{}{}", self.saddle_prefix, self.saddles - 1)
        } else {
            self.nodes += 1;
            format!("{}{}", self.node_prefix, self.nodes - 1)
        };
        self.orbits.push(SideOrbit {
            name,
            period,
            saddle,
            swap,
        });
        self.orbits.len() - 1
    }

    /// Orbits usable as separatrix targets of a new saddle whose return
    /// acts on the target by `shift^modulus`, i.e. period dividing `modulus`.
    fn anchors(&self, modulus: u32, hetero: bool) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&k| {
                let o = &self.orbits[k];
                modulus.is_multiple_of(o.period) && (!o.saddle || hetero)
            })
            .collect()
    }

    fn tree_step<R: Rng>(&mut self, rng: &mut R, periods: &[u32], hetero: bool) {
        let p = *periods.choose(rng).unwrap();
        let anchors = self.anchors(p, hetero);
        let anchor = *anchors.choose(rng).expect("root node has period 1");
        let offset = rng.gen_range(0..self.orbits[anchor].period);
        let flip = rng.gen_bool(0.5);
        let node = self.add_orbit(p, false, false);
        let saddle = self.add_orbit(p, true, false);
        let anchor_period = self.orbits[anchor].period;
        for j in 0..p {
            let a = vec![(anchor, (offset + j) % anchor_period)];
            let n = vec![(node, j)];
            let branches = if flip { [n, a] } else { [a, n] };
            self.records.push((saddle, j, branches));
        }
    }

    /// Adds a saddle orbit of period `p` with both separatrices on existing
    /// vertices, raising the genus by `p`.
    fn genus_step<R: Rng>(&mut self, rng: &mut R, p: u32, hetero: bool) {
        let swap = rng.gen_bool(0.4);
        if swap {
            // branch b of point j ends at (A, t + b*p + j); the return swaps them
            let anchors = self.anchors(2 * p, hetero);
            let anchor = *anchors.choose(rng).unwrap();
            let d = self.orbits[anchor].period;
            let t = rng.gen_range(0..d);
            let saddle = self.add_orbit(p, true, true);
            for j in 0..p {
                self.records.push((
                    saddle,
                    j,
                    [vec![(anchor, (t + j) % d)], vec![(anchor, (t + p + j) % d)]],
                ));
            }
        } else {
            let anchors = self.anchors(p, hetero);
            let a = *anchors.choose(rng).unwrap();
            let b = *anchors.choose(rng).unwrap();
            let (da, db) = (self.orbits[a].period, self.orbits[b].period);
            let (ta, tb) = (rng.gen_range(0..da), rng.gen_range(0..db));
            let saddle = self.add_orbit(p, true, false);
            for j in 0..p {
                self.records
                    .push((saddle, j, [vec![(a, (ta + j) % da)], vec![(b, (tb + j) % db)]]));
            }
        }
    }

    fn grow<R: Rng>(
        rng: &mut R,
        prefixes: (&'static str, &'static str),
        steps: usize,
        genus: u32,
        config: &GeneratorConfig,
    ) -> Self {
        let mut side = SideGraph::new(prefixes.0, prefixes.1);
        let periods: &[u32] = if config.periodic { &[1, 1, 1, 2, 3] } else { &[1] };
        for _ in 0..steps {
            let hetero = config.heteroclinic_points && rng.gen_bool(0.3);
            side.tree_step(rng, periods, hetero);
        }
        let mut remaining = genus;
        while remaining > 0 {
            let choices: Vec<u32> = periods.iter().copied().filter(|&p| p <= remaining).collect();
            let p = *choices.choose(rng).unwrap();
            let hetero = config.heteroclinic_points && rng.gen_bool(0.3);
            side.genus_step(rng, p, hetero);
            remaining -= p;
        }
        side
    }

    fn orbit_list(&self, node_index: u8, saddle_index: u8) -> Vec<Orbit> {
        self.orbits
            .iter()
            .map(|o| {
                Orbit::new(
                    o.name.clone(),
                    o.period,
                    if o.saddle { saddle_index } else { node_index },
                )
                .with_swap(o.swap)
            })
            .collect()
    }

    fn separatrix_records(&self) -> Vec<SeparatrixRecord> {
        let point = |(k, p): (usize, u32)| OrbitPoint::new(self.orbits[k].name.clone(), p);
        self.records
            .iter()
            .map(|(s, j, branches)| {
                SeparatrixRecord::new(
                    point((*s, *j)),
                    branches[0].iter().copied().map(point).collect(),
                    branches[1].iter().copied().map(point).collect(),
                )
            })
            .collect()
    }

    /// (saddle, target, kind) in attractor coordinates, deduplicated.
    fn intersections(&self) -> Vec<(String, String, EdgeKind)> {
        let mut out: Vec<(String, String, EdgeKind)> = Vec::new();
        for (s, _, branches) in &self.records {
            for &(t, _) in branches.iter().flatten() {
                let kind = if self.orbits[t].saddle {
                    EdgeKind::HeteroclinicPoint
                } else {
                    EdgeKind::NodeBasin
                };
                let e = (self.orbits[*s].name.clone(), self.orbits[t].name.clone(), kind);
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    fn names(&self, saddle: bool) -> Vec<String> {
        self.orbits
            .iter()
            .filter(|o| o.saddle == saddle)
            .map(|o| o.name.clone())
            .collect()
    }
}

pub fn random_diagram<R: Rng>(rng: &mut R, config: &GeneratorConfig) -> Diagram {
    let genus = rng.gen_range(0..=config.max_genus);
    let mut steps = [
        rng.gen_range(0..=config.max_tree_steps),
        rng.gen_range(0..=config.max_tree_steps),
    ];
    if let Some(cap) = config.max_orbits {
        // two root nodes plus two orbits per tree step
        while 2 + 2 * (steps[0] + steps[1]) > cap.max(2) {
            let k = if steps[0] >= steps[1] { 0 } else { 1 };
            steps[k] -= 1;
        }
    }
    let attractor = SideGraph::grow(rng, ("w", "s"), steps[0], genus, config);
    let repeller = SideGraph::grow(rng, ("a", "t"), steps[1], genus, config);

    let mut orbits = attractor.orbit_list(0, 1);
    orbits.extend(repeller.orbit_list(3, 2));

    let mut edges: Vec<IntersectionEdge> = Vec::new();
    let push = |edges: &mut Vec<IntersectionEdge>, upper: &str, lower: &str, kind: EdgeKind| {
        let e = IntersectionEdge::new(upper, lower, kind);
        if !edges.contains(&e) {
            edges.push(e);
        }
    };
    for (s, t, kind) in attractor.intersections() {
        push(&mut edges, &s, &t, kind);
    }
    for (s, t, kind) in repeller.intersections() {
        push(&mut edges, &t, &s, kind);
    }

    let (sinks, sigma) = (attractor.names(false), attractor.names(true));
    let (sources, tau) = (repeller.names(false), repeller.names(true));
    for t in &tau {
        push(&mut edges, t, sinks.choose(rng).unwrap(), EdgeKind::NodeBasin);
        if config.heteroclinic_curves && !sigma.is_empty() && rng.gen_bool(0.5) {
            push(&mut edges, t, sigma.choose(rng).unwrap(), EdgeKind::HeteroclinicCurve);
        }
    }
    for s in &sigma {
        push(&mut edges, sources.choose(rng).unwrap(), s, EdgeKind::NodeBasin);
    }
    for w in &sinks {
        if !edges.iter().any(|e| e.lower.as_str() == w) {
            push(&mut edges, sources.choose(rng).unwrap(), w, EdgeKind::NodeBasin);
        }
    }
    for a in &sources {
        if !edges.iter().any(|e| e.upper.as_str() == a) {
            push(&mut edges, a, sinks.choose(rng).unwrap(), EdgeKind::NodeBasin);
        }
    }

    let mut diagram = Diagram {
        name: String::from("random"),
        orbits,
        no_heteroclinic_curves: !edges.iter().any(|e| e.kind == EdgeKind::HeteroclinicCurve),
        edges,
        separatrices: attractor.separatrix_records(),
        mirror_separatrices: repeller.separatrix_records(),
        annotations: Vec::new(),
        mirror_annotations: Vec::new(),
    };
    annotate(rng, &mut diagram, config.annotations);
    diagram
}

/// Deterministic diagram for a seed.
pub fn seeded_diagram(seed: u64, config: &GeneratorConfig) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = random_diagram(&mut rng, config);
    d.name = format!("random-{seed}");
    d
}

/// Fills consistent annotations: the witness equals the genus when tight and
/// is at least the genus otherwise.
fn annotate<R: Rng>(rng: &mut R, diagram: &mut Diagram, mode: AnnotationMode) {
    let order = compute_order(diagram).expect("generated relation is acyclic");
    let numbering = canonical_numbering(diagram, &order);
    let filtration = build_filtration(diagram, &numbering).expect("generated separatrix data is complete");
    for side in [Side::Attractor, Side::Repeller] {
        let list: Vec<EmbeddingAnnotation> = filtration
            .one_dimensional(side)
            .iter()
            .map(|row| {
                let orbit = row.orbit_ids.last().unwrap().clone();
                let g = row.g.max(0) as u32;
                let (tight, strong) = match mode {
                    AnnotationMode::AllTight => (true, false),
                    AnnotationMode::AllStrong => (true, true),
                    AnnotationMode::Random => match rng.gen_range(0..3) {
                        0 => (false, false),
                        1 => (true, false),
                        _ => (true, true),
                    },
                };
                let witness = if tight { g } else { g + rng.gen_range(0..=2) };
                EmbeddingAnnotation {
                    saddle_orbit: orbit,
                    tight,
                    strongly_tight: strong,
                    handle_genus_witness: witness,
                }
            })
            .collect();
        match side {
            Side::Attractor => diagram.annotations = list,
            Side::Repeller => diagram.mirror_annotations = list,
        }
    }
}
