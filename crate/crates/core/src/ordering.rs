//! Smale order on periodic orbits, behaviour and dynamical numberings.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, OrbitId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("intersection relation contains a cycle: {}", fmt_cycle(.0))]
    CyclicRelation(Vec<OrbitId>),
    #[error("unknown orbit `{0}`")]
    UnknownOrbit(OrbitId),
}

fn fmt_cycle(cycle: &[OrbitId]) -> String {
    let mut parts: Vec<&str> = cycle.iter().map(|id| id.as_str()).collect();
    if let Some(first) = cycle.first() {
        parts.push(first.as_str());
    }
    parts.join(" < ")
}

/// Fixed-width bit set over orbit positions.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + tz)
            })
        })
    }
}

/// The strict order `lower ≺ upper` generated by the intersection edges.
///
/// Positions refer to the orbit list of the diagram the relation was built from.
#[derive(Debug, Clone)]
pub struct OrderRelation {
    ids: Vec<OrbitId>,
    position: HashMap<OrbitId, usize>,
    /// Deduplicated direct predecessors from the raw edge list.
    direct_below: Vec<Vec<usize>>,
    /// Transitive closure: every orbit strictly below.
    below: Vec<BitSet>,
    /// Orbit positions, lower orbits first.
    topo: Vec<usize>,
}

impl OrderRelation {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[OrbitId] {
        &self.ids
    }

    pub fn position_of(&self, id: &OrbitId) -> Option<usize> {
        self.position.get(id).copied()
    }

    fn pos(&self, id: &OrbitId) -> Result<usize, OrderError> {
        self.position_of(id).ok_or_else(|| OrderError::UnknownOrbit(id.clone()))
    }

    /// `lower ≺ upper` in the transitively closed relation.
    pub fn precedes(&self, lower: &OrbitId, upper: &OrbitId) -> bool {
        match (self.position_of(lower), self.position_of(upper)) {
            (Some(l), Some(u)) => self.precedes_at(l, u),
            _ => false,
        }
    }

    pub fn precedes_at(&self, lower: usize, upper: usize) -> bool {
        self.below[upper].contains(lower)
    }

    pub fn direct_below(&self, pos: usize) -> &[usize] {
        &self.direct_below[pos]
    }

    pub fn below_iter(&self, pos: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[pos].iter()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// All pairs `(lower, upper)` with `lower ≺ upper`, sorted.
    pub fn strict_pairs(&self) -> Vec<(OrbitId, OrbitId)> {
        let mut pairs: Vec<(OrbitId, OrbitId)> = (0..self.len())
            .flat_map(|u| self.below[u].iter().map(move |l| (l, u)))
            .map(|(l, u)| (self.ids[l].clone(), self.ids[u].clone()))
            .collect();
        pairs.sort();
        pairs
    }
}

/// Builds the transitive closure of the edge relation, rejecting cycles.
pub fn compute_order(diagram: &Diagram) -> Result<OrderRelation, OrderError> {
    let ids: Vec<OrbitId> = diagram.orbits.iter().map(|o| o.id.clone()).collect();
    let position: HashMap<OrbitId, usize> = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
    let n = ids.len();

    let mut direct_below = vec![Vec::new(); n];
    let mut direct_above = vec![Vec::new(); n];
    for e in &diagram.edges {
        let u = *position
            .get(&e.upper)
            .ok_or_else(|| OrderError::UnknownOrbit(e.upper.clone()))?;
        let l = *position
            .get(&e.lower)
            .ok_or_else(|| OrderError::UnknownOrbit(e.lower.clone()))?;
        if u == l {
            return Err(OrderError::CyclicRelation(vec![ids[u].clone()]));
        }
        if !direct_below[u].contains(&l) {
            direct_below[u].push(l);
            direct_above[l].push(u);
        }
    }
    for list in direct_below.iter_mut() {
        list.sort_unstable();
    }

    // Kahn: an orbit is ready once everything directly below it is placed.
    let mut pending: Vec<usize> = direct_below.iter().map(Vec::len).collect();
    let mut ready: Vec<usize> = (0..n).rev().filter(|&v| pending[v] == 0).collect();
    let mut topo = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        topo.push(v);
        for &u in &direct_above[v] {
            pending[u] -= 1;
            if pending[u] == 0 {
                ready.push(u);
            }
        }
    }
    if topo.len() < n {
        return Err(OrderError::CyclicRelation(find_cycle(&direct_below, &pending, &ids)));
    }

    let mut below: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for &v in &topo {
        let mut acc = BitSet::new(n);
        for &l in &direct_below[v] {
            acc.insert(l);
            acc.union_with(&below[l]);
        }
        below[v] = acc;
    }

    Ok(OrderRelation {
        ids,
        position,
        direct_below,
        below,
        topo,
    })
}

/// Every orbit left over by Kahn's pass has a leftover orbit directly below
/// it, so walking downwards must revisit something.
fn find_cycle(direct_below: &[Vec<usize>], pending: &[usize], ids: &[OrbitId]) -> Vec<OrbitId> {
    let Some(start) = (0..pending.len()).find(|&v| pending[v] > 0) else {
        return Vec::new();
    };
    let mut seen_at = HashMap::new();
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if let Some(&at) = seen_at.get(&v) {
            let mut cycle: Vec<OrbitId> = path[at..].iter().map(|&p: &usize| ids[p].clone()).collect();
            // walked downwards; report lowest first
            cycle.reverse();
            return cycle;
        }
        seen_at.insert(v, path.len());
        path.push(v);
        v = *direct_below[v]
            .iter()
            .find(|&&l| pending[l] > 0)
            .expect("leftover orbit has a leftover predecessor");
    }
}

/// Which steps a chain may take when measuring behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainSteps {
    /// Raw intersection edges only.
    Direct,
    /// Any pair of the closed relation.
    Closed,
}

/// `beh(upper | lower)`: the length of the longest chain
/// `lower = O_0 ≺ O_1 ≺ … ≺ O_k = upper`, or 0 when `lower ⊀ upper`.
pub fn behaviour(order: &OrderRelation, upper: &OrbitId, lower: &OrbitId) -> Result<u32, OrderError> {
    behaviour_with(order, upper, lower, ChainSteps::Direct)
}

pub fn behaviour_with(
    order: &OrderRelation,
    upper: &OrbitId,
    lower: &OrbitId,
    steps: ChainSteps,
) -> Result<u32, OrderError> {
    let u = order.pos(upper)?;
    let l = order.pos(lower)?;
    if !order.precedes_at(l, u) {
        return Ok(0);
    }
    // longest[v]: longest chain from `lower` up to v, when one exists
    let mut longest: Vec<Option<u32>> = vec![None; order.len()];
    longest[l] = Some(0);
    for &v in order.topological_order() {
        if v == l || !order.precedes_at(l, v) {
            continue;
        }
        let best = match steps {
            ChainSteps::Direct => order.direct_below[v].iter().filter_map(|&p| longest[p]).max(),
            ChainSteps::Closed => order.below[v].iter().filter_map(|p| longest[p]).max(),
        };
        longest[v] = best.map(|b| b + 1);
        if v == u {
            break;
        }
    }
    Ok(longest[u].unwrap_or(0))
}

/// `b_O` for every orbit, aligned with `diagram.orbits`: the longest chain
/// from any sink up to the orbit.
pub fn behaviour_indices(diagram: &Diagram, order: &OrderRelation) -> Vec<u32> {
    let n = order.len();
    let mut from_sink: Vec<Option<u32>> = vec![None; n];
    for &v in order.topological_order() {
        from_sink[v] = if diagram.orbits[v].is_sink() {
            Some(0)
        } else {
            order.direct_below[v]
                .iter()
                .filter_map(|&p| from_sink[p])
                .max()
                .map(|b| b + 1)
        };
    }
    from_sink.into_iter().map(|b| b.unwrap_or(0)).collect()
}

pub fn behaviour_index(diagram: &Diagram, order: &OrderRelation, orbit: &OrbitId) -> Result<u32, OrderError> {
    let pos = order.pos(orbit)?;
    Ok(behaviour_indices(diagram, order)[pos])
}

/// A numbering `O_1, …, O_kf` of the periodic orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Numbering {
    order: Vec<OrbitId>,
}

impl Numbering {
    pub fn new(order: Vec<OrbitId>) -> Self {
        Numbering { order }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `O_i` for 1-based `i`.
    pub fn get(&self, i: usize) -> Option<&OrbitId> {
        i.checked_sub(1).and_then(|k| self.order.get(k))
    }

    /// 1-based position of an orbit.
    pub fn position(&self, id: &OrbitId) -> Option<usize> {
        self.order.iter().position(|o| o == id).map(|k| k + 1)
    }

    pub fn positions(&self) -> HashMap<&OrbitId, usize> {
        self.order.iter().enumerate().map(|(k, id)| (id, k + 1)).collect()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, OrbitId> {
        self.order.iter()
    }

    pub fn as_slice(&self) -> &[OrbitId] {
        &self.order
    }
}

/// Sorts orbits by Morse index, then behaviour index, then id.
pub fn canonical_numbering(diagram: &Diagram, order: &OrderRelation) -> Numbering {
    let b = behaviour_indices(diagram, order);
    let mut keyed: Vec<(u8, u32, &OrbitId)> = diagram
        .orbits
        .iter()
        .zip(&b)
        .map(|(o, &b)| (o.index, b, &o.id))
        .collect();
    keyed.sort();
    Numbering::new(keyed.into_iter().map(|(_, _, id)| id.clone()).collect())
}

/// Number of dynamical numberings: the product of `n!` over classes of equal
/// `(index, behaviour index)`.
pub fn count_numberings(diagram: &Diagram, order: &OrderRelation) -> BigUint {
    let b = behaviour_indices(diagram, order);
    let mut classes: HashMap<(u8, u32), u32> = HashMap::new();
    for (o, &b) in diagram.orbits.iter().zip(&b) {
        *classes.entry((o.index, b)).or_default() += 1;
    }
    classes
        .values()
        .flat_map(|&size| 1..=size)
        .fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// The numbering of the inverse map's orbits, `Õ_i = O_{kf + 1 - i}`.
pub fn induced_inverse_numbering(numbering: &Numbering) -> Numbering {
    Numbering::new(numbering.order.iter().rev().cloned().collect())
}

/// A way a numbering fails to be dynamical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NumberingDefect {
    /// Not a bijection onto the orbit set.
    NotABijection,
    /// Lower Morse index numbered after higher.
    IndexOrder { earlier: OrbitId, later: OrbitId },
    /// Same Morse index, lower behaviour numbered after higher.
    BehaviourOrder { earlier: OrbitId, later: OrbitId },
    /// `lower ≺ upper` but `upper` numbered first.
    BreaksOrder { lower: OrbitId, upper: OrbitId },
}

/// Checks both dynamical-numbering conditions and order preservation.
pub fn numbering_defects(diagram: &Diagram, order: &OrderRelation, numbering: &Numbering) -> Vec<NumberingDefect> {
    let n = diagram.orbits.len();
    let mut seq = Vec::with_capacity(n);
    for id in numbering.iter() {
        match order.position_of(id) {
            Some(p) => seq.push(p),
            None => return vec![NumberingDefect::NotABijection],
        }
    }
    let mut seen = vec![false; n];
    for &p in &seq {
        if std::mem::replace(&mut seen[p], true) {
            return vec![NumberingDefect::NotABijection];
        }
    }
    if seq.len() != n {
        return vec![NumberingDefect::NotABijection];
    }

    let b = behaviour_indices(diagram, order);
    let q = |p: usize| diagram.orbits[p].index;
    let mut defects = Vec::new();
    for (a, &x) in seq.iter().enumerate() {
        for &y in &seq[a + 1..] {
            // x is numbered before y
            let (earlier, later) = (order.ids()[x].clone(), order.ids()[y].clone());
            if q(y) < q(x) {
                defects.push(NumberingDefect::IndexOrder { earlier, later });
            } else if q(y) == q(x) && b[y] < b[x] {
                defects.push(NumberingDefect::BehaviourOrder { earlier, later });
            } else if order.precedes_at(y, x) {
                defects.push(NumberingDefect::BreaksOrder {
                    lower: later,
                    upper: earlier,
                });
            }
        }
    }
    defects
}
