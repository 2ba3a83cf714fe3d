//! Brute-force reference implementations, independent of the library's
//! algorithms. Each works directly from the raw diagram fields.

#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use morse_smale::{Diagram, OrbitId};

/// `reach[l][u]` iff `orbit l ≺ orbit u`, by Floyd–Warshall on raw edges.
pub fn closure(d: &Diagram) -> Vec<Vec<bool>> {
    let n = d.orbits.len();
    let at: HashMap<&OrbitId, usize> = d.orbits.iter().enumerate().map(|(k, o)| (&o.id, k)).collect();
    let mut reach = vec![vec![false; n]; n];
    for e in &d.edges {
        reach[at[&e.lower]][at[&e.upper]] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (to, r) in via.into_iter().zip(reach[i].iter_mut()) {
                    *r |= to;
                }
            }
        }
    }
    reach
}

/// Longest chain `lower = O_0 ≺ … ≺ O_k = upper` over all chains of
/// distinct orbits, by exhaustive depth-first enumeration; 0 without one.
pub fn behaviour(reach: &[Vec<bool>], upper: usize, lower: usize) -> u32 {
    fn extend(reach: &[Vec<bool>], cur: usize, target: usize, used: &mut Vec<bool>, len: u32, best: &mut u32) {
        if cur == target {
            *best = (*best).max(len);
            return;
        }
        for next in 0..reach.len() {
            if !used[next] && reach[cur][next] {
                used[next] = true;
                extend(reach, next, target, used, len + 1, best);
                used[next] = false;
            }
        }
    }
    if upper == lower || !reach[lower][upper] {
        return 0;
    }
    let mut used = vec![false; reach.len()];
    used[lower] = true;
    let mut best = 0;
    extend(reach, lower, upper, &mut used, 0, &mut best);
    best
}

/// `b_O = max over sinks p of beh(O | p)`, aligned with `d.orbits`.
pub fn behaviour_indices(d: &Diagram) -> Vec<u32> {
    let reach = closure(d);
    (0..d.orbits.len())
        .map(|u| {
            (0..d.orbits.len())
                .filter(|&p| d.orbits[p].index == 0)
                .map(|p| behaviour(&reach, u, p))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

fn permutations(n: usize, visit: &mut dyn FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut dyn FnMut(&[usize])) {
        if prefix.len() == used.len() {
            visit(prefix);
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                go(prefix, used, visit);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], visit);
}

/// Permutations of the orbits that sort by Morse index, then behaviour, and
/// that put every `O_i ≺ O_j` with `i` first.
pub fn count_numberings(d: &Diagram) -> u64 {
    let b = behaviour_indices(d);
    let reach = closure(d);
    let q: Vec<u8> = d.orbits.iter().map(|o| o.index).collect();
    let mut count = 0u64;
    permutations(d.orbits.len(), &mut |perm| {
        let sorted = perm.windows(2).all(|w| (q[w[0]], b[w[0]]) <= (q[w[1]], b[w[1]]));
        let preserves = (0..perm.len()).all(|i| (i + 1..perm.len()).all(|j| !reach[perm[j]][perm[i]]));
        if sorted && preserves {
            count += 1;
        }
    });
    count
}

/// `(c, r, s, g)` of the first `i` orbits of `numbering`, with components
/// found by breadth-first search over separatrix incidences.
pub fn attractor_row(
    d: &Diagram,
    records: &[morse_smale::SeparatrixRecord],
    numbering: &[OrbitId],
    i: usize,
) -> (u64, u64, u64, i64) {
    let included: Vec<&OrbitId> = numbering[..i].iter().collect();
    let mut vertices: Vec<(OrbitId, u32)> = Vec::new();
    let (mut r, mut s) = (0u64, 0u64);
    for id in &included {
        let o = d.orbits.iter().find(|o| &&o.id == id).unwrap();
        for p in 0..o.period {
            vertices.push((o.id.clone(), p));
        }
        if o.period > 0 && (o.index == 0 || o.index == 3) {
            s += u64::from(o.period);
        } else {
            r += u64::from(o.period);
        }
    }
    let at: HashMap<(OrbitId, u32), usize> = vertices.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    for rec in records {
        let from = (rec.saddle_point.orbit.clone(), rec.saddle_point.point);
        let Some(&a) = at.get(&from) else { continue };
        for t in rec.branch_targets.iter().flatten() {
            if let Some(&b) = at.get(&(t.orbit.clone(), t.point)) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    let mut seen = vec![false; vertices.len()];
    let mut c = 0u64;
    for start in 0..vertices.len() {
        if seen[start] {
            continue;
        }
        c += 1;
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    (c, r, s, c as i64 + r as i64 - s as i64)
}

/// Number of orbits with Morse index 0 or 1.
pub fn k1(d: &Diagram) -> usize {
    d.orbits.iter().filter(|o| o.index <= 1).count()
}

/// Points per Morse index, summed by hand.
pub fn points(d: &Diagram) -> [i64; 4] {
    let mut p = [0i64; 4];
    for o in &d.orbits {
        p[o.index as usize] += i64::from(o.period);
    }
    p
}
