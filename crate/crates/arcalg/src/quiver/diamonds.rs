use std::collections::BTreeSet;

use serde::Serialize;

use super::{neighbours, related};
use crate::error::{Error, Result};
use crate::weights::{Block, Symbol, Weight};

/// Whether four weights form a diamond: pairwise distinct, cyclically related.
pub fn is_diamond(d: &[Weight; 4]) -> bool {
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| d[i] != d[j]));
    distinct && (0..4).all(|i| related(&d[i], &d[(i + 1) % 4]))
}

/// Diamonds of a block, one per equivalence class. Each is the dihedral
/// representative that is smallest in canonical block order.
pub fn diamonds(block: &Block) -> Vec<[Weight; 4]> {
    let weights = block.enumerate();
    let pos = |w: &Weight| weights.iter().position(|v| v == w).expect("in block");
    let nbrs: Vec<Vec<usize>> = weights.iter().map(|w| neighbours(w).iter().map(pos).collect()).collect();
    let mut found = BTreeSet::new();
    for a in 0..weights.len() {
        for &b in &nbrs[a] {
            for &d in &nbrs[a] {
                if b == d {
                    continue;
                }
                for &c in &nbrs[b] {
                    if c != a && c != d && nbrs[d].contains(&c) {
                        found.insert(canonical([a, b, c, d]));
                    }
                }
            }
        }
    }
    found
        .into_iter()
        .map(|q| q.map(|i| weights[i].clone()))
        .collect()
}

/// Smallest of the eight rotations and reflections of a 4-cycle.
fn canonical(q: [usize; 4]) -> [usize; 4] {
    let mut best = q;
    for r in 0..4 {
        let rot = [q[r], q[(r + 1) % 4], q[(r + 2) % 4], q[(r + 3) % 4]];
        let refl = [rot[0], rot[3], rot[2], rot[1]];
        best = best.min(rot).min(refl);
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TripleStatus {
    /// Completed by the given fourth weight inside the block.
    Extendable(Weight),
    /// Completed only after padding with `left` ∨'s and `right` ∧'s.
    Enlargeable { left: usize, right: usize },
    /// No completion within the search bound.
    Neither,
}

fn fourth(l1: &Weight, l2: &Weight, l3: &Weight) -> Option<Weight> {
    let n3 = neighbours(l3);
    neighbours(l1)
        .into_iter()
        .find(|w| w != l2 && n3.binary_search(w).is_ok())
}

fn pad(w: &Weight, left: usize, right: usize) -> Weight {
    let mut v = vec![Symbol::Down; left];
    v.extend_from_slice(w.symbols());
    v.extend(std::iter::repeat_n(Symbol::Up, right));
    Weight::new(v)
}

/// Paddings tried by [`triple_status`], smallest total first. Only an even
/// number of ∧'s keeps the parity of the block.
pub(crate) fn paddings(max_extension: usize) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = (0..=max_extension)
        .flat_map(|a| (0..=max_extension).map(move |b| (a, 2 * b)))
        .filter(|&p| p != (0, 0))
        .collect();
    v.sort_by_key(|&(a, b)| (a + b, b));
    v
}

/// Classify a chain `λ¹ ↔ λ² ↔ λ³` with `λ¹ ≠ λ³`.
pub fn triple_status(l1: &Weight, l2: &Weight, l3: &Weight, max_extension: usize) -> Result<TripleStatus> {
    if l1 == l3 || !related(l1, l2) || !related(l2, l3) {
        return Err(Error::NotChained);
    }
    if let Some(w) = fourth(l1, l2, l3) {
        return Ok(TripleStatus::Extendable(w));
    }
    for (left, right) in paddings(max_extension) {
        let [a, b, c] = [l1, l2, l3].map(|w| pad(w, left, right));
        if fourth(&a, &b, &c).is_some() {
            return Ok(TripleStatus::Enlargeable { left, right });
        }
    }
    Ok(TripleStatus::Neither)
}
