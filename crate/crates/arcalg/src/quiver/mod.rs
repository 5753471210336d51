//! Lambda-pairs, the Ext quiver, diamonds, and Braden's presentation.

mod braden;
mod diamonds;

use std::collections::BTreeSet;
use std::fmt;

use petgraph::dot::{Config, Dot};
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::algebra::basis;
use crate::diagrams::{cup_diagram, half_degree};
use crate::error::{Error, Result};
use crate::verify::Check;
use crate::weights::{bruhat_leq, Block, Symbol, Weight};

pub use braden::{phi, relation_list_signs, verify_braden, verify_braden_in, BradenReport, Generator, SignSearch};
pub use diamonds::{diamonds, is_diamond, triple_status, TripleStatus};

/// The signed pair attached to a cup of `λ̲`, with the weight obtained by
/// swapping the cup's labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct LambdaPair {
    pub alpha: i64,
    pub beta: i64,
    pub source: Weight,
    pub target: Weight,
    pub left: usize,
    pub right: usize,
    pub dotted: bool,
}

impl fmt::Display for LambdaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}) {} -> {}", self.alpha, self.beta, self.source, self.target)
    }
}

pub fn lambda_pairs(lambda: &Weight) -> Vec<LambdaPair> {
    let block = lambda.block();
    let p = |i: usize| block.p(i).expect("cup endpoints are diamonds") as i64;
    cup_diagram(lambda)
        .cups()
        .into_iter()
        .map(|(l, r, dotted)| {
            let (a, b) = if dotted {
                (Symbol::Down, Symbol::Down)
            } else {
                (Symbol::Up, Symbol::Down)
            };
            LambdaPair {
                alpha: if dotted { -p(l) } else { p(l) },
                beta: p(r),
                source: lambda.clone(),
                target: lambda.with(l, a).with(r, b),
                left: l,
                right: r,
                dotted,
            }
        })
        .collect()
}

/// The λ-pair relating two weights, taken from the smaller one.
pub fn pair_between(a: &Weight, b: &Weight) -> Result<LambdaPair> {
    lambda_pairs(a)
        .into_iter()
        .find(|p| &p.target == b)
        .or_else(|| lambda_pairs(b).into_iter().find(|p| &p.target == a))
        .ok_or_else(|| Error::NotLambdaPair(a.to_string(), b.to_string()))
}

/// `λ ↔ μ`.
pub fn related(a: &Weight, b: &Weight) -> bool {
    pair_between(a, b).is_ok()
}

/// All `μ` with `λ ↔ μ`, sorted.
pub fn neighbours(lambda: &Weight) -> Vec<Weight> {
    let mut out: BTreeSet<Weight> = lambda_pairs(lambda).into_iter().map(|p| p.target).collect();
    // weights whose pair lands on λ: undo an undotted (∧∨) or dotted (∨∨) swap
    let free = lambda.free_positions();
    for (x, &l) in free.iter().enumerate() {
        for &r in &free[x + 1..] {
            let (sl, sr) = (lambda.get(l), lambda.get(r));
            let (src, dotted) = match (sl, sr) {
                (Symbol::Up, Symbol::Down) => (lambda.with(l, Symbol::Down).with(r, Symbol::Up), false),
                (Symbol::Down, Symbol::Down) => (lambda.with(l, Symbol::Up).with(r, Symbol::Up), true),
                _ => continue,
            };
            if cup_diagram(&src).partner(l) == Some((r, dotted)) {
                out.insert(src);
            }
        }
    }
    out.into_iter().collect()
}

/// The parent of a λ-pair: the minimal cup containing its cup, otherwise
/// the leftmost dotted cup to its right.
pub fn parent(lambda: &Weight, pair: &LambdaPair) -> Option<LambdaPair> {
    let pairs = lambda_pairs(lambda);
    let containing = pairs
        .iter()
        .filter(|q| q.left < pair.left && pair.right < q.right)
        .min_by_key(|q| q.right - q.left);
    if let Some(q) = containing {
        return Some(q.clone());
    }
    pairs
        .iter()
        .filter(|q| q.dotted && q.left > pair.right)
        .min_by_key(|q| q.left)
        .cloned()
}

/// The Ext quiver of a block: one arrow each way per λ-pair.
#[derive(Clone, Debug, Serialize)]
pub struct Quiver {
    pub vertices: Vec<Weight>,
    /// `(source, target)` vertex indices, sorted.
    pub arrows: Vec<(usize, usize)>,
}

pub fn quiver(block: &Block) -> Quiver {
    let vertices = block.enumerate();
    let index = |w: &Weight| vertices.iter().position(|v| v == w).expect("pair targets stay in the block");
    let mut arrows = BTreeSet::new();
    for (i, w) in vertices.iter().enumerate() {
        for p in lambda_pairs(w) {
            let j = index(&p.target);
            arrows.insert((i, j));
            arrows.insert((j, i));
        }
    }
    Quiver {
        vertices,
        arrows: arrows.into_iter().collect(),
    }
}

impl Quiver {
    pub fn graph(&self) -> DiGraph<String, ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = self.vertices.iter().map(|w| g.add_node(w.to_string())).collect();
        for &(a, b) in &self.arrows {
            g.add_edge(nodes[a], nodes[b], ());
        }
        g
    }

    pub fn to_dot(&self) -> String {
        let g = self.graph().map(|_, n| n.clone(), |_, _| "");
        format!("{}", Dot::with_config(&g, &[Config::EdgeNoLabel]))
    }

    pub fn has_arrow(&self, a: usize, b: usize) -> bool {
        self.arrows.binary_search(&(a, b)).is_ok()
    }
}

/// The quiver's arrows are exactly the degree one pairs `λ < μ` (with
/// transposes), and each arrow matches one degree one basis vector.
pub fn arrow_checks(block: &Block) -> Vec<Check> {
    let q = quiver(block);
    let ws = &q.vertices;
    let mut fail = None;
    let mut count = 0;
    for (i, a) in ws.iter().enumerate() {
        for (j, b) in ws.iter().enumerate() {
            count += 1;
            let (lo, hi) = if bruhat_leq(a, b) { (a, b) } else { (b, a) };
            let deg_one = i != j && bruhat_leq(lo, hi) && half_degree(&cup_diagram(lo), hi) == Some(1);
            if q.has_arrow(i, j) != deg_one && fail.is_none() {
                fail = Some(format!("{a} -> {b}: arrow {} but degree one pair {deg_one}", q.has_arrow(i, j)));
            }
        }
    }
    let criterion = Check::new("arrows are degree one Bruhat pairs", count, fail);
    let degree_one = basis(block).into_iter().filter(|x| x.degree() == 1 && x.lambda != x.mu).count();
    let fail = (degree_one != q.arrows.len())
        .then(|| format!("{} arrows but {degree_one} degree one basis vectors off the diagonal", q.arrows.len()));
    vec![criterion, Check::new("arrows match degree one basis vectors", q.arrows.len(), fail)]
}

#[cfg(test)]
mod tests;
