//! The graded algebra on oriented circle diagrams.
//!
//! Two multiplications are provided. [`multiply`] closes rays into cups and
//! runs surgery on polynomial states in the tag variables; [`multiply_reference`]
//! applies the merge and split rules to explicit orientations of the same
//! closed diagram. They share nothing but the diagram topology, so each checks
//! the other.

mod elements;
mod reference;
mod surgery;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub use elements::{Coeff, Element, LinComb, RatElement};
pub use surgery::Schedule;

use crate::diagrams::{circle_diagram, cup_diagram, half_degree, CupDiagram, Vertex};
use crate::error::{Error, Result};
use crate::weights::{Block, Weight};

/// The oriented circle diagram `λ̲νμ̄`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisVector {
    pub lambda: Weight,
    pub nu: Weight,
    pub mu: Weight,
}

impl BasisVector {
    pub fn new(lambda: Weight, nu: Weight, mu: Weight) -> Result<BasisVector> {
        let b = BasisVector { lambda, nu, mu };
        if b.lambda.block() != b.nu.block() || b.mu.block() != b.nu.block() {
            return Err(Error::BlockMismatch(b.lambda.to_string(), b.mu.to_string()));
        }
        if b.try_degree().is_none() {
            return Err(Error::NotOriented(b.to_string()));
        }
        Ok(b)
    }

    fn try_degree(&self) -> Option<u32> {
        Some(half_degree(&cup_diagram(&self.lambda), &self.nu)? + half_degree(&cup_diagram(&self.mu), &self.nu)?)
    }

    pub fn degree(&self) -> u32 {
        self.try_degree().expect("basis vectors are oriented")
    }

    pub fn block(&self) -> Block {
        self.nu.block()
    }

    pub fn star(&self) -> BasisVector {
        BasisVector {
            lambda: self.mu.clone(),
            nu: self.nu.clone(),
            mu: self.lambda.clone(),
        }
    }

    /// The idempotent `λ̲λλ̄`.
    pub fn idempotent(lambda: &Weight) -> BasisVector {
        BasisVector {
            lambda: lambda.clone(),
            nu: lambda.clone(),
            mu: lambda.clone(),
        }
    }

    /// Reverse the orientation of the circle through `(pos, 0)`; `None` on a line.
    pub fn reversed_at(&self, pos: usize) -> Option<BasisVector> {
        let d = circle_diagram(&self.lambda, &self.mu).ok()?;
        let t = d.topology();
        let c = t.component_of(Vertex { pos, level: 0 });
        if t.components[c].kind != crate::diagrams::ComponentKind::Circle {
            return None;
        }
        let mut syms = self.nu.symbols().to_vec();
        for v in &t.components[c].vertices {
            syms[v.pos - 1] = syms[v.pos - 1].flipped();
        }
        Some(BasisVector {
            lambda: self.lambda.clone(),
            nu: Weight::new(syms),
            mu: self.mu.clone(),
        })
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.lambda, self.nu, self.mu)
    }
}

impl fmt::Debug for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for BasisVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<BasisVector> {
        let parts: Vec<&str> = s.trim().split(';').collect();
        let [l, n, m] = parts.as_slice() else {
            return Err(Error::Parse {
                what: "basis vector",
                input: s.to_string(),
            });
        };
        BasisVector::new(l.parse()?, n.parse()?, m.parse()?)
    }
}

/// All oriented circle diagrams of a block: ordered by `λ`, then `μ`, then
/// degree, then `ν`.
pub fn basis(block: &Block) -> Vec<BasisVector> {
    let weights = block.enumerate();
    let cups: Vec<CupDiagram> = weights.iter().map(cup_diagram).collect();
    // orients[i] = indices of ν with λ_i ⊂ ν, with degree
    let orients: Vec<Vec<(usize, u32)>> = cups
        .iter()
        .map(|c| {
            weights
                .iter()
                .enumerate()
                .filter_map(|(j, nu)| half_degree(c, nu).map(|d| (j, d)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for (li, lam) in weights.iter().enumerate() {
        for (mi, mu) in weights.iter().enumerate() {
            let mut here: Vec<(u32, usize)> = Vec::new();
            for &(nj, d1) in &orients[li] {
                if let Some(&(_, d2)) = orients[mi].iter().find(|(j, _)| *j == nj) {
                    here.push((d1 + d2, nj));
                }
            }
            here.sort();
            for (_, nj) in here {
                out.push(BasisVector {
                    lambda: lam.clone(),
                    nu: weights[nj].clone(),
                    mu: mu.clone(),
                });
            }
        }
    }
    out
}

/// Product of two basis vectors by closed surgery, rightmost cup first.
pub fn multiply(x: &BasisVector, y: &BasisVector) -> Result<Element> {
    multiply_scheduled(x, y, &mut Schedule::Canonical)
}

/// Product of two basis vectors with an explicit surgery schedule.
pub fn multiply_scheduled(x: &BasisVector, y: &BasisVector, schedule: &mut Schedule) -> Result<Element> {
    let block = x.block();
    if y.block() != block {
        return Err(Error::BlockMismatch(x.to_string(), y.to_string()));
    }
    if x.mu != y.lambda {
        return Ok(Element::zero());
    }
    surgery::product(
        &block,
        &x.lambda,
        &[Layer::from(x.mu.clone())],
        &y.mu,
        &[x.nu.clone(), y.nu.clone()],
        schedule,
    )
}

fn reference_pair(x: &BasisVector, y: &BasisVector, close: bool) -> Result<Element> {
    let block = x.block();
    if y.block() != block {
        return Err(Error::BlockMismatch(x.to_string(), y.to_string()));
    }
    if x.mu != y.lambda {
        return Ok(Element::zero());
    }
    reference::product(
        &block,
        &x.lambda,
        &[Layer::from(x.mu.clone())],
        &y.mu,
        &[x.nu.clone(), y.nu.clone()],
        close,
    )
}

/// Product by the diagrammatic merge and split rules on labelled diagrams.
pub fn multiply_reference(x: &BasisVector, y: &BasisVector) -> Result<Element> {
    reference_pair(x, y, true)
}

/// The diagrammatic rules applied with lines left open: reconnects and
/// line merges and splits instead of closure. Not associative in general;
/// exposed only to measure how far it is from [`multiply`].
pub fn multiply_line_rules(x: &BasisVector, y: &BasisVector) -> Result<Element> {
    reference_pair(x, y, false)
}

/// One internal piece of a stacked diagram: the cup diagram of `weight`
/// (closed like every other level) with the listed cup-cap pairs already
/// cut into vertical lines by earlier surgeries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub weight: Weight,
    pub cut: Vec<(usize, usize)>,
}

impl Layer {
    pub fn new(weight: Weight, cut: Vec<(usize, usize)>) -> Layer {
        Layer { weight, cut }
    }

    /// The closed internal diagram on `n + s` positions.
    pub(crate) fn closed(&self, n: usize, s: usize) -> CupDiagram {
        let mut d = cup_diagram(&self.weight.padded(n, &ups(s)));
        for &(i, j) in &self.cut {
            d = d.cut(i, j);
        }
        d
    }
}

impl From<Weight> for Layer {
    fn from(weight: Weight) -> Layer {
        Layer { weight, cut: Vec::new() }
    }
}

/// Surgery on an oriented stacked diagram that occurs part way through a
/// product: a bottom cup diagram, internal layers whose weights share the
/// block diagram, a top cap diagram, and one label weight per level.
pub fn multiply_stacked(bottom: &Weight, internal: &[Layer], top: &Weight, labels: &[Weight]) -> Result<Element> {
    multiply_stacked_scheduled(bottom, internal, top, labels, &mut Schedule::Canonical)
}

/// [`multiply_stacked`] with an explicit surgery schedule.
pub fn multiply_stacked_scheduled(
    bottom: &Weight,
    internal: &[Layer],
    top: &Weight,
    labels: &[Weight],
    schedule: &mut Schedule,
) -> Result<Element> {
    let block = bottom.block();
    if top.block() != block {
        return Err(Error::BlockMismatch(bottom.to_string(), top.to_string()));
    }
    let theta = block.theta();
    for w in internal.iter().map(|l| &l.weight).chain(labels) {
        if w.block().theta() != theta {
            return Err(Error::BlockMismatch(bottom.to_string(), w.to_string()));
        }
    }
    surgery::product(&block, bottom, internal, top, labels, schedule)
}

/// The reference engine on a stacked diagram, for cross-checking.
pub fn multiply_stacked_reference(
    bottom: &Weight,
    internal: &[Layer],
    top: &Weight,
    labels: &[Weight],
) -> Result<Element> {
    let block = bottom.block();
    reference::product(&block, bottom, internal, top, labels, true)
}

pub fn star<C: Coeff>(e: &LinComb<C>) -> LinComb<C> {
    e.star()
}

/// A block's algebra with its basis and a memoised table of basis products.
pub struct Algebra {
    block: Block,
    basis: Vec<BasisVector>,
    index: HashMap<BasisVector, usize>,
    table: RwLock<HashMap<(usize, usize), Arc<Element>>>,
}

impl Algebra {
    pub fn new(block: &Block) -> Algebra {
        let basis = self::basis(block);
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Algebra {
            block: block.clone(),
            basis,
            index,
            table: RwLock::new(HashMap::new()),
        }
    }

    pub fn block(&self) -> &Block {
        &self.block
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, b: &BasisVector) -> Option<usize> {
        self.index.get(b).copied()
    }

    /// Product of the `i`-th and `j`-th basis vectors.
    pub fn product(&self, i: usize, j: usize) -> Arc<Element> {
        if let Some(e) = self.table.read().unwrap().get(&(i, j)) {
            return e.clone();
        }
        let e = Arc::new(multiply(&self.basis[i], &self.basis[j]).expect("same block"));
        self.table.write().unwrap().insert((i, j), e.clone());
        e
    }

    pub fn mul<C: Coeff>(&self, a: &LinComb<C>, b: &LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (x, cx) in a.terms() {
            let i = self.index[x];
            for (y, cy) in b.terms() {
                if x.mu != y.lambda {
                    continue;
                }
                let j = self.index[y];
                let c = cx.clone() * cy.clone();
                for (z, cz) in self.product(i, j).terms() {
                    out.add_term(z.clone(), c.clone() * C::from(cz.clone()));
                }
            }
        }
        out
    }

    /// Left-to-right product of several elements.
    pub fn mul_all<C: Coeff>(&self, factors: &[&LinComb<C>]) -> LinComb<C> {
        let mut it = factors.iter();
        let first = it.next().map(|e| (*e).clone()).unwrap_or_else(|| self.unit());
        it.fold(first, |acc, e| self.mul(&acc, e))
    }

    pub fn unit<C: Coeff>(&self) -> LinComb<C> {
        let mut e = LinComb::zero();
        for w in self.block.enumerate() {
            e.add_term(BasisVector::idempotent(&w), C::one());
        }
        e
    }

    pub fn basis_element<C: Coeff>(&self, i: usize) -> LinComb<C> {
        LinComb::basis(self.basis[i].clone())
    }
}

/// `𝟙_λ`.
pub fn one(lambda: &Weight) -> Element {
    Element::basis(BasisVector::idempotent(lambda))
}

/// `₍λ₎𝟙₍μ₎` for weights related by a λ-pair in either direction.
pub fn pair_one(lambda: &Weight, mu: &Weight) -> Result<Element> {
    let pair = crate::quiver::pair_between(lambda, mu)?;
    Ok(Element::basis(BasisVector::new(lambda.clone(), pair.target.clone(), mu.clone())?))
}

/// `₍λ₎X₍μ₎`: `₍λ₎𝟙₍μ₎` with the circle through the defining cup reversed.
pub fn pair_x(lambda: &Weight, mu: &Weight) -> Result<Element> {
    let pair = crate::quiver::pair_between(lambda, mu)?;
    let b = BasisVector::new(lambda.clone(), pair.target.clone(), mu.clone())?;
    Ok(match b.reversed_at(pair.left) {
        Some(r) => Element::basis(r),
        None => Element::zero(),
    })
}

/// `X_{i,λ}`: `𝟙_λ` with the circle through `i` reversed, signed by the path
/// from `i` to the circle's tag. Zero when `i` lies on a line.
pub fn x_element(i: usize, lambda: &Weight) -> Result<Element> {
    let block = lambda.block();
    block.p(i)?;
    let b = BasisVector::idempotent(lambda);
    let d = circle_diagram(lambda, lambda)?;
    let t = d.topology();
    let v = Vertex { pos: i, level: 0 };
    Ok(match b.reversed_at(i) {
        Some(r) => {
            let mut e = Element::zero();
            e.add_term(r, BigInt::from(t.sign_to_tag(v)));
            e
        }
        None => Element::zero(),
    })
}

pub(crate) fn ups(n: usize) -> Vec<crate::weights::Symbol> {
    vec![crate::weights::Symbol::Up; n]
}

#[cfg(test)]
mod tests;
