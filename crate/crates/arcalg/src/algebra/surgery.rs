//! Surgery on polynomial states over a ray-closed stacked diagram.
//!
//! Every level is extended by `s` extra diamond positions labelled up, so all
//! rays close into cups and every component is a circle. Results with a down
//! label on an extra position are dropped. A state is a sum
//! of square-free monomials in the tag variables; a clockwise circle
//! contributes its tag.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{BasisVector, Element, Layer};
use crate::diagrams::{cup_diagram, stacked_degree, ComponentKind, CupDiagram, Stacked, Topology, Vertex};
use crate::error::{Error, Result};
use crate::weights::{Block, Slot, Symbol, Weight};

type Monomial = Vec<Vertex>;
type State = BTreeMap<Monomial, BigInt>;

/// Order in which available surgeries are performed.
pub enum Schedule<'a> {
    /// Rightmost available cup first.
    Canonical,
    /// Uniformly random among the available cups.
    Random(&'a mut ChaCha8Rng),
}

/// One pending surgery: cup `(i, j)` of internal diagram `level` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Site {
    pub i: usize,
    pub j: usize,
    pub level: usize,
    pub dotted: bool,
}

/// Cups that may be cut next: not nested in another cup of the same internal
/// diagram, with no dotted arc of that diagram to their right.
pub(crate) fn available(internal: &[CupDiagram]) -> Vec<Site> {
    let mut out = Vec::new();
    for (idx, a) in internal.iter().enumerate() {
        for (i, j, dotted) in a.cups() {
            if !a.is_nested(i, j) && !a.dotted_right_of(j) {
                out.push(Site {
                    i,
                    j,
                    level: idx + 1,
                    dotted,
                });
            }
        }
    }
    out
}

pub(crate) fn choose(sites: &[Site], schedule: &mut Schedule) -> Site {
    match schedule {
        Schedule::Canonical => *sites
            .iter()
            .max_by(|a, b| a.j.cmp(&b.j).then(b.level.cmp(&a.level)))
            .expect("at least one site"),
        Schedule::Random(rng) => sites[rng.gen_range(0..sites.len())],
    }
}

/// `(-1)^p(i)`.
pub(crate) fn p_sign(block: &Block, i: usize) -> i32 {
    if block.p(i).expect("surgery at a diamond").is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Close every level: each weight is extended by `s` up-labelled positions,
/// which turns all rays into cups.
fn closed(block: &Block, bottom: &Weight, internal: &[Layer], top: &Weight) -> (Stacked, usize, usize) {
    let n = block.len();
    let s = block.rank();
    let ext = |w: &Weight| cup_diagram(&w.padded(n, &super::ups(s)));
    let d = Stacked {
        bottom: ext(bottom),
        internal: internal.iter().map(|l| l.closed(n, s)).collect(),
        top: ext(top),
    };
    (d, n, s)
}

fn psi(t: &Topology, labels: &[Weight]) -> Monomial {
    let mut m: Monomial = t
        .components
        .iter()
        .filter(|c| labels[c.tag.level].get(c.tag.pos) == Symbol::Down)
        .map(|c| c.tag)
        .collect();
    m.sort();
    m
}

/// Rewrite tag variables in terms of the tags of the new diagram.
fn reexpress(new: &Topology, state: State) -> State {
    let mut out = State::new();
    'terms: for (m, c) in state {
        let mut sign = 1;
        let mut nm: Monomial = Vec::with_capacity(m.len());
        for t in m {
            let comp = &new.components[new.component_of(t)];
            sign *= new.sign_between(t, comp.tag).expect("same component");
            if nm.contains(&comp.tag) {
                continue 'terms;
            }
            nm.push(comp.tag);
        }
        nm.sort();
        add(&mut out, nm, c * sign);
    }
    out
}

fn add(state: &mut State, m: Monomial, c: BigInt) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match state.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// One surgery step; returns the new diagram and state.
pub(crate) fn step(block: &Block, d: &Stacked, t: &Topology, site: Site, state: State) -> (Stacked, Topology, State) {
    let mut d2 = d.clone();
    d2.internal[site.level - 1] = d.internal[site.level - 1].cut(site.i, site.j);
    let t2 = d2.topology();
    let below = Vertex {
        pos: site.i,
        level: site.level - 1,
    };
    let above = Vertex {
        pos: site.i,
        level: site.level,
    };
    if t.component_of(below) != t.component_of(above) {
        let s = reexpress(&t2, state);
        return (d2, t2, s);
    }
    if !t2.is_orientable() {
        return (d2, t2, State::new());
    }
    let s = reexpress(&t2, state);
    let vi = above;
    let vj = Vertex {
        pos: site.j,
        level: site.level,
    };
    let (ti, tj) = (
        t2.components[t2.component_of(vi)].tag,
        t2.components[t2.component_of(vj)].tag,
    );
    let sg = p_sign(block, site.i);
    let factor = [
        (tj, sg * t2.sign_to_tag(vj)),
        (ti, sg * t2.sign_to_tag(vi) * if site.dotted { 1 } else { -1 }),
    ];
    let mut out = State::new();
    for (m, c) in s {
        for &(v, f) in &factor {
            if m.contains(&v) {
                continue;
            }
            let mut nm = m.clone();
            nm.push(v);
            nm.sort();
            add(&mut out, nm, &c * f);
        }
    }
    (d2, t2, out)
}

/// Read a fully collapsed state back as label weights on level 0.
fn collapse(d: &Stacked, t: &Topology, state: &State) -> Vec<(Weight, BigInt)> {
    let theta = d.bottom.theta();
    let base: Vec<Symbol> = theta
        .iter()
        .map(|s| match s {
            Slot::Cross => Symbol::Cross,
            _ => Symbol::Nought,
        })
        .collect();
    let mut out = Vec::new();
    for (m, c) in state {
        let mut labels = vec![base.clone(); d.levels()];
        for (ci, comp) in t.components.iter().enumerate() {
            debug_assert_eq!(comp.kind, ComponentKind::Circle);
            let tag_label = if m.binary_search(&comp.tag).is_ok() {
                Symbol::Down
            } else {
                Symbol::Up
            };
            t.orient_component(ci, tag_label, &mut labels);
        }
        out.push((Weight::new(labels.swap_remove(0)), c.clone()));
    }
    out
}

/// Run the full product: close, cut every internal cup, collapse, project.
pub(crate) fn product(
    block: &Block,
    bottom: &Weight,
    internal: &[Layer],
    top: &Weight,
    labels: &[Weight],
    schedule: &mut Schedule,
) -> Result<Element> {
    if labels.len() != internal.len() + 1 {
        return Err(Error::NotOriented(format!("{} levels for {} internal diagrams", labels.len(), internal.len())));
    }
    let (mut d, n, s) = closed(block, bottom, internal, top);
    let theta = block.theta().iter().copied().chain(std::iter::repeat_n(Slot::Diamond, s)).collect();
    let ext_block = Block::new(theta, block.parity());
    let ext_labels: Vec<Weight> = labels.iter().map(|w| w.padded(n, &super::ups(s))).collect();
    if stacked_degree(&d, &ext_labels).is_none() {
        return Err(Error::NotOriented(
            labels.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
        ));
    }
    let mut t = d.topology();
    let mut state = State::new();
    state.insert(psi(&t, &ext_labels), BigInt::from(1));
    loop {
        let sites = available(&d.internal);
        if sites.is_empty() || state.is_empty() {
            break;
        }
        let site = choose(&sites, schedule);
        let (d2, t2, s2) = step(&ext_block, &d, &t, site, state);
        d = d2;
        t = t2;
        state = s2;
    }
    let mut out = Element::zero();
    if state.is_empty() {
        return Ok(out);
    }
    for (nu_hat, c) in collapse(&d, &t, &state) {
        if (n + 1..=n + s).any(|p| nu_hat.get(p) == Symbol::Down) {
            continue;
        }
        let nu = nu_hat.truncated(n);
        out.add_term(
            BasisVector {
                lambda: bottom.clone(),
                nu,
                mu: top.clone(),
            },
            c,
        );
    }
    Ok(out)
}
