//! Surgery by the diagrammatic merge, split and reconnect rules on labelled
//! stacked diagrams.
//!
//! With `close` set, every level is first extended by up-labelled positions
//! as in the closed engine, so only the circle rules are used. Without it,
//! lines are kept and the line rules apply; that product is not associative
//! and is kept only as a diagnostic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::surgery::{available, choose, p_sign, Schedule, Site};
use super::{BasisVector, Element, Layer};
use crate::diagrams::{cup_diagram, stacked_degree, ComponentKind, Stacked, Topology, Vertex};
use crate::error::{Error, Result};
use crate::weights::{Block, Slot, Symbol, Weight};

type Labels = Vec<Vec<Symbol>>;
type State = BTreeMap<Labels, BigInt>;

fn add(state: &mut State, l: Labels, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let e = state.entry(l.clone()).or_default();
    *e += c;
    if e.is_zero() {
        state.remove(&l);
    }
}

/// `Some(true)` for a clockwise circle, `Some(false)` anticlockwise, `None` for a line.
fn clockwise(t: &Topology, c: usize, labels: &Labels) -> Option<bool> {
    let comp = &t.components[c];
    match comp.kind {
        ComponentKind::Line => None,
        ComponentKind::Circle => Some(labels[comp.tag.level][comp.tag.pos - 1] == Symbol::Down),
    }
}

/// Orient component `c` of `t`; lines only accept the anticlockwise request
/// and then take their forced labels.
fn orient(t: &Topology, c: usize, cw: bool, labels: &mut Labels) -> bool {
    let tag_label = match t.components[c].kind {
        ComponentKind::Circle => {
            if cw {
                Symbol::Down
            } else {
                Symbol::Up
            }
        }
        ComponentKind::Line => {
            if cw {
                return false;
            }
            match t.line_tag_label(c) {
                Some(s) => s,
                None => return false,
            }
        }
    };
    t.orient_component(c, tag_label, labels);
    true
}

fn weights(l: &Labels) -> Vec<Weight> {
    l.iter().map(|v| Weight::new(v.clone())).collect()
}

fn step(block: &Block, d: &Stacked, site: Site, state: State) -> (Stacked, State) {
    let t = d.topology();
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
    let vj = Vertex {
        pos: site.j,
        level: site.level,
    };
    let (ca, cb) = (t.component_of(below), t.component_of(above));
    let mut out = State::new();
    if ca != cb {
        let merged = t2.component_of(above);
        for (l, c) in state {
            match (clockwise(&t, ca, &l), clockwise(&t, cb, &l)) {
                (None, None) => {
                    // reconnect: only two propagating lines survive, unchanged
                    let through = t.components[ca].propagating && t.components[cb].propagating;
                    if through && stacked_degree(&d2, &weights(&l)).is_some() {
                        add(&mut out, l, c);
                    }
                }
                (Some(true), Some(true)) | (Some(true), None) | (None, Some(true)) => {}
                (Some(false), Some(false)) | (Some(false), None) | (None, Some(false)) => {
                    let mut l2 = l;
                    if orient(&t2, merged, false, &mut l2) {
                        add(&mut out, l2, c);
                    }
                }
                (Some(cw_a), Some(_)) => {
                    let v = if cw_a { below } else { above };
                    let sigma = t.sign_to_tag(v) * t2.sign_to_tag(v);
                    let mut l2 = l;
                    orient(&t2, merged, true, &mut l2);
                    add(&mut out, l2, c * sigma);
                }
            }
        }
        return (d2, out);
    }
    if !t2.is_orientable() {
        return (d2, out);
    }
    let (ci, cj) = (t2.component_of(above), t2.component_of(vj));
    let sg = p_sign(block, site.i);
    let minus = if site.dotted { 1 } else { -1 };
    for (l, c) in state {
        match clockwise(&t, ca, &l) {
            Some(true) => {
                let f = sg * t.sign_to_tag(above) * t2.sign_to_tag(above) * t2.sign_to_tag(vj);
                let mut l2 = l;
                if orient(&t2, ci, true, &mut l2) && orient(&t2, cj, true, &mut l2) {
                    add(&mut out, l2, &c * f);
                }
            }
            _ => {
                let mut l1 = l.clone();
                if orient(&t2, cj, true, &mut l1) && orient(&t2, ci, false, &mut l1) {
                    add(&mut out, l1, &c * (sg * t2.sign_to_tag(vj)));
                }
                let mut l2 = l;
                if orient(&t2, ci, true, &mut l2) && orient(&t2, cj, false, &mut l2) {
                    add(&mut out, l2, &c * (sg * minus * t2.sign_to_tag(above)));
                }
            }
        }
    }
    (d2, out)
}

pub(crate) fn product(
    block: &Block,
    bottom: &Weight,
    internal: &[Layer],
    top: &Weight,
    labels: &[Weight],
    close: bool,
) -> Result<Element> {
    if labels.len() != internal.len() + 1 {
        return Err(Error::NotOriented(format!("{} levels for {} internal diagrams", labels.len(), internal.len())));
    }
    let n = block.len();
    let s = if close { block.rank() } else { 0 };
    let tail = vec![Symbol::Up; s];
    let ext = |w: &Weight| w.padded(n, &tail);
    let theta = block.theta().iter().copied().chain(std::iter::repeat_n(Slot::Diamond, s)).collect();
    let block = &Block::new(theta, block.parity());
    let mut d = Stacked {
        bottom: cup_diagram(&ext(bottom)),
        internal: internal.iter().map(|l| l.closed(n, s).undotted_rays()).collect(),
        top: cup_diagram(&ext(top)),
    };
    let labels: Vec<Weight> = labels.iter().map(ext).collect();
    if stacked_degree(&d, &labels).is_none() {
        return Err(Error::NotOriented(
            labels.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";"),
        ));
    }
    let mut state = State::new();
    let init: Labels = labels
        .iter()
        .map(|w| (1..=n + s).map(|p| w.get(p)).collect())
        .collect();
    state.insert(init, BigInt::from(1));
    loop {
        let sites = available(&d.internal);
        if sites.is_empty() || state.is_empty() {
            break;
        }
        let site = choose(&sites, &mut Schedule::Canonical);
        let (d2, s2) = step(block, &d, site, state);
        d = d2;
        state = s2;
    }
    let mut out = Element::zero();
    for (l, c) in state {
        debug_assert!(stacked_degree(&d, &weights(&l)).is_some());
        if l[0][n..].contains(&Symbol::Down) {
            continue;
        }
        let nu = Weight::new(l[0][..n].to_vec());
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
