//! Decorated cup diagrams, stacked circle diagrams and their orientations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{Block, Slot, Symbol, Weight};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Arc {
    Cup { left: usize, right: usize, dotted: bool },
    Ray { at: usize, dotted: bool },
}

impl Arc {
    pub fn dotted(&self) -> bool {
        match *self {
            Arc::Cup { dotted, .. } | Arc::Ray { dotted, .. } => dotted,
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.dotted() { "*" } else { "" };
        match *self {
            Arc::Cup { left, right, .. } => write!(f, "cup{star}({left},{right})"),
            Arc::Ray { at, .. } => write!(f, "ray{star}({at})"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Link {
    Fixed,
    Ray { dotted: bool },
    Cup { to: usize, dotted: bool },
}

/// A cup diagram on the diamond positions of a block diagram.
///
/// Cap diagrams are the same data read upside down.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CupDiagram {
    theta: Vec<Slot>,
    links: Vec<Link>,
}

impl CupDiagram {
    /// Build from arcs, checking that every diamond is covered once and that the
    /// arcs are planar. Admissibility is checked separately.
    pub fn from_arcs(theta: &[Slot], arcs: &[Arc]) -> Result<CupDiagram> {
        let bad = |msg: &str| Error::Inadmissible(msg.to_string());
        let mut links = vec![None; theta.len()];
        let mut place = |p: usize, l: Link| -> Result<()> {
            if p == 0 || p > theta.len() || theta[p - 1] != Slot::Diamond {
                return Err(Error::NotDiamond(p));
            }
            if links[p - 1].is_some() {
                return Err(bad("position used twice"));
            }
            links[p - 1] = Some(l);
            Ok(())
        };
        for a in arcs {
            match *a {
                Arc::Cup { left, right, dotted } => {
                    if left >= right {
                        return Err(bad("cup with left >= right"));
                    }
                    place(left, Link::Cup { to: right, dotted })?;
                    place(right, Link::Cup { to: left, dotted })?;
                }
                Arc::Ray { at, dotted } => place(at, Link::Ray { dotted })?,
            }
        }
        let links: Vec<Link> = links
            .into_iter()
            .zip(theta)
            .map(|(l, s)| match (l, s) {
                (Some(l), _) => Ok(l),
                (None, Slot::Diamond) => Err(bad("uncovered diamond position")),
                (None, _) => Ok(Link::Fixed),
            })
            .collect::<Result<_>>()?;
        let d = CupDiagram {
            theta: theta.to_vec(),
            links,
        };
        if !d.is_planar() {
            return Err(bad("arcs cross"));
        }
        Ok(d)
    }

    pub fn theta(&self) -> &[Slot] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for (i, l) in self.links.iter().enumerate() {
            let p = i + 1;
            match *l {
                Link::Ray { dotted } => out.push(Arc::Ray { at: p, dotted }),
                Link::Cup { to, dotted } if to > p => out.push(Arc::Cup {
                    left: p,
                    right: to,
                    dotted,
                }),
                _ => {}
            }
        }
        out
    }

    pub fn cups(&self) -> Vec<(usize, usize, bool)> {
        self.arcs()
            .into_iter()
            .filter_map(|a| match a {
                Arc::Cup { left, right, dotted } => Some((left, right, dotted)),
                _ => None,
            })
            .collect()
    }

    pub fn rays(&self) -> Vec<(usize, bool)> {
        self.arcs()
            .into_iter()
            .filter_map(|a| match a {
                Arc::Ray { at, dotted } => Some((at, dotted)),
                _ => None,
            })
            .collect()
    }

    pub fn cup_count(&self) -> usize {
        self.cups().len()
    }

    /// The partner of a cup endpoint, with the cup's decoration.
    pub fn partner(&self, pos: usize) -> Option<(usize, bool)> {
        match self.links.get(pos.wrapping_sub(1)) {
            Some(&Link::Cup { to, dotted }) => Some((to, dotted)),
            _ => None,
        }
    }

    pub fn ray_at(&self, pos: usize) -> Option<bool> {
        match self.links.get(pos.wrapping_sub(1)) {
            Some(&Link::Ray { dotted }) => Some(dotted),
            _ => None,
        }
    }

    fn is_planar(&self) -> bool {
        let cups = self.cups();
        for &(a, b, _) in &cups {
            for &(c, d, _) in &cups {
                if a < c && c < b && b < d {
                    return false;
                }
            }
            for (r, _) in self.rays() {
                if a < r && r < b {
                    return false;
                }
            }
        }
        true
    }

    /// Whether cup (i,j) lies inside another cup.
    pub fn is_nested(&self, i: usize, j: usize) -> bool {
        self.cups().iter().any(|&(a, b, _)| a < i && j < b)
    }

    /// Whether some dotted arc lies entirely to the right of position `j`.
    pub fn dotted_right_of(&self, j: usize) -> bool {
        self.arcs().iter().any(|a| match *a {
            Arc::Cup { left, dotted, .. } => dotted && left > j,
            Arc::Ray { at, dotted } => dotted && at > j,
        })
    }

    /// No dotted cup nested in a cup, no dotted arc to the right of a ray.
    pub fn is_admissible(&self) -> bool {
        let cups = self.cups();
        for &(a, b, dotted) in &cups {
            if dotted && self.is_nested(a, b) {
                return false;
            }
        }
        for (r, _) in self.rays() {
            if self.dotted_right_of(r) {
                return false;
            }
        }
        true
    }

    /// Replace cup (i,j) by two undotted rays.
    pub fn cut(&self, i: usize, j: usize) -> CupDiagram {
        let mut d = self.clone();
        d.links[i - 1] = Link::Ray { dotted: false };
        d.links[j - 1] = Link::Ray { dotted: false };
        d
    }

    /// Remove the decoration from every ray.
    pub fn undotted_rays(&self) -> CupDiagram {
        let mut d = self.clone();
        for l in d.links.iter_mut() {
            if let Link::Ray { dotted } = l {
                *dotted = false;
            }
        }
        d
    }

    /// Pad with nought positions up to `len`, then append `extra` diamonds
    /// each carrying an undotted ray.
    pub fn with_ray_tail(&self, len: usize, extra: usize) -> CupDiagram {
        let mut d = self.clone();
        d.theta.resize(len, Slot::Nought);
        d.links.resize(len, Link::Fixed);
        d.theta.extend(std::iter::repeat_n(Slot::Diamond, extra));
        d.links.extend(std::iter::repeat_n(Link::Ray { dotted: false }, extra));
        d
    }

    /// Drop everything beyond `len`; only valid when no arc crosses the cut.
    pub fn truncated(&self, len: usize) -> CupDiagram {
        let mut d = self.clone();
        d.theta.truncate(len);
        d.links.truncate(len);
        d
    }
}

impl fmt::Display for CupDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs().iter().map(|a| a.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl fmt::Debug for CupDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CupDiagram{self}")
    }
}

/// The cup diagram attached to a weight.
pub fn cup_diagram(w: &Weight) -> CupDiagram {
    let n = w.len();
    let mut links = vec![Link::Fixed; n];
    let mut stack = Vec::new();
    for p in 1..=n {
        match w.get(p) {
            Symbol::Down => stack.push(p),
            Symbol::Up => match stack.pop() {
                Some(q) => {
                    links[q - 1] = Link::Cup { to: p, dotted: false };
                    links[p - 1] = Link::Cup { to: q, dotted: false };
                }
                None => links[p - 1] = Link::Ray { dotted: true },
            },
            _ => {}
        }
    }
    for q in stack {
        links[q - 1] = Link::Ray { dotted: false };
    }
    // leftover ups, left to right, paired into dotted cups
    let ups: Vec<usize> = (1..=n).filter(|&p| links[p - 1] == Link::Ray { dotted: true }).collect();
    for pair in ups.chunks(2) {
        if let [a, b] = *pair {
            links[a - 1] = Link::Cup { to: b, dotted: true };
            links[b - 1] = Link::Cup { to: a, dotted: true };
        }
    }
    let theta = w.block().theta().to_vec();
    let mut theta = theta;
    theta.resize(n, Slot::Nought);
    CupDiagram { theta, links }
}

/// Parse arcs written like `cup(1,4) cup*(2,3) ray(5)`; commas or spaces
/// may separate them.
pub fn parse_arcs(s: &str) -> Result<Vec<Arc>> {
    let err = || Error::Parse {
        what: "arc list",
        input: s.to_string(),
    };
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest.find('(').ok_or_else(err)?;
        let close = rest.find(')').ok_or_else(err)?;
        let head = rest[..open].trim();
        let nums: Vec<usize> = rest[open + 1..close]
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| err()))
            .collect::<Result<_>>()?;
        let dotted = head.ends_with('*');
        let arc = match (head.trim_end_matches('*'), nums.as_slice()) {
            ("cup", &[left, right]) if left < right => Arc::Cup { left, right, dotted },
            ("ray", &[at]) => Arc::Ray { at, dotted },
            _ => return Err(err()),
        };
        out.push(arc);
        rest = rest[close + 1..].trim_start_matches(|c: char| c == ',' || c.is_whitespace());
    }
    Ok(out)
}

/// The unique weight whose cup diagram is `c`.
pub fn weight_of(c: &CupDiagram) -> Result<Weight> {
    if !c.is_admissible() {
        return Err(Error::Inadmissible(c.to_string()));
    }
    let syms = c
        .links
        .iter()
        .enumerate()
        .map(|(i, l)| match *l {
            Link::Fixed => match c.theta[i] {
                Slot::Cross => Symbol::Cross,
                _ => Symbol::Nought,
            },
            Link::Ray { dotted } => {
                if dotted {
                    Symbol::Up
                } else {
                    Symbol::Down
                }
            }
            Link::Cup { to, dotted } => {
                if dotted || to < i + 1 {
                    Symbol::Up
                } else {
                    Symbol::Down
                }
            }
        })
        .collect();
    Ok(Weight::new(syms))
}

pub fn defect(w: &Weight) -> usize {
    cup_diagram(w).cup_count()
}

/// Degree of an arc read with labels (left, right): `None` if forbidden.
pub fn arc_degree(dotted: bool, left: Symbol, right: Symbol) -> Option<u32> {
    use Symbol::{Down, Up};
    match (dotted, left, right) {
        (false, Down, Up) => Some(0),
        (false, Up, Down) => Some(1),
        (true, Up, Up) => Some(0),
        (true, Down, Down) => Some(1),
        _ => None,
    }
}

/// Whether a ray accepts the label (undotted rays take down, dotted take up).
pub fn ray_accepts(dotted: bool, s: Symbol) -> bool {
    s == if dotted { Symbol::Up } else { Symbol::Down }
}

/// Degree of the cup diagram `c` labelled by `w`, or `None` if not oriented.
pub fn half_degree(c: &CupDiagram, w: &Weight) -> Option<u32> {
    let mut deg = 0;
    for a in c.arcs() {
        match a {
            Arc::Cup { left, right, dotted } => deg += arc_degree(dotted, w.get(left), w.get(right))?,
            Arc::Ray { at, dotted } => {
                if !ray_accepts(dotted, w.get(at)) {
                    return None;
                }
            }
        }
    }
    for (p, s) in c.theta.iter().enumerate() {
        let sym = w.get(p + 1);
        let ok = match s {
            Slot::Diamond => sym.is_free(),
            Slot::Cross => sym == Symbol::Cross,
            Slot::Nought => sym == Symbol::Nought,
        };
        if !ok {
            return None;
        }
    }
    if w.len() > c.len() {
        return None;
    }
    Some(deg)
}

/// `λ⊂μ`: the cup diagram of `lam` is oriented by `mu`.
pub fn is_oriented_by(lam: &Weight, mu: &Weight) -> bool {
    half_degree(&cup_diagram(lam), mu).is_some()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Vertex {
    pub pos: usize,
    pub level: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ComponentKind {
    Circle,
    Line,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    pub tag: Vertex,
    pub propagating: bool,
    pub dot_count: usize,
    pub undotted_arc_count: usize,
    pub cap_count: usize,
    pub orientable: bool,
}

/// A stacked circle diagram: a bottom cup diagram, internal cup diagrams
/// (each drawn as its mirror cap followed by itself), and a top cap diagram.
///
/// Rays of internal diagrams are vertical segments and carry no dots.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Stacked {
    pub bottom: CupDiagram,
    pub internal: Vec<CupDiagram>,
    pub top: CupDiagram,
}

#[derive(Clone, Copy, Debug)]
enum EdgeKind {
    Arc { dotted: bool, cap: bool },
    Vertical,
}

impl Stacked {
    pub fn circle(bottom: CupDiagram, top: CupDiagram) -> Stacked {
        Stacked {
            bottom,
            internal: Vec::new(),
            top,
        }
    }

    pub fn levels(&self) -> usize {
        self.internal.len() + 1
    }

    pub fn height(&self) -> usize {
        self.internal.len()
    }

    pub fn len(&self) -> usize {
        self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bottom.is_empty()
    }

    pub fn diamonds(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&p| self.bottom.theta[p - 1] == Slot::Diamond).collect()
    }

    /// Arcs between vertices, and the boundary points `(vertex, dotted, on top)`.
    #[allow(clippy::type_complexity)]
    fn edges(&self) -> (Vec<(Vertex, Vertex, EdgeKind)>, Vec<(Vertex, bool, bool)>) {
        let mut edges = Vec::new();
        let mut boundary = Vec::new();
        let h = self.height();
        let cup_edges = |d: &CupDiagram, level: usize, cap: bool, edges: &mut Vec<_>| {
            for (l, r, dotted) in d.cups() {
                edges.push((Vertex { pos: l, level }, Vertex { pos: r, level }, EdgeKind::Arc { dotted, cap }));
            }
        };
        cup_edges(&self.bottom, 0, false, &mut edges);
        for (at, dotted) in self.bottom.rays() {
            boundary.push((Vertex { pos: at, level: 0 }, dotted, false));
        }
        for (idx, a) in self.internal.iter().enumerate() {
            let l = idx + 1;
            cup_edges(a, l - 1, true, &mut edges);
            cup_edges(a, l, false, &mut edges);
            for (at, _) in a.rays() {
                edges.push((Vertex { pos: at, level: l - 1 }, Vertex { pos: at, level: l }, EdgeKind::Vertical));
            }
        }
        cup_edges(&self.top, h, true, &mut edges);
        for (at, dotted) in self.top.rays() {
            boundary.push((Vertex { pos: at, level: h }, dotted, true));
        }
        (edges, boundary)
    }

    pub fn topology(&self) -> Topology {
        Topology::new(self)
    }
}

/// Components of a stacked diagram with parity information.
///
/// The parity of a vertex is the number (mod 2) of undotted cups and caps on a
/// path to the root of its component. For an orientable component it is
/// path-independent and equals the label difference to the root.
#[derive(Clone, Debug)]
pub struct Topology {
    diamonds: Vec<usize>,
    slot_of: Vec<usize>,
    levels: usize,
    comp: Vec<usize>,
    parity: Vec<u8>,
    root_label: Vec<Option<u8>>,
    pub components: Vec<Component>,
}

struct ParityUf {
    parent: Vec<usize>,
    par: Vec<u8>,
    bad: Vec<bool>,
}

impl ParityUf {
    fn new(n: usize) -> ParityUf {
        ParityUf {
            parent: (0..n).collect(),
            par: vec![0; n],
            bad: vec![false; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, u8) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (r, pp) = self.find(p);
        self.parent[x] = r;
        self.par[x] ^= pp;
        (r, self.par[x])
    }

    fn union(&mut self, a: usize, b: usize, rel: u8) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != rel {
                self.bad[ra] = true;
            }
            return;
        }
        let bad = self.bad[ra] || self.bad[rb];
        self.parent[rb] = ra;
        self.par[rb] = pa ^ pb ^ rel;
        self.bad[ra] = bad;
    }
}

fn label_bit(s: Symbol) -> u8 {
    match s {
        Symbol::Up => 1,
        _ => 0,
    }
}

fn bit_label(b: u8) -> Symbol {
    if b == 1 {
        Symbol::Up
    } else {
        Symbol::Down
    }
}

impl Topology {
    fn new(d: &Stacked) -> Topology {
        let diamonds = d.diamonds();
        let mut slot_of = vec![usize::MAX; d.len() + 1];
        for (i, &p) in diamonds.iter().enumerate() {
            slot_of[p] = i;
        }
        let nd = diamonds.len();
        let levels = d.levels();
        let id = |v: Vertex| v.level * nd + slot_of[v.pos];
        let (edges, boundary) = d.edges();
        let n = nd * levels;
        let mut uf = ParityUf::new(n);
        for &(a, b, kind) in &edges {
            let rel = match kind {
                EdgeKind::Arc { dotted, .. } => u8::from(!dotted),
                EdgeKind::Vertical => 0,
            };
            uf.union(id(a), id(b), rel);
        }
        let mut comp = vec![0; n];
        let mut parity = vec![0; n];
        let mut roots: Vec<usize> = Vec::new();
        let mut root_slot = vec![usize::MAX; n];
        for v in 0..n {
            let (r, p) = uf.find(v);
            if root_slot[r] == usize::MAX {
                root_slot[r] = roots.len();
                roots.push(r);
            }
            comp[v] = root_slot[r];
            parity[v] = p;
        }
        let nc = roots.len();
        let vert = |v: usize| Vertex {
            pos: diamonds[v % nd],
            level: v / nd,
        };
        let mut components: Vec<Component> = (0..nc)
            .map(|c| Component {
                kind: ComponentKind::Circle,
                vertices: Vec::new(),
                tag: vert(roots[c]),
                propagating: false,
                dot_count: 0,
                undotted_arc_count: 0,
                cap_count: 0,
                orientable: !uf.bad[roots[c]],
            })
            .collect();
        for v in 0..n {
            let c = &mut components[comp[v]];
            let x = vert(v);
            c.vertices.push(x);
            if x.pos > c.tag.pos || (x.pos == c.tag.pos && x.level < c.tag.level) {
                c.tag = x;
            }
        }
        for &(a, _, kind) in &edges {
            if let EdgeKind::Arc { dotted, cap } = kind {
                let c = &mut components[comp[id(a)]];
                if dotted {
                    c.dot_count += 1;
                } else {
                    c.undotted_arc_count += 1;
                }
                if cap {
                    c.cap_count += 1;
                }
            }
        }
        let mut root_label: Vec<Option<u8>> = vec![None; nc];
        let mut ends: Vec<(bool, bool)> = vec![(false, false); nc];
        for &(v, dotted, top) in &boundary {
            let c = comp[id(v)];
            let comp_ref = &mut components[c];
            comp_ref.kind = ComponentKind::Line;
            if dotted {
                comp_ref.dot_count += 1;
            }
            if top {
                ends[c].1 = true;
            } else {
                ends[c].0 = true;
            }
            let need = u8::from(dotted) ^ parity[id(v)];
            match root_label[c] {
                None => root_label[c] = Some(need),
                Some(r) if r != need => components[c].orientable = false,
                _ => {}
            }
        }
        for (c, e) in ends.iter().enumerate() {
            components[c].propagating = e.0 && e.1;
        }
        Topology {
            diamonds,
            slot_of,
            levels,
            comp,
            parity,
            root_label,
            components,
        }
    }

    fn vid(&self, v: Vertex) -> usize {
        v.level * self.diamonds.len() + self.slot_of[v.pos]
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.comp[self.vid(v)]
    }

    pub fn is_orientable(&self) -> bool {
        self.components.iter().all(|c| c.orientable)
    }

    pub fn circles(&self) -> usize {
        self.components.iter().filter(|c| c.kind == ComponentKind::Circle).count()
    }

    /// (-1)^(undotted cups and caps on a path between two vertices).
    pub fn sign_between(&self, a: Vertex, b: Vertex) -> Result<i32> {
        let (x, y) = (self.vid(a), self.vid(b));
        if self.comp[x] != self.comp[y] {
            return Err(Error::DifferentComponents);
        }
        Ok(if self.parity[x] ^ self.parity[y] == 0 { 1 } else { -1 })
    }

    /// Sign from a vertex to the tag of its component.
    pub fn sign_to_tag(&self, v: Vertex) -> i32 {
        let tag = self.components[self.component_of(v)].tag;
        self.sign_between(v, tag).expect("tag lies on its own component")
    }

    /// Label of `v` given the label of its component's tag.
    pub fn label_from_tag(&self, v: Vertex, tag_label: Symbol) -> Symbol {
        let c = self.component_of(v);
        let t = self.components[c].tag;
        bit_label(label_bit(tag_label) ^ self.parity[self.vid(v)] ^ self.parity[self.vid(t)])
    }

    /// The forced tag label of a line, if orientable.
    pub fn line_tag_label(&self, c: usize) -> Option<Symbol> {
        let r = self.root_label[c]?;
        let t = self.components[c].tag;
        Some(bit_label(r ^ self.parity[self.vid(t)]))
    }

    /// Write labels for one component into per-level label vectors.
    pub fn orient_component(&self, c: usize, tag_label: Symbol, labels: &mut [Vec<Symbol>]) {
        for v in &self.components[c].vertices {
            labels[v.level][v.pos - 1] = self.label_from_tag(*v, tag_label);
        }
    }

    pub fn levels(&self) -> usize {
        self.levels
    }
}

/// Check an orientation (one weight per level) and return its degree.
pub fn stacked_degree(d: &Stacked, labels: &[Weight]) -> Option<u32> {
    if labels.len() != d.levels() {
        return None;
    }
    let (edges, boundary) = d.edges();
    let theta = d.bottom.theta();
    for w in labels {
        if w.len() > theta.len() {
            return None;
        }
        for (i, s) in theta.iter().enumerate() {
            let sym = w.get(i + 1);
            let ok = match s {
                Slot::Diamond => sym.is_free(),
                Slot::Cross => sym == Symbol::Cross,
                Slot::Nought => sym == Symbol::Nought,
            };
            if !ok {
                return None;
            }
        }
    }
    let lab = |v: Vertex| labels[v.level].get(v.pos);
    let mut deg = 0;
    for (a, b, kind) in edges {
        match kind {
            EdgeKind::Arc { dotted, .. } => deg += arc_degree(dotted, lab(a), lab(b))?,
            EdgeKind::Vertical => {
                if lab(a) != lab(b) {
                    return None;
                }
            }
        }
    }
    for (v, dotted, _) in boundary {
        if !ray_accepts(dotted, lab(v)) {
            return None;
        }
    }
    Some(deg)
}

/// All orientations of a stacked diagram, as one weight per level.
pub fn orientations(d: &Stacked) -> Vec<Vec<Weight>> {
    let topo = d.topology();
    if !topo.is_orientable() {
        return Vec::new();
    }
    let n = d.len();
    let theta = d.bottom.theta();
    let base: Vec<Symbol> = theta
        .iter()
        .map(|s| match s {
            Slot::Cross => Symbol::Cross,
            _ => Symbol::Nought,
        })
        .collect();
    let mut labels = vec![base; d.levels()];
    let mut free = Vec::new();
    for (c, comp) in topo.components.iter().enumerate() {
        match comp.kind {
            ComponentKind::Line => {
                let t = topo.line_tag_label(c).expect("orientable line");
                topo.orient_component(c, t, &mut labels);
            }
            ComponentKind::Circle => free.push(c),
        }
    }
    let mut out = Vec::new();
    for mask in 0..(1u64 << free.len()) {
        let mut l = labels.clone();
        for (bit, &c) in free.iter().enumerate() {
            // bit set: clockwise (tag labelled down)
            let t = if mask >> bit & 1 == 1 { Symbol::Down } else { Symbol::Up };
            topo.orient_component(c, t, &mut l);
        }
        let _ = n;
        out.push(l.into_iter().map(Weight::new).collect());
    }
    out
}

/// The circle diagram `λ̲μ̄`.
pub fn circle_diagram(lam: &Weight, mu: &Weight) -> Result<Stacked> {
    let (b, t) = (cup_diagram(lam), cup_diagram(mu));
    if lam.block().theta() != mu.block().theta() {
        return Err(Error::BlockMismatch(lam.to_string(), mu.to_string()));
    }
    let n = b.len().max(t.len());
    Ok(Stacked::circle(b.with_ray_tail(n, 0), t.with_ray_tail(n, 0)))
}

/// A block's weights as cup diagrams, checked to be mutually inverse.
pub fn block_diagrams(block: &Block) -> Vec<CupDiagram> {
    block.enumerate().iter().map(cup_diagram).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Parity;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn arcs(s: &str) -> String {
        cup_diagram(&w(s)).to_string()
    }

    #[test]
    fn listed_cup_diagrams() {
        assert_eq!(arcs("^^vv"), "{cup*(1,2), ray(3), ray(4)}");
        assert_eq!(arcs("vv^^"), "{cup(1,4), cup(2,3)}");
        assert_eq!(arcs("^^^^"), "{cup*(1,2), cup*(3,4)}");
        assert_eq!(arcs("^vvv"), "{ray*(1), ray(2), ray(3), ray(4)}");
    }

    #[test]
    fn arc_lists_round_trip() {
        for s in ["^^vv", "vv^^", "^^^^", "^vvv", "v^v^"] {
            let c = cup_diagram(&w(s));
            let text = c.to_string();
            let parsed = parse_arcs(text.trim_matches(|ch| ch == '{' || ch == '}')).unwrap();
            let back = CupDiagram::from_arcs(c.theta(), &parsed).unwrap();
            assert_eq!(weight_of(&back).unwrap(), w(s));
        }
        assert!(parse_arcs("cup(2,1)").is_err());
        assert!(parse_arcs("hat(1)").is_err());
    }

    #[test]
    fn weight_of_inverts() {
        let theta = vec![Slot::Diamond; 4];
        let c = CupDiagram::from_arcs(
            &theta,
            &[
                Arc::Cup { left: 1, right: 2, dotted: true },
                Arc::Ray { at: 3, dotted: false },
                Arc::Ray { at: 4, dotted: false },
            ],
        )
        .unwrap();
        assert_eq!(weight_of(&c).unwrap(), w("^^vv"));
        let rays: Vec<Arc> = (1..=4).map(|at| Arc::Ray { at, dotted: false }).collect();
        assert_eq!(weight_of(&CupDiagram::from_arcs(&theta, &rays).unwrap()).unwrap(), w("vvvv"));
    }

    #[test]
    fn mixed_block_example() {
        // fixed positions are skipped when matching
        let lam = w("vv^oxx^v");
        let c = cup_diagram(&lam);
        assert_eq!(c.to_string(), "{cup(1,7), cup(2,3), ray(8)}");
        assert_eq!(weight_of(&c).unwrap(), lam);
    }

    #[test]
    fn admissibility() {
        let theta = vec![Slot::Diamond; 4];
        let bad = CupDiagram::from_arcs(
            &theta,
            &[
                Arc::Cup { left: 1, right: 2, dotted: false },
                Arc::Ray { at: 3, dotted: false },
                Arc::Ray { at: 4, dotted: true },
            ],
        )
        .unwrap();
        assert!(!bad.is_admissible());
        assert!(weight_of(&bad).is_err());
        let nested = CupDiagram::from_arcs(
            &theta,
            &[
                Arc::Cup { left: 1, right: 4, dotted: false },
                Arc::Cup { left: 2, right: 3, dotted: true },
            ],
        )
        .unwrap();
        assert!(!nested.is_admissible());
        let crossing = CupDiagram::from_arcs(
            &theta,
            &[
                Arc::Cup { left: 1, right: 3, dotted: false },
                Arc::Cup { left: 2, right: 4, dotted: false },
            ],
        );
        assert!(crossing.is_err());
    }

    #[test]
    fn components_and_orientations() {
        let d = circle_diagram(&w("v^v^"), &w("v^v^")).unwrap();
        let t = d.topology();
        assert_eq!(t.circles(), 2);
        let mut tags: Vec<usize> = t.components.iter().map(|c| c.tag.pos).collect();
        tags.sort();
        assert_eq!(tags, vec![2, 4]);
        assert_eq!(orientations(&d).len(), 4);

        let d = circle_diagram(&w("^^^^"), &w("v^v^")).unwrap();
        let t = d.topology();
        assert_eq!(t.circles(), 2);
        assert!(t.components.iter().all(|c| c.dot_count == 1));
        assert!(orientations(&d).is_empty());

        let d = circle_diagram(&w("vvvv"), &w("vvvv")).unwrap();
        let t = d.topology();
        assert_eq!(t.components.len(), 4);
        assert!(t.components.iter().all(|c| c.propagating));
        assert_eq!(orientations(&d), vec![vec![w("vvvv")]]);
    }

    #[test]
    fn small_circle_degrees() {
        let d = circle_diagram(&w("v^"), &w("v^")).unwrap();
        assert_eq!(stacked_degree(&d, &[w("v^")]), Some(0));
        assert_eq!(stacked_degree(&d, &[w("^v")]), Some(2));
        let d = circle_diagram(&w("^^"), &w("^^")).unwrap();
        assert_eq!(stacked_degree(&d, &[w("^^")]), Some(0));
        assert_eq!(stacked_degree(&d, &[w("vv")]), Some(2));
    }

    #[test]
    fn defects() {
        assert_eq!(defect(&w("vvvv")), 0);
        assert_eq!(defect(&w("v^v^")), 2);
    }

    #[test]
    fn signs_on_single_cups() {
        let d = circle_diagram(&w("v^"), &w("v^")).unwrap();
        let t = d.topology();
        let a = Vertex { pos: 1, level: 0 };
        let b = Vertex { pos: 2, level: 0 };
        assert_eq!(t.sign_between(a, a), Ok(1));
        assert_eq!(t.sign_between(a, b), Ok(-1));
        let d = circle_diagram(&w("v^vv"), &w("vvvv")).unwrap();
        let t = d.topology();
        assert_eq!(t.sign_between(a, b), Ok(-1));
        let d = circle_diagram(&w("^^vv"), &w("vvvv")).unwrap();
        let t = d.topology();
        assert_eq!(t.sign_between(a, b), Ok(1));
        assert_eq!(t.sign_between(a, Vertex { pos: 3, level: 0 }), Err(Error::DifferentComponents));
    }

    #[test]
    fn every_block_weight_round_trips() {
        for k in 1..=7 {
            for parity in [Parity::Even, Parity::Odd] {
                for lam in Block::principal(k, parity).enumerate() {
                    let c = cup_diagram(&lam);
                    assert!(c.is_admissible(), "{lam}");
                    assert_eq!(weight_of(&c).unwrap(), lam);
                    assert_eq!(half_degree(&c, &lam), Some(0));
                }
            }
        }
    }
}
