//! The map Φ from Braden's generators into the algebra, and the relations
//! R-1 to R-5 evaluated on the images.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use super::diamonds::{diamonds, triple_status, TripleStatus};
use super::{lambda_pairs, neighbours, pair_between, parent, LambdaPair};
use crate::algebra::{one, pair_one, pair_x, x_element, Algebra, RatElement};
use crate::error::{Error, Result};
use crate::verify::Check;
use crate::weights::{Block, Parity, Slot, Symbol, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Generator {
    E(Weight),
    T(i64, Weight),
    P(Weight, Weight),
}

fn principal_k(w: &Weight) -> Result<usize> {
    if w.block().theta().iter().all(|s| *s == Slot::Diamond) {
        Ok(w.len())
    } else {
        Err(Error::InvalidGenerator(format!("{w} is not in a principal block")))
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Image of a generator under Φ.
pub fn phi(g: &Generator) -> Result<RatElement> {
    match g {
        Generator::E(l) => {
            principal_k(l)?;
            Ok(one(l).to_rational())
        }
        Generator::T(alpha, l) => {
            let k = principal_k(l)? as i64;
            if *alpha == 0 {
                return Err(Error::InvalidGenerator("t with alpha = 0".into()));
            }
            let e = one(l).to_rational();
            if alpha.abs() > k {
                return Ok(e);
            }
            let x = x_element(alpha.unsigned_abs() as usize, l)?.to_rational();
            Ok(if *alpha > 0 { &e + &x } else { &e - &x })
        }
        Generator::P(l, m) => {
            principal_k(l)?;
            let pair = pair_between(l, m).map_err(|_| Error::InvalidGenerator(format!("p({l},{m})")))?;
            let sign = if pair.beta % 2 == 0 { half() } else { -half() };
            let x = pair_x(l, m)?.to_rational().scaled(&sign);
            Ok(&pair_one(l, m)?.to_rational() + &x)
        }
    }
}

/// Outcome of every relation family, in a fixed order.
#[derive(Clone, Debug, Serialize)]
pub struct BradenReport {
    pub k: usize,
    pub checks: Vec<Check>,
    /// Triples neither extendable nor enlargeable within the search bound.
    pub undecided_triples: usize,
    pub max_extension: usize,
}

impl BradenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Images<'a> {
    alg: &'a Algebra,
    k: i64,
    e: HashMap<Weight, RatElement>,
    t: HashMap<(i64, Weight), RatElement>,
    p: HashMap<(Weight, Weight), RatElement>,
}

impl Images<'_> {
    fn e(&self, l: &Weight) -> &RatElement {
        &self.e[l]
    }

    fn t(&self, a: i64, l: &Weight) -> &RatElement {
        if a.abs() > self.k {
            &self.e[l]
        } else {
            &self.t[&(a, l.clone())]
        }
    }

    fn p(&self, l: &Weight, m: &Weight) -> &RatElement {
        &self.p[&(l.clone(), m.clone())]
    }

    fn mul(&self, a: &RatElement, b: &RatElement) -> RatElement {
        self.alg.mul(a, b)
    }

    /// Signed indices `±1..±(k+1)`; `k+1` stands for every out-of-range index.
    fn alphas(&self) -> Vec<i64> {
        (1..=self.k + 1).flat_map(|a| [a, -a]).collect()
    }
}

fn check<T: Sync>(name: &str, items: &[T], f: impl Fn(&T) -> Option<String> + Sync + Send) -> Check {
    let fail = items.par_iter().map(f).collect::<Vec<_>>().into_iter().flatten().next();
    Check::new(name, items.len(), fail)
}

fn pairs_of(l: &Weight) -> BTreeSet<(i64, i64)> {
    lambda_pairs(l).into_iter().map(|p| (p.alpha, p.beta)).collect()
}

/// `ζ` for the loop relation of `pair`, or `None` when it has no parent.
///
/// The parent is taken in the ray-closed weight, so a ray may contribute a
/// parent cup ending beyond the block; its `t` then acts as the identity.
pub fn zeta(lambda: &Weight, pair: &LambdaPair) -> Option<i64> {
    let n = lambda.len();
    let closed = lambda.padded(n, &vec![Symbol::Up; n]);
    let cp = lambda_pairs(&closed).into_iter().find(|q| q.left == pair.left && q.right == pair.right)?;
    let q = parent(&closed, &cp)?;
    Some(if q.left > pair.right { -q.alpha } else { q.beta })
}

/// Evaluate R-1 to R-5 on Φ-images in the even principal block of rank `k`.
pub fn verify_braden(k: usize, max_extension: usize) -> BradenReport {
    let block = Block::principal(k, Parity::Even);
    let alg = Algebra::new(&block);
    verify_braden_in(&alg, max_extension)
}

pub fn verify_braden_in(alg: &Algebra, max_extension: usize) -> BradenReport {
    let block = alg.block().clone();
    let k = block.len();
    let weights = block.enumerate();
    let mut im = Images {
        alg,
        k: k as i64,
        e: HashMap::new(),
        t: HashMap::new(),
        p: HashMap::new(),
    };
    let arrows: Vec<(Weight, Weight)> = weights
        .iter()
        .flat_map(|l| neighbours(l).into_iter().map(move |m| (l.clone(), m)))
        .collect();
    for l in &weights {
        im.e.insert(l.clone(), phi(&Generator::E(l.clone())).expect("in block"));
        for a in (1..=k as i64).flat_map(|a| [a, -a]) {
            im.t.insert((a, l.clone()), phi(&Generator::T(a, l.clone())).expect("in block"));
        }
    }
    for (l, m) in &arrows {
        im.p.insert((l.clone(), m.clone()), phi(&Generator::P(l.clone(), m.clone())).expect("arrow"));
    }
    let im = im;
    let alphas = im.alphas();
    let zero = RatElement::zero();
    let mut checks = Vec::new();

    // R-1
    let ww: Vec<(&Weight, &Weight)> = weights.iter().flat_map(|a| weights.iter().map(move |b| (a, b))).collect();
    checks.push(check("R-1 a", &ww, |&(l, n)| {
        let want = if l == n { im.e(l).clone() } else { zero.clone() };
        (im.mul(im.e(l), im.e(n)) != want).then(|| format!("e_{l} e_{n}"))
    }));
    let sum = weights.iter().fold(RatElement::zero(), |acc, l| &acc + im.e(l));
    checks.push(Check::new(
        "R-1 b",
        1,
        (sum != alg.unit()).then(|| "sum of idempotents is not the unit".to_string()),
    ));
    let wa: Vec<(&Weight, &(Weight, Weight))> = weights.iter().flat_map(|n| arrows.iter().map(move |a| (n, a))).collect();
    checks.push(check("R-1 c", &wa, |&(n, (l, m))| {
        let p = im.p(l, m);
        let want = if n == l { p.clone() } else { zero.clone() };
        (im.mul(im.e(n), p) != want).then(|| format!("e_{n} p({l},{m})"))
    }));
    checks.push(check("R-1 d", &wa, |&(n, (l, m))| {
        let p = im.p(l, m);
        let want = if n == m { p.clone() } else { zero.clone() };
        (im.mul(p, im.e(n)) != want).then(|| format!("p({l},{m}) e_{n}"))
    }));
    let wwa: Vec<(&Weight, &Weight, i64)> = ww
        .iter()
        .flat_map(|&(n, l)| alphas.iter().map(move |&a| (n, l, a)))
        .collect();
    checks.push(check("R-1 e", &wwa, |&(n, l, a)| {
        let t = im.t(a, l);
        let want = if n == l { t.clone() } else { zero.clone() };
        (im.mul(im.e(n), t) != want).then(|| format!("e_{n} t_({a},{l})"))
    }));
    checks.push(check("R-1 f", &wwa, |&(n, l, a)| {
        let t = im.t(a, l);
        let want = if n == l { t.clone() } else { zero.clone() };
        (im.mul(t, im.e(n)) != want).then(|| format!("t_({a},{l}) e_{n}"))
    }));

    // R-2
    let wa1: Vec<(&Weight, i64)> = weights.iter().flat_map(|l| alphas.iter().map(move |&a| (l, a))).collect();
    checks.push(check("R-2 a", &wa1, |&(l, a)| {
        let img = phi(&Generator::T(a, l.clone())).expect("in block");
        (a.abs() > k as i64 && &img != im.e(l)).then(|| format!("t_({a},{l})"))
    }));
    let comm: Vec<(&Weight, i64, &Weight, i64)> = wa1
        .iter()
        .flat_map(|&(l, a)| wa1.iter().map(move |&(n, b)| (l, a, n, b)))
        .collect();
    checks.push(check("R-2 b", &comm, |&(l, a, n, b)| {
        let (x, y) = (im.t(a, l), im.t(b, n));
        (im.mul(x, y) != im.mul(y, x)).then(|| format!("t_({a},{l}) t_({b},{n})"))
    }));
    checks.push(check("R-2 c", &wa1, |&(l, a)| {
        (im.mul(im.t(a, l), im.t(-a, l)) != *im.e(l)).then(|| format!("t_({a},{l}) t_({},{l})", -a))
    }));
    let lp: Vec<LambdaPair> = weights.iter().flat_map(lambda_pairs).collect();
    checks.push(check("R-2 d", &lp, |p| {
        let l = &p.source;
        (im.mul(im.t(p.alpha, l), im.t(p.beta, l)) != *im.e(l)).then(|| format!("t_({},{l}) t_({},{l})", p.alpha, p.beta))
    }));

    // R-3
    let aa: Vec<(&(Weight, Weight), i64)> = arrows.iter().flat_map(|a| alphas.iter().map(move |&x| (a, x))).collect();
    checks.push(check("R-3", &aa, |&((l, m), a)| {
        let lhs = im.mul(im.p(l, m), im.t(a, m));
        let rhs = im.mul(im.t(a, l), im.p(l, m));
        (lhs != rhs).then(|| format!("p({l},{m}) t_({a},{m}): {lhs} vs {rhs}"))
    }));

    // R-4
    checks.push(check("R-4", &lp, |p| {
        let (l, l1) = (&p.source, &p.target);
        let z = zeta(l, p);
        for (x, y) in [(l1, l), (l, l1)] {
            let m = &im.mul(im.p(x, y), im.p(y, x)) + im.e(x);
            let tz = match z {
                Some(z) => im.t(z, x).clone(),
                None => im.e(x).clone(),
            };
            let tt = im.mul(im.t(p.alpha, x), &tz);
            let ok = if p.beta % 2 == 0 { m == tt } else { im.mul(&m, &tt) == *im.e(x) };
            if !ok {
                return Some(format!("pair {p}, zeta {z:?}, at {x}: m = {m}, t t = {tt}"));
            }
        }
        None
    }));

    // R-5 i
    let ds: Vec<[Weight; 4]> = diamonds(&block)
        .into_iter()
        .flat_map(|d| {
            (0..4).flat_map(move |r| {
                let rot = [0, 1, 2, 3].map(|i| d[(r + i) % 4].clone());
                let refl = [rot[0].clone(), rot[3].clone(), rot[2].clone(), rot[1].clone()];
                [rot, refl]
            })
        })
        .collect();
    checks.push(check("R-5 i", &ds, |d| {
        let lhs = im.mul(im.p(&d[2], &d[1]), im.p(&d[1], &d[0]));
        let rhs = im.mul(im.p(&d[2], &d[3]), im.p(&d[3], &d[0]));
        (lhs != rhs).then(|| format!("diamond {} {} {} {}: {lhs} vs {rhs}", d[0], d[1], d[2], d[3]))
    }));

    // R-5 ii
    let triples: Vec<(Weight, Weight, Weight)> = arrows
        .iter()
        .flat_map(|(a, b)| {
            neighbours(b)
                .into_iter()
                .filter(move |c| c != a)
                .map(move |c| (a.clone(), b.clone(), c))
        })
        .collect();
    let status: Vec<TripleStatus> = triples
        .par_iter()
        .map(|(a, b, c)| triple_status(a, b, c, max_extension).expect("chained"))
        .collect();
    let undecided = status.iter().filter(|s| **s == TripleStatus::Neither).count();
    let enl: Vec<&(Weight, Weight, Weight)> = triples
        .iter()
        .zip(&status)
        .filter(|(_, s)| matches!(s, TripleStatus::Enlargeable { .. }))
        .map(|(t, _)| t)
        .collect();
    checks.push(check("R-5 ii", &enl, |(l1, l2, l3)| {
        let prod = im.mul(im.p(l3, l2), im.p(l2, l1));
        (!prod.is_zero()).then(|| format!("{l1} {l2} {l3}: {prod}"))
    }));

    // R-5 iii
    let dotted: Vec<(Weight, Weight, Weight)> = lp
        .iter()
        .filter(|p| p.alpha < 0)
        .flat_map(|p| {
            let own = pairs_of(&p.source);
            lambda_pairs(&p.target)
                .into_iter()
                .filter(move |q| !own.contains(&(q.alpha, q.beta)) && q.target != p.source)
                .map(move |q| (p.source.clone(), p.target.clone(), q.target))
        })
        .filter(|(a, b, c)| !matches!(triple_status(a, b, c, 0), Ok(TripleStatus::Extendable(_))))
        .collect();
    checks.push(check("R-5 iii", &dotted, |(l1, l2, l3)| {
        let a = im.mul(im.p(l3, l2), im.p(l2, l1));
        let b = im.mul(im.p(l1, l2), im.p(l2, l3));
        (!a.is_zero() || !b.is_zero()).then(|| format!("{l1} {l2} {l3}: {a} / {b}"))
    }));

    BradenReport {
        k,
        checks,
        undecided_triples: undecided,
        max_extension,
    }
}

/// Result of matching the hand-written relation list for rank 4.
///
/// Each degree one space between neighbours is spanned by one basis vector,
/// and every listed coefficient has absolute value 1 or 2 with matching
/// magnitudes on both sides, so a rescaling of arrows can only help through
/// its signs. A failed search therefore rules out every normalization.
#[derive(Clone, Debug, Serialize)]
pub struct SignSearch {
    /// `true` if the loop terms `a7 b7` and `b7 a7` enter with a minus sign.
    pub amended: bool,
    /// Arrow names with a sign for each, if some choice satisfies every relation.
    pub signs: Option<Vec<(String, i8)>>,
    pub relations: usize,
}

/// Arrows of the rank 4 quiver as `(name, from, to)` in canonical vertex numbering (1-based).
const ARROWS: [(&str, usize, usize); 20] = [
    ("a1", 1, 2),
    ("b1", 2, 1),
    ("a2", 2, 3),
    ("b2", 3, 2),
    ("a3", 3, 4),
    ("b3", 4, 3),
    ("a4", 3, 5),
    ("b4", 5, 3),
    ("a5", 4, 6),
    ("b5", 6, 4),
    ("a6", 5, 6),
    ("b6", 6, 5),
    ("a7", 6, 7),
    ("b7", 7, 6),
    ("a8", 7, 8),
    ("b8", 8, 7),
    ("a9", 2, 8),
    ("b9", 8, 2),
    ("a10", 3, 7),
    ("b10", 7, 3),
];

/// Zero relations as sums of `coefficient · first · second`, paths read left to right.
const ZERO_RELATIONS: &[&[(i64, &str, &str)]] = &[
    &[(1, "a1", "a2")],
    &[(1, "b2", "b1")],
    &[(1, "a2", "a3")],
    &[(1, "b3", "b2")],
    &[(1, "a2", "a4")],
    &[(1, "b4", "b2")],
    &[(1, "a7", "a8")],
    &[(1, "b8", "b7")],
    &[(1, "a1", "b1")],
    &[(1, "b1", "a1"), (1, "a2", "b2")],
    &[(1, "a9", "b9")],
    &[(1, "b2", "a2"), (-1, "a3", "b3")],
    &[(1, "b5", "a5"), (1, "b6", "a6"), (1, "a7", "b7")],
    &[(1, "a10", "b10")],
    &[(1, "a5", "b5")],
    &[(1, "a6", "b6")],
    &[(1, "a3", "b3"), (-1, "a4", "b4")],
    &[(1, "b7", "a7"), (1, "a8", "b8"), (2, "b10", "a10")],
];

const DIAMONDS: [[usize; 4]; 4] = [[3, 4, 6, 5], [3, 4, 6, 7], [3, 5, 6, 7], [2, 3, 7, 8]];

/// `(coefficient, arrow i, arrow j, product of their images)`.
type Term = (BigRational, usize, usize, RatElement);

/// Search for arrow signs under which the rank 4 relation list holds.
/// Diamond relations equate the two length-two paths across each diamond.
/// Arrows are represented by the degree one basis vectors.
pub fn relation_list_signs(amended: bool) -> SignSearch {
    let block = Block::principal(4, Parity::Even);
    let alg = Algebra::new(&block);
    let weights = block.enumerate();
    let name = |from: usize, to: usize| {
        ARROWS
            .iter()
            .find(|a| a.1 == from && a.2 == to)
            .map(|a| a.0)
            .expect("diamond edges are arrows")
    };
    let mut rels: Vec<Vec<(i64, &str, &str)>> = ZERO_RELATIONS.iter().map(|r| r.to_vec()).collect();
    if amended {
        for t in rels.iter_mut().flatten() {
            if matches!((t.1, t.2), ("a7", "b7") | ("b7", "a7")) {
                t.0 = -t.0;
            }
        }
    }
    for d in DIAMONDS {
        for s in 0..4 {
            let (x, u, y, w) = (d[s], d[(s + 1) % 4], d[(s + 2) % 4], d[(s + 3) % 4]);
            rels.push(vec![(1, name(x, u), name(u, y)), (-1, name(x, w), name(w, y))]);
        }
    }
    let rep: HashMap<&str, RatElement> = ARROWS
        .iter()
        .map(|&(n, f, t)| {
            (n, pair_one(&weights[f - 1], &weights[t - 1]).expect("arrow").to_rational())
        })
        .collect();
    let idx = |n: &str| ARROWS.iter().position(|a| a.0 == n).expect("known arrow");
    // each relation as terms (coefficient, arrow i, arrow j, product)
    let terms: Vec<Vec<Term>> = rels
        .iter()
        .map(|r| {
            r.iter()
                .map(|&(c, a, b)| (BigRational::from(BigInt::from(c)), idx(a), idx(b), alg.mul(&rep[a], &rep[b])))
                .collect()
        })
        .collect();
    let holds = |rel: &[Term], s: &[i8]| {
        let mut acc = RatElement::zero();
        for (c, i, j, e) in rel {
            let sign = BigRational::from(BigInt::from(s[*i] * s[*j]));
            acc = &acc + &e.scaled(&(c * sign));
        }
        acc.is_zero()
    };
    // relations become decidable once their largest arrow index is assigned
    let ready: Vec<usize> = terms.iter().map(|r| r.iter().map(|t| t.1.max(t.2)).max().unwrap_or(0)).collect();
    fn search(
        pos: usize,
        s: &mut Vec<i8>,
        ready: &[usize],
        rels: &[Vec<Term>],
        holds: &dyn Fn(&[Term], &[i8]) -> bool,
    ) -> bool {
        if pos == ARROWS.len() {
            return true;
        }
        for v in [1i8, -1] {
            s.push(v);
            let ok = rels.iter().zip(ready).filter(|(_, &r)| r == pos).all(|(rel, _)| holds(rel, s));
            if ok && search(pos + 1, s, ready, rels, holds) {
                return true;
            }
            s.pop();
        }
        false
    }
    let mut s = Vec::new();
    let found = search(0, &mut s, &ready, &terms, &holds);
    SignSearch {
        amended,
        signs: found.then(|| ARROWS.iter().zip(&s).map(|(a, &v)| (a.0.to_string(), v)).collect()),
        relations: rels.len(),
    }
}
