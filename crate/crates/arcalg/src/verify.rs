//! Property suites shared by the command line and the test targets.
//!
//! Each suite returns a [`Check`]: how many instances were examined and the
//! first counterexample, if any.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{multiply_reference, multiply_scheduled, Algebra, BasisVector, Element, Schedule};
use crate::diagrams::{arc_degree, circle_diagram, cup_diagram, half_degree, orientations, ComponentKind, Vertex};
use crate::weights::{bruhat_leq, Block, Symbol, Weight};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, checked: usize, failure: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            checked,
            passed: failure.is_none(),
            witness: failure,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checked)", self.name, self.checked)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

/// First failure in index order, so reports do not depend on thread timing.
fn first_failure<I>(items: I) -> Option<String>
where
    I: IndexedParallelIterator<Item = Option<String>>,
{
    items.collect::<Vec<_>>().into_iter().flatten().next()
}

/// `(xy)z = x(yz)` for every ordered triple of basis vectors.
pub fn assoc_exhaustive(alg: &Algebra) -> Check {
    let n = alg.dim();
    let fail = first_failure((0..n).into_par_iter().map(|i| {
        let x: Element = alg.basis_element(i);
        for j in 0..n {
            let y: Element = alg.basis_element(j);
            let xy = alg.mul(&x, &y);
            for k in 0..n {
                let z: Element = alg.basis_element(k);
                let left = alg.mul(&xy, &z);
                let right = alg.mul(&x, &alg.mul(&y, &z));
                if left != right {
                    return Some(format!("{} {} {}: {left} vs {right}", alg.basis()[i], alg.basis()[j], alg.basis()[k]));
                }
            }
        }
        None
    }));
    Check::new("associativity (exhaustive)", n * n * n, fail)
}

/// Random composable basis triples; composability is forced so no sample is
/// trivially zero.
pub fn assoc_random(alg: &Algebra, samples: usize, seed: u64) -> Check {
    let by_left = by_left(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<(usize, usize, usize)> = (0..samples)
        .map(|_| {
            let i = rng.gen_range(0..alg.dim());
            let ys = &by_left[&alg.basis()[i].mu];
            let j = ys[rng.gen_range(0..ys.len())];
            let zs = &by_left[&alg.basis()[j].mu];
            let k = zs[rng.gen_range(0..zs.len())];
            (i, j, k)
        })
        .collect();
    let fail = first_failure(triples.par_iter().map(|&(i, j, k)| {
        let (x, y, z): (Element, Element, Element) = (alg.basis_element(i), alg.basis_element(j), alg.basis_element(k));
        let left = alg.mul(&alg.mul(&x, &y), &z);
        let right = alg.mul(&x, &alg.mul(&y, &z));
        (left != right).then(|| format!("{} {} {}", alg.basis()[i], alg.basis()[j], alg.basis()[k]))
    }));
    Check::new(&format!("associativity ({samples} random triples, seed {seed})"), samples, fail)
}

fn by_left(alg: &Algebra) -> HashMap<Weight, Vec<usize>> {
    let mut m: HashMap<Weight, Vec<usize>> = HashMap::new();
    for (i, b) in alg.basis().iter().enumerate() {
        m.entry(b.lambda.clone()).or_default().push(i);
    }
    m
}

/// Composable basis pairs `(x, y)` with `x.mu == y.lambda`.
pub fn composable_pairs(alg: &Algebra) -> Vec<(usize, usize)> {
    let by_left = by_left(alg);
    let mut out = Vec::new();
    for (i, x) in alg.basis().iter().enumerate() {
        for &j in &by_left[&x.mu] {
            out.push((i, j));
        }
    }
    out
}

/// The canonical schedule against `schedules` random admissible schedules
/// for every composable pair.
pub fn surgery_order(alg: &Algebra, schedules: usize, seed: u64) -> Check {
    let pairs = composable_pairs(alg);
    let fail = first_failure(pairs.par_iter().enumerate().map(|(n, &(i, j))| {
        let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
        let canon = alg.product(i, j);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        for _ in 0..schedules {
            let e = multiply_scheduled(x, y, &mut Schedule::Random(&mut rng)).expect("same block");
            if e != *canon {
                return Some(format!("{x} * {y}: {canon} vs {e}"));
            }
        }
        None
    }));
    Check::new(
        &format!("surgery order ({schedules} random schedules per pair)"),
        pairs.len() * schedules,
        fail,
    )
}

/// Random pairs only, for blocks too large to sweep.
pub fn surgery_order_sampled(alg: &Algebra, samples: usize, seed: u64) -> Check {
    let pairs = composable_pairs(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, usize, u64)> = (0..samples)
        .map(|_| {
            let (i, j) = pairs[rng.gen_range(0..pairs.len())];
            (i, j, rng.gen())
        })
        .collect();
    let fail = first_failure(picks.par_iter().map(|&(i, j, s)| {
        let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
        let mut r = ChaCha8Rng::seed_from_u64(s);
        let e = multiply_scheduled(x, y, &mut Schedule::Random(&mut r)).expect("same block");
        (e != *alg.product(i, j)).then(|| format!("{x} * {y}"))
    }));
    Check::new(&format!("surgery order ({samples} sampled pairs, seed {seed})"), samples, fail)
}

/// Closed polynomial surgery against the diagrammatic rules, all pairs.
pub fn reference_oracle(alg: &Algebra) -> Check {
    let n = alg.dim();
    let fail = first_failure((0..n).into_par_iter().map(|i| {
        for j in 0..n {
            let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
            let r = multiply_reference(x, y).expect("same block");
            let a = alg.product(i, j);
            if *a != r {
                return Some(format!("{x} * {y}: {a} vs reference {r}"));
            }
        }
        None
    }));
    Check::new("closed surgery = diagrammatic rules", n * n, fail)
}

/// Nonzero products have degree `deg x + deg y`.
pub fn degree_additive(alg: &Algebra) -> Check {
    let pairs = composable_pairs(alg);
    let fail = first_failure(pairs.par_iter().map(|&(i, j)| {
        let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
        let e = alg.product(i, j);
        match e.homogeneous_degree() {
            None if e.is_zero() => None,
            Some(d) if d == x.degree() + y.degree() => None,
            _ => Some(format!("{x} * {y} = {e}")),
        }
    }));
    Check::new("products are degree-additive", pairs.len(), fail)
}

/// Per-circle degree law: caps + 1 for a down tag, caps - 1 for an up tag.
pub fn circle_degree_law(block: &Block) -> Check {
    let weights = block.enumerate();
    let mut checked = 0;
    for lam in &weights {
        for mu in &weights {
            let d = circle_diagram(lam, mu).expect("same block");
            let t = d.topology();
            for o in orientations(&d) {
                let nu = &o[0];
                let mut per = vec![0i64; t.components.len()];
                for (cd, lab) in [(&d.bottom, nu), (&d.top, nu)] {
                    for (l, r, dotted) in cd.cups() {
                        let c = t.component_of(Vertex { pos: l, level: 0 });
                        per[c] += arc_degree(dotted, lab.get(l), lab.get(r)).expect("oriented") as i64;
                    }
                }
                for (c, comp) in t.components.iter().enumerate() {
                    if comp.kind != ComponentKind::Circle {
                        continue;
                    }
                    checked += 1;
                    let caps = comp.cap_count as i64;
                    let want = if nu.get(comp.tag.pos) == Symbol::Down { caps + 1 } else { caps - 1 };
                    if per[c] != want {
                        return Check::new(
                            "circle degree = caps +- 1",
                            checked,
                            Some(format!("{lam};{nu};{mu} component tagged {}", comp.tag.pos)),
                        );
                    }
                    let undotted = comp.undotted_arc_count;
                    if undotted % 2 != 0 {
                        return Check::new(
                            "circle degree = caps +- 1",
                            checked,
                            Some(format!("{lam};{nu};{mu}: odd undotted count on an oriented circle")),
                        );
                    }
                }
            }
        }
    }
    Check::new("circle degree = caps +- 1", checked, None)
}

/// `#{μ : λ̲μ oriented} = 2^defect(λ)` for every weight.
pub fn orientation_count(block: &Block) -> Check {
    let weights = block.enumerate();
    for lam in &weights {
        let c = cup_diagram(lam);
        let count = weights.iter().filter(|mu| half_degree(&c, mu).is_some()).count();
        if count != 1 << c.cup_count() {
            return Check::new(
                "orientations = 2^defect",
                weights.len(),
                Some(format!("{lam}: {count} orientations, defect {}", c.cup_count())),
            );
        }
    }
    Check::new("orientations = 2^defect", weights.len(), None)
}

/// Axiom (C-4) and the triangularity of products.
///
/// For each basis `x` and each cell element `γ μ δ`, the part of
/// `x · (γ μ δ)` with middle weight `μ` must be `Σ r(γ', γ) (γ' μ δ)` with
/// coefficients independent of `δ`; all other terms must have middle weight
/// strictly above `μ`.
pub fn cellularity(alg: &Algebra) -> Check {
    let block = alg.block().clone();
    let weights = block.enumerate();
    // cells[μ] = weights γ with γ ⊂ μ
    let cells: HashMap<Weight, Vec<Weight>> = weights
        .iter()
        .map(|mu| {
            let gs = weights
                .iter()
                .filter(|g| half_degree(&cup_diagram(g), mu).is_some())
                .cloned()
                .collect();
            (mu.clone(), gs)
        })
        .collect();
    let n = alg.dim();
    let fail = first_failure((0..n).into_par_iter().map(|xi| {
        let x: Element = alg.basis_element(xi);
        for mu in &weights {
            let gs = &cells[mu];
            for g in gs {
                let mut seen: Option<BTreeMap<Weight, BigInt>> = None;
                for dlt in gs {
                    let y = BasisVector {
                        lambda: g.clone(),
                        nu: mu.clone(),
                        mu: dlt.clone(),
                    };
                    let prod = alg.mul(&x, &Element::basis(y.clone()));
                    let mut r = BTreeMap::new();
                    for (t, c) in prod.terms() {
                        if &t.nu == mu {
                            r.insert(t.lambda.clone(), c.clone());
                        } else if !(bruhat_leq(mu, &t.nu)) {
                            return Some(format!("{} * {y}: term {t} below the cell", alg.basis()[xi]));
                        }
                        if t.mu != *dlt {
                            return Some(format!("{} * {y}: right label changed", alg.basis()[xi]));
                        }
                    }
                    match &seen {
                        None => seen = Some(r),
                        Some(s) if *s != r => {
                            return Some(format!("{} * {y}: coefficients depend on the right label", alg.basis()[xi]))
                        }
                        _ => {}
                    }
                }
            }
        }
        None
    }));
    Check::new("cellularity (C-4)", n, fail)
}

/// Products `(aλb)(cμd)` only produce middle weights above both `λ` and `μ`.
pub fn triangularity(alg: &Algebra) -> Check {
    let pairs = composable_pairs(alg);
    let fail = first_failure(pairs.par_iter().map(|&(i, j)| {
        let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
        alg.product(i, j)
            .terms()
            .find(|(t, _)| !bruhat_leq(&x.nu, &t.nu) || !bruhat_leq(&y.nu, &t.nu))
            .map(|(t, _)| format!("{x} * {y} has term {t}"))
    }));
    Check::new("middle weights increase", pairs.len(), fail)
}

/// Star is an involutive anti-automorphism.
pub fn star_antiautomorphism(alg: &Algebra) -> Check {
    let pairs = composable_pairs(alg);
    let fail = first_failure(pairs.par_iter().map(|&(i, j)| {
        let (x, y) = (&alg.basis()[i], &alg.basis()[j]);
        let lhs = alg.product(i, j).star();
        let rhs = alg.mul(&Element::basis(y.star()), &Element::basis(x.star()));
        (lhs != rhs).then(|| format!("{x} * {y}"))
    }));
    Check::new("star(xy) = star(y) star(x)", pairs.len(), fail)
}

/// Rank over the rationals of a set of elements, by incremental elimination.
#[derive(Default)]
pub struct RankTracker {
    rows: Vec<(usize, BTreeMap<usize, BigRational>)>,
}

impl RankTracker {
    /// Insert a vector; returns whether it increased the rank.
    pub fn insert(&mut self, mut v: BTreeMap<usize, BigRational>) -> bool {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (k, x) in row {
                    let e = v.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        v.remove(k);
                    }
                }
            }
        }
        let Some((&p, c)) = v.iter().next() else {
            return false;
        };
        let inv = BigRational::one() / c;
        let row: BTreeMap<usize, BigRational> = v.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        // keep rows reduced against the new pivot
        for (_, r) in self.rows.iter_mut() {
            if let Some(c) = r.get(&p).cloned() {
                for (k, x) in &row {
                    let e = r.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &c * x;
                    if e.is_zero() {
                        r.remove(k);
                    }
                }
            }
        }
        self.rows.push((p, row));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn as_vector(alg: &Algebra, e: &Element) -> BTreeMap<usize, BigRational> {
    e.terms()
        .map(|(b, c)| (alg.index_of(b).expect("in basis"), BigRational::from(c.clone())))
        .collect()
}

/// Products of basis vectors of degree at most one span the algebra.
pub fn generation(alg: &Algebra) -> Check {
    let gens: Vec<usize> = (0..alg.dim()).filter(|&i| alg.basis()[i].degree() <= 1).collect();
    let mut tracker = RankTracker::default();
    let mut frontier: Vec<Element> = Vec::new();
    for &g in &gens {
        let e: Element = alg.basis_element(g);
        if tracker.insert(as_vector(alg, &e)) {
            frontier.push(e);
        }
    }
    while !frontier.is_empty() && tracker.rank() < alg.dim() {
        let mut next = Vec::new();
        for f in &frontier {
            for &g in &gens {
                let e = alg.mul(f, &alg.basis_element(g));
                if !e.is_zero() && tracker.insert(as_vector(alg, &e)) {
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    let fail = (tracker.rank() != alg.dim()).then(|| format!("span has rank {} of {}", tracker.rank(), alg.dim()));
    Check::new("degree <= 1 generates", alg.dim(), fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::Parity;

    #[test]
    fn small_blocks_pass_everything() {
        for k in 1..=3 {
            for p in [Parity::Even, Parity::Odd] {
                let alg = Algebra::new(&Block::principal(k, p));
                for c in [
                    assoc_exhaustive(&alg),
                    surgery_order(&alg, 2, 1),
                    reference_oracle(&alg),
                    degree_additive(&alg),
                    cellularity_twisted(&alg),
                    triangularity(&alg),
                    star_antiautomorphism(&alg),
                    generation(&alg),
                    circle_degree_law(alg.block()),
                    orientation_count(alg.block()),
                ] {
                    assert!(c.passed, "k={k} {p}: {c}");
                }
            }
        }
    }

    #[test]
    fn strict_cellularity_breaks_at_rank_two() {
        assert!(cellularity(&Algebra::new(&Block::principal(1, Parity::Even))).passed);
        let c = cellularity(&Algebra::new(&Block::principal(2, Parity::Even)));
        assert!(!c.passed);
        assert!(c.to_string().contains("^^;vv;vv * vv;vv;^^"), "{c}");
    }

    #[test]
    fn rank_tracker() {
        let v = |xs: &[(usize, i64)]| -> BTreeMap<usize, BigRational> {
            xs.iter().map(|&(k, x)| (k, BigRational::from_integer(x.into()))).collect()
        };
        let mut t = RankTracker::default();
        assert!(t.insert(v(&[(0, 1), (1, 2)])));
        assert!(t.insert(v(&[(1, 1)])));
        assert!(!t.insert(v(&[(0, 3), (1, 5)])));
        assert!(!t.insert(v(&[])));
        assert_eq!(t.rank(), 2);
    }
}

/// Linear system over GF(2), reduced as rows arrive.
#[derive(Default)]
struct Gf2 {
    rows: Vec<(usize, Vec<u64>, bool)>,
}

impl Gf2 {
    /// Add `Σ x_v = rhs`; false if the system became inconsistent.
    fn insert(&mut self, vars: &[usize], rhs: bool, width: usize) -> bool {
        let mut v = vec![0u64; width.div_ceil(64)];
        for &x in vars {
            v[x / 64] ^= 1 << (x % 64);
        }
        let mut rhs = rhs;
        for (p, row, r) in &self.rows {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
                rhs ^= r;
            }
        }
        match (0..width).find(|&x| v[x / 64] >> (x % 64) & 1 == 1) {
            Some(p) => {
                self.rows.push((p, v, rhs));
                true
            }
            None => !rhs,
        }
    }

    /// One solution, free variables set to zero.
    fn solve(&self, width: usize) -> Vec<bool> {
        let mut x = vec![false; width];
        for (p, row, rhs) in self.rows.iter().rev() {
            let mut acc = *rhs;
            for (q, xq) in x.iter().enumerate() {
                if q != *p && *xq && row[q / 64] >> (q % 64) & 1 == 1 {
                    acc ^= true;
                }
            }
            x[*p] = acc;
        }
        x
    }
}

/// Whether some rescaling of the basis by signs `s(γμδ) = s(δμγ)` makes the
/// (C-4) coefficients independent of `δ`. On success the witness lists the
/// basis vectors whose sign flips.
pub fn cellularity_twisted(alg: &Algebra) -> Check {
    let weights = alg.block().enumerate();
    let cells: HashMap<Weight, Vec<Weight>> = weights
        .iter()
        .map(|mu| {
            let gs = weights
                .iter()
                .filter(|g| half_degree(&cup_diagram(g), mu).is_some())
                .cloned()
                .collect();
            (mu.clone(), gs)
        })
        .collect();
    // one variable per star orbit
    let var = |b: &BasisVector| {
        let s = b.star();
        alg.index_of(if s < *b { &s } else { b }).expect("in basis")
    };
    let width = alg.dim();
    let mut sys = Gf2::default();
    let mut equations = 0;
    // idempotents keep their sign
    for w in &weights {
        sys.insert(&[var(&BasisVector::idempotent(w))], false, width);
    }
    for xi in 0..alg.dim() {
        let x: Element = alg.basis_element(xi);
        for mu in &weights {
            let gs = &cells[mu];
            for g in gs {
                // per δ: γ' ↦ coefficient
                let mut rows: Vec<(Weight, BTreeMap<Weight, BigInt>)> = Vec::new();
                for d in gs {
                    let y = BasisVector {
                        lambda: g.clone(),
                        nu: mu.clone(),
                        mu: d.clone(),
                    };
                    let prod = alg.mul(&x, &Element::basis(y));
                    let r = prod
                        .terms()
                        .filter(|(t, _)| &t.nu == mu)
                        .map(|(t, c)| (t.lambda.clone(), c.clone()))
                        .collect();
                    rows.push((d.clone(), r));
                }
                let (d0, r0) = &rows[0];
                for (d, r) in &rows[1..] {
                    let same_shape = r.len() == r0.len()
                        && r.iter().zip(r0).all(|((a, c), (b, e))| a == b && num_traits::Signed::abs(c) == num_traits::Signed::abs(e));
                    if !same_shape {
                        return Check::new(
                            "cellularity (C-4) up to basis signs",
                            equations,
                            Some(format!("{} * ({g} {mu} {d}): coefficients differ beyond sign", alg.basis()[xi])),
                        );
                    }
                    for (gp, c) in r {
                        let flip = (c < &BigInt::zero()) != (r0[gp] < BigInt::zero());
                        let cell = |a: &Weight, b: &Weight| {
                            var(&BasisVector {
                                lambda: a.clone(),
                                nu: mu.clone(),
                                mu: b.clone(),
                            })
                        };
                        let vars = [cell(gp, d), cell(g, d), cell(gp, d0), cell(g, d0)];
                        equations += 1;
                        if !sys.insert(&vars, flip, width) {
                            return Check::new(
                                "cellularity (C-4) up to basis signs",
                                equations,
                                Some(format!("no consistent signs; last constraint from {} * ({g} {mu} {d})", alg.basis()[xi])),
                            );
                        }
                    }
                }
            }
        }
    }
    let sol = sys.solve(width);
    let flipped: Vec<String> = (0..width).filter(|&i| sol[i]).map(|i| alg.basis()[i].to_string()).collect();
    let mut c = Check::new("cellularity (C-4) up to basis signs", equations, None);
    c.witness = Some(format!("flip {} basis vectors and their stars: {}", flipped.len(), flipped.join(", ")));
    c
}
