//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero on any unexpected outcome. Criterion 10 is known to fail; its
//! line carries the witness and the result of the sign-twisted check.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use arcalg::algebra::{multiply_stacked_reference, multiply_stacked_scheduled, pair_one, Layer, Schedule};
use arcalg::cellstruct::{audit_dimension, relabelled_structure, type_b_decomposition, type_b_label};
use arcalg::prelude::*;
use arcalg::quiver::{arrow_checks, phi, verify_braden, Generator};
use arcalg::verify::{self, Check};

/// Canonical rank 4 order, also the vertex numbering of the quiver.
const ORDER: [&str; 8] = ["vvvv", "^^vv", "^v^v", "v^^v", "^vv^", "v^v^", "vv^^", "^^^^"];

const CARTAN: [[&str; 8]; 8] = [
    ["1", "q", "0", "0", "0", "0", "0", "q^2"],
    ["q", "1+q^2", "q", "0", "0", "0", "q^2", "q+q^3"],
    ["0", "q", "1+q^2", "q", "q", "q^2", "q+q^3", "q^2"],
    ["0", "0", "q", "1+q^2", "q^2", "q+q^3", "q^2", "0"],
    ["0", "0", "q", "q^2", "1+q^2", "q+q^3", "q^2", "0"],
    ["0", "0", "q^2", "q+q^3", "q+q^3", "1+2q^2+q^4", "q+q^3", "0"],
    ["0", "q^2", "q+q^3", "q^2", "q^2", "q+q^3", "1+2q^2+q^4", "q+q^3"],
    ["q^2", "q+q^3", "q^2", "0", "0", "0", "q+q^3", "1+2q^2+q^4"],
];

const QDEC: [[&str; 8]; 8] = [
    ["1", "q", "0", "0", "0", "0", "0", "q^2"],
    ["0", "1", "q", "0", "0", "0", "q^2", "q"],
    ["0", "0", "1", "q", "q", "q^2", "q", "0"],
    ["0", "0", "0", "1", "0", "q", "0", "0"],
    ["0", "0", "0", "0", "1", "q", "0", "0"],
    ["0", "0", "0", "0", "0", "1", "q", "0"],
    ["0", "0", "0", "0", "0", "0", "1", "q"],
    ["0", "0", "0", "0", "0", "0", "0", "1"],
];

const EDGES: [(usize, usize); 10] = [(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7), (7, 8), (2, 8), (3, 7)];

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn from_checks(checks: &[Check]) -> Outcome {
        let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.to_string()).collect();
        let checked: usize = checks.iter().map(|c| c.checked).sum();
        if failed.is_empty() {
            Outcome::pass(format!("{} checks, {checked} items", checks.len()))
        } else {
            Outcome::fail(failed.join("; "))
        }
    }

    fn pass(detail: String) -> Outcome {
        Outcome { passed: true, detail }
    }

    fn fail(detail: String) -> Outcome {
        Outcome { passed: false, detail }
    }

    fn require(ok: bool, what: &str) -> Result<(), String> {
        if ok {
            Ok(())
        } else {
            Err(what.to_string())
        }
    }
}

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn b(s: &str) -> BasisVector {
    s.parse().unwrap()
}

fn el(terms: &[(i64, &str)]) -> Element {
    Element::from_terms(terms.iter().map(|&(c, x)| (b(x), BigInt::from(c))))
}

fn rank4() -> Block {
    Block::principal(4, Parity::Even)
}

fn both(k: std::ops::RangeInclusive<usize>) -> Vec<Block> {
    k.flat_map(|k| [Block::principal(k, Parity::Even), Block::principal(k, Parity::Odd)]).collect()
}

fn labels_match(m: &PolyMatrix) -> bool {
    m.row_labels.iter().map(|x| x.to_string()).eq(ORDER.iter().map(|s| s.to_string()))
        && m.col_labels == m.row_labels
}

fn compare(m: &PolyMatrix, printed: &[[&str; 8]; 8]) -> Result<usize, String> {
    if !labels_match(m) {
        return Err("labels out of canonical order".into());
    }
    for (r, row) in printed.iter().enumerate() {
        for (c, want) in row.iter().enumerate() {
            let want: QPoly = want.parse().unwrap();
            if *m.get(r, c) != want {
                return Err(format!("entry ({}, {}): {} vs printed {want}", ORDER[r], ORDER[c], m.get(r, c)));
            }
        }
    }
    Ok(64)
}

fn c1() -> Outcome {
    match compare(&cartan_matrix(&rank4()), &CARTAN) {
        Ok(n) => Outcome::pass(format!("{n} entries")),
        Err(e) => Outcome::fail(e),
    }
}

fn c2() -> Outcome {
    let m = decomposition_matrix(&rank4());
    if let Err(e) = compare(&m, &QDEC) {
        return Outcome::fail(e);
    }
    for r in 0..8 {
        for c in 0..8 {
            let ok = match r.cmp(&c) {
                std::cmp::Ordering::Equal => *m.get(r, c) == QPoly::one(),
                std::cmp::Ordering::Greater => m.get(r, c).is_zero(),
                std::cmp::Ordering::Less => true,
            };
            if !ok {
                return Outcome::fail(format!("not upper unitriangular at ({r}, {c})"));
            }
        }
    }
    let blocks = both(2..=6);
    for block in &blocks {
        let m = decomposition_matrix(block);
        if cartan_matrix(block) != m.transpose().matmul(&m) {
            return Outcome::fail(format!("C != M^t M for {} {}", block.theta_string(), block.parity()));
        }
    }
    Outcome::pass(format!("64 entries, unitriangular, C = M^t M on {} blocks", blocks.len()))
}

fn c3() -> Outcome {
    let claimed: QPoly = "8+20q+24q^2+12q^3+2q^4".parse().unwrap();
    let a = audit_dimension(&rank4(), &claimed);
    let low: Vec<u64> = (0..4).map(|d| a.counted.coeff(d)).collect();
    let detail = format!(
        "counted {} (total {}, q^4 coefficient {}); stated {} (total {}, q^4 coefficient {}); mismatch in degrees {:?}",
        a.counted,
        a.counted.at_one(),
        a.counted.coeff(4),
        a.claimed,
        a.claimed.at_one(),
        a.claimed.coeff(4),
        a.mismatched_degrees
    );
    let ok = a.consistent() && low == [8, 20, 24, 12] && !a.claim_holds() && a.mismatched_degrees == [4];
    Outcome { passed: ok, detail }
}

fn c4() -> Outcome {
    let mut checks = vec![verify::assoc_exhaustive(&Algebra::new(&rank4()))];
    for k in [5, 6] {
        checks.push(verify::assoc_random(&Algebra::new(&Block::principal(k, Parity::Even)), 10_000, k as u64));
    }
    Outcome::from_checks(&checks)
}

fn c5() -> Outcome {
    let checks: Vec<Check> = [4, 5]
        .iter()
        .map(|&k| verify::surgery_order(&Algebra::new(&Block::principal(k, Parity::Even)), 3, 7))
        .collect();
    Outcome::from_checks(&checks)
}

fn c6() -> Outcome {
    let checks: Vec<Check> = both(1..=5).iter().map(|b| verify::reference_oracle(&Algebra::new(b))).collect();
    Outcome::from_checks(&checks)
}

fn c7() -> Outcome {
    match worked_examples() {
        Ok(n) => Outcome::pass(format!("{n} products")),
        Err(e) => Outcome::fail(e),
    }
}

fn worked_examples() -> Result<usize, String> {
    let mut n = 0;
    let mut expect = |got: Element, want: Element, what: &str| -> Result<(), String> {
        n += 1;
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: got {got}, expected {want}"))
        }
    };
    let mul = |x: &str, y: &str| multiply(&b(x), &b(y)).map_err(|e| e.to_string());

    // merge followed by split
    expect(
        mul("vv^^;v^v^;v^v^", "v^v^;v^v^;vv^^")?,
        el(&[(-1, "vv^^;^v^v;vv^^"), (1, "vv^^;v^v^;vv^^")]),
        "merge-split",
    )?;
    expect(
        mul("^v^^;^^v^;^^v^", "^^v^;^^v^;^v^^")?,
        el(&[(-1, "^v^^;vv^v;^v^^"), (1, "^v^^;^^v^;^v^^")]),
        "merge-split",
    )?;

    // split followed by merge, with the coefficient -2
    let stacked = |bottom: &str, mid: &str, top: &str, labels: [&str; 2], seed: Option<u64>| {
        let layers = [Layer::new(w(mid), vec![(3, 6)])];
        let labels = [w(labels[0]), w(labels[1])];
        let r = match seed {
            None => multiply_stacked(&w(bottom), &layers, &w(top), &labels),
            Some(s) => {
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                multiply_stacked_scheduled(&w(bottom), &layers, &w(top), &labels, &mut Schedule::Random(&mut rng))
            }
        };
        r.map_err(|e| e.to_string())
    };
    expect(
        stacked("vvv^^^", "v^vv^^", "vv^^v^", ["v^v^v^", "v^v^v^"], None)?,
        el(&[(-2, "vvv^^^;^v^v^v;vv^^v^")]),
        "split-merge",
    )?;
    expect(
        stacked("^vv^^^", "^^vv^^", "^v^^v^", ["^^v^v^", "^^v^v^"], None)?,
        el(&[(-2, "^vv^^^;vv^v^v;^v^^v^")]),
        "split-merge",
    )?;

    // a split leading to a non-orientable diagram, in either order of surgeries
    let args = ("^vv^^^", "^^vv^^", "vv^^^^", ["^^v^v^", "^^vv^^"]);
    for seed in [None, Some(1), Some(2), Some(3), Some(4)] {
        expect(stacked(args.0, args.1, args.2, args.3, seed)?, Element::zero(), "not orientable")?;
    }
    let r = multiply_stacked_reference(
        &w(args.0),
        &[Layer::new(w(args.1), vec![(3, 6)])],
        &w(args.2),
        &[w(args.3[0]), w(args.3[1])],
    )
    .map_err(|e| e.to_string())?;
    expect(r, Element::zero(), "not orientable (diagrammatic rules)")?;

    // triples: zero products and the diamond identity
    let alg = Algebra::new(&rank4());
    let one = |x: &str, y: &str| pair_one(&w(x), &w(y)).map_err(|e| format!("{x} {y}: {e}"));
    let (l1, l2, l3, mu, eta) = ("^^^^", "vv^^", "v^v^", "^v^v", "^^vv");
    expect(alg.mul(&one(l1, l2)?, &one(l2, l3)?), Element::zero(), "triple zero")?;
    expect(alg.mul(&one(l2, l3)?, &one(l1, l2)?), Element::zero(), "triple zero")?;
    let left = alg.mul(&one(l1, l2)?, &one(l2, mu)?);
    expect(left.clone(), el(&[(1, "^^^^;^^vv;^v^v")]), "triple product")?;
    expect(left, alg.mul(&one(l1, eta)?, &one(eta, mu)?), "diamond identity")?;

    // a rank 6 diamond under the isomorphism onto Braden's algebra
    let alg6 = Algebra::new(&Block::principal(6, Parity::Even));
    let p = |x: &str, y: &str| phi(&Generator::P(w(x), w(y))).map_err(|e| e.to_string());
    let (d1, d2, d3, d4) = ("v^v^^^", "vv^^^^", "^v^v^^", "^vv^^^");
    let left = alg6.mul(&p(d3, d2)?, &p(d2, d1)?);
    let right = alg6.mul(&p(d3, d4)?, &p(d4, d1)?);
    n += 1;
    if left != right || left.to_string() != "[^v^v^^;v^v^vv;v^v^^^] + [^v^v^^;^v^v^^;v^v^^^]" {
        return Err(format!("rank 6 diamond: {left} vs {right}"));
    }
    Ok(n)
}

fn c8() -> Outcome {
    let checks: Vec<Check> = both(1..=7).iter().map(verify::orientation_count).collect();
    Outcome::from_checks(&checks)
}

fn c9() -> Outcome {
    let mut checks: Vec<Check> = both(1..=6).iter().map(verify::circle_degree_law).collect();
    for block in both(1..=5) {
        let alg = Algebra::new(&block);
        checks.push(verify::degree_additive(&alg));
        let zero = alg.basis().iter().filter(|x| x.degree() == 0).count();
        let size = block.enumerate().len();
        let fail = (zero != size).then(|| format!("{}: {zero} degree zero vectors, {size} weights", block.theta_string()));
        checks.push(Check::new("degree zero dimension = |block|", 1, fail));
    }
    Outcome::from_checks(&checks)
}

fn c10() -> Outcome {
    let algs: Vec<Algebra> = [4, 5].iter().map(|&k| Algebra::new(&Block::principal(k, Parity::Even))).collect();
    let strict: Vec<Check> = algs.iter().map(verify::cellularity).collect();
    let twisted: Vec<Check> = algs.iter().map(verify::cellularity_twisted).collect();
    let mut o = Outcome::from_checks(&strict);
    let t = Outcome::from_checks(&twisted);
    o.detail = format!(
        "{}; after a sign rescaling of the basis: {} {}",
        o.detail,
        if t.passed { "PASS" } else { "FAIL" },
        t.detail
    );
    o
}

fn c11() -> Outcome {
    let q = quiver(&rank4());
    let adjacency = || -> Result<(), String> {
        Outcome::require(q.vertices.len() == 8, "8 vertices")?;
        Outcome::require(q.vertices.iter().map(|v| v.to_string()).eq(ORDER.iter().map(|s| s.to_string())), "vertex order")?;
        Outcome::require(q.arrows.len() == 20, "10 arrow pairs")?;
        for i in 1..=8 {
            for j in 1..=8 {
                let listed = EDGES.contains(&(i, j)) || EDGES.contains(&(j, i));
                if q.has_arrow(i - 1, j - 1) != listed {
                    return Err(format!("arrow {i} -> {j}"));
                }
            }
        }
        Ok(())
    };
    if let Err(e) = adjacency() {
        return Outcome::fail(format!("rank 4 quiver: {e}"));
    }
    let checks: Vec<Check> = both(1..=6).iter().flat_map(arrow_checks).collect();
    let mut o = Outcome::from_checks(&checks);
    o.detail = format!("rank 4 adjacency exact; {}", o.detail);
    o
}

fn c12() -> Outcome {
    let reports: Vec<_> = [4, 5].iter().map(|&k| verify_braden(k, 2)).collect();
    let checks: Vec<Check> = reports.iter().flat_map(|r| r.checks.clone()).collect();
    let mut o = Outcome::from_checks(&checks);
    let undecided: Vec<String> = reports.iter().map(|r| format!("k={}: {}", r.k, r.undecided_triples)).collect();
    o.detail = format!("{}; undecided triples {}", o.detail, undecided.join(", "));
    o
}

fn c13() -> Outcome {
    let checks: Vec<Check> = [4, 5]
        .iter()
        .map(|&k| verify::generation(&Algebra::new(&Block::principal(k, Parity::Even))))
        .collect();
    Outcome::from_checks(&checks)
}

fn c14() -> Outcome {
    let other = Block::from_theta("bbxbbo", Parity::Even).unwrap();
    let a = relabelled_structure(&other);
    let b = relabelled_structure(&rank4());
    if a == b {
        Outcome::pass(format!("{} products agree", a.len()))
    } else {
        Outcome::fail(format!("{} vs {} products, first difference {:?}", a.len(), b.len(), a.iter().zip(&b).find(|(x, y)| x != y)))
    }
}

fn c15() -> Outcome {
    let m = type_b_decomposition(3);
    let idx = |s: &Weight| -> Option<usize> {
        let d = type_b_label(s).ok()?.to_string();
        ORDER.iter().position(|o| *o == d)
    };
    let mut n = 0;
    for (r, s) in m.row_labels.iter().enumerate() {
        for (c, t) in m.col_labels.iter().enumerate() {
            let (Some(i), Some(j)) = (idx(s), idx(t)) else {
                return Outcome::fail(format!("{s} or {t} has no image"));
            };
            let want: QPoly = QDEC[i][j].parse().unwrap();
            if *m.get(r, c) != want {
                return Outcome::fail(format!("({s}, {t}): {} vs {want}", m.get(r, c)));
            }
            n += 1;
        }
    }
    Outcome::pass(format!("{n} entries"))
}

type Criterion = (u32, &'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 15] = [
    (1, "rank 4 Cartan matrix", c1),
    (2, "decomposition matrix and C = M^t M", c2),
    (3, "graded dimension audit", c3),
    (4, "associativity", c4),
    (5, "surgery order independence", c5),
    (6, "algebraic and diagrammatic products agree", c6),
    (7, "worked examples", c7),
    (8, "orientation counts", c8),
    (9, "degree laws", c9),
    (10, "cellularity axiom C-4", c10),
    (11, "quiver", c11),
    (12, "Braden relations", c12),
    (13, "generation in degrees 0 and 1", c13),
    (14, "block independence", c14),
    (15, "type B decomposition numbers", c15),
];

/// Criteria whose failure is understood and documented.
const KNOWN_RED: [u32; 1] = [10];

fn main() -> ExitCode {
    let start = Instant::now();
    let mut unexpected = 0;
    for (id, name, run) in CRITERIA {
        let t = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if !o.passed && KNOWN_RED.contains(&id) { " [known]" } else { "" };
        println!("criterion {id:>2} {status}{note} {name} ({} ms): {}", t.elapsed().as_millis(), o.detail);
        if !o.passed && !KNOWN_RED.contains(&id) {
            unexpected += 1;
        }
    }
    println!("acceptance: {unexpected} unexpected failures in {} ms", start.elapsed().as_millis());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
