use super::*;
use crate::algebra::Algebra;
use crate::weights::Parity;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn principal(k: usize) -> Block {
    Block::principal(k, Parity::Even)
}

#[test]
fn lambda_pair_examples() {
    let p = lambda_pairs(&w("^^vv"));
    assert_eq!(p.len(), 1);
    assert_eq!((p[0].alpha, p[0].beta), (-1, 2));
    assert_eq!(p[0].target, w("vvvv"));
    assert!(lambda_pairs(&w("vvvv")).is_empty());
    let p: Vec<_> = lambda_pairs(&w("v^v^")).into_iter().map(|p| (p.alpha, p.beta, p.target)).collect();
    assert_eq!(p, vec![(1, 2, w("^vv^")), (3, 4, w("v^^v"))]);
}

#[test]
fn pair_targets_are_larger() {
    for k in 1..=6 {
        for lam in principal(k).enumerate() {
            for p in lambda_pairs(&lam) {
                assert!(crate::weights::bruhat_leq(&lam, &p.target) && lam != p.target);
            }
        }
    }
}

#[test]
fn parent_examples() {
    let lam = w("vv^^");
    let inner = lambda_pairs(&lam).into_iter().find(|p| p.left == 2).unwrap();
    let q = parent(&lam, &inner).unwrap();
    assert_eq!((q.left, q.right), (1, 4));
    let lam = w("^^vv");
    assert!(parent(&lam, &lambda_pairs(&lam)[0]).is_none());
    let lam = w("^^^^");
    let first = lambda_pairs(&lam).into_iter().find(|p| p.left == 1).unwrap();
    let q = parent(&lam, &first).unwrap();
    assert_eq!((q.alpha, q.beta), (-3, 4));
}

#[test]
fn rank_four_quiver() {
    let q = quiver(&principal(4));
    assert_eq!(q.vertices.len(), 8);
    assert_eq!(q.arrows.len(), 20);
    // vertices numbered 1..8 in canonical order
    let edges = [(1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (5, 6), (6, 7), (7, 8), (2, 8), (3, 7)];
    for (a, b) in edges {
        assert!(q.has_arrow(a - 1, b - 1) && q.has_arrow(b - 1, a - 1));
    }
    let one = quiver(&principal(1));
    assert_eq!((one.vertices.len(), one.arrows.len()), (1, 0));
    assert!(q.to_dot().starts_with("digraph"));
    assert_eq!(q.to_dot(), quiver(&principal(4)).to_dot());
}

#[test]
fn arrows_are_degree_one_pairs() {
    for k in 1..=6 {
        for parity in [Parity::Even, Parity::Odd] {
            let block = Block::principal(k, parity);
            let q = quiver(&block);
            let ws = &q.vertices;
            for (i, a) in ws.iter().enumerate() {
                for (j, b) in ws.iter().enumerate() {
                    let (lo, hi) = if crate::weights::bruhat_leq(a, b) { (a, b) } else { (b, a) };
                    let deg_one = i != j
                        && crate::weights::bruhat_leq(lo, hi)
                        && crate::diagrams::half_degree(&cup_diagram(lo), hi) == Some(1);
                    assert_eq!(q.has_arrow(i, j), deg_one, "{a} {b}");
                }
            }
        }
    }
}

#[test]
fn rank_four_diamonds() {
    let block = principal(4);
    let ws = block.enumerate();
    let num = |x: &Weight| ws.iter().position(|v| v == x).unwrap() + 1;
    let mut found: Vec<Vec<usize>> = diamonds(&block).iter().map(|d| d.iter().map(num).collect()).collect();
    found.sort();
    assert_eq!(found, vec![vec![2, 3, 7, 8], vec![3, 4, 6, 5], vec![3, 4, 6, 7], vec![3, 5, 6, 7]]);
    for d in diamonds(&block) {
        assert!(is_diamond(&d));
    }
}

#[test]
fn enlargeable_triples() {
    let s = triple_status(&w("vvvv"), &w("^^vv"), &w("^v^v"), 2).unwrap();
    assert_eq!(s, TripleStatus::Enlargeable { left: 0, right: 2 });
    let s = triple_status(&w("^v^v"), &w("v^^v"), &w("v^v^"), 2).unwrap();
    // both vertex 5 and vertex 7 complete this triple
    match s {
        TripleStatus::Extendable(x) => assert!(is_diamond(&[w("^v^v"), w("v^^v"), w("v^v^"), x])),
        other => panic!("{other:?}"),
    }
    assert!(triple_status(&w("vvvv"), &w("^^vv"), &w("vvvv"), 2).is_err());
    assert!(triple_status(&w("vvvv"), &w("^^^^"), &w("vv^^"), 2).is_err());
}

#[test]
fn rank_six_diamond_products() {
    let (l1, l2, l3, l4) = (w("v^v^^^"), w("vv^^^^"), w("^v^v^^"), w("^vv^^^"));
    let alg = Algebra::new(&principal(6));
    let p = |a: &Weight, b: &Weight| phi(&Generator::P(a.clone(), b.clone())).unwrap();
    let left = alg.mul(&p(&l3, &l2), &p(&l2, &l1));
    let right = alg.mul(&p(&l3, &l4), &p(&l4, &l1));
    assert_eq!(left, right);
    assert_eq!(left.to_string(), "[^v^v^^;v^v^vv;v^v^^^] + [^v^v^^;^v^v^^;v^v^^^]");
}

#[test]
fn braden_relations_rank_four() {
    let r = verify_braden(4, 2);
    assert!(r.passed(), "{:?}", r.checks);
    assert_eq!(r.undecided_triples, 2);
}

#[test]
fn rank_four_relation_list() {
    assert!(relation_list_signs(false).signs.is_none());
    let s = relation_list_signs(true).signs.unwrap();
    assert_eq!(s.len(), 20);
}

#[test]
fn phi_of_generators() {
    let lam = w("v^v^");
    assert_eq!(phi(&Generator::T(9, lam.clone())).unwrap(), phi(&Generator::E(lam.clone())).unwrap());
    assert!(phi(&Generator::T(0, lam.clone())).is_err());
    let alg = Algebra::new(&lam.block());
    for a in 1..=4 {
        let t = alg.mul(&phi(&Generator::T(a, lam.clone())).unwrap(), &phi(&Generator::T(-a, lam.clone())).unwrap());
        assert_eq!(t, phi(&Generator::E(lam.clone())).unwrap());
    }
}

#[test]
fn arrow_suite_passes() {
    for k in 1..=5 {
        for c in arrow_checks(&principal(k)) {
            assert!(c.passed, "{c}");
        }
    }
}
