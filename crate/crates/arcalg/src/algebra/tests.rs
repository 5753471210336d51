use super::*;
use crate::weights::Parity;

fn w(s: &str) -> Weight {
    s.parse().unwrap()
}

fn b(s: &str) -> BasisVector {
    s.parse().unwrap()
}

fn el(terms: &[(i64, &str)]) -> Element {
    Element::from_terms(terms.iter().map(|&(c, x)| (b(x), BigInt::from(c))))
}

#[test]
fn k4_basis() {
    let block = Block::principal(4, Parity::Even);
    let basis = basis(&block);
    assert_eq!(basis.iter().filter(|x| x.degree() == 0).count(), 8);
    assert_eq!(basis.len(), 67);
    assert_eq!(self::basis(&Block::principal(1, Parity::Even)).len(), 1);
}

#[test]
fn merge_then_split_examples() {
    let x = b("vv^^;v^v^;v^v^");
    let y = b("v^v^;v^v^;vv^^");
    assert_eq!(multiply(&x, &y).unwrap(), el(&[(-1, "vv^^;^v^v;vv^^"), (1, "vv^^;v^v^;vv^^")]));
    let x = b("^v^^;^^v^;^^v^");
    let y = b("^^v^;^^v^;^v^^");
    assert_eq!(multiply(&x, &y).unwrap(), el(&[(-1, "^v^^;vv^v;^v^^"), (1, "^v^^;^^v^;^v^^")]));
}

#[test]
fn split_then_merge_examples() {
    let e = multiply_stacked(&w("vvv^^^"), &[Layer::new(w("v^vv^^"), vec![(3, 6)])], &w("vv^^v^"), &[w("v^v^v^"), w("v^v^v^")]).unwrap();
    assert_eq!(e, el(&[(-2, "vvv^^^;^v^v^v;vv^^v^")]));
    let e = multiply_stacked(&w("^vv^^^"), &[Layer::new(w("^^vv^^"), vec![(3, 6)])], &w("^v^^v^"), &[w("^^v^v^"), w("^^v^v^")]).unwrap();
    assert_eq!(e, el(&[(-2, "^vv^^^;vv^v^v;^v^^v^")]));
}

#[test]
fn split_not_orientable() {
    let e = multiply_stacked(&w("^vv^^^"), &[Layer::new(w("^^vv^^"), vec![(3, 6)])], &w("vv^^^^"), &[w("^^v^v^"), w("^^vv^^")]).unwrap();
    assert!(e.is_zero());
    let r = multiply_stacked_reference(&w("^vv^^^"), &[Layer::new(w("^^vv^^"), vec![(3, 6)])], &w("vv^^^^"), &[w("^^v^v^"), w("^^vv^^")]).unwrap();
    assert!(r.is_zero());
}

#[test]
fn triples_example() {
    let x = b("^^^^;vv^^;vv^^");
    assert!(multiply(&x, &b("vv^^;v^v^;v^v^")).unwrap().is_zero());
    assert_eq!(multiply(&x, &b("vv^^;^v^v;^v^v")).unwrap(), el(&[(1, "^^^^;^^vv;^v^v")]));
    assert_eq!(x.star(), b("vv^^;vv^^;^^^^"));
}

#[test]
fn reference_agrees_on_examples() {
    for (x, y) in [
        ("vv^^;v^v^;v^v^", "v^v^;v^v^;vv^^"),
        ("^v^^;^^v^;^^v^", "^^v^;^^v^;^v^^"),
        ("^^^^;vv^^;vv^^", "vv^^;^v^v;^v^v"),
    ] {
        let (x, y) = (b(x), b(y));
        assert_eq!(multiply(&x, &y).unwrap(), multiply_reference(&x, &y).unwrap());
    }
}

#[test]
fn idempotents_act_trivially() {
    let block = Block::principal(4, Parity::Even);
    let alg = Algebra::new(&block);
    let unit: Element = alg.unit();
    for i in 0..alg.dim() {
        let x: Element = alg.basis_element(i);
        assert_eq!(alg.mul(&unit, &x), x);
        assert_eq!(alg.mul(&x, &unit), x);
    }
}

#[test]
fn special_element_degrees() {
    let lam = w("v^v^");
    for p in crate::quiver::lambda_pairs(&lam) {
        let e = pair_one(&lam, &p.target).unwrap();
        assert_eq!(e.homogeneous_degree(), Some(1));
        let e = pair_one(&p.target, &lam).unwrap();
        assert_eq!(e.homogeneous_degree(), Some(1));
    }
    let x = x_element(2, &lam).unwrap();
    assert_eq!(x.homogeneous_degree(), Some(2));
    let alg = Algebra::new(&lam.block());
    assert!(alg.mul(&x, &x).is_zero());
    assert!(x_element(1, &w("vvvv")).unwrap().is_zero());
}

#[test]
fn parse_errors() {
    assert!("vvvv;vvvv".parse::<BasisVector>().is_err());
    assert!("^^^^;v^v^;^^^^".parse::<BasisVector>().is_err());
}
