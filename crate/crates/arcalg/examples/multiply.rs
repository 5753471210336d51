//! Multiply basis vectors and check against the diagrammatic rules.
use arcalg::prelude::*;

fn main() -> arcalg::Result<()> {
    let x: BasisVector = "vv^^;v^v^;v^v^".parse()?;
    let y: BasisVector = "v^v^;v^v^;vv^^".parse()?;
    let p = multiply(&x, &y)?;
    println!("{x} * {y} = {p}");
    assert_eq!(p, multiply_reference(&x, &y)?);
    println!("star: {}", star(&p));

    let alg = Algebra::new(&Block::principal(4, Parity::Even));
    let top: Vec<String> = alg.basis().iter().filter(|b| b.degree() == 4).map(|b| b.to_string()).collect();
    println!("{} basis vectors, top degree: {}", alg.dim(), top.join(" "));
    Ok(())
}
