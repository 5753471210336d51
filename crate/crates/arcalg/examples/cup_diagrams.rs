//! Cup diagrams, their orientations and degrees.
use arcalg::diagrams::{defect, half_degree, parse_arcs};
use arcalg::prelude::*;

fn main() -> arcalg::Result<()> {
    let block = Block::principal(4, Parity::Even);
    for lam in block.enumerate() {
        let cup = cup_diagram(&lam);
        let oriented: Vec<String> = block
            .enumerate()
            .iter()
            .filter_map(|mu| half_degree(&cup, mu).map(|d| format!("{mu}(deg {d})")))
            .collect();
        println!("{lam}  {cup}  defect {}  {}", defect(&lam), oriented.join(" "));
    }
    let arcs = parse_arcs("cup*(1,2) cup(3,4)")?;
    let cup = CupDiagram::from_arcs(block.theta(), &arcs)?;
    println!("weight of {cup}: {}", weight_of(&cup)?);
    Ok(())
}
