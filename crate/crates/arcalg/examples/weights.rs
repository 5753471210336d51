//! Enumerate a block in canonical order with Bruhat relations.
use arcalg::prelude::*;

fn main() -> arcalg::Result<()> {
    let block = Block::from_theta("bbxbo", Parity::Odd)?;
    let ws = block.enumerate();
    println!("block {} ({}): {} weights", block.theta_string(), block.parity(), ws.len());
    for (i, a) in ws.iter().enumerate() {
        let above: Vec<String> = ws.iter().filter(|b| *b != a && bruhat_leq(a, b)).map(|b| b.to_string()).collect();
        println!("{:>2} {a}  above {}", i + 1, above.join(" "));
    }
    Ok(())
}
