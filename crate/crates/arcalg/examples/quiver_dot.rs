//! The Ext quiver of a block as Graphviz DOT, plus its diamonds.
use arcalg::prelude::*;
use arcalg::quiver::diamonds;

fn main() {
    let block = Block::principal(4, Parity::Even);
    let q = quiver(&block);
    print!("{}", q.to_dot());
    for d in diamonds(&block) {
        let names: Vec<String> = d.iter().map(|w| w.to_string()).collect();
        eprintln!("diamond {}", names.join(" "));
    }
}
