//! Decomposition and Cartan matrices and the graded dimension.
use arcalg::prelude::*;

fn main() {
    let block = Block::principal(4, Parity::Even);
    let m = decomposition_matrix(&block);
    println!("decomposition matrix\n{}", m.to_table());
    let c = cartan_matrix(&block);
    println!("Cartan matrix\n{}", c.to_table());
    assert_eq!(c, m.transpose().matmul(&m));
    println!("graded dimension {}", graded_dimension(&block));
}
