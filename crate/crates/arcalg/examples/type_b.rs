//! Type B parabolic decomposition numbers via the relabelling s -> s'.
use arcalg::cellstruct::{type_b_decomposition, type_b_label};

fn main() -> arcalg::Result<()> {
    let m = type_b_decomposition(3);
    for s in &m.row_labels {
        println!("{s} -> {}", type_b_label(s)?);
    }
    println!("{}", m.to_table());
    Ok(())
}
