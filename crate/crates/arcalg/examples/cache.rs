//! Cache a computed table on disk; the second call reads the file.
use arcalg::cache::cached_in;
use arcalg::prelude::*;

fn main() -> arcalg::Result<()> {
    let dir = std::env::temp_dir().join("arcalg-example-cache");
    std::fs::create_dir_all(&dir).map_err(|e| arcalg::Error::Io(e.to_string()))?;
    let block = Block::principal(5, Parity::Even);
    let compute = || cartan_matrix(&block).to_csv();
    let first = cached_in(&dir, &block, "cartan", compute)?;
    let second = cached_in(&dir, &block, "cartan", || unreachable!("served from the cache"))?;
    assert_eq!(first, second);
    println!("{} bytes cached under {}", first.len(), dir.display());
    Ok(())
}
