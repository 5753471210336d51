//! Check the relations of Braden's algebra on the images of its generators.
use arcalg::quiver::verify_braden;

fn main() {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let report = verify_braden(k, 2);
    for c in &report.checks {
        println!("{c}");
    }
    println!("undecided triples: {}", report.undecided_triples);
    std::process::exit(if report.passed() { 0 } else { 1 });
}
