//! Brute-force census against the counting formula, with canonical codes and
//! the text interchange format.
//!
//! Run with `cargo run --release --example census`.

use uipt::exact::phi;
use uipt::map::{brute_force_census, sphere_census};
use uipt::TriType;

fn main() -> uipt::Result<()> {
    for t in [TriType::TypeII, TriType::TypeIII] {
        for (n, m) in [(0, 2), (1, 1), (1, 2), (2, 1), (0, 4)] {
            let maps = brute_force_census(t, n, m)?;
            println!("type {t} n={n} m={m}: census {} formula {}", maps.len(), phi(t, n, m)?);
        }
    }
    let spheres = sphere_census(TriType::TypeII, 4)?;
    println!("\n{} rooted type II spheres with 4 vertices; the first one:", spheres.len());
    print!("{}", spheres[0].to_text());
    Ok(())
}
