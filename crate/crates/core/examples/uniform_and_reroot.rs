//! Uniform sphere triangulations, and their law after re-rooting.
//!
//! Run with `cargo run --release --example uniform_and_reroot`.

use std::collections::BTreeMap;

use uipt::map::{rw_reroot, sphere_census, uniform_reroot};
use uipt::sample::sample_uniform_sphere;
use uipt::{ExactRng, TriType};

fn main() -> uipt::Result<()> {
    let vertices = 5;
    let classes = sphere_census(TriType::TypeII, vertices)?.len();
    let mut rng = ExactRng::new(7);
    let draws = 20_000;
    let mut law: [BTreeMap<String, usize>; 3] = Default::default();
    for _ in 0..draws {
        let map = sample_uniform_sphere(TriType::TypeII, vertices, &mut rng)?;
        *law[0].entry(map.code().to_hex()).or_default() += 1;
        *law[1].entry(uniform_reroot(&map, &mut rng)?.code().to_hex()).or_default() += 1;
        *law[2].entry(rw_reroot(&map, &mut rng)?.code().to_hex()).or_default() += 1;
    }
    println!("{classes} rooted spheres with {vertices} vertices, expected frequency {:.4}", 1.0 / classes as f64);
    for (name, h) in ["fresh", "uniform re-root", "random-walk re-root"].iter().zip(&law) {
        let f: Vec<f64> = h.values().map(|&c| c as f64 / draws as f64).collect();
        let lo = f.iter().copied().fold(1.0, f64::min);
        let hi = f.iter().copied().fold(0.0, f64::max);
        println!("{name:>20}: {} classes seen, frequencies in [{lo:.4}, {hi:.4}]", h.len());
    }
    Ok(())
}
