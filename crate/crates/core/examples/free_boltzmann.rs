//! Critical Boltzmann ("free") triangulations of polygons.
//!
//! Run with `cargo run --release --example free_boltzmann`.

use uipt::exact::{format_rational, phi, rational_to_f64, z_critical, Rational};
use uipt::sample::sample_free;
use uipt::{ExactRng, TriType};

fn main() -> uipt::Result<()> {
    let mut rng = ExactRng::new(11);
    let t = TriType::TypeII;
    for m in 0..3 {
        let draws = 50_000;
        let mut sizes = vec![0usize; 4];
        for _ in 0..draws {
            let s = sample_free(m, &mut rng).size;
            if s < sizes.len() {
                sizes[s] += 1;
            }
        }
        let z = z_critical(t, m)?;
        println!("m = {m}, Z_m = {}", format_rational(&z));
        let mut w = Rational::from_integer(1.into());
        for (n, c) in sizes.iter().enumerate() {
            let p = Rational::from_integer(phi(t, n, m)?.into()) * &w / &z;
            println!("  size {n}: observed {:.4} exact {:.4}", *c as f64 / draws as f64, rational_to_f64(&p));
            w /= t.alpha();
        }
    }
    Ok(())
}
