//! Exact counts, partition functions and critical constants.
//!
//! Run with `cargo run --example counting`.

use uipt::exact::{c_hat, critical_constants, format_rational, phi, sphere_count, z_critical};
use uipt::TriType;

fn main() -> uipt::Result<()> {
    for t in [TriType::TypeII, TriType::TypeIII] {
        let k = critical_constants(t);
        println!("type {t}: alpha = {}, theta_c = {}", format_rational(&k.alpha), format_rational(&k.theta_c));
        let ms = t.min_boundary()..t.min_boundary() + 5;
        println!("  phi(n, m) for n < 5, m in {ms:?}:");
        for n in 0..5 {
            let row: Vec<String> = ms.clone().map(|m| phi(t, n, m).map(|c| c.to_string())).collect::<Result<_, _>>()?;
            println!("    n={n}: {}", row.join(" "));
        }
        let spheres: Vec<String> = (3..9).map(|v| sphere_count(t, v).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        println!("  rooted spheres with 3..8 vertices: {}", spheres.join(" "));
        for m in t.min_boundary()..4 {
            println!(
                "  Z_{m} = {:<12} scaled C_{m} = {}",
                format_rational(&z_critical(t, m)?),
                format_rational(&c_hat(t, m)?.c_hat)
            );
        }
    }
    Ok(())
}
