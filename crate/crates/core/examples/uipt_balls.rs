//! Balls of the type II UIPT and the face tree of the explored region.
//!
//! Run with `cargo run --release --example uipt_balls`.

use uipt::map::{ball, face_tree, FaceKind};
use uipt::sample::{peel_until_ball, PeelState, Policy};
use uipt::ExactRng;

fn main() -> uipt::Result<()> {
    let mut rng = ExactRng::new(5);
    let mut s = PeelState::new();
    for r in 1..=6 {
        peel_until_ball(&mut s, r, Policy::MinDistance, 1_000_000, &mut rng)?;
        let b = ball(&s.revealed(), r)?;
        let holes = b.faces_of_kind(FaceKind::External).len();
        println!(
            "r = {r}: |B_r| = {:>5} vertices, {:>5} triangles, {holes:>3} boundary faces; {} peel steps so far",
            b.vertex_count(),
            b.triangle_count(),
            s.steps()
        );
    }
    let tree = face_tree(&s.revealed(), 6)?;
    for r in 1..=6 {
        let lens: Vec<String> = tree
            .level(r)
            .map(|n| format!("{}{}", n.boundary_len, if n.unresolved { "*" } else { "" }))
            .collect();
        println!("level {r}: regions with boundary lengths {} (* = unexplored)", lens.join(" "));
    }
    Ok(())
}
