//! The peeling process of the type II UIPT, step by step.
//!
//! Run with `cargo run --example peeling`.

use uipt::exact::format_rational;
use uipt::sample::{peel_step_distribution, PeelState, Policy};
use uipt::ExactRng;

fn main() {
    println!("one-step law on a frontier of length 3:");
    for e in peel_step_distribution(1) {
        println!("  {:?}: {}", e.variant, format_rational(&e.probability));
    }
    let mut rng = ExactRng::new(3);
    let mut s = PeelState::new().with_trace();
    for _ in 0..12 {
        s.peel(Policy::MinDistance, &mut rng);
    }
    println!("\nfirst twelve steps:");
    for r in s.trace() {
        println!("  step {:>2}: m {} -> {}  {:?}  p = {}", r.step, r.m_before, r.m_after, r.event, format_rational(&r.probability));
    }
    println!("\nrevealed {} vertices, frontier length {}", s.vertex_count(), s.m() + 2);
    println!("{}", serde_json::to_string(&s.trace()[0]).unwrap());
}
