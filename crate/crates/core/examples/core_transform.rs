//! The 3-connected core: type II to type III and back.
//!
//! Run with `cargo run --release --example core_transform`.

use std::collections::BTreeMap;

use uipt::exact::{core_size_prob, rational_to_f64};
use uipt::map::three_connected_core;
use uipt::sample::{core_classify, edge_inflate, uipt_type3_ball, CoreOutcome};
use uipt::{ExactRng, TriType};

fn main() -> uipt::Result<()> {
    let mut rng = ExactRng::new(9);
    let runs = 4000;
    let mut hist: BTreeMap<CoreOutcome, usize> = BTreeMap::new();
    for _ in 0..runs {
        *hist.entry(core_classify(2000, &mut rng)).or_default() += 1;
    }
    for n in 3..=6 {
        let seen = hist.get(&CoreOutcome::FiniteCore(n)).copied().unwrap_or(0);
        println!("core size {n}: observed {:.4} exact {:.4}", seen as f64 / runs as f64, rational_to_f64(&core_size_prob(n)?));
    }
    let inf = hist.get(&CoreOutcome::InfiniteCore).copied().unwrap_or(0);
    println!("infinite core: observed {:.4} limit 0.5", inf as f64 / runs as f64);

    let b = uipt_type3_ball(2, 10_000, &mut rng)?;
    println!("\ntype III ball of radius 2 after {} restarts: {} vertices, root degree {}", b.restarts, b.map.vertex_count(), b.map.degree(b.map.root_vertex()));
    assert_eq!(b.map.validate(TriType::TypeIII), Ok(()));
    let inflated = edge_inflate(&b.map, &mut rng)?;
    println!("after edge inflation: {} vertices, valid type II: {}", inflated.vertex_count(), inflated.validate(TriType::TypeII).is_ok());
    println!("core of the inflated map equals the ball: {}", three_connected_core(&inflated)?.code() == b.map.code());
    Ok(())
}
