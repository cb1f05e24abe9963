//! A statistical experiment and its machine-readable report.
//!
//! Run with `cargo run --release --example experiment_report`.

use uipt::experiment::{exp_containment, exp_free};

fn main() -> uipt::Result<()> {
    let free = exp_free(0, 20_000, 1)?;
    println!("{}", free.to_json()?);
    let contain = exp_containment(5_000, 1, 1_000_000)?;
    print!("{}", contain.to_csv()?);
    println!("exit code {}", contain.status.exit_code());
    Ok(())
}
