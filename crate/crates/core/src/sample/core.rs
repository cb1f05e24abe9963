use serde::Serialize;

use super::peel::{peel_until_ball, PeelState, Policy};
use super::ExactRng;
use crate::error::{Error, Result};
use crate::map::{ball, collapse_cell, root_cell, RootedMap};

/// Classification of the root's 3-connected component in a type II UIPT.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoreOutcome {
    /// The component closed off with this many vertices.
    FiniteCore(usize),
    /// The component still contained the unrevealed face after the
    /// certificate horizon.
    InfiniteCore,
    /// The revealed region outgrew its allowance before a decision.
    Unresolved,
}

/// Number of consecutive peel steps during which the root component must
/// keep the unrevealed face before it is declared infinite.
pub fn certificate_horizon(budget: usize) -> usize {
    (budget / 10).max(1)
}

/// Revealed vertices allowed per unit of budget.
const VERTICES_PER_STEP: usize = 256;

fn classify(s: &mut PeelState, budget: usize, rng: &mut ExactRng) -> CoreOutcome {
    let horizon = certificate_horizon(budget);
    let mut checkpoint = 1;
    loop {
        if s.steps() >= checkpoint.min(horizon) {
            let (open, vertices) = s.root_component();
            if !open {
                return CoreOutcome::FiniteCore(vertices);
            }
            if s.steps() >= horizon {
                return CoreOutcome::InfiniteCore;
            }
            checkpoint *= 2;
        }
        if s.vertex_count() > VERTICES_PER_STEP * budget {
            return CoreOutcome::Unresolved;
        }
        s.peel(Policy::MinDistance, rng);
    }
}

/// Peels a type II UIPT until the root's 3-connected component is seen to
/// close off, or has kept the unrevealed face for
/// [`certificate_horizon`]`(budget)` steps.
///
/// Closing off is final: once a 2-cycle separates the root component from
/// the unrevealed face, later steps cannot change the component.
pub fn core_classify(budget: usize, rng: &mut ExactRng) -> CoreOutcome {
    classify(&mut PeelState::new(), budget.max(1), rng)
}

/// A ball of the type III UIPT and the cost of producing it.
#[derive(Clone, Debug)]
pub struct Type3Ball {
    pub map: RootedMap,
    /// Type II samples rejected because their root component was finite.
    pub restarts: usize,
}

/// Ball of radius `r` of the type III UIPT, read off the infinite
/// 3-connected component of a type II UIPT.
///
/// Each attempt gets `budget` peel steps. Attempts whose root component is
/// finite are restarted.
pub fn uipt_type3_ball(r: usize, budget: usize, rng: &mut ExactRng) -> Result<Type3Ball> {
    let budget = budget.max(1);
    let mut restarts = 0;
    loop {
        let mut s = PeelState::new();
        match classify(&mut s, budget, rng) {
            CoreOutcome::FiniteCore(_) => {
                restarts += 1;
                continue;
            }
            CoreOutcome::Unresolved => return Err(Error::BudgetExhausted { budget }),
            CoreOutcome::InfiniteCore => {}
        }
        peel_until_ball(&mut s, r.max(1), Policy::MinDistance, budget, rng)?;
        let revealed = s.revealed();
        let cell = root_cell(&revealed);
        if !cell.contains_unrevealed {
            restarts += 1;
            continue;
        }
        let core = collapse_cell(&revealed, &cell)?;
        return Ok(Type3Ball { map: ball(&core, r)?, restarts });
    }
}
