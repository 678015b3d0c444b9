use serde::{Deserialize, Serialize};

use super::moves::{LinkState, Move};
use crate::torus::{chi, TorusLink};

pub const PLAN_SCHEMA: &str = "torus-cobordism.plan/1";

/// An ordered sequence of scissor moves from `start` to `end`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismPlan {
    pub start: TorusLink,
    pub end: TorusLink,
    pub moves: Vec<Move>,
    pub total_cost: u64,
}

impl CobordismPlan {
    pub fn new(start: TorusLink, end: TorusLink, moves: Vec<Move>) -> Self {
        let total_cost = moves.iter().map(|m| m.cost).sum();
        CobordismPlan { start, end, moves, total_cost }
    }

    pub fn empty(link: TorusLink) -> Self {
        CobordismPlan::new(link, link, Vec::new())
    }

    pub fn delta_chi(&self) -> u64 {
        chi(&self.start).abs_diff(chi(&self.end))
    }

    /// The same cobordism read backwards.
    pub fn reversed(&self) -> Self {
        CobordismPlan::new(self.end, self.start, self.moves.iter().rev().map(Move::reversed).collect())
    }

    /// Drops zero-cost moves that leave the state unchanged.
    pub fn compacted(&self) -> Self {
        let moves = self.moves.iter().filter(|m| !m.is_identity()).cloned().collect();
        CobordismPlan::new(self.start, self.end, moves)
    }

    /// Parameters of every state visited, in order.
    pub fn states(&self) -> Vec<Vec<(u64, u64)>> {
        let mut out = vec![LinkState::single(self.start).params()];
        out.extend(self.moves.iter().map(|m| m.target.params()));
        out
    }

    /// Ordering used to pick among plans: cost, then move count, then the
    /// lexicographically smallest sequence of intermediate states.
    pub fn preference_key(&self) -> (u64, usize, Vec<Vec<(u64, u64)>>) {
        (self.total_cost, self.moves.len(), self.states())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PlanDocument::from(self)).expect("plan serializes")
    }
}

/// Versioned JSON envelope for a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanDocument {
    pub schema: String,
    #[serde(flatten)]
    pub plan: CobordismPlan,
}

impl From<&CobordismPlan> for PlanDocument {
    fn from(plan: &CobordismPlan) -> Self {
        PlanDocument { schema: PLAN_SCHEMA.to_string(), plan: plan.clone() }
    }
}

/// Result of [`validate_plan`]; empty `problems` means valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PlanValidation {
    pub problems: Vec<String>,
}

impl PlanValidation {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Re-checks every move, the chaining of states, the total, and the Thom
/// and parity constraints on the endpoints.
pub fn validate_plan(plan: &CobordismPlan) -> PlanValidation {
    let mut problems = Vec::new();
    for (i, mv) in plan.moves.iter().enumerate() {
        if let Err(e) = mv.check() {
            problems.push(format!("move {i}: {e}"));
        }
    }
    let mut state = LinkState::single(plan.start);
    for (i, mv) in plan.moves.iter().enumerate() {
        if mv.source != state {
            problems.push(format!("move {i} starts at {} but the plan is at {}", mv.source, state));
        }
        state = mv.target.clone();
    }
    if state != LinkState::single(plan.end) {
        problems.push(format!("plan ends at {state}, expected {}", plan.end));
    }
    let sum: u64 = plan.moves.iter().map(|m| m.cost).sum();
    if sum != plan.total_cost {
        problems.push(format!("total_cost {} differs from the sum of moves {sum}", plan.total_cost));
    }
    let gap = plan.delta_chi();
    if plan.total_cost < gap {
        problems.push(format!("total_cost {} is below |Δχ| = {gap}", plan.total_cost));
    }
    if plan.start.is_knot() && plan.end.is_knot() && (plan.total_cost + gap) % 2 != 0 {
        problems.push(format!("total_cost {} and |Δχ| = {gap} differ in parity", plan.total_cost));
    }
    PlanValidation { problems }
}
