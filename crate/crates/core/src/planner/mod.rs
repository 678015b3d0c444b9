//! Explicit cobordisms between torus links built from scissor moves:
//! rectangle smoothings, splits, and the `T(ab,c) ↔ T(a,bc)` swap.

mod moves;
mod plan;
mod search;
mod strategies;

pub use moves::{rectangle_cost, rectangle_embeds, split_move, LinkState, Move, MoveKind};
pub use plan::{validate_plan, CobordismPlan, PlanDocument, PlanValidation, PLAN_SCHEMA};
pub use search::{best_upper, plan_with, BestPlan, SearchBudget, Strategy, DEFAULT_MAX_EXPANSIONS};
pub use strategies::{prop1_plan, theorem1_plan, theorem2_upper};
