//! Domain types, validation, I/O, generation and objective evaluation.

mod constraints;
mod generate;
mod iaaf;
mod instance;
mod solution;

pub use constraints::{BranchConstraints, BranchObject};
pub use generate::{generate_instance, mean_shelter_travel, InstanceType};
pub use iaaf::{
    evaluate_iaaf, gini_index, gini_mean_difference, mean_unmet, owa_weights, pairwise_abs_sum,
    Objective,
};
pub use instance::{load_instance, save_instance, Instance, DEFAULT_LAMBDA};
pub use solution::{total_time, validate_solution, RouteDelivery, Solution, Violation};
