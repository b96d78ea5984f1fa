//! Joint routing and allocation of scarce relief supply under an
//! inequity-averse objective, solved by branch-and-price with an
//! epsilon-constraint driver for the travel-time objective.

pub mod allocation;
pub mod analysis;
pub mod biobjective;
pub mod bnp;
pub mod construction;
pub mod error;
pub mod linprog;
pub mod master;
pub mod model;
pub mod pricing;

pub use error::{Error, Result};
