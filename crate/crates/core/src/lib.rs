//! Exact solvers for `x^2 - dy^2 = N`, `N` in `{1, -1, 4, -4}`, built on the
//! integer P/Q continued-fraction recurrence, with closed forms for the family
//! `d = a^2k b^2l ± i c^m` and the quadratic-form machinery for the Pell form.

pub mod arith;
pub mod cf;
pub mod cli;
pub mod deviation;
pub mod errata;
pub mod error;
pub mod forms;
pub mod lucas;
pub mod matrix;
pub mod oracle;
pub mod pell;
pub mod special;

pub use cf::{cf_expand, convergents, sqrt_cf, CfConfig, CfExpansion, Convergent, QuadIrrational};
pub use deviation::{Annotated, Deviation, Flag};
pub use error::{Error, Result};
pub use forms::{FormCycle, QForm};
pub use matrix::Mat2;
pub use pell::{FundamentalPair, PellN, PellSolution, PellSolver};
pub use special::{build_special, Family, Sign, SpecialD};
