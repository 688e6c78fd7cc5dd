//! Checker for interaction-based declassification policies.
//!
//! The pipeline: parse an event-driven program ([`lang`]), explore its
//! reactive behaviour either concretely ([`interp`]) or symbolically under a
//! GUI driver ([`sym`]), assign declassification levels to trace events with
//! temporal policies ([`policy`]), and decide noninterference by satisfiability
//! of self-composed trace constraints ([`checker`]) over a bit-vector solver
//! ([`solver`]).

pub mod checker;
pub mod interp;
pub mod lang;
pub mod lex;
pub mod policy;
pub mod solver;
pub mod sym;

pub use checker::{check_ibni, CheckConfig, CheckStats, Verdict};
pub use interp::{run_program, InputScript, MachineState, RunResult};
pub use lang::{parse_program, Event, Expr, Primitive, Trace};
pub use policy::{parse_policy, Formula, Lattice, LevelEquivs, Policy};
pub use solver::{check_sat, Constraint, Model, SatResult};
pub use sym::{sym_exec, DriverConfig, SymExecConfig, SymPath, SymTrace, SymValue};
