//! Single-player pile games: a chip count starts at `s`, each turn adds one
//! step drawn from the [`GameSpec`], totals below zero are clamped to zero, and
//! the game ends the first time the count reaches `n` or more.
//!
//! Three independent routes produce the turn-count generating functions
//! `G_{n,s}(x)`: the turn-by-turn dynamic program ([`dp`]), the linear system
//! over Q(x) ([`solve`]), and family-specific recursions in `n`
//! ([`recursive`]). Moments, denominators, closed forms and annihilators are
//! built on top.

pub mod annihilators;
pub mod closed_forms;
pub mod denom;
pub mod dp;
pub mod moments;
pub mod passage_count;
pub mod recursive;
pub mod solve;
pub mod spec;

pub use annihilators::{annihilator_check, AnnihilatorReport, Axis};
pub use closed_forms::{closed_form_check, ClosedForm, ClosedFormReport};
pub use denom::{denom_recurrence, denom_sequence, DenomFamily};
pub use dp::{dp_prob_series, dp_prob_table, path_count, path_count_table};
pub use moments::{central_moments, moment_table, moments, straight_moments, MomentReport};
pub use passage_count::{passage_count_closed_form, OutsideRegion};
pub use recursive::{gf_recursive_1m1, gf_recursive_1mu, gf_recursive_2m1, PQPair, SplitTable};
pub use solve::{solve_gf, GFTable};
pub use spec::{GameSpec, Next, SpecError};
