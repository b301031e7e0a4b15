//! Library half of the `bpe` command-line tool: the small-graph survey
//! harness and DOT export. The binary in `main.rs` is a thin wrapper.

pub mod dot;
pub mod survey;

pub use dot::{export_dot, parse_highlight};
pub use survey::{
    enumerate_connected_multigraphs, one_step_minors, run_survey, SurveyReport, VerdictCache,
};
