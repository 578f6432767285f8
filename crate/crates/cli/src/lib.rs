//! File formats and the `raag` command line.

mod commands;
pub mod format;

pub use commands::{run, Outcome};
pub use format::{
    parse_certificate, parse_graph_file, parse_word, render_certificate, render_graph, render_word,
    ParseError,
};
