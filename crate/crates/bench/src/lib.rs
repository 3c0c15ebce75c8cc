//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use dsp_core::{parse_presentation, Presentation};

/// A presentation from the workspace corpus, by file stem.
pub fn corpus(name: &str) -> Presentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.grp"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_presentation(&text)
        .expect("corpus files parse")
        .presentation
}
