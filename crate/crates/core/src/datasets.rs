//! Bundled example data.

use crate::gof::Dataset;

const JUG_BRIDGE: &str = include_str!("../data/jug_bridge.txt");

/// Storm precipitation (inches) at the Jug Bridge, Maryland; n = 24.
pub fn jug_bridge() -> Dataset {
    Dataset::parse(JUG_BRIDGE).expect("bundled data parses")
}

/// Raw text of the bundled Jug Bridge file, in the input format accepted
/// by [`Dataset::parse`].
pub fn jug_bridge_text() -> &'static str {
    JUG_BRIDGE
}
