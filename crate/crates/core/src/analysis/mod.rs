//! Decision procedures on window realizations.
//!
//! Every answer is exact on the realized window. Where the window could
//! change the answer (a generated submodule escaping the window, a weight
//! whose basis is cut off), reports carry a `window_limited` flag instead of
//! claiming a global fact.

mod axioms;
mod classify;
mod intertwiner;
mod vectors;

use serde_json::{json, Value};

use crate::modules::VectorInModule;

pub use axioms::{check_axioms, check_axioms_near, AxiomReport, AxiomViolation};
pub use classify::{
    build_paper_example, classify, default_bound_threshold, detect_trivial_factor, ClassificationReport, PaperExample,
    Verdict,
};
pub use intertwiner::{find_intertwiner, IntertwinerMap};
pub use vectors::{injectivity_diagnostic, is_simple_window, primitivity, strongly_primitive_space, PrimitivityVerdict};

/// `{"k": k, "coords": ["…", …]}`.
pub fn vector_to_json(v: &VectorInModule) -> Value {
    json!({
        "k": v.k,
        "coords": v.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}
