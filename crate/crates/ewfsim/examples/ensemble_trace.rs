//! The extended Wigner's-friend protocol under pure Schrödinger evolution:
//! every measurement entangles a recorder, nothing collapses, and the final
//! joint probability P(w_l=ok & wbar=ok) is exactly 1/12.
//!
//! Run with: cargo run --example ensemble_trace

use ewfsim::protocol::{render_trace, run_named};
use ewfsim::scenarios;

fn main() {
    let spec = scenarios::builtin("ewf").unwrap().spec();
    let trace = run_named(&spec, "ensemble").unwrap();
    print!("{}", render_trace(&trace, true));
}
