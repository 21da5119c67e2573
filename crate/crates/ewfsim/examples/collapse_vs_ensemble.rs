//! Where do the no-collapse run and the friend's collapsed run first
//! disagree? A step-aligned diff shows the wave functions diverge at the
//! very first measurement and never reconcile.
//!
//! Run with: cargo run --example collapse_vs_ensemble

use ewfsim::protocol::{render_diff, run_named};
use ewfsim::scenarios;

fn main() {
    let spec = scenarios::builtin("ewf").unwrap().spec();
    let ensemble = run_named(&spec, "ensemble").unwrap();
    let collapse = run_named(&spec, "fbar-collapse").unwrap();
    print!("{}", render_diff(&ensemble, &collapse));

    println!();
    println!("final-state queries:");
    for (e, c) in ensemble.queries.iter().zip(&collapse.queries) {
        println!(
            "  at {}: ensemble {} vs fbar-collapse {}",
            e.at, e.value, c.value
        );
    }
}
