//! Mechanical detection of the cross-perspective contradiction: given the
//! shared observation wbar=ok, the no-collapse run gives w_l=ok probability
//! 1/2 while the friend's collapsed run is certain it can never happen.
//!
//! Run with: cargo run --example contradiction_check

use ewfsim::protocol::{contradiction_report, parse_event, render_report};
use ewfsim::scenarios;

fn main() {
    let spec = scenarios::builtin("ewf").unwrap().spec();
    let perspectives = vec![
        spec.perspective("ensemble").unwrap(),
        spec.perspective("fbar-collapse").unwrap(),
    ];
    let events = vec![
        parse_event(&spec, "w_l=ok").unwrap(),
        parse_event(&spec, "w_l=f").unwrap(),
    ];
    let postselect = parse_event(&spec, "wbar=ok").unwrap();

    let report = contradiction_report(&spec, &perspectives, &events, Some(&postselect)).unwrap();
    print!("{}", render_report(&spec.system, &report, false));
    assert!(report.has_contradiction());
}
