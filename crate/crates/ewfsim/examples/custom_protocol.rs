//! Writing a protocol from scratch: a Bell-pair experiment in the
//! line-oriented protocol language, parsed, run, and queried.
//!
//! Run with: cargo run --example custom_protocol

use ewfsim::protocol::{parse_event, parse_protocol, render_trace, run_named};

const PROTOCOL: &str = "\
# two spins start in a Bell state via a controlled preparation
register a { u d }
register b { r u d } ready r
register alice { r u d } ready r
register bob { r u d } ready r

init a = 1/sqrt(2)|u> + 1/sqrt(2)|d>

# copy a's value into b, then have two observers record each side
step 1 prepare b by a { u -> |u>; d -> |d> }
step 2 measure a recorder alice outcomes { u -> u; d -> d }
step 3 measure b recorder bob outcomes { u -> u; d -> d }

perspective ensemble { }
perspective alice-saw-up { 2 collapse u }

query at 3 probability alice=u & bob=u
query at 3 probability alice=u & bob=d
";

fn main() {
    let spec = parse_protocol(PROTOCOL).unwrap();

    let trace = run_named(&spec, "ensemble").unwrap();
    print!("{}", render_trace(&trace, false));

    // once Alice has seen "up", Bob's record is fixed too
    let collapsed = run_named(&spec, "alice-saw-up").unwrap();
    let bob_up = parse_event(&spec, "bob=u").unwrap();
    println!(
        "\nafter Alice sees up: P(bob=u) = {}",
        collapsed.final_state().probability(&bob_up)
    );
}
