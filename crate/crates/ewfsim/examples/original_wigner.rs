//! The original one-lab Wigner's-friend setup: the outside observer's
//! uncollapsed state is an equal superposition of the two collapsed states
//! the friend might hold, with overlap exactly 1/sqrt(2) against either.
//!
//! Run with: cargo run --example original_wigner

use ewfsim::protocol::run_named;
use ewfsim::scenarios;

fn main() {
    let spec = scenarios::builtin("wigner").unwrap().spec();

    let outside = run_named(&spec, "ensemble").unwrap();
    println!("outside observer (no collapse):");
    println!("{}", outside.final_state().render());

    for name in ["up-collapse", "down-collapse"] {
        let friend = run_named(&spec, name).unwrap();
        println!("friend, {}:", name);
        println!("{}", friend.final_state().render());
        let overlap = outside
            .final_state()
            .inner_product(friend.final_state())
            .unwrap();
        println!("overlap with outside state = {}\n", overlap);
    }
}
