//! Rewriting a state in a measurement basis without measuring: decompose
//! the pre-measurement state of the extended Wigner's-friend protocol in
//! the super-observer's ok/fail basis and read off the exact branch
//! amplitudes, then recombine losslessly.
//!
//! Run with: cargo run --example branch_decomposition

use ewfsim::protocol::run_named;
use ewfsim::scenarios;

fn main() {
    let spec = scenarios::builtin("ewf").unwrap().spec();
    let trace = run_named(&spec, "ensemble").unwrap();

    // state after both friends have measured, before any super-observer acts
    let state = trace.state_after("10").unwrap();
    println!("state after step 10:");
    println!("{}", state.render());

    // view it in the first super-observer's basis over (coin, fbar):
    // the ok branch carries weight 1/6, the fail branch 5/6
    let okbar = spec.basis("okbar").unwrap();
    let decomposition = state.decompose(okbar);
    assert_eq!(decomposition.residual.num_terms(), 0);
    for branch in &decomposition.branches {
        let weight = branch.state.norm_squared();
        println!("branch {:4} (weight {}):", branch.vector, weight);
        for line in branch.state.render().lines() {
            println!("  {}", line);
        }
    }

    // the decomposition is exact: branches + residual rebuild the state
    assert_eq!(decomposition.recombine(), *state);
    println!("recombined state equals the original, exactly");
}
