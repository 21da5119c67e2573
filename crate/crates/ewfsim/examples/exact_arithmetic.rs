//! Exact scalar arithmetic in the field of rationals extended by square
//! roots: canonical forms, products that collapse radicals, monomial
//! reciprocals, and exact square roots of rationals.
//!
//! Run with: cargo run --example exact_arithmetic

use ewfsim::scalar::RadicalScalar;

fn main() {
    // canonical squarefree form: sqrt(12) = 2*sqrt(3)
    let s = RadicalScalar::sqrt_int(12);
    println!("sqrt(12)              = {}", s);

    // products reduce cross radicals: sqrt(6) * sqrt(3) = 3*sqrt(2)
    let p = &RadicalScalar::sqrt_int(6) * &RadicalScalar::sqrt_int(3);
    println!("sqrt(6)*sqrt(3)       = {}", p);

    // sums stay exact and comparable
    let sum = &RadicalScalar::rational(1, 2) + &RadicalScalar::radical(1, 2, 2);
    println!("1/2 + 1/2*sqrt(2)     = {}", sum);

    // squaring a sum
    println!("(1/2 + 1/2*sqrt(2))^2 = {}", &sum * &sum);

    // monomial reciprocal: 1/(q*sqrt(k)) = sqrt(k)/(q*k)
    let amp = RadicalScalar::radical(1, 3, 3); // 1/sqrt(3)
    let inv = amp.invert_monomial().unwrap();
    println!("1/(1/sqrt(3))         = {}", inv);
    assert!((&amp * &inv).is_one());

    // exact square roots of rationals: sqrt(2/3) = 1/3*sqrt(6)
    let r = RadicalScalar::rational(2, 3).sqrt().unwrap();
    println!("sqrt(2/3)             = {}", r);
    assert_eq!(&r * &r, RadicalScalar::rational(2, 3));

    // a probability computed exactly, with a float echo on demand
    let prob = &amp * &amp;
    println!("|1/sqrt(3)|^2         = {} ({})", prob, prob.to_float());
}
