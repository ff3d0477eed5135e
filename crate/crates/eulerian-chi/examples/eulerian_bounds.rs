//! The quantitative two-sided bounds on `E_r(n, k)` and the 0.6-factor
//! lower bound, whose logarithm hypothesis is decided through a certified
//! rational bound on `ln(n+1)` — no floating point anywhere.
//!
//! Run with: `cargo run --example eulerian_bounds`

use eulerian_chi::eulerian::{check_asymptotic_bounds, check_lower_06};
use eulerian_chi::exact::{ln_upper_bound, micro};

fn main() {
    println!("two-sided bounds C(k+r-1, r-1)((k+r)^n - (n+1)(k+r-1)^n) <= E_r(n,k) <= C(k+r-1, r-1)(k+r)^n:");
    for (r, n, k) in [(1usize, 3usize, 1usize), (2, 4, 0), (3, 30, 5), (5, 60, 20)] {
        let b = check_asymptotic_bounds(r, n, k);
        println!(
            "  (r, n, k) = ({r}, {n}, {k}): lower {} upper {}",
            b.lower_ok, b.upper_ok
        );
    }

    println!();
    let l = ln_upper_bound(101, &micro());
    println!("certified upper bound on ln(101), width 1e-6: {l}");

    println!();
    println!("0.6-factor lower bound 5 E_r(n,k) >= 3 C(k+r-1, r-1)(k+r)^n:");
    for (r, n, k) in [(2usize, 112usize, 1usize), (2, 112, 8), (1, 100, 10)] {
        match check_lower_06(r, n, k) {
            Ok(flag) => println!("  (r, n, k) = ({r}, {n}, {k}): {flag}"),
            Err(err) => println!("  (r, n, k) = ({r}, {n}, {k}): {err}"),
        }
    }
    // Outside both hypotheses the check refuses to answer.
    println!(
        "  (r, n, k) = (2, 20, 9): {}",
        check_lower_06(2, 20, 9).unwrap_err()
    );
}
