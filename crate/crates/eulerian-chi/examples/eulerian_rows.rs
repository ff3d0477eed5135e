//! Classical and higher-order Eulerian rows with their structural
//! properties.
//!
//! Run with: `cargo run --example eulerian_rows`

use eulerian_chi::eulerian::{check_dominance, check_row_properties, GeneralizedEulerianRow};

fn main() {
    for (r, n) in [(1usize, 7usize), (1, 9), (2, 4), (2, 8), (3, 9)] {
        let row = GeneralizedEulerianRow::compute(r, n);
        let rendered: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
        println!("E_{r}({n}, .) = {}", rendered.join(" "));
        let props = check_row_properties(r, n).unwrap();
        println!(
            "  symmetric: {}, log-concave: {}, total: {}",
            props.symmetric, props.log_concave, props.total
        );
    }

    println!();
    println!("row-maximum dominance 2 max_k E(n, k) <= n!:");
    for n in 1..=9usize {
        let d = check_dominance(n);
        println!(
            "  n = {n}: holds = {}{}",
            d.holds,
            if d.is_exception {
                " (known exceptional row)"
            } else {
                ""
            }
        );
    }
}
