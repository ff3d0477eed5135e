//! The full inequality battery at the working thresholds n = 10r² + 1000
//! for r = 2, 3 (all hypersurfaces in one class, degree 1, h = 1). The χ
//! values involved run to several hundred digits; every verdict is still
//! an exact comparison.
//!
//! Run with: `cargo run --release --example appendix_thresholds`

use eulerian_chi::inequalities::{sweep, SweepPoint};

fn main() {
    let points: Vec<SweepPoint> = [2usize, 3]
        .iter()
        .map(|&r| SweepPoint::self_intersection(r, 10 * r * r + 1000))
        .collect();
    for p in &points {
        println!("grid point: r = {}, n = {}", p.r, p.n);
    }
    println!();

    let verdicts = sweep(&points, None);
    for v in &verdicts {
        let s = v
            .params
            .get("s")
            .map(|s| format!(" s={s}"))
            .unwrap_or_default();
        println!(
            "{:<14} r={} n={}{}: {:?}{}",
            v.name,
            v.params["r"],
            v.params["n"],
            s,
            v.outcome,
            if v.conservative { " (sqrt bounds)" } else { "" }
        );
    }
    let all = verdicts.iter().all(|v| v.holds());
    println!();
    println!("all verdicts hold: {all}");

    // The boundary fact behind the assignment-ratio bound, at n = r + 21:
    // 2^23 - 24 = 8388584 exceeds 14^6 = 7529536.
    let boundary = eulerian_chi::inequalities::m0_bound_arithmetic(2, 23);
    println!(
        "assignment-ratio boundary at (r, n) = (2, 23): {:?}",
        boundary.outcome
    );
}
