//! The two readings of the wedge-system equations genuinely differ:
//! checking the window `q = 0..=n-r` only (bounded-range) admits
//! solutions that the all-integers reading — where the count must vanish
//! at every other `q` — excludes.
//!
//! Run with: `cargo run --example search_modes`

use eulerian_chi::chi::{chi_same_class, DegreeProfile};
use eulerian_chi::wedge::{search, SearchBounds, SearchMode, SystemInstance};
use num_bigint::BigInt;
use std::time::Duration;

fn run(target: Vec<BigInt>, label: &str, max_m: u64, width: usize) {
    println!("target {label}:");
    for mode in [SearchMode::AllIntegers, SearchMode::BoundedRange] {
        let sys = SystemInstance::new(target.clone(), mode).unwrap();
        let bounds = SearchBounds {
            max_total_m: max_m,
            max_support_width: width,
            time_budget: Duration::from_secs(60),
        };
        let report = search(&sys, &bounds);
        println!(
            "  {:<14} -> {} solution(s), exhausted: {}",
            mode.label(),
            report.solutions.len(),
            report.exhausted
        );
        for s in &report.solutions {
            println!(
                "      m_H {:?} offset {}, k = {}, s = {}",
                s.candidate.m_h.counts(),
                s.candidate.m_h.offset(),
                s.candidate.k,
                s.candidate.s
            );
        }
    }
}

fn main() {
    // The single-equation target (2): unsolvable in the strict reading,
    // but the bounded window hides the leftover count at q = 1.
    run(vec![BigInt::from(2)], "(2)", 3, 3);

    println!();
    // A χ target: the order-2 row at n = 4. The strict reading stays
    // empty; from m = 11 on, the bounded reading finds wide assignments
    // whose overflow falls outside the window.
    let chi = chi_same_class(&DegreeProfile::new(4, vec![1, 1], BigInt::from(1)).unwrap());
    run(chi.values().to_vec(), "(14, 44, 14)", 11, 6);
}
