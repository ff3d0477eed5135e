//! Plant a wedge-system instance from a known assignment, then recover it
//! by exhaustive search.
//!
//! Run with: `cargo run --example planted_search`

use eulerian_chi::wedge::{
    min_max_assignments, plant_instance, search, IndexFunction, SearchBounds, SearchMode,
    SpanIdentity,
};
use std::time::Duration;

fn main() {
    let m_h = IndexFunction::from_pairs(&[(0, 1), (1, 1), (2, 1), (3, 1)]).unwrap();
    let k = 2;
    let (sys, planted) = plant_instance(&m_h, k, SearchMode::AllIntegers).unwrap();
    let target: Vec<String> = sys.target().iter().map(|v| v.to_string()).collect();
    println!(
        "planted m_H = {:?} at offset {}, k = {k}, s = {}",
        m_h.counts(),
        m_h.offset(),
        planted.s
    );
    println!("target sequence: {}", target.join(" "));

    let mm = min_max_assignments(&m_h, k).unwrap();
    println!(
        "extremal cutoffs: w = {}, w' = {}; span identity vs n-r = {}: {:?}",
        mm.w,
        mm.w_prime,
        sys.span(),
        eulerian_chi::wedge::span_identity_holds(&m_h, k, sys.span() + 1, 1).unwrap()
    );
    assert_eq!(
        eulerian_chi::wedge::span_identity_holds(&m_h, k, sys.span() + 1, 1).unwrap(),
        SpanIdentity::Holds
    );

    let bounds = SearchBounds {
        max_total_m: 8,
        max_support_width: 6,
        time_budget: Duration::from_secs(30),
    };
    let report = search(&sys, &bounds);
    println!(
        "search over m <= {} (exhausted: {}):",
        bounds.max_total_m, report.exhausted
    );
    for s in &report.solutions {
        let marker = if s.candidate == planted {
            "  <- planted"
        } else {
            ""
        };
        println!(
            "  m_H {:?}, k = {}, s = {}, mirror group {}{}",
            s.candidate.m_h.counts(),
            s.candidate.k,
            s.candidate.s,
            s.mirror_group,
            marker
        );
    }
}
