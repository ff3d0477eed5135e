//! χ sequences for complete intersections of hypersurfaces in one ample
//! class: the all-ones collapse to `h · E_r(n, ·)`, mixed degrees, signs,
//! the numerical condition and divisibility of the topological Euler
//! characteristic.
//!
//! Run with: `cargo run --example chi_same_class`

use eulerian_chi::chi::{
    chi_same_class, divisible_by_six, numerical_condition, topological_euler, DegreeProfile,
    IntersectionProfile,
};
use num_bigint::BigInt;

fn main() {
    for (n, degrees, h) in [
        (4usize, vec![1u64, 1], 1i64),
        (7, vec![1], 1),
        (4, vec![1, 2], 1),
        (9, vec![1, 1, 1], 2),
        (10, vec![2, 3], 1),
    ] {
        let dp = DegreeProfile::new(n, degrees.clone(), BigInt::from(h)).unwrap();
        let chi = chi_same_class(&dp);
        let rendered: Vec<String> = chi.decimal_strings();
        println!(
            "n = {n}, d = {degrees:?}, h = {h}: |chi| = {}",
            rendered.join(" ")
        );
        let signs: Vec<i8> = (0..=chi.dim()).map(|q| chi.sign(q)).collect();
        println!(
            "  signs {:?}, palindromic: {}, numerical condition: {}",
            signs,
            chi.is_palindromic(),
            numerical_condition(&chi)
        );
        let profile = IntersectionProfile::from_same_class(&dp);
        let top = topological_euler(&profile).unwrap();
        print!("  |chi_top| = {top}");
        if 2 * dp.r() < dp.n {
            println!(", divisible by 6: {}", divisible_by_six(&profile).unwrap());
        } else {
            println!(" (divisibility check needs r < n/2)");
        }
    }
}
