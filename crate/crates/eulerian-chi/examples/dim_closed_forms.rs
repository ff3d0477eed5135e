//! Closed forms for surface and fourfold intersections, and the symbolic
//! quadratic-form comparison behind the numerical condition in dimension
//! four.
//!
//! Run with: `cargo run --example dim_closed_forms`

use eulerian_chi::chi::{dim2_closed_form, dim4_closed_form, dim4_quadratic_check, Dim4Var};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn main() {
    let chi = dim2_closed_form(&rat(8), &rat(6)).unwrap();
    println!(
        "surface (a, b) = (8, 6): {}",
        chi.decimal_strings().join(" ")
    );

    println!();
    println!("fourfold coefficient columns:");
    for (label, values) in [
        (
            "A",
            dim4_closed_form(&rat(1), &rat(0), &rat(0), &rat(0), &rat(0)),
        ),
        (
            "B13",
            dim4_closed_form(&rat(0), &rat(1), &rat(0), &rat(0), &rat(0)),
        ),
        (
            "B22",
            dim4_closed_form(&rat(0), &rat(0), &rat(1), &rat(0), &rat(0)),
        ),
        (
            "C",
            dim4_closed_form(&rat(0), &rat(0), &rat(0), &rat(1), &rat(0)),
        ),
        (
            "D",
            dim4_closed_form(&rat(0), &rat(0), &rat(0), &rat(0), &rat(1)),
        ),
    ] {
        println!(
            "  {label:<3} -> {}",
            values.unwrap().decimal_strings().join(" ")
        );
    }

    println!();
    let check = dim4_quadratic_check();
    println!("sum of squares vs square of sum, combined coefficients:");
    for x in Dim4Var::ALL {
        for y in Dim4Var::ALL {
            if x > y {
                continue;
            }
            println!(
                "  {:<8} {:>6} vs {:>6}",
                format!("{}·{}", x.label(), y.label()),
                check.sum_of_squares.coefficient(x, y),
                check.square_of_sum.coefficient(x, y)
            );
        }
    }
    println!(
        "every right coefficient at least double the left: {}",
        check.dominated
    );
}
