//! Partial-sum trajectories of the term-based methods: how many terms each
//! representation needs, and how the running value settles. The final
//! partial always equals the converged value bit for bit.
//!
//!     cargo run --example convergence_tables

use pmathieu::mathieu::{s_series_partials, MathieuParams};
use pmathieu::schlomilch::{repr_partials, SumForm};

fn show(label: &str, partials: &[(u64, f64)], finalv: f64) {
    println!("{label}");
    println!("{:>6} {:>22} {:>12}", "terms", "partial", "|to final|");
    let mut k = 1usize;
    while k <= partials.len() {
        let (terms, v) = partials[k - 1];
        println!("{terms:>6} {v:>22.16} {:>12.2e}", (v - finalv).abs());
        k *= 2;
    }
    let (last_k, last_v) = partials[partials.len() - 1];
    println!("natural stop at {last_k} terms; final partial == value: {}", last_v == finalv);
    println!();
}

fn main() {
    // Geometric decay in r^2: slow near r = 1.
    let params = MathieuParams::new(1.0, 1.0, 0.9).unwrap();
    let (partials, res) = s_series_partials(&params, 1e-12).unwrap();
    show("series, mu = 1, p = 1, r = 0.9 (ratio r^2 = 0.81)", &partials, res.value);

    // e^(-2 sqrt(pk)) decay: fast for moderate p, insensitive to r.
    let (partials, res) = repr_partials(SumForm::B4, 1.0, 0.9, 1e-12).unwrap();
    show("b4 sum, same parameters", &partials, res.value);

    let (partials, res) = repr_partials(SumForm::B7, 4.0, 2.0, 1e-12).unwrap();
    show("b7 composite sum, p = 4, r = 2", &partials, res.value);
}
