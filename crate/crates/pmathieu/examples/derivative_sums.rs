//! The derivative-form representation sums (tags b2, b1, thm1): each term
//! differentiates a J K Bessel product in the summation index, evaluated by
//! a Richardson-extrapolated central stencil. The b2 form also has a fully
//! analytic derivative for comparison.
//!
//!     cargo run --example derivative_sums

use pmathieu::mathieu::{s_integral, MathieuParams};
use pmathieu::schlomilch::{repr_b1, repr_b2, repr_b2_analytic, repr_thm1};

fn main() {
    let (p, r) = (1.0, 0.7);
    println!("derivative-form sums at p = {p}, r = {r}, against the integral");
    println!("{:>12} {:>6} {:>22} {:>9} {:>7}", "tag", "mu", "value", "rel", "evals");
    for (tag, mu, res) in [
        ("b2 stencil", -0.5, repr_b2(p, r, 1e-10)),
        ("b2 analytic", -0.5, repr_b2_analytic(p, r, 1e-10)),
        ("b1", 0.5, repr_b1(p, r, 1e-10)),
        ("thm1 n=2", 0.5, repr_thm1(2, p, r, 1e-10)),
        ("thm1 n=3", 1.5, repr_thm1(3, p, r, 1e-10)),
        ("thm1 n=4", 2.5, repr_thm1(4, p, r, 1e-10)),
    ] {
        let e = res.unwrap();
        let params = MathieuParams::new(mu, p, r).unwrap();
        let want = s_integral(&params, 1e-11).unwrap().value;
        let rel = (e.value - want).abs() / want.abs();
        println!("{tag:>12} {mu:>6} {:>22.16} {rel:>9.1e} {:>7}", e.value, e.terms_or_nodes);
    }
    println!();
    println!("The stencil noise floor rises with the derivative order: first");
    println!("order (b2) reaches ~1e-9, third (b1, thm1 n=3) ~1e-6, fourth");
    println!("(thm1 n=4) ~1e-4. The reported err_estimate tracks this; the");
    println!("conjugate-pair forms at the same mu are the precision route.");
}
