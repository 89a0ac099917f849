//! Evaluate S_{mu,p}(r) by every representation that applies at a parameter
//! point and show how tightly they agree.
//!
//!     cargo run --example compute_all_methods

use pmathieu::mathieu::{s_integral, s_series, MathieuParams};
use pmathieu::schlomilch::{repr_b1, repr_b3, repr_b4, repr_b7, repr_thm1};
use pmathieu::{EvalResult, Result};

fn applicable(mu: f64, p: f64, r: f64, tol: f64) -> Vec<(&'static str, Result<EvalResult>)> {
    let params = MathieuParams::new(mu, p, r).expect("valid parameters");
    let mut out: Vec<(&'static str, Result<EvalResult>)> = Vec::new();
    if r.abs() < 1.0 {
        out.push(("series", s_series(&params, tol)));
    }
    out.push(("integral", s_integral(&params, tol)));
    if p > 0.0 {
        if mu == 0.0 {
            out.push(("b3", repr_b3(p, r, tol)));
        } else if mu == 0.5 {
            out.push(("b1", repr_b1(p, r, tol)));
            out.push(("thm1 n=2", repr_thm1(2, p, r, tol)));
        } else if mu == 1.0 {
            out.push(("b4", repr_b4(p, r, tol)));
        } else if mu == 1.5 {
            out.push(("thm1 n=3", repr_thm1(3, p, r, tol)));
        } else if mu == 2.0 {
            out.push(("b7", repr_b7(p, r, tol)));
        }
    }
    out
}

fn main() {
    let tol = 1e-10;
    for (mu, p, r) in [(1.0, 1.0, 0.5), (0.5, 1.0, 0.5), (2.0, 1.0, 0.7), (0.0, 0.25, 1.5)] {
        println!("S_{{mu={mu}, p={p}}}(r={r})");
        println!("{:<10} {:>22} {:>10} {:>8}", "method", "value", "err", "terms");
        let rows = applicable(mu, p, r, tol);
        let mut values = Vec::new();
        for (name, res) in &rows {
            match res {
                Ok(e) => {
                    println!("{name:<10} {:>22.16} {:>10.2e} {:>8}", e.value, e.err_estimate, e.terms_or_nodes);
                    values.push(e.value);
                }
                Err(err) => println!("{name:<10} failed: {err}"),
            }
        }
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        println!("spread across methods: {:.2e}\n", (hi - lo).abs() / hi.abs());
    }
}
