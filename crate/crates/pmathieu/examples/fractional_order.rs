//! The Grunwald-Letnikov machinery: integer-order stencil derivatives with
//! their eigenrelation on e^{-qx}, fractional integrals checked against the
//! exponential eigenvalue, and the experimental fractional-order extension
//! of the thm1 representation sum.
//!
//!     cargo run --example fractional_order

use pmathieu::gl::{gl_fractional_integral, nth_derivative, GlConfig};
use pmathieu::mathieu::{s_integral, MathieuParams};
use pmathieu::schlomilch::{repr_b4, repr_thm1_fractional};

fn main() {
    // d^n/dq^n e^{-qx} = (-x)^n e^{-qx}: the cleanest stencil accuracy probe.
    // Rounding noise grows as h^-n, so the fourth order takes a coarser
    // base step.
    println!("integer stencil derivatives of e^(-qx) at q = 1");
    println!("{:>3} {:>5} {:>12} {:>12}", "n", "x", "rel error", "err est");
    for n in 1..=4u32 {
        for x in [0.5, 2.0] {
            let f = move |q: f64| Ok((-q * x).exp());
            let h0 = if n == 4 { 0.1 } else { 0.05 } / x.max(1.0);
            let d = nth_derivative(f, 1.0, n, h0).unwrap();
            let want = (-x).powi(n as i32) * (-x).exp();
            let rel = (d.value - want).abs() / want.abs();
            println!("{n:>3} {x:>5} {rel:>12.2e} {:>12.2e}", d.err_estimate / want.abs());
        }
    }

    // I^alpha e^{kt} over a window reaching far left of x acts as k^-alpha.
    println!("\nfractional integral eigenrelation: I^a e^(2t) = 2^(-a) e^(2t)");
    println!("{:>6} {:>22} {:>12}", "alpha", "value at x=0.4", "rel error");
    let x = 0.4;
    for alpha in [0.5, 1.0, 1.5, 2.5] {
        let f = |t: f64| Ok((2.0 * t).exp());
        let got = gl_fractional_integral(f, x - 16.0, x, alpha, &GlConfig::default()).unwrap();
        let want = 2f64.powf(-alpha) * (2.0 * x).exp();
        let rel = (got.value - want).abs() / want;
        println!("{alpha:>6} {:>22.16} {rel:>12.2e}", got.value);
    }

    // Fractional-order representation sum (experimental): at nu = 2.5 it
    // evaluates mu = 1, where both b4 and the integral provide oracles.
    println!("\nexperimental fractional thm1 at nu = 2.5 (mu = 1), p = 1, r = 0.5");
    let (p, r) = (1.0, 0.5);
    let frac = repr_thm1_fractional(2.5, p, r, 1e-8).unwrap();
    let b4 = repr_b4(p, r, 1e-12).unwrap();
    let params = MathieuParams::new(1.0, p, r).unwrap();
    let quad = s_integral(&params, 1e-12).unwrap();
    println!("  fractional sum: {:.12}  (err est {:.1e})", frac.value, frac.err_estimate);
    println!("  b4 oracle:      {:.12}", b4.value);
    println!("  integral:       {:.12}", quad.value);
    println!("  rel vs b4:      {:.2e}", (frac.value - b4.value).abs() / b4.value.abs());
}
