//! The damped zeta function zeta_p(alpha): the Riemann zeta with e^{-p/t}
//! inserted into its Bose-integral kernel. Two independent routes evaluate
//! it, a direct quadrature and an exponentially convergent Bessel-K sum;
//! they cross-check each other, and the dispatcher picks whichever
//! converges faster.
//!
//!     cargo run --example zeta_p_dual

use pmathieu::kernels::riemann_zeta;
use pmathieu::zeta_p::{zeta_p, zeta_p_integral, zeta_p_kseries};

fn main() {
    println!("dual routes, relative agreement");
    println!("{:>6} {:>6} {:>22} {:>22} {:>9}", "alpha", "p", "integral", "k-series", "rel");
    for alpha in [0.5, 2.0, 5.0] {
        for p in [0.1, 1.0, 10.0] {
            let a = zeta_p_integral(alpha, p, 1e-13).unwrap();
            let b = zeta_p_kseries(alpha, p, 1e-13).unwrap();
            let rel = (a.value - b.value).abs() / a.value.abs();
            println!("{alpha:>6} {p:>6} {:>22.16} {:>22.16} {rel:>9.1e}", a.value, b.value);
        }
    }

    println!("\ndispatch: method chosen by zeta_p and terms used");
    println!("{:>8} {:>14} {:>7}", "p", "method", "terms");
    for p in [0.01, 0.05, 0.5, 4.0] {
        let r = zeta_p(2.0, p, 1e-12).unwrap();
        println!("{p:>8} {:>14} {:>7}", r.method.tag(), r.terms_or_nodes);
    }

    println!("\np -> 0 recovers the Riemann zeta (alpha = 3)");
    let z3 = riemann_zeta(3.0).unwrap();
    println!("{:>8} {:>22} {:>12}", "p", "zeta_p(3)", "zeta(3)-v");
    for p in [1.0, 0.1, 0.01, 1e-4, 1e-8] {
        let v = zeta_p(3.0, p, 1e-12).unwrap().value;
        println!("{p:>8.0e} {v:>22.16} {:>12.2e}", z3 - v);
    }
}
