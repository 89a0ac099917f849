//! The damped series at p = 0 is the classical Mathieu series
//! sum 2n / (n^2 + r^2)^(mu+1). This checks the reduction and shows how the
//! value falls monotonically as the damping p grows.
//!
//!     cargo run --example classical_limit

use pmathieu::mathieu::{s_classical, s_integral, s_series, MathieuParams};

fn main() {
    println!("reduction at p = 0 (series and integral vs direct classical sum)");
    println!("{:>5} {:>5} {:>22} {:>10} {:>10}", "mu", "r", "classical", "d_series", "d_integral");
    for (mu, r) in [(0.5, 0.3), (1.0, 0.5), (2.0, 0.9)] {
        let want = s_classical(mu, r, 1e-12).unwrap().value;
        let params = MathieuParams::new(mu, 0.0, r).unwrap();
        let series = s_series(&params, 1e-12).unwrap().value;
        let integral = s_integral(&params, 1e-12).unwrap().value;
        println!(
            "{mu:>5} {r:>5} {want:>22.16} {:>10.2e} {:>10.2e}",
            (series - want).abs() / want,
            (integral - want).abs() / want
        );
    }

    println!("\ndamping: S_{{1,p}}(0.5) as p grows (p = 0 row is the classical value)");
    println!("{:>6} {:>22}", "p", "value");
    for p in [0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0] {
        let params = MathieuParams::new(1.0, p, 0.5).unwrap();
        let v = s_integral(&params, 1e-12).unwrap().value;
        println!("{p:>6} {v:>22.16}");
    }
}
