//! Tabulates the certificate across the smallness threshold: the admissible α
//! range, the default α and the resulting contraction constant.
//!
//!     cargo run --example certify_threshold

use epitaxy::certificate::{default_alpha, Certificate};
use epitaxy::max_alpha;

fn main() -> epitaxy::Result<()> {
    println!(
        "{:>7}{:>11}{:>10}{:>13}{:>13}{:>7}",
        "r0", "max alpha", "alpha", "contraction", "mapping lhs", "pass"
    );
    for r0 in [0.0, 0.05, 0.1, 0.15, 0.2, 0.24, 0.249, 0.2499, 0.25, 0.251, 0.3] {
        let top = max_alpha(r0).map(|a| format!("{a:.4}")).unwrap_or_else(|_| "-".into());
        let c = Certificate::evaluate(r0, default_alpha(r0))?;
        println!(
            "{r0:>7.4}{top:>11}{:>10.4}{:>13.5}{:>13.5}{:>7}",
            c.alpha, c.contraction_constant, c.mapping_lhs, c.pass
        );
    }

    let c = Certificate::evaluate(0.2, 0.25)?;
    println!("\nr0 = 0.2, α = 0.25: contraction constant (e^0.4 − 1)/0.75 = {:.10}", c.contraction_constant);
    Ok(())
}
