//! Eigenvectors of C (not in the space) and of C_t, t < 1 (summable).

use cesaro_lab::ergodic::{eigenpair_cesaro, eigenvector_ct};
use cesaro_lab::Result;

fn main() -> Result<()> {
    for n in 1..=4 {
        let e = eigenpair_cesaro(n, 512)?;
        println!(
            "e_{n}: eigenvalue {:.4}, residual {:.1e}, coeffs {:?}",
            e.eigenvalue,
            e.residual(),
            e.coeffs.truncate(6)
        );
    }

    println!();
    for t in [0.3, 0.9] {
        for m in 0..=3 {
            let sums: Vec<f64> = [256, 512, 4096]
                .iter()
                .map(|&n| eigenvector_ct(t, m, n).map(|g| g.l1_partial_sum()))
                .collect::<Result<_>>()?;
            let g = eigenvector_ct(t, m, 512)?;
            println!(
                "t = {t}, m = {m}: residual {:.1e}, l1 partial sums {:.10} {:.10} {:.10}, limit {:.10}",
                g.residual(),
                sums[0],
                sums[1],
                sums[2],
                (1.0 - t).powi(-(m as i32 + 1))
            );
        }
    }
    Ok(())
}
