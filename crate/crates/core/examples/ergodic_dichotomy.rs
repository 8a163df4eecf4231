//! Means of C_t settle for t < 1 and keep moving for t = 1.

use cesaro_lab::ergodic::iterate_trace;
use cesaro_lab::{Complex64, Poly, Result, WeightSpec};

fn main() -> Result<()> {
    let one = Poly::constant(Complex64::new(1.0, 0.0), 512);
    let v1 = WeightSpec::LogPower(1);

    let settled = iterate_trace(0.5, &one, v1, 256)?;
    let moving = iterate_trace(1.0, &one, v1, 256)?;

    println!(
        "{:>5} {:>14} {:>14} {:>16}",
        "n", "t=0.5 error", "n * error", "t=1 increment"
    );
    for n in [1, 2, 4, 8, 16, 32, 64, 128, 256] {
        let e = settled.projection_errors[n - 1];
        println!(
            "{n:>5} {e:>14.6e} {:>14.6} {:>16.6e}",
            n as f64 * e,
            moving.mean_increments[n - 1]
        );
    }
    let max_iterate = settled.iterate_norms.iter().cloned().fold(0.0, f64::max);
    println!("t = 0.5: sup of iterate norms {max_iterate:.4}");
    println!("t = 1:   ||C^256 1||_v1 = {:.4}", moving.iterate_norms[255]);
    Ok(())
}
