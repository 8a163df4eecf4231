//! Where resolvent norms blow up with the truncation degree.

use cesaro_lab::ergodic::{spectral_dichotomy_report, HalfPlane};
use cesaro_lab::Result;

fn main() -> Result<()> {
    let report = spectral_dichotomy_report(64)?;
    println!("degrees {:?}", report.degrees);
    for s in &report.sections {
        println!(
            "section t = {}: triangular {}, diagonal deviation {:.1e}, leading {:?}",
            s.t, s.lower_triangular, s.max_diagonal_deviation, s.leading_eigenvalues
        );
    }

    // '#' grows, '.' stable, ' ' skipped; rows are Im λ from 2 down to -2
    println!("\ngrowth of ||R(lambda)1||_v1 from N = 64 to 1024:");
    for j in (0..=16).rev() {
        let im = -2.0 + j as f64 * 0.25;
        let row: String = (0..=16)
            .map(|i| {
                let re = -2.0 + i as f64 * 0.25;
                match report.probe(re, im) {
                    Some(p) if p.grows => '#',
                    Some(_) => '.',
                    None => ' ',
                }
            })
            .collect();
        println!("  {im:>5.2} {row}");
    }

    for region in [HalfPlane::Left, HalfPlane::Imaginary, HalfPlane::Right] {
        let (grows, total) = report
            .probes
            .iter()
            .filter(|p| p.region == region)
            .fold((0, 0), |(g, t), p| (g + p.grows as usize, t + 1));
        println!("{region:?}: {grows} of {total} probes grow");
    }
    let passing = report.axis_bounds.iter().filter(|b| b.pass).count();
    println!(
        "imaginary-axis bound holds in {passing} of {} checks",
        report.axis_bounds.len()
    );
    Ok(())
}
