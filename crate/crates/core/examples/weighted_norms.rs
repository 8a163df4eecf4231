//! Weighted sup-norms and growth classification.

use cesaro_lab::corpus::NamedFunction;
use cesaro_lab::weights::{growth_classify, reliability_radius, sup_norm};
use cesaro_lab::{Result, WeightSpec};

fn main() -> Result<()> {
    let weights = [
        WeightSpec::log_power(1)?,
        WeightSpec::log_power(2)?,
        WeightSpec::standard(1.0)?,
        WeightSpec::standard(2.0)?,
    ];
    let functions = ["const1", "log-inv", "g2", "pow1", "e2"];

    print!("{:>10}", "");
    for w in &weights {
        print!("{:>12}", w.to_string());
    }
    println!();
    for name in functions {
        let f = name.parse::<NamedFunction>()?.build(1024);
        print!("{name:>10}");
        for &w in &weights {
            print!("{:>12.4}", sup_norm(&f, w));
        }
        println!();
    }
    println!(
        "grid reaches r = {:.4} at degree 1024",
        reliability_radius(1024)
    );

    println!();
    let degrees = [128, 512, 2048];
    for name in ["const1", "log-inv", "g3", "pow0.5", "e2", "e3"] {
        let f = name.parse::<NamedFunction>()?;
        let family: Vec<_> = degrees.iter().map(|&n| f.build(n)).collect();
        let report = growth_classify(&family, WeightSpec::LogPower(1))?;
        println!(
            "{name:>8}: k = {:6.3}  gamma = {:6.3}  diverges under v_1: {}",
            report.log_order, report.standard_order, report.divergence_flag
        );
    }
    Ok(())
}
