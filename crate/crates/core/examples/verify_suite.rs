//! Run one invariant suite from code instead of the command line.

use cesaro_lab::verify::{run_suite, Suite};

fn main() -> cesaro_lab::Result<()> {
    let suite = std::env::args()
        .nth(1)
        .map_or(Ok(Suite::Series), |s| s.parse())?;
    let results = run_suite(suite, 128)?;
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("{} checks, {failed} failed", results.len());
    Ok(())
}
