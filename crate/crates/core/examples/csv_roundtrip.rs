//! Coefficient files: write, read back, apply the next stage.

use cesaro_lab::cli::io::{coeff_csv, parse_coeff_csv};
use cesaro_lab::operators::{cesaro_apply, cesaro_inverse_apply};
use cesaro_lab::{Complex64, Poly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let one = Poly::constant(Complex64::new(1.0, 0.0), 6);
    let bytes = coeff_csv("{\"note\":\"example\"}", &cesaro_apply(&one));
    print!("{}", String::from_utf8_lossy(&bytes));

    let path = std::env::temp_dir().join("cesaro_lab_example.csv");
    std::fs::write(&path, &bytes)?;
    let read = parse_coeff_csv(std::fs::File::open(&path)?, "example")?;
    assert_eq!(read, cesaro_apply(&one));
    println!("inverse of the file: {:?}", cesaro_inverse_apply(&read));
    std::fs::remove_file(path)?;
    Ok(())
}
