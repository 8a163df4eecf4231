//! Truncated series arithmetic: products, binomial series, composition.

use cesaro_lab::series::{binomial_series, compose, log_one_minus_inv, mobius_coeffs};
use cesaro_lab::{Complex64, Poly};

fn main() -> cesaro_lab::Result<()> {
    let n = 12;
    let geometric = binomial_series(Complex64::new(-1.0, 0.0), n);
    let log = log_one_minus_inv(n);
    println!("1/(1-z)        {geometric:?}");
    println!("log(1/(1-z))   {log:?}");

    // (1/(1-z))^2 has coefficients n+1
    let square = geometric.mul_truncated(&geometric, n);
    println!("1/(1-z)^2      {square:?}");

    let root = binomial_series(Complex64::new(0.5, 0.0), n);
    let back = root.mul_truncated(&root, n);
    println!("sqrt(1-z)^2    {back:?}");

    let phi = mobius_coeffs(1.0, n)?;
    let composed = compose(&geometric, &phi)?;
    println!("1/(1-phi_1)    {composed:?}   (1, e^-1, e^-1, ...)");

    let p = Poly::from_real(&[1.0, -2.0, 0.5])?;
    let z = Complex64::new(0.3, 0.4);
    println!("p(0.3+0.4i) = {}", p.eval(z));
    println!(
        "log(1/(1-z)) at z = 0.5: {:.12} vs ln 2 = {:.12}",
        log_one_minus_inv(60).eval(0.5.into()).re,
        2f64.ln()
    );
    Ok(())
}
