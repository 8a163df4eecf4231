//! C, C_t, the Hardy operator, C^{-1}, S_t and finite sections.

use cesaro_lab::operators::{
    cesaro_apply, cesaro_inverse_apply, finite_section, generalized_cesaro_apply, hardy_apply,
    log_power_identity_check, s_t_apply,
};
use cesaro_lab::series::log_one_minus_inv;
use cesaro_lab::{Complex64, Poly, Result};

fn main() -> Result<()> {
    let one = Poly::constant(Complex64::new(1.0, 0.0), 8);
    // C1 = (1/z) log(1/(1-z))
    println!("C 1       {:?}", cesaro_apply(&one));
    println!("C_0.5 1   {:?}", generalized_cesaro_apply(0.5, &one)?);
    println!("C_0 z^3   {:?}", hardy_apply(&Poly::monomial(3, 8)));

    let log = log_one_minus_inv(8);
    let image = cesaro_apply(&log);
    let back = cesaro_inverse_apply(&image);
    println!(
        "C^-1 C log(1/(1-z)) - log(1/(1-z)): {:.1e}",
        (&back - &log).max_abs()
    );

    for k in 1..=4 {
        println!(
            "C(g^{k}) = -g^{}/({}z): discrepancy {:.1e}",
            k + 1,
            k + 1,
            log_power_identity_check(k, 256)?
        );
    }

    let p = Poly::from_real(&[0.0, 1.0, 0.5, 0.25])?.truncate(8);
    for t in [0.0, 0.5, 2.0] {
        println!("S_{t} p   {:?}", s_t_apply(t, &p)?);
    }
    let split = s_t_apply(0.7, &s_t_apply(1.3, &p)?)?;
    println!(
        "S_0.7 S_1.3 - S_2: {:.1e}",
        (&split - &s_t_apply(2.0, &p)?).max_abs()
    );

    let section = finite_section(0.5, 5)?;
    println!("finite section of C_0.5, 6x6:");
    for row in 0..section.dimension() {
        let cells: Vec<String> = section
            .row(row)
            .iter()
            .map(|x| format!("{x:7.4}"))
            .collect();
        println!("  {}", cells.join(" "));
    }
    println!("eigenvalues {:?}", section.eigenvalues());
    Ok(())
}
