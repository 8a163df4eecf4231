//! R(λ, C) h three ways, and the bound on the imaginary axis.

use cesaro_lab::operators::cesaro_apply;
use cesaro_lab::resolvent::{
    imaginary_axis_constant, resolvent_bound_check, resolvent_recurrence, resolvent_semigroup,
    IntegralRule, ResolventIntegral, SemigroupRule,
};
use cesaro_lab::series::log_one_plus;
use cesaro_lab::{Complex64, Result};

fn main() -> Result<()> {
    let h = log_one_plus(64);
    let z = Complex64::new(0.4, 0.3);

    for lambda in [
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 1.0),
        Complex64::new(3.0, 0.0),
    ] {
        let series = resolvent_recurrence(lambda, &h.truncate(2048))?;
        let integral = ResolventIntegral::new(lambda, &h, IntegralRule::default())?;
        println!(
            "lambda = {lambda}: recurrence {:.12}  integral {:.12}",
            series.eval(z),
            integral.eval(z)?
        );
    }

    let lambda = Complex64::new(-0.5, 0.3);
    let rule = SemigroupRule::for_lambda(lambda, 1e-12)?;
    let exact = resolvent_recurrence(lambda, &h)?;
    let semigroup = resolvent_semigroup(lambda, &h, rule)?;
    println!(
        "lambda = {lambda}: semigroup vs recurrence {:.1e} over {} panels to t = {:.1}",
        (&semigroup - &exact).max_abs(),
        rule.panels,
        rule.t_max
    );

    // (λ - C) f = h
    let f = resolvent_recurrence(Complex64::new(0.2, 0.7), &h)?;
    let residual = &(&(&f * Complex64::new(0.2, 0.7)) - &cesaro_apply(&f)) - &h;
    println!("defining identity residual {:.1e}", residual.max_abs());

    for b in [0.5, 1.0, 2.0, 8.0] {
        let check = resolvent_bound_check(b, &h, 1)?;
        println!(
            "b = {b}: ||R(ib)h||_v2 = {:.4} against {:.4e} (constant {:.4e}): {}",
            check.lhs,
            check.rhs,
            imaginary_axis_constant(b),
            if check.pass { "holds" } else { "violated" }
        );
    }
    Ok(())
}
