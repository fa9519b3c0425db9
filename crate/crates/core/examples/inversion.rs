//! Recovering F from averages of its transform, with the closed-form and
//! brute-force operators side by side.

use homtree::harness::{random_cyl_function, Distribution};
use homtree::inversion::{coefficients, inversion_error, parseval_error, t_n_bruteforce, t_n_closedform, TnRoute};
use homtree::spectral::{tau, SpectralParam};
use homtree::{Exponent, Result, TreeParams};

fn main() -> Result<()> {
    let params = TreeParams::new(2, 14)?;
    let f = random_cyl_function(42, params, 2, Distribution::ComplexDisc)?;
    let sp = SpectralParam::real(2, 3.0 * tau(2) / 8.0)?;

    let co = coefficients(6, &sp, 2)?;
    println!("n = 6: λ = {:.6}, a = {:?}, b = {:.4}", co.lambda, co.a, co.b);

    let gap = t_n_bruteforce(&f, &sp, 6)?.max_abs_diff(&t_n_closedform(&f, &sp, 6)?);
    println!("closed form vs brute force at n = 6: {gap:.2e}");

    for n in 1..=14 {
        let rep = inversion_error(&f, &sp, n, Exponent::Finite(2.0), TnRoute::ClosedForm)?;
        println!("n = {n:2}: ‖T_n − F‖_2 = {:.6}, Parseval = {:.6}", rep.error, parseval_error(&f, &sp, n)?);
    }
    Ok(())
}
