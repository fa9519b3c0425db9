use homtree::spectral::{bfun, cfun, classify, gamma, phi_explicit, phi_integral, tau, SpectralParam};
use homtree::{Complex64, Result};

fn main() -> Result<()> {
    let q = 2;
    let t = tau(q);
    for z in [Complex64::new(t / 8.0, 0.0), Complex64::new(0.0, -0.5), Complex64::new(t / 2.0, 0.0), Complex64::new(0.3, 0.2)] {
        let sp = SpectralParam::new(q, z)?;
        println!("z = {z:.4} [{}], γ(z) = {:.6}", classify(q, z), gamma(&sp));
        match cfun(&sp) {
            Ok(c) => println!("  c(z) = {c:.6}"),
            Err(e) => println!("  c(z): {e}"),
        }
        for n in [0, 1, 2, 5, 10] {
            let a = phi_explicit(&sp, n);
            let gap = (a - phi_integral(&sp, n)).norm();
            println!("  φ({n}) = {a:.6}  |explicit − integral| = {gap:.1e}");
        }
    }
    let sp = SpectralParam::real(q, t / 8.0)?;
    println!("b(1, 3) at τ/8 = {:.6}", bfun(1, 3, &sp)?);
    Ok(())
}
