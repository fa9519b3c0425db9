//! Hardy-type norms of eigenfunctions against the L^r norm of the boundary data.

use homtree::harness::{random_cyl_function, Distribution};
use homtree::spectral::{cfun, delta_index, tau, SpectralParam};
use homtree::transform::poisson_transform;
use homtree::treeops::{epsilon_n, hardy_norm_p, hardy_norm_star};
use homtree::{Complex64, Exponent, Result, TreeParams};

fn main() -> Result<()> {
    let params = TreeParams::new(2, 12)?;
    let f = random_cyl_function(3, params, 5, Distribution::ComplexDisc)?;
    let r = Exponent::Finite(2.0);
    let norm = f.lr_norm(r);

    for p in [1.0, 4.0 / 3.0, 2.0] {
        let li = delta_index(p)?;
        let z = Complex64::new(tau(2) / 8.0, li.delta);
        let u = poisson_transform(&f, &SpectralParam::new(2, z)?);
        let h = hardy_norm_p(&u, &li, r);
        println!("p = {p:.3}: ‖P_zF‖ / ‖F‖_2 = {:.6} (sup at level {})", h.value / norm, h.level);
    }

    let sp = SpectralParam::real(2, tau(2) / 6.0)?;
    let u = poisson_transform(&f, &sp);
    let h = hardy_norm_star(&u, r);
    println!("H^2_* ratio at τ/6: {:.6}", h.value / (cfun(&sp)?.norm() * norm));
    println!("after ε_4: {:.6}", hardy_norm_star(&epsilon_n(&u, 4), r).value / (cfun(&sp)?.norm() * norm));
    Ok(())
}
