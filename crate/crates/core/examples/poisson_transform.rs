//! Poisson transform of a boundary function and its eigen-equation.

use homtree::harness::{random_cyl_function, Distribution};
use homtree::spectral::SpectralParam;
use homtree::transform::{poisson_transform, poisson_transform_reference, radial_error};
use homtree::treeops::eigen_residual;
use homtree::{Complex64, Exponent, Result, TreeParams};

fn main() -> Result<()> {
    let params = TreeParams::new(2, 10)?;
    let f = random_cyl_function(42, params, 3, Distribution::ComplexDisc)?;
    let sp = SpectralParam::new(2, Complex64::new(0.0, -0.5))?;

    let u = poisson_transform(&f, &sp);
    println!("max |P_zF| = {:.6}", u.max_abs());
    println!("eigen residual = {:.2e}", eigen_residual(&u, &sp)?);

    let small = poisson_transform_reference(&f.with_params(params.with_depth(5)?)?, &sp);
    println!("fast vs reference on B(5): {:.2e}", small.max_abs_diff(&u.restrict(5)?));

    for n in [3, 5, 7, 10] {
        println!("radial error n = {n}: {:.6}", radial_error(&f, &sp, Exponent::Finite(2.0), n)?);
    }
    Ok(())
}
