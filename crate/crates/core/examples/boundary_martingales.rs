//! Cylindrical functions on the boundary: sector measures, conditional
//! expectations, martingale differences and a martingale built from one level.

use homtree::boundary::{confluence_measures, sector_measure_exact, CylFunction, Martingale};
use homtree::harness::{random_cyl_function, Distribution};
use homtree::{Exponent, Result, TreeParams, Vertex};

fn main() -> Result<()> {
    let params = TreeParams::new(3, 6)?;
    for level in 0..=3 {
        println!("ν(E(x)) at level {level} = {}", sector_measure_exact(3, level)?);
    }
    let x = Vertex::canonical(3);
    println!("confluence measures from {x}: {:?}", confluence_measures(&params, &x));

    let f = random_cyl_function(7, params, 3, Distribution::RealUniform)?;
    println!("∫F = {:.6}, ‖F‖_2 = {:.6}", f.integral(), f.lr_norm(Exponent::Finite(2.0)));
    for j in 0..=3 {
        println!("‖Δ_{j} F‖_2 = {:.6}", f.difference(j).lr_norm(Exponent::Finite(2.0)));
    }

    let mart = Martingale::from_function(&f, 5)?;
    println!("sup_n ‖F_n‖_inf = {:.6}", mart.sup_lr_norm(Exponent::Infinity));

    let ind = CylFunction::indicator(params, &Vertex::canonical(2))?;
    println!("‖χ‖_1 = {:.6}, maximal function max = {:.6}", ind.lr_norm(Exponent::Finite(1.0)), ind.martingale_maximal().max_abs());
    Ok(())
}
