//! Vertex encoding, spheres and the lexicographic index.

use homtree::tree::{ancestor_index, common_prefix_len, descendant_range};
use homtree::{Result, TreeParams, Vertex};

fn main() -> Result<()> {
    let params = TreeParams::new(2, 4)?;
    for n in 0..=params.depth() {
        println!("|S({n})| = {}", params.sphere_size(n)?);
    }
    println!("|B(4)| = {}", params.ball_size());

    let x = Vertex::new(2, vec![1, 0, 1])?;
    let idx = x.index(2);
    println!("{x} has index {idx} on sphere 3, parent {}", x.parent().unwrap());
    println!("geodesic: {:?}", x.geodesic().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("ancestor on sphere 1: index {}", ancestor_index(2, 3, idx, 1));
    println!("descendants on sphere 4: {:?}", descendant_range(2, 3, idx, 4));

    let y = Vertex::new(2, vec![1, 1, 0])?;
    println!("|{x} ∧ {y}| = {}", common_prefix_len(&x, &y));
    Ok(())
}
