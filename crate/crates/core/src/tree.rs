//! Combinatorics of the `(q+1)`-homogeneous tree.
//!
//! A vertex is encoded by the branch choices along its geodesic from the root:
//! the first index lies in `0..=q`, every later one in `0..q`. Ordering the
//! paths lexicographically gives each sphere `S(o, n)` a dense index
//! `0..sphere_len(q, n)`, and the parent / ancestor / descendant relations are
//! plain integer arithmetic on those indices:
//!
//! ```text
//! level 1:   index = b1                       (0 ..= q)
//! level n:   index = b1·q^(n-1) + b2·q^(n-2) + … + bn
//! parent:    index / q          (for n ≥ 2; the root for n = 1)
//! ```
//!
//! No adjacency structure is ever materialized.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// Branching parameter `q` and truncation radius `N` of the ball `B(o, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeParams {
    q: u32,
    depth: usize,
}

impl TreeParams {
    pub fn new(q: u32, depth: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain(format!("branching parameter q must be >= 2, got {q}")));
        }
        if depth < 1 {
            return Err(Error::domain("truncation depth must be >= 1"));
        }
        if checked_sphere_len(q, depth).is_none() {
            return Err(Error::domain(format!("sphere S(o,{depth}) overflows for q = {q}")));
        }
        Ok(TreeParams { q, depth })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Same `q`, different truncation radius.
    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        TreeParams::new(self.q, depth)
    }

    /// `#S(o, n)`: 1 for `n = 0`, else `(q+1)·q^(n-1)`.
    pub fn sphere_size(&self, n: usize) -> Result<usize> {
        self.check_level(n)?;
        Ok(sphere_len(self.q, n))
    }

    /// `#B(o, depth)`.
    pub fn ball_size(&self) -> usize {
        ball_len(self.q, self.depth)
    }

    /// All vertices of `S(o, n)` in lexicographic path order.
    pub fn enumerate_sphere(&self, n: usize) -> Result<Vec<Vertex>> {
        self.check_level(n)?;
        Ok((0..sphere_len(self.q, n))
            .map(|i| Vertex::from_index(self.q, n, i))
            .collect())
    }

    pub(crate) fn check_level(&self, n: usize) -> Result<()> {
        if n > self.depth {
            Err(Error::domain(format!("level {n} exceeds truncation depth {}", self.depth)))
        } else {
            Ok(())
        }
    }
}

/// A vertex of the tree, stored as its path of branch indices from the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Vertex {
    path: Vec<u32>,
}

impl Vertex {
    pub fn root() -> Self {
        Vertex { path: Vec::new() }
    }

    /// Validates every branch index against its admissible range.
    pub fn new(q: u32, path: Vec<u32>) -> Result<Self> {
        for (pos, &b) in path.iter().enumerate() {
            let bound = if pos == 0 { q + 1 } else { q };
            if b >= bound {
                return Err(Error::domain(format!(
                    "branch index {b} at position {pos} out of range 0..{bound}"
                )));
            }
        }
        Ok(Vertex { path })
    }

    /// The vertex `ω_n` on the canonical ray `ω_o` (all-zero path).
    pub fn canonical(n: usize) -> Self {
        Vertex { path: vec![0; n] }
    }

    /// Inverse of [`Vertex::index`].
    pub fn from_index(q: u32, level: usize, index: usize) -> Self {
        debug_assert!(index < sphere_len(q, level));
        let mut path = vec![0u32; level];
        let mut rest = index;
        for slot in path.iter_mut().skip(1).rev() {
            *slot = (rest % q as usize) as u32;
            rest /= q as usize;
        }
        if level > 0 {
            path[0] = rest as u32;
        }
        Vertex { path }
    }

    /// Position of this vertex in the lexicographic enumeration of its sphere.
    pub fn index(&self, q: u32) -> usize {
        self.path
            .iter()
            .enumerate()
            .fold(0usize, |acc, (pos, &b)| if pos == 0 { b as usize } else { acc * q as usize + b as usize })
    }

    pub fn path(&self) -> &[u32] {
        &self.path
    }

    /// `|x| = d(o, x)`.
    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_root(&self) -> bool {
        self.path.is_empty()
    }

    pub fn parent(&self) -> Option<Vertex> {
        if self.is_root() {
            None
        } else {
            Some(self.prefix(self.len() - 1))
        }
    }

    /// `x_k`, the vertex at distance `k` from `o` on the geodesic to `x`.
    pub fn prefix(&self, k: usize) -> Vertex {
        Vertex { path: self.path[..k.min(self.len())].to_vec() }
    }

    pub fn children(&self, q: u32) -> impl Iterator<Item = Vertex> + '_ {
        let n = if self.is_root() { q + 1 } else { q };
        (0..n).map(move |b| {
            let mut path = self.path.clone();
            path.push(b);
            Vertex { path }
        })
    }

    pub fn is_prefix_of(&self, other: &Vertex) -> bool {
        other.path.starts_with(&self.path)
    }

    /// `[o = x_0, x_1, …, x_|x| = x]`.
    pub fn geodesic(&self) -> Vec<Vertex> {
        (0..=self.len()).map(|k| self.prefix(k)).collect()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_root() {
            return f.write_str("o");
        }
        f.write_str("⟨")?;
        for (i, b) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("⟩")
    }
}

/// Length of the longest common prefix of the two paths.
pub fn common_prefix_len(x: &Vertex, y: &Vertex) -> usize {
    x.path.iter().zip(&y.path).take_while(|(a, b)| a == b).count()
}

/// `#S(o, n)` without bounds checking against a truncation depth.
pub fn sphere_len(q: u32, n: usize) -> usize {
    if n == 0 {
        1
    } else {
        (q as usize + 1) * (q as usize).pow(n as u32 - 1)
    }
}

fn checked_sphere_len(q: u32, n: usize) -> Option<usize> {
    if n == 0 {
        return Some(1);
    }
    (q as usize).checked_pow(u32::try_from(n - 1).ok()?)?.checked_mul(q as usize + 1)
}

/// `#B(o, radius) = 1 + (q+1)(q^radius − 1)/(q − 1)`.
pub fn ball_len(q: u32, radius: usize) -> usize {
    (0..=radius).map(|n| sphere_len(q, n)).sum()
}

/// Index of the level-`anc_level` ancestor of the vertex `(level, index)`.
#[inline]
pub fn ancestor_index(q: u32, level: usize, index: usize, anc_level: usize) -> usize {
    debug_assert!(anc_level <= level);
    if anc_level == 0 {
        0
    } else {
        index / (q as usize).pow((level - anc_level) as u32)
    }
}

/// Indices of the level-`target` descendants of `(level, index)`; they form a
/// contiguous block of the target sphere.
#[inline]
pub fn descendant_range(q: u32, level: usize, index: usize, target: usize) -> Range<usize> {
    debug_assert!(target >= level);
    if level == 0 {
        0..sphere_len(q, target)
    } else {
        let width = (q as usize).pow((target - level) as u32);
        index * width..(index + 1) * width
    }
}

/// [`common_prefix_len`] on sphere indices.
#[inline]
pub fn common_prefix_len_indexed(q: u32, a: (usize, usize), b: (usize, usize)) -> usize {
    let top = a.0.min(b.0);
    let mut x = ancestor_index(q, a.0, a.1, top);
    let mut y = ancestor_index(q, b.0, b.1, top);
    let mut level = top;
    while level > 0 && x != y {
        level -= 1;
        if level == 0 {
            break;
        }
        x /= q as usize;
        y /= q as usize;
    }
    level
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(path: &[u32]) -> Vertex {
        Vertex::new(2, path.to_vec()).unwrap()
    }

    #[test]
    fn sphere_sizes_q2() {
        let p = TreeParams::new(2, 4).unwrap();
        assert_eq!(p.sphere_size(0).unwrap(), 1);
        assert_eq!(p.sphere_size(1).unwrap(), 3);
        assert_eq!(p.sphere_size(3).unwrap(), 12);
        assert!(p.sphere_size(5).is_err());
    }

    #[test]
    fn params_validation() {
        assert!(TreeParams::new(1, 3).is_err());
        assert!(TreeParams::new(2, 0).is_err());
        assert!(TreeParams::new(9, 16).is_ok());
    }

    #[test]
    fn enumerate_small_spheres() {
        let p = TreeParams::new(2, 3).unwrap();
        assert_eq!(p.enumerate_sphere(0).unwrap(), vec![Vertex::root()]);
        assert_eq!(p.enumerate_sphere(1).unwrap(), vec![v(&[0]), v(&[1]), v(&[2])]);
        let s2 = p.enumerate_sphere(2).unwrap();
        assert_eq!(s2.len(), 6);
        assert_eq!(s2[0], v(&[0, 0]));
        assert!(s2.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn index_roundtrip() {
        for q in 2..5u32 {
            for n in 0..5 {
                for i in 0..sphere_len(q, n) {
                    let x = Vertex::from_index(q, n, i);
                    assert_eq!(x.len(), n);
                    assert_eq!(x.index(q), i);
                    assert!(Vertex::new(q, x.path().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn parents_lie_on_previous_sphere() {
        let q = 3;
        for n in 1..5 {
            for i in 0..sphere_len(q, n) {
                let x = Vertex::from_index(q, n, i);
                let p = x.parent().unwrap();
                assert_eq!(p.index(q), ancestor_index(q, n, i, n - 1));
                assert!(descendant_range(q, n - 1, p.index(q), n).contains(&i));
            }
        }
    }

    #[test]
    fn common_prefix_examples() {
        assert_eq!(common_prefix_len(&v(&[0, 1]), &v(&[0, 0])), 1);
        assert_eq!(common_prefix_len(&v(&[1]), &v(&[0, 0, 1])), 0);
        let x = v(&[2, 1, 0]);
        assert_eq!(common_prefix_len(&x, &x), 3);
    }

    #[test]
    fn common_prefix_indexed_matches_paths() {
        let q = 2;
        for (la, lb) in [(3, 3), (2, 4), (4, 1), (0, 3)] {
            for i in 0..sphere_len(q, la) {
                for j in 0..sphere_len(q, lb) {
                    let (x, y) = (Vertex::from_index(q, la, i), Vertex::from_index(q, lb, j));
                    assert_eq!(common_prefix_len_indexed(q, (la, i), (lb, j)), common_prefix_len(&x, &y));
                }
            }
        }
    }

    #[test]
    fn geodesic_is_prefix_list() {
        assert_eq!(Vertex::root().geodesic(), vec![Vertex::root()]);
        assert_eq!(v(&[0, 1]).geodesic(), vec![Vertex::root(), v(&[0]), v(&[0, 1])]);
    }

    #[test]
    fn invalid_branch_rejected() {
        assert!(Vertex::new(2, vec![3]).is_err());
        assert!(Vertex::new(2, vec![2, 2]).is_err());
        assert!(Vertex::new(2, vec![2, 1]).is_ok());
    }

    #[test]
    fn ball_closed_form() {
        for q in 2..6u32 {
            for n in 1..8 {
                let expected = 1 + (q as usize + 1) * ((q as usize).pow(n as u32) - 1) / (q as usize - 1);
                assert_eq!(ball_len(q, n), expected);
            }
        }
    }
}
