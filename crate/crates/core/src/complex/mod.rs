//! Finite abstract simplicial complexes.
//!
//! Vertices are dense indices `0..vertex_count`; every simplex is stored as a
//! strictly increasing vertex list, and the complex is closed under taking
//! faces.

mod presets;
mod spheres;
mod surface;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use presets::{generate, Preset};
pub use spheres::{canonical_sphere_code, enumerate_spheres, is_sphere, MAX_ENUMERATION_VERTICES};
pub use surface::{
    orient_pseudomanifold, vertex_link, verify_closed_oriented_surface, SurfaceOrientation,
};

/// A simplex as a sorted list of vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    by_dim: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

/// Number of simplices per dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn count(&self, dim: usize) -> usize {
        self.0.get(dim).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

impl SimplicialComplex {
    /// Downward closure of `maximal` with `vertex_count = 1 + max index`.
    pub fn build(maximal: &[Vec<usize>]) -> Result<Self> {
        let count = maximal
            .iter()
            .flat_map(|s| s.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        Self::from_maximal(count, maximal)
    }

    /// Downward closure of `maximal` on the vertex set `0..vertex_count`.
    /// Vertices not covered by any listed simplex become isolated points.
    pub fn from_maximal(vertex_count: usize, maximal: &[Vec<usize>]) -> Result<Self> {
        let mut all: BTreeSet<Simplex> = (0..vertex_count).map(|v| vec![v]).collect();
        for raw in maximal {
            if raw.is_empty() {
                return Err(Error::EmptySimplex);
            }
            let mut s = raw.clone();
            s.sort_unstable();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DuplicateVertex(raw.clone()));
            }
            if let Some(&v) = s.last().filter(|&&v| v >= vertex_count) {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            if all.contains(&s) {
                continue;
            }
            for face in nonempty_subsets(&s) {
                all.insert(face);
            }
        }
        Ok(Self::from_closed_set(vertex_count, all))
    }

    fn from_closed_set(vertex_count: usize, all: BTreeSet<Simplex>) -> Self {
        let dim = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); dim];
        for s in all {
            by_dim[s.len() - 1].push(s);
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        let index = by_dim
            .iter()
            .flat_map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        Self {
            vertex_count,
            by_dim,
            index,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Dimension of the complex; `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// The `k`-simplices in lexicographic order.
    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.index.contains_key(s)
    }

    /// Position of `s` among the simplices of its dimension.
    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.by_dim.iter().map(Vec::len).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector().euler_characteristic()
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let covered: BTreeSet<Simplex> = self
            .by_dim
            .iter()
            .skip(1)
            .flatten()
            .flat_map(|s| (0..s.len()).map(move |i| facet(s, i)))
            .collect();
        self.all_simplices()
            .filter(|s| !covered.contains(*s))
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let Some(d) = self.dimension() else {
            return true;
        };
        self.maximal_simplices().iter().all(|s| s.len() == d + 1)
    }

    /// The subcomplex of simplices of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> Self {
        let all: BTreeSet<Simplex> = self.by_dim.iter().take(k + 1).flatten().cloned().collect();
        Self::from_closed_set(self.vertex_count, all)
    }

    /// Simplices of dimension `dim + 1` having `s` as a facet.
    pub fn cofacets(&self, s: &[usize]) -> Vec<Simplex> {
        self.simplices(s.len())
            .iter()
            .filter(|t| is_face(s, t))
            .cloned()
            .collect()
    }
}

/// `s` with the vertex at position `omit` removed.
pub fn facet(s: &[usize], omit: usize) -> Simplex {
    s.iter()
        .enumerate()
        .filter(|&(i, _)| i != omit)
        .map(|(_, &v)| v)
        .collect()
}

/// Whether sorted `small` is a subset of sorted `big`.
pub fn is_face(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

/// All nonempty subsets of a sorted simplex, each sorted.
pub fn nonempty_subsets(s: &[usize]) -> impl Iterator<Item = Simplex> + '_ {
    (1u64..(1u64 << s.len())).map(move |mask| {
        s.iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_boundary_closure() {
        let c = SimplicialComplex::build(&[
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ])
        .unwrap();
        assert_eq!(c.f_vector(), FVector(vec![4, 6, 4]));
        assert_eq!(c.euler_characteristic(), 2);
        assert_eq!(c.maximal_simplices().len(), 4);
    }

    #[test]
    fn single_point() {
        let c = SimplicialComplex::build(&[vec![0]]).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![1]));
        assert_eq!(c.dimension(), Some(0));
    }

    #[test]
    fn octahedron_counts() {
        let mut tri = Vec::new();
        for i in 0..4 {
            let j = (i + 1) % 4;
            tri.push(vec![4, i, j]);
            tri.push(vec![5, i, j]);
        }
        let c = SimplicialComplex::build(&tri).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![6, 12, 8]));
    }

    #[test]
    fn rejects_repeated_vertex() {
        let err = SimplicialComplex::build(&[vec![0, 1, 1]]).unwrap_err();
        assert!(matches!(err, Error::DuplicateVertex(_)));
    }

    #[test]
    fn rejects_out_of_range() {
        let err = SimplicialComplex::from_maximal(2, &[vec![0, 2]]).unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { vertex: 2, .. }));
    }

    #[test]
    fn unsorted_input_is_normalized() {
        let c = SimplicialComplex::build(&[vec![2, 0, 1]]).unwrap();
        assert!(c.contains(&[0, 1, 2]));
        assert!(c.contains(&[0, 2]));
    }

    #[test]
    fn skeleton_and_cofacets() {
        let c = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        let sk = c.skeleton(1);
        assert_eq!(sk.f_vector(), FVector(vec![4, 6]));
        assert_eq!(c.cofacets(&[0, 1]).len(), 2);
        assert!(c.is_pure());
        assert_eq!(c.maximal_simplices(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let c = SimplicialComplex::from_maximal(3, &[vec![0, 1]]).unwrap();
        assert_eq!(c.f_vector(), FVector(vec![3, 1]));
        assert!(!c.is_pure());
    }
}
