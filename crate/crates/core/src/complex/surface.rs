use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{facet, is_face, SimplicialComplex, Simplex};
use crate::error::SurfaceError;

/// A consistent orientation of a closed surface, one sign per triangle
/// relative to its sorted vertex tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceOrientation {
    triangles: Vec<Simplex>,
    signs: Vec<i8>,
    index: HashMap<Simplex, usize>,
    components: usize,
}

impl SurfaceOrientation {
    /// Triangles in canonical (lexicographic) order.
    pub fn triangles(&self) -> &[Simplex] {
        &self.triangles
    }

    /// `+1` if the sorted tuple is positively oriented, `-1` otherwise.
    pub fn sign(&self, triangle: &[usize]) -> Option<i8> {
        self.index.get(triangle).map(|&i| self.signs[i])
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Vertices of `triangle` listed along its orientation.
    pub fn oriented(&self, triangle: &[usize]) -> Option<[usize; 3]> {
        let s = self.sign(triangle)?;
        let (a, b, c) = (triangle[0], triangle[1], triangle[2]);
        Some(if s > 0 { [a, b, c] } else { [a, c, b] })
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// The same surface with every triangle reversed.
    pub fn reversed(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
            ..self.clone()
        }
    }
}

/// Checks that `complex` is a closed orientable surface and returns its
/// canonical orientation: in each component the least triangle keeps its
/// sorted order, and signs propagate breadth-first across edges.
pub fn verify_closed_oriented_surface(
    complex: &SimplicialComplex,
) -> Result<SurfaceOrientation, SurfaceError> {
    if complex.dimension() != Some(2) || !complex.is_pure() {
        return Err(SurfaceError::NotPure);
    }
    let tris = complex.simplices(2);
    let mut edge_degree: BTreeMap<&[usize], usize> =
        complex.simplices(1).iter().map(|e| (e.as_slice(), 0)).collect();
    for t in tris {
        for i in 0..3 {
            let e = facet(t, i);
            *edge_degree.get_mut(e.as_slice()).expect("closed complex") += 1;
        }
    }
    for (e, &d) in &edge_degree {
        match d {
            2 => {}
            1 => return Err(SurfaceError::BoundaryEdge(e.to_vec())),
            _ => return Err(SurfaceError::NonManifoldEdge(e.to_vec(), d)),
        }
    }
    for v in 0..complex.vertex_count() {
        if !link_is_cycle(complex, v) {
            return Err(SurfaceError::NonManifoldVertex(v));
        }
    }
    let (signs, components) =
        orient_pseudomanifold(complex, 2).map_err(|_| SurfaceError::NonOrientable)?;
    let triangles = tris.to_vec();
    let index = triangles
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    Ok(SurfaceOrientation {
        triangles,
        signs,
        index,
        components,
    })
}

/// Why a pure complex could not be oriented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PseudomanifoldError {
    /// A ridge with a facet count other than two.
    RidgeDegree(Simplex, usize),
    NonOrientable,
}

/// Orients the `dim`-simplices of a pseudomanifold. Returns one sign per
/// `dim`-simplex (in canonical order) and the number of dual-graph components.
pub fn orient_pseudomanifold(
    complex: &SimplicialComplex,
    dim: usize,
) -> Result<(Vec<i8>, usize), PseudomanifoldError> {
    let facets = complex.simplices(dim);
    let mut ridges: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
    for (fi, s) in facets.iter().enumerate() {
        for pos in 0..s.len() {
            ridges.entry(facet(s, pos)).or_default().push((fi, pos));
        }
    }
    for r in complex.simplices(dim.saturating_sub(1)) {
        let d = ridges.get(r).map_or(0, Vec::len);
        if d != 2 {
            return Err(PseudomanifoldError::RidgeDegree(r.clone(), d));
        }
    }
    let parity = |pos: usize| if pos % 2 == 0 { 1i8 } else { -1 };
    let mut signs = vec![0i8; facets.len()];
    let mut components = 0;
    for seed in 0..facets.len() {
        if signs[seed] != 0 {
            continue;
        }
        components += 1;
        signs[seed] = 1;
        let mut queue = VecDeque::from([seed]);
        while let Some(fi) = queue.pop_front() {
            let s = &facets[fi];
            for pos in 0..s.len() {
                let inc = &ridges[&facet(s, pos)];
                let &(other, other_pos) = inc.iter().find(|&&(f, _)| f != fi).expect("degree 2");
                let want = -signs[fi] * parity(pos) * parity(other_pos);
                if signs[other] == 0 {
                    signs[other] = want;
                    queue.push_back(other);
                } else if signs[other] != want {
                    return Err(PseudomanifoldError::NonOrientable);
                }
            }
        }
    }
    Ok((signs, components))
}

/// The link of vertex `v` as a list of simplices (sorted, without `v`).
pub fn vertex_link(complex: &SimplicialComplex, v: usize) -> Vec<Simplex> {
    let Some(top) = complex.dimension() else {
        return Vec::new();
    };
    (1..=top)
        .flat_map(|k| complex.simplices(k).iter())
        .filter(|s| is_face(&[v], s))
        .map(|s| s.iter().copied().filter(|&w| w != v).collect())
        .collect()
}

fn link_is_cycle(complex: &SimplicialComplex, v: usize) -> bool {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in complex.simplices(2).iter().filter(|t| t.contains(&v)) {
        let e: Vec<usize> = t.iter().copied().filter(|&w| w != v).collect();
        adj.entry(e[0]).or_default().push(e[1]);
        adj.entry(e[1]).or_default().push(e[0]);
    }
    if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().expect("nonempty");
    let (mut prev, mut cur, mut steps) = (start, adj[&start][0], 1);
    while cur != start {
        let next = adj[&cur].iter().copied().find(|&w| w != prev).unwrap_or(prev);
        prev = cur;
        cur = next;
        steps += 1;
        if steps > adj.len() {
            return false;
        }
    }
    steps == adj.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{generate, Preset};
    use crate::tests_support::rp2;

    fn check_edges_opposite(c: &SimplicialComplex, o: &SurfaceOrientation) {
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for t in c.simplices(2) {
            let [a, b, d] = o.oriented(t).unwrap();
            for (x, y) in [(a, b), (b, d), (d, a)] {
                *seen.entry((x, y)).or_default() += 1;
            }
        }
        for (&(x, y), &n) in &seen {
            assert_eq!(n, 1, "directed edge {x}->{y} used twice");
            assert_eq!(seen.get(&(y, x)), Some(&1));
        }
    }

    #[test]
    fn octahedron_and_icosahedron_orient() {
        for p in [Preset::Octahedron, Preset::Icosahedron, Preset::TetrahedronBoundary] {
            let c = generate(p, None).unwrap();
            let o = verify_closed_oriented_surface(&c).unwrap();
            assert_eq!(o.components(), 1);
            assert_eq!(o.signs()[0], 1);
            check_edges_opposite(&c, &o);
        }
    }

    #[test]
    fn mobius_band_rejected() {
        let c = SimplicialComplex::build(&[
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![3, 4, 0],
            vec![4, 0, 1],
        ])
        .unwrap();
        let err = verify_closed_oriented_surface(&c).unwrap_err();
        assert!(matches!(err, SurfaceError::BoundaryEdge(_)));
    }

    #[test]
    fn projective_plane_is_not_orientable() {
        let c = SimplicialComplex::build(&rp2()).unwrap();
        assert_eq!(
            verify_closed_oriented_surface(&c).unwrap_err(),
            SurfaceError::NonOrientable
        );
    }

    #[test]
    fn pinched_vertex_rejected() {
        // Two tetrahedron boundaries glued at vertex 0.
        let mut tris = Vec::new();
        for base in [1usize, 4] {
            let q = [0, base, base + 1, base + 2];
            for i in 0..4 {
                tris.push(facet(&q, i));
            }
        }
        let c = SimplicialComplex::build(&tris).unwrap();
        assert_eq!(
            verify_closed_oriented_surface(&c).unwrap_err(),
            SurfaceError::NonManifoldVertex(0)
        );
    }

    #[test]
    fn solid_tetrahedron_is_not_a_surface() {
        let c = SimplicialComplex::build(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            verify_closed_oriented_surface(&c).unwrap_err(),
            SurfaceError::NotPure
        );
    }

    #[test]
    fn rp2_fixture_is_closed_surface() {
        let c = SimplicialComplex::build(&rp2()).unwrap();
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.f_vector().0, vec![6, 15, 10]);
    }

    #[test]
    fn vertex_link_of_octahedron_pole() {
        let c = generate(Preset::Octahedron, None).unwrap();
        let link = vertex_link(&c, 4);
        assert_eq!(link.iter().filter(|s| s.len() == 2).count(), 4);
        assert_eq!(link.iter().filter(|s| s.len() == 1).count(), 4);
    }
}
