//! Triangulated 2-spheres: recognition, canonical codes and enumeration by
//! vertex splitting from the tetrahedron boundary.

use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{verify_closed_oriented_surface, SimplicialComplex, SurfaceOrientation};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`enumerate_spheres`].
pub const MAX_ENUMERATION_VERTICES: usize = 8;

/// Pure 2-complex, every edge in two triangles, cyclic vertex links,
/// connected and Euler characteristic 2.
pub fn is_sphere(complex: &SimplicialComplex) -> bool {
    match verify_closed_oriented_surface(complex) {
        Ok(o) => o.components() == 1 && complex.euler_characteristic() == 2,
        Err(_) => false,
    }
}

/// Rotation system: `next[v][x]` is the neighbour following `x` around `v`.
fn rotation(complex: &SimplicialComplex, orientation: &SurfaceOrientation) -> Vec<HashMap<usize, usize>> {
    let mut next = vec![HashMap::new(); complex.vertex_count()];
    for t in complex.simplices(2) {
        let [a, b, c] = orientation.oriented(t).expect("triangle of the surface");
        next[a].insert(b, c);
        next[b].insert(c, a);
        next[c].insert(a, b);
    }
    next
}

/// Sorted triangle list under the breadth-first relabeling started at the
/// flag (`root`, `first`, `forward`).
fn flag_code(
    next: &[HashMap<usize, usize>],
    prev: &[HashMap<usize, usize>],
    triangles: &[Vec<usize>],
    root: usize,
    first: usize,
    forward: bool,
) -> Vec<[u8; 3]> {
    let n = next.len();
    let mut label = vec![usize::MAX; n];
    label[root] = 0;
    let mut fresh = 1;
    let mut queue = VecDeque::from([(root, first)]);
    while let Some((x, reference)) = queue.pop_front() {
        let step = if forward { &next[x] } else { &prev[x] };
        let mut y = reference;
        for _ in 0..step.len() {
            if label[y] == usize::MAX {
                label[y] = fresh;
                fresh += 1;
                queue.push_back((y, x));
            }
            y = step[&y];
        }
    }
    let mut code: Vec<[u8; 3]> = triangles
        .iter()
        .map(|t| {
            let mut r = [label[t[0]] as u8, label[t[1]] as u8, label[t[2]] as u8];
            r.sort_unstable();
            r
        })
        .collect();
    code.sort_unstable();
    code
}

/// Canonical form of a triangulated sphere: the least relabeled triangle
/// list over all flag-rooted breadth-first labelings. Two spheres are
/// isomorphic iff their codes are equal.
pub fn canonical_sphere_code(complex: &SimplicialComplex) -> Result<Vec<[u8; 3]>> {
    if !is_sphere(complex) {
        return Err(Error::NotASphere("failed sphere checks".into()));
    }
    let orientation = verify_closed_oriented_surface(complex)?;
    let next = rotation(complex, &orientation);
    let prev: Vec<HashMap<usize, usize>> = next
        .iter()
        .map(|m| m.iter().map(|(&a, &b)| (b, a)).collect())
        .collect();
    let triangles = complex.simplices(2);
    // Roots restricted to maximum-degree vertices: still an isomorphism-invariant flag set.
    let max_deg = next.iter().map(HashMap::len).max().unwrap_or(0);
    let mut best: Option<Vec<[u8; 3]>> = None;
    for root in (0..next.len()).filter(|&v| next[v].len() == max_deg) {
        for &first in next[root].keys() {
            for forward in [true, false] {
                let code = flag_code(&next, &prev, triangles, root, first, forward);
                if best.as_ref().map_or(true, |b| code < *b) {
                    best = Some(code);
                }
            }
        }
    }
    Ok(best.unwrap_or_default())
}

fn from_code(code: &[[u8; 3]]) -> SimplicialComplex {
    let tris: Vec<Vec<usize>> = code
        .iter()
        .map(|t| t.iter().map(|&v| v as usize).collect())
        .collect();
    SimplicialComplex::build(&tris).expect("valid code")
}

/// All splits of one vertex into an adjacent pair.
fn vertex_splits(sphere: &SimplicialComplex) -> Vec<SimplicialComplex> {
    let orientation = verify_closed_oriented_surface(sphere).expect("sphere");
    let next = rotation(sphere, &orientation);
    let fresh = sphere.vertex_count();
    let mut out = Vec::new();
    for x in 0..fresh {
        let start = *next[x].keys().min().expect("vertex has neighbours");
        let mut link = vec![start];
        while link.len() < next[x].len() {
            link.push(next[x][link.last().expect("nonempty")]);
        }
        let d = link.len();
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                // Triangles on the arc from link[j] around to link[i] move to the new vertex.
                let mut moved = Vec::new();
                let mut t = j;
                while t != i {
                    moved.push((link[t], link[(t + 1) % d]));
                    t = (t + 1) % d;
                }
                let mut tris: Vec<Vec<usize>> = sphere
                    .simplices(2)
                    .iter()
                    .filter(|tri| {
                        !(tri.contains(&x)
                            && moved.iter().any(|&(p, q)| tri.contains(&p) && tri.contains(&q)))
                    })
                    .cloned()
                    .collect();
                tris.extend(moved.iter().map(|&(p, q)| vec![fresh, p, q]));
                tris.push(vec![x, fresh, link[i]]);
                tris.push(vec![x, fresh, link[j]]);
                if let Ok(c) = SimplicialComplex::build(&tris) {
                    if is_sphere(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    out
}

/// One representative per isomorphism class of triangulated 2-spheres with
/// at most `max_vertices` vertices, ordered by vertex count and then by
/// canonical code. Representatives are given in their canonical labeling.
pub fn enumerate_spheres(max_vertices: usize) -> Result<Vec<SimplicialComplex>> {
    if max_vertices > MAX_ENUMERATION_VERTICES {
        return Err(Error::EnumerationLimit {
            requested: max_vertices,
            limit: MAX_ENUMERATION_VERTICES,
        });
    }
    if max_vertices < 4 {
        return Ok(Vec::new());
    }
    let tetra = SimplicialComplex::build(&[
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![1, 2, 3],
    ])?;
    let mut layer: BTreeMap<Vec<[u8; 3]>, SimplicialComplex> = BTreeMap::new();
    let code = canonical_sphere_code(&tetra)?;
    layer.insert(code.clone(), from_code(&code));
    let mut result: Vec<SimplicialComplex> = layer.values().cloned().collect();
    for _ in 5..=max_vertices {
        let mut grown = BTreeMap::new();
        for sphere in layer.values() {
            for split in vertex_splits(sphere) {
                let code = canonical_sphere_code(&split)?;
                grown.entry(code).or_insert_with_key(|c| from_code(c));
            }
        }
        result.extend(grown.values().cloned());
        layer = grown;
    }
    Ok(result)
}
