//! The total space of a necklace bundle as an explicit simplicial complex.
//!
//! Over a `k`-simplex with necklace `N`, a cursor sits on one bead of every
//! color. Walking once around `N`, each bead `b` advances the cursor of its
//! color from `b` to its successor in the vertex necklace; the cursor
//! positions before and after the step span one `(k+1)`-simplex of the
//! total space. Vertices of the total space are the beads over base vertices.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::bundle::NecklaceBundle;
use crate::complex::{
    facet, is_sphere, orient_pseudomanifold, verify_closed_oriented_surface, vertex_link, FVector,
    SimplicialComplex, Simplex,
};
use crate::error::{Error, Result};

/// One simplex produced by the cursor walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    /// Vertices in the total space, sorted.
    pub simplex: Simplex,
    pub base: Simplex,
    /// The bead whose step produced the simplex.
    pub bead: usize,
}

#[derive(Debug, Clone)]
pub struct TotalSpace {
    pub complex: SimplicialComplex,
    /// Base vertex under each vertex of the total space.
    pub projection: Vec<usize>,
    /// Bead id behind each vertex of the total space.
    pub bead_ids: Vec<usize>,
    /// Simplices produced over each base simplex, top ones included.
    pub generated: Vec<Generated>,
}

impl TotalSpace {
    pub fn f_vector(&self) -> FVector {
        self.complex.f_vector()
    }

    /// Top-dimensional simplices, one per line, vertices separated by spaces.
    pub fn to_facet_lines(&self) -> String {
        let mut out = String::new();
        for s in self.complex.maximal_simplices() {
            let words: Vec<String> = s.iter().map(usize::to_string).collect();
            out.push_str(&words.join(" "));
            out.push('\n');
        }
        out
    }

    /// Simplices generated over `base`, in necklace order.
    pub fn over(&self, base: &[usize]) -> impl Iterator<Item = &Generated> {
        let base = base.to_vec();
        self.generated.iter().filter(move |g| g.base == base)
    }
}

/// Builds the total space, failing if some simplex would repeat a vertex
/// or a transversal section of the cursor walk would repeat.
pub fn reconstruct(bundle: &NecklaceBundle) -> Result<TotalSpace> {
    if let Some(v) = bundle.verify_consistency().first() {
        return Err(Error::InconsistentBundle(v.to_string()));
    }
    let base = bundle.base();
    let mut bead_ids = Vec::new();
    let mut projection = Vec::new();
    let mut succ: HashMap<usize, usize> = HashMap::new();
    for v in base.simplices(0) {
        let beads = bundle.necklace(v)?.necklace().beads();
        for (i, b) in beads.iter().enumerate() {
            bead_ids.push(b.id);
            projection.push(v[0]);
            succ.insert(b.id, beads[(i + 1) % beads.len()].id);
        }
    }
    let mut order: Vec<usize> = (0..bead_ids.len()).collect();
    order.sort_by_key(|&i| bead_ids[i]);
    let bead_ids: Vec<usize> = order.iter().map(|&i| bead_ids[i]).collect();
    let projection: Vec<usize> = order.iter().map(|&i| projection[i]).collect();
    let vertex_of: HashMap<usize, usize> = bead_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut generated = Vec::new();
    for s in base.all_simplices() {
        let necklace = bundle.necklace(s)?.necklace();
        let beads = necklace.beads();
        let n = beads.len();
        let non_classical = |reason: String| Error::NonClassical {
            simplex: s.clone(),
            reason,
        };
        // last[p][j]: the most recent bead of color s[j] strictly before p.
        let mut last = vec![vec![usize::MAX; s.len()]; n];
        let mut current = vec![usize::MAX; s.len()];
        for step in 0..2 * n {
            let p = step % n;
            if step >= n {
                last[p] = current.clone();
            }
            let j = s.binary_search(&beads[p].color).expect("color in carrier");
            current[j] = beads[p].id;
        }
        let mut states = HashSet::new();
        let mut seen = HashSet::new();
        for (p, b) in beads.iter().enumerate() {
            let state: BTreeSet<usize> = last[p].iter().map(|id| vertex_of[&succ[id]]).collect();
            if !states.insert(state.clone()) {
                return Err(non_classical(format!(
                    "transversal section repeats at bead {}",
                    b.id
                )));
            }
            let mut simplex = state;
            if !simplex.insert(vertex_of[&succ[&b.id]]) {
                return Err(non_classical(format!("bead {} steps onto itself", b.id)));
            }
            let simplex: Simplex = simplex.into_iter().collect();
            if !seen.insert(simplex.clone()) {
                return Err(non_classical(format!("simplex {simplex:?} is produced twice")));
            }
            generated.push(Generated {
                simplex,
                base: s.clone(),
                bead: b.id,
            });
        }
    }
    let tops: Vec<Simplex> = generated.iter().map(|g| g.simplex.clone()).collect();
    let complex = SimplicialComplex::from_maximal(bead_ids.len(), &tops)?;
    Ok(TotalSpace {
        complex,
        projection,
        bead_ids,
        generated,
    })
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulationReport {
    pub checks: Vec<Check>,
}

impl TriangulationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures.is_empty())
    }
}

impl fmt::Display for TriangulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.failures.is_empty() { "ok" } else { "FAILED" };
            writeln!(f, "{}: {status}", c.name)?;
            for msg in c.failures.iter().take(5) {
                writeln!(f, "  {msg}")?;
            }
        }
        Ok(())
    }
}

/// Checks that `space` triangulates the bundle described by `bundle`:
/// simplicial projection, circle fibers over vertices, face-consistency of
/// the generated simplices, necklaces recovered from the complex alone,
/// and (over a closed surface) that the result is a closed orientable 3-manifold.
pub fn verify_bundle_triangulation(space: &TotalSpace, bundle: &NecklaceBundle) -> TriangulationReport {
    let checks = vec![
        Check {
            name: "projection is simplicial",
            failures: check_projection(space, bundle),
        },
        Check {
            name: "fibers over vertices are circles",
            failures: check_fibers(space, bundle),
        },
        Check {
            name: "face-consistency",
            failures: check_face_consistency(space, bundle),
        },
        Check {
            name: "necklaces round-trip",
            failures: check_round_trip(space, bundle),
        },
        Check {
            name: "closed orientable manifold",
            failures: check_manifold(space, bundle),
        },
    ];
    TriangulationReport { checks }
}

fn project(space: &TotalSpace, s: &[usize]) -> Simplex {
    let set: BTreeSet<usize> = s.iter().map(|&v| space.projection[v]).collect();
    set.into_iter().collect()
}

fn check_projection(space: &TotalSpace, bundle: &NecklaceBundle) -> Vec<String> {
    space
        .complex
        .all_simplices()
        .filter(|s| !bundle.base().contains(&project(space, s)))
        .map(|s| format!("{s:?} projects onto a non-simplex"))
        .collect()
}

fn check_fibers(space: &TotalSpace, bundle: &NecklaceBundle) -> Vec<String> {
    let mut out = Vec::new();
    for v in bundle.base().simplices(0) {
        let fiber: BTreeSet<usize> = (0..space.projection.len())
            .filter(|&i| space.projection[i] == v[0])
            .collect();
        let expected = bundle.necklaces()[v].necklace().len();
        if fiber.len() != expected {
            out.push(format!("fiber over {} has {} vertices, expected {expected}", v[0], fiber.len()));
            continue;
        }
        let mut degree: BTreeMap<usize, usize> = fiber.iter().map(|&x| (x, 0)).collect();
        let edges: Vec<&Simplex> = space
            .complex
            .simplices(1)
            .iter()
            .filter(|e| fiber.contains(&e[0]) && fiber.contains(&e[1]))
            .collect();
        for e in &edges {
            *degree.get_mut(&e[0]).expect("fiber vertex") += 1;
            *degree.get_mut(&e[1]).expect("fiber vertex") += 1;
        }
        let connected = {
            let mut reach = BTreeSet::from([*fiber.first().expect("nonempty fiber")]);
            let mut grew = true;
            while grew {
                grew = false;
                for e in &edges {
                    if reach.contains(&e[0]) != reach.contains(&e[1]) {
                        reach.insert(e[0]);
                        reach.insert(e[1]);
                        grew = true;
                    }
                }
            }
            reach.len() == fiber.len()
        };
        if edges.len() != fiber.len() || degree.values().any(|&d| d != 2) || !connected {
            out.push(format!("fiber over {} is not a cycle", v[0]));
        }
    }
    out
}

fn check_face_consistency(space: &TotalSpace, bundle: &NecklaceBundle) -> Vec<String> {
    let mut by_base: HashMap<&Simplex, BTreeSet<&Simplex>> = HashMap::new();
    for g in &space.generated {
        by_base.entry(&g.base).or_default().insert(&g.simplex);
    }
    let mut out = Vec::new();
    for s in bundle.base().all_simplices().filter(|s| s.len() >= 2) {
        for i in 0..s.len() {
            let face = facet(s, i);
            let from_above: BTreeSet<Simplex> = by_base
                .get(s)
                .into_iter()
                .flatten()
                .flat_map(|t| (0..t.len()).map(move |k| facet(t, k)))
                .filter(|t| project(space, t) == face)
                .collect();
            let own: BTreeSet<Simplex> = by_base
                .get(&face)
                .into_iter()
                .flatten()
                .map(|&t| t.clone())
                .collect();
            if from_above != own {
                out.push(format!("simplices over {face:?} disagree with faces of those over {s:?}"));
            }
        }
    }
    out
}

/// Recovers each necklace from the complex: over `s`, the simplices with
/// projection `s` chain into a cycle, each one exiting through the
/// transversal section the next one enters by.
pub fn extract_necklace(space: &TotalSpace, bundle: &NecklaceBundle, s: &[usize]) -> Option<Vec<usize>> {
    let succ: HashMap<usize, usize> = bundle
        .base()
        .simplices(0)
        .iter()
        .flat_map(|v| {
            let beads = bundle.necklaces()[v].necklace().beads();
            (0..beads.len()).map(move |i| (beads[i].id, beads[(i + 1) % beads.len()].id))
        })
        .collect();
    let vertex_of: HashMap<usize, usize> =
        space.bead_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut entries: HashMap<Simplex, (Simplex, usize)> = HashMap::new();
    let over: Vec<&Simplex> = space
        .complex
        .simplices(s.len())
        .iter()
        .filter(|t| project(space, t) == s)
        .collect();
    for t in &over {
        let doubled = s.iter().find(|&&c| t.iter().filter(|&&x| space.projection[x] == c).count() == 2)?;
        let pair: Vec<usize> = t.iter().copied().filter(|&x| space.projection[x] == *doubled).collect();
        let (x, y) = if vertex_of[&succ[&space.bead_ids[pair[0]]]] == pair[1] {
            (pair[0], pair[1])
        } else {
            (pair[1], pair[0])
        };
        let entry: Simplex = t.iter().copied().filter(|&z| z != y).collect();
        let exit: Simplex = t.iter().copied().filter(|&z| z != x).collect();
        if entries.insert(entry, (exit, space.bead_ids[x])).is_some() {
            return None;
        }
    }
    let start = entries.keys().min()?.clone();
    let mut cycle = Vec::with_capacity(over.len());
    let mut state = start.clone();
    loop {
        let (exit, bead) = entries.get(&state)?;
        cycle.push(*bead);
        state = exit.clone();
        if state == start || cycle.len() > over.len() {
            break;
        }
    }
    (cycle.len() == over.len()).then_some(cycle)
}

fn check_round_trip(space: &TotalSpace, bundle: &NecklaceBundle) -> Vec<String> {
    let mut out = Vec::new();
    for (s, framed) in bundle.necklaces() {
        let ids: Vec<usize> = framed.necklace().beads().iter().map(|b| b.id).collect();
        let ok = extract_necklace(space, bundle, s).is_some_and(|cycle| cyclic_eq(&cycle, &ids));
        if !ok {
            out.push(format!("necklace over {s:?} is not recovered"));
        }
    }
    out
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(first) = a.first() else {
        return true;
    };
    b.iter()
        .position(|x| x == first)
        .is_some_and(|k| (0..a.len()).all(|i| a[i] == b[(i + k) % b.len()]))
}

fn check_manifold(space: &TotalSpace, bundle: &NecklaceBundle) -> Vec<String> {
    if verify_closed_oriented_surface(bundle.base()).is_err() {
        return Vec::new();
    }
    let e = &space.complex;
    let mut out = Vec::new();
    if e.dimension() != Some(3) || !e.is_pure() {
        out.push("total space is not a pure 3-complex".into());
        return out;
    }
    if let Err(err) = orient_pseudomanifold(e, 3) {
        out.push(format!("not an orientable pseudomanifold: {err:?}"));
    }
    for v in 0..e.vertex_count() {
        let triangles: Vec<Simplex> = vertex_link(e, v).into_iter().filter(|s| s.len() == 3).collect();
        let labels: BTreeMap<usize, usize> = triangles
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, x)| (x, i))
            .collect();
        let relabeled: Vec<Simplex> = triangles
            .iter()
            .map(|t| t.iter().map(|x| labels[x]).collect())
            .collect();
        let sphere = SimplicialComplex::build(&relabeled).is_ok_and(|l| is_sphere(&l));
        if !sphere {
            out.push(format!("link of vertex {v} is not a 2-sphere"));
        }
    }
    if e.euler_characteristic() != 0 {
        out.push(format!("Euler characteristic {} is not 0", e.euler_characteristic()));
    }
    out
}
