//! Sphere enumeration checked against an independent search: closing up a
//! surface edge by edge from a seed triangle, with isomorphism classes
//! decided by brute force over degree-preserving relabelings.

use std::collections::{BTreeMap, BTreeSet};

use fiberforge::complex::{canonical_sphere_code, enumerate_spheres, is_sphere, SimplicialComplex};

type Tri = [usize; 3];

fn sorted(mut t: Tri) -> Tri {
    t.sort_unstable();
    t
}

fn edge_degrees(tris: &[Tri]) -> BTreeMap<(usize, usize), usize> {
    let mut d = BTreeMap::new();
    for t in tris {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])] {
            *d.entry((a, b)).or_insert(0) += 1;
        }
    }
    d
}

/// All labeled closed surfaces on exactly `v` vertices containing the
/// triangle {0,1,2}, where new vertices enter in increasing order.
fn search(v: usize, tris: &mut Vec<Tri>, used: usize, out: &mut Vec<Vec<Tri>>) {
    let degrees = edge_degrees(tris);
    let open = degrees.iter().find(|(_, &d)| d == 1).map(|(&e, _)| e);
    let Some((a, b)) = open else {
        if used == v {
            out.push(tris.clone());
        }
        return;
    };
    if tris.len() >= 2 * v - 4 {
        return;
    }
    for w in 0..(used + 1).min(v) {
        if w == a || w == b {
            continue;
        }
        let t = sorted([a, b, w]);
        if tris.contains(&t) {
            continue;
        }
        let ok = [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
            .iter()
            .all(|e| degrees.get(e).copied().unwrap_or(0) < 2);
        if !ok {
            continue;
        }
        tris.push(t);
        search(v, tris, used.max(w + 1), out);
        tris.pop();
    }
}

/// Least sorted triangle list over all relabelings that keep vertices
/// ordered by degree.
fn brute_canonical(tris: &[Tri], v: usize) -> Vec<Tri> {
    let mut degree = vec![0usize; v];
    for &(a, b) in edge_degrees(tris).keys() {
        degree[a] += 1;
        degree[b] += 1;
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..v {
        classes.entry(degree[x]).or_default().push(x);
    }
    let classes: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best: Option<Vec<Tri>> = None;
    let mut label = vec![0usize; v];
    fn go(
        classes: &[Vec<usize>],
        k: usize,
        next: usize,
        label: &mut Vec<usize>,
        tris: &[Tri],
        best: &mut Option<Vec<Tri>>,
    ) {
        if k == classes.len() {
            let mut code: Vec<Tri> = tris
                .iter()
                .map(|t| sorted([label[t[0]], label[t[1]], label[t[2]]]))
                .collect();
            code.sort_unstable();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let mut class = classes[k].clone();
        permute(&mut class, 0, &mut |perm| {
            for (i, &x) in perm.iter().enumerate() {
                label[x] = next + i;
            }
            go(classes, k + 1, next + perm.len(), label, tris, best);
        });
    }
    go(&classes, 0, 0, &mut label, tris, &mut best);
    best.unwrap()
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

fn oracle_classes(v: usize) -> BTreeSet<Vec<Tri>> {
    let mut found = Vec::new();
    search(v, &mut vec![[0, 1, 2]], 3, &mut found);
    found
        .into_iter()
        .filter(|tris| {
            let maximal: Vec<Vec<usize>> = tris.iter().map(|t| t.to_vec()).collect();
            is_sphere_oracle(tris, v) && SimplicialComplex::build(&maximal).is_ok()
        })
        .map(|tris| brute_canonical(&tris, v))
        .collect()
}

/// Every vertex link a single cycle and Euler characteristic 2.
fn is_sphere_oracle(tris: &[Tri], v: usize) -> bool {
    let edges = edge_degrees(tris);
    if edges.values().any(|&d| d != 2) {
        return false;
    }
    if v as i64 - edges.len() as i64 + tris.len() as i64 != 2 {
        return false;
    }
    (0..v).all(|x| {
        let link: Vec<(usize, usize)> = tris
            .iter()
            .filter(|t| t.contains(&x))
            .map(|t| {
                let o: Vec<usize> = t.iter().copied().filter(|&y| y != x).collect();
                (o[0], o[1])
            })
            .collect();
        if link.is_empty() {
            return false;
        }
        let (mut prev, mut cur) = (link[0].0, link[0].1);
        let mut steps = 1;
        while cur != link[0].0 {
            let Some(&(p, q)) = link.iter().find(|&&(p, q)| (p == cur && q != prev) || (q == cur && p != prev)) else {
                return false;
            };
            let nxt = if p == cur { q } else { p };
            prev = cur;
            cur = nxt;
            steps += 1;
            if steps > link.len() {
                return false;
            }
        }
        steps == link.len()
    })
}

fn library_classes(v: usize) -> BTreeSet<Vec<Tri>> {
    enumerate_spheres(v)
        .unwrap()
        .into_iter()
        .filter(|c| c.vertex_count() == v)
        .map(|c| {
            let tris: Vec<Tri> = c.simplices(2).iter().map(|t| [t[0], t[1], t[2]]).collect();
            brute_canonical(&tris, v)
        })
        .collect()
}

#[test]
fn class_counts_match_the_oracle() {
    let expected = [(4, 1), (5, 1), (6, 2), (7, 5), (8, 14)];
    for (v, count) in expected {
        let oracle = oracle_classes(v);
        assert_eq!(oracle.len(), count, "oracle count for v={v}");
        assert_eq!(library_classes(v), oracle, "classes for v={v}");
    }
    assert_eq!(enumerate_spheres(8).unwrap().len(), 23);
}

#[test]
fn enumerated_spheres_are_distinct_spheres() {
    let spheres = enumerate_spheres(8).unwrap();
    let mut codes = BTreeSet::new();
    for s in &spheres {
        assert!(is_sphere(s));
        assert_eq!(s.simplices(2).len(), 2 * s.vertex_count() - 4);
        assert!(codes.insert(canonical_sphere_code(s).unwrap()));
    }
    let counts: Vec<usize> = spheres.iter().map(|s| s.vertex_count()).collect();
    let mut sorted_counts = counts.clone();
    sorted_counts.sort_unstable();
    assert_eq!(counts, sorted_counts, "ordered by vertex count");
    assert_eq!(enumerate_spheres(8).unwrap(), spheres, "deterministic output");
}

#[test]
fn canonical_code_agrees_with_brute_force_isomorphism() {
    let spheres = enumerate_spheres(7).unwrap();
    for s in &spheres {
        let v = s.vertex_count();
        // Reverse the labels: same class, same code.
        let tris: Vec<Vec<usize>> = s
            .simplices(2)
            .iter()
            .map(|t| t.iter().map(|x| v - 1 - x).collect())
            .collect();
        let relabeled = SimplicialComplex::build(&tris).unwrap();
        assert_eq!(
            canonical_sphere_code(&relabeled).unwrap(),
            canonical_sphere_code(s).unwrap()
        );
    }
}
