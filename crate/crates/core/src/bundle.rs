//! Necklace bundles: one framed necklace per simplex of the base, closed
//! under restriction. Builders for prescribed Euler numbers, the trivial
//! bundle, and extension over higher skeleta.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;

use crate::chain::{
    choose_target_cochain, coboundary, f_of_da, g_of_a, solve_orientation_for_target, Cochain,
    Quarter,
};
use crate::complex::{facet, verify_closed_oriented_surface, SimplicialComplex, Simplex};
use crate::error::{Error, Result};
use crate::homology::h2_has_two_torsion;
use crate::lcf::lcf_value;
use crate::necklace::{double_bead, small_framed_necklace, Bead, BeadPair, FramedNecklace, Necklace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceBundle {
    base: SimplicialComplex,
    necklaces: BTreeMap<Simplex, FramedNecklace>,
}

/// A failed bundle axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingNecklace(Simplex),
    /// The restriction of the necklace over `simplex` to `face` differs
    /// from the necklace over `face` as a cyclic bead sequence.
    Restriction { simplex: Simplex, face: Simplex },
    /// Same beads, different bold beads.
    Framing { simplex: Simplex, face: Simplex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingNecklace(s) => write!(f, "no necklace over {s:?}"),
            Violation::Restriction { simplex, face } => {
                write!(f, "necklace over {simplex:?} restricts wrongly to {face:?}")
            }
            Violation::Framing { simplex, face } => {
                write!(f, "framing over {simplex:?} disagrees with {face:?}")
            }
        }
    }
}

impl NecklaceBundle {
    /// Wraps a necklace family. Keys must be exactly the simplices of
    /// `base`, each with the matching carrier; consistency is not checked
    /// here, see [`NecklaceBundle::verify_consistency`].
    pub fn new(base: SimplicialComplex, necklaces: BTreeMap<Simplex, FramedNecklace>) -> Result<Self> {
        for (s, n) in &necklaces {
            if !base.contains(s) {
                return Err(Error::InconsistentBundle(format!("{s:?} is not a simplex of the base")));
            }
            if n.carrier() != s.as_slice() {
                return Err(Error::InconsistentBundle(format!(
                    "necklace keyed by {s:?} has carrier {:?}",
                    n.carrier()
                )));
            }
        }
        if let Some(s) = base.all_simplices().find(|s| !necklaces.contains_key(*s)) {
            return Err(Error::InconsistentBundle(format!("no necklace over {s:?}")));
        }
        Ok(Self { base, necklaces })
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn necklaces(&self) -> &BTreeMap<Simplex, FramedNecklace> {
        &self.necklaces
    }

    pub fn necklace(&self, s: &[usize]) -> Result<&FramedNecklace> {
        self.necklaces
            .get(s)
            .ok_or_else(|| Error::InconsistentBundle(format!("no necklace over {s:?}")))
    }

    /// Total number of beads over the vertices, i.e. vertices of the total space.
    pub fn bead_count(&self) -> usize {
        self.base
            .simplices(0)
            .iter()
            .map(|v| self.necklaces[v].necklace().len())
            .sum()
    }

    fn next_id(&self) -> usize {
        self.base
            .simplices(0)
            .iter()
            .flat_map(|v| self.necklaces[v].necklace().beads())
            .map(|b| b.id + 1)
            .max()
            .unwrap_or(0)
    }

    /// Checks every codimension-one restriction and framing identity.
    pub fn verify_consistency(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for s in self.base.all_simplices() {
            let Some(n) = self.necklaces.get(s) else {
                out.push(Violation::MissingNecklace(s.clone()));
                continue;
            };
            if s.len() < 2 {
                continue;
            }
            for i in 0..s.len() {
                let face = facet(s, i);
                let Some(m) = self.necklaces.get(&face) else {
                    continue;
                };
                let r = n.restrict(&face).expect("facet of carrier");
                if !r.necklace().cyclic_eq(m.necklace()) {
                    out.push(Violation::Restriction {
                        simplex: s.clone(),
                        face,
                    });
                } else if r.bold() != m.bold() {
                    out.push(Violation::Framing {
                        simplex: s.clone(),
                        face,
                    });
                }
            }
        }
        out
    }

    /// First necklace failing the classicality test, as an error.
    pub fn check_classical(&self) -> Result<()> {
        for (s, n) in &self.necklaces {
            let c = n.necklace().check_classical();
            if !c.classical {
                return Err(Error::NonClassical {
                    simplex: s.clone(),
                    reason: c.reason.unwrap_or_default(),
                });
            }
        }
        Ok(())
    }

    /// Doubles bead `id` over `vertex` everywhere, returning the fresh id.
    pub fn double_bead(&mut self, vertex: usize, id: usize) -> Result<usize> {
        let fresh = self.next_id();
        double_bead(&mut self.necklaces, vertex, id, fresh)?;
        Ok(fresh)
    }

    /// Doubles the bold bead over every vertex, in vertex order.
    pub fn double_bold_beads(&mut self) -> Result<()> {
        for v in 0..self.base.vertex_count() {
            let id = self.necklaces[&vec![v]].bold()[&v];
            self.double_bead(v, id)?;
        }
        Ok(())
    }
}

fn pair(v: usize) -> BeadPair {
    BeadPair {
        bold: 2 * v,
        plain: 2 * v + 1,
    }
}

/// The small bundle over the 2-skeleton of `base` whose edge framings
/// realize the orientation `a`. Bead ids: `2v` bold and `2v+1` plain over `v`.
pub fn small_bundle_over_skeleton(base: &SimplicialComplex, a: &Cochain) -> Result<NecklaceBundle> {
    let skeleton = base.skeleton(2);
    if !a.is_orientation() {
        return Err(Error::DegreeMismatch {
            degree: a.degree(),
            reason: "expected a 1-cochain with values +-1".into(),
        });
    }
    a.check_against(&skeleton)?;
    let sign = |p: usize, q: usize| -> i8 {
        let e = [p.min(q), p.max(q)];
        let along_low_high = a.get(&e).expect("edge").0 > 0;
        if along_low_high == (p < q) {
            1
        } else {
            -1
        }
    };
    let mut necklaces = BTreeMap::new();
    for v in skeleton.simplices(0) {
        let p = pair(v[0]);
        let n = Necklace::new(v.clone(), vec![Bead::new(p.bold, v[0]), Bead::new(p.plain, v[0])])?;
        necklaces.insert(v.clone(), FramedNecklace::new(n, BTreeMap::from([(v[0], p.bold)]))?);
    }
    for e in skeleton.simplices(1) {
        let (u, w) = (e[0], e[1]);
        let (pu, pw) = (pair(u), pair(w));
        let order = if sign(u, w) > 0 {
            [(pu.bold, u), (pw.bold, w), (pu.plain, u), (pw.plain, w)]
        } else {
            [(pu.bold, u), (pw.plain, w), (pu.plain, u), (pw.bold, w)]
        };
        let n = Necklace::new(e.clone(), order.iter().map(|&(id, c)| Bead::new(id, c)).collect())?;
        let bold = BTreeMap::from([(u, pu.bold), (w, pw.bold)]);
        necklaces.insert(e.clone(), FramedNecklace::new(n, bold)?);
    }
    for t in skeleton.simplices(2) {
        let tri = [t[0], t[1], t[2]];
        let signs = [sign(tri[0], tri[1]), sign(tri[1], tri[2]), sign(tri[2], tri[0])];
        let framed = small_framed_necklace(tri, signs, tri.map(pair))?;
        necklaces.insert(t.clone(), framed);
    }
    NecklaceBundle::new(skeleton, necklaces)
}

/// Small bundle over a closed oriented surface realizing `a`.
pub fn small_bundle_from_orientation(base: &SimplicialComplex, a: &Cochain) -> Result<NecklaceBundle> {
    verify_closed_oriented_surface(base)?;
    small_bundle_over_skeleton(base, a)
}

/// A classical bundle with Euler number `euler` over a connected closed
/// oriented surface, with `3v` beads over the vertices in total.
pub fn build_with_euler(base: &SimplicialComplex, euler: i64) -> Result<NecklaceBundle> {
    let orientation = verify_closed_oriented_surface(base)?;
    if orientation.components() != 1 {
        return Err(Error::Disconnected(orientation.components()));
    }
    let target = choose_target_cochain(base, &orientation, euler)?;
    let sigma0 = orientation.triangles()[0].clone();
    let a = solve_orientation_for_target(base, &orientation, &target, &sigma0)?;
    let mut bundle = small_bundle_over_skeleton(base, &a)?;
    bundle.double_bold_beads()?;
    Ok(bundle)
}

/// The trivial bundle: restrictions of the necklace
/// `(0,0,1,1,...,N,N,B0,...,BN)` over the full simplex on all base
/// vertices. Over `v` the beads are `3v`, `3v+1` and the bold `3v+2`.
pub fn trivial_bundle(base: &SimplicialComplex) -> NecklaceBundle {
    let necklaces = base
        .all_simplices()
        .map(|s| {
            let mut beads: Vec<Bead> = s
                .iter()
                .flat_map(|&v| [Bead::new(3 * v, v), Bead::new(3 * v + 1, v)])
                .collect();
            beads.extend(s.iter().map(|&v| Bead::new(3 * v + 2, v)));
            let bold = s.iter().map(|&v| (v, 3 * v + 2)).collect();
            let n = Necklace::new(s.clone(), beads).expect("well-formed");
            (s.clone(), FramedNecklace::new(n, bold).expect("well-formed"))
        })
        .collect();
    NecklaceBundle::new(base.clone(), necklaces).expect("every simplex covered")
}

/// Extends a bundle over the 2-skeleton of `base` to all of `base`,
/// merging facet necklaces dimension by dimension.
pub fn extend_to_skeleton(partial: &NecklaceBundle, base: &SimplicialComplex) -> Result<NecklaceBundle> {
    let skeleton = base.skeleton(2);
    if partial.base().all_simplices().ne(skeleton.all_simplices()) {
        return Err(Error::InconsistentBundle(
            "partial bundle is not over the 2-skeleton of the base".into(),
        ));
    }
    let mut necklaces = partial.necklaces.clone();
    let top = base.dimension().unwrap_or(0);
    for k in 3..=top {
        for s in base.simplices(k) {
            match merge(s, &necklaces) {
                Some(n) => {
                    necklaces.insert(s.clone(), n);
                }
                None if k == 3 && is_hopf_pattern(s, &necklaces)? => {
                    return Err(Error::HopfObstruction(s.clone()));
                }
                None => return Err(Error::ExtensionFailure(s.clone())),
            }
        }
    }
    NecklaceBundle::new(base.clone(), necklaces)
}

/// All four faces of a tetrahedron carry the same LCF value under the
/// boundary orientation.
fn is_hopf_pattern(s: &[usize], known: &BTreeMap<Simplex, FramedNecklace>) -> Result<bool> {
    let mut values = Vec::with_capacity(4);
    for i in 0..4 {
        let f = facet(s, i);
        let v = lcf_value(known[&f].necklace(), [f[0], f[1], f[2]])?;
        values.push(if i % 2 == 0 { v } else { -v });
    }
    Ok(values.iter().all(|&v| v == values[0] && v.abs() == Ratio::new(1, 4)))
}

/// Merges the facet necklaces of `s` into one necklace, ordering beads
/// linearly from the bold bead over the least vertex. Every pair of beads
/// is compared inside the necklace over the face spanned by the least
/// vertex and the two bead colors. `None` if the pairwise order is not a
/// linear order or the result does not restrict back to the facets.
fn merge(s: &[usize], known: &BTreeMap<Simplex, FramedNecklace>) -> Option<FramedNecklace> {
    let v0 = s[0];
    let anchor = known[&vec![v0]].bold()[&v0];
    let mut beads: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bold = BTreeMap::new();
    for i in 0..s.len() {
        let f = &known[&facet(s, i)];
        for b in f.necklace().beads() {
            beads.insert(b.id, b.color);
        }
        bold.extend(f.bold().iter().map(|(&c, &id)| (c, id)));
    }
    let beads: Vec<Bead> = beads.into_iter().map(|(id, color)| Bead::new(id, color)).collect();
    let offset = |x: &Bead, y: &Bead| -> (usize, usize) {
        let mut face = vec![v0, x.color, y.color];
        face.sort_unstable();
        face.dedup();
        let n = known[&face].necklace();
        let len = n.len();
        let start = n.position(anchor).expect("anchor lies over the least vertex");
        let p = |b: &Bead| (n.position(b.id).expect("bead over face") + len - start) % len;
        (p(x), p(y))
    };
    let mut ordered: Vec<Option<Bead>> = vec![None; beads.len()];
    for x in &beads {
        let rank = beads
            .iter()
            .filter(|y| y.id != x.id)
            .filter(|y| {
                let (px, py) = offset(x, y);
                py < px
            })
            .count();
        if ordered[rank].replace(*x).is_some() {
            return None;
        }
    }
    let necklace = Necklace::new(s.to_vec(), ordered.into_iter().map(Option::unwrap).collect()).ok()?;
    let merged = FramedNecklace::new(necklace, bold).ok()?;
    (0..s.len())
        .all(|i| {
            let f = facet(s, i);
            merged.restrict(&f).is_ok_and(|r| r.cyclic_eq(&known[&f]))
        })
        .then_some(merged)
}

/// Result of the general construction over a base of any dimension.
#[derive(Debug, Clone)]
pub struct GeneralBundle {
    pub bundle: NecklaceBundle,
    /// The integer 2-cochain `F(da) - (3/4) da`.
    pub g_a: Cochain,
    /// Whether `H^2(B; Z)` has 2-torsion, in which case `G_a` need not
    /// determine the bundle class.
    pub h2_two_torsion: bool,
}

/// Builds the classical bundle realizing `F(da)` over an arbitrary base,
/// after checking that `F(da)` is a cocycle.
pub fn build_general(base: &SimplicialComplex, a: &Cochain) -> Result<GeneralBundle> {
    let fda = f_of_da(base, a, None)?;
    if !base.simplices(3).is_empty() {
        let d = coboundary(base, &fda, None)?;
        let failures: Vec<Simplex> = d
            .values()
            .iter()
            .filter(|(_, &v)| v != Quarter::ZERO)
            .map(|(s, _)| s.clone())
            .collect();
        if !failures.is_empty() {
            return Err(Error::CocycleFailure(failures));
        }
    }
    let g_a = g_of_a(base, a, None)?;
    let small = small_bundle_over_skeleton(base, a)?;
    let mut bundle = extend_to_skeleton(&small, base)?;
    bundle.double_bold_beads()?;
    Ok(GeneralBundle {
        bundle,
        g_a,
        h2_two_torsion: h2_has_two_torsion(base),
    })
}
