//! Generators, oracles and property suites shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use fiberforge::bundle::{build_with_euler, small_bundle_from_orientation, NecklaceBundle};
use fiberforge::chain::{coboundary, f_of_da, g_of_a, Cochain, Quarter};
use fiberforge::complex::{
    enumerate_spheres, generate, verify_closed_oriented_surface, Preset, SimplicialComplex, Simplex,
};
use fiberforge::homology::boundary_matrix;
use fiberforge::lcf::{euler_number, lcf_value};
use fiberforge::necklace::{FramedNecklace, Necklace};
use fiberforge::total_space::{reconstruct, verify_bundle_triangulation};
use fiberforge::Error;
use num_rational::Ratio;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRng, TestRunner};

pub const CASES: u32 = 500;

/// Runs `test` on `CASES` deterministic samples of `strategy`.
pub fn run_suite<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(config.rng_algorithm);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn torus7() -> SimplicialComplex {
    let tris: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect();
    SimplicialComplex::build(&tris).unwrap()
}

/// Closed oriented surfaces used as random bases.
pub fn surfaces() -> &'static [SimplicialComplex] {
    static CELL: OnceLock<Vec<SimplicialComplex>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out: Vec<SimplicialComplex> = [
            Preset::TetrahedronBoundary,
            Preset::Octahedron,
            Preset::Icosahedron,
            Preset::SubdividedBipyramid,
        ]
        .into_iter()
        .map(|p| generate(p, None).unwrap())
        .collect();
        out.extend((3..=8).map(|n| generate(Preset::SuspensionNgon, Some(n)).unwrap()));
        out.extend(enumerate_spheres(7).unwrap());
        out.push(torus7());
        out
    })
}

pub fn euler_range(base: &SimplicialComplex) -> i64 {
    base.simplices(2).len() as i64 / 4
}

/// A classical bundle: the Euler-number pipeline over a random surface
/// followed by random bead doublings.
pub fn arb_classical_bundle() -> impl Strategy<Value = (NecklaceBundle, i64)> {
    (
        0..surfaces().len(),
        any::<i64>(),
        prop::collection::vec((any::<usize>(), any::<usize>()), 0..5),
    )
        .prop_map(|(i, e, doublings)| {
            let base = &surfaces()[i];
            let r = euler_range(base);
            let euler = e.rem_euclid(2 * r + 1) - r;
            let mut b = build_with_euler(base, euler).unwrap();
            apply_doublings(&mut b, &doublings);
            (b, euler)
        })
}

pub fn apply_doublings(b: &mut NecklaceBundle, doublings: &[(usize, usize)]) {
    for &(vs, bs) in doublings {
        let v = vs % b.base().vertex_count();
        let beads = b.necklaces()[&vec![v]].necklace().beads().to_vec();
        let id = beads[bs % beads.len()].id;
        b.double_bead(v, id).unwrap();
    }
}

/// The bundle over a single simplex whose top necklace is `word`; bead ids
/// are positions in the word, the first bead of each color is bold.
pub fn interleaved_bundle(word: &[usize]) -> NecklaceBundle {
    let k = word.iter().max().unwrap() + 1;
    let carrier: Simplex = (0..k).collect();
    let top = Necklace::from_colors(carrier.clone(), word).unwrap();
    let mut bold = BTreeMap::new();
    for b in top.beads() {
        bold.entry(b.color).or_insert(b.id);
    }
    let top = FramedNecklace::new(top, bold).unwrap();
    let base = SimplicialComplex::build(&[carrier]).unwrap();
    let necklaces = base
        .all_simplices()
        .map(|s| (s.clone(), top.restrict(s).unwrap()))
        .collect();
    NecklaceBundle::new(base, necklaces).unwrap()
}

/// Random words over `colors` colors, each present at least `min` times.
pub fn arb_word(colors: usize, min: usize, extra: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..colors, 0..=extra).prop_flat_map(move |more| {
        let mut w: Vec<usize> = (0..colors).flat_map(|c| std::iter::repeat_n(c, min)).collect();
        w.extend(more);
        Just(w).prop_shuffle()
    })
}

/// Brute-force LCF: rotate the word so the 0-bead leads and compare the
/// positions of the 1- and 2-beads.
pub fn lcf_oracle(word: &[usize]) -> Ratio<i64> {
    let n = word.len();
    let (mut pos, mut total) = (0i64, 0i64);
    for i in (0..n).filter(|&i| word[i] == 0) {
        for j in (0..n).filter(|&j| word[j] == 1) {
            for k in (0..n).filter(|&k| word[k] == 2) {
                total += 1;
                if (j + n - i) % n < (k + n - i) % n {
                    pos += 1;
                }
            }
        }
    }
    Ratio::new(total - 2 * pos, 2 * total)
}

/// Classicality of the bundle over a simplex decided on the color word:
/// at least three beads per color, and every pair of colors mixed.
pub fn classical_oracle(word: &[usize], colors: usize) -> bool {
    let counts_ok = (0..colors).all(|c| word.iter().filter(|&&x| x == c).count() >= 3);
    counts_ok
        && (0..colors).all(|p| {
            (p + 1..colors).all(|q| {
                let sub: Vec<usize> = word.iter().copied().filter(|&x| x == p || x == q).collect();
                let n = sub.len();
                (0..n).filter(|&i| sub[i] != sub[(i + 1) % n]).count() > 2
            })
        })
}

pub fn restriction_functoriality() -> Result<(), String> {
    let strat = (2usize..6)
        .prop_flat_map(|k| (arb_word(k, 1, 10), prop::collection::vec(any::<bool>(), k), any::<u64>()));
    run_suite(strat, |(word, keep_mid, pick)| {
        let k = word.iter().max().unwrap() + 1;
        let n = Necklace::from_colors((0..k).collect(), &word).unwrap();
        let mut mid: Simplex = (0..k).filter(|&c| keep_mid[c]).collect();
        if mid.is_empty() {
            mid.push(0);
        }
        let inner: Simplex = mid
            .iter()
            .enumerate()
            .filter(|(i, _)| i == &0 || pick >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        let via_mid = n.restrict(&mid).unwrap().restrict(&inner).unwrap();
        let direct = n.restrict(&inner).unwrap();
        prop_assert_eq!(via_mid.beads(), direct.beads());
        let oracle: Vec<usize> = word.iter().copied().filter(|c| inner.contains(c)).collect();
        prop_assert_eq!(direct.colors(), oracle);
        let all: Simplex = (0..k).collect();
        prop_assert_eq!(n.restrict(&all).unwrap(), n);
        Ok(())
    })
}

fn arb_complex_with_tetrahedron() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0usize..7, 1..=4), 0..6).prop_map(|sets| {
        let mut maximal: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3]];
        maximal.extend(sets.into_iter().map(|s| s.into_iter().collect()));
        SimplicialComplex::build(&maximal).unwrap()
    })
}

pub fn coboundary_squares_to_zero() -> Result<(), String> {
    let strat = (
        arb_complex_with_tetrahedron(),
        0usize..2,
        prop::collection::vec(-8i64..8, 64),
        0..surfaces().len(),
    );
    run_suite(strat, |(complex, degree, values, si)| {
        let mut it = values.iter().cycle();
        let c = Cochain::from_fn(&complex, degree, |_| Quarter(*it.next().unwrap()));
        let dc = coboundary(&complex, &c, None).unwrap();
        let ddc = coboundary(&complex, &dc, None).unwrap();
        prop_assert!(ddc.is_zero());
        for k in 1..complex.dimension().unwrap() {
            let a = boundary_matrix(&complex, k);
            let b = boundary_matrix(&complex, k + 1);
            for row in &a {
                for j in 0..complex.simplices(k + 1).len() {
                    let x: i64 = row.iter().enumerate().map(|(m, &r)| r * b[m][j]).sum();
                    prop_assert_eq!(x, 0);
                }
            }
        }
        let surface = &surfaces()[si];
        let o = verify_closed_oriented_surface(surface).unwrap();
        let c0 = Cochain::from_fn(surface, 0, |_| Quarter(*it.next().unwrap()));
        let d1 = coboundary(surface, &c0, Some(&o)).unwrap();
        prop_assert!(coboundary(surface, &d1, Some(&o)).unwrap().is_zero());
        Ok(())
    })
}

pub fn g_a_values() -> Result<(), String> {
    let strat = (0..surfaces().len(), prop::collection::vec(any::<bool>(), 64), arb_complex_with_tetrahedron());
    run_suite(strat, |(si, flips, complex)| {
        let signs = |c: &SimplicialComplex| -> Vec<i8> {
            (0..c.simplices(1).len()).map(|i| if flips[i % 64] { -1 } else { 1 }).collect()
        };
        let base = &surfaces()[si];
        let o = verify_closed_oriented_surface(base).unwrap();
        let a = Cochain::orientation(base, &signs(base)).unwrap();
        let g = g_of_a(base, &a, Some(&o)).unwrap();
        let f = f_of_da(base, &a, Some(&o)).unwrap();
        let da = coboundary(base, &a, Some(&o)).unwrap();
        for (t, v) in g.values() {
            prop_assert!(matches!(v.as_int(), Some(-2 | -1 | 1 | 2)), "G = {} on {:?}", v, t);
            // F(da) - G = (3/4) da, in quarter units.
            prop_assert_eq!((f.values()[t] - *v).0 * 4, 3 * da.values()[t].0);
        }
        let a3 = Cochain::orientation(&complex, &signs(&complex)).unwrap();
        for v in g_of_a(&complex, &a3, None).unwrap().values().values() {
            prop_assert!(matches!(v.as_int(), Some(-2 | -1 | 1 | 2)));
        }
        Ok(())
    })
}

pub fn lcf_bound() -> Result<(), String> {
    let strat = prop_oneof![arb_word(3, 1, 10), arb_word(3, 3, 8)];
    run_suite(strat, |word| {
        let n = Necklace::from_colors(vec![0, 1, 2], &word).unwrap();
        let v = lcf_value(&n, [0, 1, 2]).unwrap();
        prop_assert_eq!(v, lcf_oracle(&word));
        let half = Ratio::new(1, 2);
        prop_assert!(-half <= v && v <= half);
        if classical_oracle(&word, 3) {
            prop_assert!(interleaved_bundle(&word).check_classical().is_ok());
            prop_assert!(-half < v && v < half);
        }
        Ok(())
    })
}

pub fn lcf_doubling_invariance() -> Result<(), String> {
    let strat = (arb_classical_bundle(), prop::collection::vec((any::<usize>(), any::<usize>()), 1..6));
    run_suite(strat, |((mut b, euler), doublings)| {
        prop_assert_eq!(euler_number(&b).unwrap(), euler);
        for d in doublings {
            apply_doublings(&mut b, &[d]);
            prop_assert!(b.verify_consistency().is_empty());
            prop_assert_eq!(euler_number(&b).unwrap(), euler);
        }
        Ok(())
    })
}

pub fn total_space_consistency() -> Result<(), String> {
    let over_surface = arb_classical_bundle().prop_map(|(b, _)| b);
    let over_simplex = (2usize..4)
        .prop_flat_map(|k| arb_word(k, 3, 6))
        .prop_filter("classical", |w| classical_oracle(w, w.iter().max().unwrap() + 1))
        .prop_map(|w| interleaved_bundle(&w));
    run_suite(prop_oneof![over_surface, over_simplex], |b| {
        let t = reconstruct(&b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let report = verify_bundle_triangulation(&t, &b);
        prop_assert!(report.passed(), "{}", report);
        let f = b.base().f_vector();
        if b.base().dimension() == Some(2) && b.bead_count() == 3 * f.count(0) {
            prop_assert_eq!(t.f_vector().count(3), 9 * f.count(2));
        }
        Ok(())
    })
}

pub fn collision_iff_nonclassical() -> Result<(), String> {
    let over_simplex = (2usize..4)
        .prop_flat_map(|k| arb_word(k, 1, 8))
        .prop_map(|w| interleaved_bundle(&w));
    let small = (0usize..2, prop::collection::vec(any::<bool>(), 12), prop::collection::vec((any::<usize>(), any::<usize>()), 0..8))
        .prop_map(|(which, flips, doublings)| {
            let base = generate([Preset::TetrahedronBoundary, Preset::Octahedron][which], None).unwrap();
            let signs: Vec<i8> = (0..base.simplices(1).len()).map(|i| if flips[i] { -1 } else { 1 }).collect();
            let a = Cochain::orientation(&base, &signs).unwrap();
            let mut b = small_bundle_from_orientation(&base, &a).unwrap();
            apply_doublings(&mut b, &doublings);
            b
        });
    run_suite(prop_oneof![over_simplex, small], |b| {
        let classical = b.check_classical().is_ok();
        if b.base().vertex_count() <= 3 && b.base().simplices(1).len() <= 3 {
            let top = b.base().maximal_simplices().pop().unwrap();
            let word = b.necklaces()[&top].necklace().colors();
            prop_assert_eq!(classical, classical_oracle(&word, top.len()));
        }
        match reconstruct(&b) {
            Ok(_) => prop_assert!(classical, "non-classical bundle reconstructed without collision"),
            Err(Error::NonClassical { .. }) => prop_assert!(!classical, "classical bundle collided"),
            Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
        }
        Ok(())
    })
}
