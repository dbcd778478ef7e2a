//! The local combinatorial formula: a rational 2-cochain read off the
//! triangle necklaces, whose sum over a closed oriented surface is the
//! Euler number.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::Zero;

use crate::bundle::NecklaceBundle;
use crate::complex::{facet, verify_closed_oriented_surface, Simplex, SurfaceOrientation};
use crate::error::{Error, Result};
use crate::necklace::Necklace;

/// Multicolored triple counts of one triangle necklace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleCounts {
    pub positive: u64,
    pub negative: u64,
    /// `#0 * #1 * #2`, which equals `positive + negative`.
    pub product: u64,
}

impl TripleCounts {
    pub fn value(&self) -> Ratio<i64> {
        Ratio::new(
            self.negative as i64 - self.positive as i64,
            2 * self.product as i64,
        )
    }
}

/// Counts multicolored triples of `necklace` with colors numbered along
/// `oriented`; a triple is positive when walking counterclockwise from its
/// first-color bead meets the second-color bead before the third.
pub fn triple_counts(necklace: &Necklace, oriented: [usize; 3]) -> Result<TripleCounts> {
    let n = necklace.len();
    let positions: Vec<Vec<usize>> = oriented
        .iter()
        .map(|&c| {
            (0..n)
                .filter(|&p| necklace.beads()[p].color == c)
                .collect::<Vec<_>>()
        })
        .collect();
    for (k, list) in positions.iter().enumerate() {
        if list.is_empty() {
            return Err(Error::MissingColor {
                carrier: necklace.carrier().to_vec(),
                color: oriented[k],
            });
        }
    }
    let mut positive = 0;
    let mut negative = 0;
    for &p0 in &positions[0] {
        for &p1 in &positions[1] {
            for &p2 in &positions[2] {
                if (p1 + n - p0) % n < (p2 + n - p0) % n {
                    positive += 1;
                } else {
                    negative += 1;
                }
            }
        }
    }
    let product = positions.iter().map(|l| l.len() as u64).product();
    Ok(TripleCounts {
        positive,
        negative,
        product,
    })
}

/// `(#neg - #pos) / (2 * #0 * #1 * #2)` for a triangle necklace.
pub fn lcf_value(necklace: &Necklace, oriented: [usize; 3]) -> Result<Ratio<i64>> {
    Ok(triple_counts(necklace, oriented)?.value())
}

/// The LCF cochain of a bundle together with its sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcfResult {
    pub values: BTreeMap<Simplex, Ratio<i64>>,
    pub counts: BTreeMap<Simplex, TripleCounts>,
    /// Sum of all values; the Euler number when the base is a closed
    /// oriented surface and the surface orientation was used.
    pub euler_number: Ratio<i64>,
}

/// Evaluates the LCF on every triangle of the base, numbering colors along
/// the surface orientation when given and along the sorted tuple otherwise.
pub fn lcf_cochain(
    bundle: &NecklaceBundle,
    orientation: Option<&SurfaceOrientation>,
) -> Result<LcfResult> {
    let mut values = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for t in bundle.base().simplices(2) {
        let oriented = match orientation {
            Some(o) => o
                .oriented(t)
                .ok_or_else(|| Error::Format(format!("{t:?} missing from the orientation")))?,
            None => [t[0], t[1], t[2]],
        };
        let c = triple_counts(bundle.necklace(t)?.necklace(), oriented)?;
        values.insert(t.clone(), c.value());
        counts.insert(t.clone(), c);
    }
    let euler_number = values.values().copied().fold(Ratio::zero(), |a, b| a + b);
    Ok(LcfResult {
        values,
        counts,
        euler_number,
    })
}

/// Euler number of a bundle over a closed oriented surface, using the
/// canonical surface orientation.
pub fn euler_number(bundle: &NecklaceBundle) -> Result<i64> {
    let orientation = verify_closed_oriented_surface(bundle.base())?;
    euler_number_with(bundle, &orientation)
}

/// Euler number with respect to a given surface orientation.
pub fn euler_number_with(bundle: &NecklaceBundle, orientation: &SurfaceOrientation) -> Result<i64> {
    let sum = lcf_cochain(bundle, Some(orientation))?.euler_number;
    if sum.is_integer() {
        Ok(sum.to_integer())
    } else {
        Err(Error::NonIntegerEuler(sum.to_string()))
    }
}

/// `d(eps)` on every 3-simplex of the base, with sorted-tuple orientations.
pub fn lcf_coboundary(bundle: &NecklaceBundle) -> Result<BTreeMap<Simplex, Ratio<i64>>> {
    let eps = lcf_cochain(bundle, None)?;
    Ok(bundle
        .base()
        .simplices(3)
        .iter()
        .map(|s| {
            let v = (0..4)
                .map(|i| {
                    let x = eps.values[&facet(s, i)];
                    if i % 2 == 0 {
                        x
                    } else {
                        -x
                    }
                })
                .fold(Ratio::zero(), |a, b| a + b);
            (s.clone(), v)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use proptest::prelude::*;

    fn nk(word: &[usize]) -> Necklace {
        Necklace::from_colors(vec![0, 1, 2], word).unwrap()
    }

    /// Brute-force oracle: orientation of a triple read off the cyclic word
    /// by rotating it so the first-color bead leads.
    fn oracle(word: &[usize]) -> Ratio<i64> {
        let n = word.len();
        let (mut pos, mut neg, mut total) = (0i64, 0i64, 0i64);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if word[i] != 0 || word[j] != 1 || word[k] != 2 {
                        continue;
                    }
                    total += 1;
                    let rotated: Vec<usize> = (0..n).map(|s| (i + s) % n).collect();
                    let rj = rotated.iter().position(|&x| x == j).unwrap();
                    let rk = rotated.iter().position(|&x| x == k).unwrap();
                    if rj < rk {
                        pos += 1;
                    } else {
                        neg += 1;
                    }
                }
            }
        }
        Ratio::new(neg - pos, 2 * total)
    }

    #[test]
    fn small_necklace_values() {
        assert_eq!(lcf_value(&nk(&[0, 1, 2, 0, 1, 2]), [0, 1, 2]).unwrap(), Ratio::new(-1, 4));
        assert_eq!(lcf_value(&nk(&[0, 2, 1, 0, 2, 1]), [0, 1, 2]).unwrap(), Ratio::new(1, 4));
    }

    #[test]
    fn blocks_give_minus_half() {
        let c = triple_counts(&nk(&[0, 0, 1, 1, 2, 2]), [0, 1, 2]).unwrap();
        assert_eq!(c.positive, 8);
        assert_eq!(c.negative, 0);
        assert_eq!(c.value(), Ratio::new(-1, 2));
        assert_eq!(oracle(&[0, 0, 1, 1, 2, 2]), Ratio::new(-1, 2));
    }

    #[test]
    fn missing_color_is_an_error() {
        let n = Necklace::from_colors(vec![0, 1, 2], &[0, 1, 2]).unwrap();
        assert!(matches!(lcf_value(&n, [0, 1, 5]), Err(Error::MissingColor { color: 5, .. })));
    }

    fn arb_word() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..3, 0..10).prop_flat_map(|extra| {
            let mut w = vec![0, 1, 2];
            w.extend(extra);
            Just(w).prop_shuffle()
        })
    }

    fn classical(word: &[usize]) -> bool {
        nk(word).check_classical().classical
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn matches_oracle_and_bounds(word in arb_word()) {
            let n = nk(&word);
            let c = triple_counts(&n, [0, 1, 2]).unwrap();
            prop_assert_eq!(c.positive + c.negative, c.product);
            let v = c.value();
            prop_assert_eq!(v, oracle(&word));
            prop_assert!(v.abs() <= Ratio::new(1, 2));
            if classical(&word) {
                prop_assert!(v.abs() < Ratio::new(1, 2));
            }
        }

        #[test]
        fn reversing_orientation_negates(word in arb_word()) {
            let n = nk(&word);
            let a = lcf_value(&n, [0, 1, 2]).unwrap();
            let b = lcf_value(&n, [0, 2, 1]).unwrap();
            prop_assert_eq!(a, -b);
            // Cyclic relabelings keep the orientation.
            prop_assert_eq!(a, lcf_value(&n, [1, 2, 0]).unwrap());
        }
    }
}
