//! Integer and quarter-integer cochains, the coboundary, the F and G_a
//! transforms, and the GF(2) solver that realizes a prescribed +-1/4 target.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::complex::{facet, SimplicialComplex, Simplex, SurfaceOrientation};
use crate::error::{Error, Result};
use crate::gf2::{self, Equation};

/// An exact multiple of 1/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Quarter(pub i64);

impl Quarter {
    pub const ZERO: Quarter = Quarter(0);
    pub const PLUS: Quarter = Quarter(1);
    pub const MINUS: Quarter = Quarter(-1);

    pub fn from_int(n: i64) -> Self {
        Quarter(4 * n)
    }

    /// The integer value, if this is one.
    pub fn as_int(self) -> Option<i64> {
        (self.0 % 4 == 0).then_some(self.0 / 4)
    }

    pub fn to_ratio(self) -> Ratio<i64> {
        Ratio::new(self.0, 4)
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.to_ratio();
        if *r.denom() == 1 {
            write!(f, "{}", r.numer())
        } else {
            write!(f, "{}/{}", r.numer(), r.denom())
        }
    }
}

impl FromStr for Quarter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("`{s}` is not a quarter-integer"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<i64>().map_err(|_| bad())?,
                d.trim().parse::<i64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        if den <= 0 || (4 * num) % den != 0 {
            return Err(bad());
        }
        Ok(Quarter(4 * num / den))
    }
}

impl Add for Quarter {
    type Output = Quarter;
    fn add(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 + rhs.0)
    }
}

impl Sub for Quarter {
    type Output = Quarter;
    fn sub(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 - rhs.0)
    }
}

impl Neg for Quarter {
    type Output = Quarter;
    fn neg(self) -> Quarter {
        Quarter(-self.0)
    }
}

impl Mul<i64> for Quarter {
    type Output = Quarter;
    fn mul(self, rhs: i64) -> Quarter {
        Quarter(self.0 * rhs)
    }
}

impl std::iter::Sum for Quarter {
    fn sum<I: Iterator<Item = Quarter>>(iter: I) -> Quarter {
        iter.fold(Quarter::ZERO, Add::add)
    }
}

/// A `degree`-cochain with quarter-integer values on every `degree`-simplex.
///
/// Values on triangles of a surface refer to the surface orientation when
/// one is supplied to the operations below; otherwise to the sorted tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: BTreeMap<Simplex, Quarter>,
}

impl Cochain {
    pub fn zero(complex: &SimplicialComplex, degree: usize) -> Self {
        Self::from_fn(complex, degree, |_| Quarter::ZERO)
    }

    pub fn from_fn(
        complex: &SimplicialComplex,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Quarter,
    ) -> Self {
        let values = complex
            .simplices(degree)
            .iter()
            .map(|s| (s.clone(), f(s)))
            .collect();
        Self { degree, values }
    }

    /// Builds a cochain from explicit values; every `degree`-simplex of
    /// `complex` must be covered and nothing else.
    pub fn from_values(
        complex: &SimplicialComplex,
        degree: usize,
        values: BTreeMap<Simplex, Quarter>,
    ) -> Result<Self> {
        let c = Self { degree, values };
        c.check_against(complex)?;
        Ok(c)
    }

    /// Orientation cochain from per-edge signs aligned with
    /// `complex.simplices(1)`; `+1` points from the lower to the higher vertex.
    pub fn orientation(complex: &SimplicialComplex, signs: &[i8]) -> Result<Self> {
        let edges = complex.simplices(1);
        if signs.len() != edges.len() || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::DegreeMismatch {
                degree: 1,
                reason: "need one +-1 per edge".into(),
            });
        }
        Ok(Self {
            degree: 1,
            values: edges
                .iter()
                .zip(signs)
                .map(|(e, &s)| (e.clone(), Quarter::from_int(s as i64)))
                .collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, s: &[usize]) -> Option<Quarter> {
        self.values.get(s).copied()
    }

    pub fn values(&self) -> &BTreeMap<Simplex, Quarter> {
        &self.values
    }

    pub fn sum(&self) -> Quarter {
        self.values.values().copied().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == Quarter::ZERO)
    }

    /// Whether this is an element of Or(B): degree 1 with values +-1 only.
    pub fn is_orientation(&self) -> bool {
        self.degree == 1 && self.values.values().all(|v| v.0.abs() == 4)
    }

    pub fn check_against(&self, complex: &SimplicialComplex) -> Result<()> {
        let expected = complex.simplices(self.degree);
        if expected.len() != self.values.len() || expected.iter().any(|s| !self.values.contains_key(s)) {
            return Err(Error::DegreeMismatch {
                degree: self.degree,
                reason: "values do not match the simplices of the complex".into(),
            });
        }
        Ok(())
    }

    fn map(&self, f: impl Fn(Quarter) -> Quarter) -> Self {
        Self {
            degree: self.degree,
            values: self.values.iter().map(|(s, &v)| (s.clone(), f(v))).collect(),
        }
    }

    fn zip_with(&self, other: &Cochain, f: impl Fn(Quarter, Quarter) -> Quarter) -> Self {
        assert_eq!(self.degree, other.degree);
        Self {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(s, &v)| (s.clone(), f(v, other.values[s])))
                .collect(),
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        self.map(|v| v * k)
    }
}

impl Sub for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Add for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        self.zip_with(rhs, |a, b| a + b)
    }
}

/// Orientation sign of a simplex relative to its sorted tuple: the surface
/// orientation on triangles when given, `+1` otherwise.
fn orientation_sign(s: &[usize], orientation: Option<&SurfaceOrientation>) -> i64 {
    match orientation {
        Some(o) if s.len() == 3 => o.sign(s).map_or(1, i64::from),
        _ => 1,
    }
}

/// `(dc)(s) = o(s) * sum_i (-1)^i o(s_i) c(s_i)` where `s_i` drops the
/// `i`-th vertex and `o` is the orientation sign.
pub fn coboundary(
    complex: &SimplicialComplex,
    c: &Cochain,
    orientation: Option<&SurfaceOrientation>,
) -> Result<Cochain> {
    c.check_against(complex)?;
    let target = c.degree + 1;
    if complex.simplices(target).is_empty() {
        return Err(Error::DegreeMismatch {
            degree: c.degree,
            reason: format!("complex has no {target}-simplices"),
        });
    }
    Ok(Cochain::from_fn(complex, target, |s| {
        let inner: Quarter = (0..s.len())
            .map(|i| {
                let f = facet(s, i);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                c.values[&f] * (sign * orientation_sign(&f, orientation))
            })
            .sum();
        inner * orientation_sign(s, orientation)
    }))
}

/// Pointwise `F`: 3 and -1 go to 1/4, -3 and 1 go to -1/4.
pub fn apply_f(c: &Cochain) -> Result<Cochain> {
    for v in c.values.values() {
        if !matches!(v.as_int(), Some(-3 | -1 | 1 | 3)) {
            return Err(Error::OutOfDomain(v.as_int().unwrap_or(v.0)));
        }
    }
    Ok(c.map(|v| match v.as_int() {
        Some(3 | -1) => Quarter::PLUS,
        _ => Quarter::MINUS,
    }))
}

/// `G_a = F(da) - (3/4) da`, an integer 2-cochain with values in {+-1, +-2}.
pub fn g_of_a(
    complex: &SimplicialComplex,
    a: &Cochain,
    orientation: Option<&SurfaceOrientation>,
) -> Result<Cochain> {
    ensure_orientation(a)?;
    let da = coboundary(complex, a, orientation)?;
    let f = apply_f(&da)?;
    // (3/4)·da in quarter units is 3·(da as integer).
    Ok(f.zip_with(&da, |fv, dv| fv - Quarter(3 * dv.0 / 4)))
}

/// `F(da)` for an orientation cochain `a`.
pub fn f_of_da(
    complex: &SimplicialComplex,
    a: &Cochain,
    orientation: Option<&SurfaceOrientation>,
) -> Result<Cochain> {
    ensure_orientation(a)?;
    apply_f(&coboundary(complex, a, orientation)?)
}

fn ensure_orientation(a: &Cochain) -> Result<()> {
    if a.is_orientation() {
        Ok(())
    } else {
        Err(Error::DegreeMismatch {
            degree: a.degree,
            reason: "expected a 1-cochain with values +-1".into(),
        })
    }
}

/// Target 2-cochain with values +-1/4 summing to `euler`: `f/2 + 2·euler`
/// pluses on the first triangles in canonical order, minuses after.
pub fn choose_target_cochain(
    complex: &SimplicialComplex,
    orientation: &SurfaceOrientation,
    euler: i64,
) -> Result<Cochain> {
    let f = orientation.triangles().len();
    let bound = 4 * euler.unsigned_abs();
    if (f as u64) < bound {
        return Err(Error::BoundExceeded { faces: f, bound });
    }
    if f % 2 != 0 {
        return Err(Error::DegreeMismatch {
            degree: 2,
            reason: "odd number of triangles".into(),
        });
    }
    let plus = (f as i64 / 2 + 2 * euler) as usize;
    let mut k = 0;
    Ok(Cochain::from_fn(complex, 2, |_| {
        k += 1;
        if k <= plus {
            Quarter::PLUS
        } else {
            Quarter::MINUS
        }
    }))
}

/// Finds `a` in Or(B) with `F(da) = b` on every triangle except possibly
/// `sigma0`; when `b` sums to an integer the equality holds on `sigma0` too.
///
/// One unknown per edge (set when `a` disagrees with the low-to-high
/// reference direction); one parity equation per triangle other than
/// `sigma0`: the number of edges agreeing with the triangle's orientation
/// is odd exactly when `b = +1/4`.
pub fn solve_orientation_for_target(
    complex: &SimplicialComplex,
    orientation: &SurfaceOrientation,
    b: &Cochain,
    sigma0: &[usize],
) -> Result<Cochain> {
    b.check_against(complex)?;
    if b.degree != 2 {
        return Err(Error::DegreeMismatch {
            degree: b.degree,
            reason: "target must be a 2-cochain".into(),
        });
    }
    if orientation.components() != 1 {
        return Err(Error::Disconnected(orientation.components()));
    }
    if orientation.sign(sigma0).is_none() {
        return Err(Error::Format(format!("{sigma0:?} is not a triangle of the base")));
    }
    let edges = complex.simplices(1);
    let mut rows = Vec::with_capacity(edges.len());
    for t in orientation.triangles() {
        if t.as_slice() == sigma0 {
            continue;
        }
        let want_odd = match b.values[t] {
            Quarter::PLUS => true,
            Quarter::MINUS => false,
            _ => return Err(Error::NotQuarterTarget(t.clone())),
        };
        let [x, y, z] = orientation.oriented(t).expect("triangle");
        let mut eq = Equation::new(edges.len());
        let mut reference_agree = 0;
        for (p, q) in [(x, y), (y, z), (z, x)] {
            let e = [p.min(q), p.max(q)];
            eq.toggle(complex.index_of(&e).expect("edge of triangle"));
            if p < q {
                reference_agree += 1;
            }
        }
        // agree(e) = reference_agree(e) xor flipped(e)
        eq.set_rhs(want_odd ^ (reference_agree % 2 == 1));
        rows.push(eq);
    }
    if !matches!(b.values.get(sigma0), Some(&Quarter::PLUS | &Quarter::MINUS)) {
        return Err(Error::NotQuarterTarget(sigma0.to_vec()));
    }
    let flipped = gf2::solve(rows, edges.len()).ok_or(Error::InconsistentSystem)?;
    let signs: Vec<i8> = flipped.iter().map(|&f| if f { -1 } else { 1 }).collect();
    Cochain::orientation(complex, &signs)
}
