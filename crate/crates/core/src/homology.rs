//! Integer simplicial homology through Smith normal forms of boundary
//! matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{facet, SimplicialComplex};

/// A dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * other.get(k, j);
                    let cell = &mut out.entries[i * other.cols + j];
                    *cell += prod;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] += k * row[source]
    fn add_row(&mut self, target: usize, source: usize, k: &BigInt) {
        for j in 0..self.cols {
            let d = k * self.get(source, j);
            self.entries[target * self.cols + j] += d;
        }
    }

    /// col[target] += k * col[source]
    fn add_col(&mut self, target: usize, source: usize, k: &BigInt) {
        for i in 0..self.rows {
            let d = k * self.get(i, source);
            self.entries[i * self.cols + target] += d;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -self.get(i, j);
            self.set(i, j, x);
        }
    }
}

/// `u * m * v == d` with `u`, `v` unimodular and `d` diagonal, each
/// diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with transforms, in arbitrary precision.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut v = IntegerMatrix::identity(m.cols);
    let steps = m.rows.min(m.cols);
    for t in 0..steps {
        loop {
            let Some((pi, pj)) = min_nonzero(&a, t) else {
                break;
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..a.rows {
                let q = a.get(i, t).div_floor(&p);
                if !q.is_zero() {
                    a.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j).div_floor(&p);
                if !q.is_zero() {
                    a.add_col(j, t, &-&q);
                    v.add_col(j, t, &-&q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..a.rows).find(|&i| {
                (t + 1..a.cols).any(|j| !a.get(i, j).is_multiple_of(&p))
            });
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let diagonal = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SmithForm { diagonal, u, v }
}

fn min_nonzero(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
                if x.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Nonzero invariant factors of an integer matrix given as dense `i64`
/// rows. Runs in checked machine arithmetic and falls back to the
/// arbitrary-precision form on overflow.
pub fn invariant_factors(rows: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    match small_invariant_factors(rows.to_vec(), cols) {
        Some(f) => f.into_iter().map(BigInt::from).collect(),
        None => {
            let m = if rows.is_empty() {
                IntegerMatrix::zeros(0, cols)
            } else {
                IntegerMatrix::from_rows(rows)
            };
            smith_normal_form(&m)
                .diagonal
                .into_iter()
                .filter(|d| !d.is_zero())
                .collect()
        }
    }
}

/// Eliminates pivot by pivot, dropping a pivot's row and column once both
/// are clear; the resulting diagonal is normalized into a divisor chain.
/// `None` on overflow.
fn small_invariant_factors(mut a: Vec<Vec<i64>>, cols: usize) -> Option<Vec<i64>> {
    let mut alive_rows: Vec<usize> = (0..a.len()).collect();
    let mut alive_cols = vec![true; cols];
    let mut diag = Vec::new();
    while let Some((mut r, mut c)) = pick_pivot(&a, &alive_rows, &alive_cols) {
        loop {
            let p = a[r][c];
            let mut clean = true;
            for &i in &alive_rows {
                if i == r || a[i][c] == 0 {
                    continue;
                }
                let q = a[i][c].div_euclid(p);
                if q != 0 {
                    let (src, dst) = two_rows(&mut a, r, i);
                    for j in 0..cols {
                        if src[j] != 0 {
                            dst[j] = dst[j].checked_sub(q.checked_mul(src[j])?)?;
                        }
                    }
                }
                clean &= a[i][c] == 0;
            }
            if clean {
                // Column c vanishes off row r, so column operations only
                // touch row r.
                for j in 0..cols {
                    if j != c && alive_cols[j] {
                        a[r][j] = a[r][j].rem_euclid(p);
                    }
                }
                if (0..cols).all(|j| j == c || !alive_cols[j] || a[r][j] == 0) {
                    break;
                }
            }
            let mut best = (r, c, p.abs());
            for &i in &alive_rows {
                let x = a[i][c];
                if i != r && x != 0 && x.abs() < best.2 {
                    best = (i, c, x.abs());
                }
            }
            for j in 0..cols {
                let x = a[r][j];
                if j != c && alive_cols[j] && x != 0 && x.abs() < best.2 {
                    best = (r, j, x.abs());
                }
            }
            (r, c) = (best.0, best.1);
        }
        diag.push(a[r][c].abs());
        alive_rows.retain(|&i| i != r);
        alive_cols[c] = false;
    }
    Some(normalize_chain(diag))
}

fn pick_pivot(a: &[Vec<i64>], rows: &[usize], cols: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for &i in rows {
        for (j, x) in a[i].iter().enumerate() {
            if *x == 0 || !cols[j] {
                continue;
            }
            if x.abs() == 1 {
                return Some((i, j));
            }
            if best.is_none_or(|b| x.abs() < b.2) {
                best = Some((i, j, x.abs()));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

fn two_rows(a: &mut [Vec<i64>], src: usize, dst: usize) -> (&Vec<i64>, &mut Vec<i64>) {
    if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// diag(a, b) ~ diag(gcd, lcm): repeat until every entry divides the next.
fn normalize_chain(mut d: Vec<i64>) -> Vec<i64> {
    d.sort_unstable();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Boundary matrix `C_k -> C_{k-1}`: rows are `(k-1)`-simplices, columns
/// `k`-simplices, entry `(-1)^i` for the facet dropping vertex `i`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: usize) -> Vec<Vec<i64>> {
    let rows = if k == 0 { 0 } else { complex.simplices(k - 1).len() };
    let mut m = vec![vec![0i64; complex.simplices(k).len()]; rows];
    if k == 0 {
        return m;
    }
    for (j, s) in complex.simplices(k).iter().enumerate() {
        for i in 0..s.len() {
            let r = complex.index_of(&facet(s, i)).expect("closed under faces");
            m[r][j] = if i % 2 == 0 { 1 } else { -1 };
        }
    }
    m
}

/// `H_k` as `Z^betti` plus cyclic torsion summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    pub fn free(betti: usize) -> Self {
        Self {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self {
            betti: 0,
            torsion: vec![order],
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology of `complex` in every degree from 0 to its dimension.
pub fn homology_all(complex: &SimplicialComplex) -> Vec<HomologyGroup> {
    let Some(top) = complex.dimension() else {
        return Vec::new();
    };
    let factors: Vec<Vec<BigInt>> = (0..=top + 1)
        .map(|k| {
            if k == 0 || k > top {
                Vec::new()
            } else {
                let cols = complex.simplices(k).len();
                invariant_factors(&boundary_matrix(complex, k), cols)
            }
        })
        .collect();
    (0..=top)
        .map(|k| {
            let n = complex.simplices(k).len();
            let betti = n - factors[k].len() - factors[k + 1].len();
            let torsion = factors[k + 1]
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
                .collect();
            HomologyGroup { betti, torsion }
        })
        .collect()
}

/// `H_k(complex; Z)`; zero above the dimension.
pub fn homology(complex: &SimplicialComplex, k: usize) -> HomologyGroup {
    homology_all(complex)
        .into_iter()
        .nth(k)
        .unwrap_or_else(|| HomologyGroup::free(0))
}

/// Whether `H^2(complex; Z)` has 2-torsion; by universal coefficients its
/// torsion is that of `H_1`.
pub fn h2_has_two_torsion(complex: &SimplicialComplex) -> bool {
    homology(complex, 1).torsion.iter().any(|t| t % 2 == 0)
}
