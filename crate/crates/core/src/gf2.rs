//! Dense linear systems over GF(2) with bit-packed rows.

/// One equation: a bit-packed coefficient row and its right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    bits: Vec<u64>,
    rhs: bool,
}

impl Equation {
    pub fn new(vars: usize) -> Self {
        Self {
            bits: vec![0; vars.div_ceil(64)],
            rhs: false,
        }
    }

    pub fn toggle(&mut self, var: usize) {
        self.bits[var / 64] ^= 1 << (var % 64);
    }

    pub fn set_rhs(&mut self, rhs: bool) {
        self.rhs = rhs;
    }

    pub fn get(&self, var: usize) -> bool {
        self.bits[var / 64] >> (var % 64) & 1 == 1
    }

    fn xor_assign(&mut self, other: &Equation) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }
}

/// Gauss–Jordan elimination with pivots taken in variable order.
/// Free variables are set to `false`. Returns `None` if inconsistent.
pub fn solve(mut rows: Vec<Equation>, vars: usize) -> Option<Vec<bool>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for var in 0..vars {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r].get(var)) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next_row && row.get(var) {
                row.xor_assign(&pivot);
            }
        }
        pivots.push((next_row, var));
        next_row += 1;
    }
    if rows[next_row..].iter().any(|r| r.is_zero() && r.rhs) {
        return None;
    }
    let mut x = vec![false; vars];
    for (r, var) in pivots {
        x[var] = rows[r].rhs;
    }
    Some(x)
}

/// Rank of the coefficient matrix (right-hand sides ignored).
pub fn rank(rows: &[Equation], vars: usize) -> usize {
    let mut rows: Vec<Equation> = rows
        .iter()
        .map(|r| Equation {
            bits: r.bits.clone(),
            rhs: false,
        })
        .collect();
    let mut next_row = 0;
    for var in 0..vars {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r].get(var)) else {
            continue;
        };
        rows.swap(next_row, found);
        let pivot = rows[next_row].clone();
        for row in rows.iter_mut().skip(next_row + 1) {
            if row.get(var) {
                row.xor_assign(&pivot);
            }
        }
        next_row += 1;
    }
    next_row
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn eq(vars: usize, coeffs: &[usize], rhs: bool) -> Equation {
        let mut e = Equation::new(vars);
        for &c in coeffs {
            e.toggle(c);
        }
        e.set_rhs(rhs);
        e
    }

    #[test]
    fn small_system() {
        // x0 + x1 = 1, x1 + x2 = 0, x0 = 1
        let rows = vec![eq(3, &[0, 1], true), eq(3, &[1, 2], false), eq(3, &[0], true)];
        assert_eq!(solve(rows, 3), Some(vec![true, false, false]));
    }

    #[test]
    fn inconsistent_system() {
        let rows = vec![eq(2, &[0, 1], true), eq(2, &[0, 1], false)];
        assert_eq!(solve(rows, 2), None);
    }

    #[test]
    fn free_variables_default_false() {
        let rows = vec![eq(3, &[0, 2], true)];
        assert_eq!(solve(rows, 3), Some(vec![true, false, false]));
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let rows = vec![eq(130, &[3, 64, 129], true), eq(130, &[64], true)];
        let x = solve(rows, 130).unwrap();
        assert!(x[3] ^ x[64] ^ x[129]);
        assert!(x[64]);
        assert_eq!(rank(&[eq(130, &[1, 100], false), eq(130, &[1, 100], true)], 130), 1);
    }

    proptest! {
        #[test]
        fn solutions_satisfy_consistent_systems(
            seed_rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 12), 1..10),
            truth in prop::collection::vec(any::<bool>(), 12),
        ) {
            let rows: Vec<Equation> = seed_rows
                .iter()
                .map(|r| {
                    let coeffs: Vec<usize> = (0..12).filter(|&i| r[i]).collect();
                    let rhs = coeffs.iter().fold(false, |acc, &i| acc ^ truth[i]);
                    eq(12, &coeffs, rhs)
                })
                .collect();
            let x = solve(rows.clone(), 12).expect("consistent by construction");
            for row in &rows {
                let lhs = (0..12).filter(|&i| row.get(i)).fold(false, |acc, i| acc ^ x[i]);
                prop_assert_eq!(lhs, row.rhs);
            }
        }
    }
}
