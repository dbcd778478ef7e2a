use std::fmt;
use std::str::FromStr;

use super::SimplicialComplex;
use crate::error::{Error, Result};

/// Named example bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    TetrahedronBoundary,
    Octahedron,
    Icosahedron,
    /// Suspension over an n-gon; n defaults to 3.
    Bipyramid,
    SuspensionNgon,
    /// Stellar subdivision of every triangle of the triangular bipyramid.
    SubdividedBipyramid,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::TetrahedronBoundary,
        Preset::Octahedron,
        Preset::Icosahedron,
        Preset::Bipyramid,
        Preset::SuspensionNgon,
        Preset::SubdividedBipyramid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::TetrahedronBoundary => "tetrahedron_boundary",
            Preset::Octahedron => "octahedron",
            Preset::Icosahedron => "icosahedron",
            Preset::Bipyramid => "bipyramid",
            Preset::SuspensionNgon => "suspension_ngon",
            Preset::SubdividedBipyramid => "subdivided_bipyramid",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPreset(s.to_string()))
    }
}

/// Builds a named example complex.
pub fn generate(preset: Preset, n: Option<usize>) -> Result<SimplicialComplex> {
    let tris = match preset {
        Preset::TetrahedronBoundary => vec![
            vec![0, 1, 2],
            vec![0, 1, 3],
            vec![0, 2, 3],
            vec![1, 2, 3],
        ],
        Preset::Octahedron => suspension(4),
        Preset::Icosahedron => icosahedron(),
        Preset::Bipyramid => suspension(checked_n(preset, n.or(Some(3)))?),
        Preset::SuspensionNgon => suspension(checked_n(preset, n)?),
        Preset::SubdividedBipyramid => stellar_subdivide_all(&suspension(3)),
    };
    SimplicialComplex::build(&tris)
}

fn checked_n(preset: Preset, n: Option<usize>) -> Result<usize> {
    match n {
        Some(n) if n >= 3 => Ok(n),
        _ => Err(Error::PresetSize {
            preset: preset.name(),
            n,
        }),
    }
}

/// Cycle `0..n` coned off to the poles `n` and `n + 1`.
fn suspension(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .flat_map(|i| {
            let j = (i + 1) % n;
            [vec![i, j, n], vec![i, j, n + 1]]
        })
        .collect()
}

fn icosahedron() -> Vec<Vec<usize>> {
    // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom.
    let up = |i: usize| 1 + i % 5;
    let low = |i: usize| 6 + i % 5;
    let mut tris = Vec::with_capacity(20);
    for i in 0..5 {
        tris.push(vec![0, up(i), up(i + 1)]);
        tris.push(vec![11, low(i), low(i + 1)]);
        tris.push(vec![up(i), up(i + 1), low(i)]);
        tris.push(vec![low(i), low(i + 1), up(i + 1)]);
    }
    tris
}

fn stellar_subdivide_all(tris: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let base = tris.iter().flatten().max().map_or(0, |m| m + 1);
    tris.iter()
        .enumerate()
        .flat_map(|(k, t)| {
            let c = base + k;
            [vec![t[0], t[1], c], vec![t[0], t[2], c], vec![t[1], t[2], c]]
        })
        .collect()
}
