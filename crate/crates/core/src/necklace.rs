//! Necklaces: cyclic words of globally identified beads colored by the
//! vertices of a carrier simplex. The stored order is counterclockwise.
//!
//! Beads keep their ids under restriction to a face, so the morphism
//! between a necklace and its restriction is the literal subsequence
//! relation on ids.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{is_face, Simplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bead {
    pub id: usize,
    pub color: usize,
}

impl Bead {
    pub fn new(id: usize, color: usize) -> Self {
        Self { id, color }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Necklace {
    carrier: Simplex,
    beads: Vec<Bead>,
}

/// Outcome of [`Necklace::check_classical`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classicality {
    pub classical: bool,
    pub reason: Option<String>,
}

impl Necklace {
    pub fn new(carrier: Simplex, beads: Vec<Bead>) -> Result<Self> {
        let n = Self { carrier, beads };
        n.validate()?;
        Ok(n)
    }

    /// Necklace whose bead ids are the positions `0..word.len()`.
    pub fn from_colors(carrier: Simplex, word: &[usize]) -> Result<Self> {
        let beads = word.iter().enumerate().map(|(i, &c)| Bead::new(i, c)).collect();
        Self::new(carrier, beads)
    }

    fn validate(&self) -> Result<()> {
        let bad = |reason: String| Error::MalformedNecklace {
            carrier: self.carrier.clone(),
            reason,
        };
        if self.carrier.is_empty() || self.carrier.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad("carrier must be a nonempty sorted simplex".into()));
        }
        let mut ids = BTreeSet::new();
        for b in &self.beads {
            if !ids.insert(b.id) {
                return Err(bad(format!("bead id {} repeated", b.id)));
            }
            if self.carrier.binary_search(&b.color).is_err() {
                return Err(bad(format!("bead {} has foreign color {}", b.id, b.color)));
            }
        }
        if let Some(&color) = self.carrier.iter().find(|&&c| self.count(c) == 0) {
            return Err(Error::MissingColor {
                carrier: self.carrier.clone(),
                color,
            });
        }
        Ok(())
    }

    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    pub fn beads(&self) -> &[Bead] {
        &self.beads
    }

    pub fn len(&self) -> usize {
        self.beads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beads.is_empty()
    }

    pub fn colors(&self) -> Vec<usize> {
        self.beads.iter().map(|b| b.color).collect()
    }

    pub fn count(&self, color: usize) -> usize {
        self.beads.iter().filter(|b| b.color == color).count()
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.beads.iter().position(|b| b.id == id)
    }

    pub fn contains(&self, id: usize) -> bool {
        self.position(id).is_some()
    }

    /// Rotation by `k` steps: bead `k` becomes the first.
    pub fn rotated(&self, k: usize) -> Self {
        let mut beads = self.beads.clone();
        if !beads.is_empty() {
            let n = beads.len();
            beads.rotate_left(k % n);
        }
        Self {
            carrier: self.carrier.clone(),
            beads,
        }
    }

    /// Keeps the beads whose color lies in `face`, in cyclic order.
    pub fn restrict(&self, face: &[usize]) -> Result<Self> {
        if face.is_empty() || !is_face(face, &self.carrier) {
            return Err(Error::NotAFace(face.to_vec(), self.carrier.clone()));
        }
        Ok(Self {
            carrier: face.to_vec(),
            beads: self
                .beads
                .iter()
                .filter(|b| face.binary_search(&b.color).is_ok())
                .copied()
                .collect(),
        })
    }

    /// Equality as cyclic sequences of beads.
    pub fn cyclic_eq(&self, other: &Necklace) -> bool {
        if self.carrier != other.carrier || self.len() != other.len() {
            return false;
        }
        let Some(first) = self.beads.first() else {
            return true;
        };
        match other.position(first.id) {
            Some(k) => other.rotated(k).beads == self.beads,
            None => false,
        }
    }

    /// Least rotation of the color word (ties broken by bead ids), returned
    /// as parallel color and id lists.
    pub fn canonical_form(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.len();
        let key = |k: usize| {
            let r = self.rotated(k);
            (
                r.beads.iter().map(|b| b.color).collect::<Vec<_>>(),
                r.beads.iter().map(|b| b.id).collect::<Vec<_>>(),
            )
        };
        (0..n.max(1)).map(key).min().expect("at least one rotation")
    }

    /// At least three beads of every color and, with exactly two colors,
    /// the colors are mixed (not two monochromatic blocks).
    pub fn check_classical(&self) -> Classicality {
        for &c in &self.carrier {
            let k = self.count(c);
            if k < 3 {
                return Classicality {
                    classical: false,
                    reason: Some(format!("color {c} has {k} beads (< 3)")),
                };
            }
        }
        if self.carrier.len() == 2 && color_blocks(&self.colors()) <= 2 {
            return Classicality {
                classical: false,
                reason: Some("two colors form monochromatic blocks".into()),
            };
        }
        Classicality {
            classical: true,
            reason: None,
        }
    }

    /// Inserts `fresh` as the counterclockwise successor of bead `after`.
    /// No-op if `after` is absent.
    pub fn insert_after(&mut self, after: usize, fresh: Bead) {
        if let Some(p) = self.position(after) {
            self.beads.insert(p + 1, fresh);
        }
    }

    /// Whether the necklace is centrally symmetric with two beads per color.
    pub fn is_small_symmetric(&self) -> bool {
        let n = self.len();
        n == 2 * self.carrier.len()
            && self.carrier.iter().all(|&c| self.count(c) == 2)
            && (0..n / 2).all(|i| self.beads[i].color == self.beads[i + n / 2].color)
    }
}

/// Number of maximal monochromatic runs in a cyclic word.
fn color_blocks(word: &[usize]) -> usize {
    let n = word.len();
    let changes = (0..n).filter(|&i| word[i] != word[(i + 1) % n]).count();
    changes.max(1)
}

/// A necklace with one bold bead per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedNecklace {
    necklace: Necklace,
    bold: BTreeMap<usize, usize>,
}

impl FramedNecklace {
    /// `bold` maps each carrier color to the id of its bold bead.
    pub fn new(necklace: Necklace, bold: BTreeMap<usize, usize>) -> Result<Self> {
        let bad = |reason: String| Error::MalformedNecklace {
            carrier: necklace.carrier.clone(),
            reason,
        };
        if bold.keys().copied().collect::<Vec<_>>() != necklace.carrier {
            return Err(bad("need exactly one bold bead per color".into()));
        }
        for (&color, &id) in &bold {
            match necklace.position(id) {
                Some(p) if necklace.beads[p].color == color => {}
                _ => return Err(bad(format!("bold bead {id} is not a bead of color {color}"))),
            }
        }
        Ok(Self { necklace, bold })
    }

    pub fn necklace(&self) -> &Necklace {
        &self.necklace
    }

    pub fn carrier(&self) -> &[usize] {
        &self.necklace.carrier
    }

    pub fn bold(&self) -> &BTreeMap<usize, usize> {
        &self.bold
    }

    pub fn is_bold(&self, id: usize) -> bool {
        self.bold.values().any(|&b| b == id)
    }

    pub fn restrict(&self, face: &[usize]) -> Result<Self> {
        let necklace = self.necklace.restrict(face)?;
        let bold = self
            .bold
            .iter()
            .filter(|(c, _)| face.binary_search(c).is_ok())
            .map(|(&c, &id)| (c, id))
            .collect();
        Ok(Self { necklace, bold })
    }

    /// Cyclic equality of beads together with equal framings.
    pub fn cyclic_eq(&self, other: &FramedNecklace) -> bool {
        self.bold == other.bold && self.necklace.cyclic_eq(&other.necklace)
    }

    /// Edge orientation induced by the framing of a two-colored necklace:
    /// `(i, j)` when, walking counterclockwise from the bold `i` bead, the
    /// first `j`-colored bead met is the bold one.
    pub fn framing_to_orientation(&self) -> Result<(usize, usize)> {
        let [i, j] = self.necklace.carrier[..] else {
            return Err(Error::NotTwoColored);
        };
        if self.first_met_is_bold(i, j) {
            Ok((i, j))
        } else if self.first_met_is_bold(j, i) {
            Ok((j, i))
        } else {
            Err(Error::MalformedNecklace {
                carrier: self.necklace.carrier.clone(),
                reason: "framing induces no edge orientation".into(),
            })
        }
    }

    fn first_met_is_bold(&self, from: usize, to: usize) -> bool {
        let beads = &self.necklace.beads;
        let n = beads.len();
        let start = self.necklace.position(self.bold[&from]).expect("bold bead present");
        (1..=n)
            .map(|k| beads[(start + k) % n])
            .find(|b| b.color == to)
            .is_some_and(|b| b.id == self.bold[&to])
    }
}

/// Ids of the two beads over one vertex of a small necklace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BeadPair {
    pub bold: usize,
    pub plain: usize,
}

/// The small symmetric framed necklace over an oriented triangle
/// `[c0, c1, c2]` whose framing orients the edges `c0c1`, `c1c2`, `c2c0`
/// along the triangle when the matching entry of `signs` is positive and
/// against it otherwise. Beads over `triangle[k]` take the ids in `ids[k]`.
pub fn small_framed_necklace(
    triangle: [usize; 3],
    signs: [i8; 3],
    ids: [BeadPair; 3],
) -> Result<FramedNecklace> {
    let mut carrier = triangle.to_vec();
    carrier.sort_unstable();
    let wanted: Vec<(usize, usize)> = (0..3)
        .map(|k| {
            let (p, q) = (triangle[k], triangle[(k + 1) % 3]);
            if signs[k] > 0 {
                (p, q)
            } else {
                (q, p)
            }
        })
        .collect();
    for order in [[0, 1, 2], [0, 2, 1]] {
        for bold_second in 0..4u8 {
            // Slot of each local color in the word `x y z x y z`.
            let word: Vec<usize> = order.iter().chain(order.iter()).copied().collect();
            let mut beads = Vec::with_capacity(6);
            let mut bold = BTreeMap::new();
            let mut seen = [0u8; 3];
            for &local in &word {
                let first = seen[local] == 0;
                seen[local] += 1;
                let is_bold = match local {
                    0 => first,
                    1 => first == (bold_second & 1 == 0),
                    _ => first == (bold_second & 2 == 0),
                };
                let pair = ids[local];
                let id = if is_bold { pair.bold } else { pair.plain };
                if is_bold {
                    bold.insert(triangle[local], id);
                }
                beads.push(Bead::new(id, triangle[local]));
            }
            let framed = FramedNecklace::new(Necklace::new(carrier.clone(), beads)?, bold)?;
            let matches = wanted.iter().all(|&(p, q)| {
                let mut e = vec![p, q];
                e.sort_unstable();
                framed
                    .restrict(&e)
                    .and_then(|r| r.framing_to_orientation())
                    .is_ok_and(|d| d == (p, q))
            });
            if matches {
                return Ok(framed);
            }
        }
    }
    unreachable!("every sign pattern is realized by one small framed necklace")
}

/// Doubles bead `id` (lying over `vertex`) in every necklace of a
/// collection: `fresh` is inserted as its counterclockwise successor
/// wherever `id` occurs.
pub fn double_bead(
    necklaces: &mut BTreeMap<Simplex, FramedNecklace>,
    vertex: usize,
    id: usize,
    fresh: usize,
) -> Result<()> {
    let over_vertex = necklaces
        .get(&vec![vertex])
        .is_some_and(|n| n.necklace.beads.iter().any(|b| b.id == id && b.color == vertex));
    if !over_vertex {
        return Err(Error::BeadNotOverVertex { bead: id, vertex });
    }
    for framed in necklaces.values_mut() {
        framed.necklace.insert_after(id, Bead::new(fresh, vertex));
    }
    Ok(())
}
