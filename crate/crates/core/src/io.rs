//! JSON interchange formats.
//!
//! Simplices used as map keys are written as comma-separated vertex lists
//! (`"0,1,2"`); quarter-integer and rational values as strings (`"1/4"`).

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bundle::NecklaceBundle;
use crate::chain::{Cochain, Quarter};
use crate::complex::{SimplicialComplex, Simplex};
use crate::error::{Error, Result};
use crate::game::Certificate;
use crate::lcf::LcfResult;
use crate::necklace::{Bead, FramedNecklace, Necklace};
use crate::total_space::TotalSpace;

pub fn simplex_key(s: &[usize]) -> String {
    s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub fn parse_simplex_key(key: &str) -> Result<Simplex> {
    let mut s = key
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Error::Format(format!("bad simplex key `{key}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let before = s.clone();
    s.sort_unstable();
    if s != before {
        return Err(Error::Format(format!("simplex key `{key}` is not sorted")));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub maximal_simplices: Vec<Simplex>,
}

impl From<&SimplicialComplex> for ComplexJson {
    fn from(c: &SimplicialComplex) -> Self {
        Self {
            vertices: c.vertex_count(),
            maximal_simplices: c.maximal_simplices(),
        }
    }
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_maximal(self.vertices, &self.maximal_simplices)
    }
}

pub fn complex_to_json(c: &SimplicialComplex) -> serde_json::Value {
    serde_json::to_value(ComplexJson::from(c)).expect("serializable")
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    serde_json::from_str::<ComplexJson>(text)?.to_complex()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub values: BTreeMap<String, String>,
}

pub fn cochain_to_json(c: &Cochain) -> CochainJson {
    CochainJson {
        degree: c.degree(),
        values: c
            .values()
            .iter()
            .map(|(s, v)| (simplex_key(s), v.to_string()))
            .collect(),
    }
}

pub fn cochain_from_json(json: &CochainJson, complex: &SimplicialComplex) -> Result<Cochain> {
    let values = json
        .values
        .iter()
        .map(|(k, v)| {
            let q: Quarter = v
                .parse()
                .map_err(|_| Error::Format(format!("bad cochain value `{v}`")))?;
            Ok((parse_simplex_key(k)?, q))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Cochain::from_values(complex, json.degree, values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeadJson {
    pub id: usize,
    pub color: usize,
    #[serde(default)]
    pub bold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceJson {
    pub carrier: Simplex,
    pub beads: Vec<BeadJson>,
}

impl From<&FramedNecklace> for NecklaceJson {
    fn from(n: &FramedNecklace) -> Self {
        Self {
            carrier: n.carrier().to_vec(),
            beads: n
                .necklace()
                .beads()
                .iter()
                .map(|b| BeadJson {
                    id: b.id,
                    color: b.color,
                    bold: n.is_bold(b.id),
                })
                .collect(),
        }
    }
}

impl NecklaceJson {
    pub fn to_framed(&self) -> Result<FramedNecklace> {
        let beads = self.beads.iter().map(|b| Bead::new(b.id, b.color)).collect();
        let necklace = Necklace::new(self.carrier.clone(), beads)?;
        let mut bold = BTreeMap::new();
        for b in self.beads.iter().filter(|b| b.bold) {
            if bold.insert(b.color, b.id).is_some() {
                return Err(Error::MalformedNecklace {
                    carrier: self.carrier.clone(),
                    reason: format!("two bold beads of color {}", b.color),
                });
            }
        }
        FramedNecklace::new(necklace, bold)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleJson {
    pub base: ComplexJson,
    pub necklaces: BTreeMap<String, NecklaceJson>,
}

impl From<&NecklaceBundle> for BundleJson {
    fn from(b: &NecklaceBundle) -> Self {
        Self {
            base: b.base().into(),
            necklaces: b
                .necklaces()
                .iter()
                .map(|(s, n)| (simplex_key(s), n.into()))
                .collect(),
        }
    }
}

impl BundleJson {
    pub fn to_bundle(&self) -> Result<NecklaceBundle> {
        let base = self.base.to_complex()?;
        let necklaces = self
            .necklaces
            .iter()
            .map(|(k, n)| Ok((parse_simplex_key(k)?, n.to_framed()?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        NecklaceBundle::new(base, necklaces)
    }
}

pub fn bundle_from_json(text: &str) -> Result<NecklaceBundle> {
    serde_json::from_str::<BundleJson>(text)?.to_bundle()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalSpaceJson {
    pub vertices: usize,
    pub maximal_simplices: Vec<Simplex>,
    /// Base vertex under each total-space vertex.
    pub projection: Vec<usize>,
    /// Bead id behind each total-space vertex.
    pub beads: Vec<usize>,
}

impl From<&TotalSpace> for TotalSpaceJson {
    fn from(t: &TotalSpace) -> Self {
        Self {
            vertices: t.complex.vertex_count(),
            maximal_simplices: t.complex.maximal_simplices(),
            projection: t.projection.clone(),
            beads: t.bead_ids.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcfReportJson {
    pub euler_number: String,
    pub values: BTreeMap<String, String>,
}

pub fn lcf_report(r: &LcfResult) -> LcfReportJson {
    let show = |x: &Ratio<i64>| x.to_string();
    LcfReportJson {
        euler_number: show(&r.euler_number),
        values: r.values.iter().map(|(s, v)| (simplex_key(s), show(v))).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub base: ComplexJson,
    pub strategy: crate::game::Strategy,
    pub green: usize,
    pub euler_bound: i64,
}

pub fn certificate_json(base: &SimplicialComplex, c: &Certificate) -> CertificateJson {
    CertificateJson {
        base: base.into(),
        strategy: c.strategy.clone(),
        green: c.green,
        euler_bound: c.euler_bound,
    }
}
