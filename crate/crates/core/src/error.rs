use thiserror::Error;

use crate::complex::Simplex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Reasons a 2-complex fails to be a closed oriented surface.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("complex is not pure 2-dimensional")]
    NotPure,
    #[error("edge {0:?} lies in a single triangle (boundary edge)")]
    BoundaryEdge(Simplex),
    #[error("edge {0:?} lies in {1} triangles")]
    NonManifoldEdge(Simplex, usize),
    #[error("link of vertex {0} is not a single cycle")]
    NonManifoldVertex(usize),
    #[error("surface is not orientable")]
    NonOrientable,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex {0:?} contains a repeated vertex")]
    DuplicateVertex(Vec<usize>),
    #[error("empty simplex in input")]
    EmptySimplex,
    #[error("vertex {vertex} out of range for a complex on {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("preset `{preset}` needs n >= 3, got {n:?}")]
    PresetSize { preset: &'static str, n: Option<usize> },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("surface is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("base is not a triangulated 2-sphere: {0}")]
    NotASphere(String),
    #[error("sphere enumeration is limited to {limit} vertices, asked for {requested}")]
    EnumerationLimit { requested: usize, limit: usize },

    #[error("cochain of degree {degree} does not match the complex: {reason}")]
    DegreeMismatch { degree: usize, reason: String },
    #[error("value {0} is outside the domain {{-3,-1,1,3}}")]
    OutOfDomain(i64),
    #[error("cochain value on {0:?} is not +-1/4")]
    NotQuarterTarget(Simplex),
    #[error("f(B)={faces} < 4|E|={bound}")]
    BoundExceeded { faces: usize, bound: u64 },
    #[error("GF(2) system is inconsistent (internal failure)")]
    InconsistentSystem,

    #[error("{0:?} is not a face of {1:?}")]
    NotAFace(Simplex, Simplex),
    #[error("necklace is not two-colored")]
    NotTwoColored,
    #[error("necklace over {carrier:?} has no bead of color {color}")]
    MissingColor { carrier: Simplex, color: usize },
    #[error("necklace over {carrier:?} is malformed: {reason}")]
    MalformedNecklace { carrier: Simplex, reason: String },
    #[error("bead {bead} does not lie over vertex {vertex}")]
    BeadNotOverVertex { bead: usize, vertex: usize },

    #[error("LCF sum {0} is not an integer")]
    NonIntegerEuler(String),
    #[error("bundle is inconsistent: {0}")]
    InconsistentBundle(String),
    #[error("Hopf obstruction on 3-simplex {0:?}: all four faces carry the same LCF sign")]
    HopfObstruction(Simplex),
    #[error("necklaces over the faces of {0:?} do not merge into a single necklace")]
    ExtensionFailure(Simplex),
    #[error("F(da) is not a cocycle on 3-simplices {0:?}")]
    CocycleFailure(Vec<Simplex>),
    #[error("bundle is not classical over {simplex:?}: {reason}")]
    NonClassical { simplex: Simplex, reason: String },

    #[error("exhaustive search over {vertices} vertices exceeds the budget of {budget}")]
    SearchBudget { vertices: usize, budget: usize },
    #[error("strategy is not replayable: {0}")]
    NotReplayable(String),
    #[error("strategy is not winning: {green} green faces < f/4 = {faces}/4")]
    NotWinning { green: usize, faces: usize },

    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable snake-case name of the variant, for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicateVertex(_) => "duplicate_vertex",
            Error::EmptySimplex => "empty_simplex",
            Error::VertexOutOfRange { .. } => "vertex_out_of_range",
            Error::UnknownPreset(_) => "unknown_preset",
            Error::PresetSize { .. } => "preset_size",
            Error::Surface(_) => "not_a_surface",
            Error::Disconnected(_) => "disconnected",
            Error::NotASphere(_) => "not_a_sphere",
            Error::EnumerationLimit { .. } => "enumeration_limit",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::OutOfDomain(_) => "out_of_domain",
            Error::NotQuarterTarget(_) => "not_quarter_target",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::InconsistentSystem => "inconsistent_system",
            Error::NotAFace(..) => "not_a_face",
            Error::NotTwoColored => "not_two_colored",
            Error::MissingColor { .. } => "missing_color",
            Error::MalformedNecklace { .. } => "malformed_necklace",
            Error::BeadNotOverVertex { .. } => "bead_not_over_vertex",
            Error::NonIntegerEuler(_) => "non_integer_euler",
            Error::InconsistentBundle(_) => "inconsistent_bundle",
            Error::HopfObstruction(_) => "hopf_obstruction",
            Error::ExtensionFailure(_) => "extension_failure",
            Error::CocycleFailure(_) => "cocycle_failure",
            Error::NonClassical { .. } => "non_classical",
            Error::SearchBudget { .. } => "search_budget",
            Error::NotReplayable(_) => "not_replayable",
            Error::NotWinning { .. } => "not_winning",
            Error::Format(_) => "format",
            Error::Json(_) => "json",
        }
    }

    /// True for errors that express a mathematical obstruction rather than bad input.
    pub fn is_obstruction(&self) -> bool {
        matches!(
            self,
            Error::BoundExceeded { .. }
                | Error::HopfObstruction(_)
                | Error::ExtensionFailure(_)
                | Error::CocycleFailure(_)
                | Error::NonClassical { .. }
                | Error::NotWinning { .. }
        )
    }
}
