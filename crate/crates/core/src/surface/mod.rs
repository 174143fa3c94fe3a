//! Oriented triangulated surfaces and cut-and-paste.

mod circles;
mod complex;
mod library;
mod ops;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use circles::{candidate_circles, circle_signature, CircleSignature};
pub use complex::{validate, HalfEdge, SurfaceData, TriSurface};
pub use library::{annulus, build_standard, connected_sum, disk, octahedron, seven_vertex_torus, sphere_with_holes};
pub(crate) use ops::{collared_reglue, glue_cycles, Region};
pub use ops::{
    cut, cut_system, disjoint_union, double_circle, paste, refine_boundary, sk_move, BoundaryGluing, CirclePairing,
    CircleUnit, CutRecord, CutSides, EmbeddedCircle, Regluing,
};

/// Connected oriented surface type: genus and number of boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Piece {
    pub genus: u32,
    pub boundary: u32,
}

impl Piece {
    pub fn new(genus: u32, boundary: u32) -> Self {
        Piece { genus, boundary }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.genus, self.boundary)
    }
}

/// Multiset of connected types, kept sorted. Empty means the empty surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiffeoClass {
    pieces: Vec<Piece>,
}

impl DiffeoClass {
    pub fn from_pieces(mut pieces: Vec<Piece>) -> Self {
        pieces.sort();
        DiffeoClass { pieces }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(genus: u32, boundary: u32) -> Self {
        Self::from_pieces(vec![Piece::new(genus, boundary)])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn union(&self, other: &DiffeoClass) -> DiffeoClass {
        Self::from_pieces(self.pieces.iter().chain(&other.pieces).copied().collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.pieces.iter().map(Piece::euler_characteristic).sum()
    }

    pub fn boundary_circles(&self) -> u32 {
        self.pieces.iter().map(|p| p.boundary).sum()
    }
}

impl fmt::Display for DiffeoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// First invariant a triangulation fails.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum Violation {
    #[error("triangle {triangle} uses a vertex outside the vertex range")]
    VertexOutOfRange { triangle: usize },
    #[error("triangle {triangle} repeats a vertex")]
    DegenerateTriangle { triangle: usize },
    #[error("vertex {vertex} lies in no triangle")]
    IsolatedVertex { vertex: usize },
    #[error("half-edges {first:?} and {second:?} induce the same orientation on a shared edge")]
    OrientationClash { first: HalfEdge, second: HalfEdge },
    #[error("half-edge {half_edge:?} does not exist")]
    BadHalfEdge { half_edge: HalfEdge },
    #[error("half-edge {half_edge:?} is glued more than once")]
    GluedTwice { half_edge: HalfEdge },
    #[error("glued half-edges {first:?} and {second:?} join different vertex pairs")]
    GluingMismatch { first: HalfEdge, second: HalfEdge },
    #[error("edge {edge:?} is shared by two triangles but not listed as glued")]
    SharedEdgeNotGlued { edge: (usize, usize) },
    #[error("link of vertex {vertex} is not a single cycle or path")]
    VertexLinkDisconnected { vertex: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid circle: {0}")]
    InvalidCircle(String),
    #[error("circle meets the boundary at vertex {vertex}")]
    CircleTouchesBoundary { vertex: usize },
    #[error("cut does not separate: both sides of circle {circle} stay connected (double the circle to get a separating pair)")]
    NonSeparating { circle: usize },
    #[error("boundary cycle {index} does not exist")]
    NoSuchCycle { index: usize },
    #[error("cannot glue a boundary cycle to itself")]
    SameCycle,
    #[error("boundary cycles have {left} and {right} edges (refine the shorter one first)")]
    LengthMismatch { left: usize, right: usize },
    #[error("matching preserves the induced boundary orientation")]
    OrientationClash,
    #[error("cycle already has {current} edges, cannot shrink to {target}")]
    Shrinking { current: usize, target: usize },
    #[error("regluing is not a bijection between left and right sides")]
    BadRegluing,
    #[error("operation produced an invalid complex: {0}")]
    Invalid(#[from] Violation),
}
