//! Boundary tracing on the ribbon diagram and the genus of the splitting surface.
//!
//! Every crossing `i` has four corners `(i, Q)`, `Q = 1..4`, numbered
//! counterclockwise starting from the corner whose outgoing boundary edge runs
//! along `X` forward (positive crossing) or `Y` forward (negative crossing).
//! The map `φ` sends a corner to the next corner met when walking the boundary
//! of the ribbon diagram counterclockwise; its cycles are the `b` boundary
//! components. The ribbon diagram retracts to a 4-valent graph with `d`
//! vertices and `2d` edges, so capping the boundary gives `χ(S) = b - d` and
//! `g(S) = (d - b + 2) / 2`.

use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::permdata::PermutationDataSet;
use crate::presentation::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("corner rule row {row} disagrees with the closed-form rule")]
    CornerRuleMismatch { row: usize },
    #[error("data set is not transitive ({orbits} orbits); split the connected sum first")]
    NotTransitive { orbits: usize },
    #[error("internal error: {b} boundary components with degree {d} gives odd Euler characteristic")]
    Parity { d: usize, b: usize },
}

/// Quadrant `quadrant` (1..=4) at crossing `point` (1..=d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub point: usize,
    pub quadrant: u8,
}

impl Corner {
    pub fn new(point: usize, quadrant: u8) -> Corner {
        debug_assert!((1..=4).contains(&quadrant));
        Corner { point, quadrant }
    }

    /// Position in lexicographic `(point, quadrant)` order, 0-based.
    pub fn index(self) -> usize {
        (self.point - 1) * 4 + (self.quadrant as usize - 1)
    }

    pub fn from_index(index: usize) -> Corner {
        Corner::new(index / 4 + 1, (index % 4) as u8 + 1)
    }
}

impl Serialize for Corner {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.point)?;
        t.serialize_element(&self.quadrant)?;
        t.end()
    }
}

/// Which permutation the boundary walk follows out of a corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Alpha,
    Beta,
    AlphaInv,
    BetaInv,
}

impl Flow {
    fn apply(self, ds: &PermutationDataSet, point: usize) -> usize {
        match self {
            Flow::Alpha => ds.alpha().image(point),
            Flow::Beta => ds.beta().image(point),
            Flow::AlphaInv => ds.alpha().preimage(point),
            Flow::BetaInv => ds.beta().preimage(point),
        }
    }
}

/// One row of the corner-flow table: from quadrant `quadrant` at a crossing
/// of sign `sign`, follow `flow` to the next crossing; if that crossing has
/// sign `next_sign` the walk arrives in `next_quadrant`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CornerRule {
    pub sign: Sign,
    pub quadrant: u8,
    pub flow: Flow,
    pub next_sign: Sign,
    pub next_quadrant: u8,
}

const fn rule(sign: Sign, quadrant: u8, flow: Flow, next_sign: Sign, next_quadrant: u8) -> CornerRule {
    CornerRule {
        sign,
        quadrant,
        flow,
        next_sign,
        next_quadrant,
    }
}

use Flow::{Alpha, AlphaInv, Beta, BetaInv};
use Sign::{Neg, Pos};

pub const CORNER_RULES: [CornerRule; 16] = [
    rule(Pos, 1, Alpha, Pos, 2),
    rule(Pos, 1, Alpha, Neg, 3),
    rule(Pos, 2, Beta, Pos, 3),
    rule(Pos, 2, Beta, Neg, 4),
    rule(Pos, 3, AlphaInv, Pos, 4),
    rule(Pos, 3, AlphaInv, Neg, 1),
    rule(Pos, 4, BetaInv, Pos, 1),
    rule(Pos, 4, BetaInv, Neg, 2),
    rule(Neg, 1, Beta, Pos, 3),
    rule(Neg, 1, Beta, Neg, 4),
    rule(Neg, 2, AlphaInv, Pos, 4),
    rule(Neg, 2, AlphaInv, Neg, 1),
    rule(Neg, 3, BetaInv, Pos, 1),
    rule(Neg, 3, BetaInv, Neg, 2),
    rule(Neg, 4, Alpha, Pos, 2),
    rule(Neg, 4, Alpha, Neg, 3),
];

fn flow_for(sign: Sign, quadrant: u8) -> Flow {
    match (sign, quadrant) {
        (Pos, 1) | (Neg, 4) => Alpha,
        (Pos, 2) | (Neg, 1) => Beta,
        (Pos, 3) | (Neg, 2) => AlphaInv,
        (Pos, 4) | (Neg, 3) => BetaInv,
        _ => unreachable!("quadrant {quadrant}"),
    }
}

fn next_quadrant(sign: Sign, quadrant: u8, next_sign: Sign) -> u8 {
    let shift = match (sign, next_sign) {
        (Pos, Pos) => 1,
        (Pos, Neg) | (Neg, Pos) => 2,
        (Neg, Neg) => 3,
    };
    (quadrant - 1 + shift) % 4 + 1
}

/// Compares every table row with the closed-form rule used by [`phi`].
pub fn check_corner_rules() -> Result<(), SurfaceError> {
    for (row, r) in CORNER_RULES.iter().enumerate() {
        if flow_for(r.sign, r.quadrant) != r.flow || next_quadrant(r.sign, r.quadrant, r.next_sign) != r.next_quadrant {
            return Err(SurfaceError::CornerRuleMismatch { row: row + 1 });
        }
    }
    // each (sign, quadrant, next sign) exactly once
    let mut seen = [false; 16];
    for (row, r) in CORNER_RULES.iter().enumerate() {
        let key = usize::from(r.sign == Neg) * 8 + (r.quadrant as usize - 1) * 2 + usize::from(r.next_sign == Neg);
        if std::mem::replace(&mut seen[key], true) {
            return Err(SurfaceError::CornerRuleMismatch { row: row + 1 });
        }
    }
    Ok(())
}

fn ensure_corner_rules() {
    static CHECK: OnceLock<Result<(), SurfaceError>> = OnceLock::new();
    if let Err(e) = CHECK.get_or_init(check_corner_rules) {
        panic!("{e}");
    }
}

/// Next corner along the boundary of the ribbon diagram.
pub fn phi(ds: &PermutationDataSet, corner: Corner) -> Corner {
    let sign = ds.sign(corner.point);
    let next = flow_for(sign, corner.quadrant).apply(ds, corner.point);
    Corner::new(next, next_quadrant(sign, corner.quadrant, ds.sign(next)))
}

/// Partition of the `4d` corners into boundary components of the ribbon
/// diagram. Orbits are ordered by their smallest corner and each orbit is
/// listed in `φ` order starting there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    orbits: Vec<Vec<Corner>>,
    orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn orbits(&self) -> &[Vec<Corner>] {
        &self.orbits
    }

    /// `b`.
    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_of(&self, corner: Corner) -> usize {
        self.orbit_of[corner.index()]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

impl Serialize for OrbitPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.orbits.serialize(serializer)
    }
}

pub fn orbit_partition(ds: &PermutationDataSet) -> OrbitPartition {
    ensure_corner_rules();
    let total = 4 * ds.degree();
    const UNSET: usize = usize::MAX;
    let mut orbit_of = vec![UNSET; total];
    let mut orbits = Vec::new();
    for start in 0..total {
        if orbit_of[start] != UNSET {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut c = Corner::from_index(start);
        loop {
            let idx = c.index();
            if orbit_of[idx] != UNSET {
                assert_eq!(orbit_of[idx], id, "corner flow is not a permutation");
                break;
            }
            orbit_of[idx] = id;
            orbit.push(c);
            c = phi(ds, c);
        }
        assert_eq!(c.index(), start, "corner flow is not a permutation");
        orbits.push(orbit);
    }
    OrbitPartition { orbits, orbit_of }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SurfaceSummary {
    pub d: usize,
    pub b: usize,
    pub euler_s: i64,
    pub genus_s: usize,
}

/// `χ(S) = b - d` and `g(S) = (d - b + 2) / 2` for a transitive data set.
pub fn surface_summary(ds: &PermutationDataSet) -> Result<SurfaceSummary, SurfaceError> {
    let orbits = ds.orbits().len();
    if orbits != 1 {
        return Err(SurfaceError::NotTransitive { orbits });
    }
    summary_from_orbits(ds.degree(), &orbit_partition(ds))
}

pub(crate) fn summary_from_orbits(d: usize, orbits: &OrbitPartition) -> Result<SurfaceSummary, SurfaceError> {
    let b = orbits.len();
    let euler = b as i64 - d as i64;
    if euler % 2 != 0 || euler > 2 {
        return Err(SurfaceError::Parity { d, b });
    }
    Ok(SurfaceSummary {
        d,
        b,
        euler_s: euler,
        genus_s: ((2 - euler) / 2) as usize,
    })
}

/// Graphviz rendering of the 4-valent graph underlying the ribbon diagram:
/// one vertex per crossing labeled with its sign, one X edge `i -> α(i)` and
/// one Y edge `i -> β(i)` per crossing.
pub fn ribbon_graph_dot(ds: &PermutationDataSet) -> String {
    let mut out = String::from("digraph ribbon {\n  node [shape=circle];\n");
    for p in 1..=ds.degree() {
        let s = if ds.sign(p) == Pos { "+" } else { "-" };
        writeln!(out, "  {p} [label=\"{p}{s}\"];").unwrap();
    }
    for (c, cycle) in ds.alpha().cycles().iter().enumerate() {
        for &p in cycle {
            writeln!(
                out,
                "  {p} -> {} [label=\"X{}\", color=blue];",
                ds.alpha().image(p),
                c + 1
            )
            .unwrap();
        }
    }
    for (c, cycle) in ds.beta().cycles().iter().enumerate() {
        for &p in cycle {
            writeln!(
                out,
                "  {p} -> {} [label=\"Y{}\", color=red];",
                ds.beta().image(p),
                c + 1
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
