//! Components of `S - X` and `S - Y`, the genus of each side of the
//! manifold's boundary, and the closedness verdict.
//!
//! Re-inserting the Y-curves into `S - (X ∪ Y)` glues boundary polygons across
//! Y-edges: at every crossing the corners `(i,1) ~ (i,2)` and `(i,3) ~ (i,4)`
//! end up in the same component of `S - X`. For `S - Y` the X-edges are
//! re-inserted instead and `(i,1) ~ (i,4)`, `(i,2) ~ (i,3)`.
//!
//! A component built from `n` polygons glued along `m` edges and capped by
//! `t` discs (one per side of a removed curve bordering it) has
//! `χ = n - m + t`. The sum of component genera must agree with
//! `β₀(S - X) - β₀(X) + g(S) - 1`; a disagreement is an internal error.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::permdata::{CyclePermutation, PermutationDataSet};
use crate::surface::{self, Corner, OrbitPartition, SurfaceError, SurfaceSummary};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundaryError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("internal error: {side}-side class {class} has Euler characteristic {euler}")]
    BadEuler { side: Side, class: usize, euler: i64 },
    #[error("internal error: {side}-side boundary genus {sum} (component sum) != {formula} (closed formula)")]
    GenusMismatch { side: Side, sum: i64, formula: i64 },
    #[error("internal error: {side}-side bookkeeping: {what}")]
    Bookkeeping { side: Side, what: String },
}

/// Which curve family is removed from `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    /// Quadrant pairs that fall into one component once the other family is
    /// put back.
    pub fn identified_quadrants(self) -> [(u8, u8); 2] {
        match self {
            Side::X => [(1, 2), (3, 4)],
            Side::Y => [(1, 4), (2, 3)],
        }
    }

    /// Quadrants on the two sides of a removed curve, used as tags.
    pub fn tag_quadrants(self) -> (u8, u8) {
        match self {
            Side::X => (1, 3),
            Side::Y => (2, 4),
        }
    }

    pub fn curves(self, ds: &PermutationDataSet) -> &CyclePermutation {
        match self {
            Side::X => ds.alpha(),
            Side::Y => ds.beta(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Y => "Y",
        })
    }
}

/// One component of `S - X` (or `S - Y`), as a class of boundary polygons.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    /// Indices into the orbit partition.
    pub orbits: Vec<usize>,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub euler: i64,
    pub genus: usize,
}

impl ComponentClass {
    pub fn is_planar(&self) -> bool {
        self.genus == 0
    }
}

/// Classes ordered by their smallest orbit index.
pub fn side_components(
    ds: &PermutationDataSet,
    orbits: &OrbitPartition,
    side: Side,
) -> Result<Vec<ComponentClass>, BoundaryError> {
    let d = ds.degree();
    let mut uf = UnionFind::<usize>::new(orbits.len());
    for i in 1..=d {
        for (q1, q2) in side.identified_quadrants() {
            uf.union(orbits.orbit_of(Corner::new(i, q1)), orbits.orbit_of(Corner::new(i, q2)));
        }
    }

    let mut class_of_root = vec![usize::MAX; orbits.len()];
    let mut classes: Vec<ComponentClass> = Vec::new();
    let mut class_of = Vec::with_capacity(orbits.len());
    for o in 0..orbits.len() {
        let root = uf.find(o);
        if class_of_root[root] == usize::MAX {
            class_of_root[root] = classes.len();
            classes.push(ComponentClass {
                orbits: Vec::new(),
                n: 0,
                m: 0,
                t: 0,
                euler: 0,
                genus: 0,
            });
        }
        let c = class_of_root[root];
        classes[c].orbits.push(o);
        classes[c].n += 1;
        class_of.push(c);
    }

    // Edge i -> next(i) of the re-inserted family borders the corner (i,1).
    for i in 1..=d {
        classes[class_of[orbits.orbit_of(Corner::new(i, 1))]].m += 1;
    }
    let (qa, qb) = side.tag_quadrants();
    for cycle in side.curves(ds).cycles() {
        let i = *cycle.iter().min().expect("cycles are non-empty");
        classes[class_of[orbits.orbit_of(Corner::new(i, qa))]].t += 1;
        classes[class_of[orbits.orbit_of(Corner::new(i, qb))]].t += 1;
    }

    for (idx, class) in classes.iter_mut().enumerate() {
        let euler = class.n as i64 - class.m as i64 + class.t as i64;
        if euler % 2 != 0 || euler > 2 {
            return Err(BoundaryError::BadEuler {
                side,
                class: idx,
                euler,
            });
        }
        class.euler = euler;
        class.genus = (1 - euler / 2) as usize;
    }
    Ok(classes)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideSummary {
    pub side: Side,
    /// `β₀(S - side)`.
    pub component_count: usize,
    /// `β₀(X) = c(α)` or `β₀(Y) = c(β)`.
    pub curve_count: usize,
    /// Genus of this side of `∂M`, summed over components.
    pub boundary_genus: usize,
    pub is_empty_boundary: bool,
    pub components: Vec<ComponentClass>,
}

impl SideSummary {
    /// Components of positive genus; each contributes a boundary surface of `M`.
    pub fn non_planar(&self) -> impl Iterator<Item = &ComponentClass> {
        self.components.iter().filter(|c| !c.is_planar())
    }
}

impl Serialize for SideSummary {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SideSummary", 4)?;
        s.serialize_field("components", &self.component_count)?;
        s.serialize_field("curves", &self.curve_count)?;
        s.serialize_field("boundaryGenus", &self.boundary_genus)?;
        s.serialize_field("empty", &self.is_empty_boundary)?;
        s.end()
    }
}

pub fn side_summary(
    ds: &PermutationDataSet,
    orbits: &OrbitPartition,
    surface: &SurfaceSummary,
    side: Side,
) -> Result<SideSummary, BoundaryError> {
    let components = side_components(ds, orbits, side)?;
    let curve_count = side.curves(ds).cycle_count();
    let component_count = components.len();

    let total = |f: fn(&ComponentClass) -> usize| components.iter().map(f).sum::<usize>();
    let (n, m, t) = (total(|c| c.n), total(|c| c.m), total(|c| c.t));
    if n != surface.b || m != surface.d || t != 2 * curve_count {
        return Err(BoundaryError::Bookkeeping {
            side,
            what: format!(
                "sum n = {n} (b = {}), sum m = {m} (d = {}), sum t = {t} (curves = {curve_count})",
                surface.b, surface.d
            ),
        });
    }
    if n as i64 - m as i64 != surface.euler_s {
        return Err(BoundaryError::Bookkeeping {
            side,
            what: format!(
                "sum n - sum m = {} but chi(S) = {}",
                n as i64 - m as i64,
                surface.euler_s
            ),
        });
    }

    let sum = total(|c| c.genus) as i64;
    let formula = component_count as i64 - curve_count as i64 + surface.genus_s as i64 - 1;
    if sum != formula {
        return Err(BoundaryError::GenusMismatch { side, sum, formula });
    }
    let is_empty_boundary = surface.genus_s as i64 == 1 + curve_count as i64 - component_count as i64;
    Ok(SideSummary {
        side,
        component_count,
        curve_count,
        boundary_genus: sum as usize,
        is_empty_boundary,
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub surface: SurfaceSummary,
    pub x_side: SideSummary,
    pub y_side: SideSummary,
    pub closed: bool,
    /// `c(α) = g(S)`: the decoded presentation presents `π₁(M)`.
    pub presents_group: bool,
}

impl Serialize for AnalysisReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("AnalysisReport", 7)?;
        s.serialize_field("d", &self.surface.d)?;
        s.serialize_field("b", &self.surface.b)?;
        s.serialize_field("genusS", &self.surface.genus_s)?;
        s.serialize_field("x", &self.x_side)?;
        s.serialize_field("y", &self.y_side)?;
        s.serialize_field("closed", &self.closed)?;
        s.serialize_field("presentsGroup", &self.presents_group)?;
        s.end()
    }
}

/// Full analysis of a transitive data set.
pub fn analyze(ds: &PermutationDataSet) -> Result<AnalysisReport, BoundaryError> {
    let orbit_count = ds.orbits().len();
    if orbit_count != 1 {
        return Err(SurfaceError::NotTransitive { orbits: orbit_count }.into());
    }
    let orbits = surface::orbit_partition(ds);
    let surface = surface::summary_from_orbits(ds.degree(), &orbits)?;
    let x_side = side_summary(ds, &orbits, &surface, Side::X)?;
    let y_side = side_summary(ds, &orbits, &surface, Side::Y)?;
    Ok(AnalysisReport {
        closed: x_side.is_empty_boundary && y_side.is_empty_boundary,
        presents_group: ds.alpha().cycle_count() == surface.genus_s,
        surface,
        x_side,
        y_side,
    })
}
