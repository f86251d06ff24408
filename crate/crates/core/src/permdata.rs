//! Signed permutation data sets `(alpha, beta, epsilon)`.
//!
//! Points are the integers `1..=d`. Each cycle of `alpha` is one X-curve,
//! each cycle of `beta` one Y-curve, and `epsilon` records the crossing sign
//! at every point. Cycles keep the order and starting point they were given
//! in: the `j`-th cycle of `beta` read from its first entry is relator `j`.
//! Use [`PermutationDataSet::canonical`] to compare data sets as permutations.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::presentation::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermDataError {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("{perm}: empty cycle")]
    EmptyCycle { perm: &'static str },
    #[error("{perm}: point {point} repeated")]
    RepeatedPoint { perm: &'static str, point: usize },
    #[error("{perm}: point {point} outside 1..={degree}")]
    OutOfRange {
        perm: &'static str,
        point: usize,
        degree: usize,
    },
    #[error("{perm}: point {point} missing")]
    MissingPoint { perm: &'static str, point: usize },
    #[error("expected {expected} signs, found {found}")]
    SignLength { expected: usize, found: usize },
    #[error("relabeling is not a bijection of 1..={0}")]
    NotBijection(usize),
}

/// A permutation of `1..=degree` stored as an explicit list of disjoint
/// cycles (fixed points included) plus image and preimage tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclePermutation {
    cycles: Vec<Vec<usize>>,
    image: Vec<usize>,
    preimage: Vec<usize>,
    cycle_of: Vec<usize>,
}

impl CyclePermutation {
    /// Builds from disjoint cycles. Points that appear in no cycle become
    /// fixed points, appended as 1-cycles in increasing order.
    pub fn from_cycles(degree: usize, cycles: Vec<Vec<usize>>) -> Result<Self, PermDataError> {
        Self::build("permutation", degree, cycles, false)
    }

    /// Like [`from_cycles`](Self::from_cycles) but every point must be listed.
    pub fn from_explicit_cycles(degree: usize, cycles: Vec<Vec<usize>>) -> Result<Self, PermDataError> {
        Self::build("permutation", degree, cycles, true)
    }

    pub fn identity(degree: usize) -> Self {
        Self::build("identity", degree, Vec::new(), false).expect("identity is valid")
    }

    /// `images[i - 1]` is the image of `i`. Cycles are listed by smallest
    /// element, each starting at its smallest element.
    pub fn from_images(images: &[usize]) -> Result<Self, PermDataError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermDataError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        for &p in images {
            if p == 0 || p > degree || std::mem::replace(&mut seen[p - 1], true) {
                return Err(PermDataError::NotBijection(degree));
            }
        }
        let mut visited = vec![false; degree];
        let mut cycles = Vec::new();
        for start in 1..=degree {
            if visited[start - 1] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !visited[p - 1] {
                visited[p - 1] = true;
                cycle.push(p);
                p = images[p - 1];
            }
            cycles.push(cycle);
        }
        Self::build("permutation", degree, cycles, true)
    }

    fn build(
        perm: &'static str,
        degree: usize,
        mut cycles: Vec<Vec<usize>>,
        strict: bool,
    ) -> Result<Self, PermDataError> {
        if degree == 0 {
            return Err(PermDataError::ZeroDegree);
        }
        const UNSET: usize = usize::MAX;
        let mut cycle_of = vec![UNSET; degree];
        for (c, cycle) in cycles.iter().enumerate() {
            if cycle.is_empty() {
                return Err(PermDataError::EmptyCycle { perm });
            }
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermDataError::OutOfRange { perm, point: p, degree });
                }
                if cycle_of[p - 1] != UNSET {
                    return Err(PermDataError::RepeatedPoint { perm, point: p });
                }
                cycle_of[p - 1] = c;
            }
        }
        for p in 1..=degree {
            if cycle_of[p - 1] == UNSET {
                if strict {
                    return Err(PermDataError::MissingPoint { perm, point: p });
                }
                cycle_of[p - 1] = cycles.len();
                cycles.push(vec![p]);
            }
        }
        let mut image = vec![0; degree];
        let mut preimage = vec![0; degree];
        for cycle in &cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                image[p - 1] = next;
                preimage[next - 1] = p;
            }
        }
        Ok(CyclePermutation {
            cycles,
            image,
            preimage,
            cycle_of,
        })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// `c(σ)`, the number of cycles including fixed points.
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.image[point - 1]
    }

    pub fn preimage(&self, point: usize) -> usize {
        self.preimage[point - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// 0-based position of the cycle containing `point`.
    pub fn cycle_index(&self, point: usize) -> usize {
        self.cycle_of[point - 1]
    }

    pub fn inverse(&self) -> CyclePermutation {
        CyclePermutation::from_images(&self.preimage).expect("inverse of a bijection")
    }

    /// Cycles rotated to start at their minimum and sorted by minimum.
    pub fn canonical_cycles(&self) -> Vec<Vec<usize>> {
        let mut cycles: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .map(|c| {
                let start = c
                    .iter()
                    .enumerate()
                    .min_by_key(|&(_, p)| p)
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                let mut rotated = c.clone();
                rotated.rotate_left(start);
                rotated
            })
            .collect();
        cycles.sort_by_key(|c| c[0]);
        cycles
    }

    /// Maps every entry through `sigma`, keeping cycle order and rotation.
    fn mapped(&self, sigma: &[usize]) -> CyclePermutation {
        let cycles = self
            .cycles
            .iter()
            .map(|c| c.iter().map(|&p| sigma[p - 1]).collect())
            .collect();
        CyclePermutation::build("permutation", self.degree(), cycles, true).expect("conjugate of a permutation")
    }
}

impl fmt::Display for CyclePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// `ε : {1..d} -> {+1, -1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntersectionFunction(Vec<Sign>);

impl IntersectionFunction {
    pub fn new(signs: Vec<Sign>) -> Self {
        IntersectionFunction(signs)
    }

    pub fn from_i8(values: &[i8]) -> Option<Self> {
        values
            .iter()
            .map(|&v| Sign::from_i64(v.into()))
            .collect::<Option<Vec<_>>>()
            .map(IntersectionFunction)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn at(&self, point: usize) -> Sign {
        self.0[point - 1]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationDataSet {
    alpha: CyclePermutation,
    beta: CyclePermutation,
    epsilon: IntersectionFunction,
}

impl PermutationDataSet {
    /// Validates and builds a data set of degree `d`. Points missing from a
    /// cycle list are taken to be fixed points of that permutation.
    pub fn new(
        d: usize,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
        signs: Vec<Sign>,
    ) -> Result<Self, PermDataError> {
        Self::build(d, alpha, beta, signs, false)
    }

    /// Like [`new`](Self::new) but every point must appear in both cycle lists.
    pub fn new_explicit(
        d: usize,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
        signs: Vec<Sign>,
    ) -> Result<Self, PermDataError> {
        Self::build(d, alpha, beta, signs, true)
    }

    /// Convenience constructor with signs as `±1` integers; panics on bad signs.
    pub fn from_raw(d: usize, alpha: &[&[usize]], beta: &[&[usize]], signs: &[i8]) -> Result<Self, PermDataError> {
        let signs = IntersectionFunction::from_i8(signs).expect("signs must be 1 or -1");
        let to_vec = |cs: &[&[usize]]| cs.iter().map(|c| c.to_vec()).collect();
        Self::new(d, to_vec(alpha), to_vec(beta), signs.0)
    }

    fn build(
        d: usize,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
        signs: Vec<Sign>,
        strict: bool,
    ) -> Result<Self, PermDataError> {
        let alpha = CyclePermutation::build("alpha", d, alpha, strict)?;
        let beta = CyclePermutation::build("beta", d, beta, strict)?;
        if signs.len() != d {
            return Err(PermDataError::SignLength {
                expected: d,
                found: signs.len(),
            });
        }
        Ok(PermutationDataSet {
            alpha,
            beta,
            epsilon: IntersectionFunction(signs),
        })
    }

    pub fn degree(&self) -> usize {
        self.epsilon.len()
    }

    pub fn alpha(&self) -> &CyclePermutation {
        &self.alpha
    }

    pub fn beta(&self) -> &CyclePermutation {
        &self.beta
    }

    pub fn epsilon(&self) -> &IntersectionFunction {
        &self.epsilon
    }

    pub fn sign(&self, point: usize) -> Sign {
        self.epsilon.at(point)
    }

    /// The a-map: 1-based index of the alpha cycle (generator) holding `point`.
    pub fn generator_of(&self, point: usize) -> usize {
        self.alpha.cycle_index(point) + 1
    }

    /// Conjugates by `sigma` (`sigma[i - 1]` is the new label of `i`):
    /// returns `(σασ⁻¹, σβσ⁻¹, ε∘σ⁻¹)`. Cycle order and rotation are kept,
    /// so the decoded presentation is unchanged.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self, PermDataError> {
        let d = self.degree();
        if sigma.len() != d {
            return Err(PermDataError::NotBijection(d));
        }
        CyclePermutation::from_images(sigma).map_err(|_| PermDataError::NotBijection(d))?;
        let mut signs = vec![Sign::Pos; d];
        for i in 1..=d {
            signs[sigma[i - 1] - 1] = self.epsilon.at(i);
        }
        Ok(PermutationDataSet {
            alpha: self.alpha.mapped(sigma),
            beta: self.beta.mapped(sigma),
            epsilon: IntersectionFunction(signs),
        })
    }

    /// Orbits of `⟨α, β⟩` on the points, each sorted, listed by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut orbits = Vec::new();
        for start in 1..=d {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                for q in [self.alpha.image(p), self.beta.image(p)] {
                    if !seen[q - 1] {
                        seen[q - 1] = true;
                        orbit.push(q);
                        queue.push_back(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Splits along the orbits of `⟨α, β⟩`. Each constituent is renumbered
    /// order-preservingly to `1..=orbit size` and keeps its cycles in their
    /// original order. A transitive input comes back as a single clone.
    pub fn split_connected_sum(&self) -> Vec<PermutationDataSet> {
        let orbits = self.orbits();
        if orbits.len() == 1 {
            return vec![self.clone()];
        }
        let d = self.degree();
        let mut orbit_of = vec![0; d];
        let mut new_label = vec![0; d];
        for (o, orbit) in orbits.iter().enumerate() {
            for (k, &p) in orbit.iter().enumerate() {
                orbit_of[p - 1] = o;
                new_label[p - 1] = k + 1;
            }
        }
        let restrict = |perm: &CyclePermutation, o: usize| -> Vec<Vec<usize>> {
            perm.cycles()
                .iter()
                .filter(|c| orbit_of[c[0] - 1] == o)
                .map(|c| c.iter().map(|&p| new_label[p - 1]).collect())
                .collect()
        };
        orbits
            .iter()
            .enumerate()
            .map(|(o, orbit)| {
                let signs = orbit.iter().map(|&p| self.epsilon.at(p)).collect();
                PermutationDataSet::new_explicit(orbit.len(), restrict(&self.alpha, o), restrict(&self.beta, o), signs)
                    .expect("orbit restriction is a valid data set")
            })
            .collect()
    }

    /// Same permutations with cycles rotated to their minimum and sorted.
    /// Two data sets are equal as `(α, β, ε)` iff their canonical forms are equal.
    pub fn canonical(&self) -> PermutationDataSet {
        let d = self.degree();
        PermutationDataSet {
            alpha: CyclePermutation::build("alpha", d, self.alpha.canonical_cycles(), true).expect("valid"),
            beta: CyclePermutation::build("beta", d, self.beta.canonical_cycles(), true).expect("valid"),
            epsilon: self.epsilon.clone(),
        }
    }

    /// The data set with the roles of the two curve families exchanged:
    /// `(β, α, -ε)`.
    pub fn swapped(&self) -> PermutationDataSet {
        PermutationDataSet {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            epsilon: IntersectionFunction(self.epsilon.0.iter().map(|s| s.flip()).collect()),
        }
    }
}

impl fmt::Display for PermutationDataSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signs: Vec<String> = self.epsilon.0.iter().map(|s| s.as_i8().to_string()).collect();
        write!(
            f,
            "alpha={} beta={} epsilon=({})",
            self.alpha,
            self.beta,
            signs.join(",")
        )
    }
}

#[derive(Serialize, Deserialize)]
struct DataSetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<usize>,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
    epsilon: Vec<Sign>,
}

impl Serialize for PermutationDataSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        DataSetJson {
            d: Some(self.degree()),
            alpha: self.alpha.cycles.clone(),
            beta: self.beta.cycles.clone(),
            epsilon: self.epsilon.0.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PermutationDataSet {
    /// `d` may be omitted, in which case it is the length of `epsilon`.
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DataSetJson::deserialize(deserializer)?;
        let d = raw.d.unwrap_or(raw.epsilon.len());
        PermutationDataSet::new(d, raw.alpha, raw.beta, raw.epsilon).map_err(serde::de::Error::custom)
    }
}
