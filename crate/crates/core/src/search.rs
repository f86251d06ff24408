//! Searching the data sets of a presentation for a closed 3-manifold.
//!
//! Members are visited in enumeration order. The index range is cut into
//! fixed-size chunks that workers scan independently; results are merged by
//! chunk position, so the outcome does not depend on the number of workers.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::boundary::{analyze, AnalysisReport, BoundaryError};
use crate::encode::{ClassMode, EncodeError, EncodingClass};
use crate::permdata::PermutationDataSet;
use crate::presentation::Presentation;

/// Members per work unit.
const CHUNK: u64 = 512;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("analysis of member {member} failed: {source}")]
    Analysis { member: u64, source: BoundaryError },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: ClassMode,
    pub max_members: u64,
    pub parallelism: usize,
    pub first_witness_only: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: ClassMode::Reduced,
            max_members: 1_000_000,
            parallelism: 1,
            first_witness_only: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ClosedWitnessFound,
    NoClosedDiagramInFamily,
    AbortedAtLimit,
}

/// A member all of whose connected-sum constituents are closed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    /// Position in the enumeration.
    pub member: u64,
    pub data_set: PermutationDataSet,
    pub reports: Vec<AnalysisReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub presentation: Presentation,
    pub options: SearchOptions,
    pub class_size_full: BigUint,
    pub class_size_reduced: BigUint,
    pub examined: u64,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
    /// Wall-clock time; not part of the serialized form.
    pub elapsed: Duration,
}

impl SearchResult {
    pub fn class_size(&self) -> &BigUint {
        match self.options.mode {
            ClassMode::Reduced => &self.class_size_reduced,
            ClassMode::Full => &self.class_size_full,
        }
    }
}

struct BigCount<'a>(&'a BigUint);

impl Serialize for BigCount<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SearchResult", 9)?;
        s.serialize_field("presentation", &self.presentation)?;
        s.serialize_field("mode", &self.options.mode.to_string())?;
        s.serialize_field("classSizeFull", &BigCount(&self.class_size_full))?;
        s.serialize_field("classSizeReduced", &BigCount(&self.class_size_reduced))?;
        s.serialize_field("maxMembers", &self.options.max_members)?;
        s.serialize_field("firstWitnessOnly", &self.options.first_witness_only)?;
        s.serialize_field("examined", &self.examined)?;
        s.serialize_field("verdict", &self.verdict)?;
        s.serialize_field("witnesses", &self.witnesses)?;
        s.end()
    }
}

/// Splits into connected-sum constituents and analyzes each, in split order.
pub fn analyze_one(ds: &PermutationDataSet) -> Result<Vec<AnalysisReport>, BoundaryError> {
    ds.split_connected_sum().iter().map(analyze).collect()
}

fn scan(class: &EncodingClass, start: u64, end: u64, stop_at_first: bool) -> Result<Vec<Witness>, SearchError> {
    let mut found = Vec::new();
    for (member, ds) in (start..end).zip(class.iter_from(start)) {
        let reports = analyze_one(&ds).map_err(|source| SearchError::Analysis { member, source })?;
        if reports.iter().all(|r| r.closed) {
            found.push(Witness {
                member,
                data_set: ds,
                reports,
            });
            if stop_at_first {
                break;
            }
        }
    }
    Ok(found)
}

pub fn search_closed(p: &Presentation, opts: &SearchOptions) -> Result<SearchResult, SearchError> {
    let started = Instant::now();
    let class = EncodingClass::new(p, opts.mode)?;
    let class_size_full = EncodingClass::new(p, ClassMode::Full)?.size();
    let class_size_reduced = EncodingClass::new(p, ClassMode::Reduced)?.size();
    let size = class.size();
    let limit = size.to_u64().map_or(opts.max_members, |s| s.min(opts.max_members));

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.parallelism.max(1))
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let chunks: Vec<(u64, u64)> = (0..limit.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(limit)))
        .collect();

    let mut witnesses = Vec::new();
    let mut examined = limit;
    if opts.first_witness_only {
        let batch = opts.parallelism.max(1) * 4;
        for group in chunks.chunks(batch) {
            let results: Vec<Vec<Witness>> = pool.install(|| {
                group
                    .par_iter()
                    .map(|&(s, e)| scan(&class, s, e, true))
                    .collect::<Result<_, _>>()
            })?;
            if let Some(w) = results.into_iter().flatten().next() {
                examined = w.member + 1;
                witnesses.push(w);
                break;
            }
        }
    } else {
        let results: Vec<Vec<Witness>> = pool.install(|| {
            chunks
                .par_iter()
                .map(|&(s, e)| scan(&class, s, e, false))
                .collect::<Result<_, _>>()
        })?;
        witnesses = results.into_iter().flatten().collect();
    }

    let verdict = if !witnesses.is_empty() {
        Verdict::ClosedWitnessFound
    } else if BigUint::from(examined) == size {
        Verdict::NoClosedDiagramInFamily
    } else {
        Verdict::AbortedAtLimit
    };
    Ok(SearchResult {
        presentation: p.clone(),
        options: opts.clone(),
        class_size_full,
        class_size_reduced,
        examined,
        witnesses,
        verdict,
        elapsed: started.elapsed(),
    })
}
