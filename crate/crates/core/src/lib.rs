//! Heegaard diagrams encoded as signed permutation pairs.
//!
//! The pipeline runs presentation → permutation data set → ribbon diagram →
//! boundary analysis:
//!
//! - [`presentation`]: parsing and trivial reduction of finite presentations.
//! - [`permdata`]: the data set `(α, β, ε)`, relabeling and connected-sum splitting.
//! - [`decode`] / [`encode`]: the two directions between presentations and data sets,
//!   including enumeration of every data set that determines a presentation.
//! - [`surface`]: corner flow, boundary components and the genus of the splitting surface.
//! - [`boundary`]: components of `S - X` and `S - Y`, boundary genera and closedness.
//! - [`search`]: looking for a closed manifold among all data sets of a presentation.

pub mod boundary;
pub mod decode;
pub mod encode;
pub mod permdata;
pub mod presentation;
pub mod search;
pub mod surface;

pub use boundary::{analyze, AnalysisReport, Side};
pub use decode::decode;
pub use encode::{class_size, encode_canonical, enumerate_class, ClassMode, EncodingClass};
pub use permdata::PermutationDataSet;
pub use presentation::{parse_presentation, Presentation};
pub use search::{analyze_one, search_closed, SearchOptions, SearchResult, Verdict};
pub use surface::{orbit_partition, surface_summary, Corner};
