//! Reading a presentation off a permutation data set.

use crate::permdata::PermutationDataSet;
use crate::presentation::{Letter, Presentation, Relator};

/// One generator per alpha cycle, one relator per beta cycle. Relator `j`
/// walks `β_j` from its first stored entry and emits `x_{a(p)}^{ε(p)}` for
/// every point `p`. No reduction is performed.
pub fn decode(ds: &PermutationDataSet) -> Presentation {
    let relators = ds
        .beta()
        .cycles()
        .iter()
        .map(|cycle| {
            Relator::new(
                cycle
                    .iter()
                    .map(|&p| Letter::new(ds.generator_of(p), ds.sign(p)))
                    .collect(),
            )
        })
        .collect();
    Presentation::new(ds.alpha().cycle_count(), relators).expect("a-map lands in 1..=c(alpha)")
}
