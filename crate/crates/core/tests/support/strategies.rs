#![allow(dead_code)]

use heegaard_core::permdata::{CyclePermutation, PermutationDataSet};
use heegaard_core::presentation::{Letter, Presentation, Relator, Sign};
use proptest::prelude::*;

fn shuffled(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=d).collect::<Vec<_>>()).prop_shuffle()
}

/// Cycles of a random permutation, each rotated by a random offset and the
/// cycle list optionally reversed, so stored forms are not canonical.
fn cycles_of(images: &[usize], offsets: &[usize], reverse: bool) -> Vec<Vec<usize>> {
    let perm = CyclePermutation::from_images(images).unwrap();
    let mut cycles: Vec<Vec<usize>> = perm
        .cycles()
        .iter()
        .zip(offsets.iter().cycle())
        .map(|(c, &off)| {
            let mut c = c.clone();
            let len = c.len();
            c.rotate_left(off % len);
            c
        })
        .collect();
    if reverse {
        cycles.reverse();
    }
    cycles
}

/// Random `(α, β, ε)` of degree `1..=max_d`, plus a random relabeling.
pub fn data_set_and_sigma(max_d: usize) -> impl Strategy<Value = (PermutationDataSet, Vec<usize>)> {
    (1..=max_d).prop_flat_map(|d| {
        (
            shuffled(d),
            shuffled(d),
            proptest::collection::vec(any::<bool>(), d),
            shuffled(d),
            proptest::collection::vec(0usize..10, d),
            any::<(bool, bool)>(),
        )
            .prop_map(move |(a, b, signs, sigma, offsets, (ra, rb))| {
                let signs = signs
                    .into_iter()
                    .map(|s| if s { Sign::Pos } else { Sign::Neg })
                    .collect();
                let ds = PermutationDataSet::new(d, cycles_of(&a, &offsets, ra), cycles_of(&b, &offsets, rb), signs)
                    .unwrap();
                (ds, sigma)
            })
    })
}

pub fn data_set(max_d: usize) -> impl Strategy<Value = PermutationDataSet> {
    data_set_and_sigma(max_d).prop_map(|(ds, _)| ds)
}

/// Trivially reduced presentations with every generator used and no empty
/// relator. Total length at most `max_letters` before repair.
pub fn encodable_presentation(
    max_gens: usize,
    max_relators: usize,
    max_len: usize,
) -> impl Strategy<Value = Presentation> {
    (1..=max_gens, 1..=max_relators).prop_flat_map(move |(m, n)| {
        proptest::collection::vec(proptest::collection::vec((1..=m, any::<bool>()), 1..=max_len), n).prop_map(
            move |raw| {
                let mut relators: Vec<Relator> = raw
                    .into_iter()
                    .map(|word| {
                        Relator::new(
                            word.into_iter()
                                .map(|(g, s)| Letter::new(g, if s { Sign::Pos } else { Sign::Neg }))
                                .collect(),
                        )
                        .trivially_reduced()
                    })
                    .map(|r| {
                        if r.is_empty() {
                            Relator::new(vec![Letter::pos(1)])
                        } else {
                            r
                        }
                    })
                    .collect();
                let used: Vec<bool> = (1..=m)
                    .map(|g| relators.iter().any(|r| r.letters.iter().any(|l| l.gen.index() == g)))
                    .collect();
                for (g, &u) in used.iter().enumerate() {
                    if !u {
                        relators.last_mut().unwrap().letters.push(Letter::pos(g + 1));
                    }
                }
                Presentation::new(m, relators).unwrap()
            },
        )
    })
}
