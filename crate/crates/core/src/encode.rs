//! From a presentation to permutation data sets.
//!
//! Generator `x_i` with `k_i` occurrences owns the consecutive label block
//! `α_i = (K_i + 1, ..., K_i + k_i)`. A member of the class is a choice, for
//! every occurrence of `x_i` (relators scanned in order, letters left to
//! right), of a distinct label from `α_i`. The choice for an occurrence is
//! recorded as a digit: its rank among the block's still-free labels. The
//! digit vectors in lexicographic order give the enumeration order, with the
//! all-zero vector (lowest unused label every time) as the canonical member.
//!
//! Rotating the labels of one block is a relabeling that commutes with
//! `alpha`, so in [`ClassMode::Reduced`] the first occurrence of each
//! generator is pinned to the block minimum.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::permdata::PermutationDataSet;
use crate::presentation::{Diagnostic, Presentation, Sign};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ClassMode {
    /// First occurrence of each generator pinned to its block minimum.
    #[default]
    Reduced,
    /// Every bijection from occurrences to block labels.
    Full,
}

impl fmt::Display for ClassMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassMode::Reduced => "reduced",
            ClassMode::Full => "full",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("presentation cannot be encoded: {}", list(.0))]
    Invalid(Vec<Diagnostic>),
}

fn list(diags: &[Diagnostic]) -> String {
    diags.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Clone, Copy, Debug)]
struct Occurrence {
    block: usize,
    sign: Sign,
}

/// The class of degree-`d` data sets for a presentation, in one of the two
/// [`ClassMode`]s. Cheap to clone.
#[derive(Clone, Debug)]
pub struct EncodingClass {
    base: Presentation,
    mode: ClassMode,
    counts: Vec<usize>,
    block_start: Vec<usize>,
    occurrences: Vec<Occurrence>,
    relator_lengths: Vec<usize>,
    radices: Vec<usize>,
}

impl EncodingClass {
    pub fn new(p: &Presentation, mode: ClassMode) -> Result<Self, EncodeError> {
        let diags = p.validate_for_encoding();
        if !diags.is_empty() {
            return Err(EncodeError::Invalid(diags));
        }
        let counts = p.occurrence_counts();
        let mut block_start = Vec::with_capacity(counts.len());
        let mut next = 1;
        for &k in &counts {
            block_start.push(next);
            next += k;
        }
        let mut used = vec![0usize; counts.len()];
        let mut occurrences = Vec::with_capacity(p.degree());
        let mut radices = Vec::with_capacity(p.degree());
        for relator in p.relators() {
            for letter in &relator.letters {
                let block = letter.gen.index() - 1;
                let free = counts[block] - used[block];
                let pinned = mode == ClassMode::Reduced && used[block] == 0;
                radices.push(if pinned { 1 } else { free });
                used[block] += 1;
                occurrences.push(Occurrence {
                    block,
                    sign: letter.sign,
                });
            }
        }
        Ok(EncodingClass {
            base: p.clone(),
            mode,
            counts,
            block_start,
            occurrences,
            relator_lengths: p.relators().iter().map(|r| r.len()).collect(),
            radices,
        })
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn mode(&self) -> ClassMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.occurrences.len()
    }

    /// `k_1, ..., k_m`.
    pub fn occurrence_counts(&self) -> &[usize] {
        &self.counts
    }

    /// The fixed alpha cycles shared by every member.
    pub fn alpha_blocks(&self) -> Vec<Vec<usize>> {
        self.block_start
            .iter()
            .zip(&self.counts)
            .map(|(&start, &k)| (start..start + k).collect())
            .collect()
    }

    /// Number of choices at each occurrence, in scan order.
    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    /// Number of members in this mode: `Π k_i!` (full) or `Π (k_i - 1)!` (reduced).
    pub fn size(&self) -> BigUint {
        self.radices
            .iter()
            .fold(BigUint::one(), |acc, &r| acc * BigUint::from(r))
    }

    pub fn size_u64(&self) -> Option<u64> {
        self.size().to_u64()
    }

    /// Member for a digit vector (one digit per occurrence, `digit < radix`).
    pub fn member(&self, digits: &[usize]) -> PermutationDataSet {
        assert_eq!(digits.len(), self.occurrences.len(), "one digit per occurrence");
        let mut free: Vec<Vec<usize>> = self.alpha_blocks();
        let mut labels = Vec::with_capacity(self.degree());
        let mut signs = vec![Sign::Pos; self.degree()];
        for ((occ, &digit), &radix) in self.occurrences.iter().zip(digits).zip(&self.radices) {
            assert!(digit < radix, "digit {digit} out of range {radix}");
            let label = free[occ.block].remove(digit);
            signs[label - 1] = occ.sign;
            labels.push(label);
        }
        let mut beta = Vec::with_capacity(self.relator_lengths.len());
        let mut rest = labels.as_slice();
        for &len in &self.relator_lengths {
            let (cycle, tail) = rest.split_at(len);
            beta.push(cycle.to_vec());
            rest = tail;
        }
        PermutationDataSet::new_explicit(self.degree(), self.alpha_blocks(), beta, signs)
            .expect("class members are valid data sets")
    }

    /// The member built with the lowest unused label every time.
    pub fn canonical(&self) -> PermutationDataSet {
        self.member(&vec![0; self.degree()])
    }

    /// Digit vector of the member at position `index` of the enumeration,
    /// or `None` past the end.
    pub fn digits_at(&self, mut index: u64) -> Option<Vec<usize>> {
        let mut digits = vec![0; self.radices.len()];
        for (slot, &radix) in digits.iter_mut().zip(&self.radices).rev() {
            let radix = radix as u64;
            *slot = (index % radix) as usize;
            index /= radix;
        }
        (index == 0).then_some(digits)
    }

    pub fn member_at(&self, index: u64) -> Option<PermutationDataSet> {
        self.digits_at(index).map(|d| self.member(&d))
    }

    /// All members in enumeration order.
    pub fn iter(&self) -> Members {
        self.iter_from(0)
    }

    /// Members starting at position `start`.
    pub fn iter_from(&self, start: u64) -> Members {
        Members {
            class: self.clone(),
            digits: self.digits_at(start),
        }
    }
}

/// Streaming cursor over an [`EncodingClass`]; holds one digit vector.
#[derive(Clone, Debug)]
pub struct Members {
    class: EncodingClass,
    digits: Option<Vec<usize>>,
}

impl Members {
    fn advance(&mut self) {
        let Some(digits) = self.digits.as_mut() else { return };
        for pos in (0..digits.len()).rev() {
            if digits[pos] + 1 < self.class.radices[pos] {
                digits[pos] += 1;
                digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
                return;
            }
        }
        self.digits = None;
    }
}

impl Iterator for Members {
    type Item = PermutationDataSet;

    fn next(&mut self) -> Option<PermutationDataSet> {
        let member = self.class.member(self.digits.as_ref()?);
        self.advance();
        Some(member)
    }
}

/// Encodes with the lowest-unused-label convention.
pub fn encode_canonical(p: &Presentation) -> Result<PermutationDataSet, EncodeError> {
    Ok(EncodingClass::new(p, ClassMode::Full)?.canonical())
}

pub fn class_size(p: &Presentation, mode: ClassMode) -> Result<BigUint, EncodeError> {
    Ok(EncodingClass::new(p, mode)?.size())
}

pub fn enumerate_class(p: &Presentation, mode: ClassMode) -> Result<Members, EncodeError> {
    Ok(EncodingClass::new(p, mode)?.iter())
}
