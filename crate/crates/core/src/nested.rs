//! Nested matroids: built from the empty matroid by adding isthmuses (`i`)
//! and free extensions (`f`). Their cyclic flats form a chain.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankedFamily};
use crate::minors::MinorSpec;
use crate::poset::is_chain;
use crate::subset::{GroundSet, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Isthmus,
    Free,
}

/// A word over `{i, f}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IFSequence(pub Vec<Step>);

impl IFSequence {
    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All `2^n` words of length `n`, ordered as binary numbers with `i < f`.
    pub fn all_of_length(n: usize) -> Vec<IFSequence> {
        (0..1u64 << n)
            .map(|b| {
                IFSequence(
                    (0..n)
                        .map(|k| {
                            if b >> (n - 1 - k) & 1 == 1 {
                                Step::Free
                            } else {
                                Step::Isthmus
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl FromStr for IFSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'i' => Ok(Step::Isthmus),
                'f' => Ok(Step::Free),
                _ => Err(Error::InvalidParameters(format!(
                    "`{c}` is not a nested step (expected `i` or `f`)"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(IFSequence)
    }
}

impl fmt::Display for IFSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::Isthmus => "i",
                Step::Free => "f",
            })?;
        }
        Ok(())
    }
}

/// Folds the steps over the empty matroid, naming elements `e1`, `e2`, ...
///
/// An isthmus leaves the cyclic flats unchanged. A free extension drops
/// `E(M)` from the flats if present and adjoins `E(M) ∪ e` with rank `r(M)`.
pub fn nested_from_sequence(seq: &IFSequence) -> Matroid {
    let mut flats: Vec<(Subset, usize)> = vec![(Subset::EMPTY, 0)];
    let mut rank = 0;
    for (k, step) in seq.steps().iter().enumerate() {
        let old = Subset::full(k);
        match step {
            Step::Isthmus => rank += 1,
            Step::Free => {
                flats.retain(|&(f, _)| f != old);
                flats.push((old.with(k), rank));
            }
        }
    }
    let ground = GroundSet::new((1..=seq.len()).map(|i| format!("e{i}"))).expect("distinct labels");
    let fam = RankedFamily::new(ground, flats).expect("distinct flats");
    Matroid::new(&fam).expect("nested families satisfy the axioms")
}

/// The chain `X_0 ⊂ ... ⊂ X_m` of a nested matroid with each layer
/// `X_j - X_{j-1}` split into isthmus-added elements `I_j` and freely added
/// elements `F_j`. `I_j` takes the lowest-indexed elements of the layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedDecomposition {
    /// Cyclic flats in increasing order.
    pub chain: Vec<Subset>,
    /// `(I_j, F_j)` for `j = 1..=m`; entry 0 is unused and empty.
    pub layers: Vec<(Subset, Subset)>,
    /// Elements outside the greatest cyclic flat.
    pub coloops: Subset,
}

pub fn nested_decomposition(m: &Matroid) -> Result<NestedDecomposition> {
    if !is_chain(m.flats()) {
        return Err(Error::NotNested);
    }
    // canonical order puts a chain in increasing size
    let chain = m.flats().to_vec();
    let ranks = m.flat_ranks();
    let mut layers = vec![(Subset::EMPTY, Subset::EMPTY)];
    for j in 1..chain.len() {
        let layer: Vec<usize> = (chain[j] - chain[j - 1]).iter().collect();
        let ni = ranks[j] - ranks[j - 1];
        layers.push((
            layer[..ni].iter().copied().collect(),
            layer[ni..].iter().copied().collect(),
        ));
    }
    Ok(NestedDecomposition {
        coloops: m.full() - *chain.last().unwrap(),
        chain,
        layers,
    })
}

/// `f^|X_0|`, then `i^|I_j| f^|F_j|` per layer, then one `i` per element
/// outside the greatest cyclic flat.
pub fn nested_sequence_of(m: &Matroid) -> Result<IFSequence> {
    let d = nested_decomposition(m)?;
    let mut steps = vec![Step::Free; d.chain[0].len()];
    for &(i, f) in &d.layers[1..] {
        steps.extend(std::iter::repeat_n(Step::Isthmus, i.len()));
        steps.extend(std::iter::repeat_n(Step::Free, f.len()));
    }
    steps.extend(std::iter::repeat_n(Step::Isthmus, d.coloops.len()));
    Ok(IFSequence(steps))
}

/// If `small` is a subsequence of `big`, the leftmost embedding and the
/// minor of `nested_from_sequence(big)` that deletes unused `f` elements and
/// contracts unused `i` elements.
pub fn nested_subsequence_minor(
    small: &IFSequence,
    big: &IFSequence,
) -> Option<(Vec<usize>, MinorSpec)> {
    let mut positions = Vec::with_capacity(small.len());
    let mut it = big.steps().iter().enumerate();
    for s in small.steps() {
        let (p, _) = it.by_ref().find(|(_, b)| *b == s)?;
        positions.push(p);
    }
    let mut spec = MinorSpec::default();
    for (p, step) in big.steps().iter().enumerate() {
        if positions.binary_search(&p).is_err() {
            match step {
                Step::Free => spec.delete = spec.delete.with(p),
                Step::Isthmus => spec.contract = spec.contract.with(p),
            }
        }
    }
    Some((positions, spec))
}

/// Minors extracted from a chain of at least `k + 2` cyclic flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformMinor {
    /// `M|X_{k+1} / I_{k+1} \ (X_0 ∪ F_1 ∪ ... ∪ F_{k-1})`, a uniform matroid
    /// of rank at least `k` and nullity at least 2.
    pub spec: MinorSpec,
    pub rank: usize,
    pub nullity: usize,
    /// Further contracts all but one element of each `I_1..I_k` and deletes
    /// all but one element of each of `F_k`, `F_{k+1}`, leaving `U_{k,k+2}`.
    pub trimmed: MinorSpec,
}

pub fn uniform_minor_from_chain(m: &Matroid, k: usize) -> Result<UniformMinor> {
    let d = nested_decomposition(m)?;
    if k == 0 {
        return Err(Error::InvalidParameters("k must be positive".into()));
    }
    if d.chain.len() < k + 2 {
        return Err(Error::ChainTooShort {
            len: d.chain.len(),
            needed: k + 2,
        });
    }
    let outside = m.full() - d.chain[k + 1];
    let contract = d.layers[k + 1].0;
    let delete = (1..k).fold(outside | d.chain[0], |acc, j| acc | d.layers[j].1);
    let spec = MinorSpec { contract, delete };
    let rank = (1..=k).map(|j| d.layers[j].0.len()).sum();
    let nullity = d.layers[k].1.len() + d.layers[k + 1].1.len();

    let all_but_first = |s: Subset| s.first().map_or(s, |f| s.without(f));
    let mut trimmed = spec;
    for j in 1..=k {
        trimmed.contract = trimmed.contract | all_but_first(d.layers[j].0);
    }
    for j in [k, k + 1] {
        trimmed.delete = trimmed.delete | all_but_first(d.layers[j].1);
    }
    Ok(UniformMinor {
        spec,
        rank,
        nullity,
        trimmed,
    })
}
