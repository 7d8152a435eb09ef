//! Ground sets, bit-indexed subsets and families of subsets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set with at most [`MAX_ELEMENTS`] elements.
///
/// The ordering is the canonical one used for every serialized or iterated
/// family: by cardinality first, then lexicographically by sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_ELEMENTS);
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: Self) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `{0, ..., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Indices {
        Indices(self.0)
    }

    /// Remaps member `i` to `map[i]`.
    pub fn map(self, map: &[usize]) -> Self {
        self.iter().fold(Subset::EMPTY, |acc, i| acc.with(map[i]))
    }

    /// All subsets of `self`, in increasing bit order (`EMPTY` first).
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {
                let diff = self.0 ^ other.0;
                if diff == 0 {
                    Ordering::Equal
                } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                    // the smallest differing index belongs to `self`
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Self) -> Subset {
        self.union(rhs)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Self) -> Subset {
        self.intersection(rhs)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Self) -> Subset {
        self.difference(rhs)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

pub struct Indices(u64);

impl Iterator for Indices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

/// Iterates the submasks of a mask.
pub struct SubsetsOf {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing numeric order
            Some((cur.wrapping_sub(self.mask)) & self.mask)
        };
        Some(Subset(cur))
    }
}

/// All `k`-element subsets of `within`, in canonical order.
pub fn k_subsets(within: Subset, k: usize) -> Vec<Subset> {
    let elems: Vec<usize> = within.iter().collect();
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&p| elems[p]).collect());
        // advance the rightmost position that can move
        let n = elems.len();
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - k + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        pos -= 1;
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// An ordered finite set of named elements.
#[derive(Clone, Debug)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for GroundSet {}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(labels.len()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index })
    }

    pub fn empty() -> Self {
        GroundSet {
            labels: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for l in labels {
            let l = l.as_ref();
            match self.index_of(l) {
                Some(i) => s = s.with(i),
                None => {
                    return Err(Error::UnknownLabel {
                        label: l.to_string(),
                        context: String::new(),
                    })
                }
            }
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: Subset) -> Vec<&str> {
        s.iter().map(|i| self.label(i)).collect()
    }

    /// `{a,b,c}`-style rendering, members in ground order.
    pub fn format(&self, s: Subset) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    /// Checks that `s` only uses valid indices.
    pub fn check(&self, s: Subset) -> Result<()> {
        match (s - self.full()).first() {
            Some(i) => Err(Error::IndexOutOfRange(i)),
            None => Ok(()),
        }
    }

    /// Concatenation of two ground sets that share no labels.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        if let Some(l) = other.labels.iter().find(|l| self.contains_label(l)) {
            return Err(Error::OverlappingGroundSets(l.clone()));
        }
        GroundSet::new(self.labels.iter().chain(other.labels.iter()).cloned())
    }

    /// The ground set restricted to `keep`, in the original order, together
    /// with the map from old indices to new ones (`usize::MAX` if dropped).
    pub fn restrict(&self, keep: Subset) -> (GroundSet, Vec<usize>) {
        let mut map = vec![usize::MAX; self.len()];
        let mut labels = Vec::with_capacity(keep.len());
        for i in keep.iter() {
            map[i] = labels.len();
            labels.push(self.labels[i].clone());
        }
        (
            GroundSet::new(labels).expect("restriction keeps labels distinct"),
            map,
        )
    }

    /// First label of the form `e0`, `e1`, ... not present in the ground set.
    pub fn fresh_label(&self) -> String {
        (0..)
            .map(|k| format!("e{k}"))
            .find(|l| !self.contains_label(l))
            .unwrap()
    }
}

/// `a`, `b`, ... for up to 26 elements, otherwise `e1`, `e2`, ...
pub fn default_labels(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n)
            .map(|i| ((b'a' + i as u8) as char).to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("e{i}")).collect()
    }
}

/// A finite collection of distinct subsets of a ground set, kept in
/// canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<Subset>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, sets: impl IntoIterator<Item = Subset>) -> Result<Self> {
        let mut sets: Vec<Subset> = sets.into_iter().collect();
        for &s in &sets {
            ground.check(s)?;
        }
        sets.sort();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet {
                set: ground.format(w[0]),
                context: String::new(),
            });
        }
        Ok(SetFamily { ground, sets })
    }

    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, sets: &[&[S]]) -> Result<Self> {
        let subsets = sets
            .iter()
            .map(|s| ground.subset(s))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(ground, subsets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}
