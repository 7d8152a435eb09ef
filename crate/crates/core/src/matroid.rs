//! Matroids given by their cyclic flats and the ranks of those flats.
//!
//! A ranked family `(Z, r)` describes a matroid exactly when
//!
//! - (Z0) `Z` is a lattice under inclusion,
//! - (Z1) the least member has rank 0,
//! - (Z2) `0 < r(Y) - r(X) < |Y - X|` whenever `X ⊊ Y`,
//! - (Z3) `r(X) + r(Y) >= r(X ∨ Y) + r(X ∧ Y) + |(X ∩ Y) - (X ∧ Y)|`.
//!
//! The rank of an arbitrary set is then `min { r(F) + |A - F| : F ∈ Z }`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{lattice_tables, Bound, LatticeTables};
use crate::subset::{k_subsets, GroundSet, Subset};

/// Default cap on the ground-set size for `2^n` subset enumeration.
pub const DEFAULT_ENUM_CAP: usize = 22;

/// Candidate cyclic flats with ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedFamily {
    ground: GroundSet,
    entries: BTreeMap<Subset, usize>,
}

impl RankedFamily {
    pub fn new(
        ground: GroundSet,
        entries: impl IntoIterator<Item = (Subset, usize)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, r) in entries {
            ground.check(s)?;
            if map.insert(s, r).is_some() {
                return Err(Error::DuplicateSet {
                    set: ground.format(s),
                    context: String::new(),
                });
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(RankedFamily {
            ground,
            entries: map,
        })
    }

    pub fn from_labels<S: AsRef<str>>(
        ground: GroundSet,
        entries: &[(&[S], usize)],
    ) -> Result<Self> {
        let subsets = entries
            .iter()
            .map(|(s, r)| Ok((ground.subset(s)?, *r)))
            .collect::<Result<Vec<_>>>()?;
        RankedFamily::new(ground, subsets)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        self.entries.iter().map(|(&s, &r)| (s, r))
    }

    pub fn rank_of(&self, s: Subset) -> Option<usize> {
        self.entries.get(&s).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Z0,
    Z1,
    Z2,
    Z3,
}

/// A failed axiom with enough data to re-check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// Z0: the pair has no unique meet (or join) in the family.
    NotALattice { x: Subset, y: Subset, bound: Bound },
    /// Z1: the least member has nonzero rank.
    BottomRank { bottom: Subset, rank: usize },
    /// Z2: `lower ⊊ upper` but the rank increase is not strictly between
    /// zero and `|upper - lower|`.
    RankGap {
        lower: Subset,
        upper: Subset,
        lower_rank: usize,
        upper_rank: usize,
    },
    /// Z3: `lhs = r(x) + r(y) < rhs = r(join) + r(meet) + |(x ∩ y) - meet|`.
    Semimodular {
        x: Subset,
        y: Subset,
        join: Subset,
        meet: Subset,
        lhs: usize,
        rhs: usize,
    },
}

impl AxiomViolation {
    pub fn axiom(&self) -> Axiom {
        match self {
            AxiomViolation::NotALattice { .. } => Axiom::Z0,
            AxiomViolation::BottomRank { .. } => Axiom::Z1,
            AxiomViolation::RankGap { .. } => Axiom::Z2,
            AxiomViolation::Semimodular { .. } => Axiom::Z3,
        }
    }

    /// Re-verifies the violation against `family` using only the witness.
    pub fn recheck(&self, family: &RankedFamily) -> bool {
        let sets: Vec<Subset> = family.entries.keys().copied().collect();
        let r = |s: Subset| family.rank_of(s);
        match *self {
            AxiomViolation::NotALattice { x, y, bound } => {
                let cands: Vec<Subset> = match bound {
                    Bound::Meet => sets
                        .iter()
                        .copied()
                        .filter(|z| z.is_subset(x & y))
                        .collect(),
                    Bound::Join => sets
                        .iter()
                        .copied()
                        .filter(|z| (x | y).is_subset(*z))
                        .collect(),
                };
                !cands.iter().any(|&c| {
                    cands.iter().all(|&z| match bound {
                        Bound::Meet => z.is_subset(c),
                        Bound::Join => c.is_subset(z),
                    })
                })
            }
            AxiomViolation::BottomRank { bottom, rank } => {
                r(bottom) == Some(rank) && rank != 0 && sets.iter().all(|s| bottom.is_subset(*s))
            }
            AxiomViolation::RankGap {
                lower,
                upper,
                lower_rank,
                upper_rank,
            } => {
                r(lower) == Some(lower_rank)
                    && r(upper) == Some(upper_rank)
                    && lower.is_proper_subset(upper)
                    && !(lower_rank < upper_rank && upper_rank - lower_rank < (upper - lower).len())
            }
            AxiomViolation::Semimodular {
                x,
                y,
                join,
                meet,
                lhs,
                rhs,
            } => {
                let (Some(rx), Some(ry), Some(rj), Some(rm)) = (r(x), r(y), r(join), r(meet))
                else {
                    return false;
                };
                lhs == rx + ry && rhs == rj + rm + ((x & y) - meet).len() && lhs < rhs
            }
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        let f = |s: Subset| ground.format(s);
        match *self {
            AxiomViolation::NotALattice { x, y, bound } => {
                format!("Z0: {} and {} have no unique {}", f(x), f(y), bound.name())
            }
            AxiomViolation::BottomRank { bottom, rank } => {
                format!("Z1: least member {} has rank {rank}, expected 0", f(bottom))
            }
            AxiomViolation::RankGap {
                lower,
                upper,
                lower_rank,
                upper_rank,
            } => format!(
                "Z2: {} (rank {lower_rank}) ⊊ {} (rank {upper_rank}) needs 0 < {} - {} < {}",
                f(lower),
                f(upper),
                upper_rank,
                lower_rank,
                (upper - lower).len()
            ),
            AxiomViolation::Semimodular {
                x,
                y,
                join,
                meet,
                lhs,
                rhs,
            } => format!(
                "Z3: {} and {} (join {}, meet {}): {lhs} < {rhs}",
                f(x),
                f(y),
                f(join),
                f(meet)
            ),
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?}", self.axiom(), self)
    }
}

impl std::error::Error for AxiomViolation {}

/// A matroid stored as its lattice of cyclic flats with ranks.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground: GroundSet,
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    tables: LatticeTables,
    rank: usize,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.flats == other.flats && self.ranks == other.ranks
    }
}

impl Eq for Matroid {}

/// Checks (Z0)-(Z3) and returns the matroid, or the first violation in
/// canonical order.
pub fn validate(candidate: &RankedFamily) -> std::result::Result<Matroid, AxiomViolation> {
    match check(candidate, true) {
        Ok(m) => Ok(m),
        Err(mut v) => Err(v.remove(0)),
    }
}

/// Every violation, grouped by axiom. Z2/Z3 are only checked once Z0 holds.
pub fn validate_all(candidate: &RankedFamily) -> Vec<AxiomViolation> {
    check(candidate, false).err().unwrap_or_default()
}

fn check(
    candidate: &RankedFamily,
    stop_at_first: bool,
) -> std::result::Result<Matroid, Vec<AxiomViolation>> {
    let flats: Vec<Subset> = candidate.entries.keys().copied().collect();
    let ranks: Vec<usize> = candidate.entries.values().copied().collect();
    let mut found = Vec::new();

    let tables = match lattice_tables(&flats[..]) {
        Ok(t) => t,
        Err(e) => {
            return Err(vec![AxiomViolation::NotALattice {
                x: flats[e.x],
                y: flats[e.y],
                bound: e.bound,
            }])
        }
    };

    macro_rules! report {
        ($v:expr) => {{
            found.push($v);
            if stop_at_first {
                return Err(found);
            }
        }};
    }

    if ranks[tables.bottom] != 0 {
        report!(AxiomViolation::BottomRank {
            bottom: flats[tables.bottom],
            rank: ranks[tables.bottom],
        });
    }

    let n = flats.len();
    for i in 0..n {
        for j in 0..n {
            if flats[i].is_proper_subset(flats[j]) {
                let (ri, rj) = (ranks[i], ranks[j]);
                if !(ri < rj && rj - ri < (flats[j] - flats[i]).len()) {
                    report!(AxiomViolation::RankGap {
                        lower: flats[i],
                        upper: flats[j],
                        lower_rank: ri,
                        upper_rank: rj,
                    });
                }
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            let (jn, mt) = (tables.join[i][j], tables.meet[i][j]);
            let lhs = ranks[i] + ranks[j];
            let rhs = ranks[jn] + ranks[mt] + ((flats[i] & flats[j]) - flats[mt]).len();
            if lhs < rhs {
                report!(AxiomViolation::Semimodular {
                    x: flats[i],
                    y: flats[j],
                    join: flats[jn],
                    meet: flats[mt],
                    lhs,
                    rhs,
                });
            }
        }
    }

    if !found.is_empty() {
        return Err(found);
    }
    let full = candidate.ground.full();
    let rank = flats
        .iter()
        .zip(&ranks)
        .map(|(&f, &r)| r + (full - f).len())
        .min()
        .unwrap();
    Ok(Matroid {
        ground: candidate.ground.clone(),
        flats,
        ranks,
        tables,
        rank,
    })
}

/// Rank, nullity, loops, isthmuses and the number of cyclic flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicStats {
    pub rank: usize,
    pub nullity: usize,
    pub loops: Subset,
    pub isthmuses: Subset,
    pub cyclic_flats: usize,
}

impl Matroid {
    /// Validates a ranked family, mapping violations into [`Error::Axiom`].
    pub fn new(family: &RankedFamily) -> Result<Matroid> {
        validate(family).map_err(Error::Axiom)
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S], flats: &[(&[S], usize)]) -> Result<Matroid> {
        let ground = GroundSet::new(labels.iter().map(|s| s.as_ref().to_string()))?;
        Matroid::new(&RankedFamily::from_labels(ground, flats)?)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    /// Cyclic flats in canonical order.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn flat_ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn cyclic_flats(&self) -> impl Iterator<Item = (Subset, usize)> + '_ {
        self.flats.iter().copied().zip(self.ranks.iter().copied())
    }

    pub fn flat_index(&self, s: Subset) -> Option<usize> {
        self.flats.binary_search(&s).ok()
    }

    pub fn tables(&self) -> &LatticeTables {
        &self.tables
    }

    /// Least cyclic flat, the set of loops.
    pub fn bottom(&self) -> Subset {
        self.flats[self.tables.bottom]
    }

    /// Greatest cyclic flat, the complement of the isthmuses.
    pub fn top(&self) -> Subset {
        self.flats[self.tables.top]
    }

    pub fn to_family(&self) -> RankedFamily {
        RankedFamily {
            ground: self.ground.clone(),
            entries: self.cyclic_flats().collect(),
        }
    }

    /// r(M).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// |E| - r(M).
    pub fn nullity(&self) -> usize {
        self.size() - self.rank
    }

    /// `min { r(F) + |A - F| : F cyclic }`.
    pub fn rank_of(&self, a: Subset) -> usize {
        self.flats
            .iter()
            .zip(&self.ranks)
            .map(|(&f, &r)| r + (a - f).len())
            .min()
            .unwrap()
    }

    pub fn nullity_of(&self, a: Subset) -> usize {
        a.len() - self.rank_of(a)
    }

    /// `|I ∩ X| <= r(X)` for every cyclic flat `X`.
    pub fn is_independent(&self, i: Subset) -> bool {
        self.cyclic_flats().all(|(x, r)| (i & x).len() <= r)
    }

    pub fn is_circuit(&self, c: Subset) -> bool {
        !c.is_empty()
            && !self.is_independent(c)
            && c.iter().all(|e| self.is_independent(c.without(e)))
    }

    /// Circuits in canonical order.
    ///
    /// Candidates are the `(r(X)+1)`-subsets of cyclic flats `X`; every
    /// dependent set contains one, so the minimal candidates are exactly the
    /// circuits.
    pub fn circuits(&self) -> Vec<Subset> {
        let mut out = BTreeSet::new();
        for (x, r) in self.cyclic_flats() {
            if x.len() <= r {
                continue;
            }
            for c in k_subsets(x, r + 1) {
                if !out.contains(&c) && c.iter().all(|e| self.is_independent(c.without(e))) {
                    out.insert(c);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn closure(&self, a: Subset) -> Subset {
        let r = self.rank_of(a);
        (self.full() - a)
            .iter()
            .filter(|&x| self.rank_of(a.with(x)) == r)
            .fold(a, |acc, x| acc.with(x))
    }

    pub fn is_flat(&self, a: Subset) -> bool {
        self.closure(a) == a
    }

    /// Recomputes the cyclic flats by enumerating every subset.
    pub fn cyclic_flats_recompute(&self) -> Result<RankedFamily> {
        self.cyclic_flats_recompute_with_cap(DEFAULT_ENUM_CAP)
    }

    pub fn cyclic_flats_recompute_with_cap(&self, cap: usize) -> Result<RankedFamily> {
        cyclic_flats_from_rank(&self.ground, |a| self.rank_of(a), cap)
    }

    pub fn basic_stats(&self) -> BasicStats {
        let full = self.full();
        let isthmuses = full
            .iter()
            .filter(|&x| self.rank_of(full.without(x)) + 1 == self.rank)
            .collect();
        BasicStats {
            rank: self.rank,
            nullity: self.nullity(),
            loops: self.bottom(),
            isthmuses,
            cyclic_flats: self.flats.len(),
        }
    }

    /// The same matroid over a reordering of its ground set.
    pub fn reindexed(&self, ground: GroundSet) -> Result<Matroid> {
        let mut map = Vec::with_capacity(self.size());
        for l in self.ground.labels() {
            match ground.index_of(l) {
                Some(i) => map.push(i),
                None => {
                    return Err(Error::UnknownLabel {
                        label: l.clone(),
                        context: "reindex".into(),
                    })
                }
            }
        }
        if ground.len() != self.size() {
            return Err(Error::InvalidParameters(
                "reindex must be a bijection".into(),
            ));
        }
        let fam = RankedFamily::new(ground, self.cyclic_flats().map(|(f, r)| (f.map(&map), r)))?;
        Matroid::new(&fam)
    }
}

/// Rank of every subset of `{0..n}`, indexed by bit pattern.
pub fn rank_table(n: usize, rank: impl Fn(Subset) -> usize, cap: usize) -> Result<Vec<u8>> {
    if n > cap {
        return Err(Error::GroundSetTooLarge { size: n, cap });
    }
    Ok((0..1u64 << n)
        .map(|b| rank(Subset::from_bits(b)) as u8)
        .collect())
}

/// The cyclic flats of the matroid with rank function `rank`: the closed
/// sets whose restriction has no isthmus.
pub fn cyclic_flats_from_rank(
    ground: &GroundSet,
    rank: impl Fn(Subset) -> usize,
    cap: usize,
) -> Result<RankedFamily> {
    let n = ground.len();
    let table = rank_table(n, rank, cap)?;
    let full = Subset::full(n).bits();
    let mut out = Vec::new();
    for (b, &r) in table.iter().enumerate() {
        let b = b as u64;
        let s = Subset::from_bits(b);
        let closed = Subset::from_bits(full & !b)
            .iter()
            .all(|x| table[(b | 1 << x) as usize] > r);
        if closed && s.iter().all(|x| table[(b & !(1 << x)) as usize] == r) {
            out.push((s, r as usize));
        }
    }
    RankedFamily::new(ground.clone(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u24() -> Matroid {
        Matroid::from_labels(
            &["a", "b", "c", "d"],
            &[(&[], 0), (&["a", "b", "c", "d"], 2)],
        )
        .unwrap()
    }

    fn mk4_family() -> RankedFamily {
        let g = GroundSet::new(["12", "13", "14", "23", "24", "34"]).unwrap();
        RankedFamily::from_labels(
            g,
            &[
                (&[][..], 0),
                (&["12", "13", "23"][..], 2),
                (&["12", "14", "24"][..], 2),
                (&["13", "14", "34"][..], 2),
                (&["23", "24", "34"][..], 2),
                (&["12", "13", "14", "23", "24", "34"][..], 3),
            ],
        )
        .unwrap()
    }

    fn graphic_k4_rank(g: &GroundSet, a: Subset) -> usize {
        let mut parent: Vec<usize> = (0..5).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut rank = 0;
        for e in a.iter() {
            let l = g.label(e).as_bytes();
            let (u, v) = ((l[0] - b'0') as usize, (l[1] - b'0') as usize);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
                rank += 1;
            }
        }
        rank
    }

    #[test]
    fn u24_valid() {
        let m = u24();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_of(Subset::from_indices([0, 1, 2])), 2);
    }

    #[test]
    fn z2_boundary_rejected() {
        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let fam =
            RankedFamily::from_labels(g, &[(&[][..], 0), (&["a", "b", "c", "d"][..], 4)]).unwrap();
        let v = validate(&fam).unwrap_err();
        assert_eq!(v.axiom(), Axiom::Z2);
        assert!(v.recheck(&fam));
    }

    #[test]
    fn z1_and_z0_rejected() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let fam = RankedFamily::from_labels(g.clone(), &[(&["a"][..], 1)]).unwrap();
        let v = validate(&fam).unwrap_err();
        assert_eq!(v.axiom(), Axiom::Z1);
        assert!(v.recheck(&fam));
        let fam = RankedFamily::from_labels(g, &[(&["a"][..], 0), (&["b"][..], 0)]).unwrap();
        let v = validate(&fam).unwrap_err();
        assert_eq!(v.axiom(), Axiom::Z0);
        assert!(v.recheck(&fam));
    }

    #[test]
    fn z3_rejected_and_all_violations_listed() {
        // two rank-2 planes through {a,b,c,d} sharing a free pair
        let g = GroundSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let fam = RankedFamily::from_labels(
            g,
            &[
                (&[][..], 0),
                (&["a", "b", "c"][..], 1),
                (&["a", "b", "d"][..], 1),
                (&["a", "b", "c", "d", "e", "f"][..], 2),
            ],
        )
        .unwrap();
        let v = validate(&fam).unwrap_err();
        assert_eq!(v.axiom(), Axiom::Z3);
        assert!(v.recheck(&fam));
        let all = validate_all(&fam);
        assert!(!all.is_empty());
        assert!(all.iter().all(|v| v.recheck(&fam)));
    }

    #[test]
    fn mk4_matches_graphic_rank() {
        let fam = mk4_family();
        let m = validate(&fam).unwrap();
        for a in m.full().subsets() {
            assert_eq!(m.rank_of(a), graphic_k4_rank(m.ground(), a), "{a:?}");
        }
        let tri = m.ground().subset(&["12", "13", "23"]).unwrap();
        assert_eq!(m.rank_of(tri), 2);
    }

    #[test]
    fn independence() {
        let m = u24();
        assert!(m.is_independent(Subset::from_indices([0, 1])));
        assert!(!m.is_independent(Subset::from_indices([0, 1, 2])));
        let loopy = Matroid::from_labels(&["x", "y"], &[(&["x"], 0)]).unwrap();
        assert!(!loopy.is_independent(Subset::singleton(0)));
        assert!(loopy.is_independent(Subset::singleton(1)));
    }

    #[test]
    fn circuits_examples() {
        assert_eq!(u24().circuits(), k_subsets(Subset::full(4), 3));
        let free = Matroid::from_labels(&["a", "b", "c"], &[(&[], 0)]).unwrap();
        assert!(free.circuits().is_empty());
        let lp = Matroid::from_labels(&["x"], &[(&["x"], 0)]).unwrap();
        assert_eq!(lp.circuits(), vec![Subset::singleton(0)]);
    }

    #[test]
    fn closure_examples() {
        let m = u24();
        assert_eq!(m.closure(Subset::from_indices([0, 1])), m.full());
        assert_eq!(m.closure(Subset::singleton(2)), Subset::singleton(2));
        let lp = Matroid::from_labels(&["x", "y"], &[(&["x"], 0)]).unwrap();
        assert_eq!(lp.closure(Subset::EMPTY), Subset::singleton(0));
    }

    #[test]
    fn recompute_examples() {
        let m = u24();
        assert_eq!(m.cyclic_flats_recompute().unwrap(), m.to_family());
        let fam = mk4_family();
        let m = validate(&fam).unwrap();
        assert_eq!(m.cyclic_flats_recompute().unwrap(), fam);
        let coloops = Matroid::from_labels(&["a", "b"], &[(&[], 0)]).unwrap();
        assert_eq!(
            coloops.cyclic_flats_recompute().unwrap(),
            coloops.to_family()
        );
        assert!(matches!(
            m.cyclic_flats_recompute_with_cap(5),
            Err(Error::GroundSetTooLarge { size: 6, cap: 5 })
        ));
    }

    #[test]
    fn stats_examples() {
        let s = u24().basic_stats();
        assert_eq!((s.rank, s.nullity, s.cyclic_flats), (2, 2, 2));
        assert!(s.loops.is_empty() && s.isthmuses.is_empty());
        let coloop = Matroid::from_labels(&["a"], &[(&[], 0)]).unwrap();
        let s = coloop.basic_stats();
        assert_eq!(s.rank, 1);
        assert_eq!(s.isthmuses, Subset::singleton(0));
        let lp = Matroid::from_labels(&["a"], &[(&["a"], 0)]).unwrap();
        let s = lp.basic_stats();
        assert_eq!(s.rank, 0);
        assert_eq!(s.loops, Subset::singleton(0));
    }

    #[test]
    fn unknown_label_is_input_error() {
        let g = GroundSet::new(["a"]).unwrap();
        assert!(matches!(
            RankedFamily::from_labels(g, &[(&["zz"][..], 0)]),
            Err(Error::UnknownLabel { .. })
        ));
    }
}
