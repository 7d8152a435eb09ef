//! Finite posets and lattices: meet/join tables, chains, width and
//! order isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::subset::{SetFamily, Subset};

/// A finite partially ordered set on `0..size()`.
pub trait Poset {
    fn size(&self) -> usize;
    fn leq(&self, a: usize, b: usize) -> bool;

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }
}

impl Poset for [Subset] {
    fn size(&self) -> usize {
        self.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self[a].is_subset(self[b])
    }
}

impl Poset for SetFamily {
    fn size(&self) -> usize {
        self.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.sets().leq(a, b)
    }
}

/// The order dual of a poset.
pub struct Reversed<'a, P: ?Sized>(pub &'a P);

impl<P: Poset + ?Sized> Poset for Reversed<'_, P> {
    fn size(&self) -> usize {
        self.0.size()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.0.leq(b, a)
    }
}

/// Which bound is missing in a failed lattice check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl Bound {
    pub fn name(self) -> &'static str {
        match self {
            Bound::Meet => "meet",
            Bound::Join => "join",
        }
    }
}

/// A pair of elements without a unique meet or join.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonLatticePair {
    pub x: usize,
    pub y: usize,
    pub bound: Bound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

fn greatest_of<P: Poset + ?Sized>(p: &P, cands: &[usize]) -> Option<usize> {
    let mut best = *cands.first()?;
    for &z in &cands[1..] {
        if p.leq(best, z) {
            best = z;
        }
    }
    cands.iter().all(|&z| p.leq(z, best)).then_some(best)
}

fn least_of<P: Poset + ?Sized>(p: &P, cands: &[usize]) -> Option<usize> {
    greatest_of(&Reversed(p), cands)
}

/// Meet and join tables of a nonempty poset, or the first pair (in index
/// order) lacking a unique meet or join.
pub fn lattice_tables<P: Poset + ?Sized>(
    p: &P,
) -> std::result::Result<LatticeTables, NonLatticePair> {
    let n = p.size();
    assert!(n > 0, "lattice check on an empty poset");
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    let mut scratch = Vec::with_capacity(n);
    for x in 0..n {
        meet[x][x] = x;
        join[x][x] = x;
        for y in x + 1..n {
            scratch.clear();
            scratch.extend((0..n).filter(|&z| p.leq(z, x) && p.leq(z, y)));
            let m = greatest_of(p, &scratch).ok_or(NonLatticePair {
                x,
                y,
                bound: Bound::Meet,
            })?;
            scratch.clear();
            scratch.extend((0..n).filter(|&z| p.leq(x, z) && p.leq(y, z)));
            let j = least_of(p, &scratch).ok_or(NonLatticePair {
                x,
                y,
                bound: Bound::Join,
            })?;
            meet[x][y] = m;
            meet[y][x] = m;
            join[x][y] = j;
            join[y][x] = j;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let bottom = least_of(p, &all).expect("pairwise meets give a least element");
    let top = greatest_of(p, &all).expect("pairwise joins give a greatest element");
    Ok(LatticeTables {
        meet,
        join,
        bottom,
        top,
    })
}

/// Lattice check for a family of sets ordered by inclusion. Meet and join
/// are computed inside the family; they need not be intersection and union.
pub fn family_lattice_tables(
    family: &SetFamily,
) -> std::result::Result<LatticeTables, NonLatticePair> {
    lattice_tables(family.sets())
}

/// True iff the members are pairwise comparable.
pub fn is_chain<P: Poset + ?Sized>(p: &P) -> bool {
    let n = p.size();
    (0..n).all(|a| (a + 1..n).all(|b| p.comparable(a, b)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WidthMethod {
    /// Minimum chain cover through bipartite matching.
    #[default]
    Matching,
    /// Exhaustive antichain search.
    BruteForce,
}

/// Size of a largest antichain.
pub fn width<P: Poset + ?Sized>(p: &P) -> usize {
    width_with(p, WidthMethod::Matching)
}

pub fn width_with<P: Poset + ?Sized>(p: &P, method: WidthMethod) -> usize {
    match method {
        WidthMethod::Matching => p.size() - max_comparability_matching(p),
        WidthMethod::BruteForce => brute_force_width(p),
    }
}

pub fn width_of_family(family: &SetFamily) -> usize {
    width(family)
}

/// Maximum matching in the bipartite graph with an edge `a -> b` whenever
/// `a < b`. By Dilworth, `size - matching` is the width.
fn max_comparability_matching<P: Poset + ?Sized>(p: &P) -> usize {
    let n = p.size();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&b| p.lt(a, b)).collect())
        .collect();
    let mut owner = vec![usize::MAX; n];
    let mut matched = 0;
    for a in 0..n {
        let mut seen = vec![false; n];
        if augment(a, &adj, &mut owner, &mut seen) {
            matched += 1;
        }
    }
    matched
}

fn augment(a: usize, adj: &[Vec<usize>], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &b in &adj[a] {
        if seen[b] {
            continue;
        }
        seen[b] = true;
        if owner[b] == usize::MAX || augment(owner[b], adj, owner, seen) {
            owner[b] = a;
            return true;
        }
    }
    false
}

fn brute_force_width<P: Poset + ?Sized>(p: &P) -> usize {
    fn go<P: Poset + ?Sized>(p: &P, next: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        *best = (*best).max(chosen.len());
        if chosen.len() + (p.size() - next) <= *best {
            return;
        }
        for c in next..p.size() {
            if chosen.iter().all(|&a| !p.comparable(a, c)) {
                chosen.push(c);
                go(p, c + 1, chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = 0;
    go(p, 0, &mut Vec::new(), &mut best);
    best
}

/// Per-element invariants preserved by order isomorphisms.
fn invariants<P: Poset + ?Sized>(p: &P) -> Vec<(usize, usize, usize)> {
    let n = p.size();
    let below: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| p.lt(y, x)).count())
        .collect();
    let above: Vec<usize> = (0..n)
        .map(|x| (0..n).filter(|&y| p.lt(x, y)).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| below[x]);
    let mut height = vec![0; n];
    for &x in &order {
        height[x] = (0..n)
            .filter(|&y| p.lt(y, x))
            .map(|y| height[y] + 1)
            .max()
            .unwrap_or(0);
    }
    (0..n).map(|x| (below[x], above[x], height[x])).collect()
}

/// An order isomorphism `p -> q` given as `map[i]` for each element `i` of
/// `p`, or `None` if the posets are not isomorphic.
pub fn poset_isomorphism<P: Poset + ?Sized, Q: Poset + ?Sized>(p: &P, q: &Q) -> Option<Vec<usize>> {
    let n = p.size();
    if n != q.size() {
        return None;
    }
    let ip = invariants(p);
    let iq = invariants(q);
    let mut sp = ip.clone();
    let mut sq = iq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (ip[x].0, x));

    struct Search<'a, P: ?Sized, Q: ?Sized> {
        p: &'a P,
        q: &'a Q,
        ip: Vec<(usize, usize, usize)>,
        iq: Vec<(usize, usize, usize)>,
        order: Vec<usize>,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl<P: Poset + ?Sized, Q: Poset + ?Sized> Search<'_, P, Q> {
        fn go(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let x = self.order[depth];
            for y in 0..self.q.size() {
                if self.used[y] || self.iq[y] != self.ip[x] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&a| {
                    let b = self.map[a];
                    self.p.leq(a, x) == self.q.leq(b, y) && self.p.leq(x, a) == self.q.leq(y, b)
                });
                if !consistent {
                    continue;
                }
                self.map[x] = y;
                self.used[y] = true;
                if self.go(depth + 1) {
                    return true;
                }
                self.used[y] = false;
            }
            false
        }
    }

    let mut s = Search {
        p,
        q,
        ip,
        iq,
        order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    s.go(0).then_some(s.map)
}

pub fn poset_isomorphic<P: Poset + ?Sized, Q: Poset + ?Sized>(p: &P, q: &Q) -> bool {
    poset_isomorphism(p, q).is_some()
}

/// An abstract finite lattice with named elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
    tables: LatticeTables,
}

impl Poset for FiniteLattice {
    fn size(&self) -> usize {
        self.names.len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }
}

impl FiniteLattice {
    /// Builds a lattice from a reflexive, transitive, antisymmetric relation.
    fn from_order(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        struct Rel<'a>(&'a [Vec<bool>]);
        impl Poset for Rel<'_> {
            fn size(&self) -> usize {
                self.0.len()
            }
            fn leq(&self, a: usize, b: usize) -> bool {
                self.0[a][b]
            }
        }
        if names.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let tables = lattice_tables(&Rel(&leq)).map_err(|e| Error::NotALattice {
            x: names[e.x].clone(),
            y: names[e.y].clone(),
            bound: e.bound.name(),
        })?;
        Ok(FiniteLattice { names, leq, tables })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.tables.bottom
    }

    pub fn top(&self) -> usize {
        self.tables.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.tables.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.tables.join[a][b]
    }

    pub fn tables(&self) -> &LatticeTables {
        &self.tables
    }

    /// Cover pairs `(lower, upper)` in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Builds a lattice from element names and cover pairs `(lower, upper)`;
/// the order is the reflexive-transitive closure of the covers.
pub fn lattice_from_covers<S: AsRef<str>>(
    elements: &[S],
    covers: &[(S, S)],
) -> Result<FiniteLattice> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(n.clone()));
        }
    }
    let lookup = |s: &S| {
        index
            .get(s.as_ref())
            .copied()
            .ok_or_else(|| Error::UnknownName(s.as_ref().to_string()))
    };
    let n = names.len();
    let mut up = vec![Vec::new(); n];
    for (lo, hi) in covers {
        let (lo, hi) = (lookup(lo)?, lookup(hi)?);
        up[lo].push(hi);
    }
    // reachability by depth-first search; a path back to the start is a cycle
    let mut leq = vec![vec![false; n]; n];
    for s in 0..n {
        leq[s][s] = true;
        let mut stack = up[s].clone();
        while let Some(v) = stack.pop() {
            if v == s {
                return Err(Error::CyclicCovers(names[s].clone()));
            }
            if !leq[s][v] {
                leq[s][v] = true;
                stack.extend(up[v].iter().copied());
            }
        }
    }
    FiniteLattice::from_order(names, leq)
}

/// Every lattice on `n` elements up to isomorphism (`n >= 1`), with the
/// bottom named `0`, the top `1` and the rest `a`, `b`, ...
pub fn enumerate_lattices(n: usize) -> Vec<FiniteLattice> {
    assert!(n >= 1);
    if n == 1 {
        return vec![lattice_from_covers::<&str>(&["0"], &[]).unwrap()];
    }
    let m = n - 2;
    let mut names = vec!["0".to_string()];
    names.extend((0..m).map(|i| ((b'a' + i as u8) as char).to_string()));
    names.push("1".to_string());
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut found: Vec<FiniteLattice> = Vec::new();
    // every poset has a natural labelling, so relations i < j suffice
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![vec![false; n]; n];
        for i in 0..n {
            rel[i][i] = true;
            rel[0][i] = true;
            rel[i][n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rel[i + 1][j + 1] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if rel[i][k] && rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let Ok(l) = FiniteLattice::from_order(names.clone(), rel) else {
            continue;
        };
        if !found.iter().any(|f| poset_isomorphic(f, &l)) {
            found.push(l);
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::GroundSet;

    fn family(sets: &[&[&str]]) -> SetFamily {
        SetFamily::from_labels(GroundSet::new(["a", "b", "c", "d"]).unwrap(), sets).unwrap()
    }

    fn chain(k: usize) -> FiniteLattice {
        let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
        let covers: Vec<(String, String)> = (1..k)
            .map(|i| (names[i - 1].clone(), names[i].clone()))
            .collect();
        lattice_from_covers(&names, &covers).unwrap()
    }

    fn b2() -> FiniteLattice {
        lattice_from_covers(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    #[test]
    fn singleton_lattice() {
        let l = lattice_from_covers::<&str>(&["z"], &[]).unwrap();
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 0);
    }

    #[test]
    fn boolean_b2() {
        let l = b2();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.covers().len(), 4);
    }

    #[test]
    fn m3_is_a_lattice() {
        let l = lattice_from_covers(
            &["0", "a", "b", "c", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("0", "c"),
                ("a", "1"),
                ("b", "1"),
                ("c", "1"),
            ],
        )
        .unwrap();
        assert_eq!(l.join(1, 3), 4);
        assert_eq!(l.meet(2, 3), 0);
        assert_eq!(width(&l), 3);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        let r = lattice_from_covers(
            &["0", "a", "b", "c", "d", "1"],
            &[
                ("0", "a"),
                ("0", "b"),
                ("a", "c"),
                ("a", "d"),
                ("b", "c"),
                ("b", "d"),
                ("c", "1"),
                ("d", "1"),
            ],
        );
        assert!(matches!(r, Err(Error::NotALattice { .. })));
    }

    #[test]
    fn cyclic_covers_rejected() {
        let r = lattice_from_covers(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(r, Err(Error::CyclicCovers(_))));
        let r = lattice_from_covers(&["a"], &[("a", "a")]);
        assert!(matches!(r, Err(Error::CyclicCovers(_))));
        let r = lattice_from_covers(&["a"], &[("a", "q")]);
        assert!(matches!(r, Err(Error::UnknownName(_))));
    }

    #[test]
    fn two_chain_family() {
        let f = family(&[&[], &["a", "b", "c", "d"]]);
        let t = family_lattice_tables(&f).unwrap();
        assert_eq!(t.meet[0][1], 0);
        assert_eq!(t.join[0][1], 1);
    }

    #[test]
    fn p2_family_is_lattice() {
        let f = family(&[&[], &["a", "b"], &["c", "d"], &["a", "b", "c", "d"]]);
        let t = family_lattice_tables(&f).unwrap();
        // {a,b} and {c,d}: meet is the empty set, join is E
        assert_eq!(t.meet[1][2], 0);
        assert_eq!(t.join[1][2], 3);
        // all six pairs against intersection/union brute force
        let s = f.sets();
        for x in 0..4 {
            for y in 0..4 {
                let lower: Vec<usize> = (0..4).filter(|&z| s[z].is_subset(s[x] & s[y])).collect();
                assert!(lower.iter().all(|&z| s[z].is_subset(s[t.meet[x][y]])));
                let upper: Vec<usize> = (0..4).filter(|&z| (s[x] | s[y]).is_subset(s[z])).collect();
                assert!(upper.iter().all(|&z| s[t.join[x][y]].is_subset(s[z])));
            }
        }
    }

    #[test]
    fn meet_need_not_be_intersection() {
        // {a,b} and {b,c} meet at the empty set, not at {b}
        let f = family(&[&[], &["a", "b"], &["b", "c"], &["a", "b", "c", "d"]]);
        let t = family_lattice_tables(&f).unwrap();
        assert_eq!(f.sets()[t.meet[1][2]], Subset::EMPTY);
    }

    #[test]
    fn no_common_bounds_reports_pair() {
        let f = family(&[&["a", "b"], &["b", "c"]]);
        let e = family_lattice_tables(&f).unwrap_err();
        assert_eq!((e.x, e.y), (0, 1));
        assert_eq!(e.bound, Bound::Meet);
    }

    #[test]
    fn widths() {
        assert_eq!(
            width_of_family(&family(&[&[], &["a", "b"], &["a", "b", "c", "d"]])),
            1
        );
        assert_eq!(
            width_of_family(&family(&[
                &[],
                &["a", "b"],
                &["c", "d"],
                &["a", "b", "c", "d"]
            ])),
            2
        );
        let g = GroundSet::new(["12", "13", "14", "23", "24", "34"]).unwrap();
        let k4 = SetFamily::from_labels(
            g,
            &[
                &[],
                &["12", "13", "23"],
                &["12", "14", "24"],
                &["13", "14", "34"],
                &["23", "24", "34"],
                &["12", "13", "14", "23", "24", "34"],
            ],
        )
        .unwrap();
        assert_eq!(width_of_family(&k4), 4);
        assert_eq!(width_with(&k4, WidthMethod::BruteForce), 4);
    }

    #[test]
    fn chains() {
        assert!(is_chain(&family(&[&[], &["a"], &["a", "b"]])));
        assert!(!is_chain(&family(&[&[], &["a"], &["b"]])));
        assert!(!is_chain(&family(&[
            &[],
            &["a", "b"],
            &["c", "d"],
            &["a", "b", "c", "d"]
        ])));
    }

    #[test]
    fn isomorphism_basics() {
        assert!(poset_isomorphic(&chain(3), &chain(3)));
        assert!(!poset_isomorphic(&chain(3), &b2()));
        assert!(!poset_isomorphic(&chain(4), &b2()));
        let map = poset_isomorphism(&b2(), &b2()).unwrap();
        assert_eq!(map[0], 0);
        assert_eq!(map[3], 3);
    }

    #[test]
    fn lattice_counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
    }
}
