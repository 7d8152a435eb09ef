//! Duality, minors, relaxation, direct sums, truncation and isomorphism.

use crate::error::{Error, Result};
use crate::freeprod::free_extension;
use crate::matroid::{cyclic_flats_from_rank, Matroid, RankedFamily, DEFAULT_ENUM_CAP};
use crate::poset::is_chain;
use crate::subset::{k_subsets, GroundSet, Subset};

/// Default ground-set cap for the generic isomorphism search.
pub const DEFAULT_ISO_CAP: usize = 13;
/// Default ground-set cap for exhaustive minor search.
pub const DEFAULT_MINOR_CAP: usize = 12;

/// Elements to contract and delete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct MinorSpec {
    pub contract: Subset,
    pub delete: Subset,
}

impl MinorSpec {
    pub fn new(contract: Subset, delete: Subset) -> Result<Self> {
        if !contract.is_disjoint(delete) {
            return Err(Error::OverlappingMinorSpec);
        }
        Ok(MinorSpec { contract, delete })
    }

    pub fn removed(&self) -> Subset {
        self.contract | self.delete
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        format!(
            "contract {} delete {}",
            ground.format(self.contract),
            ground.format(self.delete)
        )
    }
}

/// The dual matroid: cyclic flats are the complements, with
/// `r*(E - X) = |E - X| - r(M) + r(X)`.
pub fn dual(m: &Matroid) -> Matroid {
    let full = m.full();
    let fam = RankedFamily::new(
        m.ground().clone(),
        m.cyclic_flats()
            .map(|(x, r)| (full - x, (full - x).len() + r - m.rank())),
    )
    .expect("complements of distinct sets are distinct");
    Matroid::new(&fam).expect("dual of a matroid satisfies the axioms")
}

/// `M / contract \ delete`, with cyclic flats recomputed from the rank
/// function `r(A ∪ C) - r(C)` on the remaining elements.
pub fn minor(m: &Matroid, spec: &MinorSpec) -> Result<Matroid> {
    minor_with_cap(m, spec, DEFAULT_ENUM_CAP)
}

pub fn minor_with_cap(m: &Matroid, spec: &MinorSpec, cap: usize) -> Result<Matroid> {
    if !spec.contract.is_disjoint(spec.delete) {
        return Err(Error::OverlappingMinorSpec);
    }
    m.ground().check(spec.removed())?;
    if spec.removed().is_empty() {
        return Ok(m.clone());
    }
    let keep = m.full() - spec.removed();
    let (ground, map) = m.ground().restrict(keep);
    let back: Vec<usize> = keep.iter().collect();
    debug_assert!(back.iter().enumerate().all(|(i, &o)| map[o] == i));
    let c = spec.contract;
    let rc = m.rank_of(c);
    let fam = cyclic_flats_from_rank(&ground, |a| m.rank_of(a.map(&back) | c) - rc, cap)?;
    Matroid::new(&fam)
}

pub fn delete(m: &Matroid, d: Subset) -> Result<Matroid> {
    minor(m, &MinorSpec::new(Subset::EMPTY, d)?)
}

pub fn contract(m: &Matroid, c: Subset) -> Result<Matroid> {
    minor(m, &MinorSpec::new(c, Subset::EMPTY)?)
}

/// Removes a cyclic flat comparable only to the least and greatest cyclic
/// flats (the circuit-hyperplane relaxation when `F` is one).
pub fn relax(m: &Matroid, f: Subset) -> Result<Matroid> {
    let name = m.ground().format(f);
    let Some(idx) = m.flat_index(f) else {
        return Err(Error::NotRelaxable(name, "not a cyclic flat"));
    };
    if f == m.bottom() || f == m.top() {
        return Err(Error::NotRelaxable(name, "least or greatest cyclic flat"));
    }
    let ok = m.flats().iter().enumerate().all(|(j, &g)| {
        j == idx || g == m.bottom() || g == m.top() || !(g.is_subset(f) || f.is_subset(g))
    });
    if !ok {
        return Err(Error::NotRelaxable(
            name,
            "comparable to a cyclic flat other than the least and greatest",
        ));
    }
    let fam = RankedFamily::new(
        m.ground().clone(),
        m.cyclic_flats().filter(|&(x, _)| x != f),
    )?;
    Matroid::new(&fam)
}

/// `M ⊕ N` on the concatenated ground set; the cyclic flats are all unions
/// `X ∪ Y` with rank `r(X) + r(Y)`.
pub fn direct_sum(m: &Matroid, n: &Matroid) -> Result<Matroid> {
    let ground = m.ground().disjoint_union(n.ground())?;
    let shift = m.size();
    let mut entries = Vec::with_capacity(m.flats().len() * n.flats().len());
    for (x, rx) in m.cyclic_flats() {
        for (y, ry) in n.cyclic_flats() {
            entries.push((x | Subset::from_bits(y.bits() << shift), rx + ry));
        }
    }
    Matroid::new(&RankedFamily::new(ground, entries)?)
}

/// Same matroid with every label prefixed by `prefix`.
pub fn relabel(m: &Matroid, prefix: &str) -> Matroid {
    let ground = GroundSet::new(m.ground().labels().iter().map(|l| format!("{prefix}{l}")))
        .expect("prefixing keeps labels distinct");
    let fam = RankedFamily::new(ground, m.cyclic_flats()).expect("same family");
    Matroid::new(&fam).expect("same axioms")
}

/// Truncation `(M + e) / e`.
pub fn truncate(m: &Matroid) -> Result<Matroid> {
    if m.rank() == 0 {
        return Err(Error::RankZero);
    }
    let ext = free_extension(m, None)?;
    let e = Subset::singleton(ext.size() - 1);
    contract(&ext, e)
}

/// Higgs lift: the dual of the truncation of the dual.
pub fn higgs_lift(m: &Matroid) -> Result<Matroid> {
    Ok(dual(&truncate(&dual(m))?))
}

/// Element bijection `E(M) -> E(N)` carrying cyclic flats to cyclic flats
/// of equal rank, using the default cap.
pub fn isomorphism(m: &Matroid, n: &Matroid) -> Result<Option<Vec<usize>>> {
    isomorphism_with_cap(m, n, DEFAULT_ISO_CAP)
}

pub fn is_isomorphic(m: &Matroid, n: &Matroid) -> Result<bool> {
    Ok(isomorphism(m, n)?.is_some())
}

pub fn isomorphism_with_cap(m: &Matroid, n: &Matroid, cap: usize) -> Result<Option<Vec<usize>>> {
    if m.size() != n.size() || m.rank() != n.rank() || m.flats().len() != n.flats().len() {
        return Ok(None);
    }
    let sig = |x: &Matroid| {
        let mut v: Vec<(usize, usize)> = x.cyclic_flats().map(|(f, r)| (f.len(), r)).collect();
        v.sort_unstable();
        v
    };
    if sig(m) != sig(n) {
        return Ok(None);
    }
    let (cm, cn) = (is_chain(m.flats()), is_chain(n.flats()));
    if cm != cn {
        return Ok(None);
    }
    if cm {
        return Ok(Some(chain_isomorphism(m, n)));
    }
    if m.size() > cap {
        return Err(Error::TooLarge {
            size: m.size(),
            cap,
        });
    }
    Ok(IsoSearch::new(m, n).and_then(|mut s| s.run()))
}

/// Isomorphism of two nested matroids with equal chain signatures: map the
/// layers `X_j - X_{j-1}` onto each other in order.
fn chain_isomorphism(m: &Matroid, n: &Matroid) -> Vec<usize> {
    let layers = |x: &Matroid| {
        let mut out = Vec::new();
        let mut prev = Subset::EMPTY;
        for &f in x.flats() {
            out.push(f - prev);
            prev = f;
        }
        out.push(x.full() - prev);
        out
    };
    let mut map = vec![0; m.size()];
    for (a, b) in layers(m).into_iter().zip(layers(n)) {
        for (i, j) in a.iter().zip(b.iter()) {
            map[i] = j;
        }
    }
    map
}

struct IsoSearch<'a> {
    n: &'a Matroid,
    /// Index into the sorted distinct (|F|, r(F)) signatures, per flat.
    sig_m: Vec<usize>,
    sig_n: Vec<usize>,
    prof_m: Vec<Vec<usize>>,
    prof_n: Vec<Vec<usize>>,
    /// Elements of M in assignment order.
    order: Vec<usize>,
    /// Per flat of M, bit `p` set iff `order[p]` is in it.
    pos_m: Vec<u64>,
    /// Per flat of N, bit `p` set iff the image of `order[p]` is in it.
    pos_n: Vec<u64>,
    image: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> IsoSearch<'a> {
    fn new(m: &'a Matroid, n: &'a Matroid) -> Option<Self> {
        let mut sigs: Vec<(usize, usize)> = m.cyclic_flats().map(|(f, r)| (f.len(), r)).collect();
        sigs.sort_unstable();
        sigs.dedup();
        let code = |x: &Matroid| -> Vec<usize> {
            x.cyclic_flats()
                .map(|(f, r)| sigs.binary_search(&(f.len(), r)).unwrap())
                .collect()
        };
        let (sig_m, sig_n) = (code(m), code(n));
        let profiles = |x: &Matroid, sig: &[usize]| -> Vec<Vec<usize>> {
            (0..x.size())
                .map(|e| {
                    let mut p: Vec<usize> = x
                        .flats()
                        .iter()
                        .zip(sig)
                        .filter(|(f, _)| f.contains(e))
                        .map(|(_, &s)| s)
                        .collect();
                    p.sort_unstable();
                    p
                })
                .collect()
        };
        let (prof_m, prof_n) = (profiles(m, &sig_m), profiles(n, &sig_n));
        let (mut a, mut b) = (prof_m.clone(), prof_n.clone());
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
        let class_size = |e: usize| prof_m.iter().filter(|p| **p == prof_m[e]).count();
        let mut order: Vec<usize> = (0..m.size()).collect();
        order.sort_by_key(|&e| (class_size(e), e));
        let pos_m = m
            .flats()
            .iter()
            .map(|f| {
                order
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| f.contains(e))
                    .fold(0u64, |acc, (p, _)| acc | 1 << p)
            })
            .collect();
        Some(IsoSearch {
            n,
            sig_m,
            sig_n,
            prof_m,
            prof_n,
            order,
            pos_m,
            pos_n: vec![0; n.flats().len()],
            image: vec![usize::MAX; m.size()],
            used: vec![false; n.size()],
        })
    }

    fn run(&mut self) -> Option<Vec<usize>> {
        self.go(0).then(|| self.image.clone())
    }

    /// Compares the multisets of (signature, trace on assigned positions).
    fn consistent(&self, depth: usize) -> bool {
        let mask = if depth >= 64 {
            u64::MAX
        } else {
            (1u64 << depth) - 1
        };
        let mut a: Vec<(usize, u64)> = self
            .sig_m
            .iter()
            .zip(&self.pos_m)
            .map(|(&s, &p)| (s, p & mask))
            .collect();
        let mut b: Vec<(usize, u64)> = self
            .sig_n
            .iter()
            .zip(&self.pos_n)
            .map(|(&s, &p)| (s, p))
            .collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    fn go(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.n.size() {
            if self.used[y] || self.prof_n[y] != self.prof_m[x] {
                continue;
            }
            for (g, f) in self.n.flats().iter().enumerate() {
                if f.contains(y) {
                    self.pos_n[g] |= 1 << depth;
                }
            }
            if self.consistent(depth + 1) {
                self.used[y] = true;
                self.image[x] = y;
                if self.go(depth + 1) {
                    return true;
                }
                self.used[y] = false;
            }
            for p in self.pos_n.iter_mut() {
                *p &= !(1 << depth);
            }
        }
        false
    }
}

/// Searches for `(C, D)` with `M / C \ D ≅ N`, taking `C` independent and
/// `D` coindependent. Returns the first witness in canonical order.
pub fn has_minor(m: &Matroid, n: &Matroid) -> Result<Option<MinorSpec>> {
    has_minor_with_cap(m, n, DEFAULT_MINOR_CAP)
}

pub fn has_minor_with_cap(m: &Matroid, n: &Matroid, cap: usize) -> Result<Option<MinorSpec>> {
    if m.size() > cap {
        return Err(Error::TooLarge {
            size: m.size(),
            cap,
        });
    }
    if n.size() > m.size() || n.rank() > m.rank() || n.nullity() > m.nullity() {
        return Ok(None);
    }
    let c_size = m.rank() - n.rank();
    let d_size = m.nullity() - n.nullity();
    let full = m.full();
    for c in k_subsets(full, c_size) {
        if !m.is_independent(c) {
            continue;
        }
        for d in k_subsets(full - c, d_size) {
            if m.rank_of(full - d) != m.rank() {
                continue;
            }
            let spec = MinorSpec {
                contract: c,
                delete: d,
            };
            let mn = minor(m, &spec)?;
            if isomorphism_with_cap(&mn, n, cap)?.is_some() {
                return Ok(Some(spec));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, excluded_minor_pn, uniform, uniform_on};

    #[test]
    fn dual_examples() {
        let u24 = uniform(2, 4).unwrap();
        assert_eq!(dual(&u24), u24);
        let lp = uniform(0, 1).unwrap();
        assert_eq!(dual(&lp), uniform(1, 1).unwrap());
        let k4 = catalog("mk4").unwrap();
        assert_eq!(dual(&dual(&k4)), k4);
    }

    #[test]
    fn minor_examples() {
        let p2 = excluded_minor_pn(2).unwrap();
        let cd = p2.ground().subset(&["c", "d"]).unwrap();
        assert_eq!(delete(&p2, cd).unwrap(), uniform(1, 2).unwrap());
        let u24 = uniform(2, 4).unwrap();
        let m = contract(&u24, Subset::singleton(0)).unwrap();
        assert_eq!(m, uniform_on(1, &["b", "c", "d"]).unwrap());
        assert_eq!(minor(&u24, &MinorSpec::default()).unwrap(), u24);
        assert!(MinorSpec::new(Subset::singleton(0), Subset::singleton(0)).is_err());
    }

    #[test]
    fn relax_examples() {
        let m = Matroid::from_labels(
            &["a", "b", "c", "d", "e"],
            &[
                (&[], 0),
                (&["a", "b", "c"], 2),
                (&["a", "b", "c", "d", "e"], 3),
            ],
        )
        .unwrap();
        let abc = m.ground().subset(&["a", "b", "c"]).unwrap();
        let r = relax(&m, abc).unwrap();
        assert_eq!(r, uniform_on(3, &["a", "b", "c", "d", "e"]).unwrap());
        assert!(matches!(
            relax(&m, Subset::EMPTY),
            Err(Error::NotRelaxable(..))
        ));
        let k4 = catalog("mk4").unwrap();
        let tri = k4.ground().subset(&["12", "13", "23"]).unwrap();
        let w3 = relax(&k4, tri).unwrap();
        assert_eq!(w3, catalog("w3").unwrap());
    }

    #[test]
    fn relax_rejects_comparable_flat() {
        let m = Matroid::from_labels(
            &["a", "b", "c", "d", "e", "f"],
            &[
                (&[], 0),
                (&["a", "b"], 1),
                (&["a", "b", "c", "d"], 2),
                (&["a", "b", "c", "d", "e", "f"], 3),
            ],
        )
        .unwrap();
        let ab = m.ground().subset(&["a", "b"]).unwrap();
        assert!(matches!(relax(&m, ab), Err(Error::NotRelaxable(..))));
    }

    #[test]
    fn direct_sum_examples() {
        let a = uniform_on(1, &["a", "b"]).unwrap();
        let b = uniform_on(1, &["c", "d"]).unwrap();
        assert_eq!(direct_sum(&a, &b).unwrap(), excluded_minor_pn(2).unwrap());
        let empty = uniform(0, 0).unwrap();
        assert_eq!(direct_sum(&a, &empty).unwrap(), a);
        let lp = uniform_on(0, &["a"]).unwrap();
        let cl = uniform_on(1, &["b"]).unwrap();
        let s = direct_sum(&lp, &cl).unwrap();
        assert_eq!(s.to_family().len(), 1);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.bottom(), Subset::singleton(0));
        assert!(matches!(
            direct_sum(&a, &a),
            Err(Error::OverlappingGroundSets(_))
        ));
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(
            truncate(&uniform(2, 4).unwrap()).unwrap(),
            uniform(1, 4).unwrap()
        );
        assert_eq!(
            higgs_lift(&uniform(1, 2).unwrap()).unwrap(),
            uniform(2, 2).unwrap()
        );
        let s = direct_sum(
            &uniform_on(2, &["a", "b", "c"]).unwrap(),
            &uniform_on(2, &["d", "e", "f"]).unwrap(),
        )
        .unwrap();
        assert_eq!(truncate(&s).unwrap(), excluded_minor_pn(3).unwrap());
        assert_eq!(truncate(&uniform(0, 2).unwrap()), Err(Error::RankZero));
    }

    #[test]
    fn truncation_bases_are_short_independent_sets() {
        for m in [
            catalog("mk4").unwrap(),
            excluded_minor_pn(3).unwrap(),
            catalog("fano").unwrap(),
        ] {
            let t = truncate(&m).unwrap();
            assert_eq!(t.rank() + 1, m.rank());
            for a in m.full().subsets() {
                let basis_t = a.len() == t.rank() && t.is_independent(a);
                let short_m = a.len() == m.rank() - 1 && m.is_independent(a);
                assert_eq!(basis_t, short_m);
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        let a = uniform(2, 4).unwrap();
        let b = uniform_on(2, &["w", "x", "y", "z"]).unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
        let l = direct_sum(
            &uniform_on(1, &["a", "b"]).unwrap(),
            &uniform_on(1, &["c"]).unwrap(),
        )
        .unwrap();
        let r = direct_sum(
            &direct_sum(
                &uniform_on(0, &["a"]).unwrap(),
                &uniform_on(1, &["b"]).unwrap(),
            )
            .unwrap(),
            &uniform_on(1, &["c"]).unwrap(),
        )
        .unwrap();
        assert!(!is_isomorphic(&l, &r).unwrap());
    }

    #[test]
    fn generic_isomorphism_witness_maps_flats() {
        let k4 = catalog("mk4").unwrap();
        let order = GroundSet::new(["34", "12", "24", "13", "23", "14"]).unwrap();
        let shuffled = k4.reindexed(order).unwrap();
        let map = isomorphism(&k4, &shuffled).unwrap().unwrap();
        for (f, r) in k4.cyclic_flats() {
            let g = f.map(&map);
            assert_eq!(
                shuffled.flat_index(g).map(|i| shuffled.flat_ranks()[i]),
                Some(r)
            );
        }
        assert!(!is_isomorphic(&k4, &catalog("w3").unwrap()).unwrap());
    }

    #[test]
    fn has_minor_examples() {
        let k4 = catalog("mk4").unwrap();
        let u24 = uniform(2, 4).unwrap();
        assert_eq!(has_minor(&k4, &u24).unwrap(), None);
        assert_eq!(has_minor(&k4, &k4).unwrap(), Some(MinorSpec::default()));
        let w3 = catalog("w3").unwrap();
        let spec = has_minor(&w3, &u24).unwrap().unwrap();
        assert!(is_isomorphic(&minor(&w3, &spec).unwrap(), &u24).unwrap());
    }
}
