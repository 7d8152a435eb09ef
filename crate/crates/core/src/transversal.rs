//! Cyclic width and the inclusion-exclusion transversality test over
//! antichains of cyclic flats.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::minors::dual;
use crate::poset::width;
use crate::subset::Subset;

/// Largest family of cyclic flats searched for antichains.
pub const DEFAULT_ANTICHAIN_CAP: usize = 24;

/// Width of the lattice of cyclic flats.
pub fn cyclic_width(m: &Matroid) -> usize {
    width(m.flats())
}

/// Both sides of `r(X_1 ∩ ... ∩ X_n) <= Σ_{∅≠J} (-1)^{|J|+1} r(∪_{j∈J} X_j)`.
pub fn ingleton_sides(m: &Matroid, family: &[Subset]) -> (i64, i64) {
    assert!(!family.is_empty());
    let inter = family.iter().fold(m.full(), |acc, &x| acc & x);
    let lhs = m.rank_of(inter) as i64;
    let n = family.len();
    let mut rhs = 0i64;
    for j in 1u64..1 << n {
        let union = Subset::from_bits(j)
            .iter()
            .fold(Subset::EMPTY, |acc, k| acc | family[k]);
        let r = m.rank_of(union) as i64;
        if j.count_ones() % 2 == 1 {
            rhs += r;
        } else {
            rhs -= r;
        }
    }
    (lhs, rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IngletonReport {
    Holds,
    Violated {
        antichain: Vec<Subset>,
        lhs: i64,
        rhs: i64,
    },
}

impl IngletonReport {
    pub fn holds(&self) -> bool {
        matches!(self, IngletonReport::Holds)
    }
}

/// Checks the inequality on every antichain of at least three cyclic flats,
/// by size then lexicographically. Singletons give equality and pairs give
/// the semimodular inequality, so those are only asserted in debug builds.
pub fn ingleton_transversal(m: &Matroid) -> Result<IngletonReport> {
    ingleton_transversal_with_cap(m, DEFAULT_ANTICHAIN_CAP)
}

pub fn ingleton_transversal_with_cap(m: &Matroid, cap: usize) -> Result<IngletonReport> {
    let flats = m.flats();
    let n = flats.len();
    if n > cap {
        return Err(Error::TooManyCyclicFlats(n));
    }
    let incomparable: Vec<u64> = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| !flats[a].is_subset(flats[b]) && !flats[b].is_subset(flats[a]))
                .fold(0u64, |acc, b| acc | 1 << b)
        })
        .collect();

    #[cfg(debug_assertions)]
    for a in 0..n {
        let (l, r) = ingleton_sides(m, &[flats[a]]);
        debug_assert_eq!(l, r);
        for b in (a + 1..n).filter(|&b| incomparable[a] >> b & 1 == 1) {
            let (l, r) = ingleton_sides(m, &[flats[a], flats[b]]);
            debug_assert!(l <= r);
        }
    }

    fn extend(
        size: usize,
        start: usize,
        allowed: u64,
        chosen: &mut Vec<usize>,
        m: &Matroid,
        incomparable: &[u64],
    ) -> Option<IngletonReport> {
        if chosen.len() == size {
            let fam: Vec<Subset> = chosen.iter().map(|&i| m.flats()[i]).collect();
            let (lhs, rhs) = ingleton_sides(m, &fam);
            return (lhs > rhs).then_some(IngletonReport::Violated {
                antichain: fam,
                lhs,
                rhs,
            });
        }
        if (allowed >> start).count_ones() < (size - chosen.len()) as u32 {
            return None;
        }
        for c in start..incomparable.len() {
            if allowed >> c & 1 == 0 {
                continue;
            }
            chosen.push(c);
            let found = extend(
                size,
                c + 1,
                allowed & incomparable[c],
                chosen,
                m,
                incomparable,
            );
            chosen.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    let everything = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for size in 3..=width(flats) {
        if let Some(v) = extend(size, 0, everything, &mut Vec::new(), m, &incomparable) {
            return Ok(v);
        }
    }
    Ok(IngletonReport::Holds)
}

/// Transversal and cotransversal.
pub fn bitransversal_cert(m: &Matroid) -> Result<bool> {
    Ok(ingleton_transversal(m)?.holds() && ingleton_transversal(&dual(m))?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{catalog, excluded_minor_pn, uniform};
    use crate::nested::{nested_from_sequence, IFSequence};

    #[test]
    fn widths() {
        let nested = nested_from_sequence(&"iffiif".parse().unwrap());
        assert_eq!(cyclic_width(&nested), 1);
        assert_eq!(cyclic_width(&excluded_minor_pn(2).unwrap()), 2);
        assert_eq!(cyclic_width(&catalog("mk4").unwrap()), 4);
    }

    #[test]
    fn mk4_fails_on_the_four_triangles() {
        let m = catalog("mk4").unwrap();
        let report = ingleton_transversal(&m).unwrap();
        let tris: Vec<Subset> = m.flats()[1..5].to_vec();
        assert_eq!(
            report,
            IngletonReport::Violated {
                antichain: tris,
                lhs: 0,
                rhs: -1
            }
        );
        assert!(!bitransversal_cert(&m).unwrap());
    }

    #[test]
    fn uniform_and_nested_pass() {
        let u = uniform(2, 4).unwrap();
        assert!(ingleton_transversal(&u).unwrap().holds());
        assert!(bitransversal_cert(&u).unwrap());
        for s in IFSequence::all_of_length(5) {
            assert!(ingleton_transversal(&nested_from_sequence(&s))
                .unwrap()
                .holds());
        }
    }

    #[test]
    fn comparable_members_do_not_change_sides() {
        // adding a superset of a member leaves both sides unchanged
        let m = catalog("mk4").unwrap();
        let f = m.flats();
        let base = [f[1], f[2], f[3]];
        let with_top = [f[1], f[2], f[3], f[5]];
        assert_eq!(ingleton_sides(&m, &base), ingleton_sides(&m, &with_top));
    }

    #[test]
    fn cap_enforced() {
        let m = catalog("fano").unwrap();
        assert!(matches!(
            ingleton_transversal_with_cap(&m, 5),
            Err(Error::TooManyCyclicFlats(9))
        ));
    }
}
