//! Seeded generators of valid matroids for property and closure tests.
//!
//! Every generator takes an explicit RNG; use [`seeded`] for reproducible
//! streams.

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constructions::{catalog, uniform, CATALOG_NAMES};
use crate::freeprod::{free_coextension, free_extension, free_product};
use crate::matroid::{Matroid, RankedFamily};
use crate::minors::{direct_sum, dual, higgs_lift, relabel, relax, truncate};
use crate::nested::{nested_from_sequence, IFSequence, Step};
use crate::subset::{default_labels, GroundSet, Subset};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Same cyclic flats with elements permuted at random and relabelled
/// `a`, `b`, ...
pub fn shuffled<R: Rng + ?Sized>(rng: &mut R, m: &Matroid) -> Matroid {
    let mut perm: Vec<usize> = (0..m.size()).collect();
    perm.shuffle(rng);
    let ground = GroundSet::new(default_labels(m.size())).expect("distinct labels");
    let fam = RankedFamily::new(ground, m.cyclic_flats().map(|(f, r)| (f.map(&perm), r)))
        .expect("a permutation keeps sets distinct");
    Matroid::new(&fam).expect("a permutation keeps the axioms")
}

pub fn random_sequence<R: Rng + ?Sized>(rng: &mut R, len: usize) -> IFSequence {
    IFSequence(
        (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Step::Free
                } else {
                    Step::Isthmus
                }
            })
            .collect(),
    )
}

/// A nested matroid on `1..=max_elements` elements.
pub fn random_nested<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> Matroid {
    let n = rng.gen_range(1..=max_elements.max(1));
    let m = nested_from_sequence(&random_sequence(rng, n));
    shuffled(rng, &m)
}

fn small_piece<R: Rng + ?Sized>(rng: &mut R, room: usize) -> Matroid {
    let n = rng.gen_range(1..=room.min(4));
    if rng.gen_bool(0.5) {
        uniform(rng.gen_range(0..=n), n).expect("r <= n")
    } else {
        nested_from_sequence(&random_sequence(rng, n))
    }
}

fn start<R: Rng + ?Sized>(rng: &mut R, max: usize) -> Matroid {
    match rng.gen_range(0..4) {
        0 if max >= 6 => {
            let names: Vec<&str> = CATALOG_NAMES
                .iter()
                .copied()
                .filter(|n| catalog(n).is_ok_and(|m| m.size() <= max))
                .collect();
            catalog(names[rng.gen_range(0..names.len())]).expect("catalog entry")
        }
        1 if max >= 2 => {
            let mut m = small_piece(rng, max.min(3));
            while m.size() < max && rng.gen_bool(0.7) {
                let piece = small_piece(rng, (max - m.size()).min(3));
                m = direct_sum(&relabel(&m, "l"), &relabel(&piece, "r")).expect("disjoint labels");
            }
            m
        }
        _ => {
            let n = rng.gen_range(1..=max.min(4));
            nested_from_sequence(&random_sequence(rng, n))
        }
    }
}

/// A valid matroid on at most `max_elements` elements (capped at 10),
/// grown from a nested matroid, a direct sum of small pieces or a catalog
/// entry by direct sums, free products, free
/// (co)extensions, truncations, Higgs lifts, relaxations and duality, then
/// shuffled.
pub fn random_matroid<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> Matroid {
    let max = max_elements.clamp(1, 10);
    let mut m = start(rng, max);
    let steps = rng.gen_range(0..=5);
    for _ in 0..steps {
        let room = max - m.size();
        let next = match rng.gen_range(0..8) {
            0 if room > 0 => direct_sum(&relabel(&m, "l"), &relabel(&small_piece(rng, room), "r")),
            1 if room > 0 => {
                let piece = relabel(&small_piece(rng, room), "r");
                let m = relabel(&m, "l");
                if rng.gen_bool(0.5) {
                    free_product(&m, &piece)
                } else {
                    free_product(&piece, &m)
                }
            }
            2 if room > 0 => free_extension(&m, None),
            3 if room > 0 => free_coextension(&m, None),
            4 => truncate(&m),
            5 => higgs_lift(&m),
            6 => {
                let flats = m.flats().to_vec();
                relax(&m, flats[rng.gen_range(0..flats.len())])
            }
            _ => Ok(dual(&m)),
        };
        if let Ok(next) = next {
            if next.size() <= max {
                m = next;
            }
        }
    }
    shuffled(rng, &m)
}

/// A matroid whose cyclic flats are a chain plus one extra set incomparable
/// to some member, so its cyclic width is at most 2. Candidates are drawn
/// until one validates.
pub fn random_cw2_matroid<R: Rng + ?Sized>(rng: &mut R, max_elements: usize) -> Matroid {
    let max = max_elements.clamp(3, 12);
    loop {
        let n = rng.gen_range(3..=max);
        let base = nested_from_sequence(&random_sequence(rng, n));
        let chain: Vec<(Subset, usize)> = base.cyclic_flats().collect();
        let x = Subset::from_bits(rng.gen_range(1..1u64 << n));
        if chain.iter().any(|&(c, _)| c == x)
            || chain.iter().all(|&(c, _)| c.is_subset(x) || x.is_subset(c))
        {
            continue;
        }
        let lo = chain
            .iter()
            .filter(|&&(c, _)| c.is_proper_subset(x))
            .map(|&(_, r)| r + 1)
            .max()
            .unwrap_or(0);
        let hi = (x.len().saturating_sub(1)).min(base.rank());
        if lo > hi {
            continue;
        }
        let rank = rng.gen_range(lo..=hi);
        let mut entries = chain.clone();
        entries.push((x, rank));
        let fam = RankedFamily::new(base.ground().clone(), entries).expect("distinct sets");
        if let Ok(m) = Matroid::new(&fam) {
            return shuffled(rng, &m);
        }
    }
}
