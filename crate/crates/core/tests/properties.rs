use cyclic_flats::freeprod::{free_coextension, free_extension, free_product};
use cyclic_flats::minors::{
    contract, delete, direct_sum, dual, higgs_lift, is_isomorphic, minor, relabel, truncate,
};
use cyclic_flats::poset::{family_lattice_tables, is_chain, poset_isomorphic, width, Reversed};
use cyclic_flats::random::{random_matroid, seeded, shuffled};
use cyclic_flats::subset::default_labels;
use cyclic_flats::tutte::{rank_gen_brute, rank_gen_convolution, tutte_polynomial};
use cyclic_flats::{GroundSet, Matroid, MinorSpec, SetFamily, Subset};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matroid(seed: u64, max: usize) -> Matroid {
    random_matroid(&mut seeded(seed), max)
}

fn family(n: usize, masks: &[u64]) -> SetFamily {
    let mut sets: Vec<Subset> = masks
        .iter()
        .map(|&b| Subset::from_bits(b & ((1 << n) - 1)))
        .collect();
    sets.sort();
    sets.dedup();
    SetFamily::new(GroundSet::new(default_labels(n)).unwrap(), sets).unwrap()
}

// largest antichain by trying every subfamily
fn antichain_oracle(sets: &[Subset]) -> usize {
    (0u32..1 << sets.len())
        .filter(|&pick| {
            let chosen: Vec<Subset> = (0..sets.len())
                .filter(|&i| pick >> i & 1 == 1)
                .map(|i| sets[i])
                .collect();
            chosen.iter().enumerate().all(|(i, a)| {
                chosen[i + 1..]
                    .iter()
                    .all(|b| !a.is_subset(*b) && !b.is_subset(*a))
            })
        })
        .map(|pick| pick.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_axioms(seed in any::<u64>()) {
        let m = matroid(seed, 8);
        let full = m.full();
        prop_assert_eq!(m.rank_of(Subset::EMPTY), 0);
        for a in full.subsets() {
            let ra = m.rank_of(a);
            prop_assert!(ra <= a.len());
            for x in (full - a).iter() {
                let rx = m.rank_of(a.with(x));
                prop_assert!(ra <= rx && rx <= ra + 1);
                for y in (full - a.with(x)).iter() {
                    // local submodularity implies the general inequality
                    let ry = m.rank_of(a.with(y));
                    prop_assert!(m.rank_of(a.with(x).with(y)) + ra <= rx + ry);
                }
            }
        }
    }

    #[test]
    fn circuit_axioms(seed in any::<u64>()) {
        let m = matroid(seed, 8);
        let circuits = m.circuits();
        for (i, &c) in circuits.iter().enumerate() {
            for &d in &circuits[i + 1..] {
                prop_assert!(!c.is_subset(d) && !d.is_subset(c));
                for a in (c & d).iter() {
                    let rest = (c | d).without(a);
                    prop_assert!(circuits.iter().any(|e| e.is_subset(rest)));
                }
            }
        }
    }

    #[test]
    fn fixpoint_and_cover_bound(seed in any::<u64>()) {
        let m = matroid(seed, 9);
        prop_assert_eq!(m.cyclic_flats_recompute().unwrap(), m.to_family());
        for (f, rf) in m.cyclic_flats() {
            for (g, rg) in m.cyclic_flats() {
                if f != g {
                    prop_assert!(rg < rf + (g - f).len());
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent(seed in any::<u64>(), bits in any::<u64>()) {
        let m = matroid(seed, 10);
        let a = Subset::from_bits(bits) & m.full();
        let cl = m.closure(a);
        prop_assert!(a.is_subset(cl));
        prop_assert_eq!(m.closure(cl), cl);
        prop_assert_eq!(m.rank_of(cl), m.rank_of(a));
    }

    #[test]
    fn duality(seed in any::<u64>()) {
        let m = matroid(seed, 8);
        let d = dual(&m);
        prop_assert_eq!(&dual(&d), &m);
        let mut comps: Vec<Subset> = m.flats().iter().map(|&f| m.full() - f).collect();
        comps.sort();
        prop_assert_eq!(d.flats(), &comps[..]);
        prop_assert!(poset_isomorphic(&Reversed(m.flats()), d.flats()));
        prop_assert_eq!(rank_gen_brute(&d).unwrap(), rank_gen_brute(&m).unwrap().transpose());
        prop_assert_eq!(width(d.flats()), width(m.flats()));
        for x in 0..m.size() {
            let s = Subset::singleton(x);
            prop_assert_eq!(dual(&delete(&m, s).unwrap()), contract(&d, s).unwrap());
        }
    }

    #[test]
    fn minors_commute_with_duality(seed in any::<u64>(), c in any::<u64>(), dl in any::<u64>()) {
        let m = matroid(seed, 8);
        let c = Subset::from_bits(c) & m.full();
        let dl = Subset::from_bits(dl) & m.full() - c;
        let lhs = minor(&dual(&m), &MinorSpec::new(dl, c).unwrap()).unwrap();
        let rhs = dual(&minor(&m, &MinorSpec::new(c, dl).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cyclic_width_is_minor_closed(seed in any::<u64>()) {
        let m = matroid(seed, 9);
        let w = width(m.flats());
        for x in 0..m.size() {
            let s = Subset::singleton(x);
            prop_assert!(width(delete(&m, s).unwrap().flats()) <= w);
            prop_assert!(width(contract(&m, s).unwrap().flats()) <= w);
        }
        if m.rank() > 0 {
            prop_assert!(width(truncate(&m).unwrap().flats()) <= w);
        }
        if m.nullity() > 0 {
            prop_assert!(width(higgs_lift(&m).unwrap().flats()) <= w);
        }
        prop_assert!(width(free_extension(&m, None).unwrap().flats()) <= w);
        prop_assert!(width(free_coextension(&m, None).unwrap().flats()) <= w);
    }

    #[test]
    fn free_product_properties(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = relabel(&matroid(s1, 6), "m");
        let n = relabel(&matroid(s2, 6), "n");
        let p = free_product(&m, &n).unwrap();
        let en = Subset::from_bits(n.full().bits() << m.size());
        prop_assert_eq!(&delete(&p, en).unwrap(), &m);
        prop_assert_eq!(&contract(&p, m.full()).unwrap(), &n);
        prop_assert!(width(p.flats()) <= width(m.flats()).max(width(n.flats())));
        let conv = rank_gen_convolution(&rank_gen_brute(&m).unwrap(), m.rank(), &rank_gen_brute(&n).unwrap()).unwrap();
        prop_assert_eq!(conv, rank_gen_brute(&p).unwrap());
    }

    #[test]
    fn tutte_multiplies_over_direct_sums(s1 in any::<u64>(), s2 in any::<u64>()) {
        let m = relabel(&matroid(s1, 6), "m");
        let n = relabel(&matroid(s2, 6), "n");
        let sum = direct_sum(&m, &n).unwrap();
        let t = tutte_polynomial(&sum).unwrap();
        prop_assert_eq!(t.clone(), tutte_polynomial(&m).unwrap().mul(&tutte_polynomial(&n).unwrap()));
        prop_assert_eq!(t.eval(2, 2), BigInt::from(1u64 << sum.size()));
        let r = rank_gen_brute(&sum).unwrap();
        prop_assert_eq!(r.get(0, sum.nullity()), &BigInt::from(1));
        prop_assert_eq!(r.get(sum.rank(), 0), &BigInt::from(1));
    }

    #[test]
    fn isomorphism_survives_shuffling(seed in any::<u64>(), s2 in any::<u64>()) {
        let m = matroid(seed, 9);
        let p = shuffled(&mut seeded(s2), &m);
        prop_assert!(is_isomorphic(&m, &m).unwrap());
        prop_assert!(is_isomorphic(&m, &p).unwrap());
        prop_assert!(is_isomorphic(&p, &m).unwrap());
    }

    #[test]
    fn lattice_laws(n in 1usize..6, masks in prop::collection::vec(any::<u64>(), 1..12)) {
        let mut masks = masks;
        masks.push(0);
        masks.push(u64::MAX);
        let fam = family(n, &masks);
        if let Ok(t) = family_lattice_tables(&fam) {
            let k = fam.len();
            for a in 0..k {
                prop_assert_eq!(t.meet[a][a], a);
                prop_assert_eq!(t.join[a][a], a);
                for b in 0..k {
                    prop_assert_eq!(t.meet[a][b], t.meet[b][a]);
                    prop_assert_eq!(t.join[a][b], t.join[b][a]);
                    prop_assert_eq!(t.meet[a][t.join[a][b]], a);
                    prop_assert_eq!(t.join[a][t.meet[a][b]], a);
                    for c in 0..k {
                        prop_assert_eq!(t.meet[t.meet[a][b]][c], t.meet[a][t.meet[b][c]]);
                        prop_assert_eq!(t.join[t.join[a][b]][c], t.join[a][t.join[b][c]]);
                    }
                }
            }
        }
    }

    #[test]
    fn width_matches_antichain_oracle(n in 1usize..7, masks in prop::collection::vec(any::<u64>(), 1..14)) {
        let fam = family(n, &masks);
        prop_assert_eq!(width(&fam), antichain_oracle(fam.sets()));
        if is_chain(&fam) {
            prop_assert_eq!(width(&fam), 1);
        }
    }

    #[test]
    fn poset_isomorphism_is_reflexive_and_symmetric(
        n in 1usize..7,
        masks in prop::collection::vec(any::<u64>(), 1..10),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let fam = family(n, &masks);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut seeded(seed));
        let image: Vec<u64> = fam.sets().iter().map(|s| s.map(&perm).bits()).collect();
        let other = family(n, &image);
        prop_assert!(poset_isomorphic(&fam, &fam));
        prop_assert!(poset_isomorphic(&fam, &other));
        prop_assert!(poset_isomorphic(&other, &fam));
    }
}
