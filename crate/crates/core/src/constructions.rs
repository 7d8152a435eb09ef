//! Generators: uniform matroids, lattice realization, the `P_n` family,
//! the permutation family with isomorphic cyclic-flat lattices, and a small
//! catalog of named matroids.

use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankedFamily};
use crate::minors::{direct_sum, truncate};
use crate::poset::{FiniteLattice, Poset};
use crate::subset::{default_labels, GroundSet, Subset};

/// `U_{r,n}` on the labels `a`, `b`, ...
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    uniform_on(r, &default_labels(n))
}

/// `U_{r,n}` on the given labels (`n = labels.len()`).
pub fn uniform_on<S: AsRef<str>>(r: usize, labels: &[S]) -> Result<Matroid> {
    let n = labels.len();
    if r > n {
        return Err(Error::InvalidParameters(format!(
            "U_{{{r},{n}}} needs r <= n"
        )));
    }
    let ground = GroundSet::new(labels.iter().map(|s| s.as_ref().to_string()))?;
    let full = ground.full();
    let entries = if r == n {
        vec![(Subset::EMPTY, 0)]
    } else if r == 0 {
        vec![(full, 0)]
    } else {
        vec![(Subset::EMPTY, 0), (full, r)]
    };
    Matroid::new(&RankedFamily::new(ground, entries)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Realization {
    /// Lattice elements below the top sit on simplex vertices, with one
    /// satellite point per lattice element.
    #[default]
    Plain,
    /// Satellite blocks of `|V_z| + 1` points and no vertex elements; the
    /// cyclic flats then form a sublattice of the lattice of flats.
    Sublattice,
}

/// A matroid whose lattice of cyclic flats is isomorphic to `lattice`,
/// together with the isomorphism as `witness[z] = index of the flat`.
///
/// With `V_z = { y ≠ 1 : y ≱ z }`, the plain variant has ground set
/// `V_1 ∪ { s:z }` and cyclic flats `V_z ∪ { s:x : x ≤ z }` of rank `|V_z|`.
pub fn realize_lattice(
    lattice: &FiniteLattice,
    variant: Realization,
) -> Result<(Matroid, Vec<usize>)> {
    let n = lattice.len();
    let top = lattice.top();
    let basis: Vec<usize> = (0..n).filter(|&y| y != top).collect();
    let v: Vec<Vec<usize>> = (0..n)
        .map(|z| {
            basis
                .iter()
                .copied()
                .filter(|&y| !lattice.leq(z, y))
                .collect()
        })
        .collect();

    let mut labels = Vec::new();
    let flat_of: Vec<(Subset, usize)> = match variant {
        Realization::Plain => {
            // vertices first (positions 0..|B|), then satellites s:z at |B| + z
            labels.extend(basis.iter().map(|&y| lattice.name(y).to_string()));
            labels.extend((0..n).map(|z| format!("s:{}", lattice.name(z))));
            let vpos = |y: usize| basis.iter().position(|&b| b == y).unwrap();
            (0..n)
                .map(|z| {
                    let verts: Subset = v[z].iter().map(|&y| vpos(y)).collect();
                    let sats: Subset = (0..n)
                        .filter(|&x| lattice.leq(x, z))
                        .map(|x| basis.len() + x)
                        .collect();
                    (verts | sats, v[z].len())
                })
                .collect()
        }
        Realization::Sublattice => {
            let mut blocks = Vec::with_capacity(n);
            for z in 0..n {
                let start = labels.len();
                let k = v[z].len() + 1;
                labels.extend((1..=k).map(|i| format!("s:{}:{i}", lattice.name(z))));
                blocks.push(Subset::from_indices(start..start + k));
            }
            (0..n)
                .map(|z| {
                    let f = (0..n)
                        .filter(|&y| lattice.leq(y, z))
                        .fold(Subset::EMPTY, |acc, y| acc | blocks[y]);
                    (f, v[z].len())
                })
                .collect()
        }
    };
    let ground = GroundSet::new(labels)?;
    let m = Matroid::new(&RankedFamily::new(ground, flat_of.iter().copied())?)?;
    let witness = flat_of
        .iter()
        .map(|&(f, _)| m.flat_index(f).expect("every constructed set is a flat"))
        .collect();
    Ok((m, witness))
}

/// `P_n`: the truncation to rank `n` of `U_{n-1,n} ⊕ U_{n-1,n}`.
pub fn excluded_minor_pn(n: usize) -> Result<Matroid> {
    if n < 2 {
        return Err(Error::InvalidParameters("P_n needs n >= 2".into()));
    }
    let labels = default_labels(2 * n);
    let mut m = direct_sum(
        &uniform_on(n - 1, &labels[..n])?,
        &uniform_on(n - 1, &labels[n..])?,
    )?;
    while m.rank() > n {
        m = truncate(&m)?;
    }
    Ok(m)
}

/// The matroid `M_σ` on `4n + 5` elements whose cyclic flats are
/// `∅ ⊂ A_0 ⊂ ... ⊂ A_n ⊂ S` and `∅ ⊂ B_0 ⊂ ... ⊂ B_n ⊂ S`, where
/// `A_i = A_{i-1} ∪ {z_i, w_i}` and `B_i = B_{i-1} ∪ {z_i, w_σ(i)}`.
///
/// `sigma` is a permutation of `1..=n` in one-line notation.
pub fn gimenez_family(n: usize, sigma: &[usize]) -> Result<Matroid> {
    if n == 0 {
        return Err(Error::InvalidParameters("n must be at least 1".into()));
    }
    let mut seen = vec![false; n + 1];
    if sigma.len() != n
        || sigma
            .iter()
            .any(|&s| s == 0 || s > n || std::mem::replace(&mut seen[s], true))
    {
        return Err(Error::InvalidParameters(format!(
            "{sigma:?} is not a permutation of 1..={n}"
        )));
    }
    let mut labels: Vec<String> = ["a", "a'", "a''", "b", "b'"].map(String::from).to_vec();
    for p in ["x", "y", "z", "w"] {
        labels.extend((1..=n).map(|i| format!("{p}{i}")));
    }
    let ground = GroundSet::new(labels)?;
    let idx = |l: String| ground.index_of(&l).unwrap();
    let mut a = Subset::from_indices([0, 1, 2]);
    let mut b = Subset::from_indices([3, 4]);
    for i in 1..=n {
        a = a.with(idx(format!("x{i}")));
        b = b.with(idx(format!("y{i}")));
    }
    let mut entries = vec![(Subset::EMPTY, 0), (ground.full(), 2 * n + 2)];
    entries.push((a, n + 1));
    entries.push((b, n + 1));
    for i in 1..=n {
        let z = idx(format!("z{i}"));
        a = a.with(z).with(idx(format!("w{i}")));
        b = b.with(z).with(idx(format!("w{}", sigma[i - 1])));
        entries.push((a, n + 1 + i));
        entries.push((b, n + 1 + i));
    }
    Matroid::new(&RankedFamily::new(ground, entries)?)
}

/// Recovers σ from a matroid produced by [`gimenez_family`]: the `w` element
/// added at step `i` of the `B` chain is `w_σ(i)`.
pub fn gimenez_sigma(m: &Matroid, n: usize) -> Result<Vec<usize>> {
    let g = m.ground();
    let find = |l: &str| {
        g.index_of(l).ok_or_else(|| Error::UnknownLabel {
            label: l.to_string(),
            context: "gimenez".into(),
        })
    };
    let b0 = find("b")?;
    let z: Vec<usize> = (1..=n)
        .map(|i| find(&format!("z{i}")))
        .collect::<Result<_>>()?;
    let w: Vec<usize> = (1..=n)
        .map(|i| find(&format!("w{i}")))
        .collect::<Result<_>>()?;
    // B-chain members other than S, in increasing size
    let top = m.top();
    let chain: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|f| f.contains(b0) && *f != top)
        .collect();
    if chain.len() != n + 1 {
        return Err(Error::InvalidParameters(
            "not a member of the family".into(),
        ));
    }
    let mut sigma = Vec::with_capacity(n);
    for i in 1..=n {
        let step = chain[i] - chain[i - 1];
        if !step.contains(z[i - 1]) {
            return Err(Error::InvalidParameters(
                "not a member of the family".into(),
            ));
        }
        let j = (0..n)
            .find(|&j| step.contains(w[j]))
            .ok_or_else(|| Error::InvalidParameters("not a member of the family".into()))?;
        sigma.push(j + 1);
    }
    Ok(sigma)
}

/// Names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &["fano", "mk4", "nonfano", "u24", "w3"];

/// Named matroids: `mk4` (the cycle matroid of K_4, on edges `12`...`34`),
/// `w3` (the rank-3 whirl), `fano`, `nonfano` and `u24`.
pub fn catalog(name: &str) -> Result<Matroid> {
    const K4_EDGES: [&str; 6] = ["12", "13", "14", "23", "24", "34"];
    const K4_TRIANGLES: [[&str; 3]; 4] = [
        ["12", "13", "23"],
        ["12", "14", "24"],
        ["13", "14", "34"],
        ["23", "24", "34"],
    ];
    const FANO_LINES: [[&str; 3]; 7] = [
        ["1", "2", "3"],
        ["1", "4", "5"],
        ["1", "6", "7"],
        ["2", "4", "6"],
        ["2", "5", "7"],
        ["3", "4", "7"],
        ["3", "5", "6"],
    ];
    let planes = |labels: &[&str], lines: &[[&str; 3]], rank: usize| -> Result<Matroid> {
        let ground = GroundSet::new(labels.iter().copied())?;
        let mut entries = vec![(Subset::EMPTY, 0), (ground.full(), rank)];
        for l in lines {
            entries.push((ground.subset(l)?, 2));
        }
        Matroid::new(&RankedFamily::new(ground, entries)?)
    };
    let fano_pts = ["1", "2", "3", "4", "5", "6", "7"];
    match name {
        "mk4" => planes(&K4_EDGES, &K4_TRIANGLES, 3),
        "w3" => planes(&K4_EDGES, &K4_TRIANGLES[1..], 3),
        "fano" => planes(&fano_pts, &FANO_LINES, 3),
        "nonfano" => planes(&fano_pts, &FANO_LINES[..6], 3),
        "u24" => uniform(2, 4),
        _ => Err(Error::UnknownCatalogName(name.to_string())),
    }
}
