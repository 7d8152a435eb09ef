//! The free product `M □ N` built directly on cyclic flats.
//!
//! The flats of `M` other than `E(M)` are kept, every nonempty cyclic flat
//! `Y` of `N` contributes `E(M) ∪ Y` with rank `r(M) + r_N(Y)`, and `E(M)`
//! itself stays a cyclic flat exactly when `M` has no isthmus and `N` has
//! no loop.

use crate::error::{Error, Result};
use crate::matroid::{Matroid, RankedFamily};
use crate::subset::{GroundSet, Subset};

pub fn free_product(m: &Matroid, n: &Matroid) -> Result<Matroid> {
    let ground = m.ground().disjoint_union(n.ground())?;
    let em = m.full();
    let shift = m.size();
    let lift = |y: Subset| em | Subset::from_bits(y.bits() << shift);

    let mut entries: Vec<(Subset, usize)> = m.cyclic_flats().filter(|&(x, _)| x != em).collect();
    entries.extend(
        n.cyclic_flats()
            .filter(|&(y, _)| !y.is_empty())
            .map(|(y, r)| (lift(y), m.rank() + r)),
    );
    let m_stats = m.basic_stats();
    let n_stats = n.basic_stats();
    if m_stats.isthmuses.is_empty() && n_stats.loops.is_empty() {
        entries.push((em, m.rank()));
    }
    Matroid::new(&RankedFamily::new(ground, entries)?)
}

fn single(label: &str, rank: usize) -> Matroid {
    let ground = GroundSet::new([label]).expect("one label");
    let flat = if rank == 0 {
        Subset::singleton(0)
    } else {
        Subset::EMPTY
    };
    Matroid::new(&RankedFamily::new(ground, [(flat, 0)]).expect("one entry")).expect("valid")
}

fn fresh(m: &Matroid, label: Option<&str>) -> Result<String> {
    match label {
        Some(l) if m.ground().contains_label(l) => Err(Error::LabelInUse(l.to_string())),
        Some(l) => Ok(l.to_string()),
        None => Ok(m.ground().fresh_label()),
    }
}

/// `M □ U_{0,1}`: adds a new element in general position. Without a label,
/// the first free name among `e0`, `e1`, ... is used.
pub fn free_extension(m: &Matroid, label: Option<&str>) -> Result<Matroid> {
    let label = fresh(m, label)?;
    free_product(m, &single(&label, 0))
}

/// `U_{1,1} □ M`, with the new element placed last in the ground set.
pub fn free_coextension(m: &Matroid, label: Option<&str>) -> Result<Matroid> {
    let label = fresh(m, label)?;
    let p = free_product(&single(&label, 1), m)?;
    let order = GroundSet::new(m.ground().labels().iter().cloned().chain([label]))?;
    p.reindexed(order)
}

/// `r_M(X) + r_N(Y) + min(r(M) - r_M(X), ν_N(Y))`, the rank of `X ∪ Y` in
/// `M □ N`. `x` indexes `E(M)` and `y` indexes `E(N)`.
pub fn fp_rank_check(m: &Matroid, n: &Matroid, x: Subset, y: Subset) -> usize {
    let rx = m.rank_of(x);
    let ry = n.rank_of(y);
    rx + ry + (m.rank() - rx).min(y.len() - ry)
}

/// `X ∪ Y` is independent in `M □ N` iff `X` is independent in `M` and
/// `ν_N(Y) <= r(M) - |X|`.
pub fn fp_independent_check(m: &Matroid, n: &Matroid, x: Subset, y: Subset) -> bool {
    m.is_independent(x) && x.len() <= m.rank() && n.nullity_of(y) <= m.rank() - x.len()
}

/// Embeds a subset of `E(N)` into the ground set of `M □ N`.
pub fn shift_into_product(m: &Matroid, y: Subset) -> Subset {
    Subset::from_bits(y.bits() << m.size())
}
