//! Dedekind–MacNeille completion of a finite poset.

use std::collections::BTreeSet;

use crate::poset::{find_isomorphism, FiniteLattice, FinitePoset, Lattice};
use crate::subset::ElementSet;

/// Common upper bounds of `s`; the empty set is bounded by everything.
pub fn upper_bounds(p: &FinitePoset, s: &[usize]) -> ElementSet {
    p.upper_bounds(s.iter().copied())
}

/// Common lower bounds of `s`.
pub fn lower_bounds(p: &FinitePoset, s: &[usize]) -> ElementSet {
    p.lower_bounds(s.iter().copied())
}

/// The completion together with its cuts and the embedding of the poset.
#[derive(Debug, Clone)]
pub struct Completion {
    pub lattice: Lattice,
    /// Cut `i` is the set of poset elements below completion element `i`.
    pub cuts: Vec<ElementSet>,
    /// Poset element → completion element of its principal down-set.
    pub embedding: Vec<usize>,
}

/// All cuts `A = A^{ul}`, generated as intersections of principal down-sets.
pub fn cuts(p: &FinitePoset) -> Vec<ElementSet> {
    let mut all: BTreeSet<ElementSet> = BTreeSet::new();
    all.insert(ElementSet::full(p.len()));
    for x in 0..p.len() {
        let down = p.down_set(x).clone();
        let mut fresh: Vec<ElementSet> = all.iter().map(|c| c.intersection(&down)).collect();
        fresh.push(down);
        all.extend(fresh);
    }
    all.into_iter().collect()
}

pub fn dm_completion(p: &FinitePoset) -> Completion {
    let cuts = cuts(p);
    let embedding: Vec<usize> = (0..p.len())
        .map(|x| {
            cuts.binary_search(p.down_set(x))
                .expect("principal down-sets are cuts")
        })
        .collect();
    let labels = cuts
        .iter()
        .enumerate()
        .map(|(i, cut)| match embedding.iter().position(|&e| e == i) {
            Some(x) => p.label(x).to_string(),
            None => {
                let names: Vec<&str> = p.maximal_elements(cut).into_iter().map(|x| p.label(x)).collect();
                format!("<{}>", names.join(","))
            }
        })
        .collect();
    let order = FinitePoset::from_relation(labels, |a, b| cuts[a].is_subset(&cuts[b]))
        .expect("inclusion is a partial order");
    let lattice = Lattice::from_poset(order).expect("cuts form a lattice");
    Completion {
        lattice,
        cuts,
        embedding,
    }
}

/// Every element is the join of the members of `q` below it.
pub fn is_join_dense<L: FiniteLattice>(lat: &L, q: &[usize]) -> bool {
    (0..lat.size()).all(|x| lat.join_all(q.iter().copied().filter(|&y| lat.leq(y, x))) == x)
}

/// Every element is the meet of the members of `q` above it.
pub fn is_meet_dense<L: FiniteLattice>(lat: &L, q: &[usize]) -> bool {
    (0..lat.size()).all(|x| lat.meet_all(q.iter().copied().filter(|&y| lat.leq(x, y))) == x)
}

/// Join- and meet-irreducibles together, ascending.
pub fn irreducibles<L: FiniteLattice>(lat: &L) -> Vec<usize> {
    let set: BTreeSet<usize> = lat
        .join_irreducibles()
        .into_iter()
        .chain(lat.meet_irreducibles())
        .collect();
    set.into_iter().collect()
}

/// The lattice is recovered by completing its irreducibles, and no smaller
/// subset of them is both join- and meet-dense.
pub fn verify_density<L: FiniteLattice>(lat: &L) -> bool {
    let q = irreducibles(lat);
    let completion = dm_completion(&lat.poset().subposet(&q));
    if find_isomorphism(completion.lattice.poset(), lat.poset()).is_none() {
        return false;
    }
    if !is_join_dense(lat, &q) || !is_meet_dense(lat, &q) {
        return false;
    }
    // Density is preserved by supersets, so dropping one element at a time
    // covers every proper subset.
    (0..q.len()).all(|i| {
        let smaller: Vec<usize> = q.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
        !(is_join_dense(lat, &smaller) && is_meet_dense(lat, &smaller))
    })
}
