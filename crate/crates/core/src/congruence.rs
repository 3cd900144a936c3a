//! Local congruences: equivalences whose classes are convex sublattices.

use crate::error::{Error, Result};
use crate::poset::FiniteLattice;
use crate::reduction::{Partition, QuotientPoset};

fn check_elements<L: FiniteLattice>(lat: &L, s: &[usize]) -> Result<()> {
    if s.is_empty() {
        return Err(Error::InvalidInput("empty element set".into()));
    }
    match s.iter().find(|&&x| x >= lat.size()) {
        Some(x) => Err(Error::InvalidElement(format!("element {x} out of range"))),
        None => Ok(()),
    }
}

fn check_carrier<L: FiniteLattice>(lat: &L, p: &Partition) -> Result<()> {
    if p.carrier() != lat.size() {
        return Err(Error::MismatchedCarrier {
            left: p.carrier(),
            right: lat.size(),
        });
    }
    Ok(())
}

/// Closed under binary joins and meets, and order-convex.
pub fn is_convex_sublattice<L: FiniteLattice>(lat: &L, s: &[usize]) -> Result<bool> {
    check_elements(lat, s)?;
    let mut member = vec![false; lat.size()];
    for &x in s {
        member[x] = true;
    }
    for &a in s {
        for &b in s {
            if !member[lat.join(a, b)] || !member[lat.meet(a, b)] {
                return Ok(false);
            }
        }
    }
    // With binary closure in place the set has a least and a greatest
    // element, so convexity only needs the interval between them.
    let lo = lat.meet_all(s.iter().copied());
    let hi = lat.join_all(s.iter().copied());
    Ok((0..lat.size()).all(|c| member[c] || !(lat.leq(lo, c) && lat.leq(c, hi))))
}

/// Checks the two pairwise conditions: classes are order-convex, and a pair
/// is related exactly when its meet and join are related.
pub fn satisfies_pair_conditions<L: FiniteLattice>(lat: &L, p: &Partition) -> Result<bool> {
    check_carrier(lat, p)?;
    let n = lat.size();
    for a in 0..n {
        for b in 0..n {
            let related = p.same_block(a, b);
            if related != p.same_block(lat.meet(a, b), lat.join(a, b)) {
                return Ok(false);
            }
            if related && lat.leq(a, b) {
                for c in 0..n {
                    if lat.leq(a, c) && lat.leq(c, b) && !p.same_block(a, c) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

pub fn is_local_congruence<L: FiniteLattice>(lat: &L, p: &Partition) -> Result<bool> {
    check_carrier(lat, p)?;
    let mut by_blocks = true;
    for block in p.blocks() {
        if !is_convex_sublattice(lat, block)? {
            by_blocks = false;
            break;
        }
    }
    let by_pairs = satisfies_pair_conditions(lat, p)?;
    if by_blocks != by_pairs {
        return Err(Error::VerificationFailure(
            "block test and pair test disagree on a local congruence".into(),
        ));
    }
    Ok(by_blocks)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

/// The finest local congruence whose classes each contain a block of `p`.
///
/// Every class is grown to the interval between its meet and its join
/// until nothing changes.
pub fn least_local_congruence<L: FiniteLattice>(lat: &L, p: &Partition) -> Result<Partition> {
    check_carrier(lat, p)?;
    let n = lat.size();
    let mut uf = UnionFind::new(n);
    for block in p.blocks() {
        for &x in &block[1..] {
            uf.union(block[0], x);
        }
    }
    loop {
        let current = Partition::from_labels(&uf.labels());
        let mut changed = false;
        for block in current.blocks() {
            let lo = lat.meet_all(block.iter().copied());
            let hi = lat.join_all(block.iter().copied());
            for c in 0..n {
                if lat.leq(lo, c) && lat.leq(c, hi) {
                    changed |= uf.union(block[0], c);
                }
            }
        }
        if !changed {
            return Ok(current);
        }
    }
}

/// Every block of `p1` lies inside a block of `p2`.
pub fn partition_included(p1: &Partition, p2: &Partition) -> Result<bool> {
    if p1.carrier() != p2.carrier() {
        return Err(Error::MismatchedCarrier {
            left: p1.carrier(),
            right: p2.carrier(),
        });
    }
    Ok(p1
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&x| p2.same_block(b[0], x))))
}

fn block_joins<L: FiniteLattice>(lat: &L, delta: &Partition) -> Vec<usize> {
    delta
        .blocks()
        .iter()
        .map(|b| lat.join_all(b.iter().copied()))
        .collect()
}

/// `[x] ≤ [y]` iff the bottom lies in `[x]` or `x_M ⪯ y′` for some `y′ ∈ [y]`.
pub fn delta_relation_existential<L: FiniteLattice>(lat: &L, delta: &Partition) -> Vec<Vec<bool>> {
    let joins = block_joins(lat, delta);
    let bottom_block = delta.block_of(lat.bottom());
    let k = delta.len();
    (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    x == bottom_block || delta.block(y).iter().any(|&y2| lat.leq(joins[x], y2))
                })
                .collect()
        })
        .collect()
}

/// `[x] ≤ [y]` iff the bottom lies in `[x]` or `x_M ⪯ y_M`.
pub fn delta_relation_maxima<L: FiniteLattice>(lat: &L, delta: &Partition) -> Vec<Vec<bool>> {
    let joins = block_joins(lat, delta);
    let bottom_block = delta.block_of(lat.bottom());
    let k = delta.len();
    (0..k)
        .map(|x| (0..k).map(|y| x == bottom_block || lat.leq(joins[x], joins[y])).collect())
        .collect()
}

/// The classes of a local congruence ordered by their joins.
pub fn quotient_order_delta<L: FiniteLattice>(lat: &L, delta: &Partition) -> Result<QuotientPoset> {
    if !is_local_congruence(lat, delta)? {
        return Err(Error::PreconditionViolation(
            "partition is not a local congruence".into(),
        ));
    }
    let relation = delta_relation_maxima(lat, delta);
    if relation != delta_relation_existential(lat, delta) {
        return Err(Error::VerificationFailure(
            "the two forms of the class order disagree".into(),
        ));
    }
    let maxima = block_joins(lat, delta);
    let minima = delta
        .blocks()
        .iter()
        .map(|b| Some(lat.meet_all(b.iter().copied())))
        .collect();
    QuotientPoset::new(
        delta.clone(),
        maxima,
        minima,
        |a, b| relation[a][b],
        |c| lat.poset().label(c).to_string(),
    )
}
