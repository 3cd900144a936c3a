//! The equivalence on concepts induced by keeping only a subset of
//! attributes, and its quotient.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{build_lattice, ConceptLattice};
use crate::poset::{FiniteLattice, FinitePoset, NonLatticeWitness};
use crate::subset::{AttributeSet, ObjectSet};

/// A partition of `0..carrier` into nonempty disjoint blocks.
///
/// Blocks are kept sorted internally and ordered by their least element, so
/// two partitions with the same blocks compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn from_blocks(carrier: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; carrier];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::MalformedPartition("empty block".into()));
            }
            for &x in block {
                if x >= carrier {
                    return Err(Error::MalformedPartition(format!(
                        "element {x} outside a carrier of {carrier}"
                    )));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::MalformedPartition(format!("element {x} is in two blocks")));
                }
                block_of[x] = b;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::MalformedPartition(format!("element {x} is in no block")));
        }
        Ok(Self::canonical(blocks))
    }

    /// Groups `0..labels.len()` by equal label.
    pub fn from_labels<K: std::hash::Hash + Eq>(labels: &[K]) -> Self {
        let mut first: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, k) in labels.iter().enumerate() {
            let b = *first.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
        }
        Self::canonical(blocks)
    }

    pub fn singletons(carrier: usize) -> Self {
        Self::canonical((0..carrier).map(|x| vec![x]).collect())
    }

    fn canonical(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_by_key(|b| b[0]);
        let carrier = blocks.iter().map(|b| b.len()).sum();
        let mut block_of = vec![0; carrier];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn carrier(&self) -> usize {
        self.block_of.len()
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    /// Index of `block` among the blocks, if it is one of them.
    pub fn find_block(&self, block: &[usize]) -> Option<usize> {
        let mut sorted = block.to_vec();
        sorted.sort_unstable();
        let first = *sorted.first()?;
        let b = *self.block_of.get(first)?;
        (self.blocks[b] == sorted).then_some(b)
    }
}

/// The blocks of a partition ordered as a poset, with the per-block join
/// (`maxima`) and the per-block meet when it lies in the block (`minima`).
#[derive(Debug, Clone)]
pub struct QuotientPoset {
    pub partition: Partition,
    pub order: FinitePoset,
    pub maxima: Vec<usize>,
    pub minima: Vec<Option<usize>>,
    lattice: std::result::Result<(), NonLatticeWitness>,
}

impl QuotientPoset {
    pub(crate) fn new(
        partition: Partition,
        maxima: Vec<usize>,
        minima: Vec<Option<usize>>,
        leq: impl Fn(usize, usize) -> bool,
        element_label: impl Fn(usize) -> String,
    ) -> Result<Self> {
        let labels = maxima.iter().map(|&m| format!("[{}]", element_label(m))).collect();
        let order = FinitePoset::from_relation(labels, leq).map_err(|e| {
            Error::VerificationFailure(format!("quotient relation is not a partial order: {e}"))
        })?;
        let lattice = order.lattice_check();
        Ok(QuotientPoset {
            partition,
            order,
            maxima,
            minima,
            lattice,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice.is_ok()
    }

    pub fn lattice_witness(&self) -> Option<NonLatticeWitness> {
        self.lattice.err()
    }

    /// Block of the quotient containing element `x` of the underlying lattice.
    pub fn class_of(&self, x: usize) -> usize {
        self.partition.block_of(x)
    }
}

/// `X ↦ X↑D↓` for the extent of concept `c`.
pub fn closure_key(lat: &ConceptLattice, d: &AttributeSet, c: usize) -> Result<ObjectSet> {
    let ctx = lat.context();
    let up = ctx.derive_up_restricted(&lat.concept(c).extent, d)?;
    ctx.derive_down(&up)
}

fn keys(lat: &ConceptLattice, d: &AttributeSet) -> Result<Vec<ObjectSet>> {
    (0..lat.len()).map(|c| closure_key(lat, d, c)).collect()
}

/// The partition identifying concepts whose extents have the same closure
/// once attributes outside `d` are ignored.
pub fn rho_d(lat: &ConceptLattice, d: &AttributeSet) -> Result<Partition> {
    Ok(Partition::from_labels(&keys(lat, d)?))
}

/// The concept with extent `X↑D↓` shared by every member of `block`.
pub fn class_maximum(lat: &ConceptLattice, d: &AttributeSet, block: &[usize]) -> Result<usize> {
    let first = *block
        .first()
        .ok_or_else(|| Error::InvalidInput("empty block".into()))?;
    if let Some(&bad) = block.iter().find(|&&c| c >= lat.len()) {
        return Err(Error::InvalidElement(format!("concept index {bad} out of range")));
    }
    let key = closure_key(lat, d, first)?;
    for &c in &block[1..] {
        if closure_key(lat, d, c)? != key {
            return Err(Error::InvalidInput(format!(
                "concepts {} and {} are not in the same class",
                lat.id(first),
                lat.id(c)
            )));
        }
    }
    lat.index_of_extent(&key)
        .ok_or_else(|| Error::VerificationFailure("class key is not an extent".into()))
}

/// The meet of `block`.
pub fn class_minimum(lat: &ConceptLattice, d: &AttributeSet, block: &[usize]) -> Result<usize> {
    class_maximum(lat, d, block)?;
    lat.meet_of(block)
}

/// The quotient by `rho_d` together with its correspondence to the reduced
/// concept lattice.
#[derive(Debug, Clone)]
pub struct ReductionQuotient {
    pub quotient: QuotientPoset,
    /// `X↑D↓` per block.
    pub keys: Vec<ObjectSet>,
    /// Lattice of the context restricted to the kept attributes.
    pub reduced: ConceptLattice,
    /// Block index → concept index in `reduced`.
    pub reduced_index: Vec<usize>,
}

/// Orders the classes of `rho_d` by inclusion of their keys.
pub fn quotient_order_d(lat: &ConceptLattice, d: &AttributeSet) -> Result<ReductionQuotient> {
    let all_keys = keys(lat, d)?;
    let partition = Partition::from_labels(&all_keys);
    let block_keys: Vec<ObjectSet> = partition
        .blocks()
        .iter()
        .map(|b| all_keys[b[0]].clone())
        .collect();
    let maxima = block_keys
        .iter()
        .map(|k| {
            lat.index_of_extent(k)
                .ok_or_else(|| Error::VerificationFailure("class key is not an extent".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let minima = partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let m = lat.meet_of(b).expect("valid block");
            (partition.block_of(m) == i).then_some(m)
        })
        .collect();
    let quotient = QuotientPoset::new(
        partition,
        maxima,
        minima,
        |a, b| block_keys[a].is_subset(&block_keys[b]),
        |c| lat.id(c).to_string(),
    )?;
    let reduced = build_lattice(&lat.context().restrict_attributes(d)?);
    let reduced_index = block_keys
        .iter()
        .map(|k| {
            reduced.index_of_extent(k).ok_or_else(|| {
                Error::VerificationFailure("class key is not an extent of the reduced context".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReductionQuotient {
        quotient,
        keys: block_keys,
        reduced,
        reduced_index,
    })
}

/// The mutually inverse, order-preserving maps between the quotient by
/// `rho_d` and the reduced concept lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionWitness {
    /// Block index → reduced concept index.
    pub phi: Vec<usize>,
    /// Reduced concept index → block index.
    pub psi: Vec<usize>,
}

/// Builds `φ([(X, Y)]) = (X↑D↓, X↑D)` and `ψ(X, Y) = [(X, X↑)]` and checks
/// that they are inverse order-isomorphisms.
pub fn verify_reduction_isomorphism(
    lat: &ConceptLattice,
    d: &AttributeSet,
) -> Result<ReductionWitness> {
    let ctx = lat.context();
    let partition = rho_d(lat, d)?;
    let reduced_ctx = ctx.restrict_attributes(d)?;
    let reduced = build_lattice(&reduced_ctx);
    let kept: Vec<usize> = d.to_vec();
    let fail = |m: String| Error::VerificationFailure(m);

    let mut phi = Vec::with_capacity(partition.len());
    for block in partition.blocks() {
        let x = &lat.concept(block[0]).extent;
        let up_d = ctx.derive_up_restricted(x, d)?;
        let key = ctx.derive_down(&up_d)?;
        // Re-index the restricted intent into the reduced attribute order.
        let intent = AttributeSet::from_indices(
            kept.len(),
            kept.iter().enumerate().filter(|(_, &a)| up_d.contains(a)).map(|(i, _)| i),
        );
        let image = reduced
            .index_of_extent(&key)
            .filter(|&r| reduced.concept(r).intent == intent)
            .ok_or_else(|| fail(format!("φ([{}]) is not a reduced concept", lat.id(block[0]))))?;
        phi.push(image);
    }

    let mut psi = Vec::with_capacity(reduced.len());
    for r in 0..reduced.len() {
        let x = &reduced.concept(r).extent;
        let c = lat
            .index_of_extent(x)
            .ok_or_else(|| fail(format!("reduced extent of {} is not an original extent", reduced.id(r))))?;
        psi.push(partition.block_of(c));
    }

    for (b, &r) in phi.iter().enumerate() {
        if psi[r] != b {
            return Err(fail(format!("ψ∘φ moves block {b}")));
        }
    }
    for (r, &b) in psi.iter().enumerate() {
        if phi[b] != r {
            return Err(fail(format!("φ∘ψ moves reduced concept {}", reduced.id(r))));
        }
    }

    let keys: Vec<ObjectSet> = partition
        .blocks()
        .iter()
        .map(|b| closure_key(lat, d, b[0]))
        .collect::<Result<_>>()?;
    for a in 0..phi.len() {
        for b in 0..phi.len() {
            let quotient_leq = keys[a].is_subset(&keys[b]);
            if quotient_leq != reduced.leq(phi[a], phi[b]) {
                return Err(fail(format!("φ does not preserve the order between blocks {a} and {b}")));
            }
        }
    }
    Ok(ReductionWitness { phi, psi })
}
