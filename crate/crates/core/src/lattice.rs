//! Concept enumeration and the concept lattice.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::poset::{find_isomorphism, FiniteLattice, FinitePoset};
use crate::subset::{AttributeSet, ObjectSet};

/// A pair `(extent, intent)` closed under both derivations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concept {
    pub extent: ObjectSet,
    pub intent: AttributeSet,
}

impl Concept {
    /// True iff the pair is closed in `ctx`.
    pub fn is_closed_in(&self, ctx: &FormalContext) -> bool {
        ctx.derive_up(&self.extent).ok().as_ref() == Some(&self.intent)
            && ctx.derive_down(&self.intent).ok().as_ref() == Some(&self.extent)
    }
}

/// All concepts of a context ordered by extent inclusion.
///
/// Concepts are indexed in colexicographic extent order, so index 0 is the
/// bottom and the last index is the top. The lattice keeps a copy of its
/// context, which generator sets and the surgery routines need.
#[derive(Debug, Clone)]
pub struct ConceptLattice {
    context: FormalContext,
    concepts: Vec<Concept>,
    poset: FinitePoset,
    by_extent: HashMap<ObjectSet, usize>,
    object_concepts: Vec<usize>,
    attribute_concepts: Vec<usize>,
}

/// Enumerates every extent of `ctx` in lectic order (NextClosure over the
/// object closure `X ↦ X↑↓`).
pub fn enumerate_extents(ctx: &FormalContext) -> Vec<ObjectSet> {
    let n = ctx.num_objects();
    let close = |x: &ObjectSet| ctx.down(&ctx.up(x));
    let mut current = close(&ObjectSet::empty(n));
    let mut out = vec![current.clone()];
    'next: loop {
        let mut working = current.clone();
        for i in (0..n).rev() {
            if working.contains(i) {
                working.remove(i);
                continue;
            }
            let mut candidate = working.clone();
            candidate.insert(i);
            let closed = close(&candidate);
            let fresh = closed.difference(&working);
            if fresh.iter().next().is_some_and(|m| m >= i) {
                current = closed;
                out.push(current.clone());
                continue 'next;
            }
        }
        break;
    }
    out
}

/// Builds the concept lattice of `ctx`.
pub fn build_lattice(ctx: &FormalContext) -> ConceptLattice {
    ConceptLattice::new(ctx.clone())
}

impl ConceptLattice {
    pub fn new(context: FormalContext) -> Self {
        let mut extents = enumerate_extents(&context);
        extents.sort();
        let concepts: Vec<Concept> = extents
            .into_iter()
            .map(|extent| Concept {
                intent: context.up(&extent),
                extent,
            })
            .collect();
        let labels = (0..concepts.len()).map(|i| format!("C{i}")).collect();
        let poset = FinitePoset::from_relation(labels, |a, b| {
            concepts[a].extent.is_subset(&concepts[b].extent)
        })
        .expect("extent inclusion is a partial order");
        let by_extent: HashMap<ObjectSet, usize> = concepts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.extent.clone(), i))
            .collect();
        let object_concepts = (0..context.num_objects())
            .map(|x| {
                let single = ObjectSet::from_indices(context.num_objects(), [x]);
                by_extent[&context.down(&context.up(&single))]
            })
            .collect();
        let attribute_concepts = (0..context.num_attributes())
            .map(|a| by_extent[context.row(a)])
            .collect();
        ConceptLattice {
            context,
            concepts,
            poset,
            by_extent,
            object_concepts,
            attribute_concepts,
        }
    }

    pub fn context(&self) -> &FormalContext {
        &self.context
    }

    pub fn concepts(&self) -> &[Concept] {
        &self.concepts
    }

    pub fn concept(&self, i: usize) -> &Concept {
        &self.concepts[i]
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    /// Resolves a report id such as `C4`.
    pub fn index_of_id(&self, id: &str) -> Result<usize> {
        id.strip_prefix('C')
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&i| i < self.len())
            .ok_or_else(|| Error::InvalidElement(format!("no concept with id `{id}`")))
    }

    pub fn index_of_extent(&self, extent: &ObjectSet) -> Option<usize> {
        self.by_extent.get(extent).copied()
    }

    pub fn index_of_intent(&self, intent: &AttributeSet) -> Option<usize> {
        let extent = self.context.derive_down(intent).ok()?;
        self.index_of_extent(&extent)
            .filter(|&i| &self.concepts[i].intent == intent)
    }

    pub fn index_of(&self, concept: &Concept) -> Result<usize> {
        self.index_of_extent(&concept.extent)
            .filter(|&i| self.concepts[i].intent == concept.intent)
            .ok_or_else(|| Error::InvalidElement("concept does not belong to this lattice".into()))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::InvalidElement(format!(
                "concept index {i} outside a lattice of {} concepts",
                self.len()
            )));
        }
        Ok(())
    }

    /// Index of the object concept `(b↑↓, b↑)`.
    pub fn object_concept_index(&self, object: usize) -> usize {
        self.object_concepts[object]
    }

    /// Index of the attribute concept `(a↓, a↓↑)`.
    pub fn attribute_concept_index(&self, attribute: usize) -> usize {
        self.attribute_concepts[attribute]
    }

    /// Objects generating concept `i`.
    pub fn obg(&self, i: usize) -> Result<ObjectSet> {
        self.check_index(i)?;
        Ok(ObjectSet::from_indices(
            self.context.num_objects(),
            (0..self.context.num_objects()).filter(|&x| self.object_concepts[x] == i),
        ))
    }

    /// Attributes generating concept `i`.
    pub fn atg(&self, i: usize) -> Result<AttributeSet> {
        self.check_index(i)?;
        Ok(AttributeSet::from_indices(
            self.context.num_attributes(),
            (0..self.context.num_attributes()).filter(|&a| self.attribute_concepts[a] == i),
        ))
    }

    /// Join of a set of concepts via the closure of the union of extents.
    pub fn join_of(&self, indices: &[usize]) -> Result<usize> {
        let mut union = ObjectSet::empty(self.context.num_objects());
        for &i in indices {
            self.check_index(i)?;
            union.union_with(&self.concepts[i].extent);
        }
        Ok(self.by_extent[&self.context.down(&self.context.up(&union))])
    }

    /// Meet of a set of concepts via the intersection of extents.
    pub fn meet_of(&self, indices: &[usize]) -> Result<usize> {
        let mut inter = ObjectSet::full(self.context.num_objects());
        for &i in indices {
            self.check_index(i)?;
            inter.intersect_with(&self.concepts[i].extent);
        }
        Ok(self.by_extent[&inter])
    }

    pub fn intents(&self) -> Vec<AttributeSet> {
        self.concepts.iter().map(|c| c.intent.clone()).collect()
    }

    pub fn extents(&self) -> Vec<ObjectSet> {
        self.concepts.iter().map(|c| c.extent.clone()).collect()
    }
}

impl FiniteLattice for ConceptLattice {
    fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    fn join(&self, a: usize, b: usize) -> usize {
        let union = self.concepts[a].extent.union(&self.concepts[b].extent);
        self.by_extent[&self.context.down(&self.context.up(&union))]
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.by_extent[&self.concepts[a].extent.intersection(&self.concepts[b].extent)]
    }

    fn top(&self) -> usize {
        self.concepts.len() - 1
    }

    fn bottom(&self) -> usize {
        0
    }
}

/// `(b↑↓, b↑)` for the named object.
pub fn object_concept(ctx: &FormalContext, object: &str) -> Result<Concept> {
    let x = ctx.object_index(object)?;
    let single = ObjectSet::from_indices(ctx.num_objects(), [x]);
    let intent = ctx.up(&single);
    Ok(Concept {
        extent: ctx.down(&intent),
        intent,
    })
}

/// `(a↓, a↓↑)` for the named attribute.
pub fn attribute_concept(ctx: &FormalContext, attribute: &str) -> Result<Concept> {
    let a = ctx.attribute_index(attribute)?;
    let extent = ctx.row(a).clone();
    Ok(Concept {
        intent: ctx.up(&extent),
        extent,
    })
}

/// Role of an object in generating the join-irreducible concepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectClass {
    AbsolutelyNecessary,
    RelativelyNecessary,
    AbsolutelyUnnecessary,
}

/// Classifies every object of `ctx` by the join-irreducible concepts it
/// generates.
///
/// An object is relatively necessary when it shares a join-irreducible
/// concept with other generators and keeping it alone among them (together
/// with every object outside that generator set) is consistent.
pub fn classify_objects(ctx: &FormalContext) -> BTreeMap<String, ObjectClass> {
    let lat = build_lattice(ctx);
    let generators: Vec<ObjectSet> = lat
        .join_irreducibles()
        .into_iter()
        .map(|c| lat.obg(c).expect("valid index"))
        .collect();
    let mut out = BTreeMap::new();
    for b in 0..ctx.num_objects() {
        let containing: Vec<&ObjectSet> = generators.iter().filter(|g| g.contains(b)).collect();
        let class = if containing.iter().any(|g| g.len() == 1) {
            ObjectClass::AbsolutelyNecessary
        } else if containing.iter().any(|g| {
            let mut keep = g.complement();
            keep.insert(b);
            is_consistent_with(&lat, &keep)
        }) {
            ObjectClass::RelativelyNecessary
        } else {
            ObjectClass::AbsolutelyUnnecessary
        };
        out.insert(ctx.objects()[b].clone(), class);
    }
    out
}

/// True iff keeping only the objects in `keep` leaves an isomorphic lattice.
pub fn is_consistent_object_set(ctx: &FormalContext, keep: &ObjectSet) -> Result<bool> {
    let restricted = ctx.restrict_objects(keep)?;
    Ok(lattice_isomorphic(&build_lattice(ctx), &build_lattice(&restricted)).is_some())
}

fn is_consistent_with(lat: &ConceptLattice, keep: &ObjectSet) -> bool {
    let restricted = lat.context().restrict_objects(keep).expect("same universe");
    lattice_isomorphic(lat, &build_lattice(&restricted)).is_some()
}

/// An order-isomorphism between two finite lattices, if one exists.
pub fn lattice_isomorphic<A: FiniteLattice, B: FiniteLattice>(a: &A, b: &B) -> Option<Vec<usize>> {
    find_isomorphism(a.poset(), b.poset())
}
