//! Context edits that delete one irreducible concept from the lattice while
//! keeping every other concept, and the pipeline that applies them to the
//! classes merged by a local congruence.

use serde::Serialize;

use crate::completion::{dm_completion, Completion};
use crate::congruence::{least_local_congruence, quotient_order_delta};
use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, Concept, ConceptLattice};
use crate::poset::{find_isomorphism, FiniteLattice};
use crate::reduction::{quotient_order_d, Partition, QuotientPoset};
use crate::subset::{AttributeSet, ElementSet};

fn check_index(lat: &ConceptLattice, c: usize) -> Result<()> {
    if c >= lat.len() {
        return Err(Error::InvalidElement(format!("concept index {c} out of range")));
    }
    Ok(())
}

/// Concepts strictly above `c`.
pub fn upper_cone(lat: &ConceptLattice, c: usize) -> Result<ElementSet> {
    check_index(lat, c)?;
    let mut cone = lat.poset().up_set(c).clone();
    cone.remove(c);
    if cone.is_empty() {
        return Err(Error::EmptyUpperCone(c));
    }
    Ok(cone)
}

/// Meet of the upper cone; may be `c` itself.
pub fn cone_infimum(lat: &ConceptLattice, c: usize) -> Result<usize> {
    Ok(lat.meet_all(upper_cone(lat, c)?.iter()))
}

/// Concepts strictly below `c`.
pub fn lower_cone(lat: &ConceptLattice, c: usize) -> Result<ElementSet> {
    check_index(lat, c)?;
    let mut cone = lat.poset().down_set(c).clone();
    cone.remove(c);
    if cone.is_empty() {
        return Err(Error::EmptyLowerCone(c));
    }
    Ok(cone)
}

/// Join of the lower cone; may be `c` itself.
pub fn cone_supremum(lat: &ConceptLattice, c: usize) -> Result<usize> {
    Ok(lat.join_all(lower_cone(lat, c)?.iter()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Join,
    Meet,
}

/// Whether `c` is the join (meet) of a nonempty family of elements strictly
/// below (above) it that leaves out `avoid`.
///
/// Enlarging a family only moves its join up, so it is enough to test the
/// family of all strictly smaller elements other than `avoid`.
pub fn exists_decomposition_avoiding<L: FiniteLattice>(
    lat: &L,
    c: usize,
    avoid: usize,
    direction: Direction,
) -> bool {
    let p = lat.poset();
    match direction {
        Direction::Join => {
            let family: Vec<usize> = p.down_set(c).iter().filter(|&x| x != c && x != avoid).collect();
            !family.is_empty() && lat.join_all(family) == c
        }
        Direction::Meet => {
            let family: Vec<usize> = p.up_set(c).iter().filter(|&x| x != c && x != avoid).collect();
            !family.is_empty() && lat.meet_all(family) == c
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalKind {
    JoinIrreducible,
    MeetIrreducible,
    NeitherIrreducible,
}

/// Which case of the removal procedure produced the new context.
///
/// `Case1a`: the cone infimum differs from the target and has a
/// decomposition avoiding it. `Case1bi`: no such decomposition, but the
/// infimum has generators. `Case1bii`: one fresh element replaces the
/// generators. `Case2a`: the target is its own cone infimum and no cover
/// needs a fresh element. `Case2b`: one fresh element per such cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    #[serde(rename = "1a")]
    Case1a,
    #[serde(rename = "1b.i")]
    Case1bi,
    #[serde(rename = "1b.ii")]
    Case1bii,
    #[serde(rename = "2a")]
    Case2a,
    #[serde(rename = "2b")]
    Case2b,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Case1a => "1a",
            Branch::Case1bi => "1b.i",
            Branch::Case1bii => "1b.ii",
            Branch::Case2a => "2a",
            Branch::Case2b => "2b",
        }
    }

    /// Branches that only delete elements.
    pub fn is_plain_removal(self) -> bool {
        matches!(self, Branch::Case1a | Branch::Case1bi | Branch::Case2a)
    }
}

/// A new object (attribute) and the attributes (objects) it is incident to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreshElement {
    pub name: String,
    pub incident: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RemovalPlan {
    /// Index of the removed concept in the input lattice.
    pub target: usize,
    pub kind: RemovalKind,
    pub branch: Option<Branch>,
    /// Cone infimum (supremum for the dual procedure).
    pub cone_bound: Option<usize>,
    /// Minimal (maximal) elements of the cone when the target is its own
    /// cone bound.
    pub gamma: Vec<usize>,
    pub gamma_prime: Vec<usize>,
    /// Names of the deleted objects (attributes).
    pub removed: Vec<String>,
    pub fresh: Vec<FreshElement>,
    pub result: FormalContext,
}

impl RemovalPlan {
    fn identity(lat: &ConceptLattice, target: usize) -> Self {
        RemovalPlan {
            target,
            kind: RemovalKind::NeitherIrreducible,
            branch: None,
            cone_bound: None,
            gamma: Vec::new(),
            gamma_prime: Vec::new(),
            removed: Vec::new(),
            fresh: Vec::new(),
            result: lat.context().clone(),
        }
    }
}

/// `name`, primed until no object of `ctx` has it.
fn unused_name(ctx: &FormalContext, mut name: String) -> String {
    while ctx.objects().contains(&name) {
        name.push('\'');
    }
    name
}

/// The join-side procedure on `lat`, naming fresh objects after `base`.
fn remove_join_core(lat: &ConceptLattice, j: usize, base: &str) -> Result<RemovalPlan> {
    check_index(lat, j)?;
    if !lat.is_join_irreducible(j) {
        return Err(Error::PreconditionViolation(format!(
            "{} is not join-irreducible",
            lat.id(j)
        )));
    }
    let ctx = lat.context();
    let obg = lat.obg(j)?;
    if obg.is_empty() {
        return Err(Error::VerificationFailure(format!(
            "join-irreducible {} has no generating object",
            lat.id(j)
        )));
    }
    // A join-irreducible top has an empty cone; its meet is the top itself.
    let t = match upper_cone(lat, j) {
        Ok(cone) => lat.meet_all(cone.iter()),
        Err(Error::EmptyUpperCone(_)) => j,
        Err(e) => return Err(e),
    };

    let mut gamma = Vec::new();
    let mut gamma_prime = Vec::new();
    let mut fresh_intents: Vec<(String, AttributeSet)> = Vec::new();
    let branch = if t != j {
        if exists_decomposition_avoiding(lat, t, j, Direction::Join) {
            Branch::Case1a
        } else if !lat.obg(t)?.is_empty() {
            Branch::Case1bi
        } else {
            fresh_intents.push((format!("{base}*"), lat.concept(t).intent.clone()));
            Branch::Case1bii
        }
    } else {
        gamma = lat.upper_covers(j).to_vec();
        gamma.sort_unstable();
        for (i, &m) in gamma.iter().enumerate() {
            if !exists_decomposition_avoiding(lat, m, j, Direction::Join) && lat.obg(m)?.is_empty() {
                gamma_prime.push(m);
                fresh_intents.push((format!("{base}*m{i}"), lat.concept(m).intent.clone()));
            }
        }
        if gamma_prime.is_empty() {
            Branch::Case2a
        } else {
            Branch::Case2b
        }
    };

    let mut result = ctx.restrict_objects(&obg.complement())?;
    let mut fresh = Vec::new();
    for (name, intent) in fresh_intents {
        let name = unused_name(&result, name);
        result = result.with_object(&name, &intent)?;
        fresh.push(FreshElement {
            name,
            incident: ctx.attribute_names(&intent),
        });
    }
    Ok(RemovalPlan {
        target: j,
        kind: RemovalKind::JoinIrreducible,
        branch: Some(branch),
        cone_bound: Some(t),
        gamma,
        gamma_prime,
        removed: ctx.object_names(&obg),
        fresh,
        result,
    })
}

/// Deletes a join-irreducible concept by editing objects only.
pub fn remove_join_irreducible(lat: &ConceptLattice, target: usize) -> Result<RemovalPlan> {
    check_index(lat, target)?;
    remove_join_core(lat, target, lat.id(target))
}

fn remove_meet_core(lat: &ConceptLattice, l: usize, base: &str) -> Result<RemovalPlan> {
    check_index(lat, l)?;
    if !lat.is_meet_irreducible(l) {
        return Err(Error::PreconditionViolation(format!(
            "{} is not meet-irreducible",
            lat.id(l)
        )));
    }
    let dual = build_lattice(&lat.context().transpose());
    let to_dual = |c: usize| {
        dual.index_of_extent(&lat.concept(c).intent.clone().retag())
            .expect("transposed concepts correspond")
    };
    let from_dual = |c: usize| {
        lat.index_of_extent(&dual.concept(c).intent.clone().retag())
            .expect("transposed concepts correspond")
    };
    let plan = remove_join_core(&dual, to_dual(l), base)?;
    Ok(RemovalPlan {
        target: l,
        kind: RemovalKind::MeetIrreducible,
        branch: plan.branch,
        cone_bound: plan.cone_bound.map(from_dual),
        gamma: plan.gamma.into_iter().map(from_dual).collect(),
        gamma_prime: plan.gamma_prime.into_iter().map(from_dual).collect(),
        removed: plan.removed,
        fresh: plan.fresh,
        result: plan.result.transpose(),
    })
}

/// Deletes a meet-irreducible concept by editing attributes only.
pub fn remove_meet_irreducible(lat: &ConceptLattice, target: usize) -> Result<RemovalPlan> {
    check_index(lat, target)?;
    remove_meet_core(lat, target, lat.id(target))
}

/// Which side to edit when a concept is both join- and meet-irreducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prefer {
    #[default]
    Objects,
    Attributes,
}

/// Dispatches to the join- or meet-side procedure. A concept that is
/// neither leaves the context unchanged, since completing the remaining
/// lattice restores it anyway.
pub fn remove_concept(lat: &ConceptLattice, c: usize, prefer: Prefer) -> Result<RemovalPlan> {
    check_index(lat, c)?;
    remove_concept_named(lat, c, prefer, lat.id(c))
}

fn remove_concept_named(lat: &ConceptLattice, c: usize, prefer: Prefer, base: &str) -> Result<RemovalPlan> {
    match (lat.is_join_irreducible(c), lat.is_meet_irreducible(c), prefer) {
        (true, true, Prefer::Attributes) | (false, true, _) => remove_meet_core(lat, c, base),
        (true, _, _) => remove_join_core(lat, c, base),
        (false, false, _) => Ok(RemovalPlan::identity(lat, c)),
    }
}

/// No two other elements join to `c`.
pub fn removal_closed_under_joins<L: FiniteLattice>(lat: &L, c: usize) -> bool {
    let n = lat.size();
    (0..n).all(|a| a == c || (0..n).all(|b| b == c || lat.join(a, b) != c))
}

/// No two other elements meet to `c`.
pub fn removal_closed_under_meets<L: FiniteLattice>(lat: &L, c: usize) -> bool {
    let n = lat.size();
    (0..n).all(|a| a == c || (0..n).all(|b| b == c || lat.meet(a, b) != c))
}

/// The remaining elements under the inherited order form a lattice.
pub fn removal_leaves_lattice<L: FiniteLattice>(lat: &L, c: usize) -> bool {
    let rest: Vec<usize> = (0..lat.size()).filter(|&x| x != c).collect();
    lat.poset().subposet(&rest).is_lattice()
}

/// Removing a join-irreducible keeps every join of the others and leaves a
/// lattice; dually for a meet-irreducible. Meets (joins) of the remaining
/// elements may still have been the removed one.
pub fn removal_leaves_sublattice<L: FiniteLattice>(lat: &L, c: usize, direction: Direction) -> bool {
    let closed = match direction {
        Direction::Join => removal_closed_under_joins(lat, c),
        Direction::Meet => removal_closed_under_meets(lat, c),
    };
    closed && removal_leaves_lattice(lat, c)
}

/// Checks a plan against its input: the new lattice carries the intents
/// (for object edits) or extents (for attribute edits) of every concept
/// except the target, and is order-isomorphic to the input without it.
///
/// Returns the new concept index of each kept input concept, in input order.
pub fn verify_removal(lat: &ConceptLattice, plan: &RemovalPlan) -> Result<Vec<usize>> {
    let after = build_lattice(&plan.result);
    let fail = |m: String| Err(Error::VerificationFailure(m));
    let kept: Vec<usize> = match plan.kind {
        RemovalKind::NeitherIrreducible => (0..lat.len()).collect(),
        _ => (0..lat.len()).filter(|&c| c != plan.target).collect(),
    };
    if after.len() != kept.len() {
        return fail(format!(
            "expected {} concepts after the edit, found {}",
            kept.len(),
            after.len()
        ));
    }
    let mut image = Vec::with_capacity(kept.len());
    for &c in &kept {
        let found = match plan.kind {
            RemovalKind::JoinIrreducible => after.index_of_intent(&lat.concept(c).intent),
            RemovalKind::MeetIrreducible => after.index_of_extent(&lat.concept(c).extent),
            RemovalKind::NeitherIrreducible => after.index_of(lat.concept(c)).ok(),
        };
        match found {
            Some(i) => image.push(i),
            None => return fail(format!("{} has no counterpart after the edit", lat.id(c))),
        }
    }
    for (x, &a) in kept.iter().enumerate() {
        for (y, &b) in kept.iter().enumerate() {
            if lat.leq(a, b) != after.leq(image[x], image[y]) {
                return fail(format!("order between {} and {} changed", lat.id(a), lat.id(b)));
            }
        }
    }
    Ok(image)
}

/// Order in which the pipeline picks the next concept to remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalOrder {
    /// Join-irreducibles from small extents up, then meet-irreducibles from
    /// large extents down.
    #[default]
    JoinFirst,
    /// Meet-irreducibles from large extents down, then join-irreducibles
    /// from small extents up.
    MeetFirst,
}

#[derive(Debug, Clone)]
pub struct PipelineStep {
    /// Id of the removed concept in the reduced lattice.
    pub concept: String,
    /// Lattice the plan was computed on.
    pub lattice: ConceptLattice,
    pub plan: RemovalPlan,
}

#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub original: ConceptLattice,
    pub subset: AttributeSet,
    pub reduced: ConceptLattice,
    /// Classes of the reduction, on the original lattice.
    pub rho: Partition,
    /// Least local congruence containing `rho`.
    pub delta: Partition,
    pub quotient: QuotientPoset,
    /// Reduced-lattice concepts chosen to stand for each class of `delta`.
    pub representatives: Vec<usize>,
    /// Reduced-lattice concepts scheduled for removal.
    pub merged: Vec<usize>,
    pub steps: Vec<PipelineStep>,
    /// Merged concepts that were never irreducible and so stay in the
    /// context, as reduced-lattice ids.
    pub deferred: Vec<String>,
    pub final_lattice: ConceptLattice,
    pub completion: Completion,
    /// Final concept index → completion element, when the two agree.
    pub isomorphism: Option<Vec<usize>>,
}

impl PipelineReport {
    pub fn final_context(&self) -> &FormalContext {
        self.final_lattice.context()
    }

    pub fn verified(&self) -> bool {
        self.isomorphism.is_some()
    }

    pub fn ensure_verified(&self) -> Result<()> {
        if self.verified() {
            Ok(())
        } else {
            Err(Error::VerificationFailure(
                "final lattice is not isomorphic to the completion of the quotient".into(),
            )
            .at_step("verify"))
        }
    }
}

/// A reduced-lattice concept followed through successive context edits.
#[derive(Debug, Clone)]
struct Tracked {
    id: String,
    concept: Concept,
}

fn relocate(lat: &ConceptLattice, t: &Tracked, kind: RemovalKind) -> Result<usize> {
    let found = match kind {
        RemovalKind::JoinIrreducible => lat.index_of_intent(&t.concept.intent),
        RemovalKind::MeetIrreducible => lat.index_of_extent(&t.concept.extent),
        RemovalKind::NeitherIrreducible => lat.index_of(&t.concept).ok(),
    };
    found.ok_or_else(|| Error::VerificationFailure(format!("concept {} was lost by a removal", t.id)))
}

/// Picks the next pending concept that is irreducible in `lat`.
fn next_removal(lat: &ConceptLattice, pending: &[(Tracked, usize)], order: RemovalOrder) -> Option<usize> {
    let size = |k: usize| lat.concept(pending[k].1).extent.len();
    let ji = (0..pending.len())
        .filter(|&k| lat.is_join_irreducible(pending[k].1))
        .min_by_key(|&k| (size(k), pending[k].1));
    let mi = (0..pending.len())
        .filter(|&k| lat.is_meet_irreducible(pending[k].1))
        .max_by_key(|&k| (size(k), pending[k].1));
    match order {
        RemovalOrder::JoinFirst => ji.or(mi),
        RemovalOrder::MeetFirst => mi.or(ji),
    }
}

/// Reduces to `d`, merges classes by the least local congruence, removes
/// the merged concepts from the reduced context one at a time and checks
/// the result against the completion of the class order.
pub fn congruence_surgery_pipeline(
    ctx: &FormalContext,
    d: &AttributeSet,
    prefer: Prefer,
    order: RemovalOrder,
) -> Result<PipelineReport> {
    let original = build_lattice(ctx);
    let rq = quotient_order_d(&original, d).map_err(|e| e.at_step("reduce"))?;
    let rho = rq.quotient.partition.clone();
    let delta = least_local_congruence(&original, &rho).map_err(|e| e.at_step("congruence"))?;
    let quotient = quotient_order_delta(&original, &delta).map_err(|e| e.at_step("congruence"))?;
    let reduced = rq.reduced.clone();

    let mut representatives = Vec::with_capacity(delta.len());
    let mut merged = Vec::new();
    let bottom_block = delta.block_of(original.bottom());
    for (b, block) in delta.blocks().iter().enumerate() {
        let mut classes: Vec<usize> = block.iter().map(|&c| rho.block_of(c)).collect();
        classes.sort_unstable();
        classes.dedup();
        let keep = if b == bottom_block {
            rho.block_of(original.bottom())
        } else {
            rho.block_of(quotient.maxima[b])
        };
        representatives.push(rq.reduced_index[keep]);
        merged.extend(classes.into_iter().filter(|&k| k != keep).map(|k| rq.reduced_index[k]));
    }
    merged.sort_unstable();

    let mut current = reduced.clone();
    let mut pending: Vec<(Tracked, usize)> = merged
        .iter()
        .map(|&c| {
            let t = Tracked {
                id: reduced.id(c).to_string(),
                concept: reduced.concept(c).clone(),
            };
            (t, c)
        })
        .collect();
    let mut steps = Vec::new();
    while let Some(k) = next_removal(&current, &pending, order) {
        let (gone, idx) = pending.remove(k);
        let step = format!("remove {}", gone.id);
        let plan = remove_concept_named(&current, idx, prefer, &gone.id).map_err(|e| e.at_step(step.clone()))?;
        let next = build_lattice(&plan.result);
        for (t, i) in pending.iter_mut() {
            *i = relocate(&next, t, plan.kind).map_err(|e| e.at_step(step.clone()))?;
            t.concept = next.concept(*i).clone();
        }
        steps.push(PipelineStep {
            concept: gone.id,
            lattice: current,
            plan,
        });
        current = next;
    }
    let deferred = pending.into_iter().map(|(t, _)| t.id).collect();

    let completion = dm_completion(&quotient.order);
    let isomorphism = find_isomorphism(current.poset(), completion.lattice.poset());
    Ok(PipelineReport {
        original,
        subset: d.clone(),
        reduced,
        rho,
        delta,
        quotient,
        representatives,
        merged,
        steps,
        deferred,
        final_lattice: current,
        completion,
        isomorphism,
    })
}
