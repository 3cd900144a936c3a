//! Plain serialisable views of the crate's results, keyed by concept id.

use serde::Serialize;

use crate::checks::Check;
use crate::completion::Completion;
use crate::context::FormalContext;
use crate::lattice::ConceptLattice;
use crate::poset::{FiniteLattice, FinitePoset, MissingBound};
use crate::reduction::{Partition, QuotientPoset};
use crate::surgery::{Branch, FreshElement, PipelineReport, RemovalKind, RemovalPlan};

#[derive(Debug, Clone, Serialize)]
pub struct ContextReport {
    pub attributes: Vec<String>,
    pub objects: Vec<String>,
    /// One row per attribute, one 0/1 cell per object.
    pub incidence: Vec<Vec<u8>>,
}

impl ContextReport {
    pub fn new(ctx: &FormalContext) -> Self {
        ContextReport {
            attributes: ctx.attributes().to_vec(),
            objects: ctx.objects().to_vec(),
            incidence: (0..ctx.num_attributes())
                .map(|a| (0..ctx.num_objects()).map(|b| ctx.incident(a, b) as u8).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConceptRow {
    pub id: String,
    pub extent: Vec<String>,
    pub intent: Vec<String>,
    pub obg: Vec<String>,
    pub atg: Vec<String>,
    pub join_irreducible: bool,
    pub meet_irreducible: bool,
}

fn cover_pairs(p: &FinitePoset) -> Vec<[String; 2]> {
    p.cover_edges()
        .into_iter()
        .map(|(a, b)| [p.label(a).to_string(), p.label(b).to_string()])
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub size: usize,
    pub concepts: Vec<ConceptRow>,
    /// `[lower, upper]` cover pairs.
    pub covers: Vec<[String; 2]>,
}

impl LatticeReport {
    pub fn new(lat: &ConceptLattice) -> Self {
        let ctx = lat.context();
        let concepts = (0..lat.len())
            .map(|i| {
                let c = lat.concept(i);
                ConceptRow {
                    id: lat.id(i).to_string(),
                    extent: ctx.object_names(&c.extent),
                    intent: ctx.attribute_names(&c.intent),
                    obg: ctx.object_names(&lat.obg(i).expect("index in range")),
                    atg: ctx.attribute_names(&lat.atg(i).expect("index in range")),
                    join_irreducible: lat.is_join_irreducible(i),
                    meet_irreducible: lat.is_meet_irreducible(i),
                }
            })
            .collect();
        LatticeReport {
            size: lat.len(),
            concepts,
            covers: cover_pairs(lat.poset()),
        }
    }
}

/// Blocks listed by the labels of their members.
pub fn partition_blocks(labels: &FinitePoset, p: &Partition) -> Vec<Vec<String>> {
    p.blocks()
        .iter()
        .map(|b| b.iter().map(|&x| labels.label(x).to_string()).collect())
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub label: String,
    pub members: Vec<String>,
    pub maximum: String,
    pub minimum: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub pair: [String; 2],
    pub missing: MissingBound,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientReport {
    pub classes: Vec<ClassRow>,
    pub covers: Vec<[String; 2]>,
    pub is_lattice: bool,
    pub witness: Option<WitnessReport>,
}

impl QuotientReport {
    /// `labels` names the elements of the underlying lattice.
    pub fn new(labels: &FinitePoset, q: &QuotientPoset) -> Self {
        let name = |x: usize| labels.label(x).to_string();
        let classes = q
            .partition
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| ClassRow {
                label: q.order.label(i).to_string(),
                members: b.iter().map(|&x| name(x)).collect(),
                maximum: name(q.maxima[i]),
                minimum: q.minima[i].map(name),
            })
            .collect();
        QuotientReport {
            classes,
            covers: cover_pairs(&q.order),
            is_lattice: q.is_lattice(),
            witness: q.lattice_witness().map(|w| WitnessReport {
                pair: [q.order.label(w.pair.0).to_string(), q.order.label(w.pair.1).to_string()],
                missing: w.missing,
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Isomorphic
        } else {
            Verdict::NotIsomorphic
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReduceReport {
    pub subset: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub quotient: QuotientReport,
    pub reduced: LatticeReport,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub subset: Vec<String>,
    pub rho: Vec<Vec<String>>,
    pub delta: Vec<Vec<String>>,
    pub is_local_congruence: bool,
    pub quotient: QuotientReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanReport {
    pub target: String,
    pub kind: RemovalKind,
    pub branch: Option<Branch>,
    pub cone_bound: Option<String>,
    pub gamma: Vec<String>,
    pub gamma_prime: Vec<String>,
    pub removed: Vec<String>,
    pub fresh: Vec<FreshElement>,
    pub result: ContextReport,
}

impl PlanReport {
    /// `lat` is the lattice the plan was computed on.
    pub fn new(lat: &ConceptLattice, plan: &RemovalPlan) -> Self {
        let id = |c: usize| lat.id(c).to_string();
        PlanReport {
            target: id(plan.target),
            kind: plan.kind,
            branch: plan.branch,
            cone_bound: plan.cone_bound.map(id),
            gamma: plan.gamma.iter().map(|&c| id(c)).collect(),
            gamma_prime: plan.gamma_prime.iter().map(|&c| id(c)).collect(),
            removed: plan.removed.clone(),
            fresh: plan.fresh.clone(),
            result: ContextReport::new(&plan.result),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StepReport {
    pub concept: String,
    pub plan: PlanReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineJson {
    pub subset: Vec<String>,
    pub rho: Vec<Vec<String>>,
    pub delta: Vec<Vec<String>>,
    pub quotient: QuotientReport,
    pub representatives: Vec<String>,
    pub merged: Vec<String>,
    pub steps: Vec<StepReport>,
    pub deferred: Vec<String>,
    pub final_context: ContextReport,
    pub final_size: usize,
    pub completion_size: usize,
    pub verdict: Verdict,
}

impl PipelineJson {
    pub fn new(r: &PipelineReport) -> Self {
        let labels = r.original.poset();
        PipelineJson {
            subset: r.original.context().attribute_names(&r.subset),
            rho: partition_blocks(labels, &r.rho),
            delta: partition_blocks(labels, &r.delta),
            quotient: QuotientReport::new(labels, &r.quotient),
            representatives: r.representatives.iter().map(|&c| r.reduced.id(c).to_string()).collect(),
            merged: r.merged.iter().map(|&c| r.reduced.id(c).to_string()).collect(),
            steps: r
                .steps
                .iter()
                .map(|s| StepReport {
                    concept: s.concept.clone(),
                    plan: PlanReport::new(&s.lattice, &s.plan),
                })
                .collect(),
            deferred: r.deferred.clone(),
            final_context: ContextReport::new(r.final_context()),
            final_size: r.final_lattice.len(),
            completion_size: r.completion.lattice.size(),
            verdict: Verdict::from_bool(r.verified()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CutRow {
    pub label: String,
    pub cut: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletionReport {
    pub poset_size: usize,
    pub size: usize,
    pub elements: Vec<CutRow>,
    pub covers: Vec<[String; 2]>,
    /// `[poset element, completion element]`.
    pub embedding: Vec<[String; 2]>,
}

impl CompletionReport {
    pub fn new(p: &FinitePoset, c: &Completion) -> Self {
        let order = c.lattice.poset();
        CompletionReport {
            poset_size: p.len(),
            size: order.len(),
            elements: c
                .cuts
                .iter()
                .enumerate()
                .map(|(i, cut)| CutRow {
                    label: order.label(i).to_string(),
                    cut: cut.iter().map(|x| p.label(x).to_string()).collect(),
                })
                .collect(),
            covers: cover_pairs(order),
            embedding: c
                .embedding
                .iter()
                .enumerate()
                .map(|(x, &e)| [p.label(x).to_string(), order.label(e).to_string()])
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(checks: Vec<Check>) -> Self {
        VerifyReport {
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}
