//! Runs every structural check the crate knows about on one context.

use serde::Serialize;

use crate::completion::{dm_completion, verify_density};
use crate::congruence::{
    delta_relation_existential, delta_relation_maxima, is_local_congruence, least_local_congruence,
};
use crate::context::FormalContext;
use crate::lattice::{build_lattice, ConceptLattice};
use crate::poset::{is_isomorphic, FiniteLattice};
use crate::reduction::{rho_d, verify_reduction_isomorphism};
use crate::subset::AttributeSet;
use crate::surgery::{
    congruence_surgery_pipeline, remove_join_irreducible, remove_meet_irreducible,
    removal_leaves_sublattice, verify_removal, Direction, Prefer, RemovalOrder,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(name: impl Into<String>, outcome: std::result::Result<(), String>) -> Self {
        let (passed, detail) = match outcome {
            Ok(()) => (true, None),
            Err(d) => (false, Some(d)),
        };
        Check {
            name: name.into(),
            passed,
            detail,
        }
    }
}

fn subsets_to_check(ctx: &FormalContext, d: Option<&AttributeSet>) -> Vec<AttributeSet> {
    let n = ctx.num_attributes();
    let mut out = vec![AttributeSet::full(n)];
    out.extend((0..n).map(|a| {
        let mut s = AttributeSet::full(n);
        s.remove(a);
        s
    }));
    if let Some(d) = d {
        out.push(d.clone());
    }
    out.sort();
    out.dedup();
    out
}

type Remover = fn(&ConceptLattice, usize) -> crate::error::Result<crate::surgery::RemovalPlan>;

fn removal_checks(lat: &ConceptLattice) -> Vec<Check> {
    let mut out = Vec::new();
    for c in 0..lat.len() {
        let sides: [(bool, Direction, Remover); 2] = [
            (lat.is_join_irreducible(c), Direction::Join, remove_join_irreducible),
            (lat.is_meet_irreducible(c), Direction::Meet, remove_meet_irreducible),
        ];
        for (applies, direction, remove) in sides {
            let side = match direction {
                Direction::Join => "join",
                Direction::Meet => "meet",
            };
            if !applies {
                continue;
            }
            let outcome = remove(lat, c)
                .and_then(|plan| verify_removal(lat, &plan))
                .map(|_| ())
                .map_err(|e| e.to_string());
            out.push(Check::new(format!("remove {side}-irreducible {}", lat.id(c)), outcome));
            let closed = if removal_leaves_sublattice(lat, c, direction) {
                Ok(())
            } else {
                Err(format!("remaining elements do not keep their {side}s"))
            };
            out.push(Check::new(format!("sublattice without {}", lat.id(c)), closed));
        }
    }
    out
}

/// Every check for `ctx`, with `d` (if given) added to the attribute
/// subsets tried.
pub fn run_checks(ctx: &FormalContext, d: Option<&AttributeSet>) -> Vec<Check> {
    let lat = build_lattice(ctx);
    let mut out = Vec::new();

    let density = if verify_density(&lat) {
        Ok(())
    } else {
        Err("irreducibles do not complete to the lattice".to_string())
    };
    out.push(Check::new("density of irreducibles", density));
    let dm = dm_completion(lat.poset());
    let again = dm_completion(dm.lattice.poset());
    let idempotent = if is_isomorphic(again.lattice.poset(), dm.lattice.poset())
        && is_isomorphic(dm.lattice.poset(), lat.poset())
    {
        Ok(())
    } else {
        Err("completion changed the lattice".to_string())
    };
    out.push(Check::new("completion idempotent", idempotent));

    out.extend(removal_checks(&lat));

    for subset in subsets_to_check(ctx, d) {
        let label = ctx.attribute_names(&subset).join(",");
        let outcome = verify_reduction_isomorphism(&lat, &subset)
            .map(|_| ())
            .map_err(|e| e.to_string());
        out.push(Check::new(format!("reduction to {{{label}}}"), outcome));

        let congruence = rho_d(&lat, &subset)
            .and_then(|rho| least_local_congruence(&lat, &rho))
            .and_then(|delta| {
                let local = is_local_congruence(&lat, &delta)?;
                let same = delta_relation_existential(&lat, &delta) == delta_relation_maxima(&lat, &delta);
                Ok((local, same))
            });
        let congruence = match congruence {
            Ok((true, true)) => Ok(()),
            Ok((false, _)) => Err("closure is not a local congruence".to_string()),
            Ok((true, false)) => Err("the two class orders differ".to_string()),
            Err(e) => Err(e.to_string()),
        };
        out.push(Check::new(format!("least local congruence for {{{label}}}"), congruence));

        let pipeline = congruence_surgery_pipeline(ctx, &subset, Prefer::Objects, RemovalOrder::JoinFirst)
            .and_then(|r| r.ensure_verified())
            .map_err(|e| e.to_string());
        out.push(Check::new(format!("pipeline for {{{label}}}"), pipeline));
    }
    out
}
