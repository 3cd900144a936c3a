//! Finite partial orders, lattices built from them, and order-isomorphism.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::ElementSet;

/// A finite ordered set with cached up-sets, down-sets and Hasse covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl FinitePoset {
    /// Builds a poset from a relation that must already be a partial order.
    pub fn from_relation<F>(labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let up: Vec<ElementSet> = (0..n)
            .map(|i| ElementSet::from_indices(n, (0..n).filter(|&j| leq(i, j))))
            .collect();
        let poset = Self::from_up_sets(labels, up);
        poset.check_partial_order()?;
        Ok(poset)
    }

    /// Builds a poset from generating pairs `a <= b`, taking the reflexive
    /// transitive closure. Fails if the closure is not antisymmetric.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<ElementSet> = (0..n).map(|i| ElementSet::from_indices(n, [i])).collect();
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("pair ({a}, {b}) outside 0..{n}")));
            }
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if i != j && up[j].contains(i) {
                    return Err(Error::InvalidInput(format!(
                        "`{}` and `{}` are mutually below each other",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Self::from_up_sets(labels, up))
    }

    fn from_up_sets(labels: Vec<String>, up: Vec<ElementSet>) -> Self {
        let n = labels.len();
        let down: Vec<ElementSet> = (0..n)
            .map(|j| ElementSet::from_indices(n, (0..n).filter(|&i| up[i].contains(j))))
            .collect();
        let mut upper_covers = Vec::with_capacity(n);
        for i in 0..n {
            let mut strict = up[i].clone();
            strict.remove(i);
            let mut above_strict = ElementSet::empty(n);
            for j in strict.iter() {
                let mut s = up[j].clone();
                s.remove(j);
                above_strict.union_with(&s);
            }
            upper_covers.push(strict.difference(&above_strict).to_vec());
        }
        let mut lower_covers = vec![Vec::new(); n];
        for (i, covers) in upper_covers.iter().enumerate() {
            for &j in covers {
                lower_covers[j].push(i);
            }
        }
        FinitePoset {
            labels,
            up,
            down,
            upper_covers,
            lower_covers,
        }
    }

    fn check_partial_order(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.up[i].contains(i) {
                return Err(Error::InvalidInput(format!("relation is not reflexive at `{}`", self.labels[i])));
            }
            for j in self.up[i].iter() {
                if i != j && self.up[j].contains(i) {
                    return Err(Error::InvalidInput(format!(
                        "relation is not antisymmetric on `{}`, `{}`",
                        self.labels[i], self.labels[j]
                    )));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::InvalidInput(format!(
                        "relation is not transitive through `{}`",
                        self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `{j | i <= j}`.
    pub fn up_set(&self, i: usize) -> &ElementSet {
        &self.up[i]
    }

    /// `{j | j <= i}`.
    pub fn down_set(&self, i: usize) -> &ElementSet {
        &self.down[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Hasse edges `(lower, upper)` in element order.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.upper_covers[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Common upper bounds of `set`; the empty set is bounded by everything.
    pub fn upper_bounds<I: IntoIterator<Item = usize>>(&self, set: I) -> ElementSet {
        let mut acc = ElementSet::full(self.len());
        for i in set {
            acc.intersect_with(&self.up[i]);
        }
        acc
    }

    /// Common lower bounds of `set`; the empty set is bounded by everything.
    pub fn lower_bounds<I: IntoIterator<Item = usize>>(&self, set: I) -> ElementSet {
        let mut acc = ElementSet::full(self.len());
        for i in set {
            acc.intersect_with(&self.down[i]);
        }
        acc
    }

    pub fn minimal_elements(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&i| set.iter().all(|j| j == i || !self.leq(j, i)))
            .collect()
    }

    pub fn maximal_elements(&self, set: &ElementSet) -> Vec<usize> {
        set.iter()
            .filter(|&i| set.iter().all(|j| j == i || !self.leq(i, j)))
            .collect()
    }

    /// The least element of `set`, if it has one.
    pub fn least(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&i| set.is_subset(&self.up[i]))
    }

    /// The greatest element of `set`, if it has one.
    pub fn greatest(&self, set: &ElementSet) -> Option<usize> {
        set.iter().find(|&i| set.is_subset(&self.down[i]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.least(&self.upper_bounds([a, b]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.greatest(&self.lower_bounds([a, b]))
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(&ElementSet::full(self.len()))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(&ElementSet::full(self.len()))
    }

    /// Every pair that lacks a meet or a join.
    pub fn failing_pairs(&self) -> Vec<NonLatticeWitness> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if self.meet(a, b).is_none() {
                    out.push(NonLatticeWitness { pair: (a, b), missing: MissingBound::Meet });
                }
                if self.join(a, b).is_none() {
                    out.push(NonLatticeWitness { pair: (a, b), missing: MissingBound::Join });
                }
            }
        }
        out
    }

    /// `Ok` when every pair has a meet and a join.
    ///
    /// The reported witness is deterministic: pairs without a meet are
    /// searched first, from the top of the element order downwards; pairs
    /// without a join are searched from the bottom upwards. The two searches
    /// are order-duals of each other.
    pub fn lattice_check(&self) -> std::result::Result<(), NonLatticeWitness> {
        let n = self.len();
        for a in (0..n).rev() {
            for b in (a + 1..n).rev() {
                if self.meet(a, b).is_none() {
                    return Err(NonLatticeWitness { pair: (a, b), missing: MissingBound::Meet });
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.join(a, b).is_none() {
                    return Err(NonLatticeWitness { pair: (a, b), missing: MissingBound::Join });
                }
            }
        }
        Ok(())
    }

    pub fn is_lattice(&self) -> bool {
        self.lattice_check().is_ok()
    }

    /// The order restricted to `elements`, relabelled `0..elements.len()` in
    /// the given sequence.
    pub fn subposet(&self, elements: &[usize]) -> FinitePoset {
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        let m = elements.len();
        let up = elements
            .iter()
            .map(|&i| ElementSet::from_indices(m, (0..m).filter(|&k| self.leq(i, elements[k]))))
            .collect();
        Self::from_up_sets(labels, up)
    }

    /// The order-dual.
    pub fn dual(&self) -> FinitePoset {
        Self::from_up_sets(self.labels.clone(), self.down.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingBound {
    Meet,
    Join,
}

/// A pair of elements lacking a meet or a join.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NonLatticeWitness {
    pub pair: (usize, usize),
    pub missing: MissingBound,
}

impl fmt::Display for NonLatticeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.missing {
            MissingBound::Meet => "infimum",
            MissingBound::Join => "supremum",
        };
        write!(f, "elements {} and {} have no {what}", self.pair.0, self.pair.1)
    }
}

/// Operations shared by every finite lattice in the crate.
pub trait FiniteLattice {
    fn poset(&self) -> &FinitePoset;
    fn join(&self, a: usize, b: usize) -> usize;
    fn meet(&self, a: usize, b: usize) -> usize;
    fn top(&self) -> usize;
    fn bottom(&self) -> usize;

    fn size(&self) -> usize {
        self.poset().len()
    }

    fn leq(&self, a: usize, b: usize) -> bool {
        self.poset().leq(a, b)
    }

    fn lower_covers(&self, i: usize) -> &[usize] {
        self.poset().lower_covers(i)
    }

    fn upper_covers(&self, i: usize) -> &[usize] {
        self.poset().upper_covers(i)
    }

    /// Join of a family; the empty join is the bottom.
    fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize
    where
        Self: Sized,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    /// Meet of a family; the empty meet is the top.
    fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize
    where
        Self: Sized,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Elements with exactly one lower cover. The bottom has none.
    fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.lower_covers(i).len() == 1).collect()
    }

    /// Elements with exactly one upper cover. The top has none.
    fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.size()).filter(|&i| self.upper_covers(i).len() == 1).collect()
    }

    fn is_join_irreducible(&self, i: usize) -> bool {
        self.lower_covers(i).len() == 1
    }

    fn is_meet_irreducible(&self, i: usize) -> bool {
        self.upper_covers(i).len() == 1
    }
}

/// A finite lattice with tabulated binary operations.
#[derive(Debug, Clone)]
pub struct Lattice {
    poset: FinitePoset,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl Lattice {
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        if poset.is_empty() {
            return Err(Error::InvalidInput("a lattice needs at least one element".into()));
        }
        if let Err(w) = poset.lattice_check() {
            return Err(Error::InvalidInput(format!("poset is not a lattice: {w}")));
        }
        let n = poset.len();
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = poset.join(a, b).expect("checked");
                meet[a * n + b] = poset.meet(a, b).expect("checked");
            }
        }
        let top = poset.top().expect("finite lattice has a top");
        let bottom = poset.bottom().expect("finite lattice has a bottom");
        Ok(Lattice {
            poset,
            join,
            meet,
            top,
            bottom,
        })
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }
}

impl FiniteLattice for Lattice {
    fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.poset.len() + b]
    }

    fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.poset.len() + b]
    }

    fn top(&self) -> usize {
        self.top
    }

    fn bottom(&self) -> usize {
        self.bottom
    }
}

/// Searches for an order-isomorphism from `a` onto `b`.
///
/// Elements are first colour-refined by their up/down degrees and cover
/// profile; the bijection is then completed by backtracking within colour
/// classes. Returns `map` with `map[i]` the image of element `i` of `a`.
pub fn find_isomorphism(a: &FinitePoset, b: &FinitePoset) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    if n == 0 {
        return Some(Vec::new());
    }
    let (colours_a, colours_b) = refine_colours(a, b);
    let mut hist_a: HashMap<usize, usize> = HashMap::new();
    let mut hist_b: HashMap<usize, usize> = HashMap::new();
    for &c in &colours_a {
        *hist_a.entry(c).or_default() += 1;
    }
    for &c in &colours_b {
        *hist_b.entry(c).or_default() += 1;
    }
    if hist_a != hist_b {
        return None;
    }

    // Assign in a linear extension so each new element is checked against
    // already placed neighbours; rare colours first within equal heights.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (a.down_set(i).len(), hist_a[&colours_a[i]], i));

    let mut candidates: HashMap<usize, Vec<usize>> = HashMap::new();
    for (j, &c) in colours_b.iter().enumerate() {
        candidates.entry(c).or_default().push(j);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let matcher = Matcher {
        a,
        b,
        order: &order,
        colours_a: &colours_a,
        candidates: &candidates,
    };
    if matcher.extend(0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// True iff `a` and `b` are order-isomorphic.
pub fn is_isomorphic(a: &FinitePoset, b: &FinitePoset) -> bool {
    find_isomorphism(a, b).is_some()
}

struct Matcher<'a> {
    a: &'a FinitePoset,
    b: &'a FinitePoset,
    order: &'a [usize],
    colours_a: &'a [usize],
    candidates: &'a HashMap<usize, Vec<usize>>,
}

impl Matcher<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for &j in &self.candidates[&self.colours_a[i]] {
            if used[j] {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&k| {
                let mk = map[k];
                self.a.leq(i, k) == self.b.leq(j, mk) && self.a.leq(k, i) == self.b.leq(mk, j)
            });
            if !consistent {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if self.extend(depth + 1, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
}

fn refine_colours(a: &FinitePoset, b: &FinitePoset) -> (Vec<usize>, Vec<usize>) {
    let initial = |p: &FinitePoset, i: usize| {
        vec![
            p.down_set(i).len(),
            p.up_set(i).len(),
            p.lower_covers(i).len(),
            p.upper_covers(i).len(),
        ]
    };
    let mut dict: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let intern = |sig: Vec<usize>, dict: &mut BTreeMap<Vec<usize>, usize>| {
        let next = dict.len();
        *dict.entry(sig).or_insert(next)
    };
    let mut ca: Vec<usize> = (0..a.len()).map(|i| intern(initial(a, i), &mut dict)).collect();
    let mut cb: Vec<usize> = (0..b.len()).map(|i| intern(initial(b, i), &mut dict)).collect();
    let count = |c: &[usize], d: &[usize]| {
        let mut all: Vec<usize> = c.iter().chain(d).copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    };
    let mut classes = count(&ca, &cb);
    loop {
        let mut dict: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        let signature = |p: &FinitePoset, c: &[usize], i: usize| {
            let mut lower: Vec<usize> = p.lower_covers(i).iter().map(|&k| c[k]).collect();
            let mut upper: Vec<usize> = p.upper_covers(i).iter().map(|&k| c[k]).collect();
            lower.sort_unstable();
            upper.sort_unstable();
            let mut sig = vec![c[i], usize::MAX];
            sig.extend(lower);
            sig.push(usize::MAX);
            sig.extend(upper);
            sig
        };
        let na: Vec<usize> = (0..a.len())
            .map(|i| intern(signature(a, &ca, i), &mut dict))
            .collect();
        let nb: Vec<usize> = (0..b.len())
            .map(|i| intern(signature(b, &cb, i), &mut dict))
            .collect();
        let next = count(&na, &nb);
        ca = na;
        cb = nb;
        if next == classes {
            break;
        }
        classes = next;
    }
    (ca, cb)
}
