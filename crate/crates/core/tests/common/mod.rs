//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the library's algorithms: contexts are read through
//! `incident` only, and lattices through an explicit order matrix.

#![allow(dead_code)]

use latsurg::FormalContext;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn seed() -> u64 {
    std::env::var("LATSURG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x1a75_0e6d)
}

pub fn rng(stream: u64) -> StdRng {
    StdRng::seed_from_u64(seed() ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A context with between `lo` and `hi` attributes and objects.
pub fn random_context(rng: &mut StdRng, lo: usize, hi: usize) -> FormalContext {
    let na = rng.gen_range(lo..=hi);
    let nb = rng.gen_range(lo..=hi);
    let density: f64 = rng.gen_range(0.2..0.8);
    let attributes = (1..=na).map(|i| format!("a{i}")).collect();
    let objects = (1..=nb).map(|i| format!("b{i}")).collect();
    let incidence = (0..na)
        .map(|_| (0..nb).map(|_| rng.gen_bool(density)).collect())
        .collect();
    FormalContext::new(attributes, objects, incidence).unwrap()
}

/// Objects as bits of a mask.
pub fn up(ctx: &FormalContext, x: u64) -> u64 {
    let mut y = 0;
    for a in 0..ctx.num_attributes() {
        if (0..ctx.num_objects()).all(|b| x & (1 << b) == 0 || ctx.incident(a, b)) {
            y |= 1 << a;
        }
    }
    y
}

pub fn down(ctx: &FormalContext, y: u64) -> u64 {
    let mut x = 0;
    for b in 0..ctx.num_objects() {
        if (0..ctx.num_attributes()).all(|a| y & (1 << a) == 0 || ctx.incident(a, b)) {
            x |= 1 << b;
        }
    }
    x
}

/// Every `(extent, intent)` pair found by trying all object subsets,
/// sorted by extent mask.
pub fn brute_concepts(ctx: &FormalContext) -> Vec<(u64, u64)> {
    let n = ctx.num_objects();
    let mut out: Vec<(u64, u64)> = (0..1u64 << n)
        .filter_map(|x| {
            let y = up(ctx, x);
            (down(ctx, y) == x).then_some((x, y))
        })
        .collect();
    out.sort();
    out
}

pub fn brute_intents(ctx: &FormalContext) -> Vec<u64> {
    let mut v: Vec<u64> = brute_concepts(ctx).into_iter().map(|c| c.1).collect();
    v.sort();
    v
}

pub fn brute_extents(ctx: &FormalContext) -> Vec<u64> {
    let mut v: Vec<u64> = brute_concepts(ctx).into_iter().map(|c| c.0).collect();
    v.sort();
    v
}

pub fn mask<I: IntoIterator<Item = usize>>(bits: I) -> u64 {
    bits.into_iter().fold(0, |m, i| m | 1 << i)
}

pub fn object_mask(ctx: &FormalContext, names: &[&str]) -> u64 {
    mask(names.iter().map(|n| ctx.objects().iter().position(|o| o == n).unwrap()))
}

/// A finite order given by its matrix, with bounds found by scanning.
#[derive(Clone, Debug)]
pub struct Order {
    pub leq: Vec<Vec<bool>>,
}

impl Order {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Order {
            leq: (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    fn least(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&x| set.iter().all(|&y| self.leq[x][y]))
    }

    fn greatest(&self, set: &[usize]) -> Option<usize> {
        set.iter().copied().find(|&x| set.iter().all(|&y| self.leq[y][x]))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub: Vec<usize> = (0..self.len()).filter(|&u| self.leq[a][u] && self.leq[b][u]).collect();
        self.least(&ub)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb: Vec<usize> = (0..self.len()).filter(|&l| self.leq[l][a] && self.leq[l][b]).collect();
        self.greatest(&lb)
    }

    pub fn is_lattice(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    pub fn covers(&self, a: usize, b: usize) -> bool {
        a != b
            && self.leq[a][b]
            && !(0..self.len()).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
    }

    pub fn cover_count(&self) -> usize {
        (0..self.len())
            .map(|a| (0..self.len()).filter(|&b| self.covers(a, b)).count())
            .sum()
    }

    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).filter(|&y| self.covers(y, x)).count() == 1)
            .collect()
    }

    pub fn meet_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| (0..self.len()).filter(|&y| self.covers(x, y)).count() == 1)
            .collect()
    }

    pub fn bottom(&self) -> usize {
        self.least(&(0..self.len()).collect::<Vec<_>>()).unwrap()
    }
}

/// The concept order of `ctx`, elements in extent-mask order.
pub fn concept_order(ctx: &FormalContext) -> (Vec<(u64, u64)>, Order) {
    let cs = brute_concepts(ctx);
    let order = Order::from_fn(cs.len(), |a, b| cs[a].0 & !cs[b].0 == 0);
    (cs, order)
}

/// Every block is closed under joins and meets and contains each element
/// lying between two of its members.
pub fn is_local_congruence(order: &Order, labels: &[usize]) -> bool {
    let n = order.len();
    for a in 0..n {
        for b in 0..n {
            if labels[a] != labels[b] {
                continue;
            }
            let j = order.join(a, b).unwrap();
            let m = order.meet(a, b).unwrap();
            if labels[j] != labels[a] || labels[m] != labels[a] {
                return false;
            }
            for c in 0..n {
                if order.leq[a][c] && order.leq[c][b] && labels[c] != labels[a] {
                    return false;
                }
            }
        }
    }
    true
}

/// Calls `f` with every partition of `0..k`, as restricted growth strings.
pub fn for_each_partition(k: usize, f: &mut impl FnMut(&[usize])) {
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if i == cur.len() {
            f(cur);
            return;
        }
        for v in 0..=max + 1 {
            cur[i] = v;
            go(i + 1, max.max(v), cur, f);
        }
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut cur = vec![0; k];
    go(1, 0, &mut cur, f);
}

/// All local congruences coarser than the seed, as element labellings.
pub fn local_congruences_above(order: &Order, seed: &[usize]) -> Vec<Vec<usize>> {
    let mut seeds: Vec<usize> = seed.to_vec();
    seeds.sort();
    seeds.dedup();
    let mut out = Vec::new();
    for_each_partition(seeds.len(), &mut |groups| {
        let labels: Vec<usize> = seed
            .iter()
            .map(|s| groups[seeds.binary_search(s).unwrap()])
            .collect();
        if is_local_congruence(order, &labels) {
            out.push(labels);
        }
    });
    out
}

/// `p` refines `q`: elements together in `p` are together in `q`.
pub fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|a| (0..p.len()).all(|b| p[a] != p[b] || q[a] == q[b]))
}

/// Canonical form of a labelling: sorted blocks sorted by first element.
pub fn blocks_of(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut keys: Vec<usize> = labels.to_vec();
    keys.sort();
    keys.dedup();
    let mut blocks: Vec<Vec<usize>> = keys
        .iter()
        .map(|k| (0..labels.len()).filter(|&x| labels[x] == *k).collect())
        .collect();
    blocks.sort();
    blocks
}

/// Elements of `q` followed by the cut map `x ↦ {q ∈ Q | q ≤ x}`; returns
/// true when every cut of `Q` arises exactly once and the map is an order
/// embedding, that is, when the completion of `Q` is the whole order.
pub fn completes_to(order: &Order, q: &[usize]) -> bool {
    let k = q.len();
    let below = |x: usize| mask((0..k).filter(|&i| order.leq[q[i]][x]));
    let ub = |s: u64| mask((0..k).filter(|&i| (0..k).all(|j| s & (1 << j) == 0 || order.leq[q[j]][q[i]])));
    let lb = |s: u64| mask((0..k).filter(|&i| (0..k).all(|j| s & (1 << j) == 0 || order.leq[q[i]][q[j]])));
    let mut cuts: Vec<u64> = (0..1u64 << k).filter(|&s| lb(ub(s)) == s).collect();
    cuts.sort();
    let mut images: Vec<u64> = (0..order.len()).map(below).collect();
    for a in 0..order.len() {
        for b in 0..order.len() {
            let sub = images[a] & !images[b] == 0;
            if sub != order.leq[a][b] {
                return false;
            }
        }
    }
    images.sort();
    images == cuts
}

/// Permutation search for an order isomorphism; only for small orders.
pub fn brute_isomorphic(a: &Order, b: &Order) -> bool {
    fn go(a: &Order, b: &Order, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            if (0..i).all(|k| a.leq[k][i] == b.leq[map[k]][j] && a.leq[i][k] == b.leq[j][map[k]]) {
                used[j] = true;
                map.push(j);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[j] = false;
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Completion by trying every subset; only for orders of up to ~16 elements.
pub fn brute_dm(order: &Order) -> Order {
    let k = order.len();
    let ub = |s: u64| mask((0..k).filter(|&i| (0..k).all(|j| s & (1 << j) == 0 || order.leq[j][i])));
    let lb = |s: u64| mask((0..k).filter(|&i| (0..k).all(|j| s & (1 << j) == 0 || order.leq[i][j])));
    let cuts: Vec<u64> = (0..1u64 << k).filter(|&s| lb(ub(s)) == s).collect();
    Order::from_fn(cuts.len(), |a, b| cuts[a] & !cuts[b] == 0)
}

/// Classes of a partition of the order ordered by their joins, the bottom's
/// class below everything: `[x] ≤ [y]` iff `⊥ ∈ [x]` or `x_M ≤ y_M`.
pub fn class_order_by_maxima(order: &Order, labels: &[usize]) -> Order {
    let blocks = blocks_of(labels);
    let tops: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().copied().reduce(|a, c| order.join(a, c).unwrap()).unwrap())
        .collect();
    let bottom = order.bottom();
    Order::from_fn(blocks.len(), |x, y| blocks[x].contains(&bottom) || order.leq[tops[x]][tops[y]])
}

/// The same classes compared by `⊥ ∈ [x]` or `x_M ≤ y′` for some `y′ ∈ [y]`.
pub fn class_order_by_members(order: &Order, labels: &[usize]) -> Order {
    let blocks = blocks_of(labels);
    let tops: Vec<usize> = blocks
        .iter()
        .map(|b| b.iter().copied().reduce(|a, c| order.join(a, c).unwrap()).unwrap())
        .collect();
    let bottom = order.bottom();
    Order::from_fn(blocks.len(), |x, y| {
        blocks[x].contains(&bottom) || blocks[y].iter().any(|&y2| order.leq[tops[x]][y2])
    })
}

/// Labels each concept by `X↑D↓`, with `d` as an attribute mask.
pub fn reduction_labels(ctx: &FormalContext, concepts: &[(u64, u64)], d: u64) -> Vec<usize> {
    let keys: Vec<u64> = concepts.iter().map(|&(_, y)| down(ctx, y & d)).collect();
    let mut distinct = keys.clone();
    distinct.sort();
    distinct.dedup();
    keys.iter().map(|k| distinct.binary_search(k).unwrap()).collect()
}

/// The ⊑-least local congruence above `seed`, by exhaustive search.
pub fn brute_least_local_congruence(order: &Order, seed: &[usize]) -> Vec<Vec<usize>> {
    let all = local_congruences_above(order, seed);
    let least = all
        .iter()
        .find(|p| all.iter().all(|q| refines(p, q)))
        .expect("a least local congruence exists");
    blocks_of(least)
}
