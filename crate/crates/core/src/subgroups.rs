//! Complete subgroup lattices.
//!
//! Enumeration runs layer by layer in increasing order. Every subgroup
//! `K > 1` has a maximal subgroup `H` and an element `g` with `K = <H, g>`
//! and `g^q in H` for a prime `q`, so extending each known subgroup by such
//! elements reaches everything. Extensions always grow the order, so when a
//! layer is processed all of its members are already known.
//!
//! For nilpotent groups `H` can be taken normal of prime index in `K`; then
//! only elements of `N(H)` are tried and `<H, g>` is the union of the cosets
//! `H g^i`, with no closure needed. Otherwise `<H, g>` is closed coset by
//! coset.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use crate::arith;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::par;

pub const DEFAULT_MAX_SUBGROUPS: usize = 500_000;
pub const DEFAULT_MAX_CLOSURE_STEPS: usize = 2_000_000;

/// Progress callback: `(layer order, layer size, subgroups found so far)`.
pub type ProgressFn = Arc<dyn Fn(usize, usize, usize) + Send + Sync>;

#[derive(Clone)]
pub struct EnumConfig {
    pub max_subgroups: usize,
    /// Element insertions allowed for a single join.
    pub max_closure_steps: usize,
    pub parallel: bool,
    pub deadline: Option<Instant>,
    pub progress: Option<ProgressFn>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            max_closure_steps: DEFAULT_MAX_CLOSURE_STEPS,
            parallel: par::AVAILABLE,
            deadline: None,
            progress: None,
        }
    }
}

impl fmt::Debug for EnumConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EnumConfig")
            .field("max_subgroups", &self.max_subgroups)
            .field("max_closure_steps", &self.max_closure_steps)
            .field("parallel", &self.parallel)
            .field("deadline", &self.deadline)
            .finish_non_exhaustive()
    }
}

impl EnumConfig {
    pub fn sequential() -> Self {
        EnumConfig {
            parallel: false,
            ..Default::default()
        }
    }
}

/// All subgroups of a group, sorted by `(order, bits)`.
#[derive(Debug, Clone)]
pub struct SubgroupSet {
    subgroups: Vec<Subgroup>,
    generators: Vec<Vec<usize>>,
    index_of: HashMap<ElementSet, usize>,
}

impl SubgroupSet {
    /// Wraps an explicit list (deduplicated and sorted). Generators are
    /// recomputed greedily.
    pub fn from_subgroups(group: &GroupTable, list: Vec<Subgroup>) -> Self {
        let mut list = list;
        list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.bits().cmp(b.bits())));
        list.dedup();
        let generators = list.iter().map(|h| group.subgroup_generators(h)).collect();
        Self::assemble(list, generators)
    }

    fn assemble(subgroups: Vec<Subgroup>, generators: Vec<Vec<usize>>) -> Self {
        let index_of = subgroups
            .iter()
            .enumerate()
            .map(|(i, h)| (h.bits().clone(), i))
            .collect();
        SubgroupSet {
            subgroups,
            generators,
            index_of,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subgroup> {
        self.subgroups.iter()
    }

    /// A generating set for subgroup `i`.
    pub fn generators(&self, i: usize) -> &[usize] {
        &self.generators[i]
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index_of.get(h.bits()).copied()
    }

    pub fn index_of_bits(&self, bits: &ElementSet) -> Option<usize> {
        self.index_of.get(bits).copied()
    }

    /// Number of subgroups per order, ascending.
    pub fn order_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for h in &self.subgroups {
            *m.entry(h.order()).or_insert(0) += 1;
        }
        m
    }
}

struct Node {
    bits: ElementSet,
    gens: Vec<usize>,
}

/// Enumerates every subgroup of `group`.
pub fn all_subgroups(group: &GroupTable, config: &EnumConfig) -> Result<SubgroupSet> {
    let n = group.order();
    let nilpotent = group
        .lower_central_series()
        .last()
        .is_some_and(|s| s.order() == 1);

    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut layers: BTreeMap<usize, Vec<Node>> = BTreeMap::new();
    let trivial = ElementSet::from_indices(n, [0]);
    seen.insert(trivial.clone());
    layers.insert(
        1,
        vec![Node {
            bits: trivial,
            gens: Vec::new(),
        }],
    );

    let mut done: Vec<Node> = Vec::new();
    while let Some((order, mut layer)) = layers.pop_first() {
        if let Some(deadline) = config.deadline {
            if Instant::now() > deadline {
                return Err(Error::ResourceLimit("time limit reached during subgroup enumeration".into()));
            }
        }
        layer.sort_by(|a, b| a.bits.cmp(&b.bits));
        if let Some(cb) = &config.progress {
            cb(order, layer.len(), seen.len());
        }
        let seen_ref = &seen;
        let children = par::try_map(&layer, config.parallel, |node| {
            let found = if nilpotent {
                extend_normal(group, node)
            } else {
                extend_generic(group, node, config.max_closure_steps)?
            };
            Ok::<_, Error>(
                found
                    .into_iter()
                    .filter(|c| !seen_ref.contains(&c.bits))
                    .collect::<Vec<_>>(),
            )
        })?;
        for child in children.into_iter().flatten() {
            if seen.contains(&child.bits) {
                continue;
            }
            seen.insert(child.bits.clone());
            if seen.len() > config.max_subgroups {
                return Err(Error::ResourceLimit(format!(
                    "more than {} subgroups",
                    config.max_subgroups
                )));
            }
            let k = child.bits.count();
            debug_assert!(k > order && n.is_multiple_of(k));
            layers.entry(k).or_default().push(child);
        }
        done.extend(layer);
    }

    let (subgroups, generators): (Vec<Subgroup>, Vec<Vec<usize>>) = done
        .into_iter()
        .map(|node| (Subgroup::from_bits_unchecked(node.bits), node.gens))
        .unzip();
    Ok(SubgroupSet::assemble(subgroups, generators))
}

/// Marks the right coset `H g` in `done`.
fn mark_coset(group: &GroupTable, h_elems: &[usize], g: usize, done: &mut ElementSet) {
    for &h in h_elems {
        done.insert(group.mul(h, g));
    }
}

/// Least `e >= 1` with `g^e` in `h`.
fn power_index(group: &GroupTable, h: &ElementSet, g: usize) -> u64 {
    let mut e = 1;
    let mut y = g;
    while !h.contains(y) {
        y = group.mul(y, g);
        e += 1;
    }
    e
}

fn extend_normal(group: &GroupTable, node: &Node) -> Vec<Node> {
    let h = &node.bits;
    let h_elems: Vec<usize> = h.iter().collect();
    let mut done = h.clone();
    let mut out = Vec::new();
    let mut next = done.next_absent(0);
    while let Some(g) = next {
        let normalizes = node
            .gens
            .iter()
            .all(|&s| h.contains(group.conjugate(s, g)));
        if normalizes {
            let e = power_index(group, h, g);
            if arith::is_prime(e) {
                let mut k = h.clone();
                let mut t = g;
                for _ in 1..e {
                    mark_coset(group, &h_elems, t, &mut k);
                    t = group.mul(t, g);
                }
                done.union_with(&k);
                let mut gens = node.gens.clone();
                gens.push(g);
                out.push(Node { bits: k, gens });
            } else {
                mark_coset(group, &h_elems, g, &mut done);
            }
        } else {
            mark_coset(group, &h_elems, g, &mut done);
        }
        next = done.next_absent(g + 1);
    }
    out
}

fn extend_generic(group: &GroupTable, node: &Node, max_steps: usize) -> Result<Vec<Node>> {
    let h = &node.bits;
    let h_elems: Vec<usize> = h.iter().collect();
    let mut done = h.clone();
    let mut out: Vec<Node> = Vec::new();
    let mut local: HashSet<ElementSet> = HashSet::new();
    let mut next = done.next_absent(0);
    while let Some(g) = next {
        mark_coset(group, &h_elems, g, &mut done);
        if arith::is_prime(power_index(group, h, g)) {
            let mut budget = max_steps;
            let k = group.extend_closure(h, &node.gens, g, &mut budget)?;
            if local.insert(k.clone()) {
                let mut gens = node.gens.clone();
                gens.push(g);
                out.push(Node { bits: k, gens });
            }
        }
        next = done.next_absent(g + 1);
    }
    Ok(out)
}

/// Independent check of a subgroup list for small groups: starting from the
/// trivial subgroup, repeatedly adjoin one element to each known subgroup
/// (closing by brute force) until nothing new appears, then compare.
pub fn verify_complete(group: &GroupTable, set: &SubgroupSet) -> bool {
    let n = group.order();
    let mut known: HashSet<ElementSet> = HashSet::new();
    let mut queue: Vec<ElementSet> = vec![ElementSet::from_indices(n, [0])];
    known.insert(queue[0].clone());
    while let Some(h) = queue.pop() {
        let members: Vec<usize> = h.iter().collect();
        for g in 0..n {
            if h.contains(g) {
                continue;
            }
            let k = brute_closure(group, &members, g);
            if !known.contains(&k) {
                known.insert(k.clone());
                queue.push(k);
            }
        }
    }
    let listed: HashSet<ElementSet> = set.iter().map(|s| s.bits().clone()).collect();
    listed.len() == set.len() && listed == known
}

/// Closure of `members ∪ {g}` by right multiplication with every element
/// of that set.
fn brute_closure(group: &GroupTable, members: &[usize], g: usize) -> ElementSet {
    let mut mult: Vec<usize> = members.to_vec();
    mult.push(g);
    let mut set = ElementSet::from_indices(group.order(), [0]);
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &m in &mult {
            let y = group.mul(x, m);
            if set.insert(y) {
                stack.push(y);
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn subsets_oracle(g: &GroupTable) -> usize {
        // all subsets containing 0 that are closed under products
        let n = g.order();
        assert!(n <= 12);
        (0u32..(1 << (n - 1)))
            .filter(|mask| {
                let s: Vec<usize> = std::iter::once(0)
                    .chain((1..n).filter(|i| mask >> (i - 1) & 1 == 1))
                    .collect();
                let set: HashSet<usize> = s.iter().copied().collect();
                s.iter().all(|&a| s.iter().all(|&b| set.contains(&g.mul(a, b))))
            })
            .count()
    }

    #[test]
    fn prime_cyclic_has_two() {
        let g = cyclic(7).unwrap();
        let s = all_subgroups(&g, &EnumConfig::default()).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.get(0).order(), 1);
        assert_eq!(s.get(1).order(), 7);
    }

    #[test]
    fn quaternion_has_six() {
        let g = dicyclic(2).unwrap();
        assert_eq!(subsets_oracle(&g), 6);
        let s = all_subgroups(&g, &EnumConfig::default()).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.order_counts().into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1), (4, 3), (8, 1)]);
    }

    #[test]
    fn small_groups_match_subset_oracle() {
        let groups = vec![
            dicyclic(3).unwrap(),
            dihedral(6).unwrap(),
            abelian(&AbelianSpec::new(vec![2, 2, 2]).unwrap()).unwrap(),
            semidirect_by_automorphism(&AbelianSpec::new(vec![2, 2]).unwrap(), &[2, 3], 3).unwrap(),
            dihedral(5).unwrap(),
        ];
        for g in groups {
            let s = all_subgroups(&g, &EnumConfig::default()).unwrap();
            assert_eq!(s.len(), subsets_oracle(&g), "order {}", g.order());
        }
    }

    #[test]
    fn elementary_abelian_16() {
        let g = abelian(&AbelianSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
        let s = all_subgroups(&g, &EnumConfig::default()).unwrap();
        // Gaussian binomials over F_2 for dimension 4: 1, 15, 35, 15, 1
        let counts: Vec<usize> = s.order_counts().into_values().collect();
        assert_eq!(counts, vec![1, 15, 35, 15, 1]);
        assert_eq!(s.len(), 67);
    }

    #[test]
    fn oracle_agrees_and_rejects_corruption() {
        for g in [dicyclic(3).unwrap(), cyclic(16).unwrap(), dihedral(8).unwrap()] {
            let s = all_subgroups(&g, &EnumConfig::default()).unwrap();
            assert!(verify_complete(&g, &s));
            let mut list = s.subgroups().to_vec();
            list.remove(1);
            assert!(!verify_complete(&g, &SubgroupSet::from_subgroups(&g, list)));
        }
    }

    #[test]
    fn sequential_and_parallel_identical() {
        let g = generalized_dicyclic(&AbelianSpec::new(vec![2, 6]).unwrap(), 1).unwrap();
        let a = all_subgroups(&g, &EnumConfig::sequential()).unwrap();
        let b = all_subgroups(&g, &EnumConfig::default()).unwrap();
        assert_eq!(a.subgroups(), b.subgroups());
        for i in 0..a.len() {
            assert_eq!(g.generated_subgroup(a.generators(i).iter().copied()), *a.get(i));
        }
    }

    #[test]
    fn caps_are_enforced() {
        let g = abelian(&AbelianSpec::new(vec![2, 2, 2, 2]).unwrap()).unwrap();
        let cfg = EnumConfig {
            max_subgroups: 10,
            ..Default::default()
        };
        assert!(matches!(all_subgroups(&g, &cfg), Err(Error::ResourceLimit(_))));
        let s3 = dihedral(3).unwrap();
        let cfg = EnumConfig {
            max_closure_steps: 1,
            ..Default::default()
        };
        assert!(matches!(all_subgroups(&s3, &cfg), Err(Error::ResourceLimit(_))));
    }
}
