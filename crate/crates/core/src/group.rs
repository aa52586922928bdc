//! Finite groups given by a full multiplication table.
//!
//! Elements are indices `0..order`; the identity is always index 0. The table
//! stores `u16` entries, which caps the order at [`MAX_ORDER`].

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::arith;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};

/// Largest order the table representation accepts (order^2 entries).
pub const MAX_ORDER: usize = 20_000;

/// Associativity is verified exhaustively up to this order unless asked for.
pub const DEFAULT_ASSOCIATIVITY_LIMIT: usize = 512;

/// How much validation to run when a table is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Validation {
    /// Latin square, identity and inverses; associativity up to
    /// [`DEFAULT_ASSOCIATIVITY_LIMIT`].
    Default,
    /// Everything including O(order^3) associativity at any size.
    Full,
}

pub struct GroupTable {
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    names: Option<Vec<String>>,
    gens: OnceLock<Vec<usize>>,
}

impl Clone for GroupTable {
    fn clone(&self) -> Self {
        GroupTable {
            order: self.order,
            mul: self.mul.clone(),
            inv: self.inv.clone(),
            names: self.names.clone(),
            gens: self.gens.clone(),
        }
    }
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

impl PartialEq for GroupTable {
    /// Tables are equal when they are identical element for element; names
    /// are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl GroupTable {
    /// Builds a table from a product function on indices and validates it.
    pub fn from_fn(
        order: usize,
        names: Option<Vec<String>>,
        validation: Validation,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        check_order(order)?;
        let mut mul = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = product(a, b);
                if c >= order {
                    return Err(Error::InvalidTable(format!(
                        "product {a}*{b} = {c} is out of range"
                    )));
                }
                mul.push(c as u16);
            }
        }
        Self::from_raw(order, mul, names, validation)
    }

    /// Wraps a row-major table of `order * order` entries.
    pub fn from_raw(
        order: usize,
        mul: Vec<u16>,
        names: Option<Vec<String>>,
        validation: Validation,
    ) -> Result<Self> {
        check_order(order)?;
        if mul.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, got {}",
                order * order,
                mul.len()
            )));
        }
        if let Some(n) = &names {
            if n.len() != order {
                return Err(Error::InvalidTable("name list length mismatch".into()));
            }
        }
        let inv = validate_latin(order, &mul)?;
        let g = GroupTable {
            order,
            mul,
            inv,
            names,
            gens: OnceLock::new(),
        };
        let check_assoc = match validation {
            Validation::Default => order <= DEFAULT_ASSOCIATIVITY_LIMIT,
            Validation::Full => true,
        };
        if check_assoc {
            g.check_associative()?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Row `a` of the table: `row(a)[b] == mul(a, b)`.
    #[inline]
    pub fn row(&self, a: usize) -> &[u16] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut acc = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    #[inline]
    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Exhaustive O(order^3) associativity check.
    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            let ra = self.row(a);
            for b in 0..n {
                let ab = ra[b] as usize;
                let rab = self.row(ab);
                let rb = self.row(b);
                for c in 0..n {
                    if rab[c] != ra[rb[c] as usize] {
                        return Err(Error::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A generating set chosen greedily in index order, cached on first use.
    pub fn generators(&self) -> &[usize] {
        self.gens.get_or_init(|| {
            let (_, gens) = self.greedy_generators(&ElementSet::full(self.order));
            gens
        })
    }

    pub(crate) fn set_generators(&self, gens: Vec<usize>) {
        let _ = self.gens.set(gens);
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_indices(self.order, [0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            bits: ElementSet::full(self.order),
            order: self.order,
        }
    }

    /// Checks that `bits` is a subgroup and wraps it.
    pub fn subgroup(&self, bits: ElementSet) -> Result<Subgroup> {
        if bits.universe() != self.order || !bits.contains(0) {
            return Err(Error::InvalidConstruction(
                "subset does not contain the identity".into(),
            ));
        }
        let elems: Vec<usize> = bits.iter().collect();
        for &a in &elems {
            if !bits.contains(self.inv(a)) {
                return Err(Error::InvalidConstruction("subset not closed under inverses".into()));
            }
            let row = self.row(a);
            if elems.iter().any(|&b| !bits.contains(row[b] as usize)) {
                return Err(Error::InvalidConstruction("subset not closed under products".into()));
            }
        }
        let order = elems.len();
        Ok(Subgroup { bits, order })
    }

    /// Extends `base` (a subgroup) by `extra`, returning `<base, extra>`.
    ///
    /// `base_gens` must generate `base`. This is Dimino's coset-by-coset
    /// closure: the result is kept as a union of right cosets of `base`.
    /// `budget` is decremented per element added.
    pub fn extend_closure(
        &self,
        base: &ElementSet,
        base_gens: &[usize],
        extra: usize,
        budget: &mut usize,
    ) -> Result<ElementSet> {
        if base.contains(extra) {
            return Ok(base.clone());
        }
        let base_elems: Vec<usize> = base.iter().collect();
        let mut gens: Vec<usize> = base_gens.to_vec();
        gens.push(extra);
        let mut set = base.clone();
        let mut reps = vec![0usize];
        let mut add_coset = |set: &mut ElementSet, t: usize, reps: &mut Vec<usize>| -> Result<()> {
            if *budget < base_elems.len() {
                return Err(Error::ResourceLimit(
                    "closure step budget exhausted".into(),
                ));
            }
            *budget -= base_elems.len();
            for &h in &base_elems {
                set.insert(self.mul(h, t));
            }
            reps.push(t);
            Ok(())
        };
        add_coset(&mut set, extra, &mut reps)?;
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let t = self.mul(r, s);
                if !set.contains(t) {
                    add_coset(&mut set, t, &mut reps)?;
                }
            }
            i += 1;
        }
        Ok(set)
    }

    fn greedy_generators(&self, within: &ElementSet) -> (ElementSet, Vec<usize>) {
        let mut cur = ElementSet::from_indices(self.order, [0]);
        let mut gens = Vec::new();
        let mut budget = usize::MAX;
        for x in within.iter() {
            if !cur.contains(x) {
                cur = self
                    .extend_closure(&cur, &gens, x, &mut budget)
                    .expect("unbounded budget");
                gens.push(x);
            }
        }
        (cur, gens)
    }

    /// A generating set of `h`, picked greedily in index order.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<usize> {
        self.greedy_generators(&h.bits).1
    }

    /// The least subgroup containing `seed`.
    pub fn generated_subgroup<I: IntoIterator<Item = usize>>(&self, seed: I) -> Subgroup {
        let mut cur = ElementSet::from_indices(self.order, [0]);
        let mut gens = Vec::new();
        let mut budget = usize::MAX;
        for x in seed {
            if !cur.contains(x) {
                cur = self
                    .extend_closure(&cur, &gens, x, &mut budget)
                    .expect("unbounded budget");
                gens.push(x);
            }
        }
        Subgroup::from_bits_unchecked(cur)
    }

    /// Elements commuting with every element of `elems`.
    pub fn centralizer_of(&self, elems: &[usize]) -> Subgroup {
        let bits = ElementSet::from_indices(
            self.order,
            (0..self.order).filter(|&x| elems.iter().all(|&s| self.commute(x, s))),
        );
        Subgroup::from_bits_unchecked(bits)
    }

    pub fn centralizer(&self, s: &Subgroup) -> Subgroup {
        self.centralizer_of(&self.subgroup_generators(s))
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.generators().to_vec();
        self.centralizer_of(&gens)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure<I: IntoIterator<Item = usize>>(&self, seed: I) -> Subgroup {
        let ggens = self.generators().to_vec();
        let mut cur = ElementSet::from_indices(self.order, [0]);
        let mut gens: Vec<usize> = Vec::new();
        let mut budget = usize::MAX;
        let mut push = |cur: &mut ElementSet, gens: &mut Vec<usize>, x: usize| {
            if !cur.contains(x) {
                *cur = self
                    .extend_closure(cur, gens, x, &mut budget)
                    .expect("unbounded budget");
                gens.push(x);
            }
        };
        for x in seed {
            push(&mut cur, &mut gens, x);
        }
        // Conjugating each generator of the current subgroup by each group
        // generator until nothing new appears.
        let mut i = 0;
        while i < gens.len() {
            let s = gens[i];
            for &g in &ggens {
                let c = self.conjugate(s, g);
                push(&mut cur, &mut gens, c);
            }
            i += 1;
        }
        Subgroup::from_bits_unchecked(cur)
    }

    /// `[H, K]` for normal subgroups `H` and `K`.
    pub fn commutator_subgroup(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let hg = self.subgroup_generators(h);
        let kg = self.subgroup_generators(k);
        let seeds: Vec<usize> = hg
            .iter()
            .flat_map(|&a| kg.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        self.normal_closure(seeds)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let g = self.whole();
        self.commutator_subgroup(&g, &g)
    }

    /// `G = G_1 > G_2 = [G_1, G] > ...`, stopping at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let g = self.whole();
        let mut series = vec![g.clone()];
        loop {
            let last = series.last().expect("nonempty");
            let next = self.commutator_subgroup(last, &g);
            if next == *last {
                break;
            }
            let done = next.order() == 1;
            series.push(next);
            if done {
                break;
            }
        }
        series
    }

    pub fn is_normal(&self, s: &Subgroup) -> bool {
        let sg = self.subgroup_generators(s);
        self.generators()
            .iter()
            .all(|&g| sg.iter().all(|&x| s.contains(self.conjugate(x, g))))
    }

    pub fn is_abelian_subgroup(&self, s: &Subgroup) -> bool {
        let g = self.subgroup_generators(s);
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commute(a, b)))
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1, |acc, x| arith::lcm(acc, self.element_order(x) as u64))
    }

    /// Sorted list of element orders; an isomorphism invariant.
    pub fn order_profile(&self, s: &Subgroup) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn predicates(&self) -> GroupPredicates {
        let series = self.lower_central_series();
        let nilpotency_class = (series.last().map(|s| s.order()) == Some(1)).then(|| series.len() - 1);
        let prime_power = arith::prime_power(self.order as u64);
        let is_maximal_class = match (prime_power, nilpotency_class) {
            (Some((_, n)), Some(c)) => n >= 2 && c == n as usize - 1,
            _ => false,
        };
        let derived = self.derived_subgroup();
        GroupPredicates {
            order: self.order,
            is_abelian: self.is_abelian(),
            nilpotency_class,
            exponent: self.exponent(),
            is_maximal_class,
            is_metabelian: self.is_abelian_subgroup(&derived),
            prime_power,
        }
    }

    /// The quotient by a normal subgroup. Cosets are numbered by their least
    /// element, so the identity coset is 0.
    pub fn quotient(&self, n: &Subgroup) -> Result<GroupTable> {
        if !self.is_normal(n) {
            return Err(Error::InvalidConstruction("quotient by a non-normal subgroup".into()));
        }
        let mut coset = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        let members: Vec<usize> = n.iter().collect();
        for x in 0..self.order {
            if coset[x] == usize::MAX {
                let id = reps.len();
                reps.push(x);
                for &m in &members {
                    coset[self.mul(x, m)] = id;
                }
            }
        }
        GroupTable::from_fn(reps.len(), None, Validation::Default, |a, b| {
            coset[self.mul(reps[a], reps[b])]
        })
    }

    /// `self` relabelled with explicit element names.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::InvalidTable("name list length mismatch".into()));
        }
        self.names = Some(names);
        Ok(self)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        return Err(Error::InvalidTable("empty group".into()));
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            limit: MAX_ORDER,
        });
    }
    Ok(())
}

/// Latin-square and identity checks; returns the inverse map.
fn validate_latin(order: usize, mul: &[u16]) -> Result<Vec<u16>> {
    for x in 0..order {
        if mul[x] as usize != x || mul[x * order] as usize != x {
            return Err(Error::InvalidTable(format!("index 0 is not an identity at {x}")));
        }
    }
    let mut inv = vec![u16::MAX; order];
    let mut stamp = vec![usize::MAX; order];
    for a in 0..order {
        let row = &mul[a * order..(a + 1) * order];
        for (b, &c) in row.iter().enumerate() {
            let c = c as usize;
            if stamp[c] == a {
                return Err(Error::InvalidTable(format!("row {a} repeats {c}")));
            }
            stamp[c] = a;
            if c == 0 {
                inv[a] = b as u16;
            }
        }
    }
    stamp.iter_mut().for_each(|s| *s = usize::MAX);
    for b in 0..order {
        for a in 0..order {
            let c = mul[a * order + b] as usize;
            if stamp[c] == b {
                return Err(Error::InvalidTable(format!("column {b} repeats {c}")));
            }
            stamp[c] = b;
        }
    }
    for a in 0..order {
        let b = inv[a] as usize;
        if mul[b * order + a] != 0 {
            return Err(Error::InvalidTable(format!("left and right inverse of {a} differ")));
        }
    }
    Ok(inv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupPredicates {
    pub order: usize,
    pub is_abelian: bool,
    /// `None` when the lower central series stalls above the trivial group.
    pub nilpotency_class: Option<usize>,
    pub exponent: u64,
    pub is_maximal_class: bool,
    pub is_metabelian: bool,
    /// `(p, n)` when the order is `p^n`.
    pub prime_power: Option<(u64, u32)>,
}

/// A subgroup as a bit vector over the element indices of its parent group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: ElementSet,
    order: usize,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}: {:?})", self.order, self.bits)
    }
}

impl Subgroup {
    pub(crate) fn from_bits_unchecked(bits: ElementSet) -> Self {
        let order = bits.count();
        Subgroup { bits, order }
    }

    pub(crate) fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, it: I) -> Self {
        Self::from_bits_unchecked(ElementSet::from_indices(universe, it))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn bits(&self) -> &ElementSet {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    pub fn iter(&self) -> crate::bitset::Ones<'_> {
        self.bits.iter()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.bits.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order <= other.order && self.bits.is_subset(&other.bits)
    }

    /// Intersection of two subgroups.
    pub fn meet(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_bits_unchecked(self.bits.intersection(&other.bits))
    }

    pub fn index_in(&self, parent_order: usize) -> usize {
        parent_order / self.order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> GroupTable {
        GroupTable::from_fn(n, None, Validation::Full, |a, b| (a + b) % n).unwrap()
    }

    /// S3 on indices 0..6 via explicit permutations of {0,1,2}.
    fn s3() -> GroupTable {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        GroupTable::from_fn(6, None, Validation::Full, |a, b| {
            let p = perms[a];
            let q = perms[b];
            let r = [q[p[0]], q[p[1]], q[p[2]]];
            perms.iter().position(|x| *x == r).unwrap()
        })
        .unwrap()
    }

    #[test]
    fn rejects_non_latin_and_oversized() {
        let bad = vec![0u16, 1, 1, 1];
        assert!(GroupTable::from_raw(2, bad, None, Validation::Full).is_err());
        assert!(matches!(
            GroupTable::from_raw(MAX_ORDER + 1, vec![], None, Validation::Default),
            Err(Error::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_non_associative_loop() {
        // A Latin square with identity 0 that is not a group (order-5 loop).
        let t: [[u16; 5]; 5] = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ];
        let flat: Vec<u16> = t.iter().flatten().copied().collect();
        let err = GroupTable::from_raw(5, flat, None, Validation::Full).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn element_orders_in_cyclic_group() {
        let g = cyclic(6);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(1), 6);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn s3_is_not_nilpotent() {
        let g = s3();
        let p = g.predicates();
        assert!(!p.is_abelian);
        assert_eq!(p.nilpotency_class, None);
        assert!(p.is_metabelian);
        assert_eq!(g.center().order(), 1);
        assert_eq!(g.derived_subgroup().order(), 3);
        let series = g.lower_central_series();
        assert_eq!(series.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![6, 3]);
    }

    #[test]
    fn s3_normality() {
        let g = s3();
        let t = g.generated_subgroup([1]);
        assert_eq!(t.order(), 2);
        assert!(!g.is_normal(&t));
        assert!(g.is_normal(&g.derived_subgroup()));
        assert!(g.subgroup(t.bits().clone()).is_ok());
        let bad = ElementSet::from_indices(6, [0, 1, 2]);
        assert!(g.subgroup(bad).is_err());
    }

    #[test]
    fn quotient_of_cyclic() {
        let g = cyclic(12);
        let n = g.generated_subgroup([4]);
        let q = g.quotient(&n).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        assert_eq!(q.exponent(), 4);
    }

    #[test]
    fn trivial_group_predicates() {
        let g = cyclic(1);
        let p = g.predicates();
        assert!(p.is_abelian);
        assert_eq!(p.nilpotency_class, Some(0));
        assert_eq!(p.exponent, 1);
    }
}
