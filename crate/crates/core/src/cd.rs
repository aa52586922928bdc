//! Chermak–Delgado measures and lattices.
//!
//! The measure of `H <= G` is `|H| * |C_G(H)|`; the CD lattice is the set of
//! subgroups of maximum measure `m*`. Measures are computed for every
//! subgroup, so the full table is available to callers.
//!
//! The minimum member `M(G)` is known to be characteristic. Checking that
//! needs `Aut(G)`, which is not computed here, so [`check_invariants`] only
//! tests that it is normal.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::par;
use crate::subgroups::{self, EnumConfig, SubgroupSet};

/// `|H| * |C_G(H)|`.
pub fn measure(group: &GroupTable, h: &Subgroup) -> u64 {
    h.order() as u64 * group.centralizer(h).order() as u64
}

/// Per-element centralizers, used to intersect down to subgroup centralizers.
pub struct ElementCentralizers {
    sets: Vec<ElementSet>,
}

impl ElementCentralizers {
    pub fn new(group: &GroupTable, parallel: bool) -> Self {
        let n = group.order();
        let sets = par::map_range(n, parallel, |x| {
            let mut s = ElementSet::new(n);
            for g in 0..n {
                if group.commute(x, g) {
                    s.insert(g);
                }
            }
            s
        });
        ElementCentralizers { sets }
    }

    pub fn of_element(&self, x: usize) -> &ElementSet {
        &self.sets[x]
    }

    /// Centralizer of the subgroup generated by `gens`.
    pub fn of_generators(&self, universe: usize, gens: &[usize]) -> ElementSet {
        let mut acc = ElementSet::full(universe);
        for &g in gens {
            acc.intersect_with(&self.sets[g]);
        }
        acc
    }
}

/// Measures and centralizers of every subgroup in a [`SubgroupSet`].
#[derive(Debug, Clone)]
pub struct MeasureTable {
    centralizer: Vec<usize>,
    measures: Vec<u64>,
}

impl MeasureTable {
    pub fn new(group: &GroupTable, set: &SubgroupSet, parallel: bool) -> Result<Self> {
        let cents = ElementCentralizers::new(group, parallel);
        let n = group.order();
        let idx: Vec<usize> = (0..set.len()).collect();
        let centralizer = par::try_map(&idx, parallel, |&i| {
            let c = cents.of_generators(n, set.generators(i));
            set.index_of_bits(&c).ok_or_else(|| {
                Error::InvalidTable("centralizer missing from subgroup list".into())
            })
        })?;
        let measures = (0..set.len())
            .map(|i| set.get(i).order() as u64 * set.get(centralizer[i]).order() as u64)
            .collect();
        Ok(MeasureTable {
            centralizer,
            measures,
        })
    }

    /// Index of `C_G(H_i)`.
    pub fn centralizer(&self, i: usize) -> usize {
        self.centralizer[i]
    }

    pub fn measure(&self, i: usize) -> u64 {
        self.measures[i]
    }

    pub fn measures(&self) -> &[u64] {
        &self.measures
    }

    pub fn m_star(&self) -> u64 {
        self.measures.iter().copied().max().unwrap_or(0)
    }

    /// `H_i` is abelian iff it lies in its own centralizer.
    pub fn is_abelian(&self, set: &SubgroupSet, i: usize) -> bool {
        set.get(i).is_subgroup_of(set.get(self.centralizer[i]))
    }

    pub fn is_self_centralizing(&self, i: usize) -> bool {
        self.centralizer[i] == i
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeShape {
    Chain(usize),
    QuasiAntichain(usize),
    General,
}

impl LatticeShape {
    pub fn tag(&self) -> &'static str {
        match self {
            LatticeShape::Chain(_) => "chain",
            LatticeShape::QuasiAntichain(_) => "quasi_antichain",
            LatticeShape::General => "general",
        }
    }

    pub fn param(&self) -> Option<usize> {
        match *self {
            LatticeShape::Chain(k) | LatticeShape::QuasiAntichain(k) => Some(k),
            LatticeShape::General => None,
        }
    }
}

/// Serialized as `{"tag": ..., "param": ...}` with `param` null for
/// `general`.
impl Serialize for LatticeShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LatticeShape", 2)?;
        st.serialize_field("tag", self.tag())?;
        st.serialize_field("param", &self.param())?;
        st.end()
    }
}

impl fmt::Display for LatticeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeShape::Chain(k) => write!(f, "chain of length {k}"),
            LatticeShape::QuasiAntichain(w) => write!(f, "quasi-antichain of width {w}"),
            LatticeShape::General => write!(f, "general"),
        }
    }
}

/// Shape of a finite poset under inclusion.
pub fn classify_shape(members: &[Subgroup]) -> LatticeShape {
    let k = members.len();
    let le = |a: usize, b: usize| members[a].is_subgroup_of(&members[b]);
    let comparable = |a: usize, b: usize| le(a, b) || le(b, a);
    if (0..k).all(|a| (a + 1..k).all(|b| comparable(a, b))) {
        return LatticeShape::Chain(k.saturating_sub(1));
    }
    let bottom = (0..k).find(|&a| (0..k).all(|b| le(a, b)));
    let top = (0..k).find(|&a| (0..k).all(|b| le(b, a)));
    if let (Some(lo), Some(hi)) = (bottom, top) {
        let middle: Vec<usize> = (0..k).filter(|&a| a != lo && a != hi).collect();
        let antichain = middle
            .iter()
            .enumerate()
            .all(|(i, &a)| middle[i + 1..].iter().all(|&b| !comparable(a, b)));
        if k >= 4 && antichain {
            return LatticeShape::QuasiAntichain(middle.len());
        }
    }
    LatticeShape::General
}

/// Inclusion covers among `members`, as index pairs `(smaller, larger)`.
pub fn hasse_edges(members: &[Subgroup]) -> Vec<(usize, usize)> {
    let k = members.len();
    let lt = |a: usize, b: usize| a != b && members[a].is_subgroup_of(&members[b]);
    let mut edges = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if lt(a, b) && !(0..k).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();
    edges
}

#[derive(Debug, Clone)]
pub struct CDLattice {
    /// Members sorted by `(order, bits)`.
    pub members: Vec<Subgroup>,
    /// Position of each member in the full subgroup list.
    pub set_indices: Vec<usize>,
    pub m_star: u64,
    pub measures: Vec<u64>,
    pub hasse: Vec<(usize, usize)>,
    pub minimum: usize,
    pub maximum: usize,
    pub shape: LatticeShape,
}

impl CDLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, h: &Subgroup) -> Option<usize> {
        self.members.iter().position(|m| m == h)
    }

    pub fn contains(&self, h: &Subgroup) -> bool {
        self.position(h).is_some()
    }

    /// Member counts per order, ascending.
    pub fn order_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for h in &self.members {
            *m.entry(h.order()).or_insert(0) += 1;
        }
        m
    }
}

pub fn cd_lattice(set: &SubgroupSet, table: &MeasureTable) -> CDLattice {
    let m_star = table.m_star();
    let set_indices: Vec<usize> = (0..set.len()).filter(|&i| table.measure(i) == m_star).collect();
    let members: Vec<Subgroup> = set_indices.iter().map(|&i| set.get(i).clone()).collect();
    let k = members.len();
    let minimum = (0..k)
        .find(|&a| members.iter().all(|b| members[a].is_subgroup_of(b)))
        .unwrap_or(0);
    let maximum = (0..k)
        .find(|&a| members.iter().all(|b| b.is_subgroup_of(&members[a])))
        .unwrap_or(k.saturating_sub(1));
    CDLattice {
        hasse: hasse_edges(&members),
        shape: classify_shape(&members),
        measures: vec![m_star; k],
        members,
        set_indices,
        m_star,
        minimum,
        maximum,
    }
}

/// Index of a self-centralizing subgroup of maximum order. Ties go to the
/// smallest bit vector, which is the first in list order.
pub fn max_self_centralizing(set: &SubgroupSet, table: &MeasureTable) -> usize {
    let best = (0..set.len())
        .filter(|&i| table.is_self_centralizing(i))
        .map(|i| set.get(i).order())
        .max()
        .unwrap_or(0);
    (0..set.len())
        .find(|&i| table.is_self_centralizing(i) && set.get(i).order() == best)
        .expect("a maximal abelian subgroup is self-centralizing")
}

/// True iff every non-abelian subgroup `H` has `C_G(H) = Z(H)`, that is
/// `C_G(H) <= H`.
pub fn cgz_predicate(set: &SubgroupSet, table: &MeasureTable) -> bool {
    (0..set.len()).all(|i| {
        table.is_abelian(set, i) || set.get(table.centralizer(i)).is_subgroup_of(set.get(i))
    })
}

/// Everything computed about one group.
pub struct Analysis {
    pub group: GroupTable,
    pub subgroups: SubgroupSet,
    pub table: MeasureTable,
    pub lattice: CDLattice,
    pub center: Subgroup,
}

impl Analysis {
    pub fn new(group: GroupTable, config: &EnumConfig) -> Result<Self> {
        let subgroups = subgroups::all_subgroups(&group, config)?;
        let table = MeasureTable::new(&group, &subgroups, config.parallel)?;
        let lattice = cd_lattice(&subgroups, &table);
        let center = group.center();
        Ok(Analysis {
            group,
            subgroups,
            table,
            lattice,
            center,
        })
    }

    pub fn index_of(&self, h: &Subgroup) -> usize {
        self.subgroups.index_of(h).expect("subgroup list is complete")
    }

    pub fn centralizer(&self, h: &Subgroup) -> &Subgroup {
        self.subgroups.get(self.table.centralizer(self.index_of(h)))
    }

    /// `Z(H) = H ∩ C_G(H)`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        h.meet(self.centralizer(h))
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        self.table.is_abelian(&self.subgroups, self.index_of(h))
    }

    pub fn max_self_centralizing(&self) -> &Subgroup {
        self.subgroups.get(max_self_centralizing(&self.subgroups, &self.table))
    }

    /// Subgroups of the given index.
    pub fn of_index(&self, index: usize) -> impl Iterator<Item = &Subgroup> {
        let n = self.group.order();
        self.subgroups
            .iter()
            .filter(move |h| h.order() * index == n)
    }

    /// All subgroups `K` with `lo <= K <= hi`.
    pub fn interval(&self, lo: &Subgroup, hi: &Subgroup) -> Vec<Subgroup> {
        self.subgroups
            .iter()
            .filter(|k| lo.is_subgroup_of(k) && k.is_subgroup_of(hi))
            .cloned()
            .collect()
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let ga = self.subgroups.generators(self.index_of(a));
        let gb = self.subgroups.generators(self.index_of(b));
        self.group
            .generated_subgroup(ga.iter().chain(gb.iter()).copied())
    }
}

/// Meet and join tables over the members of a lattice.
#[derive(Debug, Clone)]
pub struct LatticeTables {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

impl LatticeTables {
    /// Fails with the offending pair if `members` is not closed.
    pub fn new(analysis: &Analysis, members: &[Subgroup]) -> std::result::Result<Self, String> {
        let k = members.len();
        let find = |h: &Subgroup| members.iter().position(|m| m == h);
        let mut meet = vec![vec![0; k]; k];
        let mut join = vec![vec![0; k]; k];
        for a in 0..k {
            for b in a..k {
                let m = members[a].meet(&members[b]);
                let j = analysis.join(&members[a], &members[b]);
                let mi = find(&m).ok_or_else(|| format!("meet of members {a} and {b} is not a member"))?;
                let ji = find(&j).ok_or_else(|| format!("join of members {a} and {b} is not a member"))?;
                meet[a][b] = mi;
                meet[b][a] = mi;
                join[a][b] = ji;
                join[b][a] = ji;
            }
        }
        Ok(LatticeTables { meet, join })
    }

    pub fn is_modular(&self, members: &[Subgroup]) -> bool {
        let k = members.len();
        (0..k).all(|x| {
            (0..k).all(|z| {
                !members[x].is_subgroup_of(&members[z])
                    || (0..k).all(|y| {
                        self.join[x][self.meet[y][z]] == self.meet[self.join[x][y]][z]
                    })
            })
        })
    }

    /// Every element has a complement relative to `bottom` and `top`.
    pub fn is_complemented(&self, bottom: usize, top: usize) -> bool {
        let k = self.meet.len();
        (0..k).all(|x| (0..k).any(|y| self.meet[x][y] == bottom && self.join[x][y] == top))
    }
}

/// Structural properties every CD lattice has. Returns a description of
/// each violation found.
pub fn check_invariants(analysis: &Analysis) -> Vec<String> {
    let Analysis {
        group,
        subgroups,
        table,
        lattice,
        center,
    } = analysis;
    let mut bad = Vec::new();
    let n = group.order();
    let m_star = lattice.m_star;
    if lattice.is_empty() {
        return vec!["lattice is empty".into()];
    }
    if m_star < (n * center.order()) as u64 {
        bad.push("m* is below |G||Z(G)|".into());
    }
    for i in 0..subgroups.len() {
        let is_member = lattice.set_indices.binary_search(&i).is_ok();
        if is_member != (table.measure(i) == m_star) || table.measure(i) > m_star {
            bad.push(format!("subgroup {i} membership disagrees with its measure"));
        }
    }
    for (k, h) in lattice.members.iter().enumerate() {
        let i = lattice.set_indices[k];
        let c = table.centralizer(i);
        if lattice.set_indices.binary_search(&c).is_err() {
            bad.push(format!("centralizer of member {k} is not a member"));
        }
        if table.centralizer(c) != i {
            bad.push(format!("member {k} is not its double centralizer"));
        }
        if table.measure(c) != table.measure(i) {
            bad.push(format!("member {k} and its centralizer differ in measure"));
        }
        if !center.is_subgroup_of(h) {
            bad.push(format!("member {k} does not contain Z(G)"));
        }
        if (n / center.order()) % (n / h.order()) != 0 {
            bad.push(format!("index of member {k} does not divide |G:Z(G)|"));
        }
    }
    let min = &lattice.members[lattice.minimum];
    let max = &lattice.members[lattice.maximum];
    if !lattice.members.iter().all(|h| min.is_subgroup_of(h) && h.is_subgroup_of(max)) {
        bad.push("minimum or maximum is not an extreme".into());
    }
    if !analysis.is_abelian(min) {
        bad.push("M(G) is not abelian".into());
    }
    if !group.is_normal(min) {
        bad.push("M(G) is not normal".into());
    }
    if !center.is_subgroup_of(min) {
        bad.push("M(G) does not contain Z(G)".into());
    }
    match LatticeTables::new(analysis, &lattice.members) {
        Ok(t) => {
            if !t.is_modular(&lattice.members) {
                bad.push("lattice is not modular".into());
            }
        }
        Err(e) => bad.push(e),
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::*;

    fn analyze(g: GroupTable) -> Analysis {
        Analysis::new(g, &EnumConfig::default()).unwrap()
    }

    #[test]
    fn shapes() {
        let g = cyclic(8).unwrap();
        let s = subgroups::all_subgroups(&g, &EnumConfig::default()).unwrap();
        assert_eq!(classify_shape(&s.subgroups()[..1]), LatticeShape::Chain(0));
        assert_eq!(classify_shape(&s.subgroups()[..2]), LatticeShape::Chain(1));
        assert_eq!(classify_shape(s.subgroups()), LatticeShape::Chain(3));
        let v = abelian(&AbelianSpec::new(vec![2, 2]).unwrap()).unwrap();
        let s = subgroups::all_subgroups(&v, &EnumConfig::default()).unwrap();
        assert_eq!(classify_shape(s.subgroups()), LatticeShape::QuasiAntichain(3));
        let mut rev = s.subgroups().to_vec();
        rev.reverse();
        assert_eq!(classify_shape(&rev), LatticeShape::QuasiAntichain(3));
        let e = abelian(&AbelianSpec::new(vec![2, 2, 2]).unwrap()).unwrap();
        let s = subgroups::all_subgroups(&e, &EnumConfig::default()).unwrap();
        assert_eq!(classify_shape(s.subgroups()), LatticeShape::General);
    }

    #[test]
    fn abelian_is_singleton() {
        let a = analyze(abelian(&AbelianSpec::new(vec![2, 6]).unwrap()).unwrap());
        assert_eq!(a.lattice.len(), 1);
        assert_eq!(a.lattice.m_star, 144);
        assert_eq!(a.lattice.shape, LatticeShape::Chain(0));
        assert!(check_invariants(&a).is_empty());
    }

    #[test]
    fn quaternion_lattice() {
        let a = analyze(dicyclic(2).unwrap());
        assert_eq!(a.lattice.m_star, 16);
        assert_eq!(a.lattice.len(), 5);
        assert_eq!(a.lattice.shape, LatticeShape::QuasiAntichain(3));
        assert_eq!(a.lattice.hasse.len(), 6);
        assert!(check_invariants(&a).is_empty());
        assert!(cgz_predicate(&a.subgroups, &a.table));
    }

    #[test]
    fn dicyclic_twelve() {
        let a = analyze(dicyclic(3).unwrap());
        let cyc = a.group.generated_subgroup([1]);
        assert_eq!(cyc.order(), 6);
        assert_eq!(measure(&a.group, &cyc), 36);
        assert_eq!(a.lattice.members, vec![cyc.clone()]);
        assert_eq!(a.max_self_centralizing(), &cyc);
    }

    #[test]
    fn measures_match_direct_computation() {
        let a = analyze(dihedral(6).unwrap());
        for (i, h) in a.subgroups.iter().enumerate() {
            assert_eq!(a.table.measure(i), measure(&a.group, h));
            assert_eq!(a.subgroups.get(a.table.centralizer(i)), &a.group.centralizer(h));
        }
    }

    #[test]
    fn invariant_checker_catches_tampering() {
        let mut a = analyze(dicyclic(2).unwrap());
        a.lattice.members.remove(1);
        a.lattice.set_indices.remove(1);
        a.lattice.maximum = 3;
        assert!(!check_invariants(&a).is_empty());
    }
}
