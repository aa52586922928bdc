//! Executable classification results.
//!
//! Each check works out which hypothesis a group satisfies from quantities
//! computed by brute force (`|G:Z(G)|`, `|G:A|` for a largest
//! self-centralizing `A`, the smallest prime divisor of `|G|`, ...), builds
//! the predicted CD lattice from the subgroup list, and compares it with the
//! computed lattice by exact set equality.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith;
use crate::cd::{self, Analysis, LatticeShape};
use crate::constructors::{self, AbelianSpec};
use crate::error::{Error, Result};
use crate::group::{GroupTable, Subgroup};
use crate::subgroups::{self, EnumConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    /// Check name and branch, e.g. `index/4b`.
    pub id: String,
    /// The group or parameters checked.
    pub subject: String,
    pub hypothesis_matched: bool,
    pub prediction: String,
    pub verdict: Verdict,
    /// Mismatches on failure, supporting numbers otherwise.
    pub details: Vec<String>,
    /// Set when the result only covers the groups that were tried.
    pub corpus_limited: bool,
}

impl TheoremReport {
    fn not_applicable(id: &str, subject: &str, why: impl Into<String>) -> Self {
        TheoremReport {
            id: id.to_string(),
            subject: subject.to_string(),
            hypothesis_matched: false,
            prediction: String::new(),
            verdict: Verdict::NotApplicable,
            details: vec![why.into()],
            corpus_limited: false,
        }
    }

    fn decided(id: String, subject: &str, prediction: String, failures: Vec<String>, notes: Vec<String>) -> Self {
        let verdict = if failures.is_empty() { Verdict::Pass } else { Verdict::Fail };
        let mut details = failures;
        details.extend(notes);
        TheoremReport {
            id,
            subject: subject.to_string(),
            hypothesis_matched: true,
            prediction,
            verdict,
            details,
            corpus_limited: false,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

/// A predicted member set together with side conditions that failed.
#[derive(Debug, Clone)]
pub struct Prediction {
    pub branch: String,
    pub statement: String,
    pub members: BTreeSet<Subgroup>,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Prediction {
    fn new(branch: &str, statement: impl Into<String>, members: impl IntoIterator<Item = Subgroup>) -> Self {
        Prediction {
            branch: branch.to_string(),
            statement: statement.into(),
            members: members.into_iter().collect(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    /// Compares with the computed lattice and turns the result into a report.
    fn report(mut self, family: &str, subject: &str, an: &Analysis) -> TheoremReport {
        self.failures.extend(compare_members(an, &self.members));
        TheoremReport::decided(
            format!("{family}/{}", self.branch),
            subject,
            self.statement,
            self.failures,
            self.notes,
        )
    }
}

fn describe(an: &Analysis, h: &Subgroup) -> String {
    format!("subgroup #{} of order {}", an.index_of(h), h.order())
}

/// Differences between a predicted member set and the computed lattice.
pub fn compare_members(an: &Analysis, predicted: &BTreeSet<Subgroup>) -> Vec<String> {
    let actual: BTreeSet<Subgroup> = an.lattice.members.iter().cloned().collect();
    let mut out: Vec<String> = predicted
        .difference(&actual)
        .map(|h| format!("predicted {} is not in the CD lattice", describe(an, h)))
        .collect();
    out.extend(
        actual
            .difference(predicted)
            .map(|h| format!("CD member {} was not predicted", describe(an, h))),
    );
    out
}

/// Quantities the index classification is phrased in.
struct IndexData {
    n: usize,
    gz: usize,
    ga: usize,
    p0: u64,
    a: Subgroup,
}

impl IndexData {
    fn new(an: &Analysis) -> Self {
        let n = an.group.order();
        let a = an.max_self_centralizing().clone();
        IndexData {
            n,
            gz: n / an.center.order(),
            ga: n / a.order(),
            p0: arith::smallest_prime_divisor(n as u64).unwrap_or(1),
            a,
        }
    }
}

/// Index-`p` subgroups `T` with `|G:Z(T)| = p^3`.
fn t_candidates(an: &Analysis, p: usize) -> Vec<Subgroup> {
    let n = an.group.order();
    an.of_index(p)
        .filter(|t| an.center_of(t).order() * p * p * p == n)
        .cloned()
        .collect()
}

/// `[lo, hi]` as a quasi-antichain of width `p + 1` with abelian middles.
fn require_abelian_quasi_antichain(pred: &mut Prediction, an: &Analysis, lo: &Subgroup, hi: &Subgroup, p: usize) {
    let interval = an.interval(lo, hi);
    let shape = cd::classify_shape(&interval);
    pred.require(
        shape == LatticeShape::QuasiAntichain(p + 1),
        format!("interval has shape {shape}, expected a quasi-antichain of width {}", p + 1),
    );
    pred.require(
        interval.iter().filter(|h| *h != lo && *h != hi).all(|h| an.is_abelian(h)),
        "a middle member of the interval is not abelian",
    );
}

/// The prediction of the index classification, if a hypothesis applies.
pub fn predict_index_classification(an: &Analysis) -> Option<Prediction> {
    let d = IndexData::new(an);
    let g = an.group.whole();
    let z = an.center.clone();
    if an.group.is_abelian() {
        return Some(Prediction::new("1", "CD = {G}", [g]));
    }
    if let Some((p, 2)) = arith::prime_power(d.gz as u64) {
        let mut pred = Prediction::new(
            "2",
            format!("CD = [Z(G), G], a quasi-antichain of width {}", p + 1),
            an.interval(&z, &g),
        );
        require_abelian_quasi_antichain(&mut pred, an, &z, &g, p as usize);
        return Some(pred);
    }
    if arith::is_prime(d.ga as u64) {
        let p = d.ga;
        let power = matches!(arith::prime_power(d.gz as u64), Some((q, i)) if q as usize == p && i > 2);
        let smallest = p as u64 == d.p0 && d.gz > p * p;
        let branch = match (power, smallest) {
            (true, _) => "3",
            (false, true) => "3-smallest-prime",
            _ => return None,
        };
        return Some(Prediction::new(branch, "CD = {A}", [d.a]));
    }
    let (p, 2) = arith::prime_power(d.ga as u64)? else {
        return None;
    };
    let p = p as usize;
    let gz_pow = match arith::prime_power(d.gz as u64) {
        Some((q, i)) if q as usize == p => Some(i),
        _ => None,
    };
    let smallest = p as u64 == d.p0;
    let (p2, p4) = (p * p, p * p * p * p);
    if gz_pow == Some(3) || (smallest && p2 < d.gz && d.gz < p4) {
        let branch = if gz_pow == Some(3) { "4a" } else { "4a-smallest-prime" };
        return Some(Prediction::new(branch, "CD = {Z(G), G}", [z, g]));
    }
    if d.gz == p4 {
        let ts = t_candidates(an, p);
        let a_js: Vec<Subgroup> = an
            .of_index(p2)
            .filter(|h| **h != d.a && an.centralizer(h).order() * p2 == d.n)
            .cloned()
            .collect();
        let (n_t, m) = (ts.len(), a_js.len());
        let mut members = vec![z, g, d.a.clone()];
        members.extend(ts.iter().map(|t| an.center_of(t)));
        members.extend(ts);
        members.extend(a_js);
        let mut pred = Prediction::new(
            "4b",
            format!("CD = {{Z(G), Z(T_i), A, A_j, T_i, G}} with n = {n_t}, m = {m}"),
            members,
        );
        pred.require(n_t == 0 || m >= p, format!("n = {n_t} >= 1 but m = {m} < p = {p}"));
        pred.notes.push(format!("n = {n_t}, m = {m}"));
        return Some(pred);
    }
    if gz_pow.is_some_and(|i| i > 4) || (smallest && d.gz > p4) {
        let ts = t_candidates(an, p);
        let suffix = if gz_pow.is_some_and(|i| i > 4) { "" } else { "-smallest-prime" };
        if let Some(t) = ts.first() {
            let zt = an.center_of(t);
            let mut pred = Prediction::new(
                &format!("4c{suffix}"),
                format!("CD = [Z(T), T], a quasi-antichain of width {}", p + 1),
                an.interval(&zt, t),
            );
            require_abelian_quasi_antichain(&mut pred, an, &zt, t, p);
            pred.require(d.a.is_subgroup_of(t) && zt.is_subgroup_of(&d.a), "A does not lie between Z(T) and T");
            for other in &ts[1..] {
                let zo = an.center_of(other);
                pred.require(
                    an.interval(&zo, other) == an.interval(&zt, t),
                    "two index-p subgroups T give different predictions",
                );
            }
            return Some(pred);
        }
        return Some(Prediction::new(&format!("4d{suffix}"), "CD = {A}", [d.a]));
    }
    None
}

/// Checks the classification by `|G:A|` and `|G:Z(G)|`.
pub fn check_index_classification(an: &Analysis, subject: &str) -> TheoremReport {
    match predict_index_classification(an) {
        Some(pred) => pred.report("index", subject, an),
        None => {
            let d = IndexData::new(an);
            TheoremReport::not_applicable(
                "index",
                subject,
                format!("|G:A| = {}, |G:Z(G)| = {}: no hypothesis applies", d.ga, d.gz),
            )
        }
    }
}

/// In the branches where the largest CD member is forced, checks that it is
/// unique among the candidates: `A` among self-centralizing subgroups of
/// maximum order, or `T` among index-`p` subgroups with `|G:Z(T)| = p^3`.
pub fn check_largest_member_uniqueness(an: &Analysis, subject: &str) -> TheoremReport {
    let d = IndexData::new(an);
    let count_a = || {
        (0..an.subgroups.len())
            .filter(|&i| an.table.is_self_centralizing(i) && an.subgroups.get(i).order() == d.a.order())
            .count()
    };
    let gz_pow_of = |p: usize| match arith::prime_power(d.gz as u64) {
        Some((q, i)) if q as usize == p => Some(i),
        _ => None,
    };
    let id = "unique";
    if arith::is_prime(d.ga as u64) {
        let p = d.ga;
        if gz_pow_of(p).is_some_and(|i| i > 2) || (p as u64 == d.p0 && d.gz > p * p) {
            let c = count_a();
            let failures = if c == 1 { vec![] } else { vec![format!("{c} candidates for A")] };
            return TheoremReport::decided(format!("{id}/A-index-p"), subject, "A is unique".into(), failures, vec![]);
        }
    } else if let Some((p, 2)) = arith::prime_power(d.ga as u64) {
        let p = p as usize;
        if gz_pow_of(p).is_some_and(|i| i > 4) || (p as u64 == d.p0 && d.gz > p.pow(4)) {
            let ts = t_candidates(an, p);
            if ts.is_empty() {
                let c = count_a();
                let failures = if c == 1 { vec![] } else { vec![format!("{c} candidates for A")] };
                return TheoremReport::decided(format!("{id}/A-index-p2"), subject, "A is unique".into(), failures, vec![]);
            }
            let failures = if ts.len() == 1 { vec![] } else { vec![format!("{} candidates for T", ts.len())] };
            return TheoremReport::decided(format!("{id}/T"), subject, "T is unique".into(), failures, vec![]);
        }
    }
    TheoremReport::not_applicable(id, subject, format!("|G:A| = {}, |G:Z(G)| = {}", d.ga, d.gz))
}

fn image_of_a(order: usize, a_order: usize) -> Subgroup {
    Subgroup::from_indices(order, 0..a_order)
}

/// Generalized dicyclic group over `a` with involution `t`.
pub fn check_generalized_dicyclic(a: &AbelianSpec, t: usize, config: &EnumConfig) -> Result<TheoremReport> {
    let subject = format!("gdic:{},t={t}", join(a.factors()));
    let an = Analysis::new(constructors::generalized_dicyclic(a, t)?, config)?;
    let n = an.group.order();
    let g = an.group.whole();
    let mut pred = if a.is_z2_power_times_z4() {
        let z = an.center.clone();
        let mut p = Prediction::new("b", "CD = [Z(G), G], a quasi-antichain of width 3", an.interval(&z, &g));
        p.require(an.lattice.shape == LatticeShape::QuasiAntichain(3), format!("shape is {}", an.lattice.shape));
        p
    } else if a.exponent() == 2 {
        Prediction::new("a-exp2", "CD = {G}", [g])
    } else {
        let mut p = Prediction::new("a", "CD = {A}", [image_of_a(n, a.order())]);
        p.require(an.lattice.shape == LatticeShape::Chain(0), format!("shape is {}", an.lattice.shape));
        p
    };
    if a.exponent() != 2 {
        let formula = Subgroup::from_indices(n, (0..a.order()).filter(|&x| a.add(x, x) == 0));
        pred.require(an.center == formula, "Z(G) differs from {a in A : a^2 = 1}");
        pred.require(
            an.center.order() * a.squares_order() == a.order(),
            "|Z(G)| differs from |A/A^2|",
        );
    }
    Ok(pred.report("gdic", &subject, &an))
}

/// Dicyclic group of order `4n`.
pub fn check_dicyclic(n: usize, config: &EnumConfig) -> Result<TheoremReport> {
    let subject = format!("dic:{n}");
    let an = Analysis::new(constructors::dicyclic(n)?, config)?;
    let order = an.group.order();
    let pred = match n {
        1 => Prediction::new("a-n1", "CD = {G}", [an.group.whole()]),
        2 => {
            let mut p = Prediction::new("b", "CD = [Z(G), G], a quasi-antichain of width 3", an.interval(&an.center, &an.group.whole()));
            p.require(an.lattice.shape == LatticeShape::QuasiAntichain(3), format!("shape is {}", an.lattice.shape));
            p
        }
        _ => {
            let mut p = Prediction::new("a", "CD = {<a>}", [image_of_a(order, 2 * n)]);
            p.require(an.lattice.m_star == (4 * n * n) as u64, format!("m* = {}, expected (2n)^2", an.lattice.m_star));
            p
        }
    };
    Ok(pred.report("dic", &subject, &an))
}

/// `G = A x| B` with `gcd(|A|, |B|) = 1`: `m* = |A|^2 |C_B(A)|^2` and
/// `CD(G) = {A C_B(A)}`.
pub fn check_coprime_semidirect(
    a: &AbelianSpec,
    b: &AbelianSpec,
    actions: &[Vec<usize>],
    config: &EnumConfig,
) -> Result<TheoremReport> {
    if arith::gcd(a.order() as u64, b.order() as u64) != 1 {
        return Err(Error::InvalidConstruction("orders of A and B are not coprime".into()));
    }
    let subject = format!(
        "ab:{} x| ab:{} by {:?}",
        join(a.factors()),
        join(b.factors()),
        actions
    );
    let an = Analysis::new(constructors::semidirect_abelian(a, b, actions)?, config)?;
    let na = a.order();
    let n = an.group.order();
    let a_elems: Vec<usize> = (0..na).collect();
    let c_b: Vec<usize> = (0..b.order())
        .filter(|&j| a_elems.iter().all(|&x| an.group.commute(x, j * na)))
        .collect();
    let member = Subgroup::from_indices(n, c_b.iter().flat_map(|&j| (0..na).map(move |x| j * na + x)));
    let expected = (na * na * c_b.len() * c_b.len()) as u64;
    let mut pred = Prediction::new("", format!("m* = {expected}, CD = {{A C_B(A)}}"), [member]);
    pred.require(an.lattice.m_star == expected, format!("m* = {}, expected {expected}", an.lattice.m_star));
    pred.notes.push(format!("|C_B(A)| = {}", c_b.len()));
    let mut r = pred.report("coprime", &subject, &an);
    r.id = "coprime".into();
    Ok(r)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// The three nontrivial abelian groups that are never the whole CD lattice
/// of a non-abelian group.
pub fn singleton_exceptions() -> Vec<AbelianSpec> {
    [vec![2], vec![4], vec![2, 4]]
        .into_iter()
        .map(|f| AbelianSpec::new(f).expect("valid factors"))
        .collect()
}

/// The witness group for `CD(G) = {A}`, or `None` for the exceptions.
/// In every witness `A` occupies the indices `0..|A|`.
pub fn singleton_witness(a: &AbelianSpec) -> Result<Option<(String, GroupTable)>> {
    if singleton_exceptions().contains(a) || a.order() < 2 {
        return Ok(None);
    }
    let f = a.factors();
    if a.order() % 2 == 1 {
        let images: Vec<usize> = (0..f.len()).map(|j| a.neg(a.generator(j))).collect();
        let g = constructors::semidirect_by_automorphism(a, &images, 2)?;
        return Ok(Some((format!("sdp:{};{};2", join(f), join(&images)), g)));
    }
    if a.exponent() != 2 && !a.is_z2_power_times_z4() {
        let t = constructors::default_involution(a).expect("even order");
        return Ok(Some((format!("gdic:{},t={t}", join(f)), constructors::generalized_dicyclic(a, t)?)));
    }
    // Z_2^m or Z_2^m x Z_4 with m >= 2: rotate the first two Z_2 factors.
    let (e1, e2) = (a.generator(0), a.generator(1));
    let mut images: Vec<usize> = (0..f.len()).map(|j| a.generator(j)).collect();
    images[0] = e2;
    images[1] = a.add(e1, e2);
    let g = constructors::semidirect_by_automorphism(a, &images, 3)?;
    Ok(Some((format!("sdp:{};{};3", join(f), join(&images)), g)))
}

fn abelian_fingerprint(group: &GroupTable, h: &Subgroup) -> Vec<usize> {
    let mut profile = group.order_profile(h);
    profile.sort_unstable();
    profile
}

/// Realizes every abelian `A` with `2 <= |A| <= bound` outside the
/// exceptions as the whole CD lattice of a non-abelian group, and checks
/// that no group in `corpus` has a CD lattice `{H}` with `H` one of the
/// exceptions.
pub fn check_singleton_realizability(bound: usize, corpus: &[(String, &Analysis)], config: &EnumConfig) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for order in 2..=bound {
        for a in AbelianSpec::all_of_order(order) {
            let Some((name, g)) = singleton_witness(&a)? else {
                continue;
            };
            let subject = format!("A = ab:{} via {name}", join(a.factors()));
            let an = Analysis::new(g, config)?;
            let mut pred = Prediction::new("witness", "CD = {A}, G non-abelian", [image_of_a(an.group.order(), a.order())]);
            pred.require(!an.group.is_abelian(), "witness is abelian");
            out.push(pred.report("singleton", &subject, &an));
        }
    }
    let fingerprints: Vec<(AbelianSpec, Vec<usize>)> = singleton_exceptions()
        .into_iter()
        .map(|a| {
            let g = constructors::abelian(&a).expect("small abelian group");
            let fp = abelian_fingerprint(&g, &g.whole());
            (a, fp)
        })
        .collect();
    for (a, fp) in fingerprints {
        let hits: Vec<&str> = corpus
            .iter()
            .filter(|(_, an)| {
                !an.group.is_abelian()
                    && an.lattice.len() == 1
                    && an.is_abelian(&an.lattice.members[0])
                    && abelian_fingerprint(&an.group, &an.lattice.members[0]) == fp
            })
            .map(|(name, _)| name.as_str())
            .collect();
        let failures = hits.iter().map(|h| format!("{h} has CD = {{ab:{}}}", join(a.factors()))).collect();
        let mut r = TheoremReport::decided(
            "singleton/exception".into(),
            &format!("A = ab:{}", join(a.factors())),
            format!("no non-abelian group has CD = {{A}} ({} groups tried)", corpus.len()),
            failures,
            vec![],
        );
        r.corpus_limited = true;
        out.push(r);
    }
    Ok(out)
}

/// `G = H x Z` with `Z` abelian: `CD(G) = {X x Z : X in CD(H)}` and the two
/// lattices are isomorphic.
pub fn check_center_absorption(h: &GroupTable, h_name: &str, z: &AbelianSpec, config: &EnumConfig) -> Result<TheoremReport> {
    let subject = format!("{h_name} x ab:{}", join(z.factors()));
    let zg = constructors::abelian(z)?;
    let g = constructors::direct_product(h, &zg)?;
    let an_h = Analysis::new(h.clone(), config)?;
    let an = Analysis::new(g, config)?;
    let nz = z.order();
    let n = an.group.order();
    let lift = |x: &Subgroup| Subgroup::from_indices(n, x.iter().flat_map(|e| (0..nz).map(move |c| e * nz + c)));
    let lifted: Vec<Subgroup> = an_h.lattice.members.iter().map(lift).collect();
    let mut pred = Prediction::new("", "CD(G) = {X x Z : X in CD(H)}", lifted.iter().cloned());
    let k = lifted.len();
    let iso = (0..k).all(|i| {
        (0..k).all(|j| {
            an_h.lattice.members[i].is_subgroup_of(&an_h.lattice.members[j]) == lifted[i].is_subgroup_of(&lifted[j])
        })
    });
    pred.require(iso, "lifting does not preserve inclusion");
    pred.require(
        an.lattice.len() == k && an_h.lattice.shape == an.lattice.shape,
        "lattice sizes or shapes differ",
    );
    let mut r = pred.report("center", &subject, &an);
    r.id = "center".into();
    Ok(r)
}

/// Data for a metabelian `p`-group of maximal class of order `p^n`.
struct MaxClass {
    p: usize,
    n: u32,
}

fn max_class_data(an: &Analysis) -> std::result::Result<MaxClass, String> {
    let pr = an.group.predicates();
    match pr.prime_power {
        Some((p, n)) if pr.is_maximal_class && pr.is_metabelian && n >= 3 => Ok(MaxClass { p: p as usize, n }),
        _ => Err("not a metabelian p-group of maximal class of order at least p^3".into()),
    }
}

/// Index-`p` subgroups `T` with `|T:Z(T)| = p^2`.
fn small_center_maximals(an: &Analysis, p: usize) -> Vec<Subgroup> {
    an.of_index(p)
        .filter(|t| an.center_of(t).order() * p * p == t.order())
        .cloned()
        .collect()
}

/// Structure of `[Z(T), T]` for the maximal-class items: the middle
/// members are `G'` and `p` further abelian subgroups, none normal.
fn require_middle_structure(pred: &mut Prediction, an: &Analysis, t: &Subgroup, p: usize, n: u32) {
    let zt = an.center_of(t);
    let derived = an.group.derived_subgroup();
    let middles: Vec<Subgroup> = an.interval(&zt, t).into_iter().filter(|h| *h != zt && h != t).collect();
    pred.require(t.order() == p.pow(n - 1), "|T| is not p^(n-1)");
    pred.require(zt.order() == p.pow(n - 3), "|Z(T)| is not p^(n-3)");
    pred.require(middles.len() == p + 1, format!("{} members between Z(T) and T, expected p + 1", middles.len()));
    pred.require(middles.contains(&derived), "G' is not between Z(T) and T");
    pred.require(middles.iter().all(|h| h.order() == p.pow(n - 2)), "a middle member has order other than p^(n-2)");
    pred.require(middles.iter().all(|h| an.is_abelian(h)), "a middle member is not abelian");
    let non_normal = middles.iter().filter(|h| **h != derived && !an.group.is_normal(h)).count();
    pred.require(non_normal == p, format!("{non_normal} of the A_i are non-normal, expected all {p}"));
}

/// The prediction for metabelian `p`-groups of maximal class.
pub fn predict_maximal_class(an: &Analysis) -> std::result::Result<Prediction, String> {
    let MaxClass { p, n } = max_class_data(an)?;
    let g = an.group.whole();
    let z = an.center.clone();
    if n == 3 {
        let mut pred = Prediction::new("1", format!("CD = [Z(G), G], a quasi-antichain of width {}", p + 1), an.interval(&z, &g));
        require_abelian_quasi_antichain(&mut pred, an, &z, &g, p);
        return Ok(pred);
    }
    let abelian_max: Vec<Subgroup> = an.of_index(p).filter(|h| an.is_abelian(h)).cloned().collect();
    if let Some(a) = abelian_max.first() {
        let mut pred = Prediction::new("2", "CD = {A}, A abelian of index p", [a.clone()]);
        pred.require(abelian_max.len() == 1, "more than one abelian subgroup of index p");
        return Ok(pred);
    }
    let derived = an.group.derived_subgroup();
    if n <= 4 {
        let mut pred = Prediction::new("3", "n > 4", []);
        pred.failures.push(format!("no abelian subgroup of index p but n = {n}"));
        return Ok(pred);
    }
    let ts = small_center_maximals(an, p);
    let actual: BTreeSet<Subgroup> = an.lattice.members.iter().cloned().collect();
    let build = |t: &Subgroup| -> Prediction {
        let mut members: BTreeSet<Subgroup> = an.interval(&an.center_of(t), t).into_iter().collect();
        let (branch, statement) = if n == 5 {
            members.insert(z.clone());
            members.insert(g.clone());
            ("3a", "CD = {Z(G), Z(T), G', A_1..A_p, T, G}")
        } else {
            ("3b", "CD = {Z(T), G', A_1..A_p, T}")
        };
        let mut pred = Prediction::new(branch, statement, members);
        require_middle_structure(&mut pred, an, t, p, n);
        pred
    };
    if n == 5 {
        // Some index-p subgroup T in the lattice has |T| = p^4 and |Z(T)| = p^2.
        let matches: Vec<Prediction> = ts.iter().map(build).filter(|pr| pr.members == actual).collect();
        let mut pred = match matches.into_iter().next() {
            Some(pr) => pr,
            None => {
                let mut pr = Prediction::new("3a", "CD = {Z(G), Z(T), G', A_1..A_p, T, G}", actual.iter().cloned());
                pr.failures.push(format!("none of the {} candidates for T gives the computed lattice", ts.len()));
                pr
            }
        };
        pred.require(an.lattice.m_star == (p as u64).pow(6), "m* is not p^6");
        pred.notes.push(format!("{} candidates for T", ts.len()));
        return Ok(pred);
    }
    match ts.first() {
        Some(t) => {
            let mut pred = build(t);
            for other in &ts[1..] {
                pred.require(build(other).members == pred.members, "two choices of T give different predictions");
            }
            Ok(pred)
        }
        None => Ok(Prediction::new("3c", "CD = {G'}", [derived])),
    }
}

/// Checks the maximal-class classification, plus the criterion for the
/// lattice to be a single subgroup.
pub fn check_maximal_class(an: &Analysis, subject: &str) -> Vec<TheoremReport> {
    let pred = match predict_maximal_class(an) {
        Ok(p) => p,
        Err(why) => return vec![TheoremReport::not_applicable("maxclass", subject, why)],
    };
    let mut out = vec![pred.report("maxclass", subject, an)];
    let MaxClass { p, n } = max_class_data(an).expect("checked above");
    let has_abelian_max = an.of_index(p).any(|h| an.is_abelian(h));
    let gz = an.group.order() / an.center.order();
    let criterion = if has_abelian_max {
        gz != p * p
    } else {
        n > 5 && an.of_index(p).all(|m| m.order() / an.center_of(m).order() > p * p)
    };
    let singleton = an.lattice.shape == LatticeShape::Chain(0);
    let failures = if criterion == singleton {
        vec![]
    } else {
        vec![format!("criterion says {criterion}, lattice has {} members", an.lattice.len())]
    };
    let mut r = TheoremReport::decided(
        "maxclass/singleton-criterion".into(),
        subject,
        format!("CD is a single subgroup: {criterion}"),
        failures,
        vec![],
    );
    r.corpus_limited = true;
    out.push(r);
    out
}

/// Facts about `p`-groups used by the classification: an abelian subgroup
/// of order `p^3` in groups of order `p^4`; for maximal class of order
/// `p^n`, `n >= 3`, that `|Z(G)| = p`, `|G:G'| = p^2` and each `G_i` is the
/// only normal subgroup of its order; and the lattice structure for maximal
/// class of order `p^5` with `m* = p^6`.
pub fn check_pgroup_lemmas(an: &Analysis, subject: &str) -> Vec<TheoremReport> {
    let mut out = Vec::new();
    let pr = an.group.predicates();
    let Some((p, n)) = pr.prime_power else {
        return vec![TheoremReport::not_applicable("lemmas", subject, "not a p-group")];
    };
    let p = p as usize;
    if n == 4 {
        let found = an.subgroups.iter().any(|h| h.order() == p.pow(3) && an.is_abelian(h));
        let failures = if found { vec![] } else { vec!["no abelian subgroup of order p^3".into()] };
        out.push(TheoremReport::decided("lemmas/abelian-p3".into(), subject, "abelian subgroup of order p^3".into(), failures, vec![]));
    }
    if pr.is_maximal_class && n >= 3 {
        let mut failures = Vec::new();
        if an.center.order() != p {
            failures.push(format!("|Z(G)| = {}", an.center.order()));
        }
        let derived = an.group.derived_subgroup();
        if derived.order() * p * p != an.group.order() {
            failures.push(format!("|G:G'| = {}", an.group.order() / derived.order()));
        }
        let lcs = an.group.lower_central_series();
        for i in 2..=n as usize {
            let Some(gi) = lcs.get(i - 1) else {
                failures.push(format!("lower central series has no term {i}"));
                continue;
            };
            let target = p.pow(n - i as u32);
            let normals: Vec<&Subgroup> = an
                .subgroups
                .iter()
                .filter(|h| h.order() == target && an.group.is_normal(h))
                .collect();
            if gi.order() != target || normals.len() != 1 || normals[0] != gi {
                failures.push(format!("G_{i} is not the unique normal subgroup of order {target}"));
            }
        }
        out.push(TheoremReport::decided(
            "lemmas/maximal-class".into(),
            subject,
            "|Z(G)| = p, |G:G'| = p^2, G_i unique normal of order p^(n-i)".into(),
            failures,
            vec![],
        ));
    }
    if pr.is_maximal_class && n == 5 && an.lattice.m_star == (p as u64).pow(6) {
        let pred = match predict_maximal_class(an) {
            Ok(pred) if pred.branch == "3a" => pred,
            Ok(pred) => {
                let mut bad = Prediction::new("p5", "CD of the form {G, T, G', A_i, Z(T), Z(G)}", []);
                bad.failures.push(format!("group falls under maximal-class item {}", pred.branch));
                bad
            }
            Err(e) => {
                let mut bad = Prediction::new("p5", "", []);
                bad.failures.push(e);
                bad
            }
        };
        let mut r = pred.report("lemmas", subject, an);
        r.id = "lemmas/order-p5".into();
        out.push(r);
    }
    if out.is_empty() {
        out.push(TheoremReport::not_applicable("lemmas", subject, "no lemma hypothesis holds"));
    }
    out
}

/// Where the index classification and the maximal-class classification both
/// apply, their predicted member sets must coincide.
pub fn check_consistency(an: &Analysis, subject: &str) -> TheoremReport {
    match (predict_index_classification(an), predict_maximal_class(an)) {
        (Some(a), Ok(b)) => {
            let failures = if a.members == b.members {
                vec![]
            } else {
                vec![format!("index item {} and maximal-class item {} disagree", a.branch, b.branch)]
            };
            TheoremReport::decided(
                format!("consistency/{}+{}", a.branch, b.branch),
                subject,
                "both predictions agree".into(),
                failures,
                vec![],
            )
        }
        _ => TheoremReport::not_applicable("consistency", subject, "at most one classification applies"),
    }
}

/// The structural properties of every CD lattice.
pub fn check_cd_invariants(an: &Analysis, subject: &str) -> TheoremReport {
    TheoremReport::decided(
        "invariants".into(),
        subject,
        "sublattice, duality, Z(G) containment, index divisibility, modularity, M(G)".into(),
        cd::check_invariants(an),
        vec![format!("{} members", an.lattice.len())],
    )
}

/// Fast enumeration against the one-element-extension closure (orders up to
/// 128) and against a sequential rerun.
pub fn check_enumeration(an: &Analysis, subject: &str, config: &EnumConfig) -> Result<TheoremReport> {
    let mut failures = Vec::new();
    let mut notes = vec![format!("{} subgroups", an.subgroups.len())];
    if an.group.order() <= 128 {
        if !subgroups::verify_complete(&an.group, &an.subgroups) {
            failures.push("differs from the one-element-extension closure".into());
        }
    } else {
        notes.push("closure oracle skipped above order 128".into());
    }
    let seq = subgroups::all_subgroups(&an.group, &EnumConfig { parallel: false, ..config.clone() })?;
    if seq.subgroups() != an.subgroups.subgroups() {
        failures.push("sequential and parallel enumeration differ".into());
    }
    Ok(TheoremReport::decided("enumeration".into(), subject, "complete and deterministic".into(), failures, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analyze(g: GroupTable) -> Analysis {
        Analysis::new(g, &EnumConfig::default()).unwrap()
    }

    #[test]
    fn quaternion_is_item_two() {
        let an = analyze(constructors::dicyclic(2).unwrap());
        let r = check_index_classification(&an, "Q8");
        assert_eq!(r.id, "index/2");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn dicyclic_twenty_is_item_three_smallest_prime() {
        let an = analyze(constructors::dicyclic(5).unwrap());
        let r = check_index_classification(&an, "dic:5");
        assert_eq!(r.id, "index/3-smallest-prime");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn extraspecial_32_is_4b() {
        for kind in [constructors::ExtraspecialKind::Plus, constructors::ExtraspecialKind::Minus] {
            let an = analyze(constructors::extraspecial(2, 5, kind).unwrap());
            let r = check_index_classification(&an, "xsp");
            assert_eq!(r.id, "index/4b");
            assert!(r.passed(), "{r:?}");
            assert!(r.details.contains(&"n = 15, m = 34".to_string()), "{r:?}");
        }
    }

    #[test]
    fn tampered_lattice_fails() {
        let mut an = analyze(constructors::dicyclic(2).unwrap());
        an.lattice.members.pop();
        let r = check_index_classification(&an, "Q8");
        assert!(r.failed());
    }

    #[test]
    fn dicyclic_family() {
        for n in 1..=6 {
            let r = check_dicyclic(n, &EnumConfig::default()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn coprime_examples() {
        let z5 = AbelianSpec::cyclic(5).unwrap();
        let z4 = AbelianSpec::cyclic(4).unwrap();
        let r = check_coprime_semidirect(&z5, &z4, &[vec![2]], &EnumConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        let z7 = AbelianSpec::cyclic(7).unwrap();
        let z3 = AbelianSpec::cyclic(3).unwrap();
        let r = check_coprime_semidirect(&z7, &z3, &[vec![1]], &EnumConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.prediction.contains("441"));
        assert!(check_coprime_semidirect(&z4, &AbelianSpec::cyclic(2).unwrap(), &[vec![3]], &EnumConfig::default()).is_err());
    }

    #[test]
    fn heisenberg_is_maxclass_item_one() {
        let an = analyze(constructors::heisenberg(3).unwrap());
        let reports = check_maximal_class(&an, "heis:3");
        assert_eq!(reports[0].id, "maxclass/1");
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
        assert!(check_consistency(&an, "heis:3").passed());
    }

    #[test]
    fn generalized_dicyclic_cases() {
        let cfg = EnumConfig::default();
        for (f, id) in [(vec![6], "gdic/a"), (vec![2, 4], "gdic/b"), (vec![2, 2], "gdic/a-exp2")] {
            let a = AbelianSpec::new(f).unwrap();
            for t in a.involutions() {
                let r = check_generalized_dicyclic(&a, t, &cfg).unwrap();
                assert_eq!(r.id, id);
                assert!(r.passed(), "{r:?}");
            }
        }
    }
}
