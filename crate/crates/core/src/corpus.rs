//! The groups the checks run over.

use crate::constructors::{AbelianSpec, ExtraspecialKind};
use crate::groupspec::GroupSpec;

/// `dic:1` through `dic:max_n`.
pub fn dicyclic_sweep(max_n: usize) -> Vec<GroupSpec> {
    (1..=max_n).map(GroupSpec::Dicyclic).collect()
}

/// Every abelian `A` of even order at most `max_order` with every
/// involution `t`.
pub fn generalized_dicyclic_sweep(max_order: usize) -> Vec<(AbelianSpec, usize)> {
    (2..=max_order)
        .step_by(2)
        .flat_map(AbelianSpec::all_of_order)
        .flat_map(|a| a.involutions().into_iter().map(move |t| (a.clone(), t)))
        .collect()
}

/// Dihedral, semidihedral and generalized quaternion 2-groups of order at
/// most `max_order`.
pub fn maximal_class_2groups(max_order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    let mut k = 2u32;
    while 1usize << k <= max_order {
        out.push(GroupSpec::Dihedral(1 << (k - 1)));
        if k >= 3 {
            out.push(GroupSpec::Quaternion(k));
        }
        if k >= 4 {
            out.push(GroupSpec::Semidihedral(k));
        }
        k += 1;
    }
    out
}

/// `(A, B, action)` with coprime orders: `Z_5 x| Z_4` and `Z_7 x| Z_3`
/// acting faithfully, and `Z_3 x Z_3` with `Z_2` inverting.
pub fn coprime_instances() -> Vec<(AbelianSpec, AbelianSpec, Vec<Vec<usize>>)> {
    let ab = |f: Vec<usize>| AbelianSpec::new(f).expect("valid factors");
    vec![
        (ab(vec![5]), ab(vec![4]), vec![vec![2]]),
        (ab(vec![7]), ab(vec![3]), vec![vec![2]]),
        (ab(vec![3, 3]), ab(vec![2]), vec![vec![2, 6]]),
    ]
}

/// The coprime instances as group specs (each `B` is cyclic).
pub fn coprime_specs() -> Vec<GroupSpec> {
    coprime_instances()
        .into_iter()
        .map(|(a, b, act)| GroupSpec::Semidirect {
            factors: a.factors().to_vec(),
            images: act[0].clone(),
            k: b.order(),
        })
        .collect()
}

/// `(H, Z)` pairs for the direct-product-with-abelian check.
pub fn center_absorption_instances() -> Vec<(GroupSpec, AbelianSpec)> {
    let mut out = Vec::new();
    for h in [GroupSpec::Dicyclic(2), GroupSpec::Dicyclic(3), GroupSpec::Dicyclic(4)] {
        for z in [3, 5] {
            out.push((h.clone(), AbelianSpec::cyclic(z).expect("valid factor")));
        }
    }
    out
}

pub fn extraspecial_32() -> Vec<GroupSpec> {
    [ExtraspecialKind::Plus, ExtraspecialKind::Minus]
        .into_iter()
        .map(|kind| GroupSpec::Extraspecial { p: 2, n: 5, kind })
        .collect()
}

/// Metabelian `p`-groups of maximal class beyond the 2-groups. `long` adds
/// the order 5^6 presentation.
pub fn maximal_class_odd(long: bool) -> Vec<GroupSpec> {
    let mut out = vec![
        GroupSpec::Heisenberg(3),
        GroupSpec::Heisenberg(5),
        GroupSpec::Wreath(3),
        GroupSpec::Bundled("sg_729_99".into()),
        GroupSpec::Bundled("maxclass_3125".into()),
    ];
    if long {
        out.push(GroupSpec::Bundled("sg_15625_651".into()));
    }
    out
}

/// The standard corpus: dicyclic groups up to `dic:12`, generalized
/// dicyclic groups with `|A| <= 32` (default involution), the order 32
/// extraspecial groups, maximal-class 2-groups up to order 64, the odd
/// maximal-class groups, the coprime semidirect products, a few direct
/// products and abelian groups.
pub fn standard(long: bool) -> Vec<GroupSpec> {
    let mut out = dicyclic_sweep(12);
    let mut seen_a = std::collections::HashSet::new();
    for (a, _) in generalized_dicyclic_sweep(32) {
        if seen_a.insert(a.clone()) {
            out.push(GroupSpec::GeneralizedDicyclic {
                factors: a.factors().to_vec(),
                t: None,
            });
        }
    }
    out.extend(extraspecial_32());
    out.extend([
        GroupSpec::Extraspecial { p: 3, n: 3, kind: ExtraspecialKind::Minus },
        GroupSpec::Extraspecial { p: 3, n: 5, kind: ExtraspecialKind::Plus },
    ]);
    out.extend(maximal_class_2groups(64));
    out.extend(maximal_class_odd(long));
    out.extend(coprime_specs());
    for (h, z) in center_absorption_instances() {
        out.push(GroupSpec::Product(Box::new(h), Box::new(GroupSpec::Abelian(z.factors().to_vec()))));
    }
    out.extend([vec![2, 2], vec![3, 9], vec![2, 2, 2, 2]].into_iter().map(GroupSpec::Abelian));
    out.push(GroupSpec::Dihedral(3));
    out.push(GroupSpec::Semidirect { factors: vec![2, 2], images: vec![2, 3], k: 3 });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(dicyclic_sweep(12).len(), 12);
        let specs: Vec<String> = maximal_class_2groups(16).iter().map(|s| s.to_string()).collect();
        assert_eq!(specs, ["dih:2", "dih:4", "gq:3", "dih:8", "gq:4", "sdih:4"]);
        // Z_2 x Z_4 has three involutions, Z_8 one.
        let z8 = generalized_dicyclic_sweep(8).into_iter().filter(|(a, _)| a.order() == 8).count();
        assert_eq!(z8, 1 + 3 + 7);
        let names: std::collections::HashSet<String> = standard(false).iter().map(|s| s.to_string()).collect();
        assert_eq!(names.len(), standard(false).len());
    }

    #[test]
    fn every_entry_builds() {
        for s in standard(false) {
            let g = s.build(5000).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(g.order() >= 4, "{s}");
        }
    }
}
