//! Concrete group families.
//!
//! Element numbering per family:
//!
//! * [`abelian`]: mixed radix, first factor least significant. For factors
//!   `[f0, f1, ..]` the tuple `(c0, c1, ..)` has index `c0 + f0*c1 + f0*f1*c2 + ..`,
//!   so the generator of factor `j` sits at index `f0*..*f(j-1)`.
//! * [`dicyclic`]: `a^i x^e` has index `e*2n + i`.
//! * [`generalized_dicyclic`]: `a x^e` has index `e*|A| + index(a)`.
//! * [`semidirect_abelian`]: `(a, b)` has index `index(b)*|A| + index(a)`, so
//!   the normal factor occupies indices `0..|A|`.
//! * [`direct_product`]: `(g, h)` has index `g*|H| + h`.
//! * [`extraspecial`]: order p^3 blocks are built directly; order p^5 is a
//!   quotient of a direct product, numbered by least coset element.

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{GroupTable, Validation};

/// An abelian group as a list of cyclic factor orders, e.g. `[2, 2, 4]`.
/// The empty list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianSpec {
    factors: Vec<usize>,
}

impl AbelianSpec {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if let Some(&f) = factors.iter().find(|&&f| f < 2) {
            return Err(Error::InvalidConstruction(format!(
                "cyclic factor {f} must be at least 2"
            )));
        }
        let order = factors.iter().try_fold(1usize, |acc, &f| acc.checked_mul(f));
        match order {
            Some(o) if o <= crate::group::MAX_ORDER => Ok(AbelianSpec { factors }),
            _ => Err(Error::InvalidConstruction("abelian group too large".into())),
        }
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    /// Index of the generator of factor `j`.
    pub fn generator(&self, j: usize) -> usize {
        self.factors[..j].iter().product()
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        self.factors
            .iter()
            .map(|&f| {
                let c = idx % f;
                idx /= f;
                c
            })
            .collect()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (c, &f) in coords.iter().zip(&self.factors) {
            idx += (c % f) * stride;
            stride *= f;
        }
        idx
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let sum: Vec<usize> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<usize> = self
            .decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (f - x) % f)
            .collect();
        self.encode(&c)
    }

    pub fn scale(&self, a: usize, k: usize) -> usize {
        let c: Vec<usize> = self.decode(a).iter().map(|&x| x * k).collect();
        self.encode(&c)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.decode(a)
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (f / arith::gcd(x as u64, f as u64) as usize) as u64)
            .fold(1, arith::lcm) as usize
    }

    pub fn exponent(&self) -> usize {
        self.factors.iter().fold(1u64, |acc, &f| arith::lcm(acc, f as u64)) as usize
    }

    /// Involutions in index order.
    pub fn involutions(&self) -> Vec<usize> {
        (1..self.order()).filter(|&a| self.element_order(a) == 2).collect()
    }

    /// `|A^2|`, the number of squares.
    pub fn squares_order(&self) -> usize {
        self.factors
            .iter()
            .map(|&f| if f % 2 == 0 { f / 2 } else { f })
            .product()
    }

    /// True when `A` is `Z_2^m x Z_4` for some `m >= 0` (factor order irrelevant).
    pub fn is_z2_power_times_z4(&self) -> bool {
        let fours = self.factors.iter().filter(|&&f| f == 4).count();
        let twos = self.factors.iter().filter(|&&f| f == 2).count();
        fours == 1 && twos + 1 == self.factors.len()
    }

    fn coord_name(&self, a: usize) -> String {
        let c = self.decode(a);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// All abelian groups of order `n` up to isomorphism, as invariant-factor
    /// lists (each factor divides the next).
    pub fn all_of_order(n: usize) -> Vec<AbelianSpec> {
        fn rec(n: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 1 {
                out.push(acc.clone());
                return;
            }
            for d in arith::divisors(n as u64) {
                let d = d as usize;
                if d < 2 || d < min {
                    continue;
                }
                if let Some(&last) = acc.last() {
                    if !d.is_multiple_of(last) {
                        continue;
                    }
                }
                acc.push(d);
                rec(n / d, d, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 2, &mut Vec::new(), &mut out);
        // invariant factor chains f1 | f2 | ... ; order by chain length then lexicographically
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out.into_iter().map(|factors| AbelianSpec { factors }).collect()
    }
}

pub fn abelian(spec: &AbelianSpec) -> Result<GroupTable> {
    let n = spec.order();
    let names = (0..n).map(|a| spec.coord_name(a)).collect();
    GroupTable::from_fn(n, Some(names), Validation::Default, |a, b| spec.add(a, b))
}

pub fn cyclic(n: usize) -> Result<GroupTable> {
    abelian(&AbelianSpec::cyclic(n)?)
}

/// `<a, x | a^(2n) = 1, x^2 = a^n, a^x = a^-1>`, order `4n`.
pub fn dicyclic(n: usize) -> Result<GroupTable> {
    if n == 0 {
        return Err(Error::InvalidConstruction("dicyclic group needs n >= 1".into()));
    }
    let m = 2 * n;
    let split = |x: usize| (x % m, x / m);
    let names = (0..2 * m)
        .map(|x| {
            let (i, e) = split(x);
            format!("a^{i}{}", if e == 1 { "x" } else { "" })
        })
        .collect();
    GroupTable::from_fn(2 * m, Some(names), Validation::Default, |x, y| {
        let (i, e) = split(x);
        let (j, d) = split(y);
        let j = if e == 1 { (m - j) % m } else { j };
        let mut k = (i + j) % m;
        let mut f = e + d;
        if f == 2 {
            k = (k + n) % m;
            f = 0;
        }
        f * m + k
    })
}

/// `<A, x | x^4 = 1, x^2 = t, a^x = a^-1>` for abelian `A` of even order and
/// an involution `t` of `A`. Order `2|A|`.
pub fn generalized_dicyclic(a: &AbelianSpec, t: usize) -> Result<GroupTable> {
    let m = a.order();
    if !m.is_multiple_of(2) {
        return Err(Error::InvalidConstruction("A must have even order".into()));
    }
    if t == 0 || t >= m {
        return Err(Error::InvalidConstruction("x^2 must be a non-identity element of A".into()));
    }
    if a.element_order(t) != 2 {
        return Err(Error::InvalidConstruction(format!(
            "x^2 = {} has order {}, but x^4 = 1 forces order 2",
            a.coord_name(t),
            a.element_order(t)
        )));
    }
    let names = (0..2 * m)
        .map(|x| {
            let s = a.coord_name(x % m);
            if x >= m {
                format!("{s}x")
            } else {
                s
            }
        })
        .collect();
    GroupTable::from_fn(2 * m, Some(names), Validation::Default, |x, y| {
        let (p, e) = (x % m, x / m);
        let (q, d) = (y % m, y / m);
        match (e, d) {
            (0, _) => d * m + a.add(p, q),
            (1, 0) => m + a.add(p, a.neg(q)),
            _ => a.add(a.add(p, a.neg(q)), t),
        }
    })
}

/// Default involution for [`generalized_dicyclic`]: the first in index order.
pub fn default_involution(a: &AbelianSpec) -> Option<usize> {
    a.involutions().first().copied()
}

/// An automorphism of an abelian group as a full permutation of its indices.
fn automorphism_from_images(a: &AbelianSpec, images: &[usize]) -> Result<Vec<usize>> {
    let n = a.order();
    if images.len() != a.factors().len() {
        return Err(Error::InvalidConstruction(format!(
            "expected {} generator images, got {}",
            a.factors().len(),
            images.len()
        )));
    }
    for (j, (&img, &f)) in images.iter().zip(a.factors()).enumerate() {
        if img >= n {
            return Err(Error::InvalidConstruction(format!("image {img} out of range")));
        }
        if a.scale(img, f) != 0 {
            return Err(Error::InvalidConstruction(format!(
                "image of generator {j} has order not dividing {f}"
            )));
        }
    }
    let map: Vec<usize> = (0..n)
        .map(|x| {
            a.decode(x)
                .iter()
                .zip(images)
                .fold(0, |acc, (&c, &img)| a.add(acc, a.scale(img, c)))
        })
        .collect();
    let mut seen = vec![false; n];
    for &y in &map {
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::InvalidConstruction("images do not define a bijection".into()));
        }
    }
    Ok(map)
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    // (f . g)(x) = f(g(x))
    g.iter().map(|&y| f[y]).collect()
}

fn automorphism_power(f: &[usize], k: usize) -> Vec<usize> {
    let mut acc: Vec<usize> = (0..f.len()).collect();
    for _ in 0..k {
        acc = compose(f, &acc);
    }
    acc
}

/// `A x| B` for abelian `A` and `B`, where generator `k` of `B` acts on `A`
/// by the automorphism sending the generators of `A` to `actions[k]`.
pub fn semidirect_abelian(
    a: &AbelianSpec,
    b: &AbelianSpec,
    actions: &[Vec<usize>],
) -> Result<GroupTable> {
    if actions.len() != b.factors().len() {
        return Err(Error::InvalidConstruction(format!(
            "expected {} actions, one per generator of B",
            b.factors().len()
        )));
    }
    let autos: Vec<Vec<usize>> = actions
        .iter()
        .map(|imgs| automorphism_from_images(a, imgs))
        .collect::<Result<_>>()?;
    let identity: Vec<usize> = (0..a.order()).collect();
    for (k, (s, &f)) in autos.iter().zip(b.factors()).enumerate() {
        if automorphism_power(s, f) != identity {
            return Err(Error::InvalidConstruction(format!(
                "action of generator {k} has order not dividing {f}"
            )));
        }
    }
    for i in 0..autos.len() {
        for j in i + 1..autos.len() {
            if compose(&autos[i], &autos[j]) != compose(&autos[j], &autos[i]) {
                return Err(Error::InvalidConstruction("actions do not commute".into()));
            }
        }
    }
    let na = a.order();
    let nb = b.order();
    let phi: Vec<Vec<usize>> = (0..nb)
        .map(|y| {
            b.decode(y)
                .iter()
                .zip(&autos)
                .fold(identity.clone(), |acc, (&c, s)| compose(&automorphism_power(s, c), &acc))
        })
        .collect();
    let names = (0..na * nb)
        .map(|x| {
            let (p, q) = (x % na, x / na);
            if nb == 1 {
                a.coord_name(p)
            } else {
                format!("[{};{}]", a.coord_name(p), b.coord_name(q))
            }
        })
        .collect();
    GroupTable::from_fn(na * nb, Some(names), Validation::Default, |x, y| {
        let (p1, q1) = (x % na, x / na);
        let (p2, q2) = (y % na, y / na);
        b.add(q1, q2) * na + a.add(p1, phi[q1][p2])
    })
}

/// `A x| <x>` with `x` of order `k` acting through the automorphism given by
/// generator images.
pub fn semidirect_by_automorphism(a: &AbelianSpec, images: &[usize], k: usize) -> Result<GroupTable> {
    match k {
        0 => Err(Error::InvalidConstruction("k must be positive".into())),
        1 => {
            let s = automorphism_from_images(a, images)?;
            if s.iter().enumerate().any(|(i, &y)| i != y) {
                return Err(Error::InvalidConstruction(
                    "k = 1 requires the identity automorphism".into(),
                ));
            }
            abelian(a)
        }
        _ => semidirect_abelian(a, &AbelianSpec::cyclic(k)?, &[images.to_vec()]),
    }
}

pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    let (ng, nh) = (g.order(), h.order());
    let names = (0..ng * nh)
        .map(|x| format!("({},{})", g.name(x / nh), h.name(x % nh)))
        .collect();
    GroupTable::from_fn(ng * nh, Some(names), Validation::Default, |x, y| {
        g.mul(x / nh, y / nh) * nh + h.mul(x % nh, y % nh)
    })
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> Result<GroupTable> {
    if n < 2 {
        return Err(Error::InvalidConstruction("dihedral group needs n >= 2".into()));
    }
    semidirect_by_automorphism(&AbelianSpec::cyclic(n)?, &[n - 1], 2)
}

/// Semidihedral group of order `2^k`, `k >= 4`.
pub fn semidihedral(k: u32) -> Result<GroupTable> {
    if k < 4 {
        return Err(Error::InvalidConstruction("semidihedral group needs order >= 16".into()));
    }
    let m = 1usize << (k - 1);
    semidirect_by_automorphism(&AbelianSpec::cyclic(m)?, &[m / 2 - 1], 2)
}

/// Generalized quaternion group of order `2^k`, `k >= 3`.
pub fn generalized_quaternion(k: u32) -> Result<GroupTable> {
    if k < 3 {
        return Err(Error::InvalidConstruction("quaternion group needs order >= 8".into()));
    }
    dicyclic(1 << (k - 2))
}

/// `Z_p wr Z_p`: `Z_p^p` extended by the cyclic coordinate shift. Order `p^(p+1)`.
pub fn cyclic_wreath(p: usize) -> Result<GroupTable> {
    if !arith::is_prime(p as u64) {
        return Err(Error::InvalidConstruction(format!("{p} is not prime")));
    }
    let a = AbelianSpec::new(vec![p; p])?;
    let images: Vec<usize> = (0..p).map(|j| a.generator((j + 1) % p)).collect();
    semidirect_by_automorphism(&a, &images, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtraspecialKind {
    /// Exponent p for odd p; D8 blocks only for p = 2.
    Plus,
    /// Exponent p^2 for odd p; one Q8 block for p = 2.
    Minus,
}

impl ExtraspecialKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "plus" | "+" | "d" | "e" | "p" => Some(ExtraspecialKind::Plus),
            "minus" | "-" | "q" | "m" | "p2" => Some(ExtraspecialKind::Minus),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            ExtraspecialKind::Plus => "plus",
            ExtraspecialKind::Minus => "minus",
        }
    }
}

/// Heisenberg group mod odd `p`: `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`.
pub fn heisenberg(p: usize) -> Result<GroupTable> {
    if !arith::is_prime(p as u64) {
        return Err(Error::InvalidConstruction(format!("{p} is not prime")));
    }
    let dec = |v: usize| (v % p, (v / p) % p, v / (p * p));
    let names = (0..p * p * p)
        .map(|v| {
            let (x, y, z) = dec(v);
            format!("({x},{y},{z})")
        })
        .collect();
    GroupTable::from_fn(p * p * p, Some(names), Validation::Default, |u, v| {
        let (x1, y1, z1) = dec(u);
        let (x2, y2, z2) = dec(v);
        (x1 + x2) % p + p * ((y1 + y2) % p) + p * p * ((z1 + z2 + x1 * y2) % p)
    })
}

fn extraspecial_block(p: usize, kind: ExtraspecialKind) -> Result<GroupTable> {
    match (p, kind) {
        (2, ExtraspecialKind::Plus) => dihedral(4),
        (2, ExtraspecialKind::Minus) => dicyclic(2),
        (_, ExtraspecialKind::Plus) => heisenberg(p),
        (_, ExtraspecialKind::Minus) => {
            semidirect_by_automorphism(&AbelianSpec::cyclic(p * p)?, &[1 + p], p)
        }
    }
}

/// Extraspecial group of order `p^n`, `n` in {3, 5}. Order `p^5` is the
/// central product of a plus-type block with a block of the requested kind.
pub fn extraspecial(p: usize, n: u32, kind: ExtraspecialKind) -> Result<GroupTable> {
    if !arith::is_prime(p as u64) {
        return Err(Error::InvalidConstruction(format!("{p} is not prime")));
    }
    match n {
        3 => extraspecial_block(p, kind),
        5 => {
            let e1 = extraspecial_block(p, ExtraspecialKind::Plus)?;
            let e2 = extraspecial_block(p, kind)?;
            let z1 = first_nontrivial(&e1.center());
            let z2 = first_nontrivial(&e2.center());
            let d = direct_product(&e1, &e2)?;
            let glue = d.generated_subgroup([z1 * e2.order() + e2.inv(z2)]);
            d.quotient(&glue)
        }
        _ => Err(Error::InvalidConstruction(format!(
            "extraspecial order p^{n} not supported (use 3 or 5)"
        ))),
    }
}

fn first_nontrivial(s: &crate::group::Subgroup) -> usize {
    s.iter().find(|&x| x != 0).expect("nontrivial center")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_indexing() {
        let a = AbelianSpec::new(vec![2, 4]).unwrap();
        assert_eq!(a.generator(0), 1);
        assert_eq!(a.generator(1), 2);
        assert_eq!(a.decode(5), vec![1, 2]);
        assert_eq!(a.encode(&[1, 2]), 5);
        assert_eq!(a.exponent(), 4);
        assert_eq!(a.squares_order(), 2);
        let g = abelian(&a).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert!(AbelianSpec::new(vec![1]).is_err());
    }

    #[test]
    fn cyclic_generator_at_index_one() {
        let g = cyclic(4).unwrap();
        assert_eq!(g.element_order(1), 4);
    }

    #[test]
    fn elementary_abelian_has_trivial_squares() {
        let a = AbelianSpec::new(vec![2, 2, 2]).unwrap();
        assert_eq!(abelian(&a).unwrap().exponent(), 2);
        assert_eq!(a.squares_order(), 1);
    }

    #[test]
    fn z2_power_times_z4_detection() {
        let yes = [vec![4], vec![2, 4], vec![2, 2, 4]];
        let no = [vec![2], vec![2, 2], vec![8], vec![4, 4], vec![2, 8], vec![2, 6], vec![12]];
        for f in yes {
            assert!(AbelianSpec::new(f).unwrap().is_z2_power_times_z4());
        }
        for f in no {
            assert!(!AbelianSpec::new(f).unwrap().is_z2_power_times_z4());
        }
    }

    #[test]
    fn abelian_types_of_order() {
        let t: Vec<Vec<usize>> = AbelianSpec::all_of_order(16)
            .into_iter()
            .map(|a| a.factors().to_vec())
            .collect();
        assert_eq!(t, vec![vec![16], vec![2, 8], vec![4, 4], vec![2, 2, 4], vec![2, 2, 2, 2]]);
        assert_eq!(AbelianSpec::all_of_order(24).len(), 3);
        assert_eq!(AbelianSpec::all_of_order(32).len(), 7);
    }

    #[test]
    fn dicyclic_small_cases() {
        assert!(dicyclic(0).is_err());
        let d1 = dicyclic(1).unwrap();
        assert!(d1.is_abelian());
        assert_eq!(d1.exponent(), 4);
        let q8 = dicyclic(2).unwrap();
        assert_eq!(q8.center().order(), 2);
        // x has order 4: x^2 = a^n != 1
        let d12 = dicyclic(3).unwrap();
        assert_eq!(d12.element_order(6), 4);
        let a = d12.generated_subgroup([1]);
        assert_eq!(a.order(), 6);
        assert_eq!(d12.centralizer(&a), a);
    }

    #[test]
    fn dicyclic_equals_generalized_over_cyclic() {
        for n in 1..=8 {
            let a = AbelianSpec::cyclic(2 * n).unwrap();
            assert_eq!(dicyclic(n).unwrap(), generalized_dicyclic(&a, n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn generalized_dicyclic_rejects_bad_involution() {
        let a = AbelianSpec::new(vec![2, 4]).unwrap();
        assert!(generalized_dicyclic(&a, 0).is_err());
        assert!(generalized_dicyclic(&a, 2).is_err()); // order 4
        assert!(generalized_dicyclic(&AbelianSpec::cyclic(5).unwrap(), 1).is_err());
    }

    #[test]
    fn generalized_dicyclic_over_z2_z4() {
        let a = AbelianSpec::new(vec![2, 4]).unwrap();
        // square of the order-4 generator: coords (0, 2)
        let t = a.encode(&[0, 2]);
        let g = generalized_dicyclic(&a, t).unwrap();
        assert_eq!(g.order(), 16);
        assert!(!g.is_abelian());
        assert_eq!(g.order() / g.center().order(), 4);
    }

    #[test]
    fn elementary_base_gives_abelian() {
        let a = AbelianSpec::new(vec![2, 2]).unwrap();
        for t in a.involutions() {
            assert!(generalized_dicyclic(&a, t).unwrap().is_abelian());
        }
    }

    #[test]
    fn semidirect_examples() {
        let d10 = semidirect_by_automorphism(&AbelianSpec::cyclic(5).unwrap(), &[4], 2).unwrap();
        assert_eq!(d10.order(), 10);
        assert_eq!(d10.center().order(), 1);
        let v4 = AbelianSpec::new(vec![2, 2]).unwrap();
        // e0 -> e1, e1 -> e0 + e1
        let a4 = semidirect_by_automorphism(&v4, &[2, 3], 3).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.derived_subgroup().order(), 4);
        let same = semidirect_by_automorphism(&v4, &[1, 2], 1).unwrap();
        assert_eq!(same, abelian(&v4).unwrap());
        // not an automorphism / wrong order
        assert!(semidirect_by_automorphism(&v4, &[1, 1], 2).is_err());
        assert!(semidirect_by_automorphism(&v4, &[2, 3], 2).is_err());
        assert!(semidirect_by_automorphism(&AbelianSpec::cyclic(4).unwrap(), &[2], 2).is_err());
    }

    #[test]
    fn two_group_families() {
        let d16 = dihedral(8).unwrap();
        let sd16 = semidihedral(4).unwrap();
        let q16 = generalized_quaternion(4).unwrap();
        for g in [&d16, &sd16, &q16] {
            assert_eq!(g.order(), 16);
            assert_eq!(g.center().order(), 2);
            assert!(g.predicates().is_maximal_class);
        }
        // distinguished by number of involutions
        let invs = |g: &GroupTable| (1..16).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!((invs(&d16), invs(&sd16), invs(&q16)), (9, 5, 1));
    }

    #[test]
    fn extraspecial_structure() {
        for (p, n) in [(2usize, 3u32), (2, 5), (3, 3), (3, 5), (5, 3)] {
            for kind in [ExtraspecialKind::Plus, ExtraspecialKind::Minus] {
                let g = extraspecial(p, n, kind).unwrap();
                assert_eq!(g.order(), p.pow(n));
                let z = g.center();
                assert_eq!(z.order(), p, "p={p} n={n} {kind:?}");
                assert_eq!(g.derived_subgroup(), z);
                // G/Z elementary abelian: every p-th power is central
                assert!((0..g.order()).all(|x| z.contains(g.pow(x, p as u64))));
                let expected_exp = match (p, kind) {
                    (2, _) => 4,
                    (_, ExtraspecialKind::Plus) => p as u64,
                    (_, ExtraspecialKind::Minus) => (p * p) as u64,
                };
                assert_eq!(g.exponent(), expected_exp);
            }
        }
        assert!(extraspecial(2, 4, ExtraspecialKind::Plus).is_err());
        assert!(extraspecial(4, 3, ExtraspecialKind::Plus).is_err());
    }

    #[test]
    fn q8_type_is_quaternion() {
        let g = extraspecial(2, 3, ExtraspecialKind::Minus).unwrap();
        let invs = (1..8).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(invs, 1);
    }

    #[test]
    fn extraspecial_32_types_differ() {
        let invs = |g: &GroupTable| (1..32).filter(|&x| g.element_order(x) == 2).count();
        let plus = extraspecial(2, 5, ExtraspecialKind::Plus).unwrap();
        let minus = extraspecial(2, 5, ExtraspecialKind::Minus).unwrap();
        // 2^{1+4}_+ has 19 involutions, 2^{1+4}_- has 11
        assert_eq!(invs(&plus), 19);
        assert_eq!(invs(&minus), 11);
    }

    #[test]
    fn wreath_is_maximal_class() {
        let w = cyclic_wreath(3).unwrap();
        assert_eq!(w.order(), 81);
        let p = w.predicates();
        assert!(p.is_maximal_class);
        assert!(p.is_metabelian);
        assert_eq!(p.nilpotency_class, Some(3));
    }
}
