//! A small language for naming groups.
//!
//! ```text
//! spec    := "dic:" n                         dicyclic of order 4n
//!          | "gdic:" factors ["," "t=" idx]   generalized dicyclic over A
//!          | "ab:" factors                    abelian
//!          | "sdp:" factors ";" idxs ";" k    A x| Z_k, generator images
//!          | "xsp:" p "," n "," kind          extraspecial of order p^n
//!          | "dih:" n | "sdih:" k | "gq:" k   dihedral 2n, semidihedral and
//!                                             generalized quaternion 2^k
//!          | "heis:" p | "wr:" p              Heisenberg p^3, Z_p wr Z_p
//!          | "pres:" name                     bundled presentation
//!          | "fp:" path                       presentation file
//!          | "prod:" spec "*" spec            direct product
//! factors := int ("," int)*
//! ```
//!
//! For `prod:` the split is the first `*` at which both sides parse.
//! [`GroupSpec`]'s `Display` writes the canonical form, which parses back to
//! the same value.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::constructors::{self, AbelianSpec, ExtraspecialKind};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::presentation::{self, EnumerationLimits, Presentation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Dicyclic(usize),
    GeneralizedDicyclic { factors: Vec<usize>, t: Option<usize> },
    Abelian(Vec<usize>),
    Semidirect { factors: Vec<usize>, images: Vec<usize>, k: usize },
    Extraspecial { p: usize, n: u32, kind: ExtraspecialKind },
    Dihedral(usize),
    Semidihedral(u32),
    Quaternion(u32),
    Heisenberg(usize),
    Wreath(usize),
    Bundled(String),
    File(PathBuf),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

/// Parses `text` (starting at byte `base` of the whole input) as a
/// comma-separated list of integers.
fn ints(text: &str, base: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    let mut pos = base;
    for part in text.split(',') {
        let v = part
            .trim()
            .parse::<usize>()
            .map_err(|_| err(pos, format!("expected an integer, found {part:?}")))?;
        out.push(v);
        pos += part.len() + 1;
    }
    Ok(out)
}

fn one_int(text: &str, base: usize) -> Result<usize> {
    match ints(text, base)?.as_slice() {
        [v] => Ok(*v),
        _ => Err(err(base, "expected a single integer")),
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 0)
    }

    fn parse_at(text: &str, base: usize) -> Result<Self> {
        let colon = text
            .find(':')
            .ok_or_else(|| err(base, "expected <family>:<parameters>"))?;
        let (tag, rest) = (&text[..colon], &text[colon + 1..]);
        let at = base + colon + 1;
        let spec = match tag {
            "dic" => GroupSpec::Dicyclic(one_int(rest, at)?),
            "gdic" => {
                let (facs, t) = match rest.find(",t=") {
                    Some(i) => (&rest[..i], Some(one_int(&rest[i + 3..], at + i + 3)?)),
                    None => (rest, None),
                };
                GroupSpec::GeneralizedDicyclic {
                    factors: ints(facs, at)?,
                    t,
                }
            }
            "ab" => GroupSpec::Abelian(ints(rest, at)?),
            "sdp" => {
                let parts: Vec<&str> = rest.split(';').collect();
                if parts.len() != 3 {
                    return Err(err(at, "expected <factors>;<images>;<k>"));
                }
                let at2 = at + parts[0].len() + 1;
                let at3 = at2 + parts[1].len() + 1;
                GroupSpec::Semidirect {
                    factors: ints(parts[0], at)?,
                    images: ints(parts[1], at2)?,
                    k: one_int(parts[2], at3)?,
                }
            }
            "xsp" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(err(at, "expected <p>,<n>,<kind>"));
                }
                let at3 = at + parts[0].len() + parts[1].len() + 2;
                let kind = ExtraspecialKind::parse(parts[2].trim())
                    .ok_or_else(|| err(at3, format!("unknown extraspecial kind {:?}", parts[2])))?;
                GroupSpec::Extraspecial {
                    p: one_int(parts[0], at)?,
                    n: one_int(parts[1], at + parts[0].len() + 1)? as u32,
                    kind,
                }
            }
            "dih" => GroupSpec::Dihedral(one_int(rest, at)?),
            "sdih" => GroupSpec::Semidihedral(one_int(rest, at)? as u32),
            "gq" => GroupSpec::Quaternion(one_int(rest, at)? as u32),
            "heis" => GroupSpec::Heisenberg(one_int(rest, at)?),
            "wr" => GroupSpec::Wreath(one_int(rest, at)?),
            "pres" => {
                if presentation::bundled::get(rest).is_none() {
                    return Err(err(at, format!("unknown bundled presentation {rest:?}")));
                }
                GroupSpec::Bundled(rest.to_string())
            }
            "fp" => {
                if rest.is_empty() {
                    return Err(err(at, "empty path"));
                }
                GroupSpec::File(PathBuf::from(rest))
            }
            "prod" => {
                let mut first_err = None;
                for (i, _) in rest.match_indices('*') {
                    let left = Self::parse_at(&rest[..i], at);
                    let right = Self::parse_at(&rest[i + 1..], at + i + 1);
                    match (left, right) {
                        (Ok(l), Ok(r)) => return Ok(GroupSpec::Product(Box::new(l), Box::new(r))),
                        (Err(e), _) | (_, Err(e)) => {
                            first_err.get_or_insert(e);
                        }
                    }
                }
                return Err(first_err.unwrap_or_else(|| err(at, "expected <spec>*<spec>")));
            }
            _ => return Err(err(base, format!("unknown family {tag:?}"))),
        };
        Ok(spec)
    }

    /// Builds the group. `order_bound` limits coset enumeration for
    /// presentations.
    pub fn build(&self, order_bound: usize) -> Result<GroupTable> {
        match self {
            GroupSpec::Dicyclic(n) => constructors::dicyclic(*n),
            GroupSpec::GeneralizedDicyclic { factors, t } => {
                let a = AbelianSpec::new(factors.clone())?;
                let t = match t {
                    Some(t) => *t,
                    None => constructors::default_involution(&a).ok_or_else(|| {
                        Error::InvalidConstruction("abelian group has no involution".into())
                    })?,
                };
                constructors::generalized_dicyclic(&a, t)
            }
            GroupSpec::Abelian(factors) => constructors::abelian(&AbelianSpec::new(factors.clone())?),
            GroupSpec::Semidirect { factors, images, k } => {
                constructors::semidirect_by_automorphism(&AbelianSpec::new(factors.clone())?, images, *k)
            }
            GroupSpec::Extraspecial { p, n, kind } => constructors::extraspecial(*p, *n, *kind),
            GroupSpec::Dihedral(n) => constructors::dihedral(*n),
            GroupSpec::Semidihedral(k) => constructors::semidihedral(*k),
            GroupSpec::Quaternion(k) => constructors::generalized_quaternion(*k),
            GroupSpec::Heisenberg(p) => constructors::heisenberg(*p),
            GroupSpec::Wreath(p) => constructors::cyclic_wreath(*p),
            GroupSpec::Bundled(name) => {
                let text = presentation::bundled::get(name)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown bundled presentation {name}")))?;
                presentation::realize_presentation(&Presentation::parse(text)?, EnumerationLimits::new(order_bound))
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                presentation::realize_presentation(&Presentation::parse(&text)?, EnumerationLimits::new(order_bound))
            }
            GroupSpec::Product(a, b) => constructors::direct_product(&a.build(order_bound)?, &b.build(order_bound)?),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::parse(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Dicyclic(n) => write!(f, "dic:{n}"),
            GroupSpec::GeneralizedDicyclic { factors, t: None } => write!(f, "gdic:{}", join(factors)),
            GroupSpec::GeneralizedDicyclic { factors, t: Some(t) } => {
                write!(f, "gdic:{},t={t}", join(factors))
            }
            GroupSpec::Abelian(factors) => write!(f, "ab:{}", join(factors)),
            GroupSpec::Semidirect { factors, images, k } => {
                write!(f, "sdp:{};{};{k}", join(factors), join(images))
            }
            GroupSpec::Extraspecial { p, n, kind } => write!(f, "xsp:{p},{n},{}", kind.tag()),
            GroupSpec::Dihedral(n) => write!(f, "dih:{n}"),
            GroupSpec::Semidihedral(k) => write!(f, "sdih:{k}"),
            GroupSpec::Quaternion(k) => write!(f, "gq:{k}"),
            GroupSpec::Heisenberg(p) => write!(f, "heis:{p}"),
            GroupSpec::Wreath(p) => write!(f, "wr:{p}"),
            GroupSpec::Bundled(name) => write!(f, "pres:{name}"),
            GroupSpec::File(path) => write!(f, "fp:{}", path.display()),
            GroupSpec::Product(a, b) => write!(f, "prod:{a}*{b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(GroupSpec::parse("dic:3").unwrap().build(100).unwrap().order(), 12);
        assert_eq!(
            GroupSpec::parse("gdic:2,4").unwrap(),
            GroupSpec::GeneralizedDicyclic {
                factors: vec![2, 4],
                t: None
            }
        );
        assert_eq!(
            GroupSpec::parse("fp:presentations/sg_729_99.pres").unwrap(),
            GroupSpec::File("presentations/sg_729_99.pres".into())
        );
        let g = GroupSpec::parse("prod:dic:2*ab:3").unwrap().build(100).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(GroupSpec::parse("xsp:2,5,q").unwrap().to_string(), "xsp:2,5,minus");
        assert_eq!(GroupSpec::parse("sdp:5;4;2").unwrap().build(100).unwrap().order(), 10);
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match GroupSpec::parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("dic"), 0);
        assert_eq!(pos("zz:1"), 0);
        assert_eq!(pos("ab:2,x"), 5);
        assert_eq!(pos("sdp:5;4;y"), 8);
        assert_eq!(pos("xsp:2,5,w"), 8);
        assert_eq!(pos("prod:dic:2*ab:z"), 14);
    }

    fn leaf() -> impl Strategy<Value = GroupSpec> {
        let facs = prop::collection::vec(2usize..50, 1..4);
        prop_oneof![
            (1usize..100).prop_map(GroupSpec::Dicyclic),
            (facs.clone(), prop::option::of(0usize..100))
                .prop_map(|(factors, t)| GroupSpec::GeneralizedDicyclic { factors, t }),
            facs.clone().prop_map(GroupSpec::Abelian),
            (facs.clone(), prop::collection::vec(0usize..100, 1..4), 1usize..9)
                .prop_map(|(factors, images, k)| GroupSpec::Semidirect { factors, images, k }),
            (2usize..8, 3u32..6, any::<bool>()).prop_map(|(p, n, m)| GroupSpec::Extraspecial {
                p,
                n,
                kind: if m { ExtraspecialKind::Minus } else { ExtraspecialKind::Plus }
            }),
            (1usize..40).prop_map(GroupSpec::Dihedral),
            (3u32..7).prop_map(GroupSpec::Semidihedral),
            (3u32..7).prop_map(GroupSpec::Quaternion),
            (2usize..8).prop_map(GroupSpec::Heisenberg),
            (2usize..8).prop_map(GroupSpec::Wreath),
            Just(GroupSpec::Bundled("sg_729_99".into())),
            "[a-z/._]{1,12}".prop_map(|s| GroupSpec::File(s.into())),
        ]
    }

    fn spec() -> impl Strategy<Value = GroupSpec> {
        leaf().prop_recursive(3, 8, 2, |inner| {
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
        })
    }

    proptest! {
        #[test]
        fn canonical_form_round_trips(s in spec()) {
            let text = s.to_string();
            prop_assert_eq!(GroupSpec::parse(&text).unwrap(), s);
        }
    }
}
