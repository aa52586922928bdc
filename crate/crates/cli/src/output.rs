//! JSON, DOT and text renderings of a CD lattice.

use std::fmt::Write as _;

use serde::Serialize;

use cdlat::cd::{Analysis, LatticeShape};

#[derive(Debug, Serialize)]
pub struct LatticeRecord {
    pub spec: String,
    pub group_order: usize,
    pub center_order: usize,
    pub m_star: u64,
    pub shape: LatticeShape,
    pub members: Vec<MemberRecord>,
    pub hasse: Vec<[usize; 2]>,
    pub minimum: usize,
    pub maximum: usize,
}

#[derive(Debug, Serialize)]
pub struct MemberRecord {
    pub id: usize,
    pub order: usize,
    pub measure: u64,
    pub normal: bool,
    pub abelian: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<usize>>,
}

impl LatticeRecord {
    pub fn new(spec: &str, an: &Analysis, elements: bool) -> Self {
        let l = &an.lattice;
        LatticeRecord {
            spec: spec.to_string(),
            group_order: an.group.order(),
            center_order: an.center.order(),
            m_star: l.m_star,
            shape: l.shape,
            members: l
                .members
                .iter()
                .enumerate()
                .map(|(id, h)| MemberRecord {
                    id,
                    order: h.order(),
                    measure: l.measures[id],
                    normal: an.group.is_normal(h),
                    abelian: an.is_abelian(h),
                    elements: elements.then(|| h.elements()),
                })
                .collect(),
            hasse: l.hasse.iter().map(|&(a, b)| [a, b]).collect(),
            minimum: l.minimum,
            maximum: l.maximum,
        }
    }
}

/// Hasse diagram with nodes labelled `order/measure`, edges pointing from
/// the smaller subgroup to the larger.
pub fn dot(record: &LatticeRecord) -> String {
    let mut s = String::from("digraph cd {\n  rankdir=BT;\n  node [shape=box];\n");
    for m in &record.members {
        let _ = writeln!(s, "  n{} [label=\"{}/{}\"];", m.id, m.order, m.measure);
    }
    for [a, b] in &record.hasse {
        let _ = writeln!(s, "  n{a} -> n{b};");
    }
    s.push_str("}\n");
    s
}

/// Human-readable summary and member table.
pub fn text(record: &LatticeRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "group     {}", record.spec);
    let _ = writeln!(s, "order     {}", record.group_order);
    let _ = writeln!(s, "|Z(G)|    {}", record.center_order);
    let _ = writeln!(s, "m*        {}", record.m_star);
    let _ = writeln!(s, "members   {}", record.members.len());
    let _ = writeln!(s, "shape     {}", record.shape);
    let _ = writeln!(s);
    let _ = writeln!(s, "{:>4} {:>8} {:>12} {:>7} {:>8}", "id", "order", "measure", "normal", "abelian");
    for m in &record.members {
        let mark = if m.id == record.minimum {
            "  min"
        } else if m.id == record.maximum {
            "  max"
        } else {
            ""
        };
        let _ = writeln!(
            s,
            "{:>4} {:>8} {:>12} {:>7} {:>8}{mark}",
            m.id, m.order, m.measure, m.normal, m.abelian
        );
    }
    s
}
