//! Finitely presented groups and their realization as tables by coset
//! enumeration over the trivial subgroup.
//!
//! # File format
//!
//! Line oriented, UTF-8. Leading and trailing whitespace on a line is ignored.
//!
//! ```text
//! file     = { line "\n" }
//! line     = blank | comment | gens | rel
//! blank    = ""
//! comment  = "#" { any character }
//! gens     = "gens" SP count              ; exactly once, before any rel
//! rel      = "rel" SP letter { "," letter }
//! letter   = [ "-" ] digit { digit }       ; 1..=count, "-" marks an inverse
//! ```
//!
//! `SP` is one or more spaces or tabs; spaces around commas are accepted.
//! `rel 1,1,1,-2` is the relator `g1^3 g2^-1`. The canonical form written by
//! [`Presentation::to_text`] is `gens k` followed by one `rel` line per relator,
//! no comments, single spaces, no spaces around commas, trailing newline.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Validation};

/// A letter: `+g` for generator `g` (1-based), `-g` for its inverse.
pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Vec<Letter>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Vec<Letter>>) -> Result<Self> {
        if generators == 0 {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        if relators.is_empty() {
            return Err(Error::InvalidPresentation("at least one relator is required".into()));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::InvalidPresentation(format!("relator {} is empty", i + 1)));
            }
            if let Some(&l) = r
                .iter()
                .find(|&&l| l == 0 || l.unsigned_abs() as usize > generators)
            {
                return Err(Error::InvalidPresentation(format!(
                    "relator {} uses letter {l}, valid letters are ±1..={generators}",
                    i + 1
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut generators = None;
        let mut relators = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line_start = offset;
            offset += raw.len();
            let lead = raw.len() - raw.trim_start().len();
            let line = raw.trim();
            let pos = line_start + lead;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kw, rest) = line
                .split_once([' ', '\t'])
                .ok_or_else(|| parse_err(pos, format!("expected `gens` or `rel`, found `{line}`")))?;
            let rest_pos = pos + kw.len() + (rest.len() - rest.trim_start().len()) + 1;
            let rest = rest.trim();
            match kw {
                "gens" => {
                    if generators.is_some() {
                        return Err(parse_err(pos, "duplicate `gens` line".into()));
                    }
                    let k: usize = rest
                        .parse()
                        .map_err(|_| parse_err(rest_pos, format!("invalid generator count `{rest}`")))?;
                    generators = Some(k);
                }
                "rel" => {
                    let k = generators
                        .ok_or_else(|| parse_err(pos, "`rel` before `gens`".into()))?;
                    let mut word = Vec::new();
                    let mut lpos = rest_pos;
                    for tok in rest.split(',') {
                        let t = tok.trim();
                        let l: Letter = t
                            .parse()
                            .map_err(|_| parse_err(lpos, format!("invalid letter `{t}`")))?;
                        if l == 0 || l.unsigned_abs() as usize > k {
                            return Err(parse_err(lpos, format!("letter {l} out of range ±1..={k}")));
                        }
                        word.push(l);
                        lpos += tok.len() + 1;
                    }
                    relators.push(word);
                }
                other => {
                    return Err(parse_err(pos, format!("unknown keyword `{other}`")));
                }
            }
        }
        let k = generators.ok_or_else(|| parse_err(text.len(), "missing `gens` line".into()))?;
        Presentation::new(k, relators).map_err(|e| parse_err(text.len(), e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("gens {}\n", self.generators);
        for r in &self.relators {
            let parts: Vec<String> = r.iter().map(|l| l.to_string()).collect();
            let _ = writeln!(s, "rel {}", parts.join(","));
        }
        s
    }

    /// Display letter for generator `g` (1-based): `a`, `b`, ... or `g27`.
    pub fn generator_name(&self, g: usize) -> String {
        if self.generators <= 26 {
            ((b'a' + (g - 1) as u8) as char).to_string()
        } else {
            format!("g{g}")
        }
    }

    /// Evaluates a word over a table, given the element for each generator.
    pub fn evaluate(table: &GroupTable, gens: &[usize], word: &[Letter]) -> usize {
        word.iter().fold(0, |acc, &l| {
            let g = gens[l.unsigned_abs() as usize - 1];
            table.mul(acc, if l > 0 { g } else { table.inv(g) })
        })
    }
}

fn parse_err(pos: usize, msg: String) -> Error {
    Error::Parse { pos, msg }
}

/// Free and cyclic reduction.
fn reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    let mut lo = 0;
    let mut hi = out.len();
    while hi - lo >= 2 && out[lo] == -out[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    out[lo..hi].to_vec()
}

#[derive(Debug, Clone, Copy)]
pub struct EnumerationLimits {
    /// Largest acceptable group order.
    pub order_bound: usize,
    /// Largest number of cosets alive or dead the table may hold.
    pub max_cosets: usize,
}

impl EnumerationLimits {
    pub fn new(order_bound: usize) -> Self {
        EnumerationLimits {
            order_bound,
            max_cosets: 4_000_000,
        }
    }
}

const NONE: u32 = u32::MAX;

/// Coset table for HLT enumeration with deduction stacking and
/// union-find coincidence processing.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    max_cosets: usize,
    live: usize,
    /// Relators as column sequences, and for each column the list of cyclic
    /// conjugates of relators (or their inverses) starting with it.
    relators: Vec<Vec<usize>>,
    conjugates: Vec<Vec<Vec<usize>>>,
}

const DEDUCTION_CAP: usize = 100_000;

impl CosetTable {
    fn new(p: &Presentation, max_cosets: usize) -> Self {
        let cols = 2 * p.generators;
        let col = |l: Letter| {
            let g = l.unsigned_abs() as usize - 1;
            if l > 0 {
                2 * g
            } else {
                2 * g + 1
            }
        };
        let mut relators: Vec<Vec<usize>> = p
            .relators
            .iter()
            .map(|r| reduce(r))
            .filter(|r| !r.is_empty())
            .map(|r| r.iter().map(|&l| col(l)).collect())
            .collect();
        relators.sort_by_key(|r| r.len());
        let mut conjugates = vec![Vec::new(); cols];
        for r in &relators {
            let inv: Vec<usize> = r.iter().rev().map(|&c| c ^ 1).collect();
            for w in [r, &inv] {
                for s in 0..w.len() {
                    let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
                    let list = &mut conjugates[rot[0]];
                    if !list.contains(&rot) {
                        list.push(rot);
                    }
                }
            }
        }
        let mut t = CosetTable {
            cols,
            table: Vec::new(),
            parent: Vec::new(),
            deductions: Vec::new(),
            max_cosets,
            live: 0,
            relators,
            conjugates,
        };
        t.alloc().expect("room for one coset");
        t
    }

    fn alloc(&mut self) -> Result<u32> {
        let n = self.parent.len();
        if n >= self.max_cosets {
            return Err(Error::BoundExceeded(format!(
                "coset table reached {} cosets ({} live)",
                self.max_cosets, self.live
            )));
        }
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.live += 1;
        Ok(n as u32)
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    #[inline]
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn push_deduction(&mut self, c: u32, x: usize) {
        if self.deductions.len() < DEDUCTION_CAP {
            self.deductions.push((c, x as u32));
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        let d = self.alloc()?;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.push_deduction(c, x);
        Ok(())
    }

    fn merge(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
            self.live -= 1;
            queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.merge(a, b, &mut queue);
        let mut i = 0;
        while i < queue.len() {
            let g = queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(g, x, NONE);
                if self.get(d, x ^ 1) == g {
                    self.set(d, x ^ 1, NONE);
                }
                let m = self.rep(g);
                let n = self.rep(d);
                let mx = self.get(m, x);
                if mx != NONE {
                    self.merge(n, mx, &mut queue);
                } else {
                    let nx = self.get(n, x ^ 1);
                    if nx != NONE {
                        self.merge(m, nx, &mut queue);
                    } else {
                        self.set(m, x, n);
                        self.set(n, x ^ 1, m);
                        self.push_deduction(m, x);
                    }
                }
            }
        }
    }

    /// Scans `word` at coset `c`, filling in a deduction or recording a
    /// coincidence when the scan closes up. With `fill`, undefined gaps are
    /// filled with new cosets.
    fn scan(&mut self, c: u32, word: &[usize], fill: bool) -> Result<()> {
        let r = word.len();
        loop {
            let mut f = c;
            let mut i = 0;
            while i < r {
                let n = self.get(f, word[i]);
                if n == NONE {
                    break;
                }
                f = n;
                i += 1;
            }
            if i == r {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            let mut b = c;
            let mut j = r;
            while j > i {
                let n = self.get(b, word[j - 1] ^ 1);
                if n == NONE {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j == i {
                // the two ends close up
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                let x = word[i];
                self.set(f, x, b);
                self.set(b, x ^ 1, f);
                self.push_deduction(f, x);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }

    fn process_deductions(&mut self) -> Result<()> {
        while let Some((c, x)) = self.deductions.pop() {
            let x = x as usize;
            if self.is_live(c) {
                let words = std::mem::take(&mut self.conjugates[x]);
                for w in &words {
                    self.scan(c, w, false)?;
                    if !self.is_live(c) {
                        break;
                    }
                }
                self.conjugates[x] = words;
            }
            let c = self.rep(c);
            let d = self.get(c, x);
            if d != NONE && self.is_live(d) {
                let words = std::mem::take(&mut self.conjugates[x ^ 1]);
                for w in &words {
                    self.scan(d, w, false)?;
                    if !self.is_live(d) {
                        break;
                    }
                }
                self.conjugates[x ^ 1] = words;
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let relators = std::mem::take(&mut self.relators);
        let result = self.hlt(&relators);
        self.relators = relators;
        result
    }

    fn hlt(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        loop {
            let mut c = 0u32;
            while (c as usize) < self.parent.len() {
                if self.is_live(c) {
                    for w in relators {
                        self.scan(c, w, true)?;
                        if !self.is_live(c) {
                            break;
                        }
                    }
                    self.process_deductions()?;
                    if self.is_live(c) {
                        for x in 0..self.cols {
                            if self.get(c, x) == NONE {
                                self.define(c, x)?;
                            }
                        }
                        self.process_deductions()?;
                    }
                }
                c += 1;
            }
            if self.is_closed(relators) {
                return Ok(());
            }
        }
    }

    /// Every live row complete and every relator traces a loop at every
    /// live coset.
    fn is_closed(&self, relators: &[Vec<usize>]) -> bool {
        (0..self.parent.len() as u32)
            .filter(|&c| self.is_live(c))
            .all(|c| {
                (0..self.cols).all(|x| {
                    let d = self.get(c, x);
                    d != NONE && self.is_live(d)
                }) && relators.iter().all(|w| {
                    w.iter().try_fold(c, |f, &x| match self.get(f, x) {
                        NONE => None,
                        d => Some(d),
                    }) == Some(c)
                })
            })
    }
}

/// Realizes a finite presentation as a multiplication table.
///
/// Elements are numbered in breadth-first order of the coset graph from the
/// empty word, visiting generator columns as `g1, g1^-1, g2, g2^-1, ...`;
/// element 0 is the identity. Element names are the breadth-first words.
pub fn realize_presentation(p: &Presentation, limits: EnumerationLimits) -> Result<GroupTable> {
    let mut t = CosetTable::new(p, limits.max_cosets);
    t.run()?;
    let live = t.live;
    if live > limits.order_bound {
        return Err(Error::BoundExceeded(format!(
            "presented group has order {live}, above the bound {}",
            limits.order_bound
        )));
    }
    if live > crate::group::MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: live,
            limit: crate::group::MAX_ORDER,
        });
    }

    // breadth-first renumbering
    let cols = t.cols;
    let mut number = vec![NONE; t.parent.len()];
    let mut order_list = vec![0u32];
    let mut tree: Vec<(usize, usize)> = vec![(0, 0)];
    number[0] = 0;
    let mut head = 0;
    while head < order_list.len() {
        let c = order_list[head];
        for x in 0..cols {
            let d = t.get(c, x);
            if number[d as usize] == NONE {
                number[d as usize] = order_list.len() as u32;
                order_list.push(d);
                tree.push((head, x));
            }
        }
        head += 1;
    }
    debug_assert_eq!(order_list.len(), live);
    let n = live;
    let action: Vec<u32> = order_list
        .iter()
        .flat_map(|&c| (0..cols).map(move |x| (c, x)))
        .map(|(c, x)| number[t.get(c, x) as usize])
        .collect();
    drop(t);

    let mut mul = vec![0u16; n * n];
    for c in 0..n {
        let row = &mut mul[c * n..(c + 1) * n];
        row[0] = c as u16;
        for d in 1..n {
            let (par, x) = tree[d];
            row[d] = action[row[par] as usize * cols + x] as u16;
        }
    }

    let names = element_words(p, &tree);
    let table = GroupTable::from_raw(n, mul, Some(names), Validation::Default)?;
    let gens: Vec<usize> = (0..p.generators)
        .map(|g| action[2 * g] as usize)
        .collect();
    for (i, r) in p.relators.iter().enumerate() {
        if Presentation::evaluate(&table, &gens, r) != 0 {
            return Err(Error::InvalidPresentation(format!(
                "relator {} does not hold in the enumerated table",
                i + 1
            )));
        }
    }
    let mut distinct: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    distinct.dedup();
    let mut seen = std::collections::BTreeSet::new();
    distinct.retain(|g| seen.insert(*g));
    table.set_generators(distinct);
    Ok(table)
}

fn element_words(p: &Presentation, tree: &[(usize, usize)]) -> Vec<String> {
    let mut letters: Vec<Vec<usize>> = Vec::with_capacity(tree.len());
    letters.push(Vec::new());
    for &(par, x) in &tree[1..] {
        let mut w = letters[par].clone();
        w.push(x);
        letters.push(w);
    }
    letters
        .iter()
        .map(|w| {
            if w.is_empty() {
                return "1".to_string();
            }
            let mut s = String::new();
            let mut i = 0;
            while i < w.len() {
                let mut j = i;
                while j < w.len() && w[j] == w[i] {
                    j += 1;
                }
                let g = p.generator_name(w[i] / 2 + 1);
                let e = (j - i) as i64 * if w[i] % 2 == 0 { 1 } else { -1 };
                if e == 1 {
                    s.push_str(&g);
                } else {
                    let _ = write!(s, "{g}^{e}");
                }
                i = j;
            }
            s
        })
        .collect()
}

/// Presentations shipped with the crate.
pub mod bundled {
    /// Maximal class, order 5^5: `a^25 = b^5 = c^5 = d^5 = 1`, `[b,a] = c`,
    /// `[c,a] = d`, `[c,b] = [d,a] = a^5`, `[d,b] = 1`.
    pub const MAXCLASS_3125: &str = include_str!("../../../presentations/maxclass_3125.pres");
    /// Maximal class, order 3^6, no abelian maximal subgroup.
    pub const SG_729_99: &str = include_str!("../../../presentations/sg_729_99.pres");
    /// GAP SmallGroup(15625, 651).
    pub const SG_15625_651: &str = include_str!("../../../presentations/sg_15625_651.pres");
    /// The inconsistent form of [`MAXCLASS_3125`]; defines a group of order 5^4.
    pub const MAXCLASS_3125_AS_PRINTED: &str =
        include_str!("../../../presentations/as_printed/maxclass_3125.pres");
    /// The inconsistent form of [`SG_729_99`]; defines a group of order 27.
    pub const SG_729_99_AS_PRINTED: &str =
        include_str!("../../../presentations/as_printed/sg_729_99.pres");

    pub const ALL: [(&str, &str); 5] = [
        ("maxclass_3125", MAXCLASS_3125),
        ("sg_729_99", SG_729_99),
        ("sg_15625_651", SG_15625_651),
        ("maxclass_3125_as_printed", MAXCLASS_3125_AS_PRINTED),
        ("sg_729_99_as_printed", SG_729_99_AS_PRINTED),
    ];

    pub fn get(name: &str) -> Option<&'static str> {
        ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
    }
}
