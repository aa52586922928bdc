//! Named verification suites over the corpus.

use std::fmt::Write as _;
use std::str::FromStr;

use cdlat::cd::Analysis;
use cdlat::corpus;
use cdlat::oracle::{self, TheoremReport, Verdict};
use cdlat::par;
use cdlat::subgroups::EnumConfig;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Dicyclic groups `dic:1..=max_n`.
    Dic,
    /// Generalized dicyclic groups, `|A| <= max_n`, every involution.
    Gdic,
    /// Classification by `|G:A|` and `|G:Z(G)|` over the corpus.
    Index,
    /// Uniqueness of the largest member where it is forced.
    Unique,
    /// Coprime semidirect products of abelian groups.
    Coprime,
    /// Abelian groups `A` with `|A| <= max_n` as `CD(G) = {A}`.
    Singleton,
    /// Direct products with abelian groups.
    Center,
    /// Metabelian p-groups of maximal class.
    Maxclass,
    /// p-group lemmas.
    Lemmas,
    /// Agreement between the two classifications.
    Consistency,
    /// CD lattice invariants over the corpus.
    Invariants,
    /// Subgroup enumeration against the closure oracle.
    Enumeration,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Dic,
        Suite::Gdic,
        Suite::Index,
        Suite::Unique,
        Suite::Coprime,
        Suite::Singleton,
        Suite::Center,
        Suite::Maxclass,
        Suite::Lemmas,
        Suite::Consistency,
        Suite::Invariants,
        Suite::Enumeration,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Dic => "dic",
            Suite::Gdic => "gdic",
            Suite::Index => "index",
            Suite::Unique => "unique",
            Suite::Coprime => "coprime",
            Suite::Singleton => "singleton",
            Suite::Center => "center",
            Suite::Maxclass => "maxclass",
            Suite::Lemmas => "lemmas",
            Suite::Consistency => "consistency",
            Suite::Invariants => "invariants",
            Suite::Enumeration => "enumeration",
        }
    }

    /// Default for `--max-n` where the suite takes one.
    fn default_max_n(self) -> usize {
        match self {
            Suite::Dic => 12,
            Suite::Gdic => 32,
            Suite::Singleton => 24,
            _ => 0,
        }
    }

    fn needs_corpus(self) -> bool {
        !matches!(self, Suite::Dic | Suite::Gdic | Suite::Coprime | Suite::Center)
    }
}

/// A suite name or `all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection(pub Vec<Suite>);

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(Selection(Suite::ALL.to_vec()));
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|&x| Selection(vec![x]))
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite {s:?}; expected all or one of {}", names.join(", "))
            })
    }
}

pub struct Options {
    pub max_n: Option<usize>,
    pub long: bool,
    pub order_bound: usize,
    pub config: EnumConfig,
    pub progress: bool,
}

/// Builds and analyzes the standard corpus, in corpus order.
fn analyze_corpus(opts: &Options) -> Result<Vec<(String, Analysis)>, CliError> {
    let specs = corpus::standard(opts.long);
    let results = par::map(&specs, opts.config.parallel, |spec| {
        let g = spec.build(opts.order_bound)?;
        let an = Analysis::new(g, &opts.config)?;
        if opts.progress {
            eprintln!("analyzed {spec}: {} subgroups, {} CD members", an.subgroups.len(), an.lattice.len());
        }
        Ok::<_, cdlat::Error>((spec.to_string(), an))
    });
    results.into_iter().map(|r| r.map_err(CliError::from)).collect()
}

pub fn run(selection: &Selection, opts: &Options) -> Result<Vec<TheoremReport>, CliError> {
    let corpus_needed = selection.0.iter().any(|s| s.needs_corpus());
    let analyses = if corpus_needed { analyze_corpus(opts)? } else { Vec::new() };
    let cfg = &opts.config;
    let mut reports = Vec::new();
    for &suite in &selection.0 {
        let max_n = opts.max_n.unwrap_or(suite.default_max_n());
        match suite {
            Suite::Dic => {
                for n in 1..=max_n {
                    reports.push(oracle::check_dicyclic(n, cfg)?);
                }
            }
            Suite::Gdic => {
                for (a, t) in corpus::generalized_dicyclic_sweep(max_n) {
                    reports.push(oracle::check_generalized_dicyclic(&a, t, cfg)?);
                }
            }
            Suite::Coprime => {
                for (a, b, act) in corpus::coprime_instances() {
                    reports.push(oracle::check_coprime_semidirect(&a, &b, &act, cfg)?);
                }
            }
            Suite::Center => {
                for (h, z) in corpus::center_absorption_instances() {
                    let g = h.build(opts.order_bound)?;
                    reports.push(oracle::check_center_absorption(&g, &h.to_string(), &z, cfg)?);
                }
            }
            Suite::Singleton => {
                let refs: Vec<(String, &Analysis)> = analyses.iter().map(|(n, a)| (n.clone(), a)).collect();
                reports.extend(oracle::check_singleton_realizability(max_n, &refs, cfg)?);
            }
            Suite::Index => reports.extend(analyses.iter().map(|(n, a)| oracle::check_index_classification(a, n))),
            Suite::Unique => reports.extend(analyses.iter().map(|(n, a)| oracle::check_largest_member_uniqueness(a, n))),
            Suite::Maxclass => {
                for (n, a) in &analyses {
                    reports.extend(oracle::check_maximal_class(a, n));
                }
            }
            Suite::Lemmas => {
                for (n, a) in &analyses {
                    reports.extend(oracle::check_pgroup_lemmas(a, n));
                }
            }
            Suite::Consistency => reports.extend(analyses.iter().map(|(n, a)| oracle::check_consistency(a, n))),
            Suite::Invariants => reports.extend(analyses.iter().map(|(n, a)| oracle::check_cd_invariants(a, n))),
            Suite::Enumeration => {
                for (n, a) in &analyses {
                    reports.push(oracle::check_enumeration(a, n, cfg)?);
                }
            }
        }
    }
    Ok(reports)
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "n/a",
    }
}

/// One line per report (failures followed by their details) and a summary.
pub fn render(reports: &[TheoremReport], verbose: bool) -> String {
    let mut s = String::new();
    for r in reports {
        let limited = if r.corpus_limited { " [corpus-limited]" } else { "" };
        let _ = writeln!(
            s,
            "{:<4} {:<34} {:<28} {}{limited}",
            verdict_label(r.verdict),
            r.id,
            r.subject,
            r.prediction
        );
        if r.failed() || verbose {
            for d in &r.details {
                let _ = writeln!(s, "       {d}");
            }
        }
    }
    let count = |v| reports.iter().filter(|r| r.verdict == v).count();
    let _ = writeln!(
        s,
        "\n{} reports: {} pass, {} fail, {} not applicable",
        reports.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::NotApplicable)
    );
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selection_parses() {
        assert_eq!("all".parse::<Selection>().unwrap().0.len(), Suite::ALL.len());
        assert_eq!("dic".parse::<Selection>().unwrap().0, vec![Suite::Dic]);
        assert!("nope".parse::<Selection>().is_err());
    }
}
