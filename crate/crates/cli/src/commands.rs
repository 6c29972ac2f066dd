use std::time::Instant;

use nullsum_core::grouplab::syntax::{parse_scalars, parse_vectors};
use nullsum_core::grouplab::{
    find_ordering_within, nullstellensatz_consistency, order_in_free_group, sweep, Cyclic, Free,
    GroupError, GroupSpec, NiceSet, SearchBudget, SweepBudget, Variant,
};
use nullsum_core::nullstellensatz::{
    a_table, certify, symmetry_report, CoefficientStore, Conjecture, ExtractConfig, Extractor, Family, NullError,
    TargetSpec,
};
use nullsum_core::polycore::{PolyError, TermLimit};
use serde::Serialize;
use thiserror::Error;

use crate::cache::{CacheError, JsonlCache};
use crate::parse::parse_index_list;
use crate::report::{CacheDoc, CoeffRow, Document, Meta, OrderDoc, Output, TableDoc};
use crate::{CacheAction, Cli, Command};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A failure that would bear on the conjectures; the report is still emitted.
    #[error("{message}")]
    Conjecture { message: String, document: Option<Box<Document>> },
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Conjecture { .. } => 4,
            CliError::Cache(_) | CliError::Other(_) => 1,
        }
    }
}

impl From<NullError> for CliError {
    fn from(e: NullError) -> Self {
        match e {
            NullError::InvalidTarget(_) | NullError::NaiveTooLarge { .. } | NullError::NoRelation(_) => {
                CliError::Usage(e.to_string())
            }
            NullError::Poly(PolyError::TermLimitExceeded { .. }) => CliError::Budget(e.to_string()),
            NullError::Poly(
                PolyError::IndexOutOfRange { .. }
                | PolyError::BadVariableCount { .. }
                | PolyError::VariableCountMismatch { .. },
            ) => CliError::Usage(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::InvalidGroup(_) | GroupError::NotNice(_) => CliError::Usage(e.to_string()),
            GroupError::BudgetExceeded(m) => CliError::Budget(m),
            GroupError::NoOrdering(_) => CliError::Conjecture { message: e.to_string(), document: None },
            GroupError::Null(n) => n.into(),
            other => CliError::Other(other.to_string()),
        }
    }
}

/// A conservative term budget: a quarter of physical memory at roughly 64
/// bytes per live term.
pub fn default_term_limit() -> usize {
    let total_kb = std::fs::read_to_string("/proc/meminfo").ok().and_then(|s| {
        s.lines()
            .find(|l| l.starts_with("MemTotal:"))
            .and_then(|l| l.split_whitespace().nth(1))
            .and_then(|v| v.parse::<u64>().ok())
    });
    match total_kb {
        Some(kb) => ((kb * 1024 / 4) / 64).max(1_000_000) as usize,
        None => 20_000_000,
    }
}

fn extract_config(cli: &Cli) -> ExtractConfig {
    ExtractConfig { limit: TermLimit(cli.max_terms.unwrap_or_else(default_term_limit)), ..ExtractConfig::default() }
}

fn open_cache(cli: &Cli) -> Result<Option<JsonlCache>, CliError> {
    cli.cache.as_ref().map(JsonlCache::open).transpose().map_err(CliError::from)
}

fn extractor<'c>(cli: &Cli, cache: &'c Option<JsonlCache>) -> Extractor<'c> {
    match cache {
        Some(c) => Extractor::with_store(extract_config(cli), c as &dyn CoefficientStore),
        None => Extractor::new(extract_config(cli)),
    }
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable")
}

fn order_doc(group: GroupSpec, set_text: &str, variant: Variant, budget: SearchBudget) -> Result<OrderDoc, CliError> {
    match group {
        GroupSpec::Cyclic(n) => {
            let g = Cyclic::new(n)?;
            let elems: Vec<u64> = parse_scalars(set_text)
                .map_err(CliError::Usage)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| CliError::Usage(format!("{x} is not a residue mod {n}"))))
                .collect::<Result<_, _>>()?;
            let set = NiceSet::new(g, elems, variant)?;
            let o = find_ordering_within(&set, budget)?.ok_or_else(|| CliError::Conjecture {
                message: format!("NO VALID ORDERING of {:?} in Z{n} ({variant})", set.elements()),
                document: None,
            })?;
            Ok(OrderDoc {
                group: group.to_string(),
                variant,
                set: to_json(&set.elements()),
                ordering: to_json(&o.entries),
                partial_sums: to_json(&o.partial_sums),
                trace: None,
            })
        }
        GroupSpec::Integers => {
            let elems = parse_scalars(set_text).map_err(CliError::Usage)?;
            let set = NiceSet::new(Free::new(1)?, elems.iter().map(|&x| vec![x]).collect(), variant)?;
            let trace = order_in_free_group(&set, budget)?;
            let flat = |v: &[Vec<i64>]| v.iter().map(|z| z[0]).collect::<Vec<i64>>();
            Ok(OrderDoc {
                group: group.to_string(),
                variant,
                set: to_json(&flat(set.elements())),
                ordering: to_json(&flat(&trace.ordering.entries)),
                partial_sums: to_json(&flat(&trace.ordering.partial_sums)),
                trace: Some(trace),
            })
        }
        GroupSpec::Free(m) => {
            let g = Free::new(m)?;
            let set = NiceSet::new(g, parse_vectors(set_text, m).map_err(CliError::Usage)?, variant)?;
            let trace = order_in_free_group(&set, budget)?;
            Ok(OrderDoc {
                group: group.to_string(),
                variant,
                set: to_json(&set.elements()),
                ordering: to_json(&trace.ordering.entries),
                partial_sums: to_json(&trace.ordering.partial_sums),
                trace: Some(trace),
            })
        }
    }
}

fn variants(v: Option<Variant>) -> Vec<Variant> {
    v.map(|v| vec![v]).unwrap_or_else(|| Variant::ALL.to_vec())
}

fn result_for(cli: &Cli) -> Result<(String, Output), CliError> {
    let cache = match &cli.command {
        Command::Coeff { .. } | Command::Table { .. } | Command::Certify { .. } | Command::Consistency { .. } => {
            open_cache(cli)?
        }
        _ => None,
    };
    match &cli.command {
        Command::Coeff { k, family, i, j, method } => {
            let target = TargetSpec::new(*family, *k, *i, *j)?;
            let ex = extractor(cli, &cache);
            let rec = match method {
                Some(m) => ex.extract_with(&target, *m)?,
                None => ex.extract(&target)?,
            };
            Ok(("coeff".into(), Output::Coefficients(vec![CoeffRow::from(&rec)])))
        }
        Command::Table { k } => {
            let ex = extractor(cli, &cache);
            let table = a_table(&ex, *k)?;
            let sym = symmetry_report(&table);
            Ok(("table".into(), Output::Table(TableDoc::new(&table, sym))))
        }
        Command::Certify { conjecture, k, family, j } => {
            let family = family.unwrap_or(match conjecture {
                Conjecture::Alspach => Family::C,
                Conjecture::Gadms => Family::E,
            });
            let js = match j {
                Some(s) => parse_index_list(s).map_err(CliError::Usage)?,
                None => (1..=*k).collect(),
            };
            let ex = extractor(cli, &cache);
            let cert = certify(&ex, *conjecture, *k, family, &js)?;
            Ok(("certify".into(), Output::Certificate(Box::new(cert))))
        }
        Command::Order { group, set, variant, budget } => {
            let budget = budget.map(SearchBudget).unwrap_or_default();
            Ok(("order".into(), Output::Order(Box::new(order_doc(*group, set, *variant, budget)?))))
        }
        Command::Sweep { group, k, variant, max_subsets, budget } => {
            let GroupSpec::Cyclic(n) = group else {
                return Err(CliError::Usage(format!("sweeps need a cyclic group, got {group}")));
            };
            let b = SweepBudget { max_subsets: *max_subsets, search: SearchBudget(*budget) };
            let reports = variants(*variant).into_iter().map(|v| sweep(*n, *k, v, b)).collect::<Result<_, _>>()?;
            Ok(("sweep".into(), Output::Sweep(reports)))
        }
        Command::Consistency { k, p, variant, max_subsets } => {
            let ex = extractor(cli, &cache);
            let b = SweepBudget { max_subsets: *max_subsets, ..SweepBudget::default() };
            let mut reports = Vec::new();
            for v in variants(*variant) {
                match nullstellensatz_consistency(&ex, *k, *p, v, b) {
                    Ok(r) => reports.push(r),
                    // no certificate speaks about this size for v
                    Err(GroupError::Null(NullError::InvalidTarget(_))) if variant.is_none() => {}
                    Err(e) => return Err(e.into()),
                }
            }
            if reports.is_empty() {
                return Err(CliError::Usage(format!("no certificate covers subsets of size {k}")));
            }
            Ok(("consistency".into(), Output::Consistency(reports)))
        }
        Command::Cache { action } => cache_command(cli, action),
    }
}

fn cache_command(cli: &Cli, action: &CacheAction) -> Result<(String, Output), CliError> {
    let path = cli.cache.clone().ok_or_else(|| CliError::Usage("no cache path (use --cache or NULLSUM_CACHE)".into()))?;
    let cache = JsonlCache::open(&path)?;
    let shown = path.display().to_string();
    let doc = |action: &str, count, records, mismatches| CacheDoc {
        action: action.into(),
        path: shown.clone(),
        count,
        records,
        mismatches,
    };
    let out = match action {
        CacheAction::List => {
            let records = cache.list();
            doc("list", records.len(), records, vec![])
        }
        CacheAction::Clear => doc("clear", cache.clear()?, vec![], vec![]),
        CacheAction::Import { file } => doc("import", cache.import(file)?, vec![], vec![]),
        CacheAction::Export { file } => doc("export", cache.export(file)?, vec![], vec![]),
        CacheAction::Verify { sample } => {
            let current = crate::cache::config_hash();
            let records: Vec<_> = cache.list().into_iter().filter(|r| r.config == current).collect();
            let step = records.len().div_ceil((*sample).max(1)).max(1);
            let ex = Extractor::new(extract_config(cli));
            let mut checked = 0;
            let mut mismatches = Vec::new();
            for r in records.iter().step_by(step) {
                let fresh = ex.extract(&r.record.target)?;
                checked += 1;
                if fresh.value != r.record.value {
                    mismatches.push(format!("{}: cached {} recomputed {}", r.record.target, r.record.value, fresh.value));
                }
            }
            if !mismatches.is_empty() {
                return Err(CliError::Other(format!("cache disagrees with recomputation: {}", mismatches.join("; "))));
            }
            doc("verify", checked, vec![], mismatches)
        }
    };
    Ok(("cache".into(), Output::Cache(out)))
}

fn conjecture_failure(out: &Output) -> Option<String> {
    match out {
        Output::Sweep(reports) => {
            let bad: Vec<String> = reports
                .iter()
                .filter(|r| !r.failures.is_empty())
                .map(|r| format!("{} set(s) in Z{} ({}) have no valid ordering", r.failures.len(), r.n, r.variant))
                .collect();
            (!bad.is_empty()).then(|| bad.join("; "))
        }
        Output::Consistency(reports) => {
            let bad: Vec<String> = reports
                .iter()
                .filter(|r| !r.agree)
                .map(|r| format!("certificate and sweep disagree for {} k={} p={}", r.variant, r.k, r.p))
                .collect();
            (!bad.is_empty()).then(|| bad.join("; "))
        }
        _ => None,
    }
}

/// Runs a parsed command line. A conjecture-relevant failure still carries
/// its report.
pub fn run(cli: &Cli) -> Result<Document, CliError> {
    let start = Instant::now();
    let (command, result) = result_for(cli)?;
    let doc = Document {
        command,
        result,
        meta: Meta {
            version: env!("CARGO_PKG_VERSION").to_string(),
            workers: rayon::current_num_threads(),
            wall_ms: (start.elapsed().as_secs_f64() * 1e3).round(),
        },
    };
    if let Some(message) = conjecture_failure(&doc.result) {
        return Err(CliError::Conjecture { message, document: Some(Box::new(doc)) });
    }
    Ok(doc)
}
