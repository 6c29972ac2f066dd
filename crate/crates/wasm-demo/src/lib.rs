//! Browser bindings. Every export takes plain strings or numbers and returns
//! a JSON document; errors come back as thrown strings.

use nullsum_core::grouplab::syntax::{parse_scalars, parse_vectors};
use nullsum_core::grouplab::{
    find_ordering_within, order_in_free_group, sweep, Cyclic, Free, GroupSpec, NiceSet, SearchBudget, SweepBudget,
    Variant,
};
use nullsum_core::nullstellensatz::{a_table, ExtractConfig, Extractor};
use nullsum_core::polycore::TermLimit;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps a page responsive: the search and the table stay small.
const SEARCH_BUDGET: SearchBudget = SearchBudget(2_000_000);
const MAX_TABLE_K: usize = 7;
const MAX_SWEEP_SUBSETS: u64 = 200_000;

#[derive(Serialize)]
struct OrderView {
    ordering: serde_json::Value,
    partial_sums: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    base: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    prime: Option<u64>,
}

#[derive(Serialize)]
struct TableView {
    k: usize,
    /// `a[j-1][i-1]`, null on the diagonal.
    a: Vec<Vec<Option<String>>>,
    e: Vec<String>,
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

pub fn order_json(group: &str, set: &str, variant: &str) -> Result<String, String> {
    let group: GroupSpec = group.parse().map_err(|e| format!("{e}"))?;
    let variant: Variant = variant.parse().map_err(|e| format!("{e}"))?;
    let err = |e: nullsum_core::grouplab::GroupError| e.to_string();
    let view = match group {
        GroupSpec::Cyclic(n) => {
            let elems = parse_scalars(set)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| format!("{x} is not a residue mod {n}")))
                .collect::<Result<Vec<u64>, _>>()?;
            let s = NiceSet::new(Cyclic::new(n).map_err(err)?, elems, variant).map_err(err)?;
            let o = find_ordering_within(&s, SEARCH_BUDGET).map_err(err)?.ok_or("no valid ordering")?;
            OrderView {
                ordering: serde_json::json!(o.entries),
                partial_sums: serde_json::json!(o.partial_sums),
                base: None,
                prime: None,
            }
        }
        GroupSpec::Integers | GroupSpec::Free(_) => {
            let (rank, elems) = match group {
                GroupSpec::Free(m) => (m, parse_vectors(set, m)?),
                _ => (1, parse_scalars(set)?.into_iter().map(|x| vec![x]).collect()),
            };
            let s = NiceSet::new(Free::new(rank).map_err(err)?, elems, variant).map_err(err)?;
            let t = order_in_free_group(&s, SEARCH_BUDGET).map_err(err)?;
            let flat = |v: &[Vec<i64>]| {
                if rank == 1 {
                    serde_json::json!(v.iter().map(|z| z[0]).collect::<Vec<_>>())
                } else {
                    serde_json::json!(v)
                }
            };
            OrderView {
                ordering: flat(&t.ordering.entries),
                partial_sums: flat(&t.ordering.partial_sums),
                base: Some(t.embedding.base),
                prime: Some(t.prime),
            }
        }
    };
    Ok(json(&view))
}

pub fn table_json(k: usize) -> Result<String, String> {
    if !(2..=MAX_TABLE_K).contains(&k) {
        return Err(format!("k must be in 2..={MAX_TABLE_K} in the browser"));
    }
    let ex = Extractor::new(ExtractConfig { limit: TermLimit(5_000_000), ..ExtractConfig::default() });
    let t = a_table(&ex, k).map_err(|e| e.to_string())?;
    let a = (1..=k).map(|j| (1..=k).map(|i| t.get(i, j).map(|v| v.to_string())).collect()).collect();
    Ok(json(&TableView { k, a, e: t.e.iter().map(|v| v.to_string()).collect() }))
}

pub fn sweep_json(n: u64, k: usize, variant: &str) -> Result<String, String> {
    let variant: Variant = variant.parse().map_err(|e| format!("{e}"))?;
    let budget = SweepBudget { max_subsets: MAX_SWEEP_SUBSETS, search: SEARCH_BUDGET };
    let r = sweep(n, k, variant, budget).map_err(|e| e.to_string())?;
    Ok(json(&r))
}

#[wasm_bindgen]
pub fn order(group: &str, set: &str, variant: &str) -> Result<String, JsValue> {
    order_json(group, set, variant).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn coefficient_table(k: usize) -> Result<String, JsValue> {
    table_json(k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = sweepCyclic)]
pub fn sweep_cyclic(n: u32, k: usize, variant: &str) -> Result<String, JsValue> {
    sweep_json(n as u64, k, variant).map_err(|e| JsValue::from_str(&e))
}
