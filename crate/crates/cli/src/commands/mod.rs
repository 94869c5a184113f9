mod local;
mod mhs;
mod quintic;
mod selftest;
mod twoparam;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use qhodge::instanton::{InstantonTable, TableJson};
use qhodge::ring::{parse_rat, rat_to_string, Rat};
use qhodge::series::RatSeries;

use crate::args::Command;
use crate::cache::{Cache, Lookup};
use crate::config::RunConfig;
use crate::output::{Outcome, Output, Table};
use crate::CliError;

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (output, failure) = match command {
        Command::Quintic(c) => quintic::run(c, cfg)?,
        Command::Localp2(c) => local::run(c, cfg)?,
        Command::Twoparam(c) => twoparam::run(c, cfg)?,
        Command::Mhs(c) => mhs::run(c)?,
        Command::Selftest => selftest::run(cfg)?,
    };
    Ok(Outcome { output, failure, format: cfg.format })
}

/// Loads `pipeline(params)` from the cache or computes and stores it.
/// Stale, corrupted or undecodable entries are recomputed.
pub fn cached<T, F>(cfg: &RunConfig, pipeline: &str, params: &[(&str, String)], compute: F) -> Result<T, CliError>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, CliError>,
{
    let Some(cache) = cfg.cache() else { return compute() };
    let key = Cache::key(pipeline, params);
    match cache.load(&key)? {
        Lookup::Hit(payload) => match serde_json::from_str(&payload) {
            Ok(v) => return Ok(v),
            Err(e) => eprintln!("cache: undecodable payload for {pipeline} ({e}), recomputing"),
        },
        Lookup::Miss => {}
        Lookup::Stale { found } => eprintln!("cache: ignoring {pipeline} entry from {found}"),
        Lookup::Corrupt(why) => eprintln!("cache: {why} for {pipeline}, recomputing"),
    }
    let value = compute()?;
    cache.store(&key, &serde_json::to_string(&value).expect("payload serializes"))?;
    Ok(value)
}

pub(crate) fn series_strings(s: &RatSeries) -> Vec<String> {
    s.coeffs().iter().map(rat_to_string).collect()
}

pub(crate) fn parse_coeffs(raw: &[String]) -> Result<Vec<Rat>, CliError> {
    raw.iter()
        .map(|c| parse_rat(c).ok_or_else(|| CliError::Invariant(format!("bad cached coefficient {c:?}"))))
        .collect()
}

/// Coefficient table of several series sharing a variable.
pub(crate) fn series_output(title: &str, var: &str, columns: &[(&str, Vec<Rat>)]) -> Output {
    let len = columns.iter().map(|c| c.1.len()).min().unwrap_or(0);
    let mut header = vec!["k"];
    header.extend(columns.iter().map(|c| c.0));
    let mut exact = Table::new(&header);
    let mut pretty = Table::new(&header);
    for k in 0..len {
        let mut e = vec![k.to_string()];
        let mut p = vec![k.to_string()];
        for (_, c) in columns {
            e.push(rat_to_string(&c[k]));
            p.push(c[k].to_string());
        }
        exact.push(e);
        pretty.push(p);
    }
    let series: serde_json::Map<String, serde_json::Value> = columns
        .iter()
        .map(|(name, c)| (name.to_string(), json!(c.iter().map(rat_to_string).collect::<Vec<_>>())))
        .collect();
    Output {
        text: format!("{title} (coefficients of {var}^k)\n{}", pretty.to_text()),
        json: json!({ "title": title, "variable": var, "series": series }),
        table: Some(exact),
    }
}

pub(crate) fn table_output(title: &str, table: &InstantonTable) -> Output {
    let mut exact = Table::new(&["d", "N_d", "n_d"]);
    let mut pretty = Table::new(&["d", "N_d", "n_d"]);
    for e in table.entries() {
        exact.push(vec![e.degree.to_string(), rat_to_string(&e.gw), e.bps.to_string()]);
        pretty.push(vec![e.degree.to_string(), e.gw.to_string(), e.bps.to_string()]);
    }
    Output {
        text: format!("{title}\n{}", pretty.to_text()),
        json: json!({ "title": title, "table": table.to_json() }),
        table: Some(exact),
    }
}

pub(crate) fn cached_table(
    cfg: &RunConfig,
    pipeline: &str,
    upto: usize,
    compute: impl FnOnce(usize) -> Result<InstantonTable, CliError>,
) -> Result<InstantonTable, CliError> {
    let raw: TableJson = cached(cfg, pipeline, &[("upto", upto.to_string())], || Ok(compute(upto)?.to_json()))?;
    InstantonTable::from_json(&raw).map_err(|e| CliError::Invariant(e.to_string()))
}

pub(crate) fn default_upto(cfg: &RunConfig, upto: Option<usize>) -> Result<usize, CliError> {
    let upto = upto.unwrap_or(cfg.order - 1);
    if upto == 0 {
        return Err(CliError::Usage("--upto must be at least 1".into()));
    }
    Ok(upto)
}
