use serde_json::json;

use qhodge::numeric;
use qhodge::quintic_a::AModel;
use qhodge::quintic_b::{self, QuinticB};
use qhodge::report::CheckReport;
use qhodge::series::Var;

use super::{cached, cached_table, default_upto, parse_coeffs, series_output, series_strings, table_output};
use crate::args::QuinticCmd;
use crate::config::RunConfig;
use crate::output::{first_failure, reports_output, Output, Table};
use crate::CliError;

const GAMMA_LABELS: [&str; 4] = ["γ3", "γ2", "γ1", "γ0"];

pub fn run(cmd: &QuinticCmd, cfg: &RunConfig) -> Result<(Output, Option<String>), CliError> {
    let n = cfg.order;
    let order = [("order", n.to_string())];
    match cmd {
        QuinticCmd::Periods => {
            let raw: Vec<Vec<String>> = cached(cfg, "quintic.periods", &order, || {
                Ok(quintic_b::operator().frobenius_series(Var::S, n).iter().map(series_strings).collect())
            })?;
            let cols = raw.iter().map(|c| parse_coeffs(c)).collect::<Result<Vec<_>, _>>()?;
            let named: Vec<(&str, _)> = ["A0", "A1", "A2", "A3"].into_iter().zip(cols).collect();
            Ok((series_output("quintic Frobenius series", "s", &named), None))
        }
        QuinticCmd::MirrorMap => {
            let raw: [Vec<String>; 2] = cached(cfg, "quintic.mirror-map", &order, || {
                let m = quintic_b::mirror_map(n)?;
                Ok([series_strings(&m.q_of_s), series_strings(&m.s_of_q)])
            })?;
            let cols = [("q(s)", parse_coeffs(&raw[0])?), ("s(q)", parse_coeffs(&raw[1])?)];
            Ok((series_output("quintic mirror map", "s resp. q", &cols), None))
        }
        QuinticCmd::Yukawa => {
            let raw: Vec<String> =
                cached(cfg, "quintic.yukawa", &order, || Ok(series_strings(&quintic_b::yukawa(n)?)))?;
            Ok((series_output("quintic Yukawa coupling", "q", &[("Y", parse_coeffs(&raw)?)]), None))
        }
        QuinticCmd::Gw { upto } => {
            let upto = default_upto(cfg, *upto)?;
            let table = cached_table(cfg, "quintic.gw", upto, |d| Ok(quintic_b::instanton_numbers(d)?))?;
            Ok((table_output("quintic GW and instanton numbers", &table), None))
        }
        QuinticCmd::HodgeBasis => hodge_basis(n),
        QuinticCmd::Lmhs => lmhs(n, cfg.precision),
        QuinticCmd::GammaCheck => {
            let reports = gamma_reports(n)?;
            Ok(reports_output("Γ̂ integral structure", &reports, json!({ "order": n })))
        }
    }
}

fn hodge_basis(n: usize) -> Result<(Output, Option<String>), CliError> {
    let b = QuinticB::new(n)?;
    let basis = b.hodge_basis();
    let mut table = Table::new(&["vector", "component", "coefficient"]);
    let mut text = String::from("quintic Hodge basis over (γ3, γ2, γ1, γ0)\n");
    let mut map = serde_json::Map::new();
    for (i, e) in basis.iter().enumerate() {
        let mut comps = serde_json::Map::new();
        text.push_str(&format!("e{i}:\n"));
        for (label, c) in GAMMA_LABELS.iter().zip(e) {
            let s = c.to_string();
            text.push_str(&format!("  {label}: {s}\n"));
            table.push(vec![format!("e{i}"), label.to_string(), s.clone()]);
            comps.insert(label.to_string(), json!(s));
        }
        map.insert(format!("e{i}"), serde_json::Value::Object(comps));
    }
    let reports = [b.connection_check(), b.invariance_check()];
    let (checks, failure) = reports_output("checks", &reports, json!(null));
    text.push_str(&checks.text);
    let json = json!({ "order": n, "basis": map, "checks": checks.json });
    Ok((Output { text, json, table: Some(table) }, failure))
}

fn lmhs(n: usize, precision: u32) -> Result<(Output, Option<String>), CliError> {
    let a = AModel::new(n)?;
    let m = a.lmhs_recovery();
    let report = a.lmhs_check();
    let mut table = Table::new(&["row", "col", "entry"]);
    let mut text = String::from("limiting period matrix (columns e3, e2, e1, e0 over γ3..γ0)\n");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| m.get(i, j).to_string()).collect();
        text.push_str(&format!("  [{}]\n", row.join(", ")));
        for (j, e) in row.into_iter().enumerate() {
            table.push(vec![(i + 1).to_string(), (j + 1).to_string(), e]);
        }
    }
    let alpha0 = m.get(3, 0).as_scalar().cloned().unwrap_or_default();
    let value = numeric::ts_eval(&alpha0, precision).map_err(|e| CliError::Usage(e.to_string()))?;
    let re = numeric::to_decimal(&value.re, precision);
    let im = numeric::to_decimal(&value.im, precision);
    let bound = format!("{:.3e}", value.error_f64());
    text.push_str(&format!("alpha0 = {alpha0} = {re} + {im} i  (error bound {bound})\n"));
    text.push_str(&format!("{}\n", report.summary()));
    let failure = first_failure(std::slice::from_ref(&report));
    let json = json!({
        "matrix": m.to_json(),
        "alpha0": { "symbolic": alpha0.to_json(), "re": re, "im": im, "error_bound": bound },
        "report": report,
        "passed": failure.is_none(),
    });
    Ok((Output { text, json, table: Some(table) }, failure))
}

pub(crate) fn gamma_reports(n: usize) -> Result<Vec<CheckReport>, CliError> {
    let a = AModel::new(n)?;
    let b = QuinticB::new(n)?;
    Ok(vec![
        a.gamma.verify(),
        a.flatness_check()?,
        a.pairing_check()?,
        a.monodromy_check()?,
        a.lmhs_check(),
        a.inverse_basis_check(&b.hodge_basis())?,
    ])
}
