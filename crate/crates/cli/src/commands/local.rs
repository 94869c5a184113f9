use serde_json::json;

use qhodge::local_p2::{self, LocalP2, RegulatorReport};
use qhodge::report::CheckReport;

use super::{cached, cached_table, default_upto, parse_coeffs, series_output, series_strings, table_output};
use crate::args::LocalCmd;
use crate::config::RunConfig;
use crate::output::{first_failure, reports_output, Output, Table};
use crate::CliError;

pub fn run(cmd: &LocalCmd, cfg: &RunConfig) -> Result<(Output, Option<String>), CliError> {
    let n = cfg.order;
    let order = [("order", n.to_string())];
    match cmd {
        LocalCmd::Periods => {
            let raw: [Vec<String>; 3] = cached(cfg, "localp2.periods", &order, || {
                let p = local_p2::elliptic_periods(n)?;
                Ok([
                    series_strings(&p.series[0]),
                    series_strings(&p.series[1]),
                    series_strings(&local_p2::hole_series(n)),
                ])
            })?;
            let cols = [
                ("pi0", parse_coeffs(&raw[0])?),
                ("A1", parse_coeffs(&raw[1])?),
                ("B", parse_coeffs(&raw[2])?),
            ];
            Ok((series_output("local P2 periods", "s", &cols), None))
        }
        LocalCmd::MirrorMap => {
            let raw: [Vec<String>; 2] = cached(cfg, "localp2.mirror-map", &order, || {
                let m = local_p2::local_mirror_map(n)?;
                Ok([series_strings(&m.q_of_s), series_strings(&m.s_of_q)])
            })?;
            let cols = [("Q(s)", parse_coeffs(&raw[0])?), ("s(Q)", parse_coeffs(&raw[1])?)];
            Ok((series_output("local P2 mirror map", "s resp. Q", &cols), None))
        }
        LocalCmd::Gw { upto } => {
            let upto = default_upto(cfg, *upto)?;
            let table = cached_table(cfg, "localp2.gw", upto, |d| Ok(local_p2::local_gw(d)?))?;
            Ok((table_output("local P2 GW and BPS numbers", &table), None))
        }
        LocalCmd::Prepotential => {
            let m = LocalP2::new(n)?;
            let phi = m.prepotential().to_string();
            let reports = [m.prepotential_check()?, m.footnote_check()?];
            let (mut out, failure) = reports_output("local prepotential", &reports, json!({ "phi": phi }));
            out.text = format!("Φ(T) = {phi}\n{}", out.text);
            Ok((out, failure))
        }
        LocalCmd::NablaCheck => {
            let reports = nabla_reports(n)?;
            Ok(reports_output("local connection", &reports, json!({ "order": n })))
        }
        LocalCmd::Syz => {
            let raw: Vec<String> = cached(cfg, "localp2.syz", &order, || Ok(series_strings(&local_p2::syz_c(n)?)))?;
            let coeffs = parse_coeffs(&raw)?;
            let mut out = series_output("c(Q)", "Q", &[("c", coeffs.clone())]);
            let row: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            out.text = format!("{}\n", row.join(", "));
            Ok((out, None))
        }
        LocalCmd::Regulator { max_d } => {
            if *max_d < 3 {
                return Err(CliError::Usage("--max-d must be at least 3".into()));
            }
            let rep = regulator(cfg, *max_d)?;
            Ok(regulator_output(&rep))
        }
    }
}

pub(crate) fn nabla_reports(n: usize) -> Result<Vec<CheckReport>, CliError> {
    let m = LocalP2::new(n)?;
    Ok(vec![m.prop_nabla_check(), m.connection_check()?, m.invariance_check()?])
}

pub(crate) fn regulator(cfg: &RunConfig, max_d: usize) -> Result<RegulatorReport, CliError> {
    let table = cached_table(cfg, "localp2.gw", max_d, |d| Ok(local_p2::local_gw(d)?))?;
    local_p2::regulator_growth_from(&table, cfg.precision).map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn regulator_report(rep: &RegulatorReport) -> CheckReport {
    let mut r = CheckReport::new("regulator growth");
    r.require(rep.relative_error < local_p2::GROWTH_TOLERANCE, || {
        format!("Domb–Sykes {} vs {} (relative error {:.3e})", rep.domb_sykes, rep.growth, rep.relative_error)
    });
    r.require(rep.monotone_tail, || "ratios not monotone over the last 50 degrees".into());
    r.require(rep.passed, || "regulator check failed".into());
    r
}

fn regulator_output(rep: &RegulatorReport) -> (Output, Option<String>) {
    let rows: Vec<(&str, String)> = vec![
        ("max_d", rep.max_d.to_string()),
        ("precision", rep.precision.to_string()),
        ("L(chi_-3,2)", rep.l_value.clone()),
        ("L error bound", format!("{:.3e}", rep.l_error_bound)),
        ("L direct sum", format!("{:.15}", rep.l_direct)),
        ("L direct stability", format!("{:.3e}", rep.l_direct_stability)),
        ("Im T0", format!("{:.12}", rep.im_t0)),
        ("exp(2 pi Im T0)", format!("{:.10}", rep.growth)),
        ("|N_d|^(1/d)", format!("{:.10}", rep.root_estimate)),
        ("last ratio", format!("{:.10}", rep.ratio_last)),
        ("Domb-Sykes", format!("{:.10}", rep.domb_sykes)),
        ("relative error", format!("{:.3e}", rep.relative_error)),
        ("tolerance", format!("{}", local_p2::GROWTH_TOLERANCE)),
        ("monotone tail", rep.monotone_tail.to_string()),
        ("passed", rep.passed.to_string()),
    ];
    let mut table = Table::new(&["quantity", "value"]);
    for (k, v) in &rows {
        table.push(vec![k.to_string(), v.clone()]);
    }
    let text = format!("{}\n{}\n", rep.closed_form, table.to_text().trim_end());
    let report = regulator_report(rep);
    let failure = first_failure(std::slice::from_ref(&report));
    (Output { text, json: json!(rep), table: Some(table) }, failure)
}
