use std::time::Instant;

use serde_json::json;

use qhodge::filtration::{
    deligne_bigrading, polarization_check, symbol_conj, weight_filtration, ExactMatrix, Filtration,
    NilpotentOperator, SymFrac,
};
use qhodge::local_p2::{self, LocalP2};
use qhodge::quintic_b::{self, QuinticB};
use qhodge::report::CheckReport;
use qhodge::ring::rint;

use super::{local, quintic, twoparam};
use crate::config::RunConfig;
use crate::output::{reports_output, Output};
use crate::CliError;

fn quintic_numbers() -> Result<Vec<CheckReport>, CliError> {
    let mut r = CheckReport::new("quintic instanton numbers");
    let b = QuinticB::new(4)?;
    for (d, want) in [(1u32, 2875i64), (2, 609250), (3, 317206375)] {
        r.require(b.table.bps(d) == Some(&want.into()), || format!("n_{d} != {want}"));
    }
    let b8 = QuinticB::new(8)?;
    Ok(vec![r, b8.connection_check(), b8.invariance_check()])
}

fn local_checks() -> Result<Vec<CheckReport>, CliError> {
    let m = LocalP2::new(12)?;
    let mut r = CheckReport::new("local BPS numbers and c(Q)");
    for (d, want) in [(1u32, 3i64), (2, -6), (3, 27), (4, -192), (5, 1695)] {
        r.require(m.table.bps(d) == Some(&want.into()), || format!("n_{d} != {want}"));
    }
    let c = m.syz_c()?;
    let lead: Vec<_> = c.coeffs()[..4].to_vec();
    r.require(lead == vec![rint(1), rint(-2), rint(5), rint(-32)], || "c(Q) leading coefficients".into());
    let mut out = vec![r, m.footnote_check()?, m.prepotential_check()?];
    out.extend(local::nabla_reports(10)?);
    Ok(out)
}

fn filtration_checks() -> Result<Vec<CheckReport>, CliError> {
    let nq = NilpotentOperator::new(ExactMatrix::from_rat_rows(&quintic_b::n_gamma()))?;
    let mq = weight_filtration(&nq, 3)?;
    let mut r = CheckReport::new("weight filtrations");
    let dims: Vec<usize> = (0..=6).map(|a| mq.graded_dim(a)).collect();
    r.require(dims == vec![1, 0, 1, 0, 1, 0, 1], || format!("quintic graded dims {dims:?}"));
    let nl = NilpotentOperator::new(ExactMatrix::from_rat_rows(&local_p2::n_gamma()))?;
    let ml = weight_filtration(&nl, 4)?;
    let dims: Vec<usize> = (2..=6).map(|a| ml.graded_dim(a)).collect();
    r.require(dims == vec![1, 0, 1, 0, 1], || format!("local graded dims {dims:?}"));
    let cols: Vec<Vec<SymFrac>> = quintic_b::limiting_period_matrix().columns();
    let f = Filtration::from_flag(4, &cols, 0, 3, |p| (4 - p) as usize)?;
    let grading = deligne_bigrading(&f, &mq, &symbol_conj)?;
    let q = ExactMatrix::from_rat_rows(&quintic_b::q_gamma());
    Ok(vec![r, grading.check_properties(&f, &mq, &symbol_conj), polarization_check(&q, &nq, &f, 3)?])
}

pub fn run(cfg: &RunConfig) -> Result<(Output, Option<String>), CliError> {
    let start = Instant::now();
    let mut reports = Vec::new();
    reports.extend(quintic_numbers()?);
    reports.extend(quintic::gamma_reports(8)?);
    reports.extend(local_checks()?);
    reports.push(local::regulator_report(&local::regulator(cfg, 150)?));
    reports.extend(twoparam::default_reports(10)?);
    reports.extend(filtration_checks()?);
    let elapsed = start.elapsed().as_secs_f64();
    let (mut out, failure) = reports_output("selftest", &reports, json!({ "reports": reports.len() }));
    out.text.push_str(&format!("{} reports in {elapsed:.2}s\n", reports.len()));
    Ok((out, failure))
}
