use std::fs;

use serde_json::json;

use qhodge::local_p2::LocalP2;
use qhodge::report::CheckReport;
use qhodge::ring::rint;
use qhodge::twoparam::{self, TwoParamPrepotential, TwoParamTable};

use crate::args::{TwoParamArgs, TwoParamCmd};
use crate::config::RunConfig;
use crate::output::{reports_output, Output};
use crate::CliError;

pub fn run(cmd: &TwoParamCmd, cfg: &RunConfig) -> Result<(Output, Option<String>), CliError> {
    let (args, title) = match cmd {
        TwoParamCmd::LimitCheck(a) => (a, "q1 -> 0 limit"),
        TwoParamCmd::BasisCheck(a) => (a, "basis change onto the local frame"),
    };
    let (pre, local) = setup(args, cfg.order)?;
    let report = match cmd {
        TwoParamCmd::LimitCheck(_) => twoparam::limit_check(&pre, &local)?,
        TwoParamCmd::BasisCheck(_) => twoparam::basis_change_check(&pre, &local)?,
    };
    let extra = json!({ "n1": args.n1, "n2": cfg.order, "entries": pre.table.entries().len() });
    Ok(reports_output(title, &[report], extra))
}

fn setup(args: &TwoParamArgs, n2: usize) -> Result<(TwoParamPrepotential, LocalP2), CliError> {
    if args.n1 == 0 {
        return Err(CliError::Usage("--n1 must be at least 1".into()));
    }
    let local = LocalP2::new(n2)?;
    let table = match &args.table {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|source| CliError::Io { context: format!("reading {}", path.display()), source })?;
            TwoParamTable::from_json_str(&text)?
        }
        None => TwoParamTable::from_local(&local.table, args.n1, n2, |_, _| rint(0)),
    };
    Ok((TwoParamPrepotential::new(table, args.n1, n2), local))
}

pub(crate) fn default_reports(n2: usize) -> Result<Vec<CheckReport>, CliError> {
    let args = TwoParamArgs { table: None, n1: 3 };
    let (pre, local) = setup(&args, n2)?;
    Ok(vec![twoparam::limit_check(&pre, &local)?, twoparam::basis_change_check(&pre, &local)?])
}
