use std::fs;
use std::io::Read;
use std::path::Path;

use serde_json::json;

use qhodge::filtration::{
    deligne_bigrading, failing_pairs, polarization_check, relative_weight_check, symbol_conj,
    weight_filtration, ExactMatrix, Filtration, MhsInput, NilpotentOperator,
};

use crate::args::{MhsArgs, MhsCmd};
use crate::output::{reports_output, Output, Table};
use crate::CliError;

pub fn run(cmd: &MhsCmd) -> Result<(Output, Option<String>), CliError> {
    match cmd {
        MhsCmd::WeightFiltration(a) => weight(a),
        MhsCmd::Bigrading(a) => bigrading(a),
        MhsCmd::RelativeCheck(a) => relative(a),
    }
}

fn read_input(path: &Path) -> Result<MhsInput, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { context: "reading stdin".into(), source })?;
        s
    } else {
        fs::read_to_string(path)
            .map_err(|source| CliError::Io { context: format!("reading {}", path.display()), source })?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid MHS input: {e}")))
}

fn operator(input: &MhsInput) -> Result<NilpotentOperator, CliError> {
    let raw = input.n.as_ref().ok_or_else(|| CliError::Usage("input has no \"N\" matrix".into()))?;
    Ok(NilpotentOperator::new(ExactMatrix::from_json(raw)?)?)
}

fn center(args: &MhsArgs, input: &MhsInput) -> Result<i32, CliError> {
    args.center
        .or(input.center)
        .ok_or_else(|| CliError::Usage("no center given (input \"center\" or --center)".into()))
}

fn filtration(raw: Option<&qhodge::filtration::FiltrationJson>, name: &str) -> Result<Filtration, CliError> {
    let raw = raw.ok_or_else(|| CliError::Usage(format!("input has no \"{name}\" filtration")))?;
    Ok(Filtration::from_json(raw)?)
}

fn weight(args: &MhsArgs) -> Result<(Output, Option<String>), CliError> {
    let input = read_input(&args.input)?;
    let n = operator(&input)?;
    let c = center(args, &input)?;
    let m = weight_filtration(&n, c)?;
    let span = n.dim() as i32;
    let mut table = Table::new(&["index", "dim", "graded_dim"]);
    let mut jumps = Vec::new();
    for a in c - span..=c + span {
        let gr = m.graded_dim(a);
        if gr > 0 {
            jumps.push(a);
        }
        table.push(vec![a.to_string(), m.get(a).dim().to_string(), gr.to_string()]);
    }
    let text = format!(
        "monodromy weight filtration, index {}, center {c}\n{}jumps at {:?}\n",
        n.index(),
        table.to_text(),
        jumps
    );
    let json = json!({ "center": c, "index": n.index(), "filtration": m.to_json(), "jumps": jumps });
    Ok((Output { text, json, table: Some(table) }, None))
}

fn bigrading(args: &MhsArgs) -> Result<(Output, Option<String>), CliError> {
    let input = read_input(&args.input)?;
    let f = filtration(input.f.as_ref(), "F")?;
    let w = match input.w.as_ref().or(input.m.as_ref()) {
        Some(raw) => Filtration::from_json(raw)?,
        None => weight_filtration(&operator(&input)?, center(args, &input)?)?,
    };
    let grading = deligne_bigrading(&f, &w, &symbol_conj)?;
    let mut reports = vec![grading.check_properties(&f, &w, &symbol_conj)];
    if let (Some(q), Some(weight)) = (input.q.as_ref(), input.weight) {
        let q = ExactMatrix::from_json(q)?;
        reports.push(polarization_check(&q, &operator(&input)?, &f, weight)?);
    }
    let mut table = Table::new(&["p", "q", "dim"]);
    for ((p, q), d) in grading.dims() {
        table.push(vec![p.to_string(), q.to_string(), d.to_string()]);
    }
    let dims: Vec<_> = grading.dims().into_iter().map(|((p, q), d)| json!([p, q, d])).collect();
    let (mut out, failure) = reports_output("Deligne bigrading", &reports, json!({ "dims": dims }));
    out.text = format!("I^{{p,q}} dimensions\n{}{}", table.to_text(), out.text);
    out.table = Some(table);
    Ok((out, failure))
}

fn relative(args: &MhsArgs) -> Result<(Output, Option<String>), CliError> {
    let input = read_input(&args.input)?;
    let n = operator(&input)?;
    let w = filtration(input.w.as_ref(), "W")?;
    let m = filtration(input.m.as_ref(), "M")?;
    let report = relative_weight_check(&n, &w, &m)?;
    let pairs = failing_pairs(&report);
    Ok(reports_output("relative weight filtration", &[report], json!({ "failing_pairs": pairs })))
}
