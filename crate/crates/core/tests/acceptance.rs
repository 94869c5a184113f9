//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any failed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational as Rat;
use qhodge::filtration::{
    deligne_bigrading, failing_pairs, polarization_check, relative_weight_check, symbol_conj,
    weight_filtration, ExactMatrix, Filtration, NilpotentOperator, Subspace, SymFrac,
};
use qhodge::local_p2::{self, LocalP2};
use qhodge::quintic_a::{pairing, AModel, KClass};
use qhodge::quintic_b::{self, QuinticB};
use qhodge::report::CheckReport;
use qhodge::ring::Ring;
use qhodge::scalar::{Monomial, TwistedScalar};
use qhodge::series::{Series, Var};
use qhodge::taupoly::TauPoly;
use qhodge::twoparam::{self, TwoParamPrepotential, TwoParamTable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::r as q;

const GROWTH_DEGREE: usize = 150;
const L_PRECISION_DIGITS: u32 = 20;
const L_STABILITY: f64 = 1e-8;
const MONOTONE_WINDOW: usize = 50;

type Outcome = Result<CheckReport, String>;

fn check(r: &mut CheckReport, ok: bool, msg: &str) {
    r.require(ok, || msg.to_string());
}

fn quintic_instantons() -> Outcome {
    let mut r = CheckReport::new("quintic instanton numbers");
    let b = QuinticB::new(4).map_err(|e| e.to_string())?;
    let want = [2875i64, 609250, 317206375];
    for (d, n) in want.iter().enumerate() {
        let got = b.table.bps(d as u32 + 1).cloned();
        r.require(got == Some((*n).into()), || format!("n_{} = {got:?}, expected {n}", d + 1));
    }
    let naive = common::quintic_gw(4);
    for d in 1..=3u32 {
        r.require(b.table.gw(d) == naive[d as usize - 1], || format!("N_{d} differs from the naive pipeline"));
    }
    Ok(r)
}

fn gamma_structure() -> Outcome {
    let mut r = CheckReport::new("Γ̂ integral structure");
    let a = AModel::new(8).map_err(|e| e.to_string())?;
    let qg = quintic_b::q_gamma();
    let gammas = (0..4)
        .map(|k| a.gamma_flat(&KClass::basis(k)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    // ξ_k pairs like γ_k; [Q]_γ is indexed (γ3, γ2, γ1, γ0)
    for i in 0..4 {
        for j in 0..4 {
            let got = pairing(&gammas[i], &gammas[j]).map_err(|e| e.to_string())?;
            let want = TauPoly::rational(qg[3 - i][3 - j].clone(), Var::Q, 8);
            r.require(got == want, || format!("Q(γ(ξ{i}), γ(ξ{j})) = {got}"));
        }
    }
    r.absorb(a.monodromy_check().map_err(|e| e.to_string())?);
    let b = QuinticB::new(8).map_err(|e| e.to_string())?;
    r.absorb(a.inverse_basis_check(&b.hodge_basis()).map_err(|e| e.to_string())?);
    Ok(r)
}

fn lmhs() -> Outcome {
    let mut r = CheckReport::new("limiting mixed Hodge structure");
    let a = AModel::new(4).map_err(|e| e.to_string())?;
    r.absorb(a.lmhs_check());
    let (_, _, e, f) = quintic_b::constants();
    check(&mut r, e == Rat::new(11.into(), 2.into()) && f == Rat::new((-25).into(), 6.into()), "(e, f) != (11/2, -25/6)");
    let entry = a.lmhs_recovery().get(3, 0).clone();
    let alpha0 = entry.as_scalar().cloned().unwrap_or_else(TwistedScalar::zero);
    check(&mut r, alpha0.coeff(Monomial::new(0, 1)) == r_int(200), "c-coefficient of entry (4,1) is not 200");
    check(&mut r, alpha0 == TwistedScalar::c().mul_rat(&r_int(200)), "entry (4,1) is not exactly 200c");
    Ok(r)
}

fn r_int(n: i64) -> Rat {
    q(n)
}

fn local_identities() -> Outcome {
    let mut r = CheckReport::new("local K_P2 identities");
    let m = LocalP2::new(12).map_err(|e| e.to_string())?;
    r.absorb(m.footnote_check().map_err(|e| e.to_string())?);
    let c = local_p2::syz_c(12).map_err(|e| e.to_string())?;
    let n = c.order();
    let s = local_p2::local_mirror_map(13).map_err(|e| e.to_string())?.s_of_q.truncate(n);
    let cube_s = c.square().mul(&c).mul(&s);
    let minus_q = Series::var_series(Var::BigQ, n).scale_rat(&q(-1));
    check(&mut r, n >= 12 && cube_s == minus_q, "c(Q)^3 s(Q) != -Q");
    let lead: Vec<Rat> = c.coeffs()[..4].to_vec();
    check(&mut r, lead == vec![q(1), q(-2), q(5), q(-32)], "c(Q) leading coefficients");
    let table = local_p2::local_gw(5).map_err(|e| e.to_string())?;
    let want = [3i64, -6, 27, -192, 1695];
    for (d, v) in want.iter().enumerate() {
        r.require(table.bps(d as u32 + 1) == Some(&(*v).into()), || format!("n_{} mismatch", d + 1));
    }
    let naive = common::local_gw(6);
    for d in 1..=5u32 {
        r.require(table.gw(d) == naive[d as usize - 1], || format!("N_{d} differs from the naive pipeline"));
    }
    r.absorb(LocalP2::new(10).map_err(|e| e.to_string())?.prop_nabla_check());
    Ok(r)
}

fn regulator() -> Outcome {
    let mut r = CheckReport::new("regulator growth");
    let rep = local_p2::regulator_growth(GROWTH_DEGREE, L_PRECISION_DIGITS).map_err(|e| e.to_string())?;
    let closed: f64 = rep.l_value.parse().map_err(|_| "L value is not a decimal".to_string())?;
    r.require((closed - rep.l_direct).abs() < L_STABILITY, || {
        format!("L(χ,2) closed form {closed} vs direct {}", rep.l_direct)
    });
    r.require(rep.l_direct_stability < L_STABILITY, || format!("direct sum unstable: {}", rep.l_direct_stability));
    r.require(rep.relative_error < local_p2::GROWTH_TOLERANCE, || {
        format!("Domb–Sykes {} vs e^(2π Im T0) = {} (rel {:.2e})", rep.domb_sykes, rep.growth, rep.relative_error)
    });
    check(&mut r, rep.monotone_tail, "ratios not monotone over the tail");
    check(&mut r, rep.passed, "regulator report did not pass");
    println!(
        "    growth e^(2π Im T0) = {:.6}, Im T0 = {:.8}, Domb–Sykes = {:.6}, relative error = {:.2e}, last {} ratios monotone = {}",
        rep.growth, rep.im_t0, rep.domb_sykes, rep.relative_error, MONOTONE_WINDOW, rep.monotone_tail
    );
    Ok(r)
}

fn two_parameter_limit() -> Outcome {
    let mut r = CheckReport::new("two-parameter limit");
    let local = LocalP2::new(10).map_err(|e| e.to_string())?;
    for seed in [1u64, 2, 3] {
        let mut rng = StdRng::seed_from_u64(seed);
        let extra: Vec<Vec<Rat>> = (0..3)
            .map(|_| (0..10).map(|_| Rat::new(rng.gen_range(-500..=500).into(), rng.gen_range(1..=9).into())).collect())
            .collect();
        let table = TwoParamTable::from_local(&local.table, 3, 10, |d1, d2| extra[d1 as usize][d2 as usize].clone());
        let pre = TwoParamPrepotential::new(table, 3, 10);
        r.absorb(twoparam::limit_check(&pre, &local).map_err(|e| e.to_string())?);
        r.absorb(twoparam::basis_change_check(&pre, &local).map_err(|e| e.to_string())?);
    }
    Ok(r)
}

fn nilpotent(rows: &[Vec<Rat>]) -> Result<NilpotentOperator, String> {
    NilpotentOperator::new(ExactMatrix::from_rat_rows(rows)).map_err(|e| e.to_string())
}

fn filtration_suite() -> Outcome {
    let mut r = CheckReport::new("filtrations");
    let err = |e: qhodge::filtration::FiltrationError| e.to_string();

    let nq = nilpotent(&quintic_b::n_gamma())?;
    let mq = weight_filtration(&nq, 3).map_err(err)?;
    let dims: Vec<usize> = (0..=6).map(|a| mq.graded_dim(a)).collect();
    r.require(dims == vec![1, 0, 1, 0, 1, 0, 1], || format!("quintic Gr^M dims {dims:?}"));

    let nl = nilpotent(&local_p2::n_gamma())?;
    let ml = weight_filtration(&nl, 4).map_err(err)?;
    let dims: Vec<usize> = (2..=6).map(|a| ml.graded_dim(a)).collect();
    r.require(dims == vec![1, 0, 1, 0, 1], || format!("local Gr^M dims {dims:?}"));

    // W_3 = <γ2, γ1> ⊂ W_6 = V and M_2 = <γ1> ⊂ M_4 = <γ2, γ1> ⊂ M_6 = V
    let sp = |idx: &[usize]| Subspace::coordinate(3, idx);
    let w = Filtration::increasing(3, [(2, sp(&[])), (3, sp(&[1, 2])), (6, sp(&[0, 1, 2]))]).map_err(err)?;
    let m = Filtration::increasing(3, [(1, sp(&[])), (2, sp(&[2])), (4, sp(&[1, 2])), (6, sp(&[0, 1, 2]))]).map_err(err)?;
    r.absorb(relative_weight_check(&nl, &w, &m).map_err(err)?);
    let bad = Filtration::increasing(3, [(1, sp(&[])), (2, sp(&[1])), (4, sp(&[1, 2])), (6, sp(&[0, 1, 2]))]).map_err(err)?;
    let bad_report = relative_weight_check(&nl, &w, &bad).map_err(err)?;
    r.require(!bad_report.passed && failing_pairs(&bad_report).contains(&(3, 1)), || {
        "perturbed M_2 not rejected at (k,l) = (3,1)".to_string()
    });

    let period = quintic_b::limiting_period_matrix();
    let cols: Vec<Vec<SymFrac>> = period.columns();
    let f = Filtration::from_flag(4, &cols, 0, 3, |p| (4 - p) as usize).map_err(err)?;
    let grading = deligne_bigrading(&f, &mq, &symbol_conj).map_err(err)?;
    let diag: Vec<usize> = (0..=3).map(|p| grading.get(p, p).dim()).collect();
    r.require(diag == vec![1, 1, 1, 1] && grading.pieces().len() == 4, || format!("I^{{p,q}} dims {:?}", grading.dims()));
    r.absorb(grading.check_properties(&f, &mq, &symbol_conj));
    let qm = ExactMatrix::from_rat_rows(&quintic_b::q_gamma());
    r.absorb(polarization_check(&qm, &nq, &f, 3).map_err(err)?);

    let mut rng = StdRng::seed_from_u64(7);
    for trial in 0..100 {
        let rows: Vec<Vec<Rat>> = (0..5)
            .map(|_| {
                (0..5)
                    .map(|_| {
                        if rng.gen_bool(0.3) {
                            q(0)
                        } else {
                            Rat::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())
                        }
                    })
                    .collect()
            })
            .collect();
        let (want, pivots) = common::gauss_rref(rows.clone());
        let (got, got_pivots) = ExactMatrix::from_rat_rows(&rows).rref();
        let same = got_pivots == pivots
            && (0..got.rows()).all(|i| (0..5).all(|j| got.get(i, j).as_rational() == Some(want[i][j].clone())));
        r.require(same, || format!("elimination differs from Gauss–Jordan on trial {trial}"));
    }
    Ok(r)
}

fn frame_invariance() -> Outcome {
    let mut r = CheckReport::new("frame invariance");
    r.absorb(QuinticB::new(8).map_err(|e| e.to_string())?.invariance_check());
    r.absorb(LocalP2::new(8).map_err(|e| e.to_string())?.invariance_check().map_err(|e| e.to_string())?);
    Ok(r)
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "quintic pipeline", budget: Duration::from_secs(5), run: quintic_instantons },
        Criterion { id: 2, name: "gamma structure", budget: Duration::from_secs(10), run: gamma_structure },
        Criterion { id: 3, name: "LMHS", budget: Duration::from_secs(60), run: lmhs },
        Criterion { id: 4, name: "local K_P2", budget: Duration::from_secs(10), run: local_identities },
        Criterion { id: 5, name: "regulator growth", budget: Duration::from_secs(180), run: regulator },
        Criterion { id: 6, name: "two-parameter limit", budget: Duration::from_secs(60), run: two_parameter_limit },
        Criterion { id: 7, name: "filtration suite", budget: Duration::from_secs(60), run: filtration_suite },
        Criterion { id: 8, name: "frame invariance", budget: Duration::from_secs(60), run: frame_invariance },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (ok, detail) = match &outcome {
            Ok(rep) if rep.passed && elapsed <= c.budget => (true, format!("{} checks", rep.checks)),
            Ok(rep) if rep.passed => (false, format!("over time budget {:?}", c.budget)),
            Ok(rep) => (false, rep.summary()),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} [{}] {:.2}s, {}",
            c.id,
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
