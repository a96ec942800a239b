//! The single-shot subcommands: params, arrangements, groebner, poly,
//! lemma.

use grm_core::arrange::{
    best_nonmaximal_type, enumerate_types, n_points_type, Arrangement, ArrangementType,
};
use grm_core::ffield::make_field;
use grm_core::grmcode::{grm_params, second_weight, GrmError};
use grm_core::groebner::{
    buchberger, field_equations, footprint_size, rational_points, GroebnerError, PolyBasis,
};
use grm_core::lemma::{brute_force_min, check_minimizer_structure, closed_form_mu, LemmaInstance};
use grm_core::mpoly::{parse_poly, MultiPoly, PolyError};

use crate::report::{
    emit, CheckRecord, GroebnerReport, LemmaReport, ParamsReport, PolyRecord, PolyReport,
    SearchReport, TypeCheckRecord, TypePointsReport, TypeVerifyReport, VerifyReport, W2Json,
};
use crate::{
    ArrangementsArgs, Cli, CliError, GroebnerAction, GroebnerArgs, LemmaArgs, ParamsArgs, PolyArgs,
};

pub fn params(cli: &Cli, args: &ParamsArgs) -> Result<(), CliError> {
    let p = grm_params(args.q, args.n, args.d).map_err(|e| CliError::invalid(e.to_string()))?;
    // a valid code can fall outside every covered second-weight regime;
    // the other parameters are still well worth reporting
    let (w2, regime) = match second_weight(args.q, args.n, args.d) {
        Ok(sw) => (W2Json::from(sw.value), sw.regime.tag().to_string()),
        Err(GrmError::RegimeNotCovered { reason, .. }) => (
            W2Json::NotCovered {
                kind: "not-covered",
                reason,
            },
            "not-covered".to_string(),
        ),
        Err(e) => return Err(CliError::invalid(e.to_string())),
    };
    let report = ParamsReport {
        task: "params",
        q: p.q,
        n: p.n,
        d: p.d,
        a: p.a,
        b: p.b,
        m: p.m,
        k: p.k,
        w1: p.w1,
        w2,
        regime,
    };
    emit(cli, &report)
}

fn checked_total(q: u32, n: u32) -> Result<u64, CliError> {
    (q as u64)
        .checked_pow(n)
        .ok_or_else(|| CliError::invalid(format!("{q}^{n} exceeds exact 64-bit arithmetic")))
}

pub fn arrangements(cli: &Cli, args: &ArrangementsArgs) -> Result<(), CliError> {
    let field = make_field(args.q).map_err(|e| CliError::invalid(e.to_string()))?;
    if let Some(blocks) = &args.blocks {
        let t = ArrangementType::new(args.q, args.n, blocks.clone())
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let n_points = n_points_type(&t).map_err(|e| CliError::invalid(e.to_string()))?;
        let total = checked_total(args.q, args.n)?;
        return emit(
            cli,
            &TypePointsReport {
                task: "arrangements",
                mode: "formula",
                q: args.q,
                n: args.n,
                blocks: t.block_sizes().to_vec(),
                n_points,
                weight: total - n_points,
            },
        );
    }
    if args.search {
        let d = args
            .d
            .ok_or_else(|| CliError::invalid("--search requires -d".to_string()))?;
        let (t, n2) = best_nonmaximal_type(args.q, args.n, d)
            .map_err(|e| CliError::invalid(e.to_string()))?;
        let total = checked_total(args.q, args.n)?;
        return emit(
            cli,
            &SearchReport {
                task: "arrangements",
                mode: "search",
                q: args.q,
                n: args.n,
                d,
                blocks: t.block_sizes().to_vec(),
                n2_prime: n2,
                w2_prime: total - n2,
            },
        );
    }
    if args.verify {
        let mut checks = Vec::new();
        let mut failed = 0u64;
        for t in enumerate_types(args.q, args.n, args.n * (args.q - 1)) {
            let formula = n_points_type(&t).map_err(|e| CliError::invalid(e.to_string()))?;
            let grid = Arrangement::of_type(&t, &field)
                .n_points_grid(cli.budget)
                .map_err(|e| CliError::budget(e.to_string()))?;
            let pass = formula == grid;
            if !pass {
                failed += 1;
            }
            checks.push(TypeCheckRecord {
                blocks: t.block_sizes().to_vec(),
                formula,
                grid,
                pass,
            });
        }
        let report = TypeVerifyReport {
            task: "arrangements",
            mode: "verify",
            q: args.q,
            n: args.n,
            passed: checks.len() as u64 - failed,
            failed,
            checks,
        };
        emit(cli, &report)?;
        if failed > 0 {
            return Err(CliError::failed_checks(format!(
                "{failed} type checks failed"
            )));
        }
        return Ok(());
    }
    Err(CliError::invalid(
        "arrangements needs one of --blocks, --search or --verify".to_string(),
    ))
}

/// Reads a polynomial file: one polynomial per line, '#' starts a
/// comment, blank lines skipped. Errors carry the 1-based line number.
fn read_poly_file(
    path: &std::path::Path,
    q: u32,
    n: usize,
) -> Result<(grm_core::FieldSpec, Vec<MultiPoly>), CliError> {
    let field = make_field(q).map_err(|e| CliError::invalid(e.to_string()))?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut polys = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let poly = parse_poly(line, n, &field)
            .map_err(|e| CliError::invalid(format!("line {}: {e}", lineno + 1)))?;
        polys.push(poly);
    }
    if polys.is_empty() {
        return Err(CliError::invalid(format!(
            "{}: no polynomials found",
            path.display()
        )));
    }
    Ok((field, polys))
}

fn map_groebner_err(e: GroebnerError) -> CliError {
    match e {
        GroebnerError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
        GroebnerError::IterationCapExceeded { .. } => CliError::iteration_cap(e.to_string()),
        other => CliError::invalid(other.to_string()),
    }
}

pub fn groebner(cli: &Cli, args: &GroebnerArgs) -> Result<(), CliError> {
    let (field, mut polys) = read_poly_file(&args.input, args.q, args.n)?;
    polys.retain(|p| !p.is_zero());
    if polys.is_empty() {
        return Err(CliError::invalid(
            "input contains only zero polynomials".to_string(),
        ));
    }
    let input_basis = PolyBasis::new(polys.clone()).map_err(map_groebner_err)?;

    let mut report = GroebnerReport {
        task: "groebner",
        action: match args.action {
            GroebnerAction::Basis => "basis",
            GroebnerAction::Footprint => "footprint",
            GroebnerAction::Points => "points",
        },
        q: args.q,
        n: args.n,
        basis: None,
        delta_size: None,
        points: None,
        equal: None,
    };

    match args.action {
        GroebnerAction::Points => {
            report.points =
                Some(rational_points(&input_basis, cli.budget).map_err(map_groebner_err)?);
        }
        GroebnerAction::Basis | GroebnerAction::Footprint => {
            // the footprint = rational-points identity requires the field equations
            let mut gens = polys;
            gens.extend(field_equations(&field, args.n));
            let with_fields = PolyBasis::new(gens).map_err(map_groebner_err)?;
            let gb = buchberger(&with_fields, args.cap).map_err(map_groebner_err)?;
            report.basis = Some(gb.polys().iter().map(|p| p.to_string()).collect());
            if matches!(args.action, GroebnerAction::Footprint) {
                let delta = footprint_size(&gb.leading_monomials(), args.q, args.n, cli.budget)
                    .map_err(map_groebner_err)?
                    .delta_size;
                let pts = rational_points(&input_basis, cli.budget).map_err(map_groebner_err)?;
                report.delta_size = Some(delta);
                report.points = Some(pts);
                report.equal = Some(delta == pts);
            }
        }
    }
    emit(cli, &report)
}

pub fn poly(cli: &Cli, args: &PolyArgs) -> Result<(), CliError> {
    let (_, polys) = read_poly_file(&args.input, args.q, args.n)?;
    let mut results = Vec::new();
    for p in &polys {
        let count = p.count_points(cli.budget).map_err(|e| match e {
            PolyError::BudgetExceeded { .. } => CliError::budget(e.to_string()),
            other => CliError::invalid(other.to_string()),
        })?;
        results.push(PolyRecord {
            poly: p.to_string(),
            zeros: count.zeros,
            weight: count.weight,
        });
    }
    emit(
        cli,
        &PolyReport {
            task: "poly",
            q: args.q,
            n: args.n,
            results,
        },
    )
}

pub fn lemma(cli: &Cli, args: &LemmaArgs) -> Result<(), CliError> {
    let inst =
        LemmaInstance::new(args.q, args.n, args.d).map_err(|e| CliError::invalid(e.to_string()))?;
    let min = brute_force_min(&inst, cli.budget).map_err(|e| CliError::budget(e.to_string()))?;
    let closed = closed_form_mu(&inst);
    let shape = check_minimizer_structure(&inst, cli.budget)
        .ok()
        .map(|r| r.shape.describe().to_string());
    let report = LemmaReport {
        task: "lemma",
        q: inst.q,
        n: inst.n,
        d: inst.d,
        a: inst.a,
        b: inst.b,
        k_budget: inst.k_budget,
        mu_brute: min.mu,
        mu_closed: closed,
        equal: min.mu == closed as i64,
        minimizer: min
            .minimizers
            .first()
            .map(|m| m.as_slice().to_vec())
            .unwrap_or_default(),
        minimizer_count: min.minimizers.len(),
        truncated: min.truncated,
        shape,
    };
    emit(cli, &report)
}

/// Builds one check record; used by the verify sweeps.
pub fn record(
    suite: &str,
    check: &str,
    (q, n, d): (u32, u32, u32),
    computed: i64,
    oracle: i64,
) -> CheckRecord {
    CheckRecord {
        suite: suite.to_string(),
        check: check.to_string(),
        q,
        n,
        d,
        computed,
        oracle,
        pass: computed == oracle,
    }
}

/// Emits a verify report and converts failures into the exit-1 error.
pub fn finish_verify(cli: &Cli, suite: &str, checks: Vec<CheckRecord>) -> Result<(), CliError> {
    let failed = checks.iter().filter(|c| !c.pass).count() as u64;
    let report = VerifyReport {
        task: "verify",
        suite: suite.to_string(),
        seed: cli.seed,
        passed: checks.len() as u64 - failed,
        failed,
        checks,
    };
    emit(cli, &report)?;
    if failed > 0 {
        Err(CliError::failed_checks(format!("{failed} checks failed")))
    } else {
        Ok(())
    }
}
