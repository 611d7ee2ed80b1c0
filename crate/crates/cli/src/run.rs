//! Runs the selected suites and collects their records.

use std::time::Instant;

use sandwich_core::chevgroup::checks::{check_calculus, check_root_pairs, CalculusOptions};
use sandwich_core::chevgroup::table::order_formula;
use sandwich_core::lattice::centralizer::verify_centralizer_lemmas;
use sandwich_core::lattice::sandwich::{
    join_compatibility, sandwich_classify, verify_levels, verify_root_unipotents, Verdict,
};
use sandwich_core::lattice::theorems::{
    simplicity_check, verify_commutator_formula, verify_parabolic_independence, verify_structure_theorems,
};
use sandwich_core::lattice::LatticeContext;
use sandwich_core::relroots::verify_relroots_suite;
use sandwich_core::rootsys::{check_root_system, Family, RootSystemType};
use sandwich_core::{Error, Exec};
use serde::Serialize;
use serde_json::json;

use crate::config::{ConfigError, ModelSpec, RunConfig, Suite};
use crate::report::{CheckVerdict, Mode, Report, Scope};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{model}: {source}")]
    Size { model: String, source: Error },
    #[error("{model}: {source}")]
    Model { model: String, source: Error },
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub fn exec_for(jobs: usize) -> Exec {
    if jobs == 0 {
        Exec::Parallel
    } else {
        Exec::from_jobs(jobs)
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report, RunError> {
    let start = Instant::now();
    let exec = exec_for(cfg.jobs);
    let mut report = Report::new(cfg.clone());
    let models = cfg
        .models
        .iter()
        .map(|spec| Ok((spec, spec.build()?)))
        .collect::<Result<Vec<_>, ConfigError>>()?;
    report.hypotheses = models.iter().map(|(_, m)| sandwich_core::chevgroup::hypothesis_check(m)).collect();

    if cfg.suite.includes(Suite::Roots) {
        let t = Instant::now();
        roots_suite(&mut report, cfg.roots.max_rank, exec);
        report.time("roots", None, t.elapsed());
    }
    if cfg.suite.includes(Suite::Relroots) {
        let t = Instant::now();
        relroots_suite(&mut report, cfg.relroots.max_rank, exec);
        report.time("relroots", None, t.elapsed());
    }
    let run_group = cfg.suite.includes(Suite::Group);
    let run_sandwich = cfg.suite.includes(Suite::Sandwich);
    if run_group || run_sandwich {
        // One model at a time, so only one element table is alive.
        for (spec, model) in models {
            let name = model.name();
            let t = Instant::now();
            let ctx = LatticeContext::build(model, cfg.cap, exec).map_err(|source| match source {
                Error::SizeCap { .. } => RunError::Size { model: name.clone(), source },
                _ => RunError::Model { model: name.clone(), source },
            })?;
            report.time("tabulate", Some(name.clone()), t.elapsed());
            let mode = if spec.expect_violation || !ctx.hypotheses.passes { Mode::ExpectException } else { Mode::Assert };
            let first = report.checks.len();
            if run_group {
                let t = Instant::now();
                group_suite(&mut report, &ctx, cfg, &Scope::new("group", Some(name.clone()), mode));
                report.time("group", Some(name.clone()), t.elapsed());
            }
            if run_sandwich {
                let t = Instant::now();
                sandwich_suite(&mut report, &ctx, cfg, &Scope::new("sandwich", Some(name.clone()), mode));
                report.time("sandwich", Some(name.clone()), t.elapsed());
            }
            if spec.expect_violation {
                negative_control(&mut report, spec, first, &name);
            }
        }
    }
    report.finish(start.elapsed());
    Ok(report)
}

fn roots_suite(report: &mut Report, max_rank: usize, exec: Exec) {
    let scope = Scope::new("roots", None, Mode::Assert);
    let types = RootSystemType::all_up_to_rank(max_rank);
    let checks = exec.map(&types, |&t| check_root_system(t));
    let held = !checks.is_empty() && checks.iter().all(|c| c.passed());
    report.push(&scope, "root system axioms", "root systems", held, &checks);
}

fn relroots_suite(report: &mut Report, max_rank: usize, exec: Exec) {
    let scope = Scope::new("relroots", None, Mode::Assert);
    let rep = verify_relroots_suite(max_rank, exec);
    let e6 = RootSystemType::new(Family::E, 6).expect("E6").to_string();
    let d4 = RootSystemType::new(Family::D, 4).expect("D4").to_string();
    let covers_outer = rep.data.iter().any(|d| d.base == e6 && d.gamma_order == 2)
        && rep.data.iter().any(|d| d.base == d4 && d.gamma_order == 6);
    let failures: Vec<&String> = rep.data.iter().flat_map(|d| &d.failures).take(20).collect();
    report.push(
        &scope,
        "relative root combinatorics",
        "Lemma adj-simple-roots; Lemma parab-centr-root",
        rep.counterexamples == 0 && covers_outer,
        json!({
            "data": rep.datum_count,
            "checks": rep.total_checks,
            "counterexamples": rep.counterexamples,
            "includes_e6_and_triality": covers_outer,
            "literal_minus_beta_exclusions": rep.data.iter().map(|d| d.literal_minus_b_exclusions).sum::<usize>(),
            "first_failures": failures,
        }),
    );
    let folds_ok = !rep.foldings.is_empty()
        && rep.foldings.iter().all(|f| f.cartan_matches && f.identified.as_deref() == Some(f.expected.as_str()));
    report.push(&scope, "foldings", "Lemma relroots", folds_ok, &rep.foldings);
}

fn group_suite(report: &mut Report, ctx: &LatticeContext, cfg: &RunConfig, scope: &Scope) {
    let sanity = scope.asserted();
    let (model, table) = (&ctx.model, &ctx.table);
    let formula = order_formula(model);
    let scan = table.scan();
    report.push(
        &sanity,
        "group order",
        "definition of G(R)",
        table.len() as u64 == formula && scan.is_none_or(|s| s.agrees),
        json!({ "order": table.len(), "formula": formula, "predicate_scan": scan }),
    );

    #[derive(Serialize)]
    struct CongruenceRow {
        ideal: String,
        relative_elementary: usize,
        congruence: usize,
        full_congruence: usize,
        nested: bool,
        normal: bool,
    }
    let gens = table.generators();
    let rows: Vec<CongruenceRow> = ctx
        .ideals
        .iter()
        .enumerate()
        .map(|(k, q)| CongruenceRow {
            ideal: q.to_string(),
            relative_elementary: ctx.relative_elementary[k].order(),
            congruence: ctx.congruence[k].order(),
            full_congruence: ctx.full_congruence[k].order(),
            nested: ctx.relative_elementary[k].is_subgroup_of(&ctx.congruence[k])
                && ctx.congruence[k].is_subgroup_of(&ctx.full_congruence[k]),
            normal: ctx.congruence[k].is_normalized_by(table, gens)
                && ctx.full_congruence[k].is_normalized_by(table, gens),
        })
        .collect();
    // q ⊆ q' must give G(R,q) ⊆ G(R,q'), and likewise for C and E.
    let monotone = ctx.ideals.iter().enumerate().all(|(i, q)| {
        ctx.ideals.iter().enumerate().filter(|(_, p)| q.is_subset_of(p)).all(|(j, _)| {
            ctx.congruence[i].is_subgroup_of(&ctx.congruence[j])
                && ctx.full_congruence[i].is_subgroup_of(&ctx.full_congruence[j])
                && ctx.relative_elementary[i].is_subgroup_of(&ctx.relative_elementary[j])
        })
    });
    let held = monotone && rows.iter().all(|r| r.nested && r.normal);
    report.push(&sanity, "congruence subgroups", "Lemma GRq", held, json!({ "monotone": monotone, "ideals": rows }));

    let opts = CalculusOptions { triples: cfg.group.triples, pairs: cfg.group.pairs, seed: cfg.seed };
    let calc = check_calculus(model, table, &opts);
    let calc_records: [(&str, &'static str, bool, serde_json::Value); 6] = [
        (
            "commutator identity",
            "commutator identity z[x,yz]z⁻¹ = [z⁻¹,x][x,y]",
            calc.identity_failures == 0 && calc.identity_triples > 0,
            json!({ "triples": calc.identity_triples, "failures": calc.identity_failures }),
        ),
        (
            "Chevalley commutator homogeneity",
            "Lemma rootels",
            calc.homogeneity_failures == 0,
            json!({
                "pairs": calc.homogeneity_pairs,
                "samples": calc.homogeneity_samples,
                "failures": calc.homogeneity_failures,
            }),
        ),
        (
            "sum formula",
            "Lemma rootels",
            calc.sum_failures == 0,
            json!({
                "samples": calc.sum_samples,
                "failures": calc.sum_failures,
                "higher_terms_nonzero": calc.sum_higher_nonzero,
            }),
        ),
        (
            "Levi conjugation",
            "Lemma rootels",
            calc.levi_failures == 0,
            json!({ "samples": calc.levi_samples, "failures": calc.levi_failures }),
        ),
        (
            "unipotent factorization",
            "Lemma T-P",
            calc.factor_failures == 0 && calc.radical_orders.iter().all(|(a, b)| a == b),
            json!({
                "samples": calc.factor_samples,
                "failures": calc.factor_failures,
                "radical_orders": calc.radical_orders,
            }),
        ),
        (
            "Gauss cell",
            "Gauss decomposition",
            calc.gauss.is_none_or(|g| g.passed()) && calc.errors.is_empty(),
            json!({ "gauss": calc.gauss, "errors": calc.errors }),
        ),
    ];
    for (name, anchor, held, witness) in calc_records {
        report.push(&sanity, name, anchor, held, witness);
    }

    let pairs = check_root_pairs(model);
    report.push(
        scope,
        "nonvanishing commutator constants",
        "Lemma ABe",
        pairs.abe_holds(),
        json!({ "pairs": pairs.pairs, "cases": pairs.abe_cases, "failures": pairs.abe_failures }),
    );
    report.push(
        scope,
        "commutator images generate",
        "Lemma const",
        pairs.const_holds(),
        json!({ "pairs": pairs.pairs, "failures": pairs.const_failures }),
    );

    match verify_centralizer_lemmas(model, table, &cfg.group.extra_moduli) {
        Ok(rep) => {
            if let Some(cases) = &rep.u_cent_field {
                let held = cases.iter().all(|c| c.counterexamples.is_empty());
                report.push(scope, "centralizer of a unipotent radical", "Lemma u-cent-field", held, cases);
            }
            let held = rep.centr_beta.iter().flat_map(|(_, v)| v).all(|c| c.counterexamples == 0);
            report.push(scope, "centralizer of a root subgroup", "Lemma centr-beta", held, &rep.centr_beta);
            let held = rep.small_levi_b.iter().flat_map(|(_, v)| v).all(|c| c.counterexamples == 0);
            report.push(scope, "centralizer in a small Levi cell", "Lemma small-levi-b", held, &rep.small_levi_b);
        }
        Err(e) => report.push(scope, "centralizer lemmas", "Lemma centr-beta", false, e.to_string()),
    }
}

fn sandwich_suite(report: &mut Report, ctx: &LatticeContext, cfg: &RunConfig, scope: &Scope) {
    let results = sandwich_classify(ctx);
    let held = results.iter().all(|r| r.verdict == Verdict::Unique);
    report.push(scope, "sandwich classification", "Theorem main", held, &results);

    let formula = verify_commutator_formula(ctx);
    report.push(scope, "commutator formula", "Lemma stand-comm-formula", formula.holds(), &formula);

    match verify_parabolic_independence(ctx) {
        Ok(ind) => report.push(scope, "parabolic independence", "Lemma E_P", ind.holds(), &ind),
        Err(e) => report.push(scope, "parabolic independence", "Lemma E_P", false, e.to_string()),
    }

    let levels = verify_levels(ctx);
    let held = levels.len() == ctx.closures.len() && levels.iter().all(|l| l.equal && l.normalized_by_e);
    report.push(scope, "level", "Theorem cong-N", held, &levels);

    let s = verify_structure_theorems(ctx);
    report.push(
        scope,
        "E normal in G",
        "Theorem EE",
        s.elementary_normal,
        json!({ "group_order": s.group_order, "elementary_order": s.elementary_order, "predicate_scan": s.predicate_scan }),
    );
    report.push(
        scope,
        "centralizer of E",
        "Theorem E-cent",
        s.centralizer_is_center,
        json!({ "centralizer": s.centralizer_order, "center": s.center_order, "scalars": s.scalar_order }),
    );
    report.push(
        scope,
        "perfectness",
        "Theorem perfect",
        s.perfect,
        json!({ "derived_order": s.derived_order, "derived_index": s.derived_index }),
    );
    report.push(
        scope,
        "commutator stability",
        "Lemma HallWitt",
        s.hall_witt_failures.is_empty(),
        json!({ "closures": s.hall_witt_checked, "failures": s.hall_witt_failures }),
    );

    if ctx.model.ring().is_field() {
        let simple = simplicity_check(ctx, ctx.table.len() <= cfg.sandwich.per_element_limit);
        report.push(scope, "simple central quotient", "Theorem main", simple.holds(), &simple);
    }

    let extracts = verify_root_unipotents(ctx);
    let held = extracts.iter().all(|r| r.holds);
    report.push(scope, "root unipotents", "Lemma InP; Corollary UnderRad", held, &extracts);

    let join = join_compatibility(ctx, cfg.sandwich.join_pairs, cfg.seed);
    report.push(scope, "join compatibility", "Theorem cong-N", join.holds(), &join);
}

/// A marked model has to show at least one expected exception.
fn negative_control(report: &mut Report, spec: &ModelSpec, first: usize, name: &str) {
    let observed: Vec<String> = report.checks[first..]
        .iter()
        .filter(|c| c.verdict == CheckVerdict::ExpectedException)
        .map(|c| format!("{} ({})", c.name, c.anchor))
        .collect();
    let scope = Scope::new("control", Some(name.to_string()), Mode::Assert);
    report.push(
        &scope,
        "negative control shows a violation",
        "hypotheses of Theorem main",
        !observed.is_empty(),
        json!({ "model": spec, "expected_exceptions": observed }),
    );
}
