use std::fs;

use calabi_core::calabi::{bump_profiles, linear_independence, Autonomous, FamilyVariant};
use calabi_core::laurent::{parse_rational, FieldElement, Rational};
use calabi_core::mesh::monte_carlo_integral;
use calabi_core::profile::Profile1D;
use calabi_core::qh::{ElementSampler, FrobeniusAlgebra, SpectralValue};
use calabi_core::reeb::build_reeb_tree;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{AlgebraAction, AlgebraArgs, FamilyArgs, FixtureArgs, MuArgs, TreeArgs};
use crate::error::CliError;
use crate::input::{fixture_document, load_algebra, load_field, load_profile, load_profiles};

/// A report to print, and the failure to exit with afterwards, if any.
pub struct Outcome {
    pub report: Value,
    pub failure: Option<CliError>,
}

impl From<Value> for Outcome {
    fn from(report: Value) -> Self {
        Self {
            report,
            failure: None,
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

pub fn algebra(args: &AlgebraArgs, seed: u64) -> Result<Outcome, CliError> {
    let mut alg = load_algebra(&args.source)?;
    if let Some(omega) = &args.omega {
        alg = alg.with_omega(parse_rational(omega)?)?;
    }
    let name = alg.name().to_string();
    Ok(match &args.action {
        AlgebraAction::Table => {
            let rows: Vec<Value> = alg
                .table_strings()
                .into_iter()
                .map(|(a, b, p)| json!({"left": a, "right": b, "product": p}))
                .collect();
            json!({"algebra": name, "basis": alg.basis(), "table": rows}).into()
        }
        AlgebraAction::Euler => {
            let e = alg.euler_class()?;
            json!({"algebra": name, "euler": alg.format_element(&e), "coords": e}).into()
        }
        AlgebraAction::Invert { element } => {
            let a = alg.parse_element(element)?;
            let inv = alg.invert_element(&a)?;
            let check = alg.quantum_mul(&a, &inv)?;
            json!({
                "algebra": name,
                "element": alg.format_element(&a),
                "inverse": alg.format_element(&inv),
                "coords": inv,
                "product": alg.format_element(&check),
                "exact": check == alg.unit(),
            })
            .into()
        }
        AlgebraAction::Semisimple => {
            let v = alg.is_semisimple()?;
            json!({
                "algebra": name,
                "semisimple": v.semisimple,
                "euler": alg.format_element(&v.euler_class),
                "euler_inverse": v.euler_inverse.as_ref().map(|i| alg.format_element(i)),
                "witness": v.witness,
            })
            .into()
        }
        AlgebraAction::Props { pairs, samples } => props(&alg, *pairs, *samples, seed)?,
    })
}

/// Axioms, valuation laws, the spectral rules for the identity and the
/// semisimplicity verdict.
fn props(
    alg: &FrobeniusAlgebra,
    pairs: usize,
    samples: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let axioms = alg.validate();
    let mut sampler = ElementSampler::new(seed);
    let pair_list: Vec<_> = (0..pairs)
        .map(|_| (sampler.element(alg), sampler.element(alg)))
        .collect();
    let scalars: Vec<_> = (0..4).map(|_| sampler.nonzero_coefficient()).collect();
    let characteristic = alg.characteristic_exponent_check(&pair_list, &scalars);

    let mut spectral_violations = Vec::new();
    if alg.spectral_invariant_identity(&alg.unit())
        != SpectralValue::Finite(Rational::from_integer(0.into()))
    {
        spectral_violations.push("c([M], 1) is not 0".to_string());
    }
    let s = FieldElement::s_pow(1);
    for i in 0..samples {
        let a = sampler.nonzero_element(alg);
        let lhs = alg.spectral_invariant_identity(&a.scale(&s));
        let expected = match alg.spectral_invariant_identity(&a) {
            SpectralValue::Finite(c) => SpectralValue::Finite(c + alg.omega()),
            SpectralValue::NegInfinity => SpectralValue::NegInfinity,
        };
        if lhs != expected {
            spectral_violations.push(format!(
                "sample {i}: c(s a, 1) = {lhs}, expected {expected}"
            ));
        }
    }

    let verdict = alg.is_semisimple()?;
    let bound = if verdict.semisimple {
        Some(alg.valuation_sum_bound(&mut sampler, samples)?)
    } else {
        None
    };
    let ok = axioms.all_passed() && characteristic.holds() && spectral_violations.is_empty();
    let report = json!({
        "algebra": alg.name(),
        "ok": ok,
        "axioms": axioms.checks,
        "characteristic_exponent": characteristic,
        "identity_spectral": {"samples": samples, "violations": spectral_violations},
        "semisimple": verdict.semisimple,
        "witness": verdict.witness,
        "valuation_sum_bound": bound.map(|b| json!({"max": b.max, "samples": b.samples})),
    });
    let failure = (!ok).then(|| {
        let failed: Vec<String> = axioms
            .failures()
            .map(|c| c.name.clone())
            .chain((!characteristic.holds()).then(|| "characteristic_exponent".to_string()))
            .chain((!spectral_violations.is_empty()).then(|| "identity_spectral".to_string()))
            .collect();
        CliError::validation(
            "PropertyFailure",
            format!("failed checks: {}", failed.join(", ")),
        )
    });
    Ok(Outcome { report, failure })
}

fn mu_one(source: &str, args: &MuArgs, w: &Profile1D, seed: u64) -> Result<Value, CliError> {
    let mut field = load_field(source, &args.field)?;
    if args.normalize {
        field = field.normalized();
    }
    let eval = Autonomous::new(&field)?;
    let mut report = eval.report(w);
    if args.zeta {
        if report.c0_norm == 0.0 {
            return Err(calabi_core::calabi::CalabiError::ZeroNorm.into());
        }
        report.zeta_lower = Some(report.mu.abs() / report.c0_norm);
    }
    if args.check_w {
        report.in_w = Some(eval.in_class_w(args.eps_bisect));
    }
    let mut value = to_value(&report);
    if let Some(n) = args.oracle_samples {
        let est = monte_carlo_integral(&field, w, n, seed);
        value["oracle"] = json!({
            "samples": est.samples,
            "integral_term": est.mean,
            "std_error": est.std_error,
            "mu": est.mean - report.median_term,
        });
    }
    Ok(value)
}

pub fn mu(args: &MuArgs, seed: u64) -> Result<Outcome, CliError> {
    let w = load_profile(&args.profile)?;
    if args.meshes.len() == 1 {
        return Ok(mu_one(&args.meshes[0], args, &w, seed)?.into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(|e| CliError::internal("ThreadPool", e.to_string()))?;
    let reports = pool.install(|| {
        args.meshes
            .par_iter()
            .map(|m| mu_one(m, args, &w, seed))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(Value::Array(reports).into())
}

pub fn family(args: &FamilyArgs) -> Result<Outcome, CliError> {
    let variant: FamilyVariant = args.variant.parse()?;
    let profiles = match (&args.profiles, args.bumps) {
        (Some(path), _) => load_profiles(path)?,
        (None, Some(half_width)) => bump_profiles(variant, &args.eps, half_width)?,
        (None, None) => unreachable!("clap requires --profiles or --bumps"),
    };
    let report =
        linear_independence(variant, &args.eps, &profiles)?.with_rank_tolerance(args.rank_tol);
    Ok(if args.rank {
        to_value(&report)
    } else {
        json!({"variant": report.variant, "eps": report.eps, "matrix": report.matrix})
    }
    .into())
}

pub fn tree(args: &TreeArgs) -> Result<Outcome, CliError> {
    let field = load_field(&args.mesh, &args.field)?;
    let tree = build_reeb_tree(&field)?;
    if let Some(path) = &args.csv {
        fs::write(path, tree.profile_csv()).map_err(|e| CliError::io(path, e))?;
    }
    Ok(to_value(&tree.to_json()).into())
}

pub fn fixture(args: &FixtureArgs) -> Result<Outcome, CliError> {
    Ok(to_value(&fixture_document(&args.name, args.level)?).into())
}
