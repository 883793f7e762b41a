use qpoisson::calculus::Side;
use qpoisson::duality::{
    eg_bracket, is_unimodular, pym_bracket, verify_bv_identity, verify_theorem2, verify_theorem3, UnimodularReport, Unimodularity,
};
use qpoisson::hochschild::{
    hochschild_dims, tradler_on_cohomology, verify_identities, FiniteGradedAlgebra, HochCoefficients, SymmetricPairing,
};
use qpoisson::koszul::{koszul_acyclicity, verify_theorem1, QuadraticPresentation, Theorem1Report};
use qpoisson::poisson::{homology_dims, jacobi_check, weight_window, QuadraticBivector, Which};
use qpoisson::random;
use serde_json::{json, Value};

use crate::algebra_file::AlgebraFile;
use crate::report::{betti, betti_auto, terms, Report};
use crate::structure::StructureFile;
use crate::{CliError, Family, Statement};

pub struct Outcome {
    pub report: Report,
    pub ok: bool,
    /// Print the report as is, without the timing field.
    pub raw: bool,
}

impl Outcome {
    fn new(command: &str, ok: bool, body: Value) -> Self {
        let mut report = match body {
            Value::Object(m) => m,
            _ => unreachable!("report bodies are objects"),
        };
        report.insert("command".into(), command.into());
        report.insert("ok".into(), ok.into());
        Outcome { report, ok, raw: false }
    }
}

type Out = Result<Outcome, CliError>;

fn load(file: &str) -> Result<QuadraticBivector, CliError> {
    StructureFile::read(file)?.bivector()
}

fn check_max_weight(w: i32) -> Result<(), CliError> {
    if w < 0 {
        return Err(CliError::Input(format!("--max-weight: must be nonnegative, got {w}")));
    }
    Ok(())
}

/// Library refusals that carry a witness are violations, the rest are input errors.
fn refused(command: &str, e: qpoisson::Error) -> Out {
    match e {
        qpoisson::Error::NotJacobi { witness } => Ok(Outcome::new(command, false, json!({ "violation": "jacobi", "witness": witness }))),
        qpoisson::Error::NotUnimodular { witness } => {
            Ok(Outcome::new(command, false, json!({ "violation": "unimodular", "witness": witness })))
        }
        other => Err(other.into()),
    }
}

/// Refuses non-Poisson input with `[π, π]` as the witness.
fn require_jacobi(command: &str, pi: &QuadraticBivector) -> Option<Outcome> {
    let r = jacobi_check(pi);
    (!r.holds).then(|| Outcome::new(command, false, json!({ "violation": "jacobi", "witness": terms(&r.witness) })))
}

fn structure(pi: &QuadraticBivector) -> Value {
    serde_json::to_value(StructureFile::from_bivector(pi)).expect("serializable")
}

pub fn jacobi(file: &str) -> Out {
    let pi = load(file)?;
    let r = jacobi_check(&pi);
    Ok(Outcome::new("jacobi", r.holds, json!({ "structure": structure(&pi), "holds": r.holds, "witness": terms(&r.witness) })))
}

pub fn dual(file: &str) -> Out {
    let pi = load(file)?;
    let mut out = Outcome::new("dual", true, json!({}));
    out.report = match structure(&pi.koszul_dual()) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    out.raw = true;
    Ok(out)
}

fn parse_degrees(text: Option<&str>, n: usize) -> Result<std::ops::RangeInclusive<u32>, CliError> {
    let Some(t) = text else { return Ok(0..=n as u32) };
    let bad = || CliError::Input(format!("--degrees: expected a..b with 0 <= a <= b, got {t:?}"));
    let (a, b) = t.split_once("..").ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

pub fn homology(file: &str, which: &str, max_weight: i32, degrees: Option<&str>) -> Out {
    check_max_weight(max_weight)?;
    let which = Which::parse(which).map_err(|e| CliError::Input(format!("--which: {e}")))?;
    let pi = load(file)?;
    let degrees = parse_degrees(degrees, pi.n())?;
    if let Some(v) = require_jacobi("homology", &pi) {
        return Ok(v);
    }
    let weights = weight_window(which, pi.n(), max_weight);
    let t = match homology_dims(&pi, which, degrees.clone(), weights.clone()) {
        Ok(t) => t,
        Err(e) => return refused("homology", e),
    };
    Ok(Outcome::new(
        "homology",
        true,
        json!({ "which": which.name(), "side": pi.side().name(), "max_weight": max_weight, "betti": betti(&t, degrees, weights) }),
    ))
}

fn verdict_name(v: &Unimodularity) -> &'static str {
    match v {
        Unimodularity::Unimodular => "unimodular",
        Unimodularity::NotUnimodular => "not_unimodular",
        Unimodularity::Discrepancy => "discrepancy",
    }
}

fn unimodular_json(r: &UnimodularReport) -> Value {
    let square = r.square_witness.as_ref().map(|(p, v)| json!({ "polyvector": terms(p), "defect": terms(v) }));
    json!({
        "side": r.side.name(),
        "verdict": verdict_name(&r.verdict),
        "cycle_witness": terms(&r.cycle_witness),
        "square_witness": square,
        "max_weight": r.max_weight,
    })
}

pub fn unimodular(file: &str, max_weight: i32) -> Out {
    check_max_weight(max_weight)?;
    let pi = load(file)?;
    if let Some(v) = require_jacobi("unimodular", &pi) {
        return Ok(v);
    }
    let r = match is_unimodular(&pi, max_weight) {
        Ok(r) => r,
        Err(e) => return refused("unimodular", e),
    };
    Ok(Outcome::new("unimodular", r.verdict != Unimodularity::Discrepancy, unimodular_json(&r)))
}

pub fn bv_verify(file: &str, samples: usize, seed: u64, max_weight: i32) -> Out {
    check_max_weight(max_weight)?;
    let pi = load(file)?;
    if let Some(v) = require_jacobi("bv-verify", &pi) {
        return Ok(v);
    }
    let r = match verify_bv_identity(&pi, samples, max_weight, seed) {
        Ok(r) => r,
        Err(e) => return refused("bv-verify", e),
    };
    Ok(Outcome::new(
        "bv-verify",
        r.holds(),
        json!({
            "samples": r.samples,
            "seed": seed,
            "bracket_failures": r.bracket_failures,
            "square_zero_failures": r.square_zero_failures,
            "seven_term_failures": r.seven_term_failures,
            "chain_failures": r.chain_failures,
            "first_failure": r.first_failure,
        }),
    ))
}

fn theorem1_json(r: &Theorem1Report, n: usize) -> Value {
    let w = r.max_weight;
    let low = json!({
        "primal": betti(&r.low.0, 0..=n as u32, 0..=w),
        "dual": betti(&r.low.1, 0..=n as u32, 0..=w),
    });
    let high = json!({
        "primal": betti(&r.high.0, 0..=n as u32, -(n as i32)..=w),
        "dual": betti(&r.high.1, 0..=n as u32, -(n as i32)..=w),
    });
    json!({
        "max_weight": w,
        "slices_checked": r.slices_checked,
        "map_failure": r.map_failure,
        "tables_agree": r.tables_agree(),
        "low": low,
        "high": high,
    })
}

pub fn verify(statement: Statement, file: &str, max_weight: i32) -> Out {
    check_max_weight(max_weight)?;
    let pi = load(file)?;
    if let Some(v) = require_jacobi("verify", &pi) {
        return Ok(v);
    }
    let res = match statement {
        Statement::Thm1 => verify_theorem1(&pi, max_weight).map(|r| (r.holds(), theorem1_json(&r, pi.n()))),
        Statement::Thm2 => verify_theorem2(&pi, max_weight).map(|r| {
            let body = json!({
                "primal": unimodular_json(&r.primal),
                "dual": unimodular_json(&r.dual),
                "verdicts_agree": r.verdicts_agree,
                "square_checked": r.square_checked,
                "square_failure": r.square_failure.as_ref().map(terms),
            });
            (r.holds(), body)
        }),
        Statement::Thm3 => verify_theorem3(&pi, 0..=pi.n() as u32, max_weight).map(|r| {
            let body = json!({
                "representatives": r.representatives,
                "exact": r.exact,
                "cohomologous": r.cohomologous,
                "products_checked": r.products_checked,
                "failure": r.failure,
            });
            (r.holds(), body)
        }),
    };
    let (ok, mut body) = match res {
        Ok(x) => x,
        Err(e) => return refused("verify", e),
    };
    let name = match statement {
        Statement::Thm1 => "thm1",
        Statement::Thm2 => "thm2",
        Statement::Thm3 => "thm3",
    };
    body["statement"] = name.into();
    body["structure"] = structure(&pi);
    Ok(Outcome::new("verify", ok, body))
}

pub fn koszul_acyclic(file: Option<&str>, gens: Option<usize>, side: &str, max_weight: i32) -> Out {
    check_max_weight(max_weight)?;
    let (n, side) = match (file, gens) {
        (Some(f), _) => {
            let pi = load(f)?;
            (pi.n(), pi.side())
        }
        (None, Some(n)) => (n, Side::parse(side).map_err(|e| CliError::Input(format!("--side: {e}")))?),
        (None, None) => return Err(CliError::Input("koszul-acyclic: give a structure file or --gens".into())),
    };
    if n == 0 {
        return Err(CliError::Input("--gens: must be at least 1".into()));
    }
    let (name, pres) = match side {
        Side::Primal => ("polynomial", QuadraticPresentation::polynomial(n)?),
        Side::Koszul => ("exterior", QuadraticPresentation::exterior(n)?),
    };
    let r = koszul_acyclicity(&pres, max_weight as usize)?;
    let slices: Vec<Value> = r.slices.iter().map(|s| json!({ "weight": s.weight, "dims": s.dims, "homology": s.homology })).collect();
    Ok(Outcome::new(
        "koszul-acyclic",
        r.is_koszul(),
        json!({ "algebra": name, "gens": n, "max_weight": max_weight, "slices": slices, "failing": r.failing }),
    ))
}

pub fn hochschild(algebra: &str, gens: usize, max_level: usize, cartan_fuzz: usize, seed: u64) -> Out {
    let a = if algebra == "exterior" {
        if gens == 0 {
            return Err(CliError::Input("--gens: must be at least 1".into()));
        }
        FiniteGradedAlgebra::exterior(gens)?
    } else {
        AlgebraFile::read(algebra)?
    };
    let dims = hochschild_dims(&a, HochCoefficients::SelfValued, max_level);
    let mut ok = true;
    let tradler = match SymmetricPairing::top_coefficient(&a) {
        Ok(eta) => {
            let mut slices = Vec::new();
            for &(lvl, w) in dims.entries.keys() {
                let (h, t, rk) = tradler_on_cohomology(&a, &eta, lvl as usize, w);
                let bijective = h == t && t == rk;
                ok &= bijective;
                if h > 0 || t > 0 {
                    slices.push(json!({ "level": lvl, "degree": w, "source": h, "target": t, "rank": rk, "bijective": bijective }));
                }
            }
            Value::Array(slices)
        }
        Err(e) => json!({ "skipped": e.to_string() }),
    };
    let mut body = json!({
        "algebra": algebra,
        "basis": a.names(),
        "max_level": max_level,
        "dims": betti_auto(&dims),
        "tradler": tradler,
    });
    if cartan_fuzz > 0 {
        let r = verify_identities(&a, cartan_fuzz, max_level, seed);
        ok &= r.holds();
        let failures: serde_json::Map<String, Value> = r.failures.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
        body["identities"] = json!({ "samples": r.samples, "seed": seed, "failures": failures });
    }
    Ok(Outcome::new("hochschild", ok, body))
}

fn bad_case(e: qpoisson::Error) -> CliError {
    CliError::Input(format!("generator failed: {e}"))
}

pub fn fuzz(family: Family, cases: usize, seed: u64, max_weight: i32) -> Out {
    check_max_weight(max_weight)?;
    let mut r = random::rng(seed);
    let mut failures = Vec::new();
    let (mut non_poisson, mut unimodular, mut checked) = (0usize, 0usize, 0usize);
    for case in 0..cases {
        let pi = match family {
            Family::Eg => eg_bracket(&random::cubic(&mut r, 4).map_err(bad_case)?).map_err(bad_case)?,
            Family::Pym => pym_bracket(&random::pym_form(&mut r, 3).map_err(bad_case)?).map_err(bad_case)?,
            Family::Random => random::tensor(&mut r, 3, Side::Primal, 3).map_err(bad_case)?,
        };
        let mut fail = |reason: String| failures.push(json!({ "case": case, "structure": structure(&pi), "reason": reason }));
        if !jacobi_check(&pi).holds {
            // random tensors are rarely Poisson; the families always are
            match family {
                Family::Random => non_poisson += 1,
                _ => fail("jacobi identity fails".into()),
            }
            continue;
        }
        checked += 1;
        match verify_theorem1(&pi, max_weight) {
            Ok(t) if t.holds() => {}
            Ok(t) => fail(format!("thm1: {}", t.map_failure.unwrap_or_else(|| "tables differ".into()))),
            Err(e) => fail(format!("thm1: {e}")),
        }
        match verify_theorem2(&pi, max_weight) {
            Ok(t) if t.holds() => unimodular += t.primal.is_unimodular() as usize,
            Ok(t) => fail(format!("thm2: primal {}, dual {}", verdict_name(&t.primal.verdict), verdict_name(&t.dual.verdict))),
            Err(e) => fail(format!("thm2: {e}")),
        }
    }
    let family = match family {
        Family::Eg => "eg",
        Family::Pym => "pym",
        Family::Random => "random",
    };
    Ok(Outcome::new(
        "fuzz",
        failures.is_empty(),
        json!({
            "family": family,
            "cases": cases,
            "seed": seed,
            "max_weight": max_weight,
            "checked": checked,
            "non_poisson": non_poisson,
            "unimodular": unimodular,
            "failures": failures,
        }),
    ))
}
