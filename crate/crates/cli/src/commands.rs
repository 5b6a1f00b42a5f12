use ccrkit::{ccr, ccr_all_targets, haar_random_pure, CcrFlavor, CcrReport64, DimensionSignature, RandomSpec, Tolerances};
use rayon::prelude::*;
use serde_json::json;

use crate::error::CliError;

/// Result of a command: text for stdout and whether the check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn report_json(r: &CcrReport64, tolerance: f64) -> serde_json::Value {
    json!({
        "flavor": r.flavor.name(),
        "target": r.target,
        "predictability": r.predictability.value,
        "coherence": r.local_coherence.value,
        "correlation": r.correlation_term.value,
        "correlation_kind": r.correlation_term.kind.label(),
        "sum": r.sum,
        "bound": r.bound,
        "residual": r.residual,
        "tolerance": tolerance,
        "pass": r.residual.abs() < tolerance,
    })
}

pub fn report_text(r: &CcrReport64, tolerance: f64) -> String {
    let pass = r.residual.abs() < tolerance;
    format!(
        "flavor       {}\ntarget       {}\n{:<12} {}\n{:<12} {}\n{:<12} {}\nsum          {}\nbound        {}\nresidual     {:e}\nstatus       {} (tolerance {:e})\n",
        r.flavor.name(),
        r.target,
        r.predictability.kind.label(),
        r.predictability.value,
        r.local_coherence.kind.label(),
        r.local_coherence.value,
        r.correlation_term.kind.label(),
        r.correlation_term.value,
        r.sum,
        r.bound,
        r.residual,
        if pass { "PASS" } else { "FAIL" },
        tolerance,
    )
}

pub fn check(rho: &ccrkit::DensityOperator64, target: usize, flavor: CcrFlavor, tolerance: f64, as_json: bool) -> Result<Outcome, CliError> {
    let n = rho.signature().len();
    if target >= n {
        return Err(CliError::Input(format!("target {target} out of range for {n} subsystems")));
    }
    let report = ccr(rho, target, flavor, &Tolerances::default())?;
    let output = if as_json {
        format!("{}\n", report_json(&report, tolerance))
    } else {
        report_text(&report, tolerance)
    };
    Ok(Outcome { output, passed: report.residual.abs() < tolerance })
}

/// Aggregate |residual| over every sampled state and target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditSummary {
    pub max: f64,
    pub mean: f64,
    pub count: usize,
}

pub fn audit_summary(spec: &RandomSpec, flavor: CcrFlavor) -> Result<AuditSummary, CliError> {
    if spec.signature.len() < 2 {
        return Err(CliError::Input(format!(
            "invalid input (signature): audits need at least 2 subsystems, got {}",
            spec.signature
        )));
    }
    let states: Vec<_> = haar_random_pure::<f64>(spec).collect();
    let tol = Tolerances::default();
    let residuals = states
        .into_par_iter()
        .map(|psi| {
            ccr_all_targets(&psi.into_density(), flavor, &tol).map(|rs| rs.iter().map(|r| r.residual.abs()).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let all: Vec<f64> = residuals.into_iter().flatten().collect();
    let count = all.len();
    let max = all.iter().cloned().fold(0.0, f64::max);
    let mean = if count == 0 { 0.0 } else { all.iter().sum::<f64>() / count as f64 };
    Ok(AuditSummary { max, mean, count })
}

pub fn audit(dims: Vec<usize>, count: usize, seed: u64, flavor: CcrFlavor, tolerance: f64, as_json: bool) -> Result<Outcome, CliError> {
    let signature = DimensionSignature::new(dims)?;
    let spec = RandomSpec { signature, seed, count };
    let s = audit_summary(&spec, flavor)?;
    let passed = s.max < tolerance;
    let output = if as_json {
        format!(
            "{}\n",
            json!({
                "dims": spec.signature.dims(),
                "seed": seed,
                "states": count,
                "flavor": flavor.name(),
                "evaluations": s.count,
                "max_residual": s.max,
                "mean_residual": s.mean,
                "tolerance": tolerance,
                "pass": passed,
            })
        )
    } else {
        format!(
            "dims          {}\nseed          {seed}\nflavor        {}\nevaluations   {}\nmax residual  {:e}\nmean residual {:e}\nstatus        {} (tolerance {:e})\n",
            spec.signature,
            flavor.name(),
            s.count,
            s.max,
            s.mean,
            if passed { "PASS" } else { "FAIL" },
            tolerance
        )
    };
    Ok(Outcome { output, passed })
}
