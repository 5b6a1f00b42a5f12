//! Parameter sweeps rendered as CSV.

use std::fmt::Write as _;

use ccrkit::{
    coherence_hs, coherence_l1, coherence_re, concurrence_generalized, correlated_coherence, linear_entropy,
    nonlocal_coherence_hs_direct, pairwise_correlated_coherence, partial_trace, predictability_hs,
    predictability_l1, predictability_vn, von_neumann_entropy, Bipartition, CoherenceKind, DensityOperator64,
};

use crate::error::CliError;
use crate::params::ParamSet;

/// Quantities a sweep can tabulate, all for one target subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    PHs,
    PVn,
    PL1,
    CHs,
    CRe,
    CL1,
    SVn,
    SL,
    CNl,
    Concurrence,
    ConcurrenceSq,
    PHsSq,
    CCorrHs,
    CCorrL1,
    CCorrRe,
    CCorrHsPairs,
    CCorrL1Pairs,
}

pub const MEASURE_NAMES: [(&str, Measure); 17] = [
    ("p_hs", Measure::PHs),
    ("p_vn", Measure::PVn),
    ("p_l1", Measure::PL1),
    ("c_hs", Measure::CHs),
    ("c_re", Measure::CRe),
    ("c_l1", Measure::CL1),
    ("s_vn", Measure::SVn),
    ("s_l", Measure::SL),
    ("c_nl", Measure::CNl),
    ("concurrence", Measure::Concurrence),
    ("concurrence_sq", Measure::ConcurrenceSq),
    ("p_hs_sq", Measure::PHsSq),
    ("c_corr_hs", Measure::CCorrHs),
    ("c_corr_l1", Measure::CCorrL1),
    ("c_corr_re", Measure::CCorrRe),
    ("c_corr_hs_pairs", Measure::CCorrHsPairs),
    ("c_corr_l1_pairs", Measure::CCorrL1Pairs),
];

impl Measure {
    pub fn from_name(name: &str) -> Option<Self> {
        MEASURE_NAMES.iter().find(|(n, _)| *n == name).map(|&(_, m)| m)
    }

    pub fn evaluate(self, rho: &DensityOperator64, target: usize) -> Result<f64, CliError> {
        let n = rho.signature().len();
        let local = || partial_trace(rho, &[target]);
        let isolate = || Bipartition::isolate(target, n);
        Ok(match self {
            Measure::PHs => predictability_hs(&local()?).value,
            Measure::PVn => predictability_vn(&local()?).value,
            Measure::PL1 => predictability_l1(&local()?).value,
            Measure::CHs => coherence_hs(&local()?).value,
            Measure::CRe => coherence_re(&local()?)?.value,
            Measure::CL1 => coherence_l1(&local()?).value,
            Measure::SVn => von_neumann_entropy(&local()?)?,
            Measure::SL => linear_entropy(&local()?),
            Measure::CNl => nonlocal_coherence_hs_direct(rho, target)?.value,
            Measure::Concurrence => concurrence_generalized(&local()?).value,
            Measure::ConcurrenceSq => concurrence_generalized(&local()?).value.powi(2),
            // the squared Jakob-Bergou predictability
            Measure::PHsSq => 2.0 * predictability_hs(&local()?).value,
            Measure::CCorrHs => correlated_coherence(rho, &isolate(), CoherenceKind::HilbertSchmidt)?,
            Measure::CCorrL1 => correlated_coherence(rho, &isolate(), CoherenceKind::L1Norm)?,
            Measure::CCorrRe => correlated_coherence(rho, &isolate(), CoherenceKind::RelativeEntropy)?,
            Measure::CCorrHsPairs => pairwise_correlated_coherence(rho, target, CoherenceKind::HilbertSchmidt)?,
            Measure::CCorrL1Pairs => pairwise_correlated_coherence(rho, target, CoherenceKind::L1Norm)?,
        })
    }
}

/// One CSV column: a measure or a `+`-joined sum of measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub header: String,
    pub terms: Vec<Measure>,
}

impl Column {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let terms = spec
            .split('+')
            .map(|t| {
                Measure::from_name(t.trim()).ok_or_else(|| {
                    let known: Vec<&str> = MEASURE_NAMES.iter().map(|(n, _)| *n).collect();
                    CliError::Input(format!("unknown measure '{}', expected one of {}", t.trim(), known.join(", ")))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Column { header: spec.replace(' ', ""), terms })
    }

    fn evaluate(&self, rho: &DensityOperator64, target: usize) -> Result<f64, CliError> {
        self.terms.iter().map(|m| m.evaluate(rho, target)).sum()
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub factory: String,
    pub param: String,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub fixed: ParamSet,
    pub columns: Vec<Column>,
    pub target: usize,
}

impl SweepConfig {
    pub fn grid(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|k| if k == last { self.stop } else { self.start + (self.stop - self.start) * k as f64 / last as f64 })
            .collect()
    }
}

/// Evaluate the whole grid, then render. Nothing is produced if any point fails.
pub fn run_sweep(config: &SweepConfig) -> Result<String, CliError> {
    if config.points < 2 {
        return Err(CliError::Input("--points must be at least 2".into()));
    }
    if config.columns.is_empty() {
        return Err(CliError::Input("no measures requested".into()));
    }
    if config.fixed.get(&config.param).is_some() {
        return Err(CliError::Input(format!("--{} is both swept and fixed", config.param)));
    }
    let mut out = String::from("param");
    for c in &config.columns {
        out.push(',');
        out.push_str(&c.header);
    }
    out.push('\n');
    for v in config.grid() {
        let mut params = config.fixed.clone();
        params.set(&config.param, v.into());
        let rho = params.build(&config.factory)?.density();
        if config.target >= rho.signature().len() {
            return Err(CliError::Input(format!(
                "target {} out of range for {} subsystems",
                config.target,
                rho.signature().len()
            )));
        }
        write!(out, "{v}").unwrap();
        for c in &config.columns {
            write!(out, ",{}", c.evaluate(&rho, config.target)?).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}
