//! Factory selection from named scalar parameters.

use std::collections::BTreeMap;

use ccrkit::{build, BuiltState, Complex64, FactoryParams64, FACTORY_NAMES};

use crate::error::CliError;

/// Parameter names accepted by each factory, in flag order.
pub fn parameter_names(factory: &str) -> Option<&'static [&'static str]> {
    Some(match factory {
        "werner" => &["w", "x"],
        "bipartite-x" | "qutrit-jb" => &["x"],
        "w" => &["p"],
        "ghz" => &["a000", "a111"],
        "five-term" => &["lambda1", "lambda2", "lambda3", "lambda4", "lambda5"],
        "acin" => &["lambda1", "lambda2", "lambda3", "lambda4"],
        _ => return None,
    })
}

/// Parse `re`, `re:im` or `:im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let num = |t: &str| -> Result<f64, String> {
        if t.is_empty() {
            Ok(0.0)
        } else {
            t.trim().parse::<f64>().map_err(|_| format!("'{s}' is not a number or re:im pair"))
        }
    };
    match s.split_once(':') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None if !s.is_empty() => Ok(Complex64::new(num(s)?, 0.0)),
        None => Err("empty value".into()),
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamSet(BTreeMap<String, Complex64>);

impl ParamSet {
    pub fn set(&mut self, name: &str, value: Complex64) {
        self.0.insert(name.to_string(), value);
    }

    pub fn get(&self, name: &str) -> Option<Complex64> {
        self.0.get(name).copied()
    }

    fn real(&self, factory: &str, name: &str) -> Result<f64, CliError> {
        let z = self.require(factory, name)?;
        if z.im != 0.0 {
            return Err(CliError::Input(format!("--{name} must be real for {factory}")));
        }
        Ok(z.re)
    }

    fn require(&self, factory: &str, name: &str) -> Result<Complex64, CliError> {
        self.get(name).ok_or_else(|| CliError::Input(format!("factory {factory} needs --{name}")))
    }

    /// Reject parameters the factory does not take.
    fn check_known(&self, factory: &str, known: &[&str]) -> Result<(), CliError> {
        match self.0.keys().find(|k| !known.contains(&k.as_str())) {
            Some(k) => Err(CliError::Input(format!("factory {factory} does not take --{k}"))),
            None => Ok(()),
        }
    }

    pub fn to_factory(&self, factory: &str) -> Result<FactoryParams64, CliError> {
        let known = parameter_names(factory).ok_or_else(|| {
            CliError::Input(format!("unknown factory '{factory}', expected one of {}", FACTORY_NAMES.join(", ")))
        })?;
        self.check_known(factory, known)?;
        let lambdas = |n: usize| -> Result<Vec<Complex64>, CliError> {
            known[..n].iter().map(|k| self.require(factory, k)).collect()
        };
        Ok(match factory {
            "werner" => FactoryParams64::WernerLike { w: self.real(factory, "w")?, x: self.real(factory, "x")? },
            "bipartite-x" => FactoryParams64::BipartiteX { x: self.real(factory, "x")? },
            "qutrit-jb" => FactoryParams64::QutritJb { x: self.real(factory, "x")? },
            "w" => FactoryParams64::WState { p: self.real(factory, "p")? },
            "ghz" => FactoryParams64::Ghz { a000: self.require(factory, "a000")?, a111: self.require(factory, "a111")? },
            "five-term" => {
                let l = lambdas(5)?;
                FactoryParams64::FiveTerm { lambda: [l[0], l[1], l[2], l[3], l[4]] }
            }
            _ => {
                let l = lambdas(4)?;
                FactoryParams64::Acin { lambda: [l[0], l[1], l[2], l[3]] }
            }
        })
    }

    pub fn build(&self, factory: &str) -> Result<BuiltState<f64>, CliError> {
        Ok(build(&self.to_factory(factory)?)?)
    }
}
