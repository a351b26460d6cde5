//! Problem files: parsing, validation and the canonical echo.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use torimult::corpus::Instance;
use torimult::error::Error;
use torimult::exact::{format_rational, parse_rational, LatticeVector, Rational};
use torimult::ideal::{make_ideal, MonomialIdeal};
use torimult::toric::{make_variety, QDivisor, ToricVariety};

use crate::CliError;

/// The on-disk schema. Rationals are strings `"p/q"` or `"p"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<String>>,
    pub ideal: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<String>,
}

pub struct Problem {
    /// Normalized copy of the input, used as the echo.
    pub file: ProblemFile,
    pub variety: Arc<ToricVariety>,
    pub delta: Option<QDivisor>,
    pub ideal: MonomialIdeal,
    pub c: Option<Rational>,
}

fn check_lengths(what: &str, vs: &[Vec<i64>], rank: usize) -> Result<(), CliError> {
    if vs.is_empty() {
        return Err(CliError::parse(format!("{what} must not be empty")));
    }
    for v in vs {
        if v.len() != rank {
            return Err(CliError::parse(format!(
                "{what} entry {v:?} has length {}, expected rank {rank}",
                v.len()
            )));
        }
    }
    Ok(())
}

fn rational(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(CliError::from)
}

fn to_lattice(vs: &[Vec<i64>]) -> Vec<LatticeVector> {
    vs.iter().map(|v| LatticeVector::from_i64s(v)).collect()
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::parse(format!("malformed problem file: {e}")))
    }

    /// Syntax checks (exit 2) followed by semantic validation (exit 3).
    pub fn load(mut self) -> Result<Problem, CliError> {
        if self.rank == 0 {
            return Err(CliError::parse("rank must be positive".into()));
        }
        check_lengths("rays", &self.rays, self.rank)?;
        check_lengths("ideal", &self.ideal, self.rank)?;
        let delta = match &self.delta {
            None => None,
            Some(d) if d.len() != self.rays.len() => {
                return Err(CliError::parse(format!(
                    "delta has {} coefficients for {} rays",
                    d.len(),
                    self.rays.len()
                )))
            }
            Some(d) => Some(
                d.iter()
                    .map(|s| rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let c = self.c.as_deref().map(rational).transpose()?;
        self.delta = delta
            .as_ref()
            .map(|d| d.iter().map(format_rational).collect());
        self.c = c.as_ref().map(format_rational);

        let variety = Arc::new(make_variety(self.rank, to_lattice(&self.rays))?);
        let ideal = make_ideal(variety.clone(), to_lattice(&self.ideal))?;
        if let Some(c) = &c {
            if *c <= Rational::from_integer(0.into()) {
                return Err(Error::NonPositive(c.clone()).into());
            }
        }
        Ok(Problem {
            file: self,
            variety,
            delta: delta.map(QDivisor),
            ideal,
            c,
        })
    }

    /// A problem file that reproduces a generated instance.
    pub fn from_instance(inst: &Instance) -> Self {
        let ints = |vs: &[LatticeVector]| -> Vec<Vec<i64>> {
            vs.iter()
                .map(|v| {
                    v.coords()
                        .iter()
                        .map(|x| i64::try_from(x).expect("small corpus entries"))
                        .collect()
                })
                .collect()
        };
        let delta = inst.delta.coeffs();
        ProblemFile {
            rank: inst.variety.rank(),
            rays: ints(inst.variety.rays()),
            delta: if delta.iter().all(|d| *d == Rational::from_integer(0.into())) {
                None
            } else {
                Some(delta.iter().map(format_rational).collect())
            },
            ideal: ints(inst.ideal.exponents()),
            c: Some(format_rational(&inst.c)),
        }
    }
}

impl Problem {
    pub fn require_c(&self) -> Result<&Rational, CliError> {
        self.c.as_ref().ok_or_else(|| {
            CliError::parse("this command needs an exponent: give \"c\" in the file or --c".into())
        })
    }

    pub fn forbid_delta(&self, command: &str) -> Result<(), CliError> {
        if self.delta.is_some() {
            return Err(CliError::parse(format!(
                "{command} takes no boundary; remove \"delta\" from the file"
            )));
        }
        Ok(())
    }

    pub fn delta_or_zero(&self) -> QDivisor {
        self.delta
            .clone()
            .unwrap_or_else(|| QDivisor::zero(self.variety.rays().len()))
    }

    pub fn instance(&self) -> Result<Instance, CliError> {
        Ok(Instance {
            variety: self.variety.clone(),
            delta: self.delta_or_zero(),
            ideal: self.ideal.clone(),
            c: self.require_c()?.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = r#"{"rank":2,"rays":[[1,0],[0,1]],"ideal":[[2,0],[0,3]],"c":"10/12"}"#;

    #[test]
    fn echo_normalizes_and_reparses() {
        let p = ProblemFile::from_json(CUSP).unwrap().load().unwrap();
        assert_eq!(p.file.c.as_deref(), Some("5/6"));
        let again = serde_json::to_string(&p.file).unwrap();
        let q = ProblemFile::from_json(&again).unwrap().load().unwrap();
        assert_eq!(q.file, p.file);
        assert_eq!(q.ideal.exponents(), p.ideal.exponents());
    }

    #[test]
    fn syntax_problems_are_parse_errors() {
        for bad in [
            r#"{"rank":2,"rays":[[1,0],[0,1]],"ideal":[[2,0,1]]}"#,
            r#"{"rank":2,"rays":[[1,0],[0,1]],"ideal":[[1,0]],"c":"x"}"#,
            r#"{"rank":2,"rays":[[1,0],[0,1]],"ideal":[[1,0]],"delta":["1"]}"#,
            r#"{"rank":2,"rays":[[1,0],[0,1]],"ideal":[[1,0]],"extra":1}"#,
        ] {
            let e = ProblemFile::from_json(bad)
                .and_then(ProblemFile::load)
                .err()
                .unwrap();
            assert_eq!(e.code, 2, "{bad}");
        }
    }

    #[test]
    fn semantic_problems_are_validation_errors() {
        let bad = r#"{"rank":2,"rays":[[1,0],[1,1],[0,1]],"ideal":[[1,0]]}"#;
        let e = ProblemFile::from_json(bad).unwrap().load().err().unwrap();
        assert_eq!(e.code, 3);
        assert!(e.message.contains("(1,1)"));
    }
}
