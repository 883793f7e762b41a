//! The JSON structure file: a quadratic bivector as a term list, or a
//! generator from which the term list is computed.

use qpoisson::calculus::{Calculus, Side};
use qpoisson::duality::{eg_bracket, pym_bracket, pym_form};
use qpoisson::poisson::{QuadraticBivector, Term};
use qpoisson::scalar::{format_q, parse_q};
use qpoisson::Q;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub n: usize,
    pub side: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<(usize, usize, usize, usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
}

/// `eg`: the cubic φ in x1..x3. `pym`: the four cubic coefficients of α in x1..x4.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Generator {
    Eg(String),
    Pym([String; 4]),
}

pub fn parse_rational(s: &str, at: &str) -> Result<Q, CliError> {
    parse_q(s.trim()).map_err(|_| CliError::Input(format!("{at}: {s:?} is not an exact rational")))
}

impl StructureFile {
    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        Self::parse(&text).map_err(|CliError::Input(m)| CliError::Input(format!("{path}: {m}")))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn from_bivector(pi: &QuadraticBivector) -> Self {
        let terms = pi.terms().into_iter().map(|t| (t.i1, t.i2, t.j1, t.j2, format_q(&t.coeff))).collect();
        StructureFile { n: pi.n(), side: pi.side().name().into(), terms: Some(terms), generator: None }
    }

    pub fn bivector(&self) -> Result<QuadraticBivector, CliError> {
        let side = Side::parse(&self.side)
            .map_err(|_| CliError::Input(format!("side: expected \"primal\" or \"koszul\", got {:?}", self.side)))?;
        if self.n == 0 {
            return Err(CliError::Input("n: must be at least 1".into()));
        }
        let from_terms = match &self.terms {
            None => None,
            Some(ts) => {
                let mut out = Vec::new();
                for (k, (i1, i2, j1, j2, c)) in ts.iter().enumerate() {
                    for (name, v) in [("i1", i1), ("i2", i2), ("j1", j1), ("j2", j2)] {
                        if *v == 0 || *v > self.n {
                            return Err(CliError::Input(format!("terms[{k}].{name}: {v} outside 1..={}", self.n)));
                        }
                    }
                    let coeff = parse_rational(c, &format!("terms[{k}] coefficient"))?;
                    out.push(Term { i1: *i1, i2: *i2, j1: *j1, j2: *j2, coeff });
                }
                Some(QuadraticBivector::new(self.n, side, &out).map_err(|e| CliError::Input(format!("terms: {e}")))?)
            }
        };
        let from_gen = match &self.generator {
            None => None,
            Some(g) => {
                if side != Side::Primal {
                    return Err(CliError::Input("generator: only available on the primal side".into()));
                }
                Some(generate(g, self.n)?)
            }
        };
        match (from_terms, from_gen) {
            (Some(a), Some(b)) if a != b => Err(CliError::Input("terms: disagree with the generator block".into())),
            (Some(a), _) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(CliError::Input("expected a terms list or a generator block".into())),
        }
    }
}

fn generate(g: &Generator, n: usize) -> Result<QuadraticBivector, CliError> {
    let bad = |what: &str, e: qpoisson::Error| CliError::Input(format!("generator.{what}: {e}"));
    match g {
        Generator::Eg(phi) => {
            if n != 3 {
                return Err(CliError::Input(format!("generator.eg: needs n = 3, got {n}")));
            }
            let c = Calculus::get(3, Side::Primal);
            let f = c.poly(phi).map_err(|e| bad("eg", e))?;
            eg_bracket(&f).map_err(|e| bad("eg", e))
        }
        Generator::Pym(coeffs) => {
            if n != 4 {
                return Err(CliError::Input(format!("generator.pym: needs n = 4, got {n}")));
            }
            let c = Calculus::get(4, Side::Primal);
            let fs = coeffs.iter().map(|s| c.poly(s)).collect::<Result<Vec<_>, _>>().map_err(|e| bad("pym", e))?;
            let alpha = pym_form(&fs).map_err(|e| bad("pym", e))?;
            pym_bracket(&alpha).map_err(|e| bad("pym", e))
        }
    }
}
