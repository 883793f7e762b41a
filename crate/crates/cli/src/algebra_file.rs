//! Finite graded algebras from JSON: basis names (the first is the unit),
//! degrees, and the nonzero products of non-unit basis elements.

use qpoisson::hochschild::FiniteGradedAlgebra;
use qpoisson::scalar::q;
use serde::Deserialize;

use crate::structure::parse_rational;
use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub basis: Vec<String>,
    pub degrees: Vec<i32>,
    /// `[left, right, result, coefficient]`.
    #[serde(default)]
    pub products: Vec<(String, String, String, String)>,
}

impl AlgebraFile {
    pub fn read(path: &str) -> Result<FiniteGradedAlgebra, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        let file: AlgebraFile =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{path}: line {} column {}: {e}", e.line(), e.column())))?;
        file.algebra().map_err(|CliError::Input(m)| CliError::Input(format!("{path}: {m}")))
    }

    pub fn algebra(&self) -> Result<FiniteGradedAlgebra, CliError> {
        let d = self.basis.len();
        if d == 0 {
            return Err(CliError::Input("basis: empty".into()));
        }
        if self.degrees.len() != d {
            return Err(CliError::Input(format!("degrees: expected {d} entries, got {}", self.degrees.len())));
        }
        let index = |name: &str, at: String| {
            self.basis.iter().position(|b| b == name).ok_or_else(|| CliError::Input(format!("{at}: unknown basis element {name:?}")))
        };
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            table[0][i].push((i, q(1)));
            if i > 0 {
                table[i][0].push((i, q(1)));
            }
        }
        for (k, (a, b, c, x)) in self.products.iter().enumerate() {
            let (i, j, r) = (index(a, format!("products[{k}]"))?, index(b, format!("products[{k}]"))?, index(c, format!("products[{k}]"))?);
            if i == 0 || j == 0 {
                return Err(CliError::Input(format!("products[{k}]: products with the unit {:?} are implied", self.basis[0])));
            }
            table[i][j].push((r, parse_rational(x, &format!("products[{k}] coefficient"))?));
        }
        Ok(FiniteGradedAlgebra::new(self.basis.clone(), self.degrees.clone(), table)?)
    }
}
