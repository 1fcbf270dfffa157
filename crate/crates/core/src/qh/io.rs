//! JSON algebra definitions:
//!
//! ```json
//! {"basis": [{"name": "[M]", "degree": 2}, {"name": "P", "degree": 0}],
//!  "unit": 0,
//!  "mul": [[1, 1, [[0, {"num": [[0, "1", "0"]], "den": [[1, "1", "0"]]}]]]],
//!  "pairing": [[0, 1, "1"]],
//!  "n": 1, "N": 2, "Omega": "1"}
//! ```

use serde::{Deserialize, Serialize};

use crate::laurent::{parse_rational, rational_to_string, FieldElement, GaussianRational};

use super::{AlgebraError, BasisClass, FrobeniusAlgebra};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDefinition {
    #[serde(default)]
    pub name: Option<String>,
    pub basis: Vec<BasisClass>,
    pub unit: usize,
    pub mul: Vec<(usize, usize, Vec<(usize, FieldElement)>)>,
    pub pairing: Vec<(usize, usize, String)>,
    pub n: u32,
    #[serde(rename = "N")]
    pub chern: u32,
    #[serde(rename = "Omega", default = "default_omega")]
    pub omega: String,
}

fn default_omega() -> String {
    "1".to_string()
}

impl AlgebraDefinition {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Invalid(e.to_string()))
    }

    pub fn build(self) -> Result<FrobeniusAlgebra, AlgebraError> {
        let pairing = self
            .pairing
            .into_iter()
            .map(|(i, j, v)| {
                parse_rational(&v)
                    .map(|r| (i, j, GaussianRational::from_rational(r)))
                    .map_err(|e| AlgebraError::Invalid(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let omega =
            parse_rational(&self.omega).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
        FrobeniusAlgebra::from_parts(
            self.name.unwrap_or_else(|| "custom".to_string()),
            self.basis,
            self.unit,
            self.mul,
            pairing,
            self.n,
            self.chern,
            omega,
        )
    }
}

impl FrobeniusAlgebra {
    pub fn from_json(text: &str) -> Result<Self, AlgebraError> {
        AlgebraDefinition::from_json(text)?.build()
    }

    /// Definition listing every nonzero product with `i ≤ j` and every nonzero
    /// pairing entry with `i ≤ j`.
    pub fn to_definition(&self) -> AlgebraDefinition {
        let dim = self.dim();
        let mut mul = Vec::new();
        let mut pairing = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let terms: Vec<(usize, FieldElement)> = self
                    .product_of_basis(i, j)
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(l, c)| (l, c.clone()))
                    .collect();
                if !terms.is_empty() {
                    mul.push((i, j, terms));
                }
                let g = &self.intersection_form()[i][j];
                if !g.is_zero() {
                    pairing.push((i, j, rational_to_string(&g.re)));
                }
            }
        }
        AlgebraDefinition {
            name: Some(self.name().to_string()),
            basis: self.basis().to_vec(),
            unit: self.unit_index(),
            mul,
            pairing,
            n: self.half_dim(),
            chern: self.chern_number(),
            omega: rational_to_string(self.omega()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin_algebra;
    use super::*;

    #[test]
    fn definition_round_trip() {
        for name in ["S2", "CP3", "S2xS2", "CP2blowup"] {
            let alg = builtin_algebra(name).unwrap();
            let text = serde_json::to_string(&alg.to_definition()).unwrap();
            assert_eq!(FrobeniusAlgebra::from_json(&text).unwrap(), alg, "{name}");
        }
    }

    #[test]
    fn reads_documented_example() {
        let text = r#"{"basis": [{"name": "[M]", "degree": 2}, {"name": "P", "degree": 0}],
            "unit": 0,
            "mul": [[1, 1, [[0, {"num": [[-1, "1", "0"]]}]]]],
            "pairing": [[0, 1, "1"]],
            "n": 1, "N": 2, "Omega": "3/2"}"#;
        let alg = FrobeniusAlgebra::from_json(text).unwrap();
        assert!(alg.validate().all_passed());
        assert!(alg.is_semisimple().unwrap().semisimple);
        assert_eq!(alg.omega(), &parse_rational("3/2").unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(FrobeniusAlgebra::from_json("{}").is_err());
        let bad_index = r#"{"basis": [{"name": "[M]", "degree": 0}], "unit": 3,
            "mul": [], "pairing": [[0, 0, "1"]], "n": 0, "N": 1}"#;
        assert!(FrobeniusAlgebra::from_json(bad_index).is_err());
    }
}
