//! Euler class, element inversion and the Abrams semisimplicity verdict.

use serde::Serialize;

use crate::laurent::FieldElement;

use super::linalg::{invert_matrix, solve, Matrix};
use super::{AlgebraElement, AlgebraError, FrobeniusAlgebra};

/// Outcome of the Abrams test: the algebra is semisimple iff its Euler class
/// is invertible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemisimplicityVerdict {
    pub semisimple: bool,
    pub euler_class: AlgebraElement,
    pub euler_inverse: Option<AlgebraElement>,
    pub witness: String,
}

impl FrobeniusAlgebra {
    /// `ℰ = Σ e_i ∗ e_i^♯` over the basis and its Δ-dual.
    pub fn euler_class(&self) -> Result<AlgebraElement, AlgebraError> {
        let basis: Vec<AlgebraElement> = (0..self.dim()).map(|i| self.basis_element(i)).collect();
        self.euler_class_in_basis(&basis)
    }

    /// Euler class computed from an arbitrary `k`-basis: the Gram matrix of Δ
    /// on `basis` is inverted over `k` to get the dual basis.
    pub fn euler_class_in_basis(
        &self,
        basis: &[AlgebraElement],
    ) -> Result<AlgebraElement, AlgebraError> {
        if basis.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: basis.len(),
            });
        }
        let mut gram: Matrix = Vec::with_capacity(basis.len());
        for bi in basis {
            let mut row = Vec::with_capacity(basis.len());
            for bj in basis {
                row.push(self.pairing_delta(bi, bj)?);
            }
            gram.push(row);
        }
        let inv = invert_matrix(&gram).ok_or(AlgebraError::DegeneratePairing)?;
        let mut euler = AlgebraElement::zero(self.dim());
        for (i, bi) in basis.iter().enumerate() {
            // b_i^♯ = Σ_j (G⁻¹)_{ji} b_j
            let mut dual = AlgebraElement::zero(self.dim());
            for (j, bj) in basis.iter().enumerate() {
                if !inv[j][i].is_zero() {
                    dual = dual.add(&bj.scale(&inv[j][i]));
                }
            }
            euler = euler.add(&self.quantum_mul(bi, &dual)?);
        }
        Ok(euler)
    }

    /// Matrix of `x ↦ a ∗ x` in the basis: column `j` holds `a ∗ e_j`.
    pub fn multiplication_matrix(&self, a: &AlgebraElement) -> Result<Matrix, AlgebraError> {
        let dim = self.dim();
        let mut m = vec![vec![FieldElement::zero(); dim]; dim];
        for j in 0..dim {
            let col = self.quantum_mul(a, &self.basis_element(j))?;
            for (l, c) in col.coords().iter().enumerate() {
                m[l][j] = c.clone();
            }
        }
        Ok(m)
    }

    /// Exact inverse of `a`, checked by back-multiplication.
    pub fn invert_element(&self, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        if a.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            });
        }
        if a.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        let m = self.multiplication_matrix(a)?;
        let unit = self.unit();
        let x = solve(&m, unit.coords()).ok_or(AlgebraError::NotInvertible)?;
        let x = AlgebraElement::new(x);
        if self.quantum_mul(a, &x)? != unit {
            return Err(AlgebraError::NotInvertible);
        }
        Ok(x)
    }

    pub fn is_semisimple(&self) -> Result<SemisimplicityVerdict, AlgebraError> {
        let euler = self.euler_class()?;
        let shown = self.format_element(&euler);
        Ok(match self.invert_element(&euler) {
            Ok(inv) => SemisimplicityVerdict {
                semisimple: true,
                witness: format!("E = {shown}; E * ({}) = [M]", self.format_element(&inv)),
                euler_class: euler,
                euler_inverse: Some(inv),
            },
            Err(AlgebraError::NotInvertible) => SemisimplicityVerdict {
                semisimple: false,
                witness: format!("E = {shown} is not invertible"),
                euler_class: euler,
                euler_inverse: None,
            },
            Err(e) => return Err(e),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin_algebra;
    use super::*;

    #[test]
    fn euler_examples() {
        let s2s2 = builtin_algebra("S2xS2").unwrap();
        assert_eq!(
            s2s2.euler_class().unwrap(),
            s2s2.parse_element("4P").unwrap()
        );
        let bl = builtin_algebra("CP2blowup").unwrap();
        assert_eq!(
            bl.euler_class().unwrap(),
            bl.parse_element("4P - A s^-1").unwrap()
        );
        let s2 = builtin_algebra("S2").unwrap();
        assert_eq!(s2.euler_class().unwrap(), s2.parse_element("2P").unwrap());
    }

    #[test]
    fn delta_of_blowup_euler_with_unit() {
        let bl = builtin_algebra("CP2blowup").unwrap();
        let e = bl.euler_class().unwrap();
        assert_eq!(
            bl.pairing_delta(&e, &bl.unit()).unwrap(),
            FieldElement::from_int(4)
        );
    }

    #[test]
    fn inversion_examples() {
        let bl = builtin_algebra("CP2blowup").unwrap();
        let inv = bl.invert_element(&bl.euler_class().unwrap()).unwrap();
        let expected = bl
            .parse_element("(-12 P s^4 + 9 A s^3 + 73 B s^3 + 16 s^2)/283")
            .unwrap();
        assert_eq!(inv, expected);

        let s2 = builtin_algebra("S2").unwrap();
        assert_eq!(s2.invert_element(&s2.unit()).unwrap(), s2.unit());
        assert_eq!(
            s2.invert_element(&s2.parse_element("P").unwrap()).unwrap(),
            s2.parse_element("s P").unwrap()
        );

        let s2s2 = builtin_algebra("S2xS2").unwrap();
        assert_eq!(
            s2s2.invert_element(&s2s2.parse_element("A - B").unwrap()),
            Err(AlgebraError::NotInvertible)
        );
        assert_eq!(
            s2s2.invert_element(&AlgebraElement::zero(4)),
            Err(AlgebraError::NotInvertible)
        );
    }

    #[test]
    fn verdicts() {
        for name in [
            "S2",
            "CP1",
            "CP2",
            "CP3",
            "CP4",
            "CP5",
            "S2xS2",
            "CP2blowup",
        ] {
            let alg = builtin_algebra(name).unwrap();
            let v = alg.is_semisimple().unwrap();
            assert!(v.semisimple, "{name}");
            let inv = v.euler_inverse.unwrap();
            assert_eq!(alg.quantum_mul(&v.euler_class, &inv).unwrap(), alg.unit());
        }
        let classical = builtin_algebra("S2classical").unwrap();
        let v = classical.is_semisimple().unwrap();
        assert!(!v.semisimple);
        assert!(v.euler_inverse.is_none());
        assert_eq!(v.euler_class, classical.parse_element("2P").unwrap());
    }

    #[test]
    fn degenerate_pairing_is_an_error() {
        use super::super::BasisClass;
        use crate::laurent::{GaussianRational, Rational};
        let alg = FrobeniusAlgebra::from_parts(
            "degenerate",
            vec![BasisClass::new("[M]", 2), BasisClass::new("P", 0)],
            0,
            vec![],
            vec![(1, 1, GaussianRational::one())],
            1,
            2,
            Rational::from_integer(1.into()),
        )
        .unwrap();
        assert_eq!(alg.euler_class(), Err(AlgebraError::DegeneratePairing));
        assert_eq!(alg.is_semisimple(), Err(AlgebraError::DegeneratePairing));
    }
}
