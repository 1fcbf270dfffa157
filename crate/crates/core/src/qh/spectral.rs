//! The valuation ν on `QH_ev(M)`, spectral invariants of the identity and the
//! characteristic-exponent laws.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::laurent::{rational_to_string, FieldElement, GaussianRational, Rational, Valuation};

use super::{AlgebraElement, AlgebraError, ElementSampler, FrobeniusAlgebra};

/// `c(a, 1)`: a rational number, or `−∞` for `a = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SpectralValue {
    NegInfinity,
    Finite(Rational),
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::NegInfinity => write!(f, "-inf"),
            SpectralValue::Finite(r) => write!(f, "{}", rational_to_string(r)),
        }
    }
}

impl Serialize for SpectralValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CharacteristicReport {
    pub pairs_checked: usize,
    /// Pairs with `ν(v₁) ≠ ν(v₂)`, where the strict law applies.
    pub strict_cases: usize,
    pub violations: Vec<String>,
}

impl CharacteristicReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationBound {
    /// Largest `ν(b) + ν(b⁻¹)` seen.
    pub max: i64,
    /// Invertible samples used.
    pub samples: usize,
    /// Running maximum after each sample.
    pub history: Vec<i64>,
}

impl FrobeniusAlgebra {
    /// `ν(a)`: the largest `j` with a nonzero `s^j` component, coordinate-wise.
    pub fn nu(&self, a: &AlgebraElement) -> Valuation {
        a.coords()
            .iter()
            .map(FieldElement::valuation)
            .max()
            .unwrap_or(Valuation::NegInfinity)
    }

    /// `c(a, 1) = Ω·ν(a)`.
    pub fn spectral_invariant_identity(&self, a: &AlgebraElement) -> SpectralValue {
        match self.nu(a) {
            Valuation::NegInfinity => SpectralValue::NegInfinity,
            Valuation::Finite(v) => {
                SpectralValue::Finite(self.omega() * Rational::from_integer(v.into()))
            }
        }
    }

    /// Checks `ν(0) = −∞`, `ν(δv) = ν(v)` for nonzero constants δ,
    /// `ν(v₁+v₂) ≤ max` and `ν(v₁) < ν(v₂) ⇒ ν(v₁+v₂) = ν(v₂)` on the given
    /// samples.
    pub fn characteristic_exponent_check(
        &self,
        pairs: &[(AlgebraElement, AlgebraElement)],
        scalars: &[GaussianRational],
    ) -> CharacteristicReport {
        let mut report = CharacteristicReport::default();
        if self.nu(&AlgebraElement::zero(self.dim())) != Valuation::NegInfinity {
            report.violations.push("nu(0) is finite".into());
        }
        for (idx, (v1, v2)) in pairs.iter().enumerate() {
            report.pairs_checked += 1;
            let (n1, n2) = (self.nu(v1), self.nu(v2));
            for (v, n) in [(v1, n1), (v2, n2)] {
                if !v.is_zero() && !n.is_finite() {
                    report
                        .violations
                        .push(format!("pair {idx}: nonzero element with nu = -inf"));
                }
                if self.nu(&v.add(&v.neg())) != Valuation::NegInfinity {
                    report
                        .violations
                        .push(format!("pair {idx}: nu(v - v) finite"));
                }
                for d in scalars.iter().filter(|d| !d.is_zero()) {
                    if self.nu(&v.scale(&FieldElement::constant(d.clone()))) != n {
                        report
                            .violations
                            .push(format!("pair {idx}: nu({d} v) != nu(v)"));
                    }
                }
            }
            let sum = self.nu(&v1.add(v2));
            if sum > n1.max(n2) {
                report
                    .violations
                    .push(format!("pair {idx}: nu(v1+v2) = {sum} > max({n1}, {n2})"));
            }
            if n1 != n2 {
                report.strict_cases += 1;
                if sum != n1.max(n2) {
                    report.violations.push(format!(
                        "pair {idx}: nu(v1) = {n1}, nu(v2) = {n2} but nu(v1+v2) = {sum}"
                    ));
                }
            }
        }
        report
    }

    /// Empirical supremum of `ν(b) + ν(b⁻¹)` over `count` random invertible
    /// elements. Non-invertible draws are skipped.
    pub fn valuation_sum_bound(
        &self,
        sampler: &mut ElementSampler,
        count: usize,
    ) -> Result<ValuationBound, AlgebraError> {
        let mut history = Vec::with_capacity(count);
        let mut max = i64::MIN;
        let mut attempts = 0;
        while history.len() < count {
            attempts += 1;
            if attempts > 20 * count + 100 {
                return Err(AlgebraError::Invalid(
                    "too few invertible samples; is the algebra semisimple?".into(),
                ));
            }
            let b = sampler.nonzero_element(self);
            let Ok(inv) = self.invert_element(&b) else {
                continue;
            };
            let total = self.nu(&b).plus(self.nu(&inv));
            let Valuation::Finite(t) = total else {
                return Err(AlgebraError::Invalid("nu of a unit is -inf".into()));
            };
            max = max.max(t);
            history.push(max);
        }
        Ok(ValuationBound {
            max,
            samples: count,
            history,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin_algebra;
    use super::*;

    #[test]
    fn identity_invariant_rules() {
        let s2 = builtin_algebra("S2").unwrap();
        assert_eq!(
            s2.spectral_invariant_identity(&s2.unit()),
            SpectralValue::Finite(Rational::from_integer(0.into()))
        );
        assert_eq!(
            s2.spectral_invariant_identity(&s2.parse_element("s^2 P").unwrap()),
            SpectralValue::Finite(Rational::from_integer(2.into()))
        );
        assert_eq!(
            s2.spectral_invariant_identity(&AlgebraElement::zero(2)),
            SpectralValue::NegInfinity
        );
        let half = s2
            .clone()
            .with_omega(Rational::new(1.into(), 2.into()))
            .unwrap();
        let b = half.parse_element("3P - s^-2").unwrap();
        let sb = b.scale(&FieldElement::s_pow(1));
        let (SpectralValue::Finite(cb), SpectralValue::Finite(csb)) = (
            half.spectral_invariant_identity(&b),
            half.spectral_invariant_identity(&sb),
        ) else {
            panic!("finite values expected");
        };
        assert_eq!(csb - cb, Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn characteristic_exponent_examples() {
        let s2 = builtin_algebra("S2").unwrap();
        let v = s2.parse_element("P + s").unwrap();
        let w = s2.parse_element("s^-2 P").unwrap();
        let report = s2.characteristic_exponent_check(
            &[(v.clone(), v.neg()), (w.clone(), v.clone())],
            &[GaussianRational::from_int(-3), GaussianRational::i()],
        );
        assert!(report.holds(), "{:?}", report.violations);
        assert_eq!(report.strict_cases, 1);
        assert_eq!(s2.nu(&v.add(&w)), Valuation::Finite(1));
    }

    #[test]
    fn valuation_sum_examples() {
        let s2 = builtin_algebra("S2").unwrap();
        let p = s2.parse_element("P").unwrap();
        let p_inv = s2.invert_element(&p).unwrap();
        assert_eq!(s2.nu(&p).plus(s2.nu(&p_inv)), Valuation::Finite(1));
        assert_eq!(
            s2.nu(&s2.unit()).plus(s2.nu(&s2.unit())),
            Valuation::Finite(0)
        );
        for n in 1..=4 {
            let cp = builtin_algebra(&format!("CP{n}")).unwrap();
            let a = cp.parse_element("A").unwrap();
            let a_inv = cp.invert_element(&a).unwrap();
            assert_eq!(a_inv, cp.parse_element(&format!("s A^{n}")).unwrap());
            assert_eq!(cp.nu(&a).plus(cp.nu(&a_inv)), Valuation::Finite(1));
        }
    }
}
