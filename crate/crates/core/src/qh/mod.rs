//! Graded commutative Frobenius algebras over `k` given by structure-constant
//! tables, with the quantum product, the pairings Δ and Π, the Euler class and
//! the Abrams semisimplicity test.

mod builtin;
mod euler;
mod expr;
mod io;
mod linalg;
mod sample;
mod spectral;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::laurent::{format_s_power, FieldElement, GaussianRational, Rational};

pub use builtin::{builtin_algebra, Builtin};
pub use euler::SemisimplicityVerdict;
pub use io::AlgebraDefinition;
pub use linalg::{invert_matrix, solve, Matrix};
pub use sample::ElementSampler;
pub use spectral::{CharacteristicReport, SpectralValue, ValuationBound};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the pairing is degenerate over k")]
    DegeneratePairing,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("unknown algebra `{0}`")]
    UnknownName(String),
    #[error("invalid algebra: {0}")]
    Invalid(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisClass {
    pub name: String,
    /// Homological degree; always even.
    pub degree: u32,
}

impl BasisClass {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Self {
            name: name.into(),
            degree,
        }
    }
}

/// Coordinates of an element of `QH_ev(M)` in the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coords: Vec<FieldElement>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![FieldElement::zero(); dim],
        }
    }

    pub fn basis_vector(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[index] = FieldElement::one();
        e
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &FieldElement {
        &self.coords[i]
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    /// Multiplies every coordinate by the scalar `c ∈ k`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        Self {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coords.serialize(serializer)
    }
}

/// One check of the algebra axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub checks: Vec<PropertyCheck>,
}

impl PropertyReport {
    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(PropertyCheck {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A graded commutative Frobenius algebra over `k`.
///
/// `table[i][j]` holds `e_i ∗ e_j`; `form[i][j]` is the intersection number
/// `e_i ∘ e_j`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAlgebra {
    name: String,
    basis: Vec<BasisClass>,
    unit: usize,
    table: Vec<Vec<AlgebraElement>>,
    form: Vec<Vec<GaussianRational>>,
    half_dim: u32,
    chern: u32,
    omega: Rational,
}

/// Structure constant entry `e_i ∗ e_j ∋ c · e_l`.
pub type ProductTerm = (usize, usize, Vec<(usize, FieldElement)>);

impl FrobeniusAlgebra {
    /// Assembles an algebra from sparse data.
    ///
    /// Products with the unit default to the unit law and products given for
    /// only one ordering are mirrored; every other unlisted product is zero.
    /// The pairing is symmetrized the same way.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        name: impl Into<String>,
        basis: Vec<BasisClass>,
        unit: usize,
        products: Vec<ProductTerm>,
        pairing: Vec<(usize, usize, GaussianRational)>,
        half_dim: u32,
        chern: u32,
        omega: Rational,
    ) -> Result<Self, AlgebraError> {
        let dim = basis.len();
        if dim == 0 {
            return Err(AlgebraError::Invalid("empty basis".into()));
        }
        if unit >= dim {
            return Err(AlgebraError::Invalid(format!(
                "unit index {unit} out of range"
            )));
        }
        if let Some(b) = basis.iter().find(|b| b.degree % 2 != 0) {
            return Err(AlgebraError::Invalid(format!(
                "class {} has odd degree {}",
                b.name, b.degree
            )));
        }
        if omega <= Rational::from_integer(0.into()) {
            return Err(AlgebraError::Invalid("Omega must be positive".into()));
        }
        let check = |i: usize| {
            if i < dim {
                Ok(())
            } else {
                Err(AlgebraError::Invalid(format!(
                    "basis index {i} out of range"
                )))
            }
        };
        let mut table: Vec<Vec<Option<AlgebraElement>>> = vec![vec![None; dim]; dim];
        for (i, j, terms) in products {
            check(i)?;
            check(j)?;
            let mut value = AlgebraElement::zero(dim);
            for (l, c) in terms {
                check(l)?;
                value.coords[l] = &value.coords[l] + &c;
            }
            for (a, b) in [(i, j), (j, i)] {
                match &table[a][b] {
                    Some(existing) if *existing != value => {
                        return Err(AlgebraError::Invalid(format!(
                            "conflicting products for ({}, {})",
                            basis[a].name, basis[b].name
                        )));
                    }
                    _ => table[a][b] = Some(value.clone()),
                }
            }
        }
        let table = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        table[i][j].clone().unwrap_or_else(|| {
                            if i == unit {
                                AlgebraElement::basis_vector(dim, j)
                            } else if j == unit {
                                AlgebraElement::basis_vector(dim, i)
                            } else {
                                AlgebraElement::zero(dim)
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        let mut form = vec![vec![GaussianRational::zero(); dim]; dim];
        let mut seen = vec![vec![false; dim]; dim];
        for (i, j, v) in pairing {
            check(i)?;
            check(j)?;
            for (a, b) in [(i, j), (j, i)] {
                if seen[a][b] && form[a][b] != v {
                    return Err(AlgebraError::Invalid(format!(
                        "conflicting pairing for ({}, {})",
                        basis[a].name, basis[b].name
                    )));
                }
                form[a][b] = v.clone();
                seen[a][b] = true;
            }
        }
        Ok(Self {
            name: name.into(),
            basis,
            unit,
            table,
            form,
            half_dim,
            chern,
            omega,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    /// Complex half-dimension `n` of the manifold.
    pub fn half_dim(&self) -> u32 {
        self.half_dim
    }

    /// Minimal Chern number `N`; `deg s = 2N`.
    pub fn chern_number(&self) -> u32 {
        self.chern
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    /// Same algebra with a different symplectic period `Ω`.
    pub fn with_omega(mut self, omega: Rational) -> Result<Self, AlgebraError> {
        if omega <= Rational::from_integer(0.into()) {
            return Err(AlgebraError::Invalid("Omega must be positive".into()));
        }
        self.omega = omega;
        Ok(self)
    }

    pub fn intersection_form(&self) -> &[Vec<GaussianRational>] {
        &self.form
    }

    /// `e_i ∗ e_j` from the table.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.table[i][j]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn unit(&self) -> AlgebraElement {
        AlgebraElement::basis_vector(self.dim(), self.unit)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis_vector(self.dim(), i)
    }

    /// Element `c·e_i`.
    pub fn term(&self, i: usize, c: FieldElement) -> AlgebraElement {
        let mut e = AlgebraElement::zero(self.dim());
        e.coords[i] = c;
        e
    }

    /// Embeds a scalar of `k` as a multiple of `[M]`.
    pub fn scalar(&self, c: FieldElement) -> AlgebraElement {
        self.term(self.unit, c)
    }

    fn check_dim(&self, a: &AlgebraElement) -> Result<(), AlgebraError> {
        if a.dim() == self.dim() {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: a.dim(),
            })
        }
    }

    /// Quantum product, the bilinear extension of the structure table.
    pub fn quantum_mul(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let dim = self.dim();
        let mut out = vec![FieldElement::zero(); dim];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai * bj;
                for (l, c) in self.table[i][j].coords.iter().enumerate() {
                    if !c.is_zero() {
                        out[l] = &out[l] + &(&ab * c);
                    }
                }
            }
        }
        Ok(AlgebraElement::new(out))
    }

    /// `a^k` for `k ≥ 0`.
    pub fn power(&self, a: &AlgebraElement, k: u32) -> Result<AlgebraElement, AlgebraError> {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.quantum_mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Δ(a, b), the `k`-bilinear extension of the intersection form.
    pub fn pairing_delta(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<FieldElement, AlgebraError> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let mut acc = FieldElement::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                let g = &self.form[i][j];
                if bj.is_zero() || g.is_zero() {
                    continue;
                }
                acc = &acc + &(ai * bj).scale(g);
            }
        }
        Ok(acc)
    }

    /// Π(a, b): the `s⁰` coefficient of Δ(a, b).
    pub fn pairing_pi(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<GaussianRational, AlgebraError> {
        Ok(self.pairing_delta(a, b)?.constant_term())
    }

    /// Checks commutativity, associativity, the unit law, the grading law,
    /// non-degeneracy of Δ and the Frobenius identity on basis elements.
    /// Every law is bilinear, so basis checks are exhaustive.
    pub fn validate(&self) -> PropertyReport {
        let dim = self.dim();
        let mut report = PropertyReport::default();

        let mut bad = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                if self.table[i][j] != self.table[j][i] {
                    bad.push(format!("{}*{}", self.basis[i].name, self.basis[j].name));
                }
            }
        }
        report.push("commutativity", bad.is_empty(), bad.join(", "));

        let mut bad = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                let ij = &self.table[i][j];
                for l in 0..dim {
                    let left = self.quantum_mul(ij, &self.basis_element(l)).unwrap();
                    let right = self
                        .quantum_mul(&self.basis_element(i), &self.table[j][l])
                        .unwrap();
                    if left != right {
                        bad.push(format!(
                            "({}*{})*{}",
                            self.basis[i].name, self.basis[j].name, self.basis[l].name
                        ));
                    }
                }
            }
        }
        report.push("associativity", bad.is_empty(), bad.join(", "));

        let bad: Vec<String> = (0..dim)
            .filter(|&i| self.table[self.unit][i] != self.basis_element(i))
            .map(|i| self.basis[i].name.clone())
            .collect();
        report.push("unit", bad.is_empty(), bad.join(", "));

        let bad = self.grading_violations();
        report.push(
            "grading",
            bad.is_empty(),
            if bad.is_empty() {
                format!("deg s = {}", 2 * self.chern)
            } else {
                bad.join(", ")
            },
        );

        let gram: Matrix = self
            .form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|g| FieldElement::constant(g.clone()))
                    .collect()
            })
            .collect();
        let nondeg = invert_matrix(&gram).is_some();
        report.push("nondegenerate pairing", nondeg, "");

        let mut bad = Vec::new();
        let unit = self.unit();
        for i in 0..dim {
            for j in 0..dim {
                let lhs = FieldElement::constant(self.form[i][j].clone());
                let rhs = self.pairing_delta(&self.table[i][j], &unit).unwrap();
                if lhs != rhs {
                    bad.push(format!("({}, {})", self.basis[i].name, self.basis[j].name));
                }
            }
        }
        report.push("frobenius identity", bad.is_empty(), bad.join(", "));
        report
    }

    fn grading_violations(&self) -> Vec<String> {
        let dim = self.dim();
        let two_n = 2 * self.half_dim as i64;
        let two_chern = 2 * self.chern as i64;
        let mut bad = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                let expected = self.basis[i].degree as i64 + self.basis[j].degree as i64 - two_n;
                for (l, c) in self.table[i][j].coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let label = format!("{}*{}", self.basis[i].name, self.basis[j].name);
                    let Some(terms) = c.laurent_terms() else {
                        bad.push(format!("{label}: non-polynomial coefficient"));
                        continue;
                    };
                    for (e, _) in terms {
                        if self.basis[l].degree as i64 + two_chern * e != expected {
                            bad.push(format!(
                                "{label}: term {}{}",
                                self.basis[l].name,
                                format_s_power(e)
                            ));
                        }
                    }
                }
            }
        }
        bad
    }

    /// Minimal Chern number implied by the table through `deg s = 2N`, if the
    /// table contains a quantum correction and all corrections agree.
    pub fn infer_chern_number(&self) -> Option<u32> {
        let dim = self.dim();
        let two_n = 2 * self.half_dim as i64;
        let mut found: Option<i64> = None;
        for i in 0..dim {
            for j in 0..dim {
                let excess = self.basis[i].degree as i64 + self.basis[j].degree as i64 - two_n;
                for (l, c) in self.table[i][j].coords.iter().enumerate() {
                    for (e, _) in c.laurent_terms()? {
                        if e == 0 {
                            continue;
                        }
                        let diff = excess - self.basis[l].degree as i64;
                        if diff % (2 * e) != 0 {
                            return None;
                        }
                        let chern = diff / (2 * e);
                        match found {
                            Some(prev) if prev != chern => return None,
                            _ => found = Some(chern),
                        }
                    }
                }
            }
        }
        found.filter(|&c| c > 0).map(|c| c as u32)
    }

    /// Human-readable form such as `4P − A s⁻¹`.
    pub fn format_element(&self, a: &AlgebraElement) -> String {
        expr::format_element(self, a)
    }

    /// Parses expressions like `2P - A s^-1`, `(A-B)*(A+B)` or `euler`.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement, AlgebraError> {
        expr::parse_element(self, text)
    }

    /// Multiplication table rendered as `(e_i, e_j, e_i ∗ e_j)` strings.
    pub fn table_strings(&self) -> Vec<(String, String, String)> {
        let dim = self.dim();
        let mut rows = Vec::new();
        for i in 0..dim {
            for j in i..dim {
                rows.push((
                    self.basis[i].name.clone(),
                    self.basis[j].name.clone(),
                    self.format_element(&self.table[i][j]),
                ));
            }
        }
        rows
    }
}

impl fmt::Display for FrobeniusAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.basis.iter().map(|b| b.name.as_str()).collect();
        write!(f, "{} [{}]", self.name, names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: i64) -> FieldElement {
        FieldElement::s_pow(e)
    }

    #[test]
    fn sphere_point_squared() {
        let alg = builtin_algebra("S2").unwrap();
        let p = alg.basis_element(alg.index_of("P").unwrap());
        assert_eq!(alg.quantum_mul(&p, &p).unwrap(), alg.scalar(s(-1)));
    }

    #[test]
    fn zero_divisors_in_s2xs2() {
        let alg = builtin_algebra("S2xS2").unwrap();
        let a = alg.basis_element(alg.index_of("A").unwrap());
        let b = alg.basis_element(alg.index_of("B").unwrap());
        assert!(alg.quantum_mul(&a.sub(&b), &a.add(&b)).unwrap().is_zero());
    }

    #[test]
    fn blowup_a_squared() {
        let alg = builtin_algebra("CP2blowup").unwrap();
        let a = alg.parse_element("A").unwrap();
        let expected = alg.parse_element("-P + A s^-1 + s^-2").unwrap();
        assert_eq!(alg.quantum_mul(&a, &a).unwrap(), expected);
    }

    #[test]
    fn unit_law_and_dimension_errors() {
        for name in ["S2", "CP3", "S2xS2", "CP2blowup"] {
            let alg = builtin_algebra(name).unwrap();
            for i in 0..alg.dim() {
                let e = alg.basis_element(i).scale(&s(2));
                assert_eq!(alg.quantum_mul(&alg.unit(), &e).unwrap(), e);
            }
            let wrong = AlgebraElement::zero(alg.dim() + 1);
            assert!(matches!(
                alg.quantum_mul(&alg.unit(), &wrong),
                Err(AlgebraError::DimensionMismatch { .. })
            ));
            assert!(alg.pairing_delta(&wrong, &alg.unit()).is_err());
        }
    }

    #[test]
    fn delta_and_pi_examples() {
        let alg = builtin_algebra("S2").unwrap();
        let p = alg.parse_element("P").unwrap();
        let m = alg.unit();
        assert!(alg.pairing_delta(&p, &m).unwrap().is_one());
        assert!(alg.pairing_delta(&p, &p).unwrap().is_zero());
        assert!(alg.pairing_pi(&p, &m).unwrap().is_one());
        assert!(alg.pairing_pi(&p.scale(&s(1)), &m).unwrap().is_zero());
        // Δ(P, P∗P) = Δ(P, s⁻¹[M]) = s⁻¹ has no s⁰ term.
        let pp = alg.quantum_mul(&p, &p).unwrap();
        assert_eq!(alg.pairing_delta(&p, &pp).unwrap(), s(-1));
        assert!(alg.pairing_pi(&p, &pp).unwrap().is_zero());
    }

    #[test]
    fn builtin_tables_satisfy_axioms() {
        for name in [
            "S2",
            "CP1",
            "CP2",
            "CP3",
            "CP4",
            "CP5",
            "S2xS2",
            "CP2blowup",
            "S2classical",
        ] {
            let alg = builtin_algebra(name).unwrap();
            let report = alg.validate();
            assert!(
                report.all_passed(),
                "{name}: {:?}",
                report.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn chern_numbers_follow_from_tables() {
        assert_eq!(builtin_algebra("S2").unwrap().infer_chern_number(), Some(2));
        assert_eq!(
            builtin_algebra("CP3").unwrap().infer_chern_number(),
            Some(4)
        );
        assert_eq!(
            builtin_algebra("S2xS2").unwrap().infer_chern_number(),
            Some(2)
        );
        assert_eq!(
            builtin_algebra("CP2blowup").unwrap().infer_chern_number(),
            Some(1)
        );
        assert_eq!(
            builtin_algebra("S2classical").unwrap().infer_chern_number(),
            None
        );
    }

    #[test]
    fn from_parts_rejects_conflicts() {
        let basis = vec![BasisClass::new("[M]", 2), BasisClass::new("P", 0)];
        let one = Rational::from_integer(1.into());
        let err = FrobeniusAlgebra::from_parts(
            "bad",
            basis.clone(),
            0,
            vec![(1, 1, vec![(0, s(-1))]), (1, 1, vec![(0, s(-2))])],
            vec![(0, 1, GaussianRational::one())],
            1,
            2,
            one.clone(),
        );
        assert!(matches!(err, Err(AlgebraError::Invalid(_))));
        let odd = FrobeniusAlgebra::from_parts(
            "odd",
            vec![BasisClass::new("[M]", 3)],
            0,
            vec![],
            vec![(0, 0, GaussianRational::one())],
            1,
            2,
            one,
        );
        assert!(matches!(odd, Err(AlgebraError::Invalid(_))));
    }

    #[test]
    fn grading_violation_is_reported() {
        let alg = FrobeniusAlgebra::from_parts(
            "off-grade",
            vec![BasisClass::new("[M]", 2), BasisClass::new("P", 0)],
            0,
            vec![(1, 1, vec![(0, s(-2))])],
            vec![(0, 1, GaussianRational::one())],
            1,
            2,
            Rational::from_integer(1.into()),
        )
        .unwrap();
        let report = alg.validate();
        assert!(!report.all_passed());
        assert_eq!(report.failures().next().unwrap().name, "grading");
    }
}
