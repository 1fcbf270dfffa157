//! The example algebras: S², ℂPⁿ, S²×S² and the monotone blow-up of ℂP² at
//! one point. Structure constants are transcribed tables, checked by
//! [`FrobeniusAlgebra::validate`] in the tests.

use std::str::FromStr;

use crate::laurent::{FieldElement, GaussianRational, Rational};

use super::{AlgebraError, BasisClass, FrobeniusAlgebra, ProductTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Sphere,
    ProjectiveSpace(u32),
    SphereProduct,
    Blowup,
    /// S² with the undeformed ∩-product: `P ∗ P = 0`. Not semisimple.
    ClassicalSphere,
}

impl FromStr for Builtin {
    type Err = AlgebraError;

    fn from_str(name: &str) -> Result<Self, Self::Err> {
        let unknown = || AlgebraError::UnknownName(name.to_string());
        match name {
            "S2" => Ok(Builtin::Sphere),
            "S2xS2" => Ok(Builtin::SphereProduct),
            "CP2blowup" => Ok(Builtin::Blowup),
            "S2classical" => Ok(Builtin::ClassicalSphere),
            _ => {
                let n = name.strip_prefix("CP").ok_or_else(unknown)?;
                let n: u32 = n.parse().map_err(|_| unknown())?;
                if n == 0 {
                    return Err(unknown());
                }
                Ok(Builtin::ProjectiveSpace(n))
            }
        }
    }
}

fn s(e: i64) -> FieldElement {
    FieldElement::s_pow(e)
}

fn int(n: i64) -> FieldElement {
    FieldElement::from_int(n)
}

fn g(n: i64) -> GaussianRational {
    GaussianRational::from_int(n)
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

impl Builtin {
    pub fn build(self) -> FrobeniusAlgebra {
        match self {
            Builtin::Sphere => sphere("S2", vec![(1, 1, vec![(0, s(-1))])]),
            Builtin::ClassicalSphere => sphere("S2classical", vec![]),
            Builtin::ProjectiveSpace(n) => projective_space(n),
            Builtin::SphereProduct => sphere_product(),
            Builtin::Blowup => blowup(),
        }
    }
}

/// Builds a built-in algebra by name: `S2`, `CP<n>`, `S2xS2`, `CP2blowup`
/// (and the non-semisimple `S2classical`). `Ω` defaults to 1.
pub fn builtin_algebra(name: &str) -> Result<FrobeniusAlgebra, AlgebraError> {
    Ok(name.parse::<Builtin>()?.build())
}

fn sphere(name: &str, products: Vec<ProductTerm>) -> FrobeniusAlgebra {
    FrobeniusAlgebra::from_parts(
        name,
        vec![BasisClass::new("[M]", 2), BasisClass::new("P", 0)],
        0,
        products,
        vec![(0, 1, g(1))],
        1,
        2,
        one(),
    )
    .expect("sphere table")
}

/// `k[A]/(A^{n+1} = s⁻¹)` in the basis `1, A, …, Aⁿ`.
fn projective_space(n: u32) -> FrobeniusAlgebra {
    let n = n as usize;
    let basis = (0..=n)
        .map(|k| {
            let name = match k {
                0 => "[M]".to_string(),
                1 => "A".to_string(),
                _ => format!("A^{k}"),
            };
            BasisClass::new(name, (2 * (n - k)) as u32)
        })
        .collect();
    let mut products = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let term = if i + j <= n {
                (i + j, int(1))
            } else {
                (i + j - n - 1, s(-1))
            };
            products.push((i, j, vec![term]));
        }
    }
    let pairing = (0..=n).map(|i| (i, n - i, g(1))).collect();
    FrobeniusAlgebra::from_parts(
        format!("CP{n}"),
        basis,
        0,
        products,
        pairing,
        n as u32,
        n as u32 + 1,
        one(),
    )
    .expect("projective space table")
}

/// S²×S²: `A∗B = P`, `A² = B² = s⁻¹`; the remaining products follow.
fn sphere_product() -> FrobeniusAlgebra {
    let (m, a, b, p) = (0, 1, 2, 3);
    FrobeniusAlgebra::from_parts(
        "S2xS2",
        vec![
            BasisClass::new("[M]", 4),
            BasisClass::new("A", 2),
            BasisClass::new("B", 2),
            BasisClass::new("P", 0),
        ],
        m,
        vec![
            (a, a, vec![(m, s(-1))]),
            (b, b, vec![(m, s(-1))]),
            (a, b, vec![(p, int(1))]),
            (a, p, vec![(b, s(-1))]),
            (b, p, vec![(a, s(-1))]),
            (p, p, vec![(m, s(-2))]),
        ],
        vec![(m, p, g(1)), (a, b, g(1))],
        2,
        2,
        one(),
    )
    .expect("S2xS2 table")
}

/// Monotone blow-up of ℂP² at a point. `A` is the exceptional divisor and
/// `B = [ℂP¹] − A`, so `A∘A = −1`, `A∘B = 1`, `B∘B = 0`.
fn blowup() -> FrobeniusAlgebra {
    let (m, a, b, p) = (0, 1, 2, 3);
    FrobeniusAlgebra::from_parts(
        "CP2blowup",
        vec![
            BasisClass::new("[M]", 4),
            BasisClass::new("A", 2),
            BasisClass::new("B", 2),
            BasisClass::new("P", 0),
        ],
        m,
        vec![
            (p, p, vec![(a, s(-3)), (b, s(-3))]),
            (a, p, vec![(b, s(-2))]),
            (p, b, vec![(m, s(-3))]),
            (a, a, vec![(p, int(-1)), (a, s(-1)), (m, s(-2))]),
            (a, b, vec![(p, int(1)), (a, -s(-1))]),
            (b, b, vec![(a, s(-1))]),
        ],
        vec![(m, p, g(1)), (a, a, g(-1)), (a, b, g(1)), (b, b, g(0))],
        2,
        1,
        one(),
    )
    .expect("blow-up table")
}
