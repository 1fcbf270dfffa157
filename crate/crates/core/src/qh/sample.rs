//! Seeded random elements for property checks: coordinates are Laurent
//! polynomials with exponents in `[-3, 3]` and small integer Gaussian
//! coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::laurent::{FieldElement, GaussianRational};

use super::{AlgebraElement, FrobeniusAlgebra};

pub struct ElementSampler {
    rng: ChaCha8Rng,
    pub min_exp: i64,
    pub max_exp: i64,
    pub max_coeff: i64,
}

impl ElementSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            min_exp: -3,
            max_exp: 3,
            max_coeff: 3,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn coefficient(&mut self) -> GaussianRational {
        let re = self.rng.random_range(-self.max_coeff..=self.max_coeff);
        // Mostly real coefficients, occasionally a Gaussian one.
        let im = if self.rng.random_bool(0.2) {
            self.rng.random_range(-self.max_coeff..=self.max_coeff)
        } else {
            0
        };
        GaussianRational::new(
            crate::laurent::Rational::from_integer(re.into()),
            crate::laurent::Rational::from_integer(im.into()),
        )
    }

    pub fn nonzero_coefficient(&mut self) -> GaussianRational {
        loop {
            let c = self.coefficient();
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Random Laurent polynomial with up to three terms; may be zero.
    pub fn laurent(&mut self) -> FieldElement {
        let terms = self.rng.random_range(0..=3);
        FieldElement::from_terms((0..terms).map(|_| {
            let e = self.rng.random_range(self.min_exp..=self.max_exp);
            (e, self.coefficient())
        }))
    }

    pub fn nonzero_laurent(&mut self) -> FieldElement {
        loop {
            let x = self.laurent();
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn element(&mut self, alg: &FrobeniusAlgebra) -> AlgebraElement {
        AlgebraElement::new((0..alg.dim()).map(|_| self.laurent()).collect())
    }

    pub fn nonzero_element(&mut self, alg: &FrobeniusAlgebra) -> AlgebraElement {
        loop {
            let x = self.element(alg);
            if !x.is_zero() {
                return x;
            }
        }
    }
}
