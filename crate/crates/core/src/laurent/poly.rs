//! Dense univariate polynomials in `s` over the Gaussian rationals.
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and its last entry is nonzero otherwise.

use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: GaussianRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<GaussianRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(GaussianRational::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> GaussianRational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&GaussianRational> {
        self.coeffs.last()
    }

    /// True for `c·s^k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `s^k`; the caller guarantees `k ≤ order`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.order().is_none_or(|o| o >= k));
        Self {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![GaussianRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[i + j] -= &t;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.make_monic();
        }
        if b.is_zero() {
            return a.make_monic();
        }
        // s^k against anything: only a power of s can divide.
        if a.is_monomial() || b.is_monomial() {
            let k = a.order().unwrap().min(b.order().unwrap());
            return Poly::monomial(GaussianRational::one(), k);
        }
        // Powers of s are split off first; the rest usually has coprime
        // images mod p, which proves the gcd trivial without the
        // coefficient growth of the rational Euclidean sequence.
        let k = a.order().unwrap().min(b.order().unwrap());
        let (a0, b0) = (a.unshift(a.order().unwrap()), b.unshift(b.order().unwrap()));
        if modular::coprime(&a0, &b0) {
            return Poly::monomial(GaussianRational::one(), k);
        }
        let (mut x, mut y) = (a.make_monic(), b.make_monic());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r.make_monic();
        }
        x
    }
}

mod modular {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::Poly;
    use crate::laurent::{GaussianRational, Rational};

    /// A prime with `p ≡ 1 (mod 4)`, so that `i` has an image in `F_p`.
    const P: u64 = 998_244_353;

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    }

    fn inv(x: u64) -> u64 {
        pow(x, P - 2)
    }

    fn reduce(n: &BigInt) -> u64 {
        let p = BigInt::from(P);
        (((n % &p) + &p) % &p)
            .to_u64()
            .expect("residue fits in u64")
    }

    fn rational(r: &Rational) -> Option<u64> {
        let d = reduce(r.denom());
        (d != 0).then(|| reduce(r.numer()) * inv(d) % P)
    }

    fn image(c: &GaussianRational, i: u64) -> Option<u64> {
        Some((rational(&c.re)? + rational(&c.im)? * i) % P)
    }

    /// Image mod p, or `None` if a denominator or the leading coefficient
    /// vanishes there.
    fn image_poly(a: &Poly, i: u64) -> Option<Vec<u64>> {
        let v = a
            .coeffs
            .iter()
            .map(|c| image(c, i))
            .collect::<Option<Vec<_>>>()?;
        (*v.last()? != 0).then_some(v)
    }

    fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// `true` if the images have a constant gcd. With leading coefficients
    /// surviving the reduction, the degree of the gcd can only grow mod p,
    /// so this proves `gcd(a, b) = 1`. `false` is inconclusive.
    pub fn coprime(a: &Poly, b: &Poly) -> bool {
        // 3 generates the multiplicative group mod P.
        let i = pow(3, (P - 1) / 4);
        let (Some(mut x), Some(mut y)) = (image_poly(a, i), image_poly(b, i)) else {
            return false;
        };
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while y.len() > 1 {
            let lc = inv(*y.last().unwrap());
            while x.len() >= y.len() {
                let f = x.last().unwrap() * lc % P;
                let shift = x.len() - y.len();
                for (j, &c) in y.iter().enumerate() {
                    x[shift + j] = (x[shift + j] + P - f * c % P) % P;
                }
                trim(&mut x);
            }
            std::mem::swap(&mut x, &mut y);
        }
        y.len() == 1
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| GaussianRational::from_int(c)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[1, 0, -3, 2, 5]);
        let b = p(&[2, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (s - 1)(s + 2) and (s - 1)(s - 3)
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[-3, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(Poly::gcd(&p(&[0, 0, 3]), &p(&[0, 1, 1])), p(&[0, 1]));
    }

    #[test]
    fn gcd_with_gaussian_and_power_factors() {
        // s² (s − i) against s (s − i)(s + 1): s (s − i)
        let i = GaussianRational::i();
        let lin = Poly::from_coeffs(vec![-i.clone(), GaussianRational::one()]);
        let a = &Poly::monomial(GaussianRational::one(), 2) * &lin;
        let b = &(&Poly::monomial(GaussianRational::one(), 1) * &lin) * &p(&[1, 1]);
        assert_eq!(
            Poly::gcd(&a, &b),
            &Poly::monomial(GaussianRational::one(), 1) * &lin
        );
        // Coprime: the modular filter answers.
        assert!(modular::coprime(&p(&[1, 2, 3]), &p(&[5, 0, 1])));
        assert!(!modular::coprime(&a.unshift(2), &b.unshift(1)));
        assert_eq!(Poly::gcd(&p(&[1, 2, 3]), &p(&[5, 0, 1])), Poly::one());
    }
}
