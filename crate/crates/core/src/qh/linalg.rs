//! Exact Gaussian elimination over `k`.

use crate::laurent::{FieldElement, Poly};

/// Dense row-major matrix over `k`.
pub type Matrix = Vec<Vec<FieldElement>>;

/// Least common multiple of the denominators of a row.
fn row_denominator(row: &[FieldElement]) -> Poly {
    let mut l = Poly::one();
    for x in row.iter().filter(|x| !x.is_zero()) {
        let g = Poly::gcd(&l, x.den());
        l = &l * &x.den().div_rem(&g).0;
    }
    l
}

fn exact_div(a: &Poly, b: &Poly) -> Poly {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact fraction-free division");
    q
}

/// Solves `a · X = rhs` by fraction-free Gauss–Jordan elimination on the
/// polynomial matrix obtained by clearing denominators row by row. Every
/// intermediate division by the previous pivot is exact, so no gcds are taken
/// until the final quotients. `None` when `a` is singular.
fn eliminate(a: &Matrix, rhs: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let width = n + rhs.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Poly>> = a
        .iter()
        .zip(rhs)
        .map(|(ra, rb)| {
            let row: Vec<FieldElement> = ra.iter().chain(rb).cloned().collect();
            let l = row_denominator(&row);
            row.iter()
                .map(|x| {
                    if x.is_zero() {
                        Poly::zero()
                    } else {
                        x.num() * &exact_div(&l, x.den())
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = Poly::one();
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| m[r][k].degree())?;
        m.swap(k, pivot);
        let p = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..width {
                let mut v = &p * &m[i][j];
                if !f.is_zero() && !m[k][j].is_zero() {
                    v = &v - &(&f * &m[k][j]);
                }
                m[i][j] = if prev.is_one() {
                    v
                } else {
                    exact_div(&v, &prev)
                };
            }
        }
        prev = p;
    }
    Some(
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                row[n..]
                    .iter()
                    .map(|num| {
                        FieldElement::from_polys(num.clone(), row[i].clone())
                            .expect("nonzero diagonal after elimination")
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Solves `a · x = b` for square nonsingular `a`; `None` when singular.
pub fn solve(a: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    assert_eq!(b.len(), n);
    let rhs: Matrix = b.iter().map(|x| vec![x.clone()]).collect();
    let x = eliminate(a, &rhs)?;
    Some(x.into_iter().map(|mut row| row.remove(0)).collect())
}

/// Inverse of a square matrix over `k`; `None` when singular.
pub fn invert_matrix(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n), "matrix must be square");
    let identity: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        FieldElement::one()
                    } else {
                        FieldElement::zero()
                    }
                })
                .collect()
        })
        .collect();
    eliminate(a, &identity)
}

#[cfg(test)]
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    a[i].iter()
                        .zip(b.iter())
                        .filter(|(x, row)| !x.is_zero() && !row[j].is_zero())
                        .fold(FieldElement::zero(), |acc, (x, row)| &acc + &(x * &row[j]))
                })
                .collect()
        })
        .collect()
}
