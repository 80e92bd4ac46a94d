//! Small exact linear algebra over Q.

use crate::error::{Error, Result};
use crate::scalars::{Rat, Scalar};

pub type Matrix = Vec<Vec<Rat>>;

/// Rank by Gaussian elimination.
pub fn rank(m: &[Vec<Rat>]) -> usize {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("pivot is nonzero");
        for i in (r + 1)..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..cols {
                let d = &f * &a[r][j];
                a[i][j] -= &d;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn determinant(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a: Matrix = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = &det * &a[c][c];
        let inv = a[c][c].recip().expect("pivot is nonzero");
        for i in (c + 1)..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            for j in c..n {
                let d = &f * &a[c][j];
                a[i][j] -= &d;
            }
        }
    }
    det
}

/// Pfaffian of an antisymmetric matrix of even size, by expansion along
/// the first row.
pub fn pfaffian(m: &[Vec<Rat>]) -> Result<Rat> {
    let n = m.len();
    if n % 2 == 1 {
        return Err(Error::DomainError("Pfaffian needs an even-sized matrix".into()));
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf(m, &idx))
}

fn pf(m: &[Vec<Rat>], idx: &[usize]) -> Rat {
    if idx.is_empty() {
        return Rat::one();
    }
    let i = idx[0];
    let mut acc = Rat::zero();
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        if m[i][j].is_zero() {
            continue;
        }
        let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != j).collect();
        let term = &m[i][j] * &pf(m, &rest);
        if pos % 2 == 1 {
            acc += &term;
        } else {
            acc -= &term;
        }
    }
    acc
}

pub fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
        .collect()
}

pub fn transpose(a: &[Vec<Rat>]) -> Matrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn is_antisymmetric<T: PartialEq + Clone>(m: &[Vec<T>], neg: impl Fn(&T) -> T) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, v)| m[j][i] == neg(v)))
}

/// Converts a matrix of scalars to rationals, if every entry is rational.
pub fn to_rational(m: &[Vec<Scalar>]) -> Option<Matrix> {
    m.iter()
        .map(|r| r.iter().map(Scalar::as_rational).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| Rat::int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_det() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&a), 1);
        assert_eq!(determinant(&a), Rat::zero());
        let b = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(rank(&b), 3);
        assert_eq!(determinant(&b), Rat::int(-3));
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        let a = m(&[&[0, 1, 2, 3], &[-1, 0, 4, 5], &[-2, -4, 0, 6], &[-3, -5, -6, 0]]);
        let p = pfaffian(&a).unwrap();
        assert_eq!(p, Rat::int(1 * 6 - 2 * 5 + 3 * 4));
        assert_eq!(&p * &p, determinant(&a));
    }
}
