//! Dense exact linear algebra over ℚ (and 𝔽₂ via coefficient reduction).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Field, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// Row-reduces `m` in place to reduced echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix, field: Field) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = field.reduce(v);
        }
        let pivot_row = m[r].clone();
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..cols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                let v = &m[i][j] - &(&f * &pivot_row[j]);
                m[i][j] = field.reduce(v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix, field: Field) -> usize {
    let mut w = m.clone();
    rref(&mut w, field).len()
}

/// Basis of `{v : m v = 0}`, one vector per free column.
pub fn nullspace(m: &Matrix, ncols: usize, field: Field) -> Vec<Vec<Rational>> {
    let mut w = m.clone();
    let pivots = rref(&mut w, field);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.reduce(-&w[row][free]);
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `a x = b`, or `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[Rational], field: Field) -> Option<Vec<Rational>> {
    let ncols = a.first().map_or(0, |r| r.len());
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, field);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

pub fn det(m: &Matrix) -> Rational {
    let n = m.len();
    let mut w = m.clone();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            w.swap(p, c);
            d = -d;
        }
        d = &d * &w[c][c];
        let inv = w[c][c].recip();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = &w[i][c] * &inv;
            for j in c..n {
                let v = &w[i][j] - &(&f * &w[c][j]);
                w[i][j] = v;
            }
        }
    }
    d
}

pub fn int_matrix(m: &[Vec<i64>]) -> Matrix {
    m.iter()
        .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
        .collect()
}

pub fn transpose(m: &Matrix) -> Matrix {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    (0..cols).map(|j| (0..rows).map(|i| m[i][j].clone()).collect()).collect()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn rank_and_kernel() {
        let m = int_matrix(&[vec![1, 1, -1, 0], vec![1, 0, 0, -1]]);
        assert_eq!(rank(&m, Field::Q), 2);
        let k = nullspace(&m, 4, Field::Q);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s = row.iter().zip(v).fold(Rational::zero(), |a, (x, y)| a + x * y);
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn determinant_and_solve() {
        let m = int_matrix(&[vec![2, 1], vec![1, 3]]);
        assert_eq!(det(&m), Rational::from_int(5));
        let x = solve(&m, &[Rational::from_int(1), Rational::from_int(2)], Field::Q).unwrap();
        assert_eq!(x, vec![rat(1, 5), rat(3, 5)]);
        let sing = int_matrix(&[vec![1, 1], vec![1, 1]]);
        assert!(solve(&sing, &[Rational::from_int(1), Rational::from_int(2)], Field::Q).is_none());
    }

    #[test]
    fn f2_rank() {
        let m = int_matrix(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(rank(&m, Field::Q), 3);
        assert_eq!(rank(&m, Field::F2), 2);
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer(&[rat(1, 2), rat(-3, 4), Rational::zero()]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
    }
}
