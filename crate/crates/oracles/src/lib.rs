//! Independent oracles for the acceptance and property tests. They work from
//! the raw normals and offsets and avoid the library's own routines.

#[cfg(test)]
mod properties;

use hkq::algebra::Rational;
use hkq::hypertoric::Arrangement;
use hkq::util::Lcg;

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank(rows: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    r
}

fn normals_of(arr: &Arrangement, s: &[usize]) -> Vec<Vec<i128>> {
    s.iter().map(|&i| arr.normals[i].iter().map(|&x| x as i128).collect()).collect()
}

pub fn subset_rank(arr: &Arrangement, s: &[usize]) -> usize {
    rank(&normals_of(arr, s))
}

/// Integer offsets scaled to a common denominator, so the augmented matrix
/// stays integral.
fn scaled_offsets(arr: &Arrangement) -> (Vec<i128>, i128) {
    let l = arr.offsets.iter().fold(1i128, |acc, r| {
        let q: i128 = r.denom().try_into().expect("small denominator");
        acc / gcd(acc, q) * q
    });
    let scaled = arr
        .offsets
        .iter()
        .map(|r| {
            let p: i128 = r.numer().try_into().expect("small numerator");
            let q: i128 = r.denom().try_into().expect("small denominator");
            p * (l / q)
        })
        .collect();
    (scaled, l)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Whether the hyperplanes in `s` share a point: `rank A_S = rank [A_S | r_S]`.
pub fn meets(arr: &Arrangement, s: &[usize]) -> bool {
    let (r, l) = scaled_offsets(arr);
    let plain = normals_of(arr, s);
    let aug: Vec<Vec<i128>> = plain
        .iter()
        .zip(s)
        .map(|(row, &i)| row.iter().map(|x| x * l).chain([r[i]]).collect())
        .collect();
    rank(&plain) == rank(&aug)
}

pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

/// h-vector of the normals' matroid read off `T(x,1) = Σ_{S indep} (x−1)^{d−|S|}`:
/// `h_k` is the coefficient of `x^{d−k}`.
pub fn h_vector(arr: &Arrangement) -> Vec<i64> {
    let d = arr.d;
    let mut t = vec![0i64; d + 1];
    for s in all_subsets(arr.n()) {
        if s.len() > d || subset_rank(arr, &s) < s.len() {
            continue;
        }
        let e = d - s.len();
        for j in 0..=e {
            let sign = if (e - j).is_multiple_of(2) { 1 } else { -1 };
            t[j] += sign * binom(e, j);
        }
    }
    (0..=d).map(|k| t[d - k]).collect()
}

pub fn binom(a: usize, b: usize) -> i64 {
    if b > a {
        return 0;
    }
    (0..b).fold(1i64, |acc, i| acc * (a - i) as i64 / (i + 1) as i64)
}

/// Unsigned Whitney numbers of the first kind from Whitney's formula
/// `χ(t) = Σ_{S central} (−1)^{|S|} t^{d − rank S}`.
pub fn whitney(arr: &Arrangement) -> Vec<u64> {
    let mut w = vec![0i64; arr.d + 1];
    for s in all_subsets(arr.n()) {
        if meets(arr, &s) {
            let k = subset_rank(arr, &s);
            w[k] += if s.len() % 2 == 0 { 1 } else { -1 };
        }
    }
    w.iter().map(|x| x.unsigned_abs()).collect()
}

/// Concurrent hyperplanes meet in the expected codimension.
pub fn is_simple(arr: &Arrangement) -> bool {
    all_subsets(arr.n()).all(|s| s.len() > arr.d + 1 || !meets(arr, &s) || subset_rank(arr, &s) == s.len())
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Every `d×d` minor of the normals is `0` or `±1`.
pub fn is_unimodular(arr: &Arrangement) -> bool {
    all_subsets(arr.n())
        .filter(|s| s.len() == arr.d)
        .all(|s| det(&normals_of(arr, &s)).abs() <= 1)
}

/// Random arrangement with normals `±e_i` and `±(e_i − e_j)`, a totally
/// unimodular family, and small integer offsets; retried until simple with
/// full-rank normals.
pub fn random_smooth(rng: &mut Lcg, max_n: usize) -> Arrangement {
    loop {
        let d = 2 + rng.below(2) as usize;
        let n = d + 1 + rng.below((max_n - d) as u64) as usize;
        let normals: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                let mut v = vec![0i64; d];
                let i = rng.below(d as u64) as usize;
                v[i] = 1;
                if rng.below(2) == 0 {
                    let j = (i + 1 + rng.below(d as u64 - 1) as usize) % d;
                    v[j] = -1;
                }
                if rng.below(2) == 0 {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                v
            })
            .collect();
        let offsets: Vec<Rational> = (0..n).map(|_| Rational::from_int(rng.below(7) as i64 - 3)).collect();
        let Ok(arr) = Arrangement::new(d, normals, offsets) else {
            continue;
        };
        let all: Vec<usize> = (0..n).collect();
        if subset_rank(&arr, &all) == d && is_simple(&arr) {
            return arr;
        }
    }
}

/// `v ∈ Δ_A`: `v·a_i + r_i ≤ 0` for `i ∈ A` and `≥ 0` otherwise.
pub fn in_piece(arr: &Arrangement, offsets: &[Rational], a: &[usize], v: &[Rational]) -> bool {
    (0..arr.n()).all(|i| {
        let s = arr.normals[i]
            .iter()
            .zip(v)
            .fold(offsets[i].clone(), |acc, (&c, x)| acc + x * &Rational::from_int(c));
        if a.contains(&i) {
            !s.is_positive()
        } else {
            !s.is_negative()
        }
    })
}

pub fn on_some_hyperplane(arr: &Arrangement, offsets: &[Rational], v: &[Rational]) -> bool {
    (0..arr.n()).any(|i| {
        arr.normals[i]
            .iter()
            .zip(v)
            .fold(offsets[i].clone(), |acc, (&c, x)| acc + x * &Rational::from_int(c))
            .is_zero()
    })
}

pub fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}
