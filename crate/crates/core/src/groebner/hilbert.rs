use crate::algebra::Monomial;

use super::GroebnerBasis;

/// All monomials of total degree `k` in `n` variables, in lex-descending
/// exponent order.
pub fn monomials_of_degree(n: usize, k: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::from_exps(cur));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, k as u16, &mut vec![0; n], &mut out);
    out
}

/// Monomials of degree `k` not divisible by any leading monomial of `gb`.
pub fn standard_monomials(gb: &GroebnerBasis, k: u32) -> Vec<Monomial> {
    let lms = gb.leading_monomials();
    monomials_of_degree(gb.ring().nvars(), k)
        .into_iter()
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .collect()
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

/// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of `S/⟨gens⟩`
/// for a monomial ideal, by the pivot recursion
/// `N(I) = N(I + ⟨p⟩) + t^{deg p} N(I : p)`.
pub fn hilbert_series_numerator(gens: &[Monomial], n: usize) -> Vec<i128> {
    let gens = minimize(gens.to_vec());
    let mut num = numerator(gens, n);
    while num.len() > 1 && *num.last().unwrap() == 0 {
        num.pop();
    }
    num
}

fn numerator(gens: Vec<Monomial>, n: usize) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // base case: every generator is a power of a single variable
    let pure: Vec<(usize, u16)> = gens
        .iter()
        .filter_map(|g| {
            let s: Vec<usize> = g.support().collect();
            (s.len() == 1).then(|| (s[0], g.exps()[s[0]]))
        })
        .collect();
    if pure.len() == gens.len() {
        let mut out = vec![1i128];
        for (_, e) in pure {
            let mut f = vec![0i128; e as usize + 1];
            f[0] = 1;
            f[e as usize] = -1;
            out = poly_mul(&out, &f);
        }
        return out;
    }
    // pivot on the variable occurring in the most mixed generators
    let mut counts = vec![0usize; n];
    for g in &gens {
        if g.support().count() > 1 {
            for i in g.support() {
                counts[i] += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let p = Monomial::var(n, v);

    let mut with_p = gens.clone();
    with_p.push(p.clone());
    let mut a = numerator(minimize(with_p), n);

    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut e = g.exps().to_vec();
            if e[v] > 0 {
                e[v] -= 1;
            }
            Monomial::from_exps(&e)
        })
        .collect();
    let b = numerator(minimize(colon), n);
    poly_add(&mut a, &b, 1);
    a
}

/// Dimensions of the graded pieces 0..=maxdeg from a Hilbert numerator.
pub(crate) fn hilbert_from_numerator(num: &[i128], n: usize, maxdeg: u32) -> Vec<u64> {
    (0..=maxdeg as usize)
        .map(|k| {
            let mut s: i128 = 0;
            for (j, &c) in num.iter().enumerate() {
                if j <= k {
                    s += c * binom((k - j + n) as i128 - 1, n as i128 - 1);
                }
            }
            assert!(s >= 0, "negative Hilbert function value");
            s as u64
        })
        .collect()
}

fn binom(a: i128, b: i128) -> i128 {
    if b < 0 {
        return if a == -1 && b == -1 { 1 } else { 0 };
    }
    if a < b || a < 0 {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..b {
        r = r * (a - i) / (i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 0).len(), 1);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
    }

    #[test]
    fn numerators() {
        let m = |e: &[u16]| Monomial::from_exps(e);
        // k[x,y]/(xy): 1 + 2t + 2t^2 + ...  numerator 1 - t^2
        assert_eq!(hilbert_series_numerator(&[m(&[1, 1])], 2), vec![1, 0, -1]);
        // k[x]/(x^3)
        let n = hilbert_series_numerator(&[m(&[3])], 1);
        assert_eq!(hilbert_from_numerator(&n, 1, 4), vec![1, 1, 1, 0, 0]);
        // polynomial ring in zero variables: the field
        assert_eq!(hilbert_from_numerator(&[1], 0, 2), vec![1, 0, 0]);
    }
}
