//! Hyperpolygon spaces of the star quiver: short-set combinatorics, the
//! abelian quotient, the circle-equivariant ring via colon ideals, and the
//! rings of the core components.

mod components;
mod upsilon;

pub use components::{
    core_presentation, intersection_form_n5, jt_check, CoreComponentRing, IntersectionForm,
};
pub use upsilon::{upsilon_check, UpsilonMatrix};

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, MultiPoly, PolyRing, Rational, Ring};
use crate::error::{Error, Result};
use crate::groebner::{colon_ideal, ideal_equal, monomials_of_degree, Ideal, PresentedRing};
use crate::hypertoric::{kirwan_presentation, Arrangement, Flavor};
use crate::util::{subsets_by_size, Lcg};

/// Edge lengths `α ∈ ℚ_{>0}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonSpec {
    pub alphas: Vec<Rational>,
}

impl PolygonSpec {
    pub fn from_ints(alphas: &[i64]) -> Result<Self> {
        let spec = PolygonSpec {
            alphas: alphas.iter().map(|&a| Rational::from_int(a)).collect(),
        };
        validate_alpha(&spec)?;
        Ok(spec)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: PolygonSpec = serde_json::from_str(s).map_err(|e| Error::Parse {
            at: e.column(),
            msg: e.to_string(),
        })?;
        validate_alpha(&spec)?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    fn sum(&self, s: &[usize]) -> Rational {
        s.iter().fold(Rational::zero(), |acc, &i| acc + &self.alphas[i])
    }

    /// `Σ_S α < Σ_{S^c} α` for 0-based `S`.
    pub fn is_short(&self, s: &[usize]) -> bool {
        let total = self.sum(&(0..self.n()).collect::<Vec<_>>());
        self.sum(s) * Rational::from_int(2) < total
    }

    /// Relabels so that new index `k` is old index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> PolygonSpec {
        PolygonSpec {
            alphas: perm.iter().map(|&i| self.alphas[i].clone()).collect(),
        }
    }
}

/// Short subsets (0-based, ordered by size then lexicographically).
#[derive(Clone, Debug, Serialize)]
pub struct ShortSets {
    pub n: usize,
    pub short: Vec<Vec<usize>>,
}

impl ShortSets {
    /// `𝒮′`: short sets with at least two elements.
    pub fn s_prime(&self) -> Vec<Vec<usize>> {
        self.short.iter().filter(|s| s.len() >= 2).cloned().collect()
    }

    pub fn nonempty(&self) -> Vec<Vec<usize>> {
        self.short.iter().filter(|s| !s.is_empty()).cloned().collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.short.contains(&s)
    }
}

/// Checks positivity and genericity and enumerates the short subsets.
pub fn validate_alpha(spec: &PolygonSpec) -> Result<ShortSets> {
    let n = spec.n();
    if n < 3 {
        return Err(Error::Invalid(format!("need at least 3 edges, got {n}")));
    }
    if n > 16 {
        return Err(Error::Invalid(format!("at most 16 edges supported, got {n}")));
    }
    if let Some(i) = spec.alphas.iter().position(|a| !a.is_positive()) {
        return Err(Error::Invalid(format!("edge length α{} = {} is not positive", i + 1, spec.alphas[i])));
    }
    let total = spec.sum(&(0..n).collect::<Vec<_>>());
    let mut short = Vec::new();
    for s in subsets_by_size(n) {
        let twice = spec.sum(&s) * Rational::from_int(2);
        if twice == total {
            return Err(Error::NonGeneric(fmt_set(&s)));
        }
        if twice < total {
            short.push(s);
        }
    }
    Ok(ShortSets { n, short })
}

/// 1-based `{i,j,…}`.
pub fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub(crate) fn complement(n: usize, s: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !s.contains(i)).collect()
}

/// Seeded generic edge lengths in `1..=20` with odd total (so no ties).
pub fn random_generic(n: usize, rng: &mut Lcg) -> PolygonSpec {
    loop {
        let alphas: Vec<i64> = (0..n).map(|_| 1 + rng.below(20) as i64).collect();
        if alphas.iter().sum::<i64>() % 2 == 1 {
            return PolygonSpec::from_ints(&alphas).expect("odd total is generic");
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedComponent {
    pub label: String,
    /// 1-based.
    pub subset: Option<Vec<usize>>,
    pub complex_dim: usize,
    /// Betti numbers in even degrees, when the component is a projective
    /// space.
    pub betti: Option<Vec<u64>>,
}

fn projective(label: String, subset: &[usize], k: usize) -> FixedComponent {
    FixedComponent {
        label,
        subset: Some(subset.iter().map(|i| i + 1).collect()),
        complex_dim: k,
        betti: Some(vec![1; k + 1]),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedReport {
    pub components: Vec<FixedComponent>,
    /// `Σ_{S∈𝒮′} χ(ℂP^{|S|−2}) = Σ (|S| − 1)`.
    pub euler_of_core_part: u64,
    /// `dim H*(𝔐)` from the ordinary presentation.
    pub euler_total: u64,
    /// `χ(𝔛)`, by localization.
    pub euler_polygon_space: i64,
}

/// `𝔛` plus one `ℂP^{|S|−2}` per `S ∈ 𝒮′`.
pub fn fixed_report(spec: &PolygonSpec) -> Result<FixedReport> {
    let sets = validate_alpha(spec)?;
    let n = spec.n();
    let mut components = vec![FixedComponent {
        label: "X".into(),
        subset: None,
        complex_dim: n - 3,
        betti: None,
    }];
    let mut core = 0u64;
    for s in sets.s_prime() {
        core += (s.len() - 1) as u64;
        components.push(projective(format!("M_{}", fmt_set(&s)), &s, s.len() - 2));
    }
    let total = konno_presentation(n).total_dimension().unwrap_or(0);
    Ok(FixedReport {
        components,
        euler_of_core_part: core,
        euler_total: total,
        euler_polygon_space: total as i64 - core as i64,
    })
}

/// Fixed components inside the core piece `U_S`: `𝔛_S` and
/// `U_S ∩ 𝔛_T ≅ ℂP^{|S|−2}` for every `T ⊇ S` in `𝒮′`.
pub fn core_fixed_report(spec: &PolygonSpec, s: &[usize]) -> Result<Vec<FixedComponent>> {
    let sets = validate_alpha(spec)?;
    let mut s = s.to_vec();
    s.sort_unstable();
    if s.len() < 2 || !sets.contains(&s) {
        return Err(Error::Precondition(format!("{} is not in S'", fmt_set(&s))));
    }
    let n = spec.n();
    let edges = n - s.len() + 1;
    let mut out = vec![FixedComponent {
        label: format!("X_{}", fmt_set(&s)),
        subset: Some(s.iter().map(|i| i + 1).collect()),
        complex_dim: edges - 3,
        betti: None,
    }];
    for t in sets.s_prime() {
        if s.iter().all(|i| t.contains(i)) {
            out.push(projective(format!("U_S ∩ X_{}", fmt_set(&t)), &t, s.len() - 2));
        }
    }
    Ok(out)
}

/// `ℚ[c1..cn, del, x]`, where `del` stands for the root `δ`.
pub fn hp_ring(n: usize) -> Ring {
    let mut names = crate::algebra::indexed_names("c", n);
    names.push("del".into());
    names.push("x".into());
    PolyRing::new(Field::Q, &names)
}

struct HpVars {
    ring: Ring,
    c: Vec<MultiPoly>,
    del: MultiPoly,
    x: MultiPoly,
}

impl HpVars {
    fn new(n: usize) -> Self {
        let ring = hp_ring(n);
        HpVars {
            c: (0..n).map(|i| MultiPoly::var(&ring, i)).collect(),
            del: MultiPoly::var(&ring, n),
            x: MultiPoly::var(&ring, n + 1),
            ring,
        }
    }

    fn half(&self, p: MultiPoly) -> MultiPoly {
        p.scale(&Rational::new(1, 2))
    }

    fn a(&self, i: usize) -> MultiPoly {
        self.half(&self.c[i] + &self.del)
    }

    fn b(&self, i: usize) -> MultiPoly {
        self.half(&self.c[i] - &self.del)
    }

    fn product(&self, factors: impl IntoIterator<Item = MultiPoly>) -> MultiPoly {
        factors.into_iter().fold(MultiPoly::one(&self.ring), |acc, f| &acc * &f)
    }

    /// `C_S = A_S + B_S`.
    fn c_s(&self, n: usize, s: &[usize]) -> MultiPoly {
        let sc = complement(n, s);
        let a = self.product(s.iter().map(|&i| &self.x - &self.a(i)).chain(sc.iter().map(|&j| self.b(j))));
        let b = self.product(s.iter().map(|&i| &self.x - &self.b(i)).chain(sc.iter().map(|&j| self.a(j))));
        &a + &b
    }

    /// `D_S = Π_{i∈S∖m_S}(c_i − x) Π_{j∈S^c∖n_S}(c_{n_S} + c_j)`.
    fn d_s(&self, n: usize, s: &[usize]) -> MultiPoly {
        let sc = complement(n, s);
        let ns = sc[0];
        self.product(
            s[1..]
                .iter()
                .map(|&i| &self.c[i] - &self.x)
                .chain(sc[1..].iter().map(|&j| &self.c[ns] + &self.c[j])),
        )
    }

    fn e(&self) -> MultiPoly {
        let d2 = &self.del * &self.del;
        &d2 * &(&(&self.x * &self.x) - &d2)
    }

    fn relations(&self) -> Vec<MultiPoly> {
        let d2 = &self.del * &self.del;
        self.c.iter().map(|c| &(c * c) - &d2).collect()
    }
}

/// `𝒥 + ⟨c_i² − δ²⟩` with `𝒥 = ⟨C_S : S short⟩`.
pub fn j_ideal(spec: &PolygonSpec) -> Result<Ideal> {
    let sets = validate_alpha(spec)?;
    let v = HpVars::new(spec.n());
    let mut gens = v.relations();
    gens.extend(sets.short.iter().map(|s| v.c_s(spec.n(), s)));
    Ok(Ideal::new(&v.ring, gens))
}

/// `e = δ²(x² − δ²)`.
pub fn euler_class(n: usize) -> MultiPoly {
    HpVars::new(n).e()
}

pub fn d_s(spec: &PolygonSpec, s: &[usize]) -> MultiPoly {
    HpVars::new(spec.n()).d_s(spec.n(), s)
}

/// `ℚ[c, δ, x] / (⟨c_i² − δ²⟩ + ⟨D_S : ∅ ≠ S short⟩)`.
pub fn hp_presentation(spec: &PolygonSpec) -> Result<PresentedRing> {
    let sets = validate_alpha(spec)?;
    let v = HpVars::new(spec.n());
    let mut gens = v.relations();
    gens.extend(sets.nonempty().iter().map(|s| v.d_s(spec.n(), s)));
    Ok(PresentedRing::new(Ideal::new(&v.ring, gens)))
}

#[derive(Clone, Debug, Serialize)]
pub struct HpColonReport {
    pub equal: bool,
    /// `(𝒥 : e)` has nothing beyond the defining relations below degree
    /// `n − 2`.
    pub low_degree_trivial: bool,
    pub colon_basis_size: usize,
}

/// Compares `(𝒥 : e)` with `⟨D_S⟩`, both modulo `c_i² − δ²`.
pub fn verify_hp_colon(spec: &PolygonSpec) -> Result<HpColonReport> {
    let n = spec.n();
    if n > 6 {
        return Err(Error::Precondition(format!("colon verification is limited to n ≤ 6, got {n}")));
    }
    let j = j_ideal(spec)?;
    let colon = colon_ideal(&j, &euler_class(n))?;
    let hp = hp_presentation(spec)?;
    let equal = ideal_equal(&colon, hp.relations())?;
    let base = PresentedRing::new(Ideal::new(&hp_ring(n), HpVars::new(n).relations()));
    let top = n as u32 - 3;
    let low_degree_trivial = PresentedRing::new(colon.clone()).hilbert_function(top) == base.hilbert_function(top);
    Ok(HpColonReport {
        equal,
        low_degree_trivial,
        colon_basis_size: colon.groebner().len(),
    })
}

/// `e · D_S ∈ 𝒥` for every nonempty short `S` (1-based sets with verdicts).
pub fn e_times_d_membership(spec: &PolygonSpec) -> Result<Vec<(Vec<usize>, bool)>> {
    let sets = validate_alpha(spec)?;
    let j = j_ideal(spec)?;
    let v = HpVars::new(spec.n());
    let e = v.e();
    Ok(sets
        .nonempty()
        .iter()
        .map(|s| {
            let member = j.contains(&(&e * &v.d_s(spec.n(), s)));
            (s.iter().map(|i| i + 1).collect(), member)
        })
        .collect())
}

/// `ℚ[c1..cn] / (⟨c_i² − c_j²⟩ + all monomials of degree n − 2)`.
pub fn konno_presentation(n: usize) -> PresentedRing {
    let ring = PolyRing::new(Field::Q, &crate::algebra::indexed_names("c", n));
    let c: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&ring, i)).collect();
    let mut gens: Vec<MultiPoly> = (1..n).map(|i| &(&c[i] * &c[i]) - &(&c[0] * &c[0])).collect();
    for m in monomials_of_degree(n, n as u32 - 2) {
        gens.push(MultiPoly::monomial(&ring, m, Rational::one()));
    }
    PresentedRing::new(Ideal::new(&ring, gens))
}

/// `hp_presentation` at `x = 0` against the ordinary presentation, both
/// read in `ℚ[c, δ]/⟨c_i² − δ²⟩`.
pub fn konno_matches_hp(spec: &PolygonSpec) -> Result<bool> {
    let n = spec.n();
    let hp = hp_presentation(spec)?;
    let mut names = crate::algebra::indexed_names("c", n);
    names.push("del".into());
    let target = PolyRing::new(Field::Q, &names);
    let mut images: Vec<MultiPoly> = (0..=n).map(|i| MultiPoly::var(&target, i)).collect();
    images.push(MultiPoly::zero(&target));
    let at_zero = hp.relations().map(&target, &images)?;
    let konno = konno_presentation(n);
    let embed: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(&target, i)).collect();
    let del = MultiPoly::var(&target, n);
    let c1 = MultiPoly::var(&target, 0);
    let extended = konno
        .relations()
        .map(&target, &embed)?
        .with([&(&c1 * &c1) - &(&del * &del)]);
    ideal_equal(&at_zero, &extended)
}

/// `ℚ[a1,b1,…,an,bn, del, x]`.
pub fn abelian_ring(n: usize) -> Ring {
    let mut names = Vec::new();
    for i in 1..=n {
        names.push(format!("a{i}"));
        names.push(format!("b{i}"));
    }
    names.push("del".into());
    names.push("x".into());
    PolyRing::new(Field::Q, &names)
}

/// `⟨a_i − b_i − δ, a_i b_i⟩ + ⟨A_S, B_S : S short⟩`.
pub fn abelian_presentation(spec: &PolygonSpec) -> Result<PresentedRing> {
    let sets = validate_alpha(spec)?;
    let n = spec.n();
    let ring = abelian_ring(n);
    let a = |i: usize| MultiPoly::var(&ring, 2 * i);
    let b = |i: usize| MultiPoly::var(&ring, 2 * i + 1);
    let del = MultiPoly::var(&ring, 2 * n);
    let x = MultiPoly::var(&ring, 2 * n + 1);
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(&(&a(i) - &b(i)) - &del);
        gens.push(&a(i) * &b(i));
    }
    for s in &sets.short {
        let sc = complement(n, s);
        let mut big_a = MultiPoly::one(&ring);
        let mut big_b = MultiPoly::one(&ring);
        for &i in s {
            big_a = &big_a * &(&x - &a(i));
            big_b = &big_b * &(&x - &b(i));
        }
        for &j in &sc {
            big_a = &big_a * &b(j);
            big_b = &big_b * &a(j);
        }
        gens.push(big_a);
        gens.push(big_b);
    }
    Ok(PresentedRing::new(Ideal::new(&ring, gens)))
}

/// The Weyl involution `a_i ↔ b_i`, `δ ↦ −δ` preserves the abelian ideal.
pub fn weyl_invariant(spec: &PolygonSpec) -> Result<bool> {
    let r = abelian_presentation(spec)?;
    let ring = r.ring().clone();
    let n = spec.n();
    let images: Vec<MultiPoly> = (0..2 * n + 2)
        .map(|k| match k {
            k if k < 2 * n => MultiPoly::var(&ring, k ^ 1),
            k if k == 2 * n => -MultiPoly::var(&ring, k),
            k => MultiPoly::var(&ring, k),
        })
        .collect();
    ideal_equal(&r.relations().map(&ring, &images)?, r.relations())
}

/// The `2n` hyperplanes `x_i = ±α_i` restricted to `Σ x_i = 0`, in
/// coordinates `x1..x_{n−1}`: normal `2i−1` is `e_i` (`−(1,…,1)` for `i = n`)
/// and normal `2i` its negative, all with offset `α_i`.
pub fn restricted_arrangement(spec: &PolygonSpec) -> Result<Arrangement> {
    let n = spec.n();
    let d = n - 1;
    let mut normals = Vec::new();
    let mut offsets = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; d];
        if i < d {
            v[i] = 1;
        } else {
            v.iter_mut().for_each(|x| *x = -1);
        }
        normals.push(v.clone());
        normals.push(v.iter().map(|x| -x).collect());
        offsets.push(spec.alphas[i].clone());
        offsets.push(spec.alphas[i].clone());
    }
    Arrangement::new(d, normals, offsets)
}

/// `abelian_presentation` against the `H*_{S¹}` presentation of the
/// restricted arrangement under `a_i ↦ t_{2i−1}`, `b_i ↦ t_{2i}`,
/// `δ ↦ t1 − t2`.
pub fn abelian_matches_hypertoric(spec: &PolygonSpec) -> Result<bool> {
    let n = spec.n();
    let ab = abelian_presentation(spec)?;
    let ht = kirwan_presentation(&restricted_arrangement(spec)?, Flavor::HS1)?;
    let target = ht.ring().clone();
    let mut images: Vec<MultiPoly> = (0..2 * n).map(|k| MultiPoly::var(&target, k)).collect();
    images.push(&MultiPoly::var(&target, 0) - &MultiPoly::var(&target, 1));
    images.push(MultiPoly::var(&target, 2 * n));
    ideal_equal(&ab.relations().map(&target, &images)?, ht.relations())
}
