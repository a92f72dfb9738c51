//! Runs the ten acceptance criteria in order, printing one line each, and
//! exits non-zero if any criterion fails or exceeds its time limit.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hkq::algebra::{parse_poly, Field, MultiPoly, Rational};
use hkq::cogen::{admissible_sets, char_decompose, verify_theorem_int, volume_polynomial, x_ring};
use hkq::fixtures;
use hkq::groebner::{annihilator_in_quotient, ideal_equal, map_is_isomorphism, Ideal, PresentedRing, RingMap};
use hkq::hyperpolygon::{
    abelian_matches_hypertoric, abelian_presentation, core_presentation, e_times_d_membership, hp_presentation,
    intersection_form_n5, konno_presentation, random_generic, restricted_arrangement, upsilon_check,
    verify_hp_colon, PolygonSpec,
};
use hkq::hypertoric::{kirwan_presentation, kirwan_presentation_in, matroid_h_vector, Arrangement, Flavor};
use hkq::os2::{annihilator_fingerprint, freeness_over_x, os2_presentation, os_specialize, real_chambers};
use hkq::util::Lcg;

use hkq_oracles::{h_vector, in_piece, ints, on_some_hyperplane, random_smooth, whitney};

fn ideal(ring: &PresentedRing, gens: &[&str]) -> Ideal {
    Ideal::parse(ring.ring(), gens).unwrap()
}

fn assert_ideal(ring: &PresentedRing, gens: &[&str]) {
    assert!(ideal_equal(ring.relations(), &ideal(ring, gens)).unwrap(), "relations differ from <{}>", gens.join(", "));
}

fn sorted(v: &[String]) -> Vec<String> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// `x ↦ 0` image of an ideal in a ring with trailing `x`, landing in `target`.
fn set_x_zero(i: &Ideal, target: &PresentedRing) -> Ideal {
    let t = target.ring();
    let mut images: Vec<MultiPoly> = (0..t.nvars()).map(|k| MultiPoly::var(t, k)).collect();
    images.push(MultiPoly::zero(t));
    i.map(t, &images).unwrap()
}

fn polys(ring: &PresentedRing, gens: &[&str]) -> Vec<MultiPoly> {
    gens.iter().map(|g| parse_poly(ring.ring(), g).unwrap()).collect()
}

fn ooh() -> PolygonSpec {
    PolygonSpec::from_ints(&[1, 1, 3, 3, 3]).unwrap()
}

fn criterion_1() {
    let cases: [(Arrangement, [&str; 3]); 3] = [
        (fixtures::fig2_a(), ["t1*(x - t2)*t4", "t1*t3*t4", "t2*t3"]),
        (fixtures::fig2_b(), ["(x - t2)*t3", "t1*t2*t4", "t1*t3*t4"]),
        (fixtures::fig2_c(), ["(x - t1)*t2*(x - t4)", "t1*t3*t4", "t2*t3"]),
    ];
    for (arr, want) in &cases {
        let p = kirwan_presentation_in(arr, Flavor::HTdS1, Field::Q).unwrap();
        let want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        assert_eq!(sorted(&p.factored), sorted(&want));
        assert_ideal(&p.ring, &want.iter().map(String::as_str).collect::<Vec<_>>());
    }

    let ma = kirwan_presentation(&fixtures::fig2_a(), Flavor::HTdS1).unwrap();
    let t2 = ma.parse("t2").unwrap();
    let (ann, mins) = annihilator_in_quotient(&ma, &t2).unwrap();
    assert_eq!(mins.len(), 1);
    assert_eq!(mins[0].to_string(), "t3");
    assert!(ideal_equal(&ann, &ma.relations().with([ma.parse("t3").unwrap()])).unwrap());

    // every nonzero {0,±1} combination of t1..t4, x, up to sign
    let mc = kirwan_presentation(&fixtures::fig2_c(), Flavor::HTdS1).unwrap();
    let vars = mc.ring().nvars();
    let mut candidates = 0;
    for code in 1..3u32.pow(vars as u32) {
        let digits: Vec<i64> = (0..vars).map(|k| (code / 3u32.pow(k as u32) % 3) as i64 - 1).collect();
        if digits.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        candidates += 1;
        let f = (0..vars).fold(MultiPoly::zero(mc.ring()), |acc, k| {
            acc + MultiPoly::var(mc.ring(), k).scale(&Rational::from_int(digits[k]))
        });
        let (_, mins) = annihilator_in_quotient(&mc, &f).unwrap();
        let principal_linear = mins.len() == 1 && mins[0].degree() == Some(1);
        assert!(!principal_linear, "Ann({f}) = <{}>", mins[0]);
    }
    assert_eq!(candidates, 121);
}

fn criterion_2() {
    let a = kirwan_presentation(&fixtures::fig2_a(), Flavor::HS1).unwrap();
    let b = kirwan_presentation(&fixtures::fig2_b(), Flavor::HS1).unwrap();
    let c = kirwan_presentation(&fixtures::fig2_c(), Flavor::HS1).unwrap();
    assert_ideal(&a, &["t2*t3", "(t3-t2)^2*(x-t2)", "t3^3", "t1+t2-t3", "t1-t4"]);
    assert_ideal(&b, &["(x-t2)*t3", "(t2+t3)^2*t2", "(t2+t3)^2*t3", "t1-t2-t3", "t1-t4"]);
    assert_ideal(&c, &["t2*t3", "(x-t3+t2)^2*t2", "t3^3", "t1+t2-t3", "t1-t4"]);
    assert!(!b.relations().contains(&b.parse("(x-t2)^3").unwrap()));
    assert!(!b.relations().contains(&b.parse("t3^3").unwrap()));
    assert!(a.relations().contains(&a.parse("t3^3").unwrap()));
}

fn criterion_3() {
    let a = os2_presentation(&fixtures::fig2_a()).unwrap().ring;
    let c = os2_presentation(&fixtures::fig2_c()).unwrap().ring;
    let f = polys(&c, &["t1 + t2", "t2 + t3 + x", "t3", "t2 + t4", "x"]);
    // explicit inverse over F2
    let g = polys(&a, &["t1 + t2 + t3 + x", "t2 + t3 + x", "t3", "t2 + t3 + t4 + x", "x"]);
    assert!(c.relations().contains_ideal(&a.relations().map(c.ring(), &f).unwrap()));
    assert!(a.relations().contains_ideal(&c.relations().map(a.ring(), &g).unwrap()));
    for k in 0..5 {
        let there_and_back = f[k].substitute(&g).unwrap();
        assert_eq!(there_and_back, MultiPoly::var(a.ring(), k));
        assert_eq!(g[k].substitute(&f).unwrap(), MultiPoly::var(c.ring(), k));
    }
    assert!(map_is_isomorphism(&RingMap { source: a, target: c, images: f }).unwrap());

    let ap = os2_presentation(&fixtures::fig2_a_prime()).unwrap().ring;
    let cp = os2_presentation(&fixtures::fig2_c_prime()).unwrap().ring;
    let (ann, mins) = annihilator_in_quotient(&ap, &ap.parse("t2").unwrap()).unwrap();
    let want = ap.relations().with(polys(&ap, &["t3", "t2 + x"]));
    assert_eq!(mins.len(), 2);
    assert!(ideal_equal(&ann, &want).unwrap());
    let fa = annihilator_fingerprint(&ap, 1).unwrap();
    let fc = annihilator_fingerprint(&cp, 1).unwrap();
    assert!(!fa.truncated && !fc.truncated);
    assert!(fa.has_profile(&[1, 1]));
    assert!(!fc.has_profile(&[1, 1]));
    assert!(fa.distinguishes(&fc));
}

fn criterion_4() {
    let arr = fixtures::fig2([0, 1, 1, 0]);
    let x = x_ring(4);
    let p0 = volume_polynomial(&arr, &[], &ints(&[0, 1, 1, 0])).unwrap().poly;
    let p14 = volume_polynomial(&arr, &[0, 3], &ints(&[0, 1, 1, 0])).unwrap().poly;
    let far = volume_polynomial(&arr, &[], &ints(&[7, 1, 1, 0])).unwrap().poly;
    assert_eq!(p0, parse_poly(&x, "1/2*(x1 + x3 + x4)^2").unwrap());
    assert_eq!(p14, parse_poly(&x, "1/2*(-x1 + x2 - x4)^2").unwrap());
    assert_eq!(far, parse_poly(&x, "(x2 + x3)*(x1 + x4 + 1/2*x3 - 1/2*x2)").unwrap());
    assert_eq!(p14, &p0 - &far);
}

fn criterion_5() {
    for arr in [fixtures::fig2([0, 1, 1, 0]), fixtures::triangle()] {
        let rep = verify_theorem_int(&arr).unwrap();
        assert!(rep.equal);
        assert!(rep.matches_presentation);
        let h = kirwan_presentation(&arr, Flavor::H).unwrap();
        let ann_u = rep.ann_u.map(h.ring(), &(0..arr.n()).map(|k| MultiPoly::var(h.ring(), k)).collect::<Vec<_>>());
        assert!(ideal_equal(&ann_u.unwrap(), h.relations()).unwrap());
    }
}

fn short_count(spec: &PolygonSpec) -> usize {
    let n = spec.n();
    let total: Rational = spec.alphas.iter().fold(Rational::zero(), |a, b| a + b);
    hkq_oracles::all_subsets(n)
        .filter(|s| {
            let part: Rational = s.iter().fold(Rational::zero(), |a, &i| a + &spec.alphas[i]);
            !s.is_empty() && part * Rational::from_int(2) < total
        })
        .count()
}

fn criterion_6() {
    for a in [&[2, 3, 4, 8][..], &[1, 1, 3, 3, 3]] {
        let spec = PolygonSpec::from_ints(a).unwrap();
        let rep = verify_hp_colon(&spec).unwrap();
        assert!(rep.equal && rep.low_degree_trivial, "{a:?}");
    }
    let mut specs: Vec<PolygonSpec> = [&[2, 3, 4, 8][..], &[1, 1, 3, 3, 3], &[1, 1, 2, 3, 3, 5]]
        .iter()
        .map(|a| PolygonSpec::from_ints(a).unwrap())
        .collect();
    let mut rng = Lcg::new(6);
    for n in [4, 5, 6, 6] {
        specs.push(random_generic(n, &mut rng));
    }
    for spec in &specs {
        let m = e_times_d_membership(spec).unwrap();
        assert_eq!(m.len(), short_count(spec), "{:?}", spec.alphas);
        assert!(m.iter().all(|(_, ok)| *ok), "{:?}", spec.alphas);
    }
}

fn criterion_7() {
    for n in 4..=7 {
        let mut rng = Lcg::new(7 + n as u64);
        for _ in 0..10 {
            let spec = random_generic(n, &mut rng);
            let u = upsilon_check(&spec).unwrap();
            let size = u.rows.len();
            assert_eq!(u.cols.len(), size);
            for (i, row) in u.entries.iter().enumerate() {
                assert_eq!(row.len(), size);
                assert!(row[i].is_one(), "{:?} diagonal {i}", spec.alphas);
                assert!(row[i + 1..].iter().all(Rational::is_zero), "{:?} row {i}", spec.alphas);
            }
            assert!(u.unit_lower_triangular);
        }
    }
}

fn diagonal(m: &[Vec<Rational>]) -> Vec<i64> {
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert!(i == j || x.is_zero(), "off-diagonal entry {x} at ({i},{j})");
        }
    }
    (0..m.len()).map(|i| m[i][i].to_i64().unwrap()).collect()
}

fn criterion_8() {
    let f12 = intersection_form_n5(&ooh(), &[0, 1]).unwrap();
    assert_eq!(f12.basis, ["d1 - d3 - d4 - d5", "d3", "d4", "d5"]);
    assert_eq!(diagonal(&f12.matrix), [1, -1, -1, -1]);
    let f13 = intersection_form_n5(&ooh(), &[0, 2]).unwrap();
    assert_eq!(f13.basis, ["d1 - d2", "d2"]);
    assert_eq!(diagonal(&f13.matrix), [-1, 1], "S = {{1,3}}");
}

fn x_zero_compatible(arr: &Arrangement) {
    for (with_x, without) in [(Flavor::HTdS1, Flavor::HTd), (Flavor::HS1, Flavor::H)] {
        let big = kirwan_presentation(arr, with_x).unwrap();
        let small = kirwan_presentation(arr, without).unwrap();
        assert!(ideal_equal(&set_x_zero(big.relations(), &small), small.relations()).unwrap(), "{with_x:?}");
    }
}

fn criterion_9() {
    let mut rng = Lcg::new(9);
    let random: Vec<Arrangement> = (0..5).map(|_| random_smooth(&mut rng, 7)).collect();
    for arr in &random {
        assert!(hkq_oracles::is_unimodular(arr));
        let h = h_vector(arr);
        assert_eq!(matroid_h_vector(arr), h);
        let hf = kirwan_presentation(arr, Flavor::H).unwrap().hilbert_function(arr.d as u32 + 1);
        let want: Vec<u64> = h.iter().map(|&x| x as u64).chain([0]).collect();
        assert_eq!(hf, want, "{:?}", arr);
        x_zero_compatible(arr);
    }

    let fixed = [
        fixtures::fig2_a(),
        fixtures::fig2_b(),
        fixtures::fig2_c(),
        fixtures::fig2_a_prime(),
        fixtures::fig2_c_prime(),
        fixtures::figure3(),
        fixtures::triangle(),
    ];
    for arr in &fixed {
        x_zero_compatible(arr);
    }
    for a in [&[2, 3, 4, 8][..], &[1, 1, 3, 3, 3]] {
        let spec = PolygonSpec::from_ints(a).unwrap();
        let hp = hp_presentation(&spec).unwrap();
        // both sides read in Q[c, del] with del^2 = c1^2
        let t = hp.ring().names()[..=spec.n()].to_vec();
        let t = hkq::algebra::PolyRing::new(Field::Q, &t);
        let mut images: Vec<MultiPoly> = (0..=spec.n()).map(|k| MultiPoly::var(&t, k)).collect();
        images.push(MultiPoly::zero(&t));
        let at_zero = hp.relations().map(&t, &images).unwrap();
        let konno = konno_presentation(spec.n());
        let c1 = MultiPoly::var(&t, 0);
        let del = MultiPoly::var(&t, spec.n());
        let konno = konno
            .relations()
            .map(&t, &images[..spec.n()])
            .unwrap()
            .with([&(&c1 * &c1) - &(&del * &del)]);
        assert!(ideal_equal(&at_zero, &konno).unwrap(), "{a:?}");
    }
    for s in [&[0, 1][..], &[0, 2]] {
        let core = core_presentation(&ooh(), s).unwrap();
        let e = &core.equivariant;
        let o = &core.ordinary;
        let images: Vec<MultiPoly> = e
            .ring()
            .names()
            .iter()
            .map(|v| if v == "x" { MultiPoly::zero(o.ring()) } else { MultiPoly::var_named(o.ring(), v).unwrap() })
            .collect();
        assert!(ideal_equal(&e.relations().map(o.ring(), &images).unwrap(), o.relations()).unwrap());
    }

    // indicator identity against a direct membership test
    let arr = fixtures::fig2([0, 1, 1, 0]);
    let r = ints(&[0, 1, 1, 0]);
    let large = Rational::from_int(1_000_000);
    let dec = char_decompose(&arr, &r, &[0, 3], &large).unwrap();
    let mut rng = Lcg::new(90);
    let mut checked = 0;
    while checked < 1000 {
        let scale = if rng.below(10) == 0 { 3_000_000 } else { 4 };
        let v: Vec<Rational> = (0..2)
            .map(|_| Rational::new(rng.below(2_000_001) as i64 - 1_000_000, 1_000_000) * Rational::from_int(scale))
            .collect();
        if on_some_hyperplane(&arr, &r, &v) || dec.terms.iter().any(|t| on_some_hyperplane(&arr, &t.offsets, &v)) {
            continue;
        }
        let lhs = in_piece(&arr, &r, &[0, 3], &v) as i64;
        let rhs: i64 = dec.terms.iter().map(|t| t.eta * in_piece(&arr, &t.offsets, &[], &v) as i64).sum();
        assert_eq!(lhs, rhs, "at {v:?}");
        checked += 1;
    }

    // freeness over F2[x]: H_k(R) = Σ_{j ≤ k} w_j
    for arr in fixed.iter().chain(&random) {
        let os2 = os2_presentation(arr).unwrap();
        let w = whitney(arr);
        let top = arr.d as u32 + 2;
        let hf = os2.ring.hilbert_function(top);
        let mut acc = 0;
        for k in 0..=top as usize {
            acc += w.get(k).copied().unwrap_or(0);
            assert_eq!(hf[k], acc, "degree {k} of {arr:?}");
        }
        assert_eq!(os_specialize(&os2, 0).unwrap().hilbert_function(top)[..w.len()], w[..]);
        let chambers = w.iter().sum::<u64>();
        assert_eq!(real_chambers(arr) as u64, chambers);
        assert_eq!(os_specialize(&os2, 1).unwrap().total_dimension(), Some(chambers));
        assert!(freeness_over_x(&os2).unwrap().free);
    }

    // P^r_A = Σ η_C P^{r(C)} for every admissible A
    for (arr, r) in [
        (fixtures::fig2([0, 1, 1, 0]), ints(&[0, 1, 1, 0])),
        (fixtures::triangle(), ints(&[0, 0, 1])),
        (fixtures::figure3(), ints(&[2, 1, 2, 0, -1])),
    ] {
        let arr = arr.with_offsets(r.clone());
        for a in admissible_sets(&arr) {
            let dec = char_decompose(&arr, &r, &a, &Rational::from_int(1000)).unwrap();
            let want = volume_polynomial(&arr, &a, &r).unwrap().poly;
            assert_eq!(dec.polynomial_sum(&arr).unwrap(), want, "A = {a:?}");
        }
    }
}

fn criterion_10() {
    let mut specs: Vec<PolygonSpec> = [&[1, 2, 2][..], &[2, 3, 4, 8], &[1, 1, 3, 3, 3]]
        .iter()
        .map(|a| PolygonSpec::from_ints(a).unwrap())
        .collect();
    let mut rng = Lcg::new(10);
    for n in [4, 5, 5] {
        specs.push(random_generic(n, &mut rng));
    }
    for spec in &specs {
        assert!(abelian_matches_hypertoric(spec).unwrap(), "{:?}", spec.alphas);
        let ab = abelian_presentation(spec).unwrap();
        let arr = restricted_arrangement(spec).unwrap();
        assert_eq!(arr.n(), 2 * spec.n());
        let top = 2 * spec.n() as u32;
        let ht = kirwan_presentation(&arr, Flavor::HS1).unwrap();
        assert_eq!(ab.hilbert_function(top), ht.hilbert_function(top), "{:?}", spec.alphas);
    }
}

fn panic_message(e: &(dyn std::any::Any + Send)) -> String {
    if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else {
        "panic".into()
    }
}

fn main() {
    let criteria: [(fn(), Duration); 10] = [
        (criterion_1, Duration::from_secs(30)),
        (criterion_2, Duration::from_secs(10)),
        (criterion_3, Duration::from_secs(60)),
        (criterion_4, Duration::from_secs(10)),
        (criterion_5, Duration::from_secs(120)),
        (criterion_6, Duration::from_secs(300)),
        (criterion_7, Duration::from_secs(120)),
        (criterion_8, Duration::from_secs(30)),
        (criterion_9, Duration::from_secs(300)),
        (criterion_10, Duration::from_secs(120)),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (k, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(()) if took <= *limit => Ok(()),
            Ok(()) => Err("time limit exceeded".to_string()),
            Err(e) => Err(panic_message(e.as_ref())),
        };
        let status = if verdict.is_ok() { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} ({:.2}s / {}s)", k + 1, took.as_secs_f64(), limit.as_secs());
        if let Err(msg) = verdict {
            println!("    {}", msg.replace('\n', "\n    "));
            failed.push(k + 1);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
