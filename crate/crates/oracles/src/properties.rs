use hkq::algebra::Rational;
use hkq::cogen::{admissible_sets, chamber_signs, char_decompose, volume_polynomial, wall_functionals};
use hkq::fixtures;
use hkq::groebner::{ideal_equal, map_is_isomorphism};
use hkq::hyperpolygon::{konno_matches_hp, random_generic, upsilon_check, verify_hp_colon};
use hkq::hypertoric::{kirwan_presentation, Flavor};
use hkq::os2::{flip_map, freeness_over_x, os2_presentation};
use hkq::polyhedra;
use hkq::util::Lcg;
use proptest::prelude::*;

use crate::{h_vector, ints, random_smooth, whitney};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hilbert_function_is_the_h_vector(seed in any::<u64>()) {
        let arr = random_smooth(&mut Lcg::new(seed), 7);
        let hf = kirwan_presentation(&arr, Flavor::H).unwrap().hilbert_function(arr.d as u32);
        let h: Vec<u64> = h_vector(&arr).iter().map(|&x| x as u64).collect();
        prop_assert_eq!(hf, h);
    }

    #[test]
    fn presentations_survive_translation(seed in any::<u64>(), u in prop::collection::vec(-3i64..=3, 3)) {
        let arr = random_smooth(&mut Lcg::new(seed), 6);
        let moved = arr.translate(&ints(&u[..arr.d]));
        for flavor in [Flavor::H, Flavor::HTdS1] {
            let p = kirwan_presentation(&arr, flavor).unwrap();
            let q = kirwan_presentation(&moved, flavor).unwrap();
            prop_assert!(ideal_equal(p.relations(), q.relations()).unwrap());
        }
    }

    #[test]
    fn volume_polynomial_gives_volumes_in_its_chamber(seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let arr = fixtures::fig2([0, 1, 1, 0]);
        let r = ints(&[0, 1, 1, 0]);
        let sets = admissible_sets(&arr);
        let a = &sets[rng.below(sets.len() as u64) as usize];
        let p = volume_polynomial(&arr, a, &r).unwrap().poly;
        let walls = wall_functionals(&arr);
        let home = chamber_signs(&walls, &r);
        let mut tested = 0;
        while tested < 3 {
            // a scaled, perturbed copy of r; chambers are cones
            let scale = Rational::from_int(1 + rng.below(4) as i64);
            let s: Vec<Rational> = r
                .iter()
                .map(|x| x * &scale + Rational::new(rng.below(21) as i64 - 10, 40))
                .collect();
            if chamber_signs(&walls, &s) != home {
                continue;
            }
            let piece = arr.with_offsets(s.clone()).region(a);
            let vol = if polyhedra::feasible(&piece) { polyhedra::volume(&piece).unwrap() } else { Rational::zero() };
            prop_assert_eq!(p.eval(&s).unwrap(), vol);
            tested += 1;
        }
    }

    #[test]
    fn indicator_decomposition_holds_pointwise(seed in any::<u64>()) {
        let arr = fixtures::fig2([0, 1, 1, 0]);
        let r = ints(&[0, 1, 1, 0]);
        let sets = admissible_sets(&arr);
        let a = &sets[Lcg::new(seed).below(sets.len() as u64) as usize];
        let dec = char_decompose(&arr, &r, a, &Rational::from_int(1000)).unwrap();
        prop_assert_eq!(dec.terms.len(), 1 << a.len());
        prop_assert_eq!(dec.check_pointwise(&arr, 100, seed).unwrap(), 100);
    }

    #[test]
    fn mod_two_ring_is_free_over_x(seed in any::<u64>()) {
        let arr = random_smooth(&mut Lcg::new(seed), 6);
        let os2 = os2_presentation(&arr).unwrap();
        let f = freeness_over_x(&os2).unwrap();
        prop_assert!(f.free);
        let w = whitney(&arr);
        prop_assert_eq!(&f.hilbert_mod_x[..w.len()], &w[..]);
    }

    #[test]
    fn reversing_a_coorientation_is_an_isomorphism(seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let arr = random_smooth(&mut rng, 6);
        let m = rng.below(arr.n() as u64) as usize;
        prop_assert!(map_is_isomorphism(&flip_map(&arr, m).unwrap()).unwrap());
    }

    #[test]
    fn upsilon_is_unit_lower_triangular(seed in any::<u64>(), n in 4usize..=5) {
        let spec = random_generic(n, &mut Lcg::new(seed));
        let u = upsilon_check(&spec).unwrap();
        prop_assert!(u.unit_lower_triangular && u.v_matches_d && u.v_closed_form && u.w_closed_form);
    }

    #[test]
    fn equivariant_polygon_ring_specializes(seed in any::<u64>()) {
        let spec = random_generic(4, &mut Lcg::new(seed));
        prop_assert!(konno_matches_hp(&spec).unwrap());
        let colon = verify_hp_colon(&spec).unwrap();
        prop_assert!(colon.equal && colon.low_degree_trivial);
    }
}
