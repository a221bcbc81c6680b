use proptest::prelude::*;
use steiner_core::acceptance::SceneGen;
use steiner_core::numeric::{measure_le, measures_agree, Rational, Scalar};
use steiner_core::perimeter::{oracle_perimeter, perimeter_formula, perimeter_of_set, FormulaArgs};
use steiner_core::polyset::{min_translate_symdiff, steiner_symmetral, translate_symdiff};
use steiner_core::rigidity::{check_equality_case, decide_rigidity, ClassHint, Status};
use steiner_core::scene::{parse_scene, scene_of_set};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn formula_matches_oracle_on_the_line(seed in any::<u64>()) {
        let s = SceneGen::new(seed).dim1::<Rational>(6);
        let e = s.set().unwrap();
        let formula = perimeter_formula(FormulaArgs::W { v: &s.v, b: &s.b }, None).unwrap().total;
        prop_assert_eq!(formula.clone(), oracle_perimeter(&e));
        prop_assert_eq!(formula, perimeter_of_set(&e).unwrap().total);
    }

    #[test]
    fn formula_matches_oracle_in_the_plane(seed in any::<u64>()) {
        let s = SceneGen::new(seed).dim2::<Rational>(6);
        let e = s.set().unwrap();
        let formula = perimeter_formula(FormulaArgs::W { v: &s.v, b: &s.b }, None).unwrap().total;
        prop_assert!(measures_agree::<Rational>(&formula, &oracle_perimeter(&e), 1e-9));
    }

    #[test]
    fn double_mode_tracks_rational(seed in any::<u64>()) {
        let exact = SceneGen::new(seed).dim2::<Rational>(6);
        let approx = SceneGen::new(seed).dim2::<f64>(6);
        let a = oracle_perimeter(&exact.set().unwrap());
        let b = oracle_perimeter(&approx.set().unwrap());
        let a = steiner_core::numeric::Measure::to_f64(&a);
        prop_assert!((a - b).abs() <= 1e-9 * a.max(1.0));
    }

    #[test]
    fn symmetral_never_longer(seed in any::<u64>()) {
        let s = SceneGen::new(seed).dim1::<Rational>(6);
        let pe = oracle_perimeter(&s.set().unwrap());
        let pf = oracle_perimeter(&steiner_symmetral(&s.v).unwrap());
        prop_assert!(measure_le::<Rational>(&pf, &pe, 0.0));
    }

    #[test]
    fn translates_are_equality_cases(seed in any::<u64>(), t in -8i64..8) {
        let s = SceneGen::new(seed).dim1::<Rational>(5);
        let f = steiner_symmetral(&s.v).unwrap();
        let moved = f.translate(&Rational::ratio(t, 4));
        prop_assert!(check_equality_case(&moved, &s.v).unwrap().holds);
        let (best, gap) = min_translate_symdiff(&moved, &s.v).unwrap();
        prop_assert_eq!(gap, Rational::zero());
        prop_assert_eq!(translate_symdiff(&s.v, &moved.barycenter(), &best), Rational::zero());
    }

    #[test]
    fn scenes_roundtrip(seed in any::<u64>()) {
        let s = SceneGen::new(seed).dim2::<Rational>(8);
        let e = s.set().unwrap();
        let text = scene_of_set(&e).to_json_string();
        let back = parse_scene::<Rational>(&text).unwrap();
        prop_assert_eq!(back.set().unwrap(), e);
    }

    #[test]
    fn witnesses_keep_the_perimeter(seed in any::<u64>()) {
        let v = SceneGen::new(seed).dim1::<Rational>(6).v;
        let verdict = decide_rigidity(&v, ClassHint::Auto).unwrap();
        prop_assert_eq!(verdict.witness.is_some(), verdict.status == Status::NonRigid);
        if let Some(w) = verdict.witness {
            let pf = oracle_perimeter(&steiner_symmetral(&v).unwrap());
            prop_assert_eq!(oracle_perimeter(&w.set), pf);
            prop_assert!(min_translate_symdiff(&w.set, &v).unwrap().1 > Rational::zero());
        }
    }
}
