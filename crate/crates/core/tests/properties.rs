use binform::invariants::MPoly;
use binform::pic::{l_class, restrict};
use binform::{form_gcd, model_hf, parse_form, resultant, BinaryForm, Field, GradedIdeal, PicClass};
use num_rational::BigRational;
use proptest::prelude::*;

const P: u32 = 101;

fn fp() -> Field {
    Field::Prime(P)
}

fn form_of(coeffs: Vec<i64>) -> BinaryForm {
    BinaryForm::from_i64s(fp(), &coeffs)
}

fn nonzero_form(deg: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-50i64..50, deg + 1)
        .prop_filter("nonzero", |c| c.iter().any(|x| x.rem_euclid(P as i64) != 0))
        .prop_map(form_of)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both(f in nonzero_form(3), g in nonzero_form(4)) {
        let h = form_gcd(&f, &g).unwrap();
        prop_assert!(h.divides(&f));
        prop_assert!(h.divides(&g));
    }

    #[test]
    fn resultant_vanishes_exactly_on_common_factor(f in nonzero_form(2), g in nonzero_form(3)) {
        let res = resultant(&f, &g).unwrap();
        let h = form_gcd(&f, &g).unwrap();
        prop_assert_eq!(res.is_zero(), h.degree() > 0);
    }

    #[test]
    fn shared_linear_factor_kills_resultant(
        l in nonzero_form(1), f in nonzero_form(1), g in nonzero_form(2)
    ) {
        prop_assert!(resultant(&l.mul(&f), &l.mul(&g)).unwrap().is_zero());
    }

    #[test]
    fn resultant_is_product_over_roots(roots in prop::collection::vec(0i64..101, 3), g in nonzero_form(2)) {
        let field = fp();
        let mut f = BinaryForm::from_i64s(field, &[1]);
        for r in &roots {
            f = f.mul(&BinaryForm::from_i64s(field, &[1, -r]));
        }
        let expected = roots
            .iter()
            .fold(field.one(), |acc, r| acc * g.eval(&field.from_i64(*r), &field.one()));
        prop_assert_eq!(resultant(&f, &g).unwrap(), expected);
    }

    #[test]
    fn coprime_pairs_have_model_hf(f in nonzero_form(2), g in nonzero_form(4)) {
        prop_assume!(form_gcd(&f, &g).unwrap().degree() == 0);
        let ideal = GradedIdeal::from_forms(2, 4, &[f, g], 8).unwrap();
        let hf = ideal.hilbert_function();
        for (l, h) in hf.iter().enumerate() {
            prop_assert_eq!(*h, model_hf(2, 4, l).unwrap());
        }
        prop_assert!(ideal.is_hilb_point());
    }

    #[test]
    fn display_parses_back(f in nonzero_form(5)) {
        let back = parse_form(&f.to_string(), fp(), Some(5)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn restriction_is_linear(
        h1 in -5i64..5, x1 in -5i64..5, e1 in -5i64..5,
        h2 in -5i64..5, x2 in -5i64..5, e2 in -5i64..5,
    ) {
        let a = PicClass::new(3, 5, h1, x1, vec![e1]).unwrap();
        let b = PicClass::new(3, 5, h2, x2, vec![e2]).unwrap();
        for u in 1..3 {
            let (a1, a2) = restrict(u, &a).unwrap();
            let (b1, b2) = restrict(u, &b).unwrap();
            let (s1, s2) = restrict(u, &a.add(&b)).unwrap();
            prop_assert_eq!(s1, a1.add(&b1));
            prop_assert_eq!(s2, a2.add(&b2));
        }
    }

    #[test]
    fn derivations_obey_leibniz(
        pc in prop::collection::vec((0usize..7, -3i64..4), 1..4),
        qc in prop::collection::vec((0usize..7, -3i64..4), 1..4),
        j in 0usize..3,
    ) {
        let build = |terms: &[(usize, i64)]| {
            terms.iter().fold(MPoly::zero(2, 4), |acc, &(v, c)| {
                let var = if v < 3 { MPoly::a(2, 4, v) } else { MPoly::b(2, 4, v - 3) };
                acc.add(&var.mul(&var).scale(&BigRational::from_integer(c.into())))
            })
        };
        let (p, q) = (build(&pc), build(&qc));
        let lhs = p.mul(&q).apply_derivation(j);
        let rhs = p.apply_derivation(j).mul(&q).add(&p.mul(&q.apply_derivation(j)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn l_class_restricts_to_smaller_l_class() {
    let (first, second) = restrict(1, &l_class(4, 7, 3).unwrap()).unwrap();
    assert_eq!(first, l_class(3, 8, 2).unwrap());
    assert!(second.is_zero());
}
