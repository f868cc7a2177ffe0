use binform::curves::{degree_profile, explicit_curve, verify_complete_curve};
use binform::invariants::{free_ring_count, generic_resultant, invariant_dimension};
use binform::pic::{delta_class, l_class};
use binform::strata::census;
use binform::{model_hf, parse_form, resultant, BinaryForm, Field, GradedIdeal};

fn q() -> Field {
    Field::Rational
}

fn form(s: &str) -> BinaryForm {
    parse_form(s, q(), None).unwrap()
}

#[test]
fn resultant_of_coordinates() {
    assert_eq!(resultant(&form("X0"), &form("X1")).unwrap(), q().from_i64(-1));
    assert_eq!(resultant(&form("X1"), &form("X0")).unwrap(), q().from_i64(1));
}

// product of G over the roots of a split F
#[test]
fn resultant_matches_root_product() {
    let f = form("(X0 - X1)*(X0 - 2*X1)*(X0 + 3*X1)");
    let g = form("X0^2 + X0*X1 + 5*X1^2");
    let expected: i64 = [1i64, 2, -3].iter().map(|r| r * r + r + 5).product();
    assert_eq!(resultant(&f, &g).unwrap(), q().from_i64(expected));
}

#[test]
fn resultant_small_example() {
    let f = form("X0^2 + X1^2");
    let g = form("X0 + 3*X1");
    // G(i, 1) G(-i, 1)
    assert_eq!(resultant(&f, &g).unwrap(), q().from_i64(10));
    let g = form("2*X0 - X1");
    assert_eq!(resultant(&f, &g).unwrap(), q().from_i64(5));
}

// layer dimension of (F, G) for coprime F, G from the Koszul relation
fn koszul_hf(d: usize, e: usize, l: usize) -> usize {
    let part = |k: usize| if l >= k { l - k + 1 } else { 0 };
    part(d) + part(e) - part(d + e)
}

#[test]
fn model_hf_matches_koszul_count() {
    for d in 1..6 {
        for e in d + 1..9 {
            for l in 0..d + e + 4 {
                assert_eq!(model_hf(d, e, l).unwrap(), koszul_hf(d, e, l), "d={d} e={e} l={l}");
            }
        }
    }
}

#[test]
fn hilbert_function_with_common_factor() {
    let ideal = GradedIdeal::from_forms(2, 3, &[form("X0^2"), form("X0*X1^2")], 5).unwrap();
    assert_eq!(ideal.hilbert_function(), vec![0, 0, 1, 3, 4, 5]);
}

#[test]
fn explicit_curve_resultant_is_pure_power() {
    for d in 1..=4 {
        let cert = verify_complete_curve(&explicit_curve(d, q()).unwrap()).unwrap();
        let t = if d == 1 { "t".to_string() } else { format!("t^{}", d * d) };
        assert!(cert.resultant_profile == t || cert.resultant_profile == format!("-{t}"), "{}", cert.resultant_profile);
        assert!(cert.complete && cert.verdict, "d={d}");
    }
}

#[test]
fn explicit_curve_over_prime_field() {
    for d in 1..=4 {
        let cert = verify_complete_curve(&explicit_curve(d, Field::Prime(101)).unwrap()).unwrap();
        assert!(cert.verdict, "d={d}");
        assert!(cert.special_points.iter().all(|p| p.gcd_degree == 0));
    }
}

#[test]
fn explicit_curve_degrees() {
    for d in 1..=4 {
        let profile = degree_profile(&explicit_curve(d, q()).unwrap()).unwrap();
        let expected: Vec<usize> = (0..=d).rev().collect();
        assert_eq!(profile.values, expected);
    }
}

// over GF(q), d = 2: a square F meets one G class, a split F two
#[test]
fn census_delta_count_for_quadrics() {
    for p in [3u32, 5] {
        let c = census(Field::Prime(p), 2, 3, 2).unwrap();
        let q = p as u64;
        assert_eq!(c.delta_by_gcd, (q + 1) * (q + 1));
        assert_eq!(c.delta_by_resultant, c.delta_by_gcd);
        assert_eq!(c.total, (q * q + q + 1) * (q + 1));
    }
}

#[test]
fn picard_values() {
    assert_eq!(serde_json::to_string(&delta_class(3, 5).unwrap()).unwrap(), r#"{"h":5,"xi":3,"exc":[-2]}"#);
    assert_eq!(l_class(3, 5, 1).unwrap().coords(), vec![3, 1, 0]);
}

#[test]
fn linear_invariants_count_monomials() {
    // monomials a0^i a1^j R^b with i + j + e*b = a
    for e in 2..5 {
        for a in 0..7usize {
            for b in 0..3 {
                let count = (a + 1).saturating_sub(e * b);
                assert_eq!(free_ring_count(e, a, b), count);
                assert_eq!(invariant_dimension(q(), 1, e, a, b).unwrap(), count, "e={e} a={a} b={b}");
            }
        }
    }
}

#[test]
fn quadric_cubic_resultant_slice() {
    assert!(invariant_dimension(q(), 2, 3, 3, 2).unwrap() >= 1);
    let r = generic_resultant(2, 3);
    assert_eq!(r.terms().len(), 13);
}
