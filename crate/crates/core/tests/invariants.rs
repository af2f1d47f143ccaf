use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use unexp_core::config::{dot, dual_form, LineChart, PointConfig};
use unexp_core::derivmod::{e_alpha_forms, eta_transform, SplittingType};
use unexp_core::linalg::{rank, Matrix};
use unexp_core::poly::{BinaryForm, MultiIndex, MultiPoly};
use unexp_core::scalars::{FieldSpec, Scalar};
use unexp_core::unexpect::adim;

fn cyclo(m: u32) -> Arc<FieldSpec> {
    FieldSpec::cyclotomic(m).unwrap()
}

fn scalar(field: &Arc<FieldSpec>, coeffs: &[i64], den: i64) -> Scalar {
    let c: Vec<BigInt> = (0..field.degree()).map(|i| BigInt::from(coeffs.get(i).copied().unwrap_or(0))).collect();
    Scalar::from_parts(field, c, BigInt::from(den)).unwrap()
}

fn elem() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-5i64..=5, 4), 1i64..=4)
}

fn ints(field: &Arc<FieldSpec>, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(field, x)).collect()
}

fn poly_from(field: &Arc<FieldSpec>, nvars: usize, deg: u32, coeffs: &[i64]) -> MultiPoly {
    let ms = MultiIndex::all_of_degree(nvars, deg);
    MultiPoly::from_terms(field, nvars, ms.into_iter().zip(coeffs.iter().map(|&c| Scalar::from_int(field, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in elem(), b in elem(), c in elem(), m in prop::sample::select(vec![3u32, 4, 5, 8])) {
        let f = cyclo(m);
        let (a, b, c) = (scalar(&f, &a.0, a.1), scalar(&f, &b.0, b.1), scalar(&f, &c.0, c.1));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert!((&b * &b.inverse().unwrap()).is_one());
        }
        prop_assert_eq!(a.canonical(), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_map(a in elem(), b in elem(), m in prop::sample::select(vec![3u32, 5, 7])) {
        let f = cyclo(m);
        let (a, b) = (scalar(&f, &a.0, a.1), scalar(&f, &b.0, b.1));
        prop_assert_eq!((&a * &b).conjugate(2), &a.conjugate(2) * &b.conjugate(2));
        prop_assert_eq!((&a + &b).conjugate(2), &a.conjugate(2) + &b.conjugate(2));
        prop_assert_eq!(Scalar::root(&f).conjugate(2), Scalar::root(&f).pow(2));
    }

    #[test]
    fn evaluation_is_multiplicative(f in prop::collection::vec(-4i64..=4, 10), g in prop::collection::vec(-4i64..=4, 6), p in prop::collection::vec(-3i64..=3, 3)) {
        let q = FieldSpec::rational();
        let (f, g) = (poly_from(&q, 3, 2, &f), poly_from(&q, 3, 1, &g));
        let p = ints(&q, &p);
        let lhs = f.mul(&g).evaluate(&p).unwrap();
        prop_assert_eq!(lhs, &f.evaluate(&p).unwrap() * &g.evaluate(&p).unwrap());
        prop_assert_eq!(f.add(&g.mul(&g)).evaluate(&p).unwrap(), &f.evaluate(&p).unwrap() + &g.evaluate(&p).unwrap().pow(2));
    }

    #[test]
    fn restriction_commutes_with_products(f in prop::collection::vec(-4i64..=4, 10), g in prop::collection::vec(-4i64..=4, 3), a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3)) {
        let q = FieldSpec::rational();
        let (f, g) = (poly_from(&q, 3, 2, &f), poly_from(&q, 3, 1, &g));
        let (a, b) = (ints(&q, &a), ints(&q, &b));
        let prod = f.mul(&g).restrict_line(&a, &b).unwrap();
        prop_assert_eq!(prod, f.restrict_line(&a, &b).unwrap().mul(&g.restrict_line(&a, &b).unwrap()));
        let (s, t) = (Scalar::from_int(&q, 2), Scalar::from_int(&q, -1));
        let pt: Vec<Scalar> = a.iter().zip(&b).map(|(x, y)| &(&s * x) + &(&t * y)).collect();
        prop_assert_eq!(f.restrict_line(&a, &b).unwrap().eval(&s, &t), f.evaluate(&pt).unwrap());
    }

    #[test]
    fn binary_form_has_at_most_degree_roots(c in prop::collection::vec(-3i64..=3, 1..6)) {
        let q = FieldSpec::rational();
        let form = BinaryForm::new(ints(&q, &c));
        let roots = (0..=2 * form.degree() as i64 + 1)
            .filter(|&i| form.eval(&Scalar::one(&q), &Scalar::from_int(&q, i)).is_zero())
            .count();
        if roots > form.degree() {
            prop_assert!(form.is_zero());
        }
    }

    #[test]
    fn dual_form_is_symmetric(p in prop::collection::vec(-5i64..=5, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let q = cyclo(3);
        let (p, x) = (ints(&q, &p), ints(&q, &x));
        prop_assert_eq!(dual_form(&p).evaluate(&x).unwrap(), dot(&p, &x));
        prop_assert_eq!(dual_form(&p).evaluate(&x).unwrap(), dual_form(&x).evaluate(&p).unwrap());
    }

    #[test]
    fn eta_is_linear(f in prop::collection::vec(-3i64..=3, 12), g in prop::collection::vec(-3i64..=3, 12), c in -4i64..=4) {
        let q = FieldSpec::rational();
        let alpha = vec![ints(&q, &[1, 2, 0, -1]), ints(&q, &[0, 1, 3, 1])];
        let k = 1;
        let fs: Vec<MultiPoly> = f.chunks(3).map(|w| MultiPoly::linear_form(&ints(&q, &[w[0], w[1], w[2], 0]))).collect();
        let gs: Vec<MultiPoly> = g.chunks(3).map(|w| MultiPoly::linear_form(&ints(&q, &[0, w[0], w[1], w[2]]))).collect();
        let c = Scalar::from_int(&q, c);
        let comb: Vec<MultiPoly> = fs.iter().zip(&gs).map(|(a, b)| a.scale(&c).add(b)).collect();
        let lhs = eta_transform(&comb, k, &alpha).unwrap();
        let rhs = eta_transform(&fs, k, &alpha).unwrap().scale(&c).add(&eta_transform(&gs, k, &alpha).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn e_alpha_vanishes_on_alpha_span(u in -4i64..=4, v in -4i64..=4) {
        let q = FieldSpec::rational();
        let alpha = vec![ints(&q, &[1, 2, 0, -1]), ints(&q, &[0, 1, 3, 1])];
        let x: Vec<Scalar> = alpha[0].iter().zip(&alpha[1]).map(|(a, b)| &a.scale_int(&BigInt::from(u)) + &b.scale_int(&BigInt::from(v))).collect();
        for form in e_alpha_forms(&alpha, 4).unwrap() {
            prop_assert!(form.evaluate(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn fit_inverts_sections(e in prop::collection::vec(0i64..=6, 1..6)) {
        let st = SplittingType::new(e);
        let top = *st.exponents().last().unwrap();
        let h: Vec<i64> = (0..=top + 2).map(|d| st.sections(d)).collect();
        prop_assert_eq!(SplittingType::fit(&h).unwrap(), st);
    }

    #[test]
    fn adim_matches_derivative_conditions(pts in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 2..7), seed in 0u64..50, d in 1u32..=3, extra in 0u32..=2) {
        let q = FieldSpec::rational();
        let points: Vec<Vec<Scalar>> = pts.iter().map(|p| ints(&q, p)).collect();
        let z = PointConfig::new(&q, 2, points.clone());
        prop_assume!(z.is_ok());
        let z = z.unwrap();
        let chart = LineChart::sample(&z, seed, 101);
        prop_assume!(chart.is_ok());
        let chart = chart.unwrap();
        let degree = d + extra;
        let (a, b) = (&chart.a, &chart.b);
        let apex = vec![
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ];
        let mons = MultiIndex::all_of_degree(3, degree);
        let mut rows: Vec<Vec<Scalar>> = points
            .iter()
            .map(|p| mons.iter().map(|m| m.eval_monomial(p)).collect())
            .collect();
        for o in 0..d {
            for alpha in MultiIndex::all_of_degree(3, o) {
                rows.push(
                    mons.iter()
                        .map(|m| MultiPoly::monomial(Scalar::one(&q), m.clone()).derive(&alpha).evaluate(&apex).unwrap())
                        .collect(),
                );
            }
        }
        let oracle = mons.len() - rank(&Matrix::from_rows(&q, mons.len(), rows));
        prop_assert_eq!(adim(&z, &chart, d, degree).unwrap(), oracle);
    }
}
