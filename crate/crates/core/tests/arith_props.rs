use num_traits::Zero;
use proptest::prelude::*;
use unitlab::arith::poly_matrix::eval_matrix;
use unitlab::arith::rational::{format_rational, parse_rational, Rational};
use unitlab::arith::{kernel_basis, laurent_det, poly_gcd, rank_of, LaurentPoly, RatMatrix, UniPoly};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(rational(), cols), rows)
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(UniPoly::new)
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    (0..a.len())
        .map(|i| (0..b[0].len()).map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn det(rows: &[Vec<Rational>]) -> Rational {
    RatMatrix::from_rows(rows.len(), rows).unwrap().det().unwrap()
}

proptest! {
    #[test]
    fn rational_strings_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn determinant_is_multiplicative(a in matrix(3, 3), b in matrix(3, 3)) {
        prop_assert_eq!(det(&mat_mul(&a, &b)), det(&a) * det(&b));
    }

    #[test]
    fn kernel_matches_rank(m in matrix(3, 5)) {
        let mm = RatMatrix::from_rows(5, &m).unwrap();
        let k = kernel_basis(&mm);
        prop_assert_eq!(k.len(), 5 - rank_of(&mm));
        for v in &k {
            prop_assert!(mm.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn division_with_remainder(p in poly(), d in poly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = p.div_rem(&d);
        prop_assert_eq!(&(&q * &d) + &r, p);
        prop_assert!(r.is_zero() || r.degree() < d.degree());
    }

    #[test]
    fn gcd_divides_both(p in poly(), q in poly(), f in poly()) {
        let (p, q) = (&p * &f, &q * &f);
        let g = poly_gcd(&p, &q);
        prop_assume!(!g.is_zero());
        prop_assert!(p.div_rem(&g).1.is_zero());
        prop_assert!(q.div_rem(&g).1.is_zero());
        prop_assert!(f.is_zero() || g.degree() >= f.degree());
    }

    #[test]
    fn laurent_determinant_commutes_with_evaluation(
        coeffs in prop::collection::vec(rational(), 9),
        exps in prop::collection::vec(-2i64..=2, 9),
        at in rational(),
    ) {
        prop_assume!(!at.is_zero());
        let m: Vec<Vec<LaurentPoly>> = (0..3)
            .map(|i| (0..3).map(|j| LaurentPoly::monomial(coeffs[3 * i + j].clone(), exps[3 * i + j])).collect())
            .collect();
        prop_assert_eq!(laurent_det(&m).eval(&at), det(&eval_matrix(&m, &at)));
    }
}
