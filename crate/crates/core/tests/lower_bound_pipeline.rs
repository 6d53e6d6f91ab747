use unitlab::cover::{min_cover, verify_cover};
use unitlab::lattice::FinRankGroup;
use unitlab::lower_bound::*;
use unitlab::arith::rational::int;

#[test]
fn n4_instance_needs_four_subspaces() {
    let g = FinRankGroup::new(1, vec![vec![int(2)]], false).unwrap();
    let t = compute_t(4, DEFAULT_PATTERN_BUDGET).unwrap();
    let inst = generate_example(&g, &t, 3).unwrap();
    assert_eq!(inst.solutions.len(), 24);
    assert_eq!(max_points_per_subspace(&inst), 6);
    let explicit = explicit_n_cover(&inst);
    assert_eq!(verify_cover(&inst.solutions, &explicit), Ok(()));
    let r = min_cover(&inst.solutions, None).unwrap();
    assert_eq!(r.cover.size(), 4);
    assert!(r.proven_minimal);
}

#[test]
fn exhaustive_threshold_n4() {
    let t = compute_t(4, DEFAULT_PATTERN_BUDGET).unwrap();
    let r = verify_subset_threshold(&t, &SubsetMode::Exhaustive, 400_000).unwrap();
    assert_eq!(r.subsets_checked, 346_104);
    assert!(r.failures.is_empty());
}

mod props {
    use proptest::prelude::*;
    use unitlab::arith::rational::Rational;
    use unitlab::arith::RatMatrix;
    use unitlab::lower_bound::*;

    fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..=9, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into())), n)
    }

    fn tuple(n: usize) -> impl Strategy<Value = PermTuple> {
        let perms = permutations(n);
        prop::collection::vec(0..perms.len(), n)
            .prop_map(move |idx| PermTuple::new(idx.iter().map(|&i| perms[i].clone()).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn expansion_agrees_with_determinant(pt in tuple(3), p in point(3)) {
            let m = pt.matrix_at(&p);
            let d = RatMatrix::from_rows(3, &m).unwrap().det().unwrap();
            prop_assert_eq!(f_expand(&pt).eval(&p), d);
        }

        #[test]
        fn expansion_agrees_with_determinant_n4(pt in tuple(4), p in point(4)) {
            let m = pt.matrix_at(&p);
            prop_assert_eq!(f_expand(&pt).eval(&p), RatMatrix::from_rows(4, &m).unwrap().det().unwrap());
        }
    }

    #[test]
    fn t_is_invariant_under_column_relabeling() {
        for n in [3usize, 4] {
            let t = compute_t(n, DEFAULT_PATTERN_BUDGET).unwrap();
            let perms = permutations(n);
            for pi in &perms {
                for set in t.sets().iter().step_by(if n == 4 { 97 } else { 1 }) {
                    let moved: Vec<Vec<usize>> = set.iter().map(|&i| pi.iter().map(|&j| perms[i][j]).collect()).collect();
                    assert!(t.contains(&PermTuple::new(moved).unwrap()));
                }
            }
            // Zero sets stay zero too.
            let all = unitlab::cover::combinations(perms.len(), n).filter(|s| !t.contains_set(s)).take(50);
            for set in all {
                let moved: Vec<Vec<usize>> = set.iter().map(|&i| perms[1].iter().map(|&j| perms[i][j]).collect()).collect();
                assert!(!t.contains(&PermTuple::new(moved).unwrap()));
            }
        }
    }
}
