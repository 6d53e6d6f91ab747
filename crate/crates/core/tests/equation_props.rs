use std::collections::BTreeSet;

use num_traits::One;
use proptest::prelude::*;
use unitlab::arith::rank_of;
use unitlab::arith::rational::{format_rational, int, Rational};
use unitlab::equation::{degenerate_subsum_subspaces, enumerate_solutions, solution_matrix, Equation};
use unitlab::lattice::{CoeffTuple, FinRankGroup, Witness};
use unitlab::random::random_equation;

/// Every witness in the box, through the group's own element map.
fn naive(eq: &Equation, bound: i64) -> BTreeSet<Vec<Rational>> {
    let g = eq.group();
    let r = g.generator_count();
    let n = g.dimension();
    let mut out = BTreeSet::new();
    let mut z = vec![-bound; r];
    loop {
        for m in 0..(if g.sign_torsion() { 1u32 << n } else { 1 }) {
            let flip = (0..n).map(|i| m >> i & 1 == 1).collect();
            let x = g.element(&Witness { z: z.clone(), flip });
            if eq.lhs(&x).is_one() {
                out.insert(x);
            }
        }
        let Some(k) = (0..r).rev().find(|&k| z[k] < bound) else { break };
        z[k] += 1;
        for zj in z.iter_mut().skip(k + 1) {
            *zj = -bound;
        }
    }
    out
}

#[test]
fn two_term_example_matches_naive_scan() {
    let g = FinRankGroup::power(&FinRankGroup::new(1, vec![vec![int(2)]], true).unwrap(), 2).unwrap();
    let eq = Equation::new(CoeffTuple::new(vec![int(1), int(1)]).unwrap(), g).unwrap();
    let ss = enumerate_solutions(&eq, 6).unwrap();
    let got: BTreeSet<Vec<Rational>> = ss.solutions.iter().map(|s| s.x.clone()).collect();
    assert_eq!(got, naive(&eq, 6));
    let shown: BTreeSet<Vec<String>> = got.iter().map(|x| x.iter().map(format_rational).collect()).collect();
    let expected: BTreeSet<Vec<String>> =
        [["1/2", "1/2"], ["2", "-1"], ["-1", "2"]].iter().map(|p| p.iter().map(|s| s.to_string()).collect()).collect();
    assert_eq!(shown, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enumeration_equals_naive_scan(seed in any::<u64>(), bound in 1u32..=3) {
        let eq = random_equation(seed, 3, 2);
        let ss = enumerate_solutions(&eq, bound).unwrap();
        let got: BTreeSet<Vec<Rational>> = ss.solutions.iter().map(|s| s.x.clone()).collect();
        prop_assert_eq!(got.len(), ss.solutions.len());
        prop_assert_eq!(got, naive(&eq, bound as i64));
    }

    #[test]
    fn solution_matrix_rank_is_at_most_n(seed in any::<u64>(), bound in 1u32..=3) {
        let eq = random_equation(seed, 4, 3);
        let ss = enumerate_solutions(&eq, bound).unwrap();
        prop_assert!(!ss.is_empty());
        prop_assert!(rank_of(&solution_matrix(&ss)) <= eq.n());
    }

    #[test]
    fn degenerate_solutions_lie_on_subsum_hyperplanes(seed in any::<u64>(), bound in 1u32..=3) {
        let eq = random_equation(seed, 4, 3);
        let ss = enumerate_solutions(&eq, bound).unwrap();
        let hs = degenerate_subsum_subspaces(&eq);
        prop_assert_eq!(hs.len(), (1usize << eq.n()) - eq.n() - 2);
        for s in ss.degenerate() {
            prop_assert!(hs.iter().any(|h| h.contains(&s.x)));
        }
    }

    /// With b = a and b₀ = 1, a sign flip on a non-degenerate solution would
    /// force a vanishing subsum, so Σ aⱼεⱼxⱼ ≠ 1 whenever some εⱼ = −1.
    #[test]
    fn sign_flips_break_non_degenerate_solutions(seed in any::<u64>()) {
        let eq = random_equation(seed, 4, 3);
        let ss = enumerate_solutions(&eq, 2).unwrap();
        let a = eq.coefficients().as_slice();
        for s in ss.solutions.iter().filter(|s| !s.is_degenerate()) {
            for m in 1u32..1 << eq.n() {
                let flipped: Rational =
                    a.iter().zip(&s.x).enumerate().map(|(j, (aj, x))| if m >> j & 1 == 1 { -(aj * x) } else { aj * x }).sum();
                prop_assert!(!flipped.is_one());
            }
        }
    }
}
