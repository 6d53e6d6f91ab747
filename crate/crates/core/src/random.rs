//! Seeded random equations for property checks over small groups.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::rational::{int, pow_i64, Rational};
use crate::equation::Equation;
use crate::lattice::{CoeffTuple, FinRankGroup, Witness};

const PRIMES: [i64; 3] = [2, 3, 5];
const COEFFS: [(i64, i64); 5] = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3)];

/// An equation in `2 ≤ n ≤ max_n` unknowns over a group with
/// `1 ≤ r ≤ max_r` generators built from 2, 3, 5. The coefficients are
/// scaled so that a group element with exponents in `[−1, 1]` solves it.
pub fn random_equation(seed: u64, max_n: usize, max_r: usize) -> Equation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_n.max(2));
    let r = rng.gen_range(1..=max_r.max(1));
    let torsion = rng.gen_bool(0.5);
    let generators: Vec<Vec<Rational>> = (0..r)
        .map(|_| {
            (0..n)
                .map(|_| pow_i64(&int(PRIMES[rng.gen_range(0..PRIMES.len())]), rng.gen_range(-1..=2)))
                .collect()
        })
        .collect();
    let group = FinRankGroup::new(n, generators, torsion).expect("generators are nonzero rationals");
    loop {
        let w = Witness {
            z: (0..r).map(|_| rng.gen_range(-1..=1)).collect(),
            flip: (0..n).map(|_| torsion && rng.gen_bool(0.5)).collect(),
        };
        let x = group.element(&w);
        let a: Vec<Rational> = (0..n)
            .map(|_| {
                let (p, q) = COEFFS[rng.gen_range(0..COEFFS.len())];
                let v = Rational::new(p.into(), q.into());
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            })
            .collect();
        let s: Rational = a.iter().zip(&x).map(|(p, q)| p * q).sum();
        if s.is_zero() {
            continue;
        }
        let a: Vec<Rational> = a.iter().map(|v| v / &s).collect();
        debug_assert!(a.iter().zip(&x).map(|(p, q)| p * q).sum::<Rational>().is_one());
        return Equation::new(CoeffTuple::new(a).expect("nonzero"), group).expect("dimensions agree");
    }
}
