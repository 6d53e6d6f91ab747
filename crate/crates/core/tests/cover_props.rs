use num_traits::Zero;
use proptest::prelude::*;
use unitlab::arith::rational::{int, Rational};
use unitlab::cover::{greedy_cover, min_cover, verify_cover};

fn cross(p: &[i64], q: &[i64]) -> [i64; 3] {
    [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
}

fn proportional(p: &[i64], q: &[i64]) -> bool {
    if p.len() == 2 {
        p[0] * q[1] == p[1] * q[0]
    } else {
        cross(p, q) == [0, 0, 0]
    }
}

/// Minimum cover by brute force: lines through the origin in the plane are
/// direction classes; planes in space are chosen among normals p × q, with
/// one extra plane per direction class left over.
fn oracle(points: &[Vec<i64>]) -> usize {
    let mut classes: Vec<Vec<i64>> = Vec::new();
    for p in points {
        if !classes.iter().any(|c| proportional(c, p)) {
            classes.push(p.clone());
        }
    }
    if classes.len() <= 1 || points[0].len() == 2 {
        return classes.len();
    }
    let mut normals: Vec<[i64; 3]> = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let c = cross(&classes[i], &classes[j]);
            if !normals.iter().any(|m| cross(m, &c) == [0, 0, 0]) {
                normals.push(c);
            }
        }
    }
    let dot = |n: &[i64; 3], p: &[i64]| n[0] * p[0] + n[1] * p[1] + n[2] * p[2];
    (0u32..1 << normals.len())
        .map(|mask| {
            let chosen: Vec<&[i64; 3]> = (0..normals.len()).filter(|k| mask >> k & 1 == 1).map(|k| &normals[k]).collect();
            let left = classes.iter().filter(|p| !chosen.iter().any(|n| dot(n, p) == 0)).count();
            chosen.len() + left
        })
        .min()
        .unwrap()
}

fn points() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=3).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, n).prop_filter("nonzero", |p| p.iter().any(|&x| x != 0)), 1..=6)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimum_cover_matches_brute_force(pts in points()) {
        let q: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect();
        let r = min_cover(&q, None).unwrap();
        prop_assert_eq!(r.cover.size(), oracle(&pts));
        prop_assert_eq!(verify_cover(&q, &r.cover.hyperplanes), Ok(()));
        prop_assert!(r.cover.hyperplanes.iter().all(|h| h.normal().iter().any(|c| !c.is_zero())));
        for (i, &h) in r.cover.assignment.iter().enumerate() {
            prop_assert!(r.cover.hyperplanes[h].contains(&q[i]));
        }
        let g = greedy_cover(&q).unwrap();
        prop_assert!(g.size() >= r.cover.size());
        prop_assert_eq!(verify_cover(&q, &g.hyperplanes), Ok(()));
        prop_assert!(r.lower_bound <= r.cover.size());
    }

    #[test]
    fn limit_below_optimum_is_refused(pts in points()) {
        let q: Vec<Vec<Rational>> = pts.iter().map(|p| p.iter().map(|&x| int(x)).collect()).collect();
        let m = min_cover(&q, None).unwrap().cover.size();
        prop_assert!(min_cover(&q, Some(m - 1)).is_err());
        prop_assert_eq!(min_cover(&q, Some(m)).unwrap().cover.size(), m);
    }
}
