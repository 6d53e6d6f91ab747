//! Exact minimum cover by branch and bound over candidate flats.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use super::{assign, flats, Cover, CoverError, Directions, Hyperplane, DEFAULT_NODE_CAP};
use crate::arith::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub node_cap: u64,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions { node_cap: DEFAULT_NODE_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub cover: Cover,
    pub proven_minimal: bool,
    pub lower_bound: usize,
    pub greedy_size: usize,
    pub nodes: u64,
}

struct Instance {
    /// Candidate masks in member-list order.
    masks: Vec<u128>,
    planes: Vec<Hyperplane>,
    universe: u128,
    /// For each direction, the candidates containing it.
    containing: Vec<Vec<usize>>,
    /// `suffix_union[j]` = union of masks `j..`.
    suffix_union: Vec<u128>,
}

impl Instance {
    fn new(d: &Directions) -> Self {
        let fl = flats(d);
        let masks: Vec<u128> = fl.iter().map(|f| f.0).collect();
        let planes = fl.into_iter().map(|f| f.2).collect();
        let k = d.unique.len();
        let universe = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        let containing = (0..k).map(|i| (0..masks.len()).filter(|&j| masks[j] >> i & 1 == 1).collect()).collect();
        let mut suffix_union = vec![0u128; masks.len() + 1];
        for j in (0..masks.len()).rev() {
            suffix_union[j] = suffix_union[j + 1] | masks[j];
        }
        Instance { masks, planes, universe, containing, suffix_union }
    }

    fn bound_from(&self, uncovered: u128, start: usize) -> usize {
        if uncovered == 0 {
            return 0;
        }
        let best = self.masks[start..].iter().map(|m| (m & uncovered).count_ones()).max().unwrap_or(0);
        if best == 0 {
            return usize::MAX / 2;
        }
        (uncovered.count_ones()).div_ceil(best) as usize
    }

    fn lower_bound(&self, uncovered: u128) -> usize {
        self.bound_from(uncovered, 0)
    }

    /// Uncovered direction with the fewest candidates, and its branches in
    /// descending order of new coverage.
    fn branches(&self, uncovered: u128) -> Vec<usize> {
        let p = (0..128)
            .filter(|&i| uncovered >> i & 1 == 1)
            .min_by_key(|&i| (self.containing[i].len(), i))
            .expect("uncovered is nonempty");
        let mut b = self.containing[p].clone();
        b.sort_by_key(|&j| (std::cmp::Reverse((self.masks[j] & uncovered).count_ones()), j));
        b
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.universe;
        let mut chosen = Vec::new();
        while uncovered != 0 {
            let j = (0..self.masks.len())
                .max_by_key(|&j| ((self.masks[j] & uncovered).count_ones(), std::cmp::Reverse(j)))
                .expect("every direction lies on some flat");
            chosen.push(j);
            uncovered &= !self.masks[j];
        }
        chosen
    }
}

struct Shared<'a> {
    inst: &'a Instance,
    best: AtomicUsize,
    nodes: AtomicU64,
    cap: u64,
}

impl Shared<'_> {
    fn tick(&self) -> Result<(), ()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.cap {
            Err(())
        } else {
            Ok(())
        }
    }

    fn dfs(&self, uncovered: u128, depth: usize) -> Result<(), ()> {
        if uncovered == 0 {
            self.best.fetch_min(depth, Ordering::Relaxed);
            return Ok(());
        }
        self.tick()?;
        if depth + self.inst.lower_bound(uncovered) >= self.best.load(Ordering::Relaxed) {
            return Ok(());
        }
        for j in self.inst.branches(uncovered) {
            self.dfs(uncovered & !self.inst.masks[j], depth + 1)?;
        }
        Ok(())
    }

    /// Lexicographically smallest index set of `remaining` candidates
    /// (all from `start..`) covering `uncovered`.
    fn lex_first(&self, uncovered: u128, start: usize, remaining: usize, chosen: &mut Vec<usize>) -> Result<bool, ()> {
        if uncovered == 0 {
            return Ok(true);
        }
        if remaining == 0 || self.inst.suffix_union[start] & uncovered != uncovered {
            return Ok(false);
        }
        self.tick()?;
        if self.inst.bound_from(uncovered, start) > remaining {
            return Ok(false);
        }
        for j in start..self.inst.masks.len() {
            let m = self.inst.masks[j];
            if m & uncovered == 0 {
                continue;
            }
            chosen.push(j);
            if self.lex_first(uncovered & !m, j + 1, remaining - 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

pub fn min_cover(points: &[Vec<Rational>], limit: Option<usize>) -> Result<CoverResult, CoverError> {
    min_cover_with(points, limit, CoverOptions::default())
}

/// Minimum number of proper subspaces covering `points`, with the
/// lexicographically first optimal choice of candidate flats. With a
/// `limit`, only covers of at most that size are sought.
pub fn min_cover_with(
    points: &[Vec<Rational>],
    limit: Option<usize>,
    options: CoverOptions,
) -> Result<CoverResult, CoverError> {
    let d = Directions::new(points)?;
    let inst = Instance::new(&d);
    let greedy = inst.greedy();
    let root_bound = inst.lower_bound(inst.universe);
    let ceiling = match limit {
        Some(l) if l < greedy.len() => l + 1,
        _ => greedy.len(),
    };
    let shared = Shared { inst: &inst, best: AtomicUsize::new(ceiling), nodes: AtomicU64::new(0), cap: options.node_cap };
    let budget_error = |shared: &Shared| CoverError::BudgetExceeded {
        nodes: shared.nodes.load(Ordering::Relaxed),
        cap: options.node_cap,
        best: shared.best.load(Ordering::Relaxed).min(greedy.len()),
        lower_bound: root_bound,
    };

    if inst.universe != 0 && root_bound < ceiling {
        shared.tick().map_err(|_| budget_error(&shared))?;
        let branches = inst.branches(inst.universe);
        branches
            .par_iter()
            .map(|&j| shared.dfs(inst.universe & !inst.masks[j], 1))
            .collect::<Result<Vec<()>, ()>>()
            .map_err(|_| budget_error(&shared))?;
    }
    let best = shared.best.load(Ordering::Relaxed);
    if let Some(l) = limit {
        if best > l {
            return Err(CoverError::LimitExceeded { limit: l, lower_bound: l + 1 });
        }
    }

    let mut chosen = Vec::new();
    let found = shared.lex_first(inst.universe, 0, best, &mut chosen).map_err(|_| budget_error(&shared))?;
    assert!(found, "a cover of the optimal size exists");
    let hyperplanes = chosen.iter().map(|&j| inst.planes[j].clone()).collect();
    Ok(CoverResult {
        cover: assign(points, hyperplanes),
        proven_minimal: true,
        lower_bound: best,
        greedy_size: greedy.len(),
        nodes: shared.nodes.load(Ordering::Relaxed),
    })
}

/// Repeatedly takes the flat covering the most uncovered points, ties to
/// the smallest member list.
pub fn greedy_cover(points: &[Vec<Rational>]) -> Result<Cover, CoverError> {
    let d = Directions::new(points)?;
    let inst = Instance::new(&d);
    let hyperplanes = inst.greedy().into_iter().map(|j| inst.planes[j].clone()).collect();
    Ok(assign(points, hyperplanes))
}
