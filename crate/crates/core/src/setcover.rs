//! Exact minimum set cover by iterative-deepening branch-and-bound, plus the
//! weighted variant used by the Roman solvers (cost-2 "place a 2 here"
//! candidates against cost-1 "label this element 1" fallbacks).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)] }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn union_with(&mut self, other: &BitSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// |other \ self|
    fn missing_from(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(w, o)| (o & !w).count_ones() as usize)
            .sum()
    }

    fn covers(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(w, o)| o & !w == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetCoverOutcome {
    /// Sorted ids of a minimum-cardinality covering sub-collection.
    Optimal(Vec<usize>),
    /// This element has no covering candidate.
    Infeasible { element: usize },
    BudgetExceeded { budget: usize },
}

/// Minimum-cardinality sub-collection of `candidates` covering `universe`.
///
/// Branches on the uncovered element with the fewest coverers; candidates are
/// tried by coverage size descending, ties by lowest id. Deterministic.
pub fn min_set_cover(
    universe: &[usize],
    candidates: &[(usize, Vec<usize>)],
    budget: Option<usize>,
) -> SetCoverOutcome {
    // Dense re-index of universe elements.
    let mut elems: Vec<usize> = universe.to_vec();
    elems.sort_unstable();
    elems.dedup();
    let index_of = |e: usize| elems.binary_search(&e).ok();
    let u_count = elems.len();
    if u_count == 0 {
        return SetCoverOutcome::Optimal(Vec::new());
    }

    // Candidate order: coverage size descending, then id ascending.
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    let cover_size = |c: &(usize, Vec<usize>)| {
        c.1.iter().filter(|&&e| index_of(e).is_some()).count()
    };
    order.sort_by(|&a, &b| {
        cover_size(&candidates[b])
            .cmp(&cover_size(&candidates[a]))
            .then(candidates[a].0.cmp(&candidates[b].0))
    });

    let masks: Vec<BitSet> = order
        .iter()
        .map(|&c| {
            let mut m = BitSet::new(u_count);
            for &e in &candidates[c].1 {
                if let Some(i) = index_of(e) {
                    m.insert(i);
                }
            }
            m
        })
        .collect();

    let mut coverers: Vec<Vec<usize>> = vec![Vec::new(); u_count];
    for (pos, m) in masks.iter().enumerate() {
        for (i, cov) in coverers.iter_mut().enumerate() {
            if m.contains(i) {
                cov.push(pos);
            }
        }
    }
    if let Some(i) = coverers.iter().position(Vec::is_empty) {
        return SetCoverOutcome::Infeasible { element: elems[i] };
    }

    let mut full = BitSet::new(u_count);
    for i in 0..u_count {
        full.insert(i);
    }

    // Greedy cover for an upper bound on the optimum.
    let ub = {
        let mut covered = BitSet::new(u_count);
        let mut picks = 0usize;
        while !covered.covers(&full) {
            let best = (0..masks.len())
                .max_by(|&a, &b| covered.missing_from(&masks[a]).cmp(&covered.missing_from(&masks[b])).then(b.cmp(&a)))
                .unwrap();
            covered.union_with(&masks[best]);
            picks += 1;
        }
        picks
    };
    let max_static = masks.iter().map(BitSet::count).max().unwrap_or(0);
    let lb = u_count.div_ceil(max_static.max(1));

    struct Ctx<'a> {
        masks: &'a [BitSet],
        coverers: &'a [Vec<usize>],
        full: &'a BitSet,
        chosen: Vec<usize>,
        found: Option<Vec<usize>>,
    }

    fn dfs(ctx: &mut Ctx, covered: &BitSet, depth_left: usize) -> bool {
        if covered.covers(ctx.full) {
            ctx.found = Some(ctx.chosen.clone());
            return true;
        }
        if depth_left == 0 {
            return false;
        }
        let uncovered = covered.missing_from(ctx.full);
        let best_gain = ctx.masks.iter().map(|m| covered.missing_from(m)).max().unwrap_or(0);
        if best_gain * depth_left < uncovered {
            return false;
        }
        // Uncovered element with fewest coverers, ties by lowest index.
        let elem = (0..ctx.coverers.len())
            .filter(|&i| !covered.contains(i))
            .min_by_key(|&i| ctx.coverers[i].len())
            .unwrap();
        let options = ctx.coverers[elem].clone();
        for pos in options {
            if ctx.chosen.contains(&pos) {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(&ctx.masks[pos]);
            ctx.chosen.push(pos);
            if dfs(ctx, &next, depth_left - 1) {
                return true;
            }
            ctx.chosen.pop();
        }
        false
    }

    for k in lb..=ub {
        if let Some(b) = budget {
            if k > b {
                return SetCoverOutcome::BudgetExceeded { budget: b };
            }
        }
        let mut ctx = Ctx { masks: &masks, coverers: &coverers, full: &full, chosen: Vec::new(), found: None };
        let covered = BitSet::new(u_count);
        if dfs(&mut ctx, &covered, k) {
            let mut ids: Vec<usize> =
                ctx.found.unwrap().into_iter().map(|pos| candidates[order[pos]].0).collect();
            ids.sort_unstable();
            return SetCoverOutcome::Optimal(ids);
        }
    }
    unreachable!("greedy upper bound guarantees a cover within ub")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RomanCoverOutcome {
    /// (twos, ones): vertices labeled 2 and vertices labeled 1.
    Optimal(Vec<usize>, Vec<usize>),
    BudgetExceeded { budget: usize },
}

/// Minimum of 2|S| + |{v not in S and not covered by S}| over S, where placing
/// a 2 at u covers `coverset[u]`. Always feasible (everything can be labeled 1).
///
/// `coverset[u]` must contain u itself.
pub(crate) fn min_roman_cover(
    n: usize,
    coverset: &[Vec<usize>],
    budget: Option<usize>,
) -> RomanCoverOutcome {
    if n == 0 {
        return RomanCoverOutcome::Optimal(Vec::new(), Vec::new());
    }
    // Candidate order for the cost-2 moves: coverage descending, id ascending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| coverset[b].len().cmp(&coverset[a].len()).then(a.cmp(&b)));
    let masks: Vec<BitSet> = order
        .iter()
        .map(|&u| {
            let mut m = BitSet::new(n);
            for &v in &coverset[u] {
                m.insert(v);
            }
            m
        })
        .collect();
    let mut coverers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (pos, m) in masks.iter().enumerate() {
        for (v, cov) in coverers.iter_mut().enumerate() {
            if m.contains(v) {
                cov.push(pos);
            }
        }
    }
    let mut full = BitSet::new(n);
    for v in 0..n {
        full.insert(v);
    }

    struct Ctx<'a> {
        masks: &'a [BitSet],
        coverers: &'a [Vec<usize>],
        full: &'a BitSet,
        twos: Vec<usize>,
        ones: Vec<usize>,
        found: Option<(Vec<usize>, Vec<usize>)>,
    }

    fn dfs(ctx: &mut Ctx, covered: &BitSet, weight_left: usize) -> bool {
        if covered.covers(ctx.full) {
            ctx.found = Some((ctx.twos.clone(), ctx.ones.clone()));
            return true;
        }
        let uncovered = covered.missing_from(ctx.full);
        let best_gain = ctx.masks.iter().map(|m| covered.missing_from(m)).max().unwrap_or(0);
        // Each cost unit covers at most max(best_gain/2, 1) elements.
        let lb = (2 * uncovered).div_ceil(best_gain.max(2));
        if lb > weight_left {
            return false;
        }
        let elem = (0..ctx.coverers.len())
            .filter(|&v| !covered.contains(v))
            .min_by_key(|&v| ctx.coverers[v].len())
            .unwrap();
        if weight_left >= 2 {
            let options = ctx.coverers[elem].clone();
            for pos in options {
                if ctx.twos.contains(&pos) {
                    continue;
                }
                let mut next = covered.clone();
                next.union_with(&ctx.masks[pos]);
                ctx.twos.push(pos);
                if dfs(ctx, &next, weight_left - 2) {
                    return true;
                }
                ctx.twos.pop();
            }
        }
        if weight_left >= 1 {
            let mut next = covered.clone();
            next.insert(elem);
            ctx.ones.push(elem);
            if dfs(ctx, &next, weight_left - 1) {
                return true;
            }
            ctx.ones.pop();
        }
        false
    }

    let max_static = masks.iter().map(BitSet::count).max().unwrap_or(0);
    let lb = (2 * n).div_ceil(max_static.max(2));
    let ub = n; // label everything 1
    for w in lb..=ub {
        if let Some(b) = budget {
            if w > b {
                return RomanCoverOutcome::BudgetExceeded { budget: b };
            }
        }
        let mut ctx = Ctx {
            masks: &masks,
            coverers: &coverers,
            full: &full,
            twos: Vec::new(),
            ones: Vec::new(),
            found: None,
        };
        let covered = BitSet::new(n);
        if dfs(&mut ctx, &covered, w) {
            let (twos, ones) = ctx.found.unwrap();
            let mut twos: Vec<usize> = twos.into_iter().map(|pos| order[pos]).collect();
            twos.sort_unstable();
            let mut ones = ones;
            ones.sort_unstable();
            return RomanCoverOutcome::Optimal(twos, ones);
        }
    }
    unreachable!("labeling every vertex 1 is always a cover")
}
