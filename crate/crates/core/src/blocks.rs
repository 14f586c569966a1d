//! Block-level reduction of the semigroup.
//!
//! A generator is any nonnegative point whose block sums `s` satisfy
//! `s_i <= a_i` and `|s| >= 2`, and every way of spreading a block sum over
//! the coordinates of that block is allowed. Hence a point `x` belongs to the
//! semigroup iff `x >= 0` and its block-sum vector `w` lies in the semigroup
//! `W` of `N^k` generated by `{s : s <= a, |s| >= 2}`.
//!
//! `W` has a closed form: `w ∈ W` iff some `m` satisfies `w_l <= m·a_l` for
//! all `l` and `2m <= |w|`, i.e. `max_l ceil(w_l / a_l) <= floor(|w| / 2)`.
//! (Necessity: a sum of `m` generators has `w_l <= m·a_l` and `|w| >= 2m`.
//! Sufficiency: deal the `|w|` units round-robin into `m` parts, block by
//! block; each part receives at most `ceil(w_l/m) <= a_l` units of block `l`
//! and at least `floor(|w|/m) >= 2` units in total.)
//!
//! Lattice membership, the cone inequalities and the facet-semigroup tests
//! are likewise functions of per-block data, so window scans run over
//! [`BlockPart`] profiles instead of individual points.

use std::ops::ControlFlow;

/// Whether the block-sum vector `w` lies in the block semigroup for degrees `a`.
pub fn admissible(w: &[i64], a: &[i64]) -> bool {
    if w.iter().any(|&x| x < 0) {
        return false;
    }
    let total: i64 = w.iter().sum();
    if total == 0 {
        return true;
    }
    let need = w.iter().zip(a).map(|(&x, &cap)| (x + cap - 1) / cap).max().unwrap_or(0);
    need <= total / 2
}

/// Split an admissible block-sum vector into block generators (round-robin
/// dealing into the smallest feasible number of parts).
pub fn split_admissible(w: &[i64], a: &[i64]) -> Option<Vec<Vec<i64>>> {
    if !admissible(w, a) {
        return None;
    }
    let total: i64 = w.iter().sum();
    if total == 0 {
        return Some(Vec::new());
    }
    let parts = w.iter().zip(a).map(|(&x, &cap)| (x + cap - 1) / cap).max().unwrap_or(0).max(1) as usize;
    let mut out = vec![vec![0i64; w.len()]; parts];
    let mut next = 0usize;
    for (l, &x) in w.iter().enumerate() {
        for _ in 0..x {
            out[next][l] += 1;
            next = (next + 1) % parts;
        }
    }
    Some(out)
}

/// All block generators `{s : 0 <= s <= a, |s| >= 2}`, by decreasing sum.
pub fn block_generators(a: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &cap in a {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..=cap).map(move |v| {
                    let mut s = base.clone();
                    s.push(v);
                    s
                })
            })
            .collect();
    }
    out.retain(|s| s.iter().sum::<i64>() >= 2);
    out.sort_by(|x, y| y.iter().sum::<i64>().cmp(&x.iter().sum::<i64>()).then_with(|| y.cmp(x)));
    out
}

/// The block-level image of the elements of the semigroup lying on a facet.
///
/// `step` is the sum of the block-level face generators; since the face
/// semigroup is generated by them, any face element can be dominated by a
/// multiple of `step` plus an element of the whole semigroup, which is what
/// makes the single-direction test in [`BlockFace::min_multiplier`] exact up
/// to the multiplier bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFace {
    pub step: Vec<i64>,
}

impl BlockFace {
    pub fn from_generators<'a>(k: usize, gens: impl IntoIterator<Item = &'a Vec<i64>>) -> Self {
        let mut step = vec![0i64; k];
        for g in gens {
            for (s, x) in step.iter_mut().zip(g) {
                *s += x;
            }
        }
        BlockFace { step }
    }

    pub fn is_zero(&self) -> bool {
        self.step.iter().all(|&x| x == 0)
    }

    /// Smallest `m <= bound` such that a face element with block sums
    /// `m·step` can absorb the negative part (block sums `neg`) of a point with
    /// block sums `w` into the semigroup; `Some(0)` when the point is already
    /// a member (which requires `neg = 0`).
    ///
    /// Success is monotone in `m` (adding `step`, itself a semigroup element,
    /// preserves membership), so testing `bound` and bisecting is complete.
    pub fn min_multiplier(&self, w: &[i64], neg: &[i64], a: &[i64], bound: u64) -> Option<u64> {
        if neg.iter().all(|&d| d == 0) && admissible(w, a) {
            return Some(0);
        }
        if self.is_zero() || bound == 0 || !self.works_at(w, neg, a, bound) {
            return None;
        }
        let (mut lo, mut hi) = (1u64, bound);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.works_at(w, neg, a, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// Whether `m·step` covers `neg` and `w + m·step` is admissible.
    fn works_at(&self, w: &[i64], neg: &[i64], a: &[i64], m: u64) -> bool {
        let m = m as i128;
        let mut total = 0i128;
        let mut need = 0i128;
        for (((&s, &d), &x), &cap) in self.step.iter().zip(neg).zip(w).zip(a) {
            let (s, x, cap) = (s as i128, x as i128, cap as i128);
            if m * s < d as i128 {
                return false;
            }
            let shifted = x + m * s;
            if shifted < 0 {
                return false;
            }
            total += shifted;
            need = need.max((shifted + cap - 1) / cap);
        }
        total == 0 || need <= total / 2
    }

    /// A multiplier at which the test is decisive, or `None` when it fails
    /// for every multiplier.
    ///
    /// Past the coverage threshold `m·step >= neg`, each admissibility slack
    /// `floor(|w + m·step| / 2) − ceil((w_l + m·step_l) / a_l)` either grows
    /// linearly (slope `|step|·a_l − 2·step_l > 0`), decreases linearly
    /// (negative slope: the test eventually fails, hence always fails by
    /// monotonicity), or is periodic in `m` (zero slope: a periodic monotone
    /// predicate is constant). So a single evaluation at a multiplier where
    /// every growing slack is already nonnegative decides the question.
    fn decisive_multiplier(&self, w: &[i64], neg: &[i64], a: &[i64]) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut threshold: i128 = 1;
        for (&s, &d) in self.step.iter().zip(neg) {
            if d > 0 {
                if s == 0 {
                    return None;
                }
                threshold = threshold.max((d as i128 + s as i128 - 1) / s as i128);
            }
        }
        let step_total: i128 = self.step.iter().map(|&s| s as i128).sum();
        let total: i128 = w.iter().map(|&x| x as i128).sum();
        for ((&s, &x), &cap) in self.step.iter().zip(w).zip(a) {
            let (s, x, cap) = (s as i128, x as i128, cap as i128);
            let slope = step_total * cap - 2 * s;
            if slope < 0 {
                return None;
            }
            if slope > 0 {
                let need = 2 * (x + cap - 1) - cap * (total - 1);
                if need > 0 {
                    threshold = threshold.max((need + slope - 1) / slope);
                }
            }
        }
        u64::try_from(threshold).ok()
    }

    /// Whether some multiplier works (exact, no bound).
    pub fn accepts(&self, w: &[i64], neg: &[i64], a: &[i64]) -> bool {
        (neg.iter().all(|&d| d == 0) && admissible(w, a))
            || self.decisive_multiplier(w, neg, a).is_some_and(|m| self.works_at(w, neg, a, m))
    }

    /// Smallest multiplier that works, with no upper bound, or `None` when
    /// no multiplier does.
    pub fn min_multiplier_exact(&self, w: &[i64], neg: &[i64], a: &[i64]) -> Option<u64> {
        if neg.iter().all(|&d| d == 0) && admissible(w, a) {
            return Some(0);
        }
        let bound = self.decisive_multiplier(w, neg, a)?;
        self.min_multiplier(w, neg, a, bound)
    }
}

/// Per-block profile of a point: how many coordinates are negative and the
/// sums of the negative and positive parts. Points with equal profiles (up
/// to permuting coordinates inside blocks) behave identically for every
/// semigroup, lattice and facet test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPart {
    pub neg_count: usize,
    pub neg_sum: i64,
    pub pos_sum: i64,
}

impl BlockPart {
    pub fn block_sum(&self) -> i64 {
        self.pos_sum - self.neg_sum
    }

    /// ℓ1 norm of any point with this profile.
    pub fn size(&self) -> i64 {
        self.pos_sum + self.neg_sum
    }

    /// Range `(lo, hi)` of the largest coordinate of the block over all
    /// points with this profile in the box of the given radius.
    pub fn max_coordinate_range(&self, b: usize, radius: i64) -> (i64, i64) {
        let free = b - self.neg_count;
        if free > 0 {
            let lo = (self.pos_sum + free as i64 - 1) / free as i64;
            (lo, self.pos_sum.min(radius))
        } else {
            let lo = -(self.neg_sum / b as i64);
            let hi = -(1i64.max(self.neg_sum - radius * (b as i64 - 1)));
            (lo, hi)
        }
    }
}

/// All feasible profiles of a block of `b` coordinates in the box of the
/// given radius (nonnegative points only when `orthant`).
pub fn block_parts(b: usize, radius: i64, orthant: bool) -> Vec<BlockPart> {
    let mut out = Vec::new();
    let max_neg = if orthant { 0 } else { b };
    for neg_count in 0..=max_neg {
        let free = (b - neg_count) as i64;
        let (dlo, dhi) = (neg_count as i64, radius * neg_count as i64);
        for neg_sum in dlo..=dhi {
            for pos_sum in 0..=radius * free {
                out.push(BlockPart { neg_count, neg_sum, pos_sum });
            }
        }
    }
    out
}

/// Visit every combination of one profile per block, in order of increasing
/// total ℓ1 size; stops early when the visitor breaks.
pub fn for_each_class<F>(parts: &[Vec<BlockPart>], mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[BlockPart]) -> ControlFlow<()>,
{
    let mut by_size: Vec<Vec<Vec<BlockPart>>> = Vec::with_capacity(parts.len());
    for list in parts {
        let max = list.iter().map(BlockPart::size).max().unwrap_or(0) as usize;
        let mut buckets = vec![Vec::new(); max + 1];
        for p in list {
            buckets[p.size() as usize].push(*p);
        }
        by_size.push(buckets);
    }
    // Largest size reachable by the remaining blocks, for pruning.
    let mut tail_max = vec![0usize; parts.len() + 1];
    for i in (0..parts.len()).rev() {
        tail_max[i] = tail_max[i + 1] + by_size[i].len().saturating_sub(1);
    }
    let mut current = Vec::with_capacity(parts.len());
    for total in 0..=tail_max[0] {
        rec(&by_size, &tail_max, 0, total, &mut current, &mut visit)?;
    }
    ControlFlow::Continue(())
}

fn rec<F>(
    by_size: &[Vec<Vec<BlockPart>>],
    tail_max: &[usize],
    block: usize,
    remaining: usize,
    current: &mut Vec<BlockPart>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[BlockPart]) -> ControlFlow<()>,
{
    if block == by_size.len() {
        return if remaining == 0 { visit(current) } else { ControlFlow::Continue(()) };
    }
    let lo = remaining.saturating_sub(tail_max[block + 1]);
    let hi = remaining.min(by_size[block].len().saturating_sub(1));
    // Larger parts in earlier blocks first: among points of equal size the
    // lexicographically largest is visited first.
    for size in (lo..=hi).rev() {
        for p in &by_size[block][size] {
            current.push(*p);
            let flow = rec(by_size, tail_max, block + 1, remaining - size, current, visit);
            current.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// How to distribute block sums over coordinates when realizing a profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spread {
    /// Put the largest possible value on one coordinate (realizes the upper
    /// end of [`BlockPart::max_coordinate_range`]).
    Concentrated,
    /// Spread as evenly as possible (realizes the lower end).
    Even,
}

/// A concrete point of one block with the given profile, inside the box of
/// the given radius. `negatives` lists which coordinates are negative
/// (defaults to the first `neg_count`).
pub fn realize_block(part: &BlockPart, b: usize, radius: i64, negatives: Option<&[usize]>, spread: Spread) -> Vec<i64> {
    let neg: Vec<usize> = match negatives {
        Some(list) => list.to_vec(),
        None => (0..part.neg_count).collect(),
    };
    debug_assert_eq!(neg.len(), part.neg_count);
    let free: Vec<usize> = (0..b).filter(|j| !neg.contains(j)).collect();
    let mut x = vec![0i64; b];
    fill(&mut x, &neg, part.neg_sum, radius, spread, true);
    fill(&mut x, &free, part.pos_sum, radius, spread, false);
    x
}

fn fill(x: &mut [i64], slots: &[usize], total: i64, radius: i64, spread: Spread, negative: bool) {
    if slots.is_empty() {
        return;
    }
    let n = slots.len() as i64;
    let values: Vec<i64> = match spread {
        Spread::Even => (0..n).map(|t| total / n + i64::from(t < total % n)).collect(),
        Spread::Concentrated if negative => {
            // Keep the last slot as close to zero as possible: every slot
            // needs at least one unit, the others absorb up to `radius`.
            let mut v = vec![1i64; slots.len()];
            let mut extra = total - n;
            for slot in v.iter_mut().take(slots.len() - 1) {
                let add = extra.min(radius - 1);
                *slot += add;
                extra -= add;
            }
            v[slots.len() - 1] += extra;
            v
        }
        Spread::Concentrated => {
            let mut v = vec![0i64; slots.len()];
            let mut rest = total;
            for slot in v.iter_mut() {
                let put = rest.min(radius);
                *slot = put;
                rest -= put;
            }
            v
        }
    };
    for (&j, v) in slots.iter().zip(values) {
        x[j] = if negative { -v } else { v };
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: reachable block-sum vectors inside a box.
    fn reachable(a: &[i64], cap: i64) -> std::collections::HashSet<Vec<i64>> {
        let gens = block_generators(a);
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![vec![0i64; a.len()]];
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) {
                continue;
            }
            for g in &gens {
                let next: Vec<i64> = w.iter().zip(g).map(|(x, y)| x + y).collect();
                if next.iter().all(|&v| v <= cap) {
                    stack.push(next);
                }
            }
        }
        seen
    }

    #[test]
    fn closed_form_matches_generator_sums() {
        for a in [vec![1], vec![2], vec![3], vec![1, 1], vec![1, 2], vec![2, 2], vec![1, 3], vec![1, 1, 1], vec![2, 3, 3]] {
            let cap = 7;
            let reach = reachable(&a, cap);
            let mut w = vec![0i64; a.len()];
            loop {
                assert_eq!(admissible(&w, &a), reach.contains(&w), "a={a:?} w={w:?}");
                if let Some(parts) = split_admissible(&w, &a) {
                    let mut sum = vec![0i64; a.len()];
                    for p in &parts {
                        assert!(p.iter().zip(&a).all(|(x, c)| x <= c) && p.iter().sum::<i64>() >= 2);
                        for (s, x) in sum.iter_mut().zip(p) {
                            *s += x;
                        }
                    }
                    assert_eq!(sum, w);
                }
                // odometer
                let mut pos = 0;
                while pos < w.len() && w[pos] == cap {
                    w[pos] = 0;
                    pos += 1;
                }
                if pos == w.len() {
                    break;
                }
                w[pos] += 1;
            }
        }
    }

    #[test]
    fn numerical_semigroup_case() {
        // a = 3, one coordinate: N \ {1}.
        let a = [3];
        let members: Vec<i64> = (0..8).filter(|&v| admissible(&[v], &a)).collect();
        assert_eq!(members, vec![0, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn min_multiplier_on_coordinate_face() {
        // a = (2,2), b = (1,1), face x_{1,1} = 0: block generators with s_1 = 0.
        let a = [2i64, 2];
        let gens = block_generators(&a);
        let face = BlockFace::from_generators(2, gens.iter().filter(|g| g[0] == 0));
        assert_eq!(face.step, vec![0, 2]);
        assert!(face.min_multiplier(&[1, -2], &[0, 2], &a, 50).is_some());
        assert!(face.min_multiplier(&[0, 1], &[0, 0], &a, 50).is_none());
        assert_eq!(face.min_multiplier(&[2, 0], &[0, 0], &a, 50), Some(0));
    }

    #[test]
    fn exact_multiplier_matches_long_search() {
        for a in [vec![2i64], vec![3], vec![1, 2], vec![2, 2], vec![1, 3], vec![1, 1, 2]] {
            let gens = block_generators(&a);
            let k = a.len();
            // Every subfamily of block generators picked by one block being zero
            // or by the balance equality, plus the full family.
            let mut faces: Vec<BlockFace> = vec![BlockFace::from_generators(k, gens.iter())];
            for i in 0..k {
                faces.push(BlockFace::from_generators(k, gens.iter().filter(|g| g[i] == 0)));
                faces.push(BlockFace::from_generators(k, gens.iter().filter(|g| 2 * g[i] == g.iter().sum::<i64>())));
            }
            let mut w = vec![-4i64; k];
            loop {
                let neg: Vec<i64> = w.iter().map(|&x| (-x).max(0) + i64::from(x > 2)).collect();
                for face in &faces {
                    assert_eq!(face.accepts(&w, &neg, &a), face.min_multiplier(&w, &neg, &a, 400).is_some());
                    assert_eq!(
                        face.min_multiplier_exact(&w, &neg, &a),
                        face.min_multiplier(&w, &neg, &a, 400),
                        "a={a:?} w={w:?} step={:?}",
                        face.step
                    );
                }
                let mut pos = 0;
                while pos < k && w[pos] == 5 {
                    w[pos] = -4;
                    pos += 1;
                }
                if pos == k {
                    break;
                }
                w[pos] += 1;
            }
        }
    }

    #[test]
    fn class_enumeration_is_by_size_and_complete() {
        let parts = vec![block_parts(1, 2, false), block_parts(2, 1, false)];
        let mut seen = Vec::new();
        let _ = for_each_class(&parts, |c| {
            seen.push(c.iter().map(BlockPart::size).sum::<i64>());
            ControlFlow::Continue(())
        });
        assert!(seen.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(seen.len(), parts[0].len() * parts[1].len());
    }

    #[test]
    fn realized_points_have_their_profile_and_extremes() {
        let radius = 3;
        for b in 1..=3 {
            for part in block_parts(b, radius, false) {
                let (lo, hi) = part.max_coordinate_range(b, radius);
                for (spread, target) in [(Spread::Concentrated, hi), (Spread::Even, lo)] {
                    let x = realize_block(&part, b, radius, None, spread);
                    assert!(x.iter().all(|v| v.abs() <= radius), "{x:?}");
                    assert_eq!(x.iter().filter(|&&v| v < 0).count(), part.neg_count);
                    assert_eq!(x.iter().filter(|&&v| v < 0).sum::<i64>(), -part.neg_sum);
                    assert_eq!(x.iter().filter(|&&v| v > 0).sum::<i64>(), part.pos_sum);
                    assert_eq!(*x.iter().max().unwrap(), target, "{part:?} {spread:?}");
                }
            }
        }
    }
}
