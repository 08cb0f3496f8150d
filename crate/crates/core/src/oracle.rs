//! Brute-force oracles: minimal growth over monomial subsets, enumeration of all
//! monomial ideals, and the poset of their Hilbert series.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;
use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{HilbertSeries, MonomialIdeal};
use crate::ring::QuotientRing;

/// Default bound on memoized states for [`hilbert_poset`].
pub const DEFAULT_POSET_BUDGET: usize = 2_000_000;

/// Minimum of `|R_1 W|` over all `r`-element sets `W` of degree-`d` standard monomials.
pub fn min_growth_oracle(ring: &QuotientRing, d: u32, r: usize) -> Result<usize> {
    min_growth_steps(ring, d, r, 1)
}

/// Minimum of `|R_k W|` over `r`-element monomial sets `W` in degree `d`.
pub fn min_growth_steps(ring: &QuotientRing, d: u32, r: usize, k: u32) -> Result<usize> {
    if d + k > ring.cap() {
        return Err(Error::DegreeOverCap { degree: d + k, cap: ring.cap() });
    }
    let n = ring.dim(d);
    if r > n {
        return Err(Error::SizeOutOfRange { size: r, max: n });
    }
    if r == 0 {
        return Ok(0);
    }
    let images = singleton_images(ring, d, k);
    Ok(min_union(&images, r))
}

/// `[min |R_k W| : |W| = r]` for every `r` in `0..=|B_d|`.
pub fn min_growth_table(ring: &QuotientRing, d: u32, k: u32) -> Result<Vec<usize>> {
    if d + k > ring.cap() {
        return Err(Error::DegreeOverCap { degree: d + k, cap: ring.cap() });
    }
    let images = singleton_images(ring, d, k);
    Ok((0..=images.len()).map(|r| if r == 0 { 0 } else { min_union(&images, r) }).collect())
}

fn singleton_images(ring: &QuotientRing, d: u32, k: u32) -> Vec<FixedBitSet> {
    (0..ring.dim(d))
        .map(|i| {
            let mut s = ring.empty_set(d);
            s.insert(i);
            ring.growth_power(d, &s, k)
        })
        .collect()
}

/// Smallest union of `r` of the given sets, by branch and bound.
fn min_union(images: &[FixedBitSet], r: usize) -> usize {
    let n = images.len();
    // Small images first: good early bounds, no effect on the result.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| images[i].count_ones(..));
    let sets: Vec<&FixedBitSet> = order.iter().map(|&i| &images[i]).collect();
    let width = images.first().map_or(0, |s| s.len());

    let best = AtomicUsize::new(greedy_bound(&sets, r, width));
    (0..=n - r).into_par_iter().for_each(|first| {
        let mut acc = sets[first].clone();
        acc.grow(width);
        if acc.count_ones(..) < best.load(Ordering::Relaxed) {
            branch(&sets, r, first + 1, 1, &acc, &best);
        }
    });
    best.into_inner()
}

fn branch(sets: &[&FixedBitSet], r: usize, start: usize, depth: usize, acc: &FixedBitSet, best: &AtomicUsize) {
    let size = acc.count_ones(..);
    if depth == r {
        best.fetch_min(size, Ordering::Relaxed);
        return;
    }
    let remaining = r - depth;
    for i in start..=sets.len() - remaining {
        let mut next = acc.clone();
        next.union_with(sets[i]);
        if next.count_ones(..) < best.load(Ordering::Relaxed) {
            branch(sets, r, i + 1, depth + 1, &next, best);
        }
    }
}

/// Upper bound from repeatedly adding the set that enlarges the union least.
fn greedy_bound(sets: &[&FixedBitSet], r: usize, width: usize) -> usize {
    let mut used = vec![false; sets.len()];
    let mut acc = FixedBitSet::with_capacity(width);
    for _ in 0..r {
        let (pick, _) = sets
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, s)| (i, s.difference(&acc).count()))
            .min_by_key(|&(i, c)| (c, i))
            .expect("r is at most the number of sets");
        used[pick] = true;
        acc.union_with(sets[pick]);
    }
    acc.count_ones(..) + 1
}

/// Degreewise bounds `lower[d] <= |I_d| <= upper[d]` on enumerated ideals.
#[derive(Clone, Debug)]
pub struct SizeConstraints {
    pub lower: Vec<usize>,
    pub upper: Vec<usize>,
}

impl SizeConstraints {
    pub fn none(ring: &QuotientRing) -> Self {
        Self {
            lower: vec![0; ring.cap() as usize + 1],
            upper: (0..=ring.cap()).map(|d| ring.dim(d)).collect(),
        }
    }

    /// Only ideals with exactly this Hilbert series.
    pub fn exact(series: &HilbertSeries) -> Self {
        Self { lower: series.coeffs().to_vec(), upper: series.coeffs().to_vec() }
    }

    fn bounds(&self, d: u32) -> (usize, usize) {
        let d = d as usize;
        (self.lower.get(d).copied().unwrap_or(0), self.upper.get(d).copied().unwrap_or(usize::MAX))
    }
}

/// Every monomial ideal of `ring` (truncated at its cap) whose degree pieces satisfy
/// `constraints`, each exactly once. Ideals are produced degree by degree: smaller
/// pieces first, then lexicographically by the added monomials.
pub fn enumerate_monomial_ideals<'r>(
    ring: &'r QuotientRing,
    constraints: SizeConstraints,
) -> IdealIter<'r> {
    let mut it = IdealIter { ring, constraints, stack: Vec::new(), done: false };
    let root = it.frame(0, ring.empty_set(0));
    it.stack.push(root);
    it
}

/// The first monomial ideal with Hilbert series `series`, if any.
pub fn realize(ring: &QuotientRing, series: &HilbertSeries) -> Result<Option<MonomialIdeal>> {
    series.validate(ring)?;
    Ok(enumerate_monomial_ideals(ring, SizeConstraints::exact(series)).next())
}

pub struct IdealIter<'r> {
    ring: &'r QuotientRing,
    constraints: SizeConstraints,
    stack: Vec<Frame>,
    done: bool,
}

struct Frame {
    forced: FixedBitSet,
    free: Vec<usize>,
    k: usize,
    kmax: usize,
    combo: Option<Vec<usize>>,
    piece: FixedBitSet,
}

impl IdealIter<'_> {
    fn frame(&self, d: u32, forced: FixedBitSet) -> Frame {
        let (lo, hi) = self.constraints.bounds(d);
        let nforced = forced.count_ones(..);
        let free: Vec<usize> = (0..self.ring.dim(d)).filter(|&i| !forced.contains(i)).collect();
        let k = lo.saturating_sub(nforced);
        let kmax = if nforced > hi { 0 } else { (hi - nforced).min(free.len()) };
        // An empty range is encoded as k > kmax.
        let k = if nforced > hi { kmax + 1 } else { k };
        let piece = forced.clone();
        Frame { forced, free, k, kmax, combo: None, piece }
    }
}

impl Frame {
    /// Moves to the next admissible piece; false when exhausted.
    fn advance(&mut self) -> bool {
        let n = self.free.len();
        match &mut self.combo {
            None => {
                if self.k > self.kmax {
                    return false;
                }
                self.combo = Some((0..self.k).collect());
            }
            Some(c) => {
                if !next_combination(c, n) {
                    self.k += 1;
                    if self.k > self.kmax {
                        return false;
                    }
                    *c = (0..self.k).collect();
                }
            }
        }
        let mut piece = self.forced.clone();
        for &j in self.combo.as_ref().expect("set above") {
            piece.insert(self.free[j]);
        }
        self.piece = piece;
        true
    }
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < n - k + pos {
            c[pos] += 1;
            for q in pos + 1..k {
                c[q] = c[q - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for IdealIter<'_> {
    type Item = MonomialIdeal;

    fn next(&mut self) -> Option<MonomialIdeal> {
        if self.done {
            return None;
        }
        let cap = self.ring.cap();
        loop {
            let depth = self.stack.len();
            let Some(top) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            if !top.advance() {
                self.stack.pop();
                continue;
            }
            let d = depth as u32 - 1;
            if d == cap {
                let pieces = self.stack.iter().map(|f| f.piece.clone()).collect();
                return Some(MonomialIdeal::from_pieces_unchecked(pieces));
            }
            let forced = self.ring.growth_set(d, &top.piece);
            let next = self.frame(d + 1, forced);
            self.stack.push(next);
        }
    }
}

type Suffixes = Rc<BTreeSet<Vec<usize>>>;

/// All Hilbert series of monomial ideals of `ring`, computed by dynamic programming over
/// (degree, piece) states. Fails once more than `budget` states are memoized.
pub fn hilbert_poset(ring: &QuotientRing, budget: usize) -> Result<BTreeSet<HilbertSeries>> {
    let mut memo: HashMap<(u32, FixedBitSet), Suffixes> = HashMap::new();
    let mut out = BTreeSet::new();
    let b0 = ring.dim(0);
    for size in 0..=b0 {
        let mut piece = ring.empty_set(0);
        piece.insert_range(..size);
        for tail in suffixes(ring, 0, &piece, &mut memo, budget)?.iter() {
            let mut coeffs = vec![size];
            coeffs.extend_from_slice(tail);
            out.insert(HilbertSeries::new(coeffs));
        }
    }
    Ok(out)
}

/// Series tails `(|I_{d+1}|, ..., |I_cap|)` of ideals whose degree-`d` piece is `piece`.
fn suffixes(
    ring: &QuotientRing,
    d: u32,
    piece: &FixedBitSet,
    memo: &mut HashMap<(u32, FixedBitSet), Suffixes>,
    budget: usize,
) -> Result<Suffixes> {
    if d == ring.cap() {
        return Ok(Rc::new(BTreeSet::from([Vec::new()])));
    }
    let key = (d, piece.clone());
    if let Some(s) = memo.get(&key) {
        return Ok(s.clone());
    }
    if memo.len() >= budget {
        return Err(Error::BudgetExceeded(budget));
    }
    let forced = ring.growth_set(d, piece);
    let nforced = forced.count_ones(..);
    let dim = ring.dim(d + 1);
    let mut out = BTreeSet::new();
    if d + 1 == ring.cap() {
        for s in nforced..=dim {
            out.insert(vec![s]);
        }
    } else {
        let free: Vec<usize> = (0..dim).filter(|&i| !forced.contains(i)).collect();
        if free.len() >= 40 || memo.len() + (1usize << free.len()) > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        for mask in 0u64..(1u64 << free.len()) {
            let mut next = forced.clone();
            for (b, &j) in free.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    next.insert(j);
                }
            }
            let size = next.count_ones(..);
            for tail in suffixes(ring, d + 1, &next, memo, budget)?.iter() {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(size);
                v.extend_from_slice(tail);
                out.insert(v);
            }
        }
    }
    let out = Rc::new(out);
    memo.insert(key, out.clone());
    Ok(out)
}
