//! Graded total orders on standard bases, and embedding orders: orders whose every
//! prefix grows into a prefix of the next degree with the smallest possible size.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{HilbertSeries, MonomialIdeal};
use crate::monomial::Monomial;
use crate::oracle::{min_growth_table, realize};
use crate::ring::QuotientRing;

/// One ordered listing of `B_d` per degree `0..=cap`, stored as basis indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedOrder {
    per_degree: Vec<Vec<usize>>,
}

impl GradedOrder {
    /// Graded lexicographic order (the standard basis order).
    pub fn grlex(ring: &QuotientRing) -> Self {
        Self { per_degree: (0..=ring.cap()).map(|d| (0..ring.dim(d)).collect()).collect() }
    }

    /// Validates that each list is a permutation of the degree's standard basis.
    /// Degrees with at most one standard monomial may be omitted.
    pub fn from_monomials(ring: &QuotientRing, lists: &BTreeMap<u32, Vec<Monomial>>) -> Result<Self> {
        if let Some(&d) = lists.keys().find(|&&d| d > ring.cap()) {
            return Err(Error::DegreeOverCap { degree: d, cap: ring.cap() });
        }
        let mut per_degree = Vec::with_capacity(ring.cap() as usize + 1);
        for d in 0..=ring.cap() {
            let dim = ring.dim(d);
            let Some(list) = lists.get(&d) else {
                if dim <= 1 {
                    per_degree.push((0..dim).collect());
                    continue;
                }
                return Err(Error::InvalidOrder(format!("degree {d} is not listed")));
            };
            let mut seen = FixedBitSet::with_capacity(dim);
            let mut idx = Vec::with_capacity(dim);
            for m in list {
                if m.degree() != d {
                    return Err(Error::InvalidOrder(format!(
                        "`{}` is listed in degree {d} but has degree {}",
                        ring.show(m),
                        m.degree()
                    )));
                }
                let i = ring.index_of(m).ok_or_else(|| Error::NotStandard(ring.show(m)))?;
                if seen.put(i) {
                    return Err(Error::InvalidOrder(format!("`{}` listed twice", ring.show(m))));
                }
                idx.push(i);
            }
            if let Some(missing) = (0..dim).find(|&i| !seen.contains(i)) {
                return Err(Error::InvalidOrder(format!(
                    "degree {d} is missing `{}`",
                    ring.show(&ring.basis(d)[missing])
                )));
            }
            per_degree.push(idx);
        }
        Ok(Self { per_degree })
    }

    pub(crate) fn from_indices(per_degree: Vec<Vec<usize>>) -> Self {
        Self { per_degree }
    }

    pub fn cap(&self) -> u32 {
        self.per_degree.len() as u32 - 1
    }

    /// Basis indices of degree `d` in order.
    pub fn list(&self, d: u32) -> &[usize] {
        &self.per_degree[d as usize]
    }

    pub fn monomials(&self, ring: &QuotientRing, d: u32) -> Vec<Monomial> {
        self.list(d).iter().map(|&i| ring.basis(d)[i].clone()).collect()
    }

    /// The first `r` monomials of degree `d`, as a basis subset.
    pub fn prefix_set(&self, ring: &QuotientRing, d: u32, r: usize) -> FixedBitSet {
        let mut s = ring.empty_set(d);
        for &i in &self.list(d)[..r] {
            s.insert(i);
        }
        s
    }

    /// `rank[i]` is the position of basis element `i` in degree `d`.
    pub fn ranks(&self, d: u32) -> Vec<usize> {
        let list = self.list(d);
        let mut rank = vec![0; list.len()];
        for (pos, &i) in list.iter().enumerate() {
            rank[i] = pos;
        }
        rank
    }

    /// Whether `set` is exactly the first `|set|` monomials of degree `d`.
    pub fn is_prefix(&self, d: u32, set: &FixedBitSet) -> bool {
        let n = set.count_ones(..);
        self.list(d)[..n].iter().all(|&i| set.contains(i))
    }

    /// The ideal whose degree-`d` piece is the first `H^d` monomials; not checked for closure.
    pub fn prefix_ideal(&self, ring: &QuotientRing, series: &HilbertSeries) -> Vec<FixedBitSet> {
        (0..=self.cap()).map(|d| self.prefix_set(ring, d, series.get(d as usize))).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The growth of the prefix is not a prefix of the next degree.
    NotPrefix,
    /// Some other set of the same size grows less.
    NotMinimal,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EmbeddingViolation {
    pub degree: u32,
    pub prefix_size: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ViolationKind::NotPrefix => "its growth is not a prefix of the next degree",
            ViolationKind::NotMinimal => "its growth is larger than the minimum",
        };
        write!(f, "prefix of size {} in degree {}: {what}", self.prefix_size, self.degree)
    }
}

/// An order verified to be an embedding order up to `verified_cap`.
#[derive(Clone, Debug)]
pub struct EmbeddingCertificate {
    order: GradedOrder,
    verified_cap: u32,
}

impl EmbeddingCertificate {
    pub fn new(ring: &QuotientRing, order: GradedOrder) -> Result<Self> {
        is_embedding_order(ring, &order).map_err(Error::NotEmbedding)?;
        Ok(Self { verified_cap: order.cap(), order })
    }

    pub fn order(&self) -> &GradedOrder {
        &self.order
    }

    pub fn verified_cap(&self) -> u32 {
        self.verified_cap
    }

    pub fn into_order(self) -> GradedOrder {
        self.order
    }
}

/// Checks every prefix `V` of every degree `d < cap`: `|R_1 V|` must equal the minimal
/// growth of a set of that size, and `R_1 V` must be a prefix of degree `d + 1`.
/// Reports the smallest failing `(degree, prefix size)`.
pub fn is_embedding_order(ring: &QuotientRing, order: &GradedOrder) -> Result<(), EmbeddingViolation> {
    for d in 0..ring.cap() {
        let table = min_growth_table(ring, d, 1).expect("degree below cap");
        let mut growth = ring.empty_set(d + 1);
        for (r, &i) in order.list(d).iter().enumerate() {
            growth.union_with(ring.growth_of(d, i));
            let prefix_size = r + 1;
            let kind = if growth.count_ones(..) != table[prefix_size] {
                ViolationKind::NotMinimal
            } else if !order.is_prefix(d + 1, &growth) {
                ViolationKind::NotPrefix
            } else {
                continue;
            };
            return Err(EmbeddingViolation { degree: d, prefix_size, kind });
        }
    }
    Ok(())
}

/// Forced initial sets: for each listed degree, the first entries of the order must be
/// exactly these monomials (in any order).
pub type ForcedPrefixes = BTreeMap<u32, Vec<Monomial>>;

/// Depth-first search for an embedding order. Candidates are tried in graded
/// lexicographic order, so the first order found is deterministic. `Ok(None)` means no
/// embedding order exists up to the cap. `budget` bounds the number of search nodes.
pub fn find_embedding_order(
    ring: &QuotientRing,
    forced: &ForcedPrefixes,
    budget: usize,
) -> Result<Option<GradedOrder>> {
    Ok(find_embedding_orders(ring, forced, 1, budget)?.into_iter().next())
}

/// Up to `limit` embedding orders, in search order.
pub fn find_embedding_orders(
    ring: &QuotientRing,
    forced: &ForcedPrefixes,
    limit: usize,
    budget: usize,
) -> Result<Vec<GradedOrder>> {
    let mut forced_sets = Vec::with_capacity(ring.cap() as usize + 1);
    for d in 0..=ring.cap() {
        forced_sets.push(match forced.get(&d) {
            Some(ms) => {
                let set = ring.set_of(d, ms)?;
                if set.count_ones(..) != ms.len() {
                    return Err(Error::InvalidOrder(format!("forced prefix in degree {d} repeats a monomial")));
                }
                Some(set)
            }
            None => None,
        });
    }
    if let Some(&d) = forced.keys().find(|&&d| d > ring.cap()) {
        return Err(Error::DegreeOverCap { degree: d, cap: ring.cap() });
    }
    let tables = (0..ring.cap())
        .map(|d| min_growth_table(ring, d, 1))
        .collect::<Result<Vec<_>>>()?;
    let mut search = Search {
        ring,
        forced: forced_sets,
        tables,
        lists: Vec::new(),
        found: Vec::new(),
        limit: limit.max(1),
        nodes: 0,
        budget,
    };
    search.degree(0, vec![0; ring.dim(0)])?;
    Ok(search.found)
}

struct Search<'r> {
    ring: &'r QuotientRing,
    forced: Vec<Option<FixedBitSet>>,
    tables: Vec<Vec<usize>>,
    lists: Vec<Vec<usize>>,
    found: Vec<GradedOrder>,
    limit: usize,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    /// Starts degree `d`, where `levels[i]` is the size of the shortest prefix of the
    /// previous degree whose growth contains basis element `i`.
    fn degree(&mut self, d: u32, levels: Vec<usize>) -> Result<bool> {
        let dim = self.ring.dim(d);
        let mut state = Partial {
            list: Vec::with_capacity(dim),
            used: FixedBitSet::with_capacity(dim),
            growth: if d < self.ring.cap() { self.ring.empty_set(d + 1) } else { FixedBitSet::new() },
        };
        self.extend(d, &levels, &mut state)
    }

    /// Returns true once the search should stop.
    fn extend(&mut self, d: u32, levels: &[usize], state: &mut Partial) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let ring = self.ring;
        let dim = ring.dim(d);
        if state.list.len() == dim {
            return self.finish_degree(d, state.list.clone());
        }
        let pos = state.list.len();
        let forced = self.forced[d as usize].clone();
        let forced = forced.as_ref();
        let in_forced_part = forced.is_some_and(|f| pos < f.count_ones(..));
        let min_level = (0..dim).filter(|&i| !state.used.contains(i)).map(|i| levels[i]).min();
        for i in 0..dim {
            if state.used.contains(i) || Some(levels[i]) != min_level {
                continue;
            }
            if in_forced_part && !forced.is_some_and(|f| f.contains(i)) {
                continue;
            }
            let saved = state.growth.clone();
            if d < ring.cap() {
                state.growth.union_with(ring.growth_of(d, i));
                if state.growth.count_ones(..) != self.tables[d as usize][pos + 1] {
                    state.growth = saved;
                    continue;
                }
            }
            state.list.push(i);
            state.used.insert(i);
            let stop = self.extend(d, levels, state)?;
            state.list.pop();
            state.used.set(i, false);
            state.growth = saved;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn finish_degree(&mut self, d: u32, list: Vec<usize>) -> Result<bool> {
        self.lists.push(list);
        let stop = if d == self.ring.cap() {
            self.found.push(GradedOrder::from_indices(self.lists.clone()));
            self.found.len() >= self.limit
        } else {
            let levels = self.levels_above(d);
            self.degree(d + 1, levels)?
        };
        self.lists.pop();
        Ok(stop)
    }

    fn levels_above(&self, d: u32) -> Vec<usize> {
        let ring = self.ring;
        let mut levels = vec![usize::MAX; ring.dim(d + 1)];
        for (r, &i) in self.lists[d as usize].iter().enumerate() {
            for j in ring.growth_of(d, i).ones() {
                if levels[j] == usize::MAX {
                    levels[j] = r + 1;
                }
            }
        }
        levels
    }
}

struct Partial {
    list: Vec<usize>,
    used: FixedBitSet,
    growth: FixedBitSet,
}

/// `epsilon(H)`: the ideal whose degree-`d` piece is the first `H^d` monomials of the
/// order. Rejects series that no monomial ideal attains.
pub fn embed(ring: &QuotientRing, order: &GradedOrder, series: &HilbertSeries) -> Result<MonomialIdeal> {
    if realize(ring, series)?.is_none() {
        return Err(Error::Unrealizable(series.to_string()));
    }
    embed_realized(ring, order, series)
}

/// [`embed`] for a series already known to be attained (e.g. taken from an ideal).
pub fn embed_realized(ring: &QuotientRing, order: &GradedOrder, series: &HilbertSeries) -> Result<MonomialIdeal> {
    series.validate(ring)?;
    let pieces = order.prefix_ideal(ring, series);
    let ideal = MonomialIdeal::from_pieces_unchecked(pieces);
    if let Some(d) = ideal.closure_failure(ring) {
        return Err(Error::Verification {
            degree: d + 1,
            reason: format!("prefixes for {series} are not closed under multiplication"),
        });
    }
    Ok(ideal)
}

/// Pair `f < f'` in one degree with common divisor `g` such that `f/g < f'/g` fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrderViolation {
    pub first: Monomial,
    pub second: Monomial,
    pub divisor: Monomial,
}

/// Checks that the basis is closed under divisors and that the order is compatible with
/// cancelling common factors.
pub fn is_monomial_order(ring: &QuotientRing, order: &GradedOrder) -> Result<(), MonomialOrderViolation> {
    let cap = ring.cap();
    let ranks: Vec<Vec<usize>> = (0..=cap).map(|d| order.ranks(d)).collect();
    for d in 0..=cap {
        for m in ring.basis(d) {
            for g in m.divisors() {
                if ring.index_of(&g).is_none() {
                    return Err(MonomialOrderViolation { first: m.clone(), second: m.clone(), divisor: g });
                }
            }
        }
        let list = order.monomials(ring, d);
        for (a, f) in list.iter().enumerate() {
            for f2 in &list[a + 1..] {
                for g in f.gcd(f2).divisors().into_iter().filter(|g| !g.is_one()) {
                    let (q, q2) = (f.div(&g).expect("divisor"), f2.div(&g).expect("divisor"));
                    let e = q.degree() as usize;
                    let (i, i2) = (ring.index_of(&q).expect("standard"), ring.index_of(&q2).expect("standard"));
                    if ranks[e][i] > ranks[e][i2] {
                        return Err(MonomialOrderViolation { first: f.clone(), second: f2.clone(), divisor: g });
                    }
                }
            }
        }
    }
    Ok(())
}

/// After renaming variables by their degree-1 positions, every degree must be listed in
/// graded lexicographic order. Requires an embedding order that is also a monomial order.
pub fn lex_refinement_check(ring: &QuotientRing, order: &GradedOrder) -> Result<Option<(Monomial, Monomial)>> {
    if let Err(v) = is_embedding_order(ring, order) {
        return Err(Error::Precondition(format!("not an embedding order: {v}")));
    }
    if let Err(v) = is_monomial_order(ring, order) {
        return Err(Error::Precondition(format!(
            "not a monomial order: `{}` before `{}` but not after cancelling `{}`",
            ring.show(&v.first),
            ring.show(&v.second),
            ring.show(&v.divisor)
        )));
    }
    if ring.cap() == 0 {
        return Ok(None);
    }
    let deg1 = order.monomials(ring, 1);
    if deg1.len() != ring.nvars() {
        return Err(Error::Precondition("some variable vanishes in degree 1".into()));
    }
    // new position k holds the old variable appearing k-th in degree 1
    let perm: Vec<usize> = deg1
        .iter()
        .map(|m| (0..ring.nvars()).find(|&v| m.exponent(v) == 1).expect("variable"))
        .collect();
    let relabel = |m: &Monomial| Monomial::new(perm.iter().map(|&v| m.exponent(v)).collect());
    for d in 0..=ring.cap() {
        let list = order.monomials(ring, d);
        for w in list.windows(2) {
            if relabel(&w[0]) > relabel(&w[1]) {
                return Ok(Some((w[0].clone(), w[1].clone())));
            }
        }
    }
    Ok(None)
}
