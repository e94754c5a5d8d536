//! Enumeration of continuous maps extending a partial assignment.
//!
//! Digital continuity is a binary constraint on every domain edge
//! (`f(x)` and `f(y)` adjacent or equal), so the search is plain
//! backtracking with forward checking: assigning `f(x) = v` narrows every
//! unassigned neighbor of `x` to the closed neighborhood `N*(v)`.
//!
//! On `c_u` self-maps an extra rule applies. If `q <-> q'` and `f` pushes
//! `q` past `q'` along some axis, `f(q')` must move in the same direction.
//! Forward checking already implies this for a single edge; the rule is kept
//! as an independent, separately switchable filter.
//!
//! By default the search also maintains arc consistency among unassigned
//! variables, which carries distance bounds from fixed points across the
//! whole image instead of one edge at a time.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{Adjacency, DigitalImage};
use crate::maps::{DigitalMap, PartialMap};

/// Default node budget per verification.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "DTK_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariableOrder {
    /// Seeded points first, then repeatedly the point with the most
    /// already-ordered neighbors (ties: smaller domain, then lower index).
    MostConstrained,
    /// Seeded points first, then plain point order. Solutions then come
    /// out in lexicographic order of their tables.
    Lexicographic,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub budget: u64,
    /// Worker threads for collecting searches. Results are identical for
    /// every value.
    pub jobs: usize,
    pub order: VariableOrder,
    pub pull_pruning: bool,
    /// Keep every unassigned pair of domain neighbors arc consistent.
    pub arc_consistency: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: DEFAULT_BUDGET,
            jobs: 1,
            order: VariableOrder::MostConstrained,
            pull_pruning: true,
            arc_consistency: true,
        }
    }
}

impl SearchConfig {
    /// Defaults, with the budget taken from `DTK_BUDGET` when set.
    pub fn from_env() -> Self {
        let mut cfg = SearchConfig::default();
        if let Some(b) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            cfg.budget = b;
        }
        cfg
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_order(mut self, order: VariableOrder) -> Self {
        self.order = order;
        self
    }

    pub fn with_pull_pruning(mut self, on: bool) -> Self {
        self.pull_pruning = on;
        self
    }

    pub fn with_arc_consistency(mut self, on: bool) -> Self {
        self.arc_consistency = on;
        self
    }
}

#[derive(Clone, Debug)]
pub enum StopMode {
    First,
    FirstDifferingFrom(DigitalMap),
    CountUpTo(usize),
    All,
}

#[derive(Clone, Debug)]
pub struct ExtensionProblem {
    pub seed: PartialMap,
    pub stop: StopMode,
}

impl ExtensionProblem {
    pub fn new(seed: PartialMap, stop: StopMode) -> Self {
        ExtensionProblem { seed, stop }
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        self.seed.domain()
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub maps: Vec<DigitalMap>,
    pub nodes: u64,
}

/// Continuous maps extending the seed within its candidate sets, in the
/// order the search meets them, cut off according to the stop mode.
pub fn enumerate_continuous_extensions(
    problem: &ExtensionProblem,
    config: &SearchConfig,
) -> Result<Enumeration> {
    let csp = Csp::from_seed(&problem.seed)?;
    let (tables, nodes) = match &problem.stop {
        StopMode::All => csp.collect(config, None, |_| true)?,
        StopMode::First => csp.collect(config, Some(1), |_| true)?,
        StopMode::CountUpTo(k) => csp.collect(config, Some(*k), |_| true)?,
        StopMode::FirstDifferingFrom(reference) => {
            let r = reference.table().to_vec();
            csp.collect(config, Some(1), move |t| t != r.as_slice())?
        }
    };
    let maps = tables
        .into_iter()
        .map(|t| csp.to_map(t))
        .collect::<Result<_>>()?;
    Ok(Enumeration { maps, nodes })
}

/// Streams every extension of `seed` to `visit` (sequentially) until it
/// breaks. Returns the number of search nodes.
pub fn for_each_extension<F>(seed: &PartialMap, config: &SearchConfig, mut visit: F) -> Result<u64>
where
    F: FnMut(&DigitalMap) -> ControlFlow<()>,
{
    let csp = Csp::from_seed(seed)?;
    let mut err = None;
    let nodes = csp.visit(config, |t| match csp.to_map(t.to_vec()) {
        Ok(m) => visit(&m),
        Err(e) => {
            err = Some(e);
            ControlFlow::Break(())
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(nodes),
    }
}

/// A constraint problem over domain indices with codomain-index values.
#[derive(Clone)]
pub(crate) struct Csp {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    initial: Vec<BitSet>,
    injective: Vec<bool>,
    priority: Vec<usize>,
}

struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    fn tick(&self) -> Result<()> {
        let n = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.limit {
            return Err(Error::BudgetExceeded { budget: self.limit });
        }
        Ok(())
    }
}

impl Csp {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>) -> Self {
        let n = domain.len();
        let m = codomain.len();
        Csp {
            initial: vec![BitSet::full(m); n],
            injective: vec![false; n],
            priority: Vec::new(),
            domain,
            codomain,
        }
    }

    pub fn from_seed(seed: &PartialMap) -> Result<Self> {
        let mut csp = Csp::new(seed.domain().clone(), seed.codomain().clone());
        let m = csp.codomain.len();
        for (p, cands) in seed.restrictions() {
            let x = csp.domain.require_index(p)?;
            let set = cands
                .iter()
                .map(|c| csp.codomain.require_index(c))
                .collect::<Result<Vec<_>>>()?;
            csp.restrict(x, &BitSet::from_indices(m, set));
        }
        for (p, q) in seed.assignment() {
            let x = csp.domain.require_index(p)?;
            let v = csp.codomain.require_index(q)?;
            csp.restrict(x, &BitSet::from_indices(m, [v]));
        }
        Ok(csp)
    }

    pub fn restrict(&mut self, x: usize, set: &BitSet) {
        self.initial[x].intersect_with(set);
    }

    /// Forces the given variables to take pairwise distinct values and
    /// places them first in the search order.
    pub fn injective_prefix(&mut self, vars: &[usize]) {
        for &x in vars {
            self.injective[x] = true;
        }
        self.priority = vars.to_vec();
    }

    pub fn to_map(&self, table: Vec<usize>) -> Result<DigitalMap> {
        DigitalMap::from_table(self.domain.clone(), self.codomain.clone(), table)
    }

    fn pull_axes(&self, config: &SearchConfig) -> bool {
        config.pull_pruning
            && matches!(self.domain.adjacency(), Adjacency::Cu(_))
            && (Arc::ptr_eq(&self.domain, &self.codomain) || self.domain == self.codomain)
    }

    fn order(&self, config: &SearchConfig) -> Vec<usize> {
        let n = self.domain.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        for x in 0..n {
            if self.initial[x].count() == 1 && !self.injective[x] {
                placed[x] = true;
                order.push(x);
            }
        }
        for &x in &self.priority {
            if !placed[x] {
                placed[x] = true;
                order.push(x);
            }
        }
        match config.order {
            VariableOrder::Lexicographic => {
                order.extend((0..n).filter(|&x| !placed[x]));
            }
            VariableOrder::MostConstrained => {
                let mut links = vec![0usize; n];
                for &x in &order {
                    for &y in self.domain.neighbor_indices(x) {
                        links[y] += 1;
                    }
                }
                while order.len() < n {
                    let x = (0..n)
                        .filter(|&x| !placed[x])
                        .max_by(|&a, &b| {
                            links[a]
                                .cmp(&links[b])
                                .then(self.initial[b].count().cmp(&self.initial[a].count()))
                                .then(b.cmp(&a))
                        })
                        .unwrap();
                    placed[x] = true;
                    order.push(x);
                    for &y in self.domain.neighbor_indices(x) {
                        links[y] += 1;
                    }
                }
            }
        }
        order
    }

    /// Sequential depth-first visit of every solution.
    pub fn visit<F>(&self, config: &SearchConfig, mut visit: F) -> Result<u64>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let order = self.order(config);
        let budget = Budget {
            limit: config.budget,
            used: AtomicU64::new(0),
        };
        let mut run = Run::new(self, &order, self.initial.clone(), self.pull_axes(config), &budget);
        run.ac = config.arc_consistency;
        let _ = run.start(&mut visit)?;
        Ok(budget.used.load(Ordering::Relaxed))
    }

    /// Collects up to `limit` solutions accepted by `filter`, in sequential
    /// search order. With `jobs > 1` the subtrees under the first branching
    /// variable are explored concurrently and merged back in order.
    pub fn collect<F>(
        &self,
        config: &SearchConfig,
        limit: Option<usize>,
        filter: F,
    ) -> Result<(Vec<Vec<usize>>, u64)>
    where
        F: Fn(&[usize]) -> bool + Sync,
    {
        let order = self.order(config);
        let budget = Budget {
            limit: config.budget,
            used: AtomicU64::new(0),
        };
        let pull = self.pull_axes(config);
        let cap = limit.unwrap_or(usize::MAX);
        if cap == 0 {
            return Ok((Vec::new(), 0));
        }
        let split = order.iter().position(|&x| self.initial[x].count() > 1);
        let run_one = |domains: Vec<BitSet>| -> Result<Vec<Vec<usize>>> {
            let mut found = Vec::new();
            let mut run = Run::new(self, &order, domains, pull, &budget);
            run.ac = config.arc_consistency;
            let _ = run.start(&mut |t: &[usize]| {
                if filter(t) {
                    found.push(t.to_vec());
                    if found.len() >= cap {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            })?;
            Ok(found)
        };
        let out = match split {
            Some(pos) if config.jobs > 1 => {
                let var = order[pos];
                let cands: Vec<usize> = self.initial[var].iter().collect();
                type Slot = Mutex<Option<Result<Vec<Vec<usize>>>>>;
                let slots: Vec<Slot> = cands.iter().map(|_| Mutex::new(None)).collect();
                let next = AtomicUsize::new(0);
                // Lowest slot that alone satisfied the cap; later slots can be skipped.
                let enough = AtomicUsize::new(usize::MAX);
                std::thread::scope(|scope| {
                    for _ in 0..config.jobs.min(cands.len()) {
                        scope.spawn(|| loop {
                            let k = next.fetch_add(1, Ordering::Relaxed);
                            if k >= cands.len() || k > enough.load(Ordering::Relaxed) {
                                break;
                            }
                            let mut domains = self.initial.clone();
                            domains[var] = BitSet::from_indices(self.codomain.len(), [cands[k]]);
                            let r = run_one(domains);
                            if matches!(&r, Ok(part) if part.len() >= cap) {
                                enough.fetch_min(k, Ordering::Relaxed);
                            }
                            let stop = r.is_err();
                            *slots[k].lock().unwrap() = Some(r);
                            if stop {
                                break;
                            }
                        });
                    }
                });
                let mut merged = Vec::new();
                for slot in slots {
                    match slot.into_inner().unwrap() {
                        Some(Ok(part)) => merged.extend(part),
                        Some(Err(e)) => return Err(e),
                        None => {}
                    }
                    if merged.len() >= cap {
                        break;
                    }
                }
                merged.truncate(cap);
                merged
            }
            _ => run_one(self.initial.clone())?,
        };
        Ok((out, budget.used.load(Ordering::Relaxed)))
    }
}

struct Run<'a> {
    csp: &'a Csp,
    order: &'a [usize],
    position: Vec<usize>,
    domains: Vec<BitSet>,
    assignment: Vec<usize>,
    trail: Vec<(usize, BitSet)>,
    closed: Vec<BitSet>,
    pull: bool,
    ac: bool,
    budget: &'a Budget,
}

impl<'a> Run<'a> {
    fn new(csp: &'a Csp, order: &'a [usize], domains: Vec<BitSet>, pull: bool, budget: &'a Budget) -> Self {
        let m = csp.codomain.len();
        let closed = (0..m)
            .map(|v| {
                let mut s = BitSet::from_indices(m, csp.codomain.neighbor_indices(v).iter().copied());
                s.insert(v);
                s
            })
            .collect();
        let mut position = vec![0; order.len()];
        for (i, &x) in order.iter().enumerate() {
            position[x] = i;
        }
        Run {
            csp,
            order,
            position,
            domains,
            assignment: vec![usize::MAX; order.len()],
            trail: Vec::new(),
            closed,
            pull,
            ac: false,
            budget,
        }
    }

    fn narrow(&mut self, y: usize, mask: &BitSet) -> bool {
        if self.domains[y].loses_bits(mask) {
            let old = self.domains[y].clone();
            self.domains[y].intersect_with(mask);
            self.trail.push((y, old));
        }
        !self.domains[y].is_empty()
    }

    fn narrow_by(&mut self, y: usize, keep: impl Fn(usize) -> bool) -> bool {
        let drop: Vec<usize> = self.domains[y].iter().filter(|&w| !keep(w)).collect();
        if !drop.is_empty() {
            let old = self.domains[y].clone();
            for w in drop {
                self.domains[y].remove(w);
            }
            self.trail.push((y, old));
        }
        !self.domains[y].is_empty()
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (y, old) = self.trail.pop().unwrap();
            self.domains[y] = old;
        }
    }

    fn propagate(&mut self, depth: usize, x: usize, v: usize) -> bool {
        let img = &self.csp.domain;
        for &y in img.neighbor_indices(x) {
            if self.position[y] <= depth {
                continue;
            }
            let mask = self.closed[v].clone();
            if !self.narrow(y, &mask) {
                return false;
            }
            if self.pull {
                let (q, fq) = (img.point(x), self.csp.codomain.point(v));
                let qp = img.point(y);
                for axis in 0..img.dimension() {
                    let (t, s, ft) = (q.coord(axis), qp.coord(axis), fq.coord(axis));
                    let cod = &self.csp.codomain;
                    let ok = if ft > t && t > s {
                        self.narrow_by(y, |w| cod.point(w).coord(axis) > s)
                    } else if ft < t && t < s {
                        self.narrow_by(y, |w| cod.point(w).coord(axis) < s)
                    } else {
                        true
                    };
                    if !ok {
                        return false;
                    }
                }
            }
        }
        if self.csp.injective[x] {
            for &y in &self.csp.priority {
                if y != x && self.position[y] > depth && self.domains[y].contains(v) {
                    let mut mask = BitSet::full(self.csp.codomain.len());
                    mask.remove(v);
                    if !self.narrow(y, &mask) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Revises unassigned variables (order position `>= from`) until every
    /// value of each has a support in the domain of each unassigned neighbor.
    fn arc_consistent(&mut self, from: usize, seeds: impl IntoIterator<Item = usize>) -> bool {
        let n = self.order.len();
        let mut queued = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for y in seeds {
            if self.position[y] >= from && !queued[y] {
                queued[y] = true;
                queue.push_back(y);
            }
        }
        let m = self.csp.codomain.len();
        while let Some(y) = queue.pop_front() {
            queued[y] = false;
            let mut support = BitSet::empty(m);
            for w in self.domains[y].iter() {
                support.union_with(&self.closed[w]);
            }
            for &z in self.csp.domain.neighbor_indices(y) {
                if self.position[z] < from || !self.domains[z].loses_bits(&support) {
                    continue;
                }
                if !self.narrow(z, &support) {
                    return false;
                }
                if !queued[z] {
                    queued[z] = true;
                    queue.push_back(z);
                }
            }
        }
        true
    }

    fn start<F>(&mut self, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.ac && !self.arc_consistent(0, 0..self.order.len()) {
            return Ok(ControlFlow::Continue(()));
        }
        self.descend(0, visit)
    }

    fn descend<F>(&mut self, depth: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return Ok(visit(&self.assignment));
        }
        let x = self.order[depth];
        let cands: Vec<usize> = self.domains[x].iter().collect();
        for v in cands {
            self.budget.tick()?;
            let mark = self.trail.len();
            let ok = self.propagate(depth, x, v) && {
                let changed: Vec<usize> = self.trail[mark..].iter().map(|(y, _)| *y).collect();
                !self.ac || self.arc_consistent(depth + 1, changed)
            };
            if ok {
                self.assignment[x] = v;
                if self.descend(depth + 1, visit)?.is_break() {
                    self.undo(mark);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo(mark);
        }
        self.assignment[x] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Point, PointSet};
    use crate::maps::is_continuous;

    fn line(n: i64) -> Arc<DigitalImage> {
        Arc::new(DigitalImage::lattice_box(&[(0, n)], Adjacency::Cu(1)).unwrap())
    }

    fn count(seed: PartialMap) -> usize {
        let p = ExtensionProblem::new(seed, StopMode::All);
        enumerate_continuous_extensions(&p, &SearchConfig::default())
            .unwrap()
            .maps
            .len()
    }

    #[test]
    fn small_line_counts() {
        assert_eq!(count(PartialMap::on(line(1))), 4);
        assert_eq!(count(PartialMap::on(line(2))), 17);
        let fixed: PointSet = [Point::from(0), Point::from(2)].into_iter().collect();
        let seed = PartialMap::fixing(line(2), &fixed).unwrap();
        let p = ExtensionProblem::new(seed, StopMode::All);
        let maps = enumerate_continuous_extensions(&p, &SearchConfig::default()).unwrap().maps;
        assert_eq!(maps.len(), 1);
        assert_eq!(maps[0], DigitalMap::identity(line(2)));
    }

    #[test]
    fn lexicographic_order_yields_sorted_tables() {
        let cfg = SearchConfig::default().with_order(VariableOrder::Lexicographic);
        let p = ExtensionProblem::new(PartialMap::on(line(3)), StopMode::All);
        let maps = enumerate_continuous_extensions(&p, &cfg).unwrap().maps;
        let tables: Vec<Vec<usize>> = maps.iter().map(|m| m.table().to_vec()).collect();
        let mut sorted = tables.clone();
        sorted.sort();
        assert_eq!(tables, sorted);
        assert!(maps.iter().all(is_continuous));
    }

    #[test]
    fn stop_modes() {
        let img = line(2);
        let id = DigitalMap::identity(img.clone());
        let cfg = SearchConfig::default().with_order(VariableOrder::Lexicographic);
        let first = |stop| {
            enumerate_continuous_extensions(&ExtensionProblem::new(PartialMap::on(img.clone()), stop), &cfg)
                .unwrap()
                .maps
        };
        assert_eq!(first(StopMode::First).len(), 1);
        assert_eq!(first(StopMode::CountUpTo(5)).len(), 5);
        let diff = first(StopMode::FirstDifferingFrom(id.clone()));
        assert_eq!(diff.len(), 1);
        assert_ne!(diff[0], id);
    }

    #[test]
    fn budget_is_a_hard_error() {
        let cfg = SearchConfig::default().with_budget(10);
        let p = ExtensionProblem::new(PartialMap::on(line(4)), StopMode::All);
        assert_eq!(
            enumerate_continuous_extensions(&p, &cfg).unwrap_err(),
            Error::BudgetExceeded { budget: 10 }
        );
    }

    #[test]
    fn parallel_collection_matches_sequential() {
        let img = Arc::new(DigitalImage::lattice_box(&[(0, 2), (0, 1)], Adjacency::Cu(2)).unwrap());
        for stop in [StopMode::All, StopMode::CountUpTo(7), StopMode::First] {
            let p = ExtensionProblem::new(PartialMap::on(img.clone()), stop);
            let seq = enumerate_continuous_extensions(&p, &SearchConfig::default()).unwrap().maps;
            let par = enumerate_continuous_extensions(&p, &SearchConfig::default().with_jobs(4))
                .unwrap()
                .maps;
            assert_eq!(seq, par);
        }
    }

    #[test]
    fn injective_prefix_restricts_to_bijections_on_the_prefix() {
        let img = line(2);
        let mut csp = Csp::new(img.clone(), img.clone());
        let ends = BitSet::from_indices(3, [0, 2]);
        csp.restrict(0, &ends);
        csp.restrict(2, &ends);
        csp.injective_prefix(&[0, 2]);
        let (sols, _) = csp.collect(&SearchConfig::default(), None, |_| true).unwrap();
        assert_eq!(sols, vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }
}
