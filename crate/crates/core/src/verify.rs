//! Exact decision procedures for freezing, cold, unifying and related
//! properties of a point set `A` in a digital image `X`.
//!
//! Every procedure is a search over continuous self-maps of `X`. A report
//! that says a property fails carries counterexample maps, and each one is
//! re-checked with the plain predicates from [`crate::maps`] before it is
//! returned. Search order is canonical when a witness is produced, so the
//! same input always yields the same witness.

use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::{product_image, DigitalImage, Point, PointSet};
use crate::maps::{approximate_fixed_points, fixed_points, is_continuous, is_isomorphism, DigitalMap, PartialMap};
use crate::search::{Csp, SearchConfig, VariableOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Freezing,
    Cold,
    Unifying,
    MinimalFreezing,
    MinimalUnifying,
    AfpPropagation,
    ForcedIsomorphism,
    UnifyingProjection,
    ShyRetraction,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Freezing => "freezing",
            Property::Cold => "cold",
            Property::Unifying => "unifying",
            Property::MinimalFreezing => "minimal_freezing",
            Property::MinimalUnifying => "minimal_unifying",
            Property::AfpPropagation => "afp_propagation",
            Property::ForcedIsomorphism => "forced_isomorphism",
            Property::UnifyingProjection => "unifying_projection",
            Property::ShyRetraction => "shy_retraction",
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub property: Property,
    pub holds: bool,
    /// Counterexample maps when `holds` is false. A unifying failure gives
    /// two maps that agree on `A`.
    pub witnesses: Vec<DigitalMap>,
    /// Points singled out by the failure: where a cold/AFP witness moves too
    /// far, or which point of a non-minimal set can be dropped.
    pub violating_points: Vec<Point>,
    /// Sub-verifications this report was assembled from.
    pub parts: Vec<VerificationReport>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn new(property: Property) -> Self {
        VerificationReport {
            property,
            holds: true,
            witnesses: Vec::new(),
            violating_points: Vec::new(),
            parts: Vec::new(),
            nodes_explored: 0,
            elapsed: Duration::ZERO,
        }
    }
}

/// Tracks the node budget shared by all searches of one verification.
struct Session {
    config: SearchConfig,
    used: u64,
    started: Instant,
}

impl Session {
    fn new(config: &SearchConfig) -> Self {
        Session {
            config: config.clone(),
            used: 0,
            started: Instant::now(),
        }
    }

    fn search_config(&self, order: Option<VariableOrder>) -> SearchConfig {
        let mut c = self.config.clone().with_budget(self.config.budget.saturating_sub(self.used));
        if let Some(o) = order {
            c = c.with_order(o);
        }
        c
    }

    fn charge<T>(&mut self, r: Result<(T, u64)>) -> Result<T> {
        match r {
            Ok((v, n)) => {
                self.used += n;
                Ok(v)
            }
            Err(Error::BudgetExceeded { .. }) => Err(Error::BudgetExceeded {
                budget: self.config.budget,
            }),
            Err(e) => Err(e),
        }
    }

    fn first<F>(&mut self, csp: &Csp, order: Option<VariableOrder>, filter: F) -> Result<Option<Vec<usize>>>
    where
        F: Fn(&[usize]) -> bool + Sync,
    {
        let cfg = self.search_config(order);
        let r = csp.collect(&cfg, Some(1), filter);
        Ok(self.charge(r)?.pop())
    }

    fn visit<F>(&mut self, csp: &Csp, order: Option<VariableOrder>, visit: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let cfg = self.search_config(order);
        let r = csp.visit(&cfg, visit).map(|n| ((), n));
        self.charge(r)
    }

    fn finish(&self, mut report: VerificationReport) -> VerificationReport {
        report.nodes_explored = self.used;
        report.elapsed = self.started.elapsed();
        report
    }
}

fn require_subset(x: &DigitalImage, a: &PointSet) -> Result<Vec<usize>> {
    a.iter().map(|p| x.require_index(p)).collect()
}

fn closed_mask(x: &DigitalImage, i: usize) -> BitSet {
    let mut s = BitSet::from_indices(x.len(), x.neighbor_indices(i).iter().copied());
    s.insert(i);
    s
}

fn fixing_csp(x: &Arc<DigitalImage>, a: &[usize]) -> Csp {
    let mut csp = Csp::new(x.clone(), x.clone());
    for &i in a {
        csp.restrict(i, &BitSet::from_indices(x.len(), [i]));
    }
    csp
}

/// Self-maps with `f(A) = A`: values on `A` restricted to `A` and distinct.
fn setwise_csp(x: &Arc<DigitalImage>, a: &[usize]) -> Csp {
    let mut csp = Csp::new(x.clone(), x.clone());
    let mask = BitSet::from_indices(x.len(), a.iter().copied());
    for &i in a {
        csp.restrict(i, &mask);
    }
    csp.injective_prefix(a);
    csp
}

fn to_map(x: &Arc<DigitalImage>, t: Vec<usize>) -> Result<DigitalMap> {
    DigitalMap::from_table(x.clone(), x.clone(), t)
}

fn recheck(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Internal(format!("witness failed independent re-check: {what}")))
    }
}

fn fixes(f: &DigitalMap, a: &PointSet) -> Result<bool> {
    Ok(a.is_subset(&fixed_points(f)?))
}

/// Points `x` with `f(x)` outside `N*(x)`.
fn afp_violations(f: &DigitalMap) -> Result<Vec<Point>> {
    let afix = approximate_fixed_points(f)?;
    Ok(f.domain().points().iter().filter(|p| !afix.contains(*p)).cloned().collect())
}

#[derive(Clone, Debug, Default)]
pub struct Verifier {
    pub config: SearchConfig,
}

impl Verifier {
    pub fn new(config: SearchConfig) -> Self {
        Verifier { config }
    }

    /// Is the identity the only continuous self-map fixing `A` pointwise?
    /// The witness on failure is the lexicographically least other one.
    pub fn verify_freezing(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let r = self.freezing(&mut s, x, a)?;
        Ok(s.finish(r))
    }

    fn freezing(&self, s: &mut Session, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let ai = require_subset(x, a)?;
        let csp = fixing_csp(x, &ai);
        let id: Vec<usize> = (0..x.len()).collect();
        let mut report = VerificationReport::new(Property::Freezing);
        let not_id = |t: &[usize]| t != id.as_slice();
        if s.first(&csp, None, not_id)?.is_none() {
            return Ok(report);
        }
        let t = s
            .first(&csp, Some(VariableOrder::Lexicographic), not_id)?
            .ok_or_else(|| Error::Internal("witness vanished under lexicographic search".into()))?;
        let g = to_map(x, t)?;
        recheck(is_continuous(&g) && fixes(&g, a)? && g != DigitalMap::identity(x.clone()), "freezing")?;
        report.holds = false;
        report.violating_points = fixed_points(&g)?.symmetric_difference(&x.point_set()).cloned().collect();
        report.witnesses.push(g);
        Ok(report)
    }

    /// Does every continuous self-map fixing `A` pointwise keep each point
    /// within one step of itself?
    pub fn verify_cold(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        if !x.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut s = Session::new(&self.config);
        let ai = require_subset(x, a)?;
        let csp = fixing_csp(x, &ai);
        let mut r = self.afp_search(&mut s, x, &csp, Property::Cold)?;
        if let Some(g) = r.witnesses.first() {
            recheck(is_continuous(g) && fixes(g, a)? && !afp_violations(g)?.is_empty(), "cold")?;
        }
        r = s.finish(r);
        Ok(r)
    }

    /// Does every continuous self-map with `f(a) ∈ N*(a)` on `A` satisfy
    /// `f(x) ∈ N*(x)` everywhere?
    pub fn verify_afp_propagation(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let ai = require_subset(x, a)?;
        let mut csp = Csp::new(x.clone(), x.clone());
        for &i in &ai {
            csp.restrict(i, &closed_mask(x, i));
        }
        let r = self.afp_search(&mut s, x, &csp, Property::AfpPropagation)?;
        if let Some(g) = r.witnesses.first() {
            let afix = approximate_fixed_points(g)?;
            recheck(
                is_continuous(g) && a.is_subset(&afix) && afix.len() < x.len(),
                "approximate fixed point propagation",
            )?;
        }
        Ok(s.finish(r))
    }

    /// One targeted search per point `x`: is there a solution of `csp` with
    /// `f(x)` outside `N*(x)`? The witness is the least such map over all
    /// `x`, which is the least violating map overall.
    fn afp_search(
        &self,
        s: &mut Session,
        x: &Arc<DigitalImage>,
        csp: &Csp,
        property: Property,
    ) -> Result<VerificationReport> {
        let mut report = VerificationReport::new(property);
        let n = x.len();
        let mut bad = Vec::new();
        for i in 0..n {
            let mut far = BitSet::full(n);
            for j in closed_mask(x, i).iter() {
                far.remove(j);
            }
            let mut c = csp.clone();
            c.restrict(i, &far);
            if s.first(&c, None, |_| true)?.is_some() {
                bad.push(c);
            }
        }
        if bad.is_empty() {
            return Ok(report);
        }
        let mut best: Option<Vec<usize>> = None;
        for c in &bad {
            let t = s
                .first(c, Some(VariableOrder::Lexicographic), |_| true)?
                .ok_or_else(|| Error::Internal("witness vanished under lexicographic search".into()))?;
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        let g = to_map(x, best.unwrap())?;
        report.holds = false;
        report.violating_points = afp_violations(&g)?;
        report.witnesses.push(g);
        Ok(report)
    }

    /// Do any two continuous self-maps that agree on `A` and map `A` onto
    /// `A` coincide? Decided by checking that each bijection of `A` extends
    /// in at most one way.
    pub fn verify_unifying(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let r = self.unifying(&mut s, x, a)?;
        Ok(s.finish(r))
    }

    fn unifying(&self, s: &mut Session, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        if a.is_empty() {
            return Err(Error::EmptySet);
        }
        let ai = require_subset(x, a)?;
        let csp = setwise_csp(x, &ai);
        let mut report = VerificationReport::new(Property::Unifying);
        let find_pair = |s: &mut Session, order| -> Result<Option<(Vec<usize>, Vec<usize>)>> {
            let mut prev: Option<Vec<usize>> = None;
            let mut pair = None;
            s.visit(&csp, order, |t| {
                if let Some(p) = &prev {
                    if ai.iter().all(|&i| p[i] == t[i]) {
                        pair = Some((p.clone(), t.to_vec()));
                        return ControlFlow::Break(());
                    }
                }
                prev = Some(t.to_vec());
                ControlFlow::Continue(())
            })?;
            Ok(pair)
        };
        if find_pair(s, None)?.is_none() {
            return Ok(report);
        }
        let (f, g) = find_pair(s, Some(VariableOrder::Lexicographic))?
            .ok_or_else(|| Error::Internal("witness vanished under lexicographic search".into()))?;
        let (f, g) = (to_map(x, f)?, to_map(x, g)?);
        let agree = a.iter().all(|p| f.apply(p).ok() == g.apply(p).ok());
        recheck(
            is_continuous(&f) && is_continuous(&g) && f != g && agree && &f.image_of(a)? == a && &g.image_of(a)? == a,
            "unifying",
        )?;
        report.holds = false;
        report.violating_points = x
            .points()
            .iter()
            .filter(|p| f.apply(p).ok() != g.apply(p).ok())
            .cloned()
            .collect();
        report.witnesses = vec![f, g];
        Ok(report)
    }

    /// Is every continuous self-map with `f(A) = A` an isomorphism?
    pub fn verify_forced_isomorphism(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let ai = require_subset(x, a)?;
        let mut report = VerificationReport::new(Property::ForcedIsomorphism);
        // A continuous bijection of a finite graph onto itself is an
        // isomorphism, so it is enough to look for a non-injective map.
        let not_injective = |t: &[usize]| {
            let mut seen = vec![false; t.len()];
            t.iter().any(|&v| std::mem::replace(&mut seen[v], true))
        };
        let csp = if ai.is_empty() {
            Csp::new(x.clone(), x.clone())
        } else {
            setwise_csp(x, &ai)
        };
        if s.first(&csp, None, not_injective)?.is_none() {
            return Ok(s.finish(report));
        }
        let t = s
            .first(&csp, Some(VariableOrder::Lexicographic), not_injective)?
            .ok_or_else(|| Error::Internal("witness vanished under lexicographic search".into()))?;
        let g = to_map(x, t)?;
        recheck(is_continuous(&g) && &g.image_of(a)? == a && !is_isomorphism(&g), "forced isomorphism")?;
        report.holds = false;
        report.witnesses.push(g);
        Ok(s.finish(report))
    }

    /// `A` is freezing and no `A \ {a}` is.
    pub fn verify_minimal_freezing(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let base = self.freezing(&mut s, x, a)?;
        if !base.holds {
            return Err(Error::BaseFails(format!("{} is not a freezing set", fmt_set(a))));
        }
        let r = self.minimal(&mut s, a, Property::MinimalFreezing, |v, s, b| v.freezing(s, x, b))?;
        Ok(s.finish(r))
    }

    /// `A` is unifying and no `A \ {a}` is.
    pub fn verify_minimal_unifying(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<VerificationReport> {
        let mut s = Session::new(&self.config);
        let base = self.unifying(&mut s, x, a)?;
        if !base.holds {
            return Err(Error::BaseFails(format!("{} is not a unifying set", fmt_set(a))));
        }
        let r = self.minimal(&mut s, a, Property::MinimalUnifying, |v, s, b| {
            if b.is_empty() {
                // The empty set is unifying only when X has a single
                // continuous self-map, which means a single point.
                let mut r = VerificationReport::new(Property::Unifying);
                r.holds = x.len() == 1;
                Ok(r)
            } else {
                v.unifying(s, x, b)
            }
        })?;
        Ok(s.finish(r))
    }

    fn minimal<F>(&self, s: &mut Session, a: &PointSet, property: Property, base: F) -> Result<VerificationReport>
    where
        F: Fn(&Self, &mut Session, &PointSet) -> Result<VerificationReport>,
    {
        let mut report = VerificationReport::new(property);
        for p in a {
            let mut b = a.clone();
            b.remove(p);
            let sub = base(self, s, &b)?;
            if sub.holds {
                report.holds = false;
                report.violating_points.push(p.clone());
            }
            report.parts.push(sub);
        }
        Ok(report)
    }

    /// For a product of `u` factors under `NP_u`, checks that a unifying
    /// product set `A_1 × ... × A_u` has unifying factors. The product and
    /// factor verifications are returned as `parts` (product first).
    pub fn verify_unifying_projection(
        &self,
        factors: &[Arc<DigitalImage>],
        u: usize,
        sets: &[PointSet],
    ) -> Result<VerificationReport> {
        if u != factors.len() {
            return Err(Error::Hypothesis(format!(
                "projection check needs u equal to the number of factors ({}), got {u}",
                factors.len()
            )));
        }
        if sets.len() != factors.len() {
            return Err(Error::ImageMismatch("one point set per factor is required".into()));
        }
        let started = Instant::now();
        let refs: Vec<&DigitalImage> = factors.iter().map(|f| f.as_ref()).collect();
        let product = Arc::new(product_image(&refs, u)?);
        let mut prod_set = vec![Vec::<i64>::new()];
        for (f, a) in factors.iter().zip(sets) {
            require_subset(f, a)?;
            prod_set = prod_set
                .into_iter()
                .flat_map(|head| {
                    a.iter().map(move |p| {
                        let mut c = head.clone();
                        c.extend_from_slice(p.coords());
                        c
                    })
                })
                .collect();
        }
        let prod_set: PointSet = prod_set.into_iter().map(Point::new).collect();
        let whole = self.verify_unifying(&product, &prod_set)?;
        let parts: Vec<VerificationReport> = factors
            .iter()
            .zip(sets)
            .map(|(f, a)| self.verify_unifying(f, a))
            .collect::<Result<_>>()?;
        let mut report = VerificationReport::new(Property::UnifyingProjection);
        if whole.holds {
            for p in &parts {
                if !p.holds {
                    report.holds = false;
                    report.witnesses.extend(p.witnesses.iter().cloned());
                }
            }
        }
        report.nodes_explored = whole.nodes_explored + parts.iter().map(|p| p.nodes_explored).sum::<u64>();
        report.parts = std::iter::once(whole).chain(parts).collect();
        report.elapsed = started.elapsed();
        Ok(report)
    }

    /// Verifies freezing and unifying on the same instance. Freezing follows
    /// from unifying; whether the converse can fail is open, so this only
    /// reports what it sees.
    pub fn compare_freezing_unifying(&self, x: &Arc<DigitalImage>, a: &PointSet) -> Result<(bool, bool)> {
        let f = self.verify_freezing(x, a)?.holds;
        let u = if a.is_empty() {
            x.len() == 1
        } else {
            self.verify_unifying(x, a)?.holds
        };
        Ok((f, u))
    }

    /// Searches the subsets of `X` with at most `max_size` points for one
    /// that is freezing but not unifying. Subsets are tried by size, then in
    /// point order.
    pub fn find_freezing_not_unifying(&self, x: &Arc<DigitalImage>, max_size: usize) -> Result<Option<PointSet>> {
        let pts = x.points();
        for k in 1..=max_size.min(pts.len()) {
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                let a: PointSet = idx.iter().map(|&i| pts[i].clone()).collect();
                let (f, u) = self.compare_freezing_unifying(x, &a)?;
                if f && !u {
                    return Ok(Some(a));
                }
                if !next_combination(&mut idx, pts.len()) {
                    break;
                }
            }
        }
        Ok(None)
    }
}

/// Advances `idx` to the next `k`-combination of `0..n` in lexicographic
/// order; false after the last one.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) fn fmt_set(a: &PointSet) -> String {
    let parts: Vec<String> = a.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Seed for "extensions of the identity on `A`", exposed for callers who
/// want to enumerate those maps themselves.
pub fn identity_seed(x: &Arc<DigitalImage>, a: &PointSet) -> Result<PartialMap> {
    PartialMap::fixing(x.clone(), a)
}
