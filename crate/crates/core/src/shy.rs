//! Shy maps, cut vertices, and the shy retraction onto a subset anchored at
//! cut vertices.

use std::ops::ControlFlow;
use std::sync::Arc;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{DigitalImage, Point, PointSet};
use crate::maps::{is_continuous, is_retraction, DigitalMap, PartialMap};
use crate::search::{for_each_extension, SearchConfig};
use crate::verify::{Property, VerificationReport};

#[derive(Clone, Debug)]
pub struct ShyAnalysis {
    pub map: DigitalMap,
    pub shy: bool,
    /// One point, or an adjacent pair, of `f(X)` whose preimage is not
    /// connected.
    pub violating_fiber: Option<Vec<Point>>,
    pub violating_preimage: Option<PointSet>,
}

fn require_continuous(f: &DigitalMap) -> Result<()> {
    if is_continuous(f) {
        Ok(())
    } else {
        Err(Error::Discontinuous)
    }
}

fn fibers(f: &DigitalMap) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); f.codomain().len()];
    for (i, &v) in f.table().iter().enumerate() {
        out[v].push(i);
    }
    out
}

/// Point fibers and adjacent-pair fibers over `f(X)` must all be connected.
pub fn is_shy(f: &DigitalMap) -> Result<ShyAnalysis> {
    require_continuous(f)?;
    let x = f.domain();
    let y = f.codomain();
    let fib = fibers(f);
    let mut bad: Option<Vec<usize>> = None;
    'outer: for a in 0..y.len() {
        if fib[a].is_empty() {
            continue;
        }
        if !x.indices_connected(&fib[a]) {
            bad = Some(vec![a]);
            break;
        }
        for &b in y.neighbor_indices(a) {
            if b > a && !fib[b].is_empty() {
                let both: Vec<usize> = fib[a].iter().chain(&fib[b]).copied().collect();
                if !x.indices_connected(&both) {
                    bad = Some(vec![a, b]);
                    break 'outer;
                }
            }
        }
    }
    let (violating_fiber, violating_preimage) = match bad {
        None => (None, None),
        Some(ys) => {
            let targets: PointSet = ys.iter().map(|&v| y.point(v).clone()).collect();
            let pre = f.preimage(&targets);
            if x.is_connected_subset(&pre)? {
                return Err(Error::Internal("shy violation did not re-check".into()));
            }
            (Some(targets.into_iter().collect()), Some(pre))
        }
    };
    Ok(ShyAnalysis {
        map: f.clone(),
        shy: violating_fiber.is_none(),
        violating_fiber,
        violating_preimage,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseConnectivity {
    pub preserves: bool,
    /// False when subsets larger than the cap exist and were not examined,
    /// so a `true` answer is only partial.
    pub complete: bool,
    pub size_cap: usize,
    pub subsets_checked: u64,
    pub violating_subset: Option<PointSet>,
}

/// Checks that `f^{-1}(B)` is connected for every connected `B ⊆ f(X)`
/// with at most `cap` points.
pub fn inverse_preserves_connectivity(f: &DigitalMap, cap: usize) -> Result<InverseConnectivity> {
    require_continuous(f)?;
    let x = f.domain();
    let y = f.codomain();
    let fib = fibers(f);
    let range: Vec<usize> = (0..y.len()).filter(|&v| !fib[v].is_empty()).collect();
    let mut in_range = vec![false; y.len()];
    for &v in &range {
        in_range[v] = true;
    }
    let nbrs: Vec<Vec<usize>> = (0..y.len())
        .map(|v| y.neighbor_indices(v).iter().copied().filter(|&w| in_range[w]).collect())
        .collect();
    let mut out = InverseConnectivity {
        preserves: true,
        complete: cap >= range.len(),
        size_cap: cap,
        subsets_checked: 0,
        violating_subset: None,
    };
    let mut check = |sub: &[usize]| -> ControlFlow<()> {
        out.subsets_checked += 1;
        let pre: Vec<usize> = sub.iter().flat_map(|&v| fib[v].iter().copied()).collect();
        if x.indices_connected(&pre) {
            ControlFlow::Continue(())
        } else {
            out.preserves = false;
            out.violating_subset = Some(sub.iter().map(|&v| y.point(v).clone()).collect());
            ControlFlow::Break(())
        }
    };
    for &v in &range {
        let ext: Vec<usize> = nbrs[v].iter().copied().filter(|&w| w > v).collect();
        if connected_subsets(&nbrs, v, &mut vec![v], ext, cap, &mut check).is_break() {
            break;
        }
    }
    if let Some(b) = &out.violating_subset {
        if x.is_connected_subset(&f.preimage(b))? {
            return Err(Error::Internal("inverse connectivity violation did not re-check".into()));
        }
    }
    Ok(out)
}

/// Enumerates each connected vertex set with least element `root` once,
/// extending by neighbors that are exclusive to the newest vertex.
fn connected_subsets(
    nbrs: &[Vec<usize>],
    root: usize,
    sub: &mut Vec<usize>,
    mut ext: Vec<usize>,
    cap: usize,
    visit: &mut impl FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    visit(sub)?;
    if sub.len() >= cap {
        return ControlFlow::Continue(());
    }
    while let Some(w) = ext.pop() {
        let mut next = ext.clone();
        for &u in &nbrs[w] {
            if u > root
                && !sub.contains(&u)
                && !next.contains(&u)
                && !sub.iter().any(|&s| nbrs[s].contains(&u))
            {
                next.push(u);
            }
        }
        sub.push(w);
        let r = connected_subsets(nbrs, root, sub, next, cap, visit);
        sub.pop();
        r?;
    }
    ControlFlow::Continue(())
}

/// Cut vertices of a connected image.
pub fn articulation_points(x: &DigitalImage) -> Result<PointSet> {
    if !x.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = x.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut cut = vec![false; n];
    let mut time = 0;
    // Iterative DFS: (vertex, parent, next neighbor position).
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    disc[0] = 0;
    low[0] = 0;
    let mut root_children = 0;
    while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
        let nb = x.neighbor_indices(v);
        if *pos < nb.len() {
            let w = nb[*pos];
            *pos += 1;
            if disc[w] == usize::MAX {
                time += 1;
                disc[w] = time;
                low[w] = time;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, v, 0));
            } else if w != parent {
                low[v] = low[v].min(disc[w]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[v]);
                if parent != 0 && low[v] >= disc[parent] {
                    cut[parent] = true;
                }
            }
        }
    }
    cut[0] = root_children > 1;
    Ok((0..n).filter(|&i| cut[i]).map(|i| x.point(i).clone()).collect())
}

/// The shy retraction together with the anchor chosen for each component
/// of `X \ R`.
#[derive(Clone, Debug)]
pub struct ShyRetraction {
    pub map: DigitalMap,
    pub anchors: Vec<(PointSet, Point)>,
}

/// `r(x) = x` on `R` and `r(x) = p_x` off `R`, where `p_x` is the least
/// point of `A` that cuts the component of `x` in `X \ R` off from `R`.
pub fn build_shy_retraction(x: &Arc<DigitalImage>, r: &PointSet, a: &PointSet) -> Result<ShyRetraction> {
    if a.is_empty() || r.is_empty() {
        return Err(Error::EmptySet);
    }
    for p in r {
        x.require_index(p)?;
    }
    if !a.is_subset(r) {
        return Err(Error::Hypothesis("A must be a subset of R".into()));
    }
    let rest: PointSet = x.point_set().difference(r).cloned().collect();
    let mut anchors = Vec::new();
    if !rest.is_empty() {
        for k in x.subimage(&rest)?.components() {
            let p = a
                .iter()
                .find(|p| separates(x, &k, r, p))
                .ok_or_else(|| {
                    Error::Hypothesis(format!(
                        "no point of A cuts the component {} off from R",
                        crate::verify::fmt_set(&k)
                    ))
                })?
                .clone();
            anchors.push((k, p));
        }
    }
    let target = Arc::new(x.subimage(r)?);
    let map = DigitalMap::from_fn(x.clone(), target, |q| {
        anchors
            .iter()
            .find(|(k, _)| k.contains(q))
            .map(|(_, p)| p.clone())
            .unwrap_or_else(|| q.clone())
    })?;
    if !is_retraction(&map, r)? || !is_shy(&map)?.shy {
        return Err(Error::Internal("constructed retraction is not a shy retraction".into()));
    }
    Ok(ShyRetraction { map, anchors })
}

/// `K` is a component of `(K ∪ R) \ {p}`, and `p` touches `K`.
fn separates(x: &DigitalImage, k: &PointSet, r: &PointSet, p: &Point) -> bool {
    let touches = |q: &Point, set: &PointSet| {
        x.neighbors(q).map(|n| n.iter().any(|m| set.contains(m))).unwrap_or(false)
    };
    touches(p, k) && !r.iter().filter(|q| *q != p).any(|q| touches(q, k))
}

/// Leaves of the subtree `R` that are not leaves of `X`.
pub fn tree_anchor_points(x: &DigitalImage, r: &PointSet) -> Result<PointSet> {
    let sub = x.subimage(r)?;
    let mut out = PointSet::new();
    for p in r {
        if sub.degree(p)? == 1 && x.degree(p)? != 1 {
            out.insert(p.clone());
        }
    }
    Ok(out)
}

/// Points of `R` adjacent to `X \ R`.
pub fn attachment_points(x: &DigitalImage, r: &PointSet) -> Result<PointSet> {
    let mut out = PointSet::new();
    for p in r {
        if x.neighbors(p)?.iter().any(|q| !r.contains(q)) {
            out.insert(p.clone());
        }
    }
    Ok(out)
}

/// The shy retraction of a tree onto a nonempty subtree. Anchors are the
/// leaves of `R` that are not leaves of `X`, plus every point where a
/// branch leaves `R`; the leaf rule alone misses branches hanging off an
/// interior point of `R`.
pub fn tree_shy_retraction(x: &Arc<DigitalImage>, r: &PointSet) -> Result<DigitalMap> {
    if !x.is_connected() || x.edge_count() + 1 != x.len() {
        return Err(Error::Hypothesis("the image is not a tree".into()));
    }
    if r.is_empty() {
        return Err(Error::EmptySet);
    }
    if !x.is_connected_subset(r)? {
        return Err(Error::Hypothesis("R is not a subtree".into()));
    }
    if r.len() == x.len() {
        return DigitalMap::identity(x.clone()).with_codomain(Arc::new(x.subimage(r)?));
    }
    let mut a = tree_anchor_points(x, r)?;
    a.extend(attachment_points(x, r)?);
    Ok(build_shy_retraction(x, r, &a)?.map)
}

/// Enumerates every retraction `X -> R` and keeps the shy ones. Holds when
/// exactly one exists and it matches the constructed retraction. Witnesses
/// are the shy retractions found (at most three).
pub fn verify_unique_shy_retraction(
    x: &Arc<DigitalImage>,
    r: &PointSet,
    config: &SearchConfig,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let built = build_shy_retraction(x, r, r)?.map;
    let target = built.codomain().clone();
    let mut seed = PartialMap::new(x.clone(), target);
    for p in r {
        seed.assign(p.clone(), p.clone())?;
    }
    let mut shy = Vec::new();
    let mut failure = None;
    let nodes = for_each_extension(&seed, config, |f| match is_shy(f) {
        Ok(a) if a.shy => {
            shy.push(f.clone());
            if shy.len() > 2 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        }
        Ok(_) => ControlFlow::Continue(()),
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let holds = shy.len() == 1 && shy[0] == built;
    Ok(VerificationReport {
        property: Property::ShyRetraction,
        holds,
        witnesses: if holds { Vec::new() } else { shy },
        violating_points: Vec::new(),
        parts: Vec::new(),
        nodes_explored: nodes,
        elapsed: started.elapsed(),
    })
}
