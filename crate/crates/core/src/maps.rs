//! Functions between digital images, stored as total lookup tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{product_image, split_point, Adjacency, DigitalImage, Point, PointSet};

/// A total function from the points of `domain` to the points of `codomain`.
#[derive(Clone)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

fn same_image(a: &Arc<DigitalImage>, b: &Arc<DigitalImage>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl DigitalMap {
    /// Builds a map from codomain indices, one per domain point in domain order.
    pub fn from_table(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        table: Vec<usize>,
    ) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(Error::InvalidMap(format!(
                "table has {} entries for {} domain points",
                table.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain.len()) {
            return Err(Error::InvalidMap(format!("codomain index {bad} out of range")));
        }
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn from_fn<F>(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, f: F) -> Result<Self>
    where
        F: Fn(&Point) -> Point,
    {
        let table = domain
            .points()
            .iter()
            .map(|p| codomain.require_index(&f(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    /// Builds a map from explicit pairs; every domain point must appear.
    pub fn from_pairs<I>(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Point, Point)>,
    {
        let mut table = vec![usize::MAX; domain.len()];
        for (a, b) in pairs {
            let i = domain.require_index(&a)?;
            table[i] = codomain.require_index(&b)?;
        }
        if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "no value for {}",
                domain.point(i)
            )));
        }
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn identity(image: Arc<DigitalImage>) -> Self {
        let table = (0..image.len()).collect();
        DigitalMap {
            domain: image.clone(),
            codomain: image,
            table,
        }
    }

    /// The constant map onto `value`.
    pub fn constant(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>, value: &Point) -> Result<Self> {
        let v = codomain.require_index(value)?;
        let table = vec![v; domain.len()];
        Ok(DigitalMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_self_map(&self) -> bool {
        same_image(&self.domain, &self.codomain)
    }

    pub fn apply(&self, p: &Point) -> Result<&Point> {
        let i = self.domain.require_index(p)?;
        Ok(self.codomain.point(self.table[i]))
    }

    /// Value at the `i`-th domain point.
    pub fn value_at(&self, i: usize) -> &Point {
        self.codomain.point(self.table[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        self.domain
            .points()
            .iter()
            .zip(&self.table)
            .map(|(p, &v)| (p, self.codomain.point(v)))
    }

    /// `f(S)` for `S` a subset of the domain.
    pub fn image_of(&self, subset: &PointSet) -> Result<PointSet> {
        subset.iter().map(|p| self.apply(p).cloned()).collect()
    }

    /// `f(X)`.
    pub fn range(&self) -> PointSet {
        self.table.iter().map(|&v| self.codomain.point(v).clone()).collect()
    }

    /// `f^{-1}(S)` for `S` a subset of the codomain.
    pub fn preimage(&self, targets: &PointSet) -> PointSet {
        self.pairs()
            .filter(|(_, q)| targets.contains(*q))
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Same assignment viewed with another codomain containing every value.
    pub fn with_codomain(&self, codomain: Arc<DigitalImage>) -> Result<Self> {
        DigitalMap::from_fn(self.domain.clone(), codomain, |p| {
            self.apply(p).expect("domain point").clone()
        })
    }
}

impl PartialEq for DigitalMap {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && same_image(&self.domain, &other.domain)
            && same_image(&self.codomain, &other.codomain)
    }
}

impl Eq for DigitalMap {}

impl fmt::Display for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a} -> {b}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a list of `[source, target]` pairs in domain order.
impl Serialize for DigitalMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.table.len()))?;
        for pair in self.pairs() {
            seq.serialize_element(&pair)?;
        }
        seq.end()
    }
}

/// A partial assignment plus optional per-point candidate sets; the seed of
/// an extension search.
#[derive(Clone, Debug)]
pub struct PartialMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    assignment: BTreeMap<Point, Point>,
    restrictions: BTreeMap<Point, PointSet>,
}

impl PartialMap {
    pub fn new(domain: Arc<DigitalImage>, codomain: Arc<DigitalImage>) -> Self {
        PartialMap {
            domain,
            codomain,
            assignment: BTreeMap::new(),
            restrictions: BTreeMap::new(),
        }
    }

    /// An empty partial self-map.
    pub fn on(image: Arc<DigitalImage>) -> Self {
        PartialMap::new(image.clone(), image)
    }

    /// The partial identity on `fixed`.
    pub fn fixing(image: Arc<DigitalImage>, fixed: &PointSet) -> Result<Self> {
        let mut m = PartialMap::on(image);
        for a in fixed {
            m.assign(a.clone(), a.clone())?;
        }
        Ok(m)
    }

    pub fn assign(&mut self, from: Point, to: Point) -> Result<()> {
        self.domain.require_index(&from)?;
        self.codomain.require_index(&to)?;
        if let Some(r) = self.restrictions.get(&from) {
            if !r.contains(&to) {
                return Err(Error::InvalidMap(format!(
                    "{from} -> {to} violates the candidate set of {from}"
                )));
            }
        }
        self.assignment.insert(from, to);
        Ok(())
    }

    /// Narrows the candidates of `at` to `candidates` (intersected with any
    /// earlier restriction).
    pub fn restrict(&mut self, at: Point, candidates: PointSet) -> Result<()> {
        self.domain.require_index(&at)?;
        for c in &candidates {
            self.codomain.require_index(c)?;
        }
        let merged = match self.restrictions.remove(&at) {
            Some(old) => old.intersection(&candidates).cloned().collect(),
            None => candidates,
        };
        if let Some(v) = self.assignment.get(&at) {
            if !merged.contains(v) {
                return Err(Error::InvalidMap(format!(
                    "assigned value {v} of {at} lies outside its candidate set"
                )));
            }
        }
        self.restrictions.insert(at, merged);
        Ok(())
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    pub fn assignment(&self) -> &BTreeMap<Point, Point> {
        &self.assignment
    }

    pub fn restrictions(&self) -> &BTreeMap<Point, PointSet> {
        &self.restrictions
    }
}

/// Edge-preservation test: every domain edge lands on an edge or a single
/// point. Equivalent to connectedness preservation.
pub fn is_continuous(f: &DigitalMap) -> bool {
    let cod = &f.codomain;
    f.domain
        .edges()
        .all(|(i, j)| cod.adjacent_or_equal_indices(f.table[i], f.table[j]))
}

/// `g ∘ f`.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap> {
    if !same_image(&f.codomain, &g.domain) {
        return Err(Error::ImageMismatch(
            "codomain of the inner map differs from the domain of the outer map".into(),
        ));
    }
    let table = f.table.iter().map(|&v| g.table[v]).collect();
    Ok(DigitalMap {
        domain: f.domain.clone(),
        codomain: g.codomain.clone(),
        table,
    })
}

/// The inverse of a bijection, or `None` when `f` is not bijective.
pub fn inverse(f: &DigitalMap) -> Option<DigitalMap> {
    if f.domain.len() != f.codomain.len() {
        return None;
    }
    let mut inv = vec![usize::MAX; f.codomain.len()];
    for (i, &v) in f.table.iter().enumerate() {
        if inv[v] != usize::MAX {
            return None;
        }
        inv[v] = i;
    }
    Some(DigitalMap {
        domain: f.codomain.clone(),
        codomain: f.domain.clone(),
        table: inv,
    })
}

/// Continuous bijection with continuous inverse.
pub fn is_isomorphism(f: &DigitalMap) -> bool {
    match inverse(f) {
        Some(inv) => is_continuous(f) && is_continuous(&inv),
        None => false,
    }
}

/// `r: X -> A` is a retraction when continuous and `r(a) = a` on `A`.
/// The codomain of `r` must be the image on exactly the points of `retract`.
pub fn is_retraction(r: &DigitalMap, retract: &PointSet) -> Result<bool> {
    for a in retract {
        r.domain.require_index(a)?;
    }
    if &r.codomain.point_set() != retract {
        return Err(Error::ImageMismatch("codomain of a retraction must equal the retract".into()));
    }
    if !is_continuous(r) {
        return Ok(false);
    }
    for a in retract {
        if r.apply(a)? != a {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Fix(f)`.
pub fn fixed_points(f: &DigitalMap) -> Result<PointSet> {
    if !f.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    Ok(f.table
        .iter()
        .enumerate()
        .filter(|(i, &v)| *i == v)
        .map(|(i, _)| f.domain.point(i).clone())
        .collect())
}

/// Points `x` with `x` adjacent or equal to `f(x)`.
pub fn approximate_fixed_points(f: &DigitalMap) -> Result<PointSet> {
    if !f.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    Ok(f.table
        .iter()
        .enumerate()
        .filter(|(i, &v)| f.domain.adjacent_or_equal_indices(*i, v))
        .map(|(i, _)| f.domain.point(i).clone())
        .collect())
}

/// Coordinate projection `p_axis` (0-based) over a lattice image.
pub fn projection(image: &DigitalImage, axis: usize) -> Result<BTreeMap<Point, i64>> {
    if !image.is_lattice() {
        return Err(Error::AbstractImage);
    }
    if axis >= image.dimension() {
        return Err(Error::DimensionMismatch {
            expected: image.dimension(),
            found: axis + 1,
        });
    }
    Ok(image
        .points()
        .iter()
        .map(|p| (p.clone(), p.coord(axis)))
        .collect())
}

/// Checks the coordinate "pull" property of a continuous self-map on a
/// `c_u` image: for adjacent `q, q'` and every axis `i`,
/// `f(q)_i > q_i > q'_i` forces `f(q')_i > q'_i`, and symmetrically for `<`.
pub fn check_pull_property(f: &DigitalMap) -> Result<bool> {
    if !f.is_self_map() {
        return Err(Error::NotSelfMap);
    }
    if !matches!(f.domain.adjacency(), Adjacency::Cu(_)) {
        return Err(Error::InvalidAdjacency(
            "pull property is defined for c_u adjacencies only".into(),
        ));
    }
    if !is_continuous(f) {
        return Err(Error::Discontinuous);
    }
    let x = &f.domain;
    for (a, b) in x.edges() {
        for (qi, qpi) in [(a, b), (b, a)] {
            let (q, qp) = (x.point(qi), x.point(qpi));
            let (fq, fqp) = (f.value_at(qi), f.value_at(qpi));
            for axis in 0..x.dimension() {
                let (t, s) = (q.coord(axis), qp.coord(axis));
                if fq.coord(axis) > t && t > s && fqp.coord(axis) <= s {
                    return Ok(false);
                }
                if fq.coord(axis) < t && t < s && fqp.coord(axis) >= s {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Coordinatewise product `(x_1, ..., x_v) -> (f_1(x_1), ..., f_v(x_v))`
/// between the `NP_u` products of the factor domains and codomains.
pub fn product_map(factors: &[&DigitalMap], u: usize) -> Result<DigitalMap> {
    let domains: Vec<&DigitalImage> = factors.iter().map(|f| f.domain.as_ref()).collect();
    let codomains: Vec<&DigitalImage> = factors.iter().map(|f| f.codomain.as_ref()).collect();
    let domain = Arc::new(product_image(&domains, u)?);
    let codomain = Arc::new(product_image(&codomains, u)?);
    let dims: Vec<usize> = domains.iter().map(|d| d.dimension()).collect();
    DigitalMap::from_fn(domain, codomain, |p| {
        let parts = split_point(p, &dims);
        let mapped: Vec<i64> = parts
            .iter()
            .zip(factors)
            .flat_map(|(part, f)| f.apply(part).expect("factor point").coords().to_vec())
            .collect();
        Point::new(mapped)
    })
}
