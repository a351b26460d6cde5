//! Exact cones and polyhedra.
//!
//! Cones are stored by their extremal rays together with the inequality
//! description produced by double description, so membership tests never
//! need to recompute anything. Polyhedra come in two presentations:
//! [`HalfspaceSystem`] (possibly with strict rows) and [`VertexSystem`].

mod dd;
mod fm;
mod lattice;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_rat, rank_of, Int, LatticeVector, Rational, RationalVector};

pub(crate) use dd::cone_generators;
pub use fm::{eliminate, feasible_point};
pub use lattice::{
    hilbert_basis, lattice_points, minimal_lattice_generators, strict_to_lattice_closed,
};

/// A pointed rational polyhedral cone given by primitive extremal rays.
#[derive(Clone)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
    // Inequality description: {x : (e, x) = 0 for e in equations,
    //                              (f, x) >= 0 for f in inequalities}
    equations: Vec<LatticeVector>,
    inequalities: Vec<LatticeVector>,
}

impl Cone {
    /// Validates and stores `rays` in the given order.
    ///
    /// Rays are primitivized. Duplicates, non-extremal rays and cones that
    /// contain a line are rejected.
    pub fn new(rank: usize, rays: Vec<LatticeVector>) -> Result<Cone> {
        let mut prim: Vec<LatticeVector> = Vec::with_capacity(rays.len());
        for r in &rays {
            if r.rank() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: r.rank(),
                });
            }
            let (p, _) = r.primitive()?;
            if prim.contains(&p) {
                return Err(Error::DuplicateRay(r.clone()));
            }
            prim.push(p);
        }
        let dual = cone_generators(&prim, rank);
        let mut span = dual.lineality.clone();
        span.extend(dual.rays.iter().cloned());
        if rank_of(&span) < rank {
            return Err(Error::NotPointed);
        }
        for (orig, r) in rays.iter().zip(&prim) {
            let mut active = dual.lineality.clone();
            active.extend(dual.rays.iter().filter(|f| f.dot(r).is_zero()).cloned());
            if rank_of(&active) != rank - 1 {
                return Err(Error::NonExtremalRay(orig.clone()));
            }
        }
        Ok(Cone {
            rank,
            rays: prim,
            equations: dual.lineality,
            inequalities: dual.rays,
        })
    }

    /// The closed positive orthant of rank `n`.
    pub fn orthant(n: usize) -> Cone {
        let rays: Vec<_> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        Cone {
            rank: n,
            rays: rays.clone(),
            equations: Vec::new(),
            inequalities: rays,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Same ray set, ignoring order.
    pub fn same_as(&self, other: &Cone) -> bool {
        let mut a = self.rays.clone();
        let mut b = other.rays.clone();
        a.sort();
        b.sort();
        self.rank == other.rank && a == b
    }

    /// Extremal rays of the dual cone, sorted lexicographically.
    pub fn dual(&self) -> Result<Cone> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let rays = self.inequalities.clone();
        let mut back = self.rays.clone();
        back.sort();
        Ok(Cone {
            rank: self.rank,
            rays,
            equations: Vec::new(),
            inequalities: back,
        })
    }

    /// Inward facet normals (the rays of the dual cone).
    pub fn facets(&self) -> Result<Vec<LatticeVector>> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Ok(self.inequalities.clone())
    }

    pub fn contains(&self, x: &LatticeVector) -> bool {
        self.equations.iter().all(|e| e.dot(x).is_zero())
            && self.inequalities.iter().all(|f| !f.dot(x).is_negative())
    }

    pub fn contains_rational(&self, x: &RationalVector) -> bool {
        self.equations.iter().all(|e| e.dot_rational(x).is_zero())
            && self
                .inequalities
                .iter()
                .all(|f| !f.dot_rational(x).is_negative())
    }

    /// Strictly positive against every facet normal (full-dimensional cones).
    pub fn interior_contains(&self, x: &LatticeVector) -> bool {
        self.is_full_dimensional() && self.inequalities.iter().all(|f| f.dot(x).is_positive())
    }

    /// An integer vector strictly positive on the cone minus the origin:
    /// the sum of the facet normals.
    pub fn grading(&self) -> Result<LatticeVector> {
        let f = self.facets()?;
        Ok(f.iter()
            .fold(LatticeVector::zero(self.rank), |acc, v| &acc + v))
    }

    /// `{x : (f, x) >= 0}` for every facet normal `f`.
    pub fn as_halfspaces(&self) -> HalfspaceSystem {
        let mut h = HalfspaceSystem::new(self.rank);
        for e in &self.equations {
            h.push(e.to_rational(), Rational::zero(), false);
            h.push((-e).to_rational(), Rational::zero(), false);
        }
        for f in &self.inequalities {
            h.push(f.to_rational(), Rational::zero(), false);
        }
        h
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cone{:?}", self.rays)
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.same_as(other)
    }
}

/// Cone dual to `c`, by double description.
pub fn dual_cone(c: &Cone) -> Result<Cone> {
    c.dual()
}

pub fn cone_facets(c: &Cone) -> Result<Vec<LatticeVector>> {
    c.facets()
}

/// One row `(normal, y) >= offset`, or `>` when `strict`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: RationalVector,
    pub offset: Rational,
    pub strict: bool,
}

impl Halfspace {
    pub fn holds_at(&self, y: &RationalVector) -> bool {
        let v = self.normal.dot(y);
        if self.strict {
            v > self.offset
        } else {
            v >= self.offset
        }
    }

    pub fn holds_at_lattice(&self, y: &LatticeVector) -> bool {
        let v = y.dot_rational(&self.normal);
        if self.strict {
            v > self.offset
        } else {
            v >= self.offset
        }
    }

    /// A constant row (zero normal) that can never hold.
    pub fn is_contradiction(&self) -> bool {
        self.normal.is_zero() && !self.holds_at(&RationalVector::zero(self.normal.rank()))
    }

    /// Rescales so that the normal is a primitive integer vector.
    /// Constant rows are returned unchanged.
    pub fn normalized(&self) -> Halfspace {
        match self.normal.integer_direction() {
            None => self.clone(),
            Some(n) => {
                // factor = |n| / |normal| along the same direction
                let i = (0..n.rank()).find(|&i| !n[i].is_zero()).unwrap();
                let f = int_rat(&n[i]) / &self.normal[i];
                Halfspace {
                    normal: n.to_rational(),
                    offset: &self.offset * &f,
                    strict: self.strict,
                }
            }
        }
    }
}

impl fmt::Debug for Halfspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·y {} {}",
            self.normal,
            if self.strict { ">" } else { ">=" },
            crate::exact::format_rational(&self.offset)
        )
    }
}

/// A finite system of (possibly strict) linear inequalities.
#[derive(Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    rank: usize,
    rows: Vec<Halfspace>,
}

impl HalfspaceSystem {
    pub fn new(rank: usize) -> Self {
        HalfspaceSystem {
            rank,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(rank: usize, rows: Vec<Halfspace>) -> Self {
        debug_assert!(rows.iter().all(|r| r.normal.rank() == rank));
        HalfspaceSystem { rank, rows }
    }

    /// The canonical empty system `0 > 0`.
    pub fn infeasible(rank: usize) -> Self {
        HalfspaceSystem {
            rank,
            rows: vec![Halfspace {
                normal: RationalVector::zero(rank),
                offset: Rational::zero(),
                strict: true,
            }],
        }
    }

    pub fn push(&mut self, normal: RationalVector, offset: Rational, strict: bool) {
        debug_assert_eq!(normal.rank(), self.rank);
        self.rows.push(Halfspace {
            normal,
            offset,
            strict,
        });
    }

    pub fn push_lattice(&mut self, normal: &LatticeVector, offset: Rational, strict: bool) {
        self.push(normal.to_rational(), offset, strict);
    }

    pub fn extend(&mut self, other: &HalfspaceSystem) {
        debug_assert_eq!(self.rank, other.rank);
        self.rows.extend(other.rows.iter().cloned());
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Halfspace] {
        &self.rows
    }

    pub fn has_strict_rows(&self) -> bool {
        self.rows.iter().any(|r| r.strict)
    }

    /// True when some constant row is false (the marker left by elimination).
    pub fn is_marked_infeasible(&self) -> bool {
        self.rows.iter().any(Halfspace::is_contradiction)
    }

    pub fn contains(&self, y: &RationalVector) -> bool {
        self.rows.iter().all(|r| r.holds_at(y))
    }

    pub fn contains_lattice(&self, y: &LatticeVector) -> bool {
        self.rows.iter().all(|r| r.holds_at_lattice(y))
    }

    /// Rows in canonical form (primitive integer normals), sorted, with
    /// duplicates and rows dominated by a parallel row removed.
    pub fn canonical(&self) -> HalfspaceSystem {
        if self.is_marked_infeasible() {
            return HalfspaceSystem::infeasible(self.rank);
        }
        let mut rows: Vec<Halfspace> = self
            .rows
            .iter()
            .filter(|r| !r.normal.is_zero())
            .map(Halfspace::normalized)
            .collect();
        rows.sort_by(|a, b| {
            a.normal
                .cmp(&b.normal)
                .then_with(|| b.offset.cmp(&a.offset))
                .then_with(|| b.strict.cmp(&a.strict))
        });
        rows.dedup_by(|later, first| later.normal == first.normal);
        HalfspaceSystem {
            rank: self.rank,
            rows,
        }
    }

    /// The homogeneous system `(normal, y) >= 0` of all rows.
    pub fn recession_cone_generators(&self) -> (Vec<LatticeVector>, Vec<LatticeVector>) {
        let normals: Vec<LatticeVector> = self
            .rows
            .iter()
            .filter_map(|r| r.normal.integer_direction())
            .collect();
        let g = cone_generators(&normals, self.rank);
        (g.lineality, g.rays)
    }
}

impl fmt::Debug for HalfspaceSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}

/// `conv(vertices) + cone(recession_rays)`; no vertices means empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSystem {
    pub vertices: Vec<RationalVector>,
    pub recession_rays: Vec<LatticeVector>,
}

impl VertexSystem {
    pub fn empty() -> Self {
        VertexSystem {
            vertices: Vec::new(),
            recession_rays: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Vertices and recession rays of a pointed polyhedron.
///
/// Strict rows are refused. An empty polyhedron yields [`VertexSystem::empty`].
pub fn hrep_to_vrep(h: &HalfspaceSystem) -> Result<VertexSystem> {
    if h.has_strict_rows() {
        return Err(Error::StrictRows);
    }
    if h.is_marked_infeasible() {
        return Ok(VertexSystem::empty());
    }
    let n = h.rank();
    // Homogenize: (a, y) - b t >= 0 and t >= 0, with t as the last coordinate.
    let mut rows: Vec<LatticeVector> = Vec::new();
    for r in h.rows().iter().filter(|r| !r.normal.is_zero()) {
        let mut c = r.normal.coords().to_vec();
        c.push(-r.offset.clone());
        let v = RationalVector::new(c)
            .integer_direction()
            .expect("nonzero normal");
        rows.push(v);
    }
    rows.push(LatticeVector::unit(n + 1, n));
    let g = cone_generators(&rows, n + 1);

    let mut vertices = Vec::new();
    let mut recession = Vec::new();
    for r in &g.rays {
        let t = &r[n];
        if t.is_positive() {
            let tq = int_rat(t);
            vertices.push(RationalVector::new(
                r.coords()[..n].iter().map(|a| int_rat(a) / &tq).collect(),
            ));
        } else {
            recession.push(LatticeVector::new(r.coords()[..n].to_vec()).primitive_part());
        }
    }
    if vertices.is_empty() {
        return Ok(VertexSystem::empty());
    }
    if !g.lineality.is_empty() {
        return Err(Error::NotPointedPolyhedron);
    }
    vertices.sort();
    recession.sort();
    Ok(VertexSystem {
        vertices,
        recession_rays: recession,
    })
}

/// Facet description of `conv(vertices) + cone(rays)`.
///
/// Equations of lower-dimensional polyhedra come out as pairs of opposite
/// rows. The empty vertex system maps to [`HalfspaceSystem::infeasible`].
pub fn vrep_to_hrep(v: &VertexSystem, rank: usize) -> HalfspaceSystem {
    if v.vertices.is_empty() {
        return HalfspaceSystem::infeasible(rank);
    }
    let n = rank;
    let mut gens: Vec<LatticeVector> = Vec::new();
    for p in &v.vertices {
        let l = p.denominator_lcm();
        let mut c: Vec<Int> = p
            .coords()
            .iter()
            .map(|q| (q * int_rat(&l)).to_integer())
            .collect();
        c.push(l);
        gens.push(LatticeVector::new(c));
    }
    for r in &v.recession_rays {
        let mut c = r.coords().to_vec();
        c.push(Int::zero());
        gens.push(LatticeVector::new(c));
    }
    let g = cone_generators(&gens, n + 1);
    let mut out = HalfspaceSystem::new(n);
    let mut add = |row: &LatticeVector| {
        let normal = LatticeVector::new(row.coords()[..n].to_vec());
        if normal.is_zero() {
            return;
        }
        out.push(normal.to_rational(), -int_rat(&row[n]), false);
    };
    for r in &g.rays {
        add(r);
    }
    for l in &g.lineality {
        add(l);
        add(&-l);
    }
    out.canonical()
}

/// Minimal generating set of the lattice points of a pointed cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<LatticeVector>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[LatticeVector] {
        &self.elements
    }
}
