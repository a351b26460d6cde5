//! Lattice points of polyhedra: enumeration, Hilbert bases and minimal
//! generators of up-sets.
//!
//! # Minimal generators of an up-set
//!
//! Let `P'` be a closed polyhedron with recession cone `C` (pointed,
//! full-dimensional) and `P' ⊆ C`. Then `S = P' ∩ M` is an up-set:
//! `S + (C ∩ M) ⊆ S`. Its minimal generators are found in two steps.
//!
//! *Candidates.* Write `m ∈ S` as `v + r` with `v` in the convex hull of the
//! vertices and `r = Σ λ_h h` a nonnegative combination of Hilbert basis
//! elements. If some `λ_h >= 1` then `m - h` is still in `S`, so `m` is not
//! minimal. Hence every minimal element lies in `conv(vertices) +
//! zonotope(HB)`. For each facet normal `u` of `C` that region satisfies
//! `(u, y) <= max_v (u, v) + Σ_h (u, h)`; we enumerate the lattice points of
//! `P'` inside these slabs, a bounded superset because the facet normals
//! of a pointed full-dimensional cone span the dual space.
//!
//! *Minimality.* `m ∈ S` is minimal iff `m - h ∉ S` for every Hilbert basis
//! element `h`. If `m - s ∈ S` for some nonzero `s = h_1 + ... + h_k`, then
//! `m - h_1 = (m - s) + (s - h_1)` is in `S` because `S` is an up-set, so
//! single steps suffice.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use super::{eliminate, hrep_to_vrep, Cone, Halfspace, HalfspaceSystem, HilbertBasis};
use crate::error::{Error, Result};
use crate::exact::{ceil_int, floor_strict_bound, int_rat, Int, LatticeVector, Rational};

/// Replaces every strict row `(n, y) > b` by `(n', y) >= floor(b') + 1`,
/// where `(n', b')` is the row rescaled to a primitive integer normal.
/// Lattice points are unchanged; non-strict rows are kept as they are.
pub fn strict_to_lattice_closed(h: &HalfspaceSystem) -> HalfspaceSystem {
    let rows = h
        .rows()
        .iter()
        .map(|r| {
            if !r.strict {
                return r.clone();
            }
            let s = r.normalized();
            Halfspace {
                normal: s.normal,
                offset: int_rat(&floor_strict_bound(&s.offset)),
                strict: false,
            }
        })
        .collect();
    HalfspaceSystem::from_rows(h.rank(), rows)
}

/// Integer rows `(a, y) >= b` valid for lattice points.
fn integer_rows(h: &HalfspaceSystem) -> Vec<(Vec<Int>, Int)> {
    h.rows()
        .iter()
        .map(|r| {
            let s = r.normalized();
            let a: Vec<Int> = s.normal.coords().iter().map(|q| q.to_integer()).collect();
            let b = if s.strict {
                floor_strict_bound(&s.offset)
            } else {
                ceil_int(&s.offset)
            };
            (a, b)
        })
        .collect()
}

/// All lattice points of a bounded system, in lexicographic order.
pub fn lattice_points(h: &HalfspaceSystem) -> Result<Vec<LatticeVector>> {
    let n = h.rank();
    let closed = strict_to_lattice_closed(h);
    if eliminate(&closed, &(0..n).collect::<Vec<_>>()).is_marked_infeasible() {
        return Ok(Vec::new());
    }
    let (lin, rays) = closed.recession_cone_generators();
    if !lin.is_empty() || !rays.is_empty() {
        return Err(Error::Unbounded);
    }
    if n == 0 {
        return Ok(vec![LatticeVector::zero(0)]);
    }
    // projections[k] describes the shadow on x_0..x_k
    let mut projections: Vec<Vec<(Vec<Int>, Int)>> = vec![Vec::new(); n];
    let mut current = closed.canonical();
    for k in (0..n).rev() {
        let rows = integer_rows(&current)
            .into_iter()
            .map(|(a, b)| (a[..=k].to_vec(), b))
            .collect();
        projections[k] = rows;
        if k > 0 {
            current = eliminate(&current, &[k]);
            // re-embed so column indices stay aligned
            current = pad(&current, n - current.rank());
        }
    }
    let mut out = Vec::new();
    let mut prefix: Vec<Int> = Vec::with_capacity(n);
    descend(&projections, &mut prefix, &mut out);
    Ok(out)
}

fn pad(h: &HalfspaceSystem, extra: usize) -> HalfspaceSystem {
    let rank = h.rank() + extra;
    let rows = h
        .rows()
        .iter()
        .map(|r| {
            let mut c = r.normal.coords().to_vec();
            c.resize(rank, Rational::zero());
            Halfspace {
                normal: crate::exact::RationalVector::new(c),
                offset: r.offset.clone(),
                strict: r.strict,
            }
        })
        .collect();
    HalfspaceSystem::from_rows(rank, rows)
}

fn descend(proj: &[Vec<(Vec<Int>, Int)>], prefix: &mut Vec<Int>, out: &mut Vec<LatticeVector>) {
    let k = prefix.len();
    let mut lo: Option<Int> = None;
    let mut hi: Option<Int> = None;
    for (a, b) in &proj[k] {
        let rest = a[..k]
            .iter()
            .zip(prefix.iter())
            .fold(b.clone(), |acc, (x, p)| acc - x * p);
        let c = &a[k];
        if c.is_zero() {
            if rest.is_positive() {
                return;
            }
        } else if c.is_positive() {
            let t = num_integer::Integer::div_ceil(&rest, c);
            if lo.as_ref().map_or(true, |l| t > *l) {
                lo = Some(t);
            }
        } else {
            let t = num_integer::Integer::div_floor(&rest, c);
            if hi.as_ref().map_or(true, |h| t < *h) {
                hi = Some(t);
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        unreachable!("bounded system has finite coordinate bounds");
    };
    let mut x = lo;
    while x <= hi {
        prefix.push(x.clone());
        if k + 1 == proj.len() {
            out.push(LatticeVector::new(prefix.clone()));
        } else {
            descend(proj, prefix, out);
        }
        prefix.pop();
        x += 1;
    }
}

/// Hilbert basis of a pointed full-dimensional cone.
///
/// Every Hilbert basis element lies in the zonotope spanned by the rays, so
/// candidates are the lattice points with grading at most the sum of the
/// ray gradings. They are scanned by increasing degree; a point is kept iff
/// subtracting no previously kept element stays in the cone.
pub fn hilbert_basis(c: &Cone) -> Result<HilbertBasis> {
    let g = c.grading()?;
    let bound: Int = c.rays().iter().map(|r| g.dot(r)).sum();
    let mut h = c.as_halfspaces();
    h.push_lattice(&-&g, -int_rat(&bound), false);
    let mut pts: Vec<(Int, LatticeVector)> = lattice_points(&h)?
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| (g.dot(&p), p))
        .collect();
    pts.sort();
    let all: HashSet<LatticeVector> = pts.iter().map(|(_, p)| p.clone()).collect();
    let mut basis: Vec<(Int, LatticeVector)> = Vec::new();
    for (d, p) in &pts {
        let reducible = basis.iter().any(|(dh, h)| dh < d && all.contains(&(p - h)));
        if !reducible {
            basis.push((d.clone(), p.clone()));
        }
    }
    let mut elements: Vec<LatticeVector> = basis.into_iter().map(|(_, p)| p).collect();
    elements.sort();
    Ok(HilbertBasis { elements })
}

/// Minimal generators of the up-set `P' ∩ M` (see the module docs).
///
/// `p` must be closed, contained in `sigma_dual`, and have recession cone
/// exactly `sigma_dual`; `hb` is the Hilbert basis of `sigma_dual`.
pub fn minimal_lattice_generators(
    p: &HalfspaceSystem,
    sigma_dual: &Cone,
    hb: &HilbertBasis,
) -> Result<Vec<LatticeVector>> {
    if p.has_strict_rows() {
        return Err(Error::Precondition("system has strict rows".into()));
    }
    let v = match hrep_to_vrep(p) {
        Ok(v) => v,
        Err(Error::NotPointedPolyhedron) => {
            return Err(Error::Precondition(
                "recession cone is not the dual cone".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    if v.is_empty() {
        return Ok(Vec::new());
    }
    let mut expected = sigma_dual.rays().to_vec();
    expected.sort();
    if v.recession_rays != expected {
        return Err(Error::Precondition(
            "recession cone is not the dual cone".into(),
        ));
    }
    if !v.vertices.iter().all(|x| sigma_dual.contains_rational(x)) {
        return Err(Error::Precondition(
            "polyhedron leaves the dual cone".into(),
        ));
    }

    let mut region = p.clone();
    for u in sigma_dual.facets()? {
        let top = v
            .vertices
            .iter()
            .map(|x| u.dot_rational(x))
            .max()
            .expect("nonempty");
        let zono: Int = hb.elements().iter().map(|h| u.dot(h)).sum();
        region.push_lattice(&-&u, -(top + int_rat(&zono)), false);
    }
    let pts = lattice_points(&region)?;
    let set: HashSet<&LatticeVector> = pts.iter().collect();
    let mut out: Vec<LatticeVector> = pts
        .iter()
        .filter(|m| hb.elements().iter().all(|h| !set.contains(&(*m - h))))
        .cloned()
        .collect();
    out.sort();
    Ok(out)
}
