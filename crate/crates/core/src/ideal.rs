//! Monomial ideals of `k[σ∨ ∩ M]` and their Newton polyhedra.

use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{int_rat, Int, LatticeVector, Rational, RationalVector};
use crate::polyhedral::{minimal_lattice_generators, vrep_to_hrep, HalfspaceSystem, VertexSystem};
use crate::toric::ToricVariety;

/// A nonzero monomial ideal, stored by its minimal exponents.
#[derive(Clone, Debug)]
pub struct MonomialIdeal {
    variety: Arc<ToricVariety>,
    exponents: Vec<LatticeVector>,
}

impl MonomialIdeal {
    pub fn variety(&self) -> &Arc<ToricVariety> {
        &self.variety
    }

    pub fn exponents(&self) -> &[LatticeVector] {
        &self.exponents
    }

    /// The ideal generated by all `k`-fold sums of generators, i.e. `𝔞^k`.
    pub fn power(&self, k: usize) -> Result<MonomialIdeal> {
        let mut gens = vec![LatticeVector::zero(self.variety.rank())];
        for _ in 0..k {
            let mut next = Vec::new();
            for g in &gens {
                for e in &self.exponents {
                    next.push(g + e);
                }
            }
            next.sort();
            next.dedup();
            gens = minimalize(&self.variety, next);
        }
        make_ideal(self.variety.clone(), gens)
    }
}

fn minimalize(x: &ToricVariety, mut exps: Vec<LatticeVector>) -> Vec<LatticeVector> {
    exps.sort();
    exps.dedup();
    let keep: Vec<LatticeVector> = exps
        .iter()
        .filter(|e| !exps.iter().any(|f| f != *e && x.in_semigroup(&(*e - f))))
        .cloned()
        .collect();
    keep
}

/// Validates the exponents and drops redundant generators.
pub fn make_ideal(x: Arc<ToricVariety>, exps: Vec<LatticeVector>) -> Result<MonomialIdeal> {
    if exps.is_empty() {
        return Err(Error::ZeroIdeal);
    }
    for e in &exps {
        if e.rank() != x.rank() {
            return Err(Error::DimensionMismatch {
                expected: x.rank(),
                found: e.rank(),
            });
        }
        if !x.in_semigroup(e) {
            return Err(Error::OutsideDualCone(e.clone()));
        }
    }
    let exponents = minimalize(&x, exps);
    Ok(MonomialIdeal {
        variety: x,
        exponents,
    })
}

/// `conv(exponents) + σ∨` as facets `(n_f, y) >= b_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub facets: Vec<(LatticeVector, Int)>,
    pub vertices: Vec<LatticeVector>,
}

impl NewtonPolyhedron {
    pub fn as_halfspaces(&self) -> HalfspaceSystem {
        let rank = self.vertices[0].rank();
        let mut h = HalfspaceSystem::new(rank);
        for (n, b) in &self.facets {
            h.push_lattice(n, int_rat(b), false);
        }
        h
    }

    pub fn contains(&self, y: &RationalVector) -> bool {
        self.facets
            .iter()
            .all(|(n, b)| n.dot_rational(y) >= int_rat(b))
    }

    /// Whether `y` lies in the interior of `c·Newt`.
    pub fn interior_contains(&self, c: &Rational, y: &RationalVector) -> Result<bool> {
        if !c.is_positive() {
            return Err(Error::NonPositive(c.clone()));
        }
        Ok(self
            .facets
            .iter()
            .all(|(n, b)| n.dot_rational(y) > c * int_rat(b)))
    }
}

pub fn newton_polyhedron(a: &MonomialIdeal) -> NewtonPolyhedron {
    let x = a.variety();
    let v = VertexSystem {
        vertices: a
            .exponents()
            .iter()
            .map(LatticeVector::to_rational)
            .collect(),
        recession_rays: x.sigma_dual().rays().to_vec(),
    };
    let h = vrep_to_hrep(&v, x.rank());
    let mut facets: Vec<(LatticeVector, Int)> = h
        .rows()
        .iter()
        .map(|r| {
            let n = r
                .normal
                .to_lattice()
                .expect("canonical rows have integer normals");
            assert!(
                r.offset.is_integer(),
                "lattice vertices give integer offsets"
            );
            (n, r.offset.to_integer())
        })
        .collect();
    facets.sort();
    let rank = x.rank();
    let vertices = a
        .exponents()
        .iter()
        .filter(|e| {
            let tight: Vec<LatticeVector> = facets
                .iter()
                .filter(|(n, b)| n.dot(e) == *b)
                .map(|(n, _)| n.clone())
                .collect();
            crate::exact::rank_of(&tight) == rank
        })
        .cloned()
        .collect();
    NewtonPolyhedron { facets, vertices }
}

pub fn interior_contains(np: &NewtonPolyhedron, c: &Rational, y: &RationalVector) -> Result<bool> {
    np.interior_contains(c, y)
}

/// Minimal generators of the integral closure `{m : m ∈ Newt(𝔞)}`.
pub fn integral_closure(a: &MonomialIdeal) -> Result<Vec<LatticeVector>> {
    let x = a.variety();
    let mut h = x.sigma_dual().as_halfspaces();
    h.extend(&newton_polyhedron(a).as_halfspaces());
    minimal_lattice_generators(&h, x.sigma_dual(), x.dual_hilbert_basis())
}

/// `x^m ∈ 𝔞`, i.e. `m - e ∈ σ∨` for some generator `e`.
pub fn ideal_membership(a: &MonomialIdeal, m: &LatticeVector) -> bool {
    let x = a.variety();
    a.exponents().iter().any(|e| x.in_semigroup(&(m - e)))
}

/// Renders `x^(a,b,…)`.
pub fn monomial(m: &LatticeVector) -> String {
    format!("x^{m}")
}
