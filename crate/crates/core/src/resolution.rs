//! Direct evaluation of multiplier ideals in dimension 2 through an explicit
//! toric log resolution.
//!
//! A smooth subdivision `Y → X` of σ that contains every Newton facet
//! normal makes the support function of 𝔞 linear on each cone, so
//! `𝔞·O_Y = O_Y(-A)` with `A = Σ a_j D_j` and `a_j = min_e (e, u_j)`.
//! With `K_Y = -Σ D_j` and `μ*(K_X + Δ) = -Σ (w, u_j) D_j`, the divisor
//! `K_Y - ⌊μ*(K_X+Δ) + cA⌋` has coefficient `-1 - ⌊c·a_j - (w, u_j)⌋` on
//! `D_j`. Sections of an invariant divisor on a toric variety are the
//! monomials satisfying one inequality per ray, so the pushforward is
//! `{m : (m, u_j) >= 1 + ⌊c·a_j - (w, u_j)⌋ for all j}`.
//!
//! Nothing here looks at Newton facets beyond choosing rays to insert.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int_rat, Int, LatticeVector, Rational, RationalVector};
use crate::ideal::{newton_polyhedron, MonomialIdeal};
use crate::multiplier::require_positive;
use crate::polyhedral::{minimal_lattice_generators, HalfspaceSystem};
use crate::toric::{Pair, ToricVariety};

fn det(u: &LatticeVector, v: &LatticeVector) -> Int {
    &u[0] * &v[1] - &u[1] * &v[0]
}

/// Rays of a subdivision of a 2D cone, in counterclockwise order from one
/// boundary ray of σ to the other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2D {
    rays: Vec<LatticeVector>,
}

impl Fan2D {
    /// Orders the given rays of a strictly convex 2D cone.
    pub fn from_rays(mut rays: Vec<LatticeVector>) -> Fan2D {
        rays.sort_by(|u, v| {
            if u == v {
                std::cmp::Ordering::Equal
            } else if det(u, v).is_positive() {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        rays.dedup();
        Fan2D { rays }
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    /// Consecutive ray pairs, the maximal cones.
    pub fn cones(&self) -> impl Iterator<Item = (&LatticeVector, &LatticeVector)> {
        self.rays.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn is_smooth(&self) -> bool {
        self.cones().all(|(u, v)| det(u, v).abs().is_one())
    }

    /// Star subdivision of the `j`-th cone at the sum of its rays.
    pub fn blow_up(&self, j: usize) -> Fan2D {
        let (u, v) = (&self.rays[j], &self.rays[j + 1]);
        let mut rays = self.rays.clone();
        rays.insert(j + 1, (u + v).primitive_part());
        Fan2D { rays }
    }
}

fn require_rank_two(x: &ToricVariety) -> Result<()> {
    if x.rank() == 2 {
        Ok(())
    } else {
        Err(Error::RankNotTwo(x.rank()))
    }
}

/// The ray between `u` and `v` with `det(u, p) = 1`; `det(p, v) < det(u, v)`.
fn hirzebruch_jung_ray(u: &LatticeVector, v: &LatticeVector) -> LatticeVector {
    let d = det(u, v);
    // v + k·u ≡ 0 mod d, 0 < k < d
    let mut k = Int::one();
    loop {
        let s = v + &u.scale(&k);
        if s.coords().iter().all(|x| x.is_multiple_of(&d)) {
            return LatticeVector::new(s.coords().iter().map(|x| x / &d).collect());
        }
        k += 1;
    }
}

/// Smooth subdivision of σ containing every Newton facet normal of `a`.
///
/// Singular cones are split one at a time, largest determinant first and
/// the earliest cone on ties.
pub fn log_resolution_2d(x: &ToricVariety, a: &MonomialIdeal) -> Result<Fan2D> {
    require_rank_two(x)?;
    let mut rays = x.rays().to_vec();
    rays.extend(newton_polyhedron(a).facets.into_iter().map(|(n, _)| n));
    let mut fan = Fan2D::from_rays(rays);
    loop {
        let worst = fan
            .cones()
            .enumerate()
            .map(|(j, (u, v))| (det(u, v), j))
            .filter(|(d, _)| *d > Int::one())
            .max_by(|(d1, j1), (d2, j2)| d1.cmp(d2).then(j2.cmp(j1)));
        let Some((_, j)) = worst else {
            return Ok(fan);
        };
        let p = hirzebruch_jung_ray(&fan.rays[j], &fan.rays[j + 1]);
        fan.rays.insert(j + 1, p);
    }
}

/// Order of vanishing of `𝔞` along the divisor of a ray `u ∈ σ`.
pub fn ord_ideal_on_ray(a: &MonomialIdeal, u: &LatticeVector) -> Result<Int> {
    let x = a.variety();
    if !x.sigma().contains(u) {
        return Err(Error::NotInSigma(u.clone()));
    }
    Ok(a.exponents()
        .iter()
        .map(|e| e.dot(u))
        .min()
        .expect("nonzero ideal"))
}

/// Per-ray data of a resolution: `a_j` and `(w, u_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayData {
    pub ray: LatticeVector,
    pub order: Int,
    pub w_pair: Rational,
}

pub fn ray_data(a: &MonomialIdeal, weight: &RationalVector, fan: &Fan2D) -> Result<Vec<RayData>> {
    fan.rays()
        .iter()
        .map(|u| {
            Ok(RayData {
                ray: u.clone(),
                order: ord_ideal_on_ray(a, u)?,
                w_pair: u.dot_rational(weight),
            })
        })
        .collect()
}

fn pushforward(
    x: &ToricVariety,
    fan: &Fan2D,
    bound: impl Fn(&LatticeVector) -> Result<Int>,
) -> Result<Vec<LatticeVector>> {
    let mut h = HalfspaceSystem::new(2);
    for v in x.rays() {
        h.push_lattice(v, Rational::zero(), false);
    }
    for u in fan.rays() {
        h.push_lattice(u, int_rat(&bound(u)?), false);
    }
    minimal_lattice_generators(&h, x.sigma_dual(), x.dual_hilbert_basis())
}

/// `𝒥((X,Δ), 𝔞^c)` computed on a given log resolution.
pub fn multiplier_ideal_on_fan(
    p: &Pair,
    a: &MonomialIdeal,
    c: &Rational,
    fan: &Fan2D,
) -> Result<Vec<LatticeVector>> {
    require_rank_two(&p.variety)?;
    require_positive(c)?;
    pushforward(&p.variety, fan, |u| {
        let aj = int_rat(&ord_ideal_on_ray(a, u)?);
        Ok(Int::one() + (c * aj - u.dot_rational(&p.weight)).floor().to_integer())
    })
}

/// `𝒥_ω(𝔞^c)` computed on a given log resolution.
pub fn multiplier_module_on_fan(
    x: &ToricVariety,
    a: &MonomialIdeal,
    c: &Rational,
    fan: &Fan2D,
) -> Result<Vec<LatticeVector>> {
    require_rank_two(x)?;
    require_positive(c)?;
    pushforward(x, fan, |u| {
        let aj = int_rat(&ord_ideal_on_ray(a, u)?);
        Ok(Int::one() + (c * aj).floor().to_integer())
    })
}

pub fn multiplier_ideal_via_resolution(
    p: &Pair,
    a: &MonomialIdeal,
    c: &Rational,
) -> Result<Vec<LatticeVector>> {
    let fan = log_resolution_2d(&p.variety, a)?;
    multiplier_ideal_on_fan(p, a, c, &fan)
}

pub fn multiplier_module_via_resolution(
    x: &ToricVariety,
    a: &MonomialIdeal,
    c: &Rational,
) -> Result<Vec<LatticeVector>> {
    let fan = log_resolution_2d(x, a)?;
    multiplier_module_on_fan(x, a, c, &fan)
}

/// Whether `(m, u_j) > 0` on every ray of `f`, for `x^m ∈ ω_X`.
pub fn check_positivity_on_resolution(
    x: &ToricVariety,
    m: &LatticeVector,
    f: &Fan2D,
) -> Result<bool> {
    if !x.sigma_dual().interior_contains(m) {
        return Err(Error::NotInCanonicalModule(m.clone()));
    }
    Ok(f.rays().iter().all(|u| m.dot(u).is_positive()))
}
