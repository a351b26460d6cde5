//! Seeded random instances for the verification suites.
//!
//! Every instance is a function of `(seed, index)` alone, so a failing case
//! can be regenerated from one line of output.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact::{format_rational, LatticeVector, Rational};
use crate::ideal::{make_ideal, MonomialIdeal};
use crate::toric::{determinant, make_pair, make_variety, Pair, QDivisor, ToricVariety};

/// One problem: a variety, a boundary, an ideal and an exponent.
#[derive(Clone, Debug)]
pub struct Instance {
    pub variety: Arc<ToricVariety>,
    pub delta: QDivisor,
    pub ideal: MonomialIdeal,
    pub c: Rational,
}

impl Instance {
    pub fn pair(&self) -> Result<Pair> {
        make_pair(self.variety.clone(), self.delta.clone())
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rays=[{}] delta=[{}] ideal=[{}] c={}",
            join(self.variety.rays()),
            join(self.delta.coeffs().iter().map(format_rational)),
            join(self.ideal.exponents()),
            format_rational(&self.c)
        )
    }
}

/// Instance families used by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Pointed full-dimensional 2D cones with ray entries in `[-12, 12]`
    /// and arbitrary rational boundaries, effective or not.
    Plane,
    /// Affine 2- and 3-space, `Δ = 0`, exponents in `[0, 9]`.
    AffineSpace,
    /// Simplicial 2D and 3D cones, `Δ = 0`.
    Simplicial,
}

pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Random rational `p/q` in `(0, 3]` with `q <= 6`.
pub fn random_exponent<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let q: i64 = rng.gen_range(1..=6);
    let p: i64 = rng.gen_range(1..=3 * q);
    Rational::new(p.into(), q.into())
}

fn random_primitive<R: Rng + ?Sized>(rng: &mut R, dim: usize, bound: i64) -> LatticeVector {
    loop {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect();
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        if g == 1 {
            return LatticeVector::from_i64s(&v);
        }
    }
}

/// A simplicial full-dimensional cone with primitive rays in `[-b, b]^n`.
pub fn random_simplicial<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    bound: i64,
) -> Arc<ToricVariety> {
    loop {
        let rays: Vec<LatticeVector> = (0..dim)
            .map(|_| random_primitive(rng, dim, bound))
            .collect();
        if determinant(&rays).is_zero() {
            continue;
        }
        if let Ok(x) = make_variety(dim, rays) {
            return Arc::new(x);
        }
    }
}

/// 1 to 5 generators, each a short sum of dual Hilbert basis elements.
pub fn random_ideal<R: Rng + ?Sized>(rng: &mut R, x: &Arc<ToricVariety>) -> MonomialIdeal {
    let hb = &x.dual_hilbert_basis().elements;
    let count = rng.gen_range(1..=5);
    let gens = (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            (0..terms).fold(LatticeVector::zero(x.rank()), |acc, _| {
                let h = hb.choose(rng).expect("nonempty Hilbert basis");
                let k: i64 = rng.gen_range(1..=2);
                &acc + &h.scale(&k.into())
            })
        })
        .collect();
    make_ideal(x.clone(), gens).expect("sums of basis elements lie in the semigroup")
}

/// Boundary coefficients in `[-1, 2]` with denominators up to 4.
pub fn random_delta<R: Rng + ?Sized>(rng: &mut R, rays: usize) -> QDivisor {
    QDivisor(
        (0..rays)
            .map(|_| {
                let q: i64 = rng.gen_range(1..=4);
                Rational::new(rng.gen_range(-q..=2 * q).into(), q.into())
            })
            .collect(),
    )
}

fn affine_space(dim: usize) -> Arc<ToricVariety> {
    let rays = (0..dim).map(|i| LatticeVector::unit(dim, i)).collect();
    Arc::new(make_variety(dim, rays).expect("orthant"))
}

fn affine_ideal<R: Rng + ?Sized>(rng: &mut R, x: &Arc<ToricVariety>) -> MonomialIdeal {
    let count = rng.gen_range(1..=5);
    let gens = (0..count)
        .map(|_| {
            let v: Vec<i64> = (0..x.rank()).map(|_| rng.gen_range(0..=9)).collect();
            LatticeVector::from_i64s(&v)
        })
        .collect();
    make_ideal(x.clone(), gens).expect("nonnegative exponents")
}

/// The `index`-th instance of a family for a given seed.
pub fn instance(family: Family, seed: u64, index: usize) -> Instance {
    let mut rng = instance_rng(seed, index);
    let rng = &mut rng;
    match family {
        Family::Plane => {
            let variety = random_simplicial(rng, 2, 12);
            let ideal = random_ideal(rng, &variety);
            let delta = random_delta(rng, 2);
            let c = random_exponent(rng);
            Instance {
                variety,
                delta,
                ideal,
                c,
            }
        }
        Family::AffineSpace => {
            let variety = affine_space(if index % 2 == 0 { 2 } else { 3 });
            let ideal = affine_ideal(rng, &variety);
            let c = random_exponent(rng);
            let delta = QDivisor::zero(variety.rank());
            Instance {
                variety,
                delta,
                ideal,
                c,
            }
        }
        Family::Simplicial => {
            let (dim, bound) = if index % 2 == 0 { (2, 5) } else { (3, 2) };
            let variety = random_simplicial(rng, dim, bound);
            let ideal = random_ideal(rng, &variety);
            let c = random_exponent(rng);
            let delta = QDivisor::zero(dim);
            Instance {
                variety,
                delta,
                ideal,
                c,
            }
        }
    }
}

pub fn corpus(family: Family, seed: u64, count: usize) -> Vec<Instance> {
    (0..count).map(|i| instance(family, seed, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        for family in [Family::Plane, Family::AffineSpace, Family::Simplicial] {
            let a = instance(family, 42, 3).to_string();
            let b = instance(family, 42, 3).to_string();
            assert_eq!(a, b);
            assert_ne!(a, instance(family, 42, 4).to_string());
        }
    }

    #[test]
    fn plane_family_respects_bounds() {
        for inst in corpus(Family::Plane, 1, 30) {
            assert_eq!(inst.variety.rank(), 2);
            for r in inst.variety.rays() {
                assert!(r.coords().iter().all(|x| x.magnitude() <= &12u32.into()));
            }
            assert!(
                inst.pair().is_ok(),
                "simplicial cones make every Δ ℚ-Cartier"
            );
            assert!(inst.c > Rational::zero() && inst.c <= Rational::from_integer(3.into()));
            assert!((1..=5).contains(&inst.ideal.exponents().len()));
        }
    }
}
