//! Test ideals of monomial ideals on toric varieties.
//!
//! `x^m ∈ τ(𝔞^c)` iff some `w ∈ M_ℝ` has `(w, v_i) <= 1` for every ray and
//! `m + w` in the interior of `c·Newt(𝔞)`. The constraints have rational
//! data, so the (relatively open) feasible set is nonempty over ℝ exactly
//! when it has a rational point; everything is decided over ℚ.
//!
//! Membership eliminates `w` with `m` fixed and back-substitutes a witness.
//! The whole ideal eliminates `w` from the joint `(m, w)` system, which
//! leaves an exact description of the member set in `m` alone.
//!
//! Any witness `w` defines the effective boundary `Δ = Σ (1 - (w, v_i)) D_i`
//! with pair weight `w`, so τ is the sum of the multiplier ideals of all
//! such pairs. [`corollary_check`] tests both inclusions.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{int_rat, LatticeVector, Rational, RationalVector};
use crate::ideal::{newton_polyhedron, MonomialIdeal};
use crate::multiplier::{
    multiplier_ideal, multiplier_ideal_membership, require_in_semigroup, require_positive,
    IdealResult,
};
use crate::polyhedral::{
    eliminate, feasible_point, minimal_lattice_generators, strict_to_lattice_closed,
    HalfspaceSystem,
};
use crate::toric::{make_pair, Pair, QDivisor, ToricVariety};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestMembershipWitness {
    pub member: bool,
    pub witness: Option<RationalVector>,
}

fn lift(v: &LatticeVector, offset: usize, rank: usize) -> RationalVector {
    let mut coords = vec![Rational::zero(); rank];
    for (i, x) in v.coords().iter().enumerate() {
        coords[offset + i] = int_rat(x);
    }
    RationalVector::new(coords)
}

/// `x^m ∈ τ(𝔞^c)`, with a witness weight when it is.
pub fn test_ideal_membership(
    x: &ToricVariety,
    a: &MonomialIdeal,
    c: &Rational,
    m: &LatticeVector,
) -> Result<TestMembershipWitness> {
    require_positive(c)?;
    require_in_semigroup(x, m)?;
    let np = newton_polyhedron(a);
    let n = x.rank();
    let mut h = HalfspaceSystem::new(n);
    for v in x.rays() {
        h.push_lattice(&-v, -Rational::one(), false);
    }
    for (nf, b) in &np.facets {
        h.push_lattice(nf, c * int_rat(b) - int_rat(&nf.dot(m)), true);
    }
    let Some(w) = feasible_point(&h) else {
        return Ok(TestMembershipWitness {
            member: false,
            witness: None,
        });
    };
    let ok = x
        .rays()
        .iter()
        .all(|v| v.dot_rational(&w) <= Rational::one())
        && np.interior_contains(c, &w.add_lattice(m))?;
    if !ok {
        return Err(Error::Internal(format!(
            "witness {w} fails re-substitution"
        )));
    }
    Ok(TestMembershipWitness {
        member: true,
        witness: Some(w),
    })
}

/// The member set of `τ(𝔞^c)` as a system in `m`, before lattice closing.
pub fn test_ideal_system(x: &ToricVariety, a: &MonomialIdeal, c: &Rational) -> HalfspaceSystem {
    let np = newton_polyhedron(a);
    let n = x.rank();
    let mut joint = HalfspaceSystem::new(2 * n);
    for v in x.rays() {
        joint.push(lift(v, 0, 2 * n), Rational::zero(), false);
        joint.push(lift(&-v, n, 2 * n), -Rational::one(), false);
    }
    for (nf, b) in &np.facets {
        let row = &lift(nf, 0, 2 * n) + &lift(nf, n, 2 * n);
        joint.push(row, c * int_rat(b), true);
    }
    let w_vars: Vec<usize> = (n..2 * n).collect();
    eliminate(&joint, &w_vars)
}

/// Minimal generators of `τ(𝔞^c)`.
pub fn test_ideal(x: &ToricVariety, a: &MonomialIdeal, c: &Rational) -> Result<IdealResult> {
    require_positive(c)?;
    let mut system = x.sigma_dual().as_halfspaces();
    system.extend(&test_ideal_system(x, a, c));
    let system = strict_to_lattice_closed(&system.canonical());
    let generators = minimal_lattice_generators(&system, x.sigma_dual(), x.dual_hilbert_basis())?;
    Ok(IdealResult {
        generators,
        defining_system: system,
        c: c.clone(),
        weight_used: RationalVector::zero(x.rank()),
    })
}

/// An effective boundary whose pair weight is a given `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryDivisor {
    pub delta: QDivisor,
    pub weight: RationalVector,
}

/// `Δ = Σ (1 - (w, v_i)) D_i`; requires `(w, v_i) <= 1` for all rays.
pub fn boundary_divisor_for(x: &ToricVariety, w: &RationalVector) -> Result<BoundaryDivisor> {
    let mut delta = Vec::with_capacity(x.rays().len());
    for (index, v) in x.rays().iter().enumerate() {
        let d = Rational::one() - v.dot_rational(w);
        if d.is_negative() {
            return Err(Error::NotEffective { index });
        }
        delta.push(d);
    }
    Ok(BoundaryDivisor {
        delta: QDivisor(delta),
        weight: w.clone(),
    })
}

/// Outcome of a two-sided check of `τ = Σ_Δ 𝒥((X,Δ), 𝔞^c)`.
#[derive(Clone, Debug, Default)]
pub struct CorollaryReport {
    /// τ generators certified through their own witness boundary.
    pub certified: usize,
    /// Sampled boundaries whose multiplier ideals were checked against τ.
    pub sampled: usize,
    pub counterexamples: Vec<String>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R, span: i64, den: i64) -> Rational {
    let q = rng.gen_range(1..=den);
    let p = rng.gen_range(-span * q..=span * q);
    Rational::new(p.into(), q.into())
}

/// A random weight with `(w, v_i) <= 1` on every ray.
///
/// A random point is pushed down along an interior direction `g` of σ∨
/// until every pairing is at most 1, then pushed a random extra amount.
pub fn sample_effective_weight<R: Rng + ?Sized>(x: &ToricVariety, rng: &mut R) -> RationalVector {
    let g = x
        .sigma_dual()
        .rays()
        .iter()
        .fold(LatticeVector::zero(x.rank()), |acc, r| &acc + r);
    let w = RationalVector::new((0..x.rank()).map(|_| small_rational(rng, 2, 6)).collect());
    let mut t = Rational::zero();
    for v in x.rays() {
        let excess = (v.dot_rational(&w) - Rational::one()) / int_rat(&v.dot(&g));
        if excess > t {
            t = excess;
        }
    }
    if rng.gen_bool(0.5) {
        t += Rational::new(rng.gen_range(0..=4).into(), rng.gen_range(1..=4).into());
    }
    let shifted: Vec<Rational> = w
        .coords()
        .iter()
        .zip(g.coords())
        .map(|(wi, gi)| wi - &t * int_rat(gi))
        .collect();
    RationalVector::new(shifted)
}

fn effective_pair(x: &Arc<ToricVariety>, w: &RationalVector) -> Result<Pair> {
    let b = boundary_divisor_for(x, w)?;
    let p = make_pair(x.clone(), b.delta)?;
    if p.weight != *w {
        return Err(Error::Internal(format!(
            "pair weight {} differs from {w}",
            p.weight
        )));
    }
    Ok(p)
}

/// Both inclusions of `τ(𝔞^c) = Σ 𝒥((X,Δ), 𝔞^c)` over effective Δ.
pub fn corollary_check<R: Rng + ?Sized>(
    x: &Arc<ToricVariety>,
    a: &MonomialIdeal,
    c: &Rational,
    samples: usize,
    rng: &mut R,
) -> Result<CorollaryReport> {
    let mut report = CorollaryReport::default();
    for g in test_ideal(x, a, c)?.generators {
        let t = test_ideal_membership(x, a, c, &g)?;
        let Some(w) = t.witness else {
            report
                .counterexamples
                .push(format!("τ generator {g} has no witness"));
            continue;
        };
        let p = effective_pair(x, &w)?;
        if multiplier_ideal_membership(&p, a, c, &g)? {
            report.certified += 1;
        } else {
            report.counterexamples.push(format!(
                "τ generator {g} not in 𝒥 for Δ = {:?}",
                p.delta
                    .coeffs()
                    .iter()
                    .map(crate::exact::format_rational)
                    .collect::<Vec<_>>()
            ));
        }
    }
    for _ in 0..samples {
        let w = sample_effective_weight(x, rng);
        let p = effective_pair(x, &w)?;
        for g in multiplier_ideal(&p, a, c)?.generators {
            if !test_ideal_membership(x, a, c, &g)?.member {
                report
                    .counterexamples
                    .push(format!("𝒥 generator {g} for w = {w} is not in τ"));
            }
        }
        report.sampled += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::ideal::make_ideal;
    use crate::toric::make_variety;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn lvs(cs: &[&[i64]]) -> Vec<LatticeVector> {
        cs.iter().map(|c| lv(c)).collect()
    }

    fn variety(rays: &[&[i64]]) -> Arc<ToricVariety> {
        Arc::new(make_variety(rays[0].len(), lvs(rays)).unwrap())
    }

    fn a2() -> Arc<ToricVariety> {
        variety(&[&[1, 0], &[0, 1]])
    }

    fn quadric() -> Arc<ToricVariety> {
        variety(&[&[1, 0], &[1, 2]])
    }

    fn threefold() -> Arc<ToricVariety> {
        variety(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, -2]])
    }

    fn quadric_max() -> MonomialIdeal {
        make_ideal(quadric(), lvs(&[&[0, 1], &[1, 0], &[2, -1]])).unwrap()
    }

    fn cusp() -> MonomialIdeal {
        make_ideal(a2(), lvs(&[&[2, 0], &[0, 3]])).unwrap()
    }

    #[test]
    fn membership_examples() {
        let x = a2();
        let a = make_ideal(x.clone(), lvs(&[&[1, 0]])).unwrap();
        let t = test_ideal_membership(&x, &a, &rat(1, 2), &lv(&[0, 0])).unwrap();
        assert_eq!(
            t,
            TestMembershipWitness {
                member: true,
                witness: Some(lv(&[1, 1]).to_rational())
            }
        );
        let q = quadric();
        assert!(
            !test_ideal_membership(&q, &quadric_max(), &rat(1, 1), &lv(&[0, 0]))
                .unwrap()
                .member
        );
        let t = test_ideal_membership(&q, &quadric_max(), &rat(1, 1), &lv(&[0, 1])).unwrap();
        assert!(t.member);
        assert!(test_ideal_membership(&q, &quadric_max(), &rat(1, 1), &lv(&[-1, 0])).is_err());
    }

    #[test]
    fn ideal_examples() {
        let q = quadric();
        assert_eq!(
            test_ideal(&q, &quadric_max(), &rat(1, 1))
                .unwrap()
                .generators,
            lvs(&[&[0, 1], &[1, 0], &[2, -1]])
        );
        assert_eq!(
            test_ideal(&a2(), &cusp(), &rat(5, 6)).unwrap().generators,
            lvs(&[&[0, 1], &[1, 0]])
        );
    }

    #[test]
    fn threefold_projection_matches_pointwise() {
        let x = threefold();
        let a = make_ideal(x.clone(), x.dual_hilbert_basis().elements.clone()).unwrap();
        let c = rat(1, 1);
        let r = test_ideal(&x, &a, &c).unwrap();
        assert!(!r.generators.is_empty());
        let hb = &x.dual_hilbert_basis().elements;
        // every small semigroup element: sums of at most two HB elements
        let mut pts = vec![LatticeVector::zero(3)];
        for h in hb {
            pts.push(h.clone());
            for k in hb {
                pts.push(h + k);
            }
        }
        for m in &pts {
            let direct = test_ideal_membership(&x, &a, &c, m).unwrap().member;
            assert_eq!(r.defining_system.contains_lattice(m), direct, "at {m}");
        }
    }

    #[test]
    fn boundary_examples() {
        let x = a2();
        assert_eq!(
            boundary_divisor_for(&x, &lv(&[1, 1]).to_rational())
                .unwrap()
                .delta,
            QDivisor::zero(2)
        );
        let w = RationalVector::new(vec![rat(1, 2), rat(1, 1)]);
        assert_eq!(
            boundary_divisor_for(&x, &w).unwrap().delta,
            QDivisor(vec![rat(1, 2), rat(0, 1)])
        );
        assert_eq!(
            boundary_divisor_for(&quadric(), &RationalVector::zero(2))
                .unwrap()
                .delta,
            QDivisor(vec![rat(1, 1), rat(1, 1)])
        );
        assert!(matches!(
            boundary_divisor_for(&x, &lv(&[2, 0]).to_rational()),
            Err(Error::NotEffective { index: 0 })
        ));
    }

    #[test]
    fn corollary_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = corollary_check(&quadric(), &quadric_max(), &rat(1, 1), 20, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        let r = corollary_check(&a2(), &cusp(), &rat(5, 6), 20, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        let x = threefold();
        let a = make_ideal(x.clone(), x.dual_hilbert_basis().elements.clone()).unwrap();
        let r = corollary_check(&x, &a, &rat(1, 1), 20, &mut rng).unwrap();
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert_eq!(r.sampled, 20);
    }

    #[test]
    fn sampled_weights_are_effective() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = threefold();
        for _ in 0..50 {
            let w = sample_effective_weight(&x, &mut rng);
            assert!(boundary_divisor_for(&x, &w).is_ok());
        }
    }
}
