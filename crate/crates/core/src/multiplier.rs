//! Multiplier ideals of pairs and multiplier modules of monomial ideals.
//!
//! For a pair `(X, Δ)` with weight `w` and `c > 0`, a monomial `x^m ∈ R`
//! lies in `𝒥((X,Δ), 𝔞^c)` iff `m + w` is in the interior of `c·Newt(𝔞)`.
//! Dropping the weight gives the multiplier module `𝒥_ω(𝔞^c) ⊆ ω_X`.
//!
//! Both are computed the same way: the member set is cut out of `σ∨` by
//! one strict row per Newton facet, strict rows are closed over the lattice,
//! and the shared minimal-generator engine lists the generators.
//!
//! For fixed `m` membership fails first at `c_m = min_f (n_f, m+w) / b_f`.
//! Since `(n_f, m)` is a nonnegative integer, every such threshold has the
//! form `(z + (n_f, w)) / b_f` with `z >= 0`, and the ideal is constant on
//! `[ξ, ξ')` between consecutive values of that form. Jumping numbers are
//! searched among them.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{ceil_int, int_rat, Int, LatticeVector, Rational, RationalVector};
use crate::ideal::{newton_polyhedron, MonomialIdeal, NewtonPolyhedron};
use crate::polyhedral::{minimal_lattice_generators, strict_to_lattice_closed, HalfspaceSystem};
use crate::toric::{Pair, ToricVariety};

/// Generators together with the closed system they were extracted from.
#[derive(Clone, Debug)]
pub struct IdealResult {
    pub generators: Vec<LatticeVector>,
    pub defining_system: HalfspaceSystem,
    pub c: Rational,
    pub weight_used: RationalVector,
}

pub(crate) fn require_positive(c: &Rational) -> Result<()> {
    if c.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive(c.clone()))
    }
}

pub(crate) fn require_in_semigroup(x: &ToricVariety, m: &LatticeVector) -> Result<()> {
    if m.rank() != x.rank() {
        return Err(Error::DimensionMismatch {
            expected: x.rank(),
            found: m.rank(),
        });
    }
    if !x.in_semigroup(m) {
        return Err(Error::OutsideDualCone(m.clone()));
    }
    Ok(())
}

/// `x^m ∈ 𝒥((X,Δ), 𝔞^c)`.
pub fn multiplier_ideal_membership(
    p: &Pair,
    a: &MonomialIdeal,
    c: &Rational,
    m: &LatticeVector,
) -> Result<bool> {
    require_positive(c)?;
    require_in_semigroup(&p.variety, m)?;
    newton_polyhedron(a).interior_contains(c, &p.weight.add_lattice(m))
}

/// `σ∨ ∩ {(n_f, m) > c·b_f - (n_f, shift)}`, lattice-closed.
fn shifted_interior_system(
    x: &ToricVariety,
    np: &NewtonPolyhedron,
    c: &Rational,
    shift: &RationalVector,
) -> HalfspaceSystem {
    let mut h = x.sigma_dual().as_halfspaces();
    for (n, b) in &np.facets {
        h.push_lattice(n, c * int_rat(b) - n.dot_rational(shift), true);
    }
    strict_to_lattice_closed(&h)
}

fn generators_of(
    x: &ToricVariety,
    system: HalfspaceSystem,
    c: &Rational,
    weight: RationalVector,
) -> Result<IdealResult> {
    let generators = minimal_lattice_generators(&system, x.sigma_dual(), x.dual_hilbert_basis())?;
    Ok(IdealResult {
        generators,
        defining_system: system,
        c: c.clone(),
        weight_used: weight,
    })
}

/// Minimal generators of `𝒥((X,Δ), 𝔞^c)`.
pub fn multiplier_ideal(p: &Pair, a: &MonomialIdeal, c: &Rational) -> Result<IdealResult> {
    require_positive(c)?;
    let x = &p.variety;
    let np = newton_polyhedron(a);
    let system = shifted_interior_system(x, &np, c, &p.weight);
    let out = generators_of(x, system, c, p.weight.clone())?;
    for g in &out.generators {
        if !np.interior_contains(c, &p.weight.add_lattice(g))? {
            return Err(Error::Internal(format!(
                "generator {g} fails the interior re-check"
            )));
        }
    }
    Ok(out)
}

/// Minimal generators of `𝒥_ω(𝔞^c)`; no boundary divisor is involved.
pub fn multiplier_module(x: &ToricVariety, a: &MonomialIdeal, c: &Rational) -> Result<IdealResult> {
    require_positive(c)?;
    let np = newton_polyhedron(a);
    let zero = RationalVector::zero(x.rank());
    let system = shifted_interior_system(x, &np, c, &zero);
    let out = generators_of(x, system, c, zero)?;
    for g in &out.generators {
        if !x.sigma_dual().interior_contains(g) {
            return Err(Error::Internal(format!("module generator {g} is not in ω")));
        }
    }
    Ok(out)
}

/// A log canonical threshold; the unit ideal has none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lct {
    Finite(Rational),
    Infinity,
}

impl fmt::Display for Lct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lct::Finite(q) => write!(f, "{}", crate::exact::format_rational(q)),
            Lct::Infinity => f.write_str("infinity"),
        }
    }
}

/// `sup {c > 0 : 𝒥((X,Δ), 𝔞^c) = R}`, read off at `m = 0`.
///
/// Returns `0` when no positive `c` gives the unit ideal.
pub fn lct(p: &Pair, a: &MonomialIdeal) -> Lct {
    let np = newton_polyhedron(a);
    let mut best: Option<Rational> = None;
    for (n, b) in &np.facets {
        let nw = n.dot_rational(&p.weight);
        if b.is_zero() {
            if !nw.is_positive() {
                return Lct::Finite(Rational::zero());
            }
        } else {
            let r = nw / int_rat(b);
            if best.as_ref().is_none_or(|q| r < *q) {
                best = Some(r);
            }
        }
    }
    match best {
        None => Lct::Infinity,
        Some(q) if !q.is_positive() => Lct::Finite(Rational::zero()),
        Some(q) => Lct::Finite(q),
    }
}

/// Jumping numbers in `(0, c_max]`.
#[derive(Clone, Debug)]
pub struct JumpReport {
    /// Generators of `𝒥(𝔞^c)` for all small `c > 0`.
    pub initial: Vec<LatticeVector>,
    /// Every candidate value that was tested, ascending.
    pub candidates: Vec<Rational>,
    /// Candidates where the ideal drops, with the generators at that value.
    pub jumps: Vec<(Rational, Vec<LatticeVector>)>,
    pub c_max: Rational,
}

impl JumpReport {
    pub fn jump_values(&self) -> Vec<Rational> {
        self.jumps.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn rejected(&self) -> Vec<Rational> {
        let jumps = self.jump_values();
        self.candidates
            .iter()
            .filter(|c| !jumps.contains(c))
            .cloned()
            .collect()
    }
}

/// The threshold values `(z + (n_f,w)) / b_f` in `(0, c_max]`, `z >= 0`.
pub fn jump_candidates(p: &Pair, a: &MonomialIdeal, c_max: &Rational) -> Vec<Rational> {
    let np = newton_polyhedron(a);
    let mut out = Vec::new();
    for (n, b) in np.facets.iter().filter(|(_, b)| b.is_positive()) {
        let nw = n.dot_rational(&p.weight);
        let bq = int_rat(b);
        // 0 < (z + nw)/b <= c_max
        let lo = ceil_int(&(-&nw)).max(Int::zero());
        let hi = (c_max * &bq - &nw).floor().to_integer();
        let mut z = lo;
        while z <= hi {
            let v = (int_rat(&z) + &nw) / &bq;
            if v.is_positive() {
                out.push(v);
            }
            z += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn jumping_numbers(p: &Pair, a: &MonomialIdeal, c_max: &Rational) -> Result<JumpReport> {
    require_positive(c_max)?;
    let candidates = jump_candidates(p, a, c_max);
    let two = Rational::from_integer(Int::from(2));
    let first = candidates.first().unwrap_or(c_max);
    let initial = multiplier_ideal(p, a, &(first / &two))?.generators;
    let mut jumps = Vec::new();
    let mut prev = Rational::zero();
    for xi in &candidates {
        let mid = (&prev + xi) / &two;
        let before = multiplier_ideal(p, a, &mid)?.generators;
        let at = multiplier_ideal(p, a, xi)?.generators;
        if before != at {
            jumps.push((xi.clone(), at));
        }
        prev = xi.clone();
    }
    Ok(JumpReport {
        initial,
        candidates,
        jumps,
        c_max: c_max.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::ideal::make_ideal;
    use crate::toric::{make_pair, make_variety, QDivisor};
    use std::sync::Arc;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn lvs(cs: &[&[i64]]) -> Vec<LatticeVector> {
        cs.iter().map(|c| lv(c)).collect()
    }

    fn variety(rays: &[&[i64]]) -> Arc<ToricVariety> {
        Arc::new(make_variety(rays[0].len(), lvs(rays)).unwrap())
    }

    fn pair(x: &Arc<ToricVariety>) -> Pair {
        make_pair(x.clone(), QDivisor::zero(x.rays().len())).unwrap()
    }

    fn a2() -> Arc<ToricVariety> {
        variety(&[&[1, 0], &[0, 1]])
    }

    fn quadric() -> Arc<ToricVariety> {
        variety(&[&[1, 0], &[1, 2]])
    }

    fn cusp() -> MonomialIdeal {
        make_ideal(a2(), lvs(&[&[2, 0], &[0, 3]])).unwrap()
    }

    fn quadric_max() -> MonomialIdeal {
        make_ideal(quadric(), lvs(&[&[0, 1], &[1, 0], &[2, -1]])).unwrap()
    }

    #[test]
    fn membership_examples() {
        let p = pair(&a2());
        assert!(!multiplier_ideal_membership(&p, &cusp(), &rat(5, 6), &lv(&[0, 0])).unwrap());
        assert!(multiplier_ideal_membership(&p, &cusp(), &rat(5, 6), &lv(&[1, 0])).unwrap());
        let q = pair(&quadric());
        assert!(
            multiplier_ideal_membership(&q, &quadric_max(), &rat(1, 1), &lv(&[2, -1])).unwrap()
        );
        assert!(matches!(
            multiplier_ideal_membership(&p, &cusp(), &rat(1, 1), &lv(&[-1, 0])),
            Err(Error::OutsideDualCone(_))
        ));
        assert!(matches!(
            multiplier_ideal_membership(&p, &cusp(), &rat(0, 1), &lv(&[1, 0])),
            Err(Error::NonPositive(_))
        ));
    }

    #[test]
    fn ideal_examples() {
        let p = pair(&a2());
        let r = multiplier_ideal(&p, &cusp(), &rat(5, 6)).unwrap();
        assert_eq!(r.generators, lvs(&[&[0, 1], &[1, 0]]));
        assert_eq!(r.weight_used, lv(&[1, 1]).to_rational());
        assert_eq!(
            multiplier_ideal(&p, &cusp(), &rat(1, 2))
                .unwrap()
                .generators,
            lvs(&[&[0, 0]])
        );
        let q = pair(&quadric());
        let r = multiplier_ideal(&q, &quadric_max(), &rat(1, 1)).unwrap();
        assert_eq!(r.generators, lvs(&[&[0, 1], &[1, 0], &[2, -1]]));
        assert!(!r.defining_system.contains_lattice(&lv(&[0, 0])));
    }

    #[test]
    fn module_examples() {
        let x = a2();
        let unit = make_ideal(x.clone(), lvs(&[&[0, 0]])).unwrap();
        assert_eq!(
            multiplier_module(&x, &unit, &rat(1, 1)).unwrap().generators,
            lvs(&[&[1, 1]])
        );
        assert_eq!(
            multiplier_module(&x, &cusp(), &rat(5, 6))
                .unwrap()
                .generators,
            lvs(&[&[1, 2], &[2, 1]])
        );
        let q = quadric();
        let unit = make_ideal(q.clone(), lvs(&[&[0, 0]])).unwrap();
        assert_eq!(
            multiplier_module(&q, &unit, &rat(1, 1)).unwrap().generators,
            lvs(&[&[1, 0]])
        );
    }

    #[test]
    fn lct_examples() {
        let p = pair(&a2());
        assert_eq!(lct(&p, &cusp()), Lct::Finite(rat(5, 6)));
        let m = make_ideal(a2(), lvs(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(lct(&p, &m), Lct::Finite(rat(2, 1)));
        assert_eq!(
            lct(&pair(&quadric()), &quadric_max()),
            Lct::Finite(rat(1, 1))
        );
        let unit = make_ideal(a2(), lvs(&[&[0, 0]])).unwrap();
        assert_eq!(lct(&p, &unit), Lct::Infinity);
        // Δ = 2·D_1 pushes the weight off σ∨'s interior
        let bad = make_pair(a2(), QDivisor(vec![rat(2, 1), rat(0, 1)])).unwrap();
        assert_eq!(lct(&bad, &m), Lct::Finite(rat(0, 1)));
        assert_eq!(lct(&bad, &unit), Lct::Finite(rat(0, 1)));
    }

    #[test]
    fn cusp_jumps() {
        let p = pair(&a2());
        let r = jumping_numbers(&p, &cusp(), &rat(1, 1)).unwrap();
        assert_eq!(r.initial, lvs(&[&[0, 0]]));
        assert_eq!(r.jump_values(), vec![rat(5, 6)]);
        assert!(r.candidates.contains(&rat(1, 1)));
        assert!(r.rejected().contains(&rat(1, 1)));
        assert_eq!(r.jumps[0].1, lvs(&[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn other_jumps() {
        let p = pair(&a2());
        let m = make_ideal(a2(), lvs(&[&[1, 0], &[0, 1]])).unwrap();
        let r = jumping_numbers(&p, &m, &rat(2, 1)).unwrap();
        assert_eq!(r.jump_values(), vec![rat(2, 1)]);
        let unit = make_ideal(a2(), lvs(&[&[0, 0]])).unwrap();
        let r = jumping_numbers(&p, &unit, &rat(3, 1)).unwrap();
        assert!(r.jumps.is_empty());
        assert!(r.candidates.is_empty());
        assert_eq!(r.initial, lvs(&[&[0, 0]]));
    }
}
