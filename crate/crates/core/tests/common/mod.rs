//! Invariant checks shared by the acceptance harness and the property tests.
//!
//! Each check takes one instance and returns `Err` with a description of
//! the first violation it finds.

#![allow(dead_code)]

use std::sync::Arc;

use num_traits::{One, Zero};
use torimult::corpus::Instance;
use torimult::exact::{int_rat, rat, LatticeVector, Rational};
use torimult::ideal::{make_ideal, newton_polyhedron, MonomialIdeal};
use torimult::multiplier::{
    jump_candidates, multiplier_ideal, multiplier_ideal_membership, multiplier_module,
};
use torimult::polyhedral::{hilbert_basis, lattice_points, Cone};
use torimult::resolution::{check_positivity_on_resolution, log_resolution_2d, ord_ideal_on_ray};
use torimult::test_ideal::{test_ideal, test_ideal_membership};
use torimult::toric::{make_pair, make_variety, omega_generators, QDivisor, ToricVariety};

pub type Check = Result<(), String>;

pub fn lv(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c)
}

pub fn lvs(cs: &[&[i64]]) -> Vec<LatticeVector> {
    cs.iter().map(|c| lv(c)).collect()
}

pub fn variety(rays: &[&[i64]]) -> Arc<ToricVariety> {
    Arc::new(make_variety(rays[0].len(), lvs(rays)).unwrap())
}

pub fn plane() -> Arc<ToricVariety> {
    variety(&[&[1, 0], &[0, 1]])
}

pub fn quadric() -> Arc<ToricVariety> {
    variety(&[&[1, 0], &[1, 2]])
}

pub fn threefold() -> Arc<ToricVariety> {
    variety(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, -2]])
}

pub fn cusp_ideal() -> MonomialIdeal {
    make_ideal(plane(), lvs(&[&[2, 0], &[0, 3]])).unwrap()
}

pub fn quadric_max() -> MonomialIdeal {
    make_ideal(quadric(), lvs(&[&[0, 1], &[1, 0], &[2, -1]])).unwrap()
}

pub fn threefold_instance() -> Instance {
    let x = threefold();
    Instance {
        ideal: make_ideal(x.clone(), x.dual_hilbert_basis().elements.clone()).unwrap(),
        delta: QDivisor::zero(4),
        variety: x,
        c: rat(1, 1),
    }
}

fn show(v: &[LatticeVector]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Semigroup elements of degree at most `d` for the grading by the rays.
pub fn semigroup_points(x: &ToricVariety, d: i64) -> Vec<LatticeVector> {
    let mut h = x.sigma_dual().as_halfspaces();
    h.push_lattice(&-&x.grading(), -Rational::from_integer(d.into()), false);
    lattice_points(&h).unwrap()
}

fn module_member(x: &ToricVariety, a: &MonomialIdeal, c: &Rational, m: &LatticeVector) -> bool {
    x.in_semigroup(m)
        && newton_polyhedron(a)
            .interior_contains(c, &m.to_rational())
            .unwrap()
}

/// Generators at a larger exponent stay members at a smaller one.
pub fn monotonicity(inst: &Instance, step: &Rational) -> Check {
    let p = inst.pair().map_err(err)?;
    let (a, c) = (&inst.ideal, &inst.c);
    let larger = c + step;
    for g in multiplier_ideal(&p, a, &larger).map_err(err)?.generators {
        if !multiplier_ideal_membership(&p, a, c, &g).map_err(err)? {
            return Err(format!("𝒥 generator {g} at c'={larger} not in 𝒥 at c={c}"));
        }
    }
    for g in multiplier_module(&inst.variety, a, &larger)
        .map_err(err)?
        .generators
    {
        if !module_member(&inst.variety, a, c, &g) {
            return Err(format!(
                "𝒥_ω generator {g} at c'={larger} not in 𝒥_ω at c={c}"
            ));
        }
    }
    Ok(())
}

/// The ideal is constant from `c` up to halfway to the next candidate.
pub fn right_continuity(inst: &Instance) -> Check {
    let p = inst.pair().map_err(err)?;
    let (a, c) = (&inst.ideal, &inst.c);
    let next = jump_candidates(&p, a, &(c + Rational::one()))
        .into_iter()
        .find(|x| x > c);
    let eps = match next {
        Some(n) => (n - c) / int_rat(&2.into()),
        None => rat(1, 2),
    };
    let here = multiplier_ideal(&p, a, c).map_err(err)?.generators;
    let there = multiplier_ideal(&p, a, &(c + &eps))
        .map_err(err)?
        .generators;
    if here != there {
        return Err(format!(
            "c={c}: [{}] but c+{eps}: [{}]",
            show(&here),
            show(&there)
        ));
    }
    Ok(())
}

/// Generators plus a Hilbert basis step remain members.
pub fn upset_closure(inst: &Instance) -> Check {
    let p = inst.pair().map_err(err)?;
    let (a, c) = (&inst.ideal, &inst.c);
    let x = &inst.variety;
    for g in multiplier_ideal(&p, a, c).map_err(err)?.generators {
        for h in x.dual_hilbert_basis().elements() {
            if !multiplier_ideal_membership(&p, a, c, &(&g + h)).map_err(err)? {
                return Err(format!("{g} + {h} left the ideal"));
            }
        }
    }
    for g in test_ideal(x, a, c).map_err(err)?.generators {
        for h in x.dual_hilbert_basis().elements() {
            if !test_ideal_membership(x, a, c, &(&g + h))
                .map_err(err)?
                .member
            {
                return Err(format!("{g} + {h} left the test ideal"));
            }
        }
    }
    Ok(())
}

/// `𝒥(𝔞^{kc}) = 𝒥((𝔞^k)^c)` for `k = 2, 3`.
pub fn scaling_law(inst: &Instance) -> Check {
    let p = inst.pair().map_err(err)?;
    let (a, c) = (&inst.ideal, &inst.c);
    for k in 2..=3usize {
        let ak = a.power(k).map_err(err)?;
        let kc = c * Rational::from_integer(k.into());
        let lhs = multiplier_ideal(&p, a, &kc).map_err(err)?.generators;
        let rhs = multiplier_ideal(&p, &ak, c).map_err(err)?.generators;
        if lhs != rhs {
            return Err(format!("k={k}: [{}] vs [{}]", show(&lhs), show(&rhs)));
        }
    }
    Ok(())
}

/// Every ω section is positive on every ray of the log resolution.
pub fn positivity_on_resolution(inst: &Instance) -> Check {
    let x = &inst.variety;
    let fan = log_resolution_2d(x, &inst.ideal).map_err(err)?;
    let omega = omega_generators(x).map_err(err)?;
    let mut sections = omega.clone();
    for g in &omega {
        for h in x.dual_hilbert_basis().elements() {
            sections.push(g + h);
        }
    }
    for m in sections {
        if !check_positivity_on_resolution(x, &m, &fan).map_err(err)? {
            return Err(format!("{m} is not positive on the resolution"));
        }
    }
    Ok(())
}

/// `m ∈ Newt(𝔞)` iff `(m, u_j) >= a_j` on every ray of the resolution.
pub fn newton_vs_resolution(inst: &Instance) -> Check {
    let x = &inst.variety;
    let a = &inst.ideal;
    let fan = log_resolution_2d(x, a).map_err(err)?;
    let np = newton_polyhedron(a);
    let orders: Vec<_> = fan
        .rays()
        .iter()
        .map(|u| ord_ideal_on_ray(a, u).map(|o| (u.clone(), o)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let g = x.grading();
    let top: i64 = a
        .exponents()
        .iter()
        .map(|e| i64::try_from(g.dot(e)).unwrap())
        .max()
        .unwrap();
    for m in semigroup_points(x, top + 2) {
        let in_newton = np.contains(&m.to_rational());
        let by_rays = orders.iter().all(|(u, o)| m.dot(u) >= *o);
        if in_newton != by_rays {
            return Err(format!("{m}: Newton {in_newton}, rays {by_rays}"));
        }
    }
    Ok(())
}

/// The projected test-ideal system agrees with per-point feasibility.
pub fn projection_vs_pointwise(inst: &Instance, limit: usize) -> Check {
    let x = &inst.variety;
    let (a, c) = (&inst.ideal, &inst.c);
    let tau = test_ideal(x, a, c).map_err(err)?;
    let g = x.grading();
    let top: i64 = tau
        .generators
        .iter()
        .map(|m| i64::try_from(g.dot(m)).unwrap())
        .max()
        .unwrap_or(0);
    let mut pts = semigroup_points(x, top + 1);
    pts.sort_by(|p, q| g.dot(p).cmp(&g.dot(q)).then(p.cmp(q)));
    pts.truncate(limit);
    for m in pts {
        let w = test_ideal_membership(x, a, c, &m).map_err(err)?;
        if w.member != tau.defining_system.contains_lattice(&m) {
            return Err(format!("{m}: pointwise {}, projection disagrees", w.member));
        }
        if let Some(w) = &w.witness {
            let ok = x
                .rays()
                .iter()
                .all(|v| v.dot_rational(w) <= Rational::one())
                && newton_polyhedron(a)
                    .interior_contains(c, &w.add_lattice(&m))
                    .unwrap();
            if !ok {
                return Err(format!("witness {w} for {m} fails re-substitution"));
            }
        }
    }
    Ok(())
}

/// When `K_X` is ℚ-Cartier the test ideal is the multiplier ideal of `Δ = 0`.
pub fn q_gorenstein_collapse(inst: &Instance) -> Check {
    let x = &inst.variety;
    let p = make_pair(x.clone(), QDivisor::zero(x.rays().len())).map_err(err)?;
    let (a, c) = (&inst.ideal, &inst.c);
    let tau = test_ideal(x, a, c).map_err(err)?.generators;
    let j = multiplier_ideal(&p, a, c).map_err(err)?.generators;
    if tau != j {
        return Err(format!("τ [{}] vs 𝒥 [{}]", show(&tau), show(&j)));
    }
    Ok(())
}

/// Dualizing twice returns the cone.
pub fn biduality(c: &Cone) -> Check {
    let d = c.dual().map_err(err)?;
    let dd = d.dual().map_err(err)?;
    if !dd.same_as(c) {
        return Err(format!(
            "dual of dual of [{}] is [{}]",
            show(c.rays()),
            show(dd.rays())
        ));
    }
    for r in c.rays() {
        if !d.rays().iter().all(|f| !(f.dot(r) < Zero::zero())) {
            return Err(format!("ray {r} is negative on the dual"));
        }
    }
    Ok(())
}

/// No basis element is a sum involving another, and every semigroup
/// element up to three times the largest basis degree is a sum of them.
pub fn hilbert_basis_checks(c: &Cone) -> Check {
    let hb = hilbert_basis(c).map_err(err)?;
    let elems = hb.elements();
    for h in elems {
        for k in elems {
            if h != k && c.contains(&(h - k)) {
                return Err(format!("{h} - {k} is in the cone"));
            }
        }
    }
    let g = c.grading().map_err(err)?;
    let top = elems.iter().map(|h| g.dot(h)).max().unwrap();
    let mut h = c.as_halfspaces();
    h.push_lattice(&-&g, -(int_rat(&top) * int_rat(&3.into())), false);
    let mut pts = lattice_points(&h).map_err(err)?;
    pts.sort_by(|p, q| g.dot(p).cmp(&g.dot(q)).then(p.cmp(q)));
    let mut reached = std::collections::HashSet::new();
    for p in pts {
        if p.is_zero() || elems.iter().any(|e| reached.contains(&(&p - e))) {
            reached.insert(p);
        } else {
            return Err(format!("{p} is not a sum of basis elements"));
        }
    }
    Ok(())
}
