//! Cross-checks of the engines against independent computations.
//!
//! * `howald`: on a smooth cone, in coordinates `M ↦ ((m, v_i))_i` where σ∨
//!   becomes the orthant, membership `M + w ∈ int(c·Newt)` is tested on a
//!   box with machine integers. The Newton polyhedron is never built: every
//!   hyperplane spanned by differences of exponents and coordinate
//!   directions whose normal is nonnegative is tried, which includes all
//!   facets and only gives valid conditions.
//! * `resolution2d`: the per-ray formulas on a log resolution, also after
//!   one extra blow-up.
//! * `brute`: pointwise membership scanned over a degree-bounded region of
//!   the semigroup, minimalized by pairwise domination, against the
//!   minimal-generator engine; pointwise test-ideal feasibility against the
//!   projected system.
//! * `corollary`: both inclusions of the sum-over-boundaries identity.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Family, Instance};
use crate::error::{Error, Result};
use crate::exact::{LatticeVector, Rational, RationalVector};
use crate::ideal::newton_polyhedron;
use crate::multiplier::{multiplier_ideal, multiplier_module};
use crate::resolution::{
    log_resolution_2d, multiplier_ideal_on_fan, multiplier_ideal_via_resolution,
    multiplier_module_on_fan, multiplier_module_via_resolution,
};
use crate::test_ideal::{corollary_check, test_ideal, test_ideal_membership};
use crate::toric::{determinant, ToricVariety};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Oracle {
    Resolution2d,
    Howald,
    Brute,
    Corollary,
}

impl Oracle {
    pub const ALL: [Oracle; 4] = [
        Oracle::Resolution2d,
        Oracle::Howald,
        Oracle::Brute,
        Oracle::Corollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Oracle::Resolution2d => "resolution2d",
            Oracle::Howald => "howald",
            Oracle::Brute => "brute",
            Oracle::Corollary => "corollary",
        }
    }

    /// The corpus family an oracle is run on by default.
    pub fn family(self) -> Family {
        match self {
            Oracle::Resolution2d => Family::Plane,
            Oracle::Howald => Family::AffineSpace,
            Oracle::Brute => Family::Plane,
            Oracle::Corollary => Family::Simplicial,
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Oracle> {
        Oracle::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown oracle {s:?}")))
    }
}

fn small(v: &LatticeVector) -> Result<Vec<i64>> {
    v.coords()
        .iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Internal(format!("{v} exceeds i64")))
        })
        .collect()
}

fn small_rational(q: &Rational) -> Result<(i128, i128)> {
    match (q.numer().to_i128(), q.denom().to_i128()) {
        (Some(p), Some(d)) => Ok((p, d)),
        _ => Err(Error::Internal(format!("{q} exceeds i128"))),
    }
}

fn det128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != c)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det128(&minor)
            })
            .sum(),
    }
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

/// Nonnegative primitive normals of hyperplanes spanned by `n - 1` of the
/// given directions.
fn candidate_normals(directions: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out: Vec<Vec<i128>> = Vec::new();
    let mut pick: Vec<usize> = (0..n - 1).collect();
    if directions.len() < n - 1 {
        return out;
    }
    loop {
        let rows: Vec<Vec<i128>> = pick.iter().map(|&i| directions[i].clone()).collect();
        let mut normal: Vec<i128> = (0..n)
            .map(|k| {
                let minor: Vec<Vec<i128>> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != k)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let s = if k % 2 == 0 { 1 } else { -1 };
                s * det128(&minor)
            })
            .collect();
        if normal.iter().any(|x| *x != 0) {
            if normal.iter().all(|x| *x <= 0) {
                normal.iter_mut().for_each(|x| *x = -*x);
            }
            if normal.iter().all(|x| *x >= 0) {
                let g = normal.iter().fold(0, |g, x| gcd128(g, *x));
                normal.iter_mut().for_each(|x| *x /= g);
                if !out.contains(&normal) {
                    out.push(normal);
                }
            }
        }
        // next (n-1)-subset in lexicographic order
        let k = n - 1;
        let mut i = k;
        while i > 0 && pick[i - 1] == directions.len() - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        pick[i - 1] += 1;
        for j in i..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
    out
}

/// Generators of the multiplier ideal on a smooth cone, in ray coordinates
/// `((m, v_1), …, (m, v_n))`, from a scan of `[0, box_max]^n`.
pub fn howald_generators(inst: &Instance, box_max: i64) -> Result<Vec<Vec<i64>>> {
    let x = &inst.variety;
    let n = x.rank();
    if x.rays().len() != n || !determinant(x.rays()).abs().is_one() {
        return Err(Error::Precondition(
            "howald oracle needs a smooth cone".into(),
        ));
    }
    let exps: Vec<Vec<i128>> = inst
        .ideal
        .exponents()
        .iter()
        .map(|e| {
            x.rays()
                .iter()
                .map(|v| v.dot(e).to_i128().expect("small"))
                .collect()
        })
        .collect();
    let mut dirs: Vec<Vec<i128>> = Vec::new();
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            dirs.push(exps[i].iter().zip(&exps[j]).map(|(a, b)| a - b).collect());
        }
    }
    for k in 0..n {
        dirs.push((0..n).map(|i| i128::from(i == k)).collect());
    }
    let normals = candidate_normals(&dirs, n);
    let bounds: Vec<i128> = normals
        .iter()
        .map(|nv| {
            exps.iter()
                .map(|e| dot128(nv, e))
                .min()
                .expect("nonzero ideal")
        })
        .collect();

    // weight in ray coordinates: 1 - δ_i over a common denominator
    let weights: Vec<(i128, i128)> = inst
        .delta
        .coeffs()
        .iter()
        .map(|d| small_rational(&(Rational::one() - d)))
        .collect::<Result<_>>()?;
    let den = weights
        .iter()
        .fold(1i128, |l, (_, d)| l / gcd128(l, *d) * d);
    let w: Vec<i128> = weights.iter().map(|(p, d)| p * (den / d)).collect();
    let (p, q) = small_rational(&inst.c)?;

    let member = |m: &[i128]| {
        let y: Vec<i128> = m.iter().zip(&w).map(|(mi, wi)| den * mi + wi).collect();
        normals
            .iter()
            .zip(&bounds)
            .all(|(nv, b)| q * dot128(nv, &y) > p * den * b)
    };

    let mut kept: Vec<Vec<i128>> = Vec::new();
    let mut m = vec![0i128; n];
    loop {
        if member(&m) && !kept.iter().any(|k| k.iter().zip(&m).all(|(a, b)| a <= b)) {
            kept.push(m.clone());
        }
        // lexicographic odometer over the box
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(kept
                    .into_iter()
                    .map(|v| v.into_iter().map(|t| t as i64).collect())
                    .collect());
            }
            i -= 1;
            if m[i] < i128::from(box_max) {
                m[i] += 1;
                for t in m.iter_mut().skip(i + 1) {
                    *t = 0;
                }
                break;
            }
        }
    }
}

fn dot128(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn in_ray_coordinates(x: &ToricVariety, gens: &[LatticeVector]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| {
            x.rays()
                .iter()
                .map(|v| v.dot(g).to_i64().expect("small"))
                .collect()
        })
        .collect();
    out.sort();
    out
}

/// Semigroup elements `m` with `(g, m) <= degree`, `g` the sum of the rays.
fn semigroup_slice(x: &ToricVariety, degree: i64) -> Result<Vec<LatticeVector>> {
    let n = x.rank();
    let g = small(&x.grading())?;
    let rays: Vec<Vec<i64>> = x.rays().iter().map(small).collect::<Result<_>>()?;
    // the slice is the convex hull of 0 and degree·r/(g, r) over dual rays r
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for r in x.sigma_dual().rays() {
        let r = small(r)?;
        let gr: i64 = g.iter().zip(&r).map(|(a, b)| a * b).sum();
        for k in 0..n {
            let t = Rational::new((degree * r[k]).into(), gr.into());
            lo[k] = lo[k].min(t.floor().to_integer().to_i64().expect("small"));
            hi[k] = hi[k].max(t.ceil().to_integer().to_i64().expect("small"));
        }
    }
    let mut out = Vec::new();
    let mut m = lo.clone();
    loop {
        let ok = rays
            .iter()
            .all(|v| v.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() >= 0)
            && g.iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() <= degree;
        if ok {
            out.push(LatticeVector::from_i64s(&m));
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if m[i] < hi[i] {
                m[i] += 1;
                for k in i + 1..n {
                    m[k] = lo[k];
                }
                break;
            }
        }
    }
}

/// Minimal elements of a finite up-set slice by pairwise domination.
pub fn minimal_by_domination(
    x: &ToricVariety,
    mut members: Vec<LatticeVector>,
) -> Vec<LatticeVector> {
    let g = x.grading();
    members.sort_by(|a, b| g.dot(a).cmp(&g.dot(b)).then(a.cmp(b)));
    let mut kept: Vec<LatticeVector> = Vec::new();
    for m in members {
        if !kept.iter().any(|k| x.in_semigroup(&(&m - k))) {
            kept.push(m);
        }
    }
    kept.sort();
    kept
}

/// Interior test `m + w ∈ int(c·Newt)` in machine integers.
struct IntInterior {
    facets: Vec<(Vec<i128>, i128)>,
    w: Vec<i128>,
    den: i128,
    p: i128,
    q: i128,
}

impl IntInterior {
    fn new(inst: &Instance, w: &RationalVector) -> Result<IntInterior> {
        let np = newton_polyhedron(&inst.ideal);
        let facets = np
            .facets
            .iter()
            .map(|(n, b)| {
                Ok((
                    small(n)?.into_iter().map(i128::from).collect(),
                    b.to_i128()
                        .ok_or_else(|| Error::Internal("facet offset".into()))?,
                ))
            })
            .collect::<Result<_>>()?;
        let ws: Vec<(i128, i128)> = w
            .coords()
            .iter()
            .map(small_rational)
            .collect::<Result<_>>()?;
        let den = ws.iter().fold(1i128, |l, (_, d)| l / gcd128(l, *d) * d);
        let (p, q) = small_rational(&inst.c)?;
        Ok(IntInterior {
            facets,
            w: ws.iter().map(|(a, d)| a * (den / d)).collect(),
            den,
            p,
            q,
        })
    }

    fn contains(&self, m: &LatticeVector) -> bool {
        let y: Vec<i128> = m
            .coords()
            .iter()
            .zip(&self.w)
            .map(|(mi, wi)| self.den * mi.to_i128().expect("small") + wi)
            .collect();
        self.facets
            .iter()
            .all(|(n, b)| self.q * dot128(n, &y) > self.p * self.den * b)
    }
}

fn degree_bound(x: &ToricVariety, gens: &[LatticeVector]) -> Result<i64> {
    let g = x.grading();
    let top = gens.iter().map(|m| g.dot(m)).max().unwrap_or_default();
    let step = x
        .dual_hilbert_basis()
        .elements
        .iter()
        .map(|h| g.dot(h))
        .max()
        .unwrap_or_default();
    (top + step)
        .to_i64()
        .ok_or_else(|| Error::Internal("degree bound exceeds i64".into()))
}

fn compare(label: &str, engine: &[LatticeVector], oracle: &[LatticeVector], out: &mut Vec<String>) {
    if engine != oracle {
        out.push(format!(
            "{label}: engine [{}] vs oracle [{}]",
            engine
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(","),
            oracle
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
}

fn brute_check(inst: &Instance, out: &mut Vec<String>) -> Result<()> {
    let x = &inst.variety;
    let zero = RationalVector::zero(x.rank());
    let module = multiplier_module(x, &inst.ideal, &inst.c)?.generators;
    let mut cases = vec![("multiplier module", module, zero)];
    // Without a ℚ-Cartier K_X+Δ there is no multiplier ideal to compare.
    match inst.pair() {
        Ok(pair) => {
            let ideal = multiplier_ideal(&pair, &inst.ideal, &inst.c)?.generators;
            cases.insert(0, ("multiplier ideal", ideal, pair.weight));
        }
        Err(Error::NotQCartier) => {}
        Err(e) => return Err(e),
    }
    for (label, engine, w) in cases {
        let d = degree_bound(x, &engine)?;
        let slice = semigroup_slice(x, d)?;
        let interior = IntInterior::new(inst, &w)?;
        let members: Vec<LatticeVector> =
            slice.into_iter().filter(|m| interior.contains(m)).collect();
        compare(label, &engine, &minimal_by_domination(x, members), out);
    }

    let tau = test_ideal(x, &inst.ideal, &inst.c)?;
    let g = x.grading();
    let top: crate::exact::Int = tau
        .generators
        .iter()
        .map(|m| g.dot(m))
        .max()
        .unwrap_or_default();
    let d = (top + 1u32).to_i64().unwrap_or(i64::MAX);
    let mut pts = semigroup_slice(x, d)?;
    pts.sort_by(|a, b| g.dot(a).cmp(&g.dot(b)).then(a.cmp(b)));
    pts.truncate(400);
    for m in pts {
        let pointwise = test_ideal_membership(x, &inst.ideal, &inst.c, &m)?.member;
        if pointwise != tau.defining_system.contains_lattice(&m) {
            out.push(format!(
                "test ideal at {m}: pointwise {pointwise}, projection disagrees"
            ));
        }
    }
    Ok(())
}

fn resolution_check(inst: &Instance, out: &mut Vec<String>) -> Result<()> {
    let x = &inst.variety;
    if x.rank() != 2 {
        return Err(Error::Precondition(
            "resolution2d oracle needs rank 2".into(),
        ));
    }
    let pair = inst.pair()?;
    let (a, c) = (&inst.ideal, &inst.c);
    let ideal = multiplier_ideal(&pair, a, c)?.generators;
    let module = multiplier_module(x, a, c)?.generators;
    compare(
        "multiplier ideal",
        &ideal,
        &multiplier_ideal_via_resolution(&pair, a, c)?,
        out,
    );
    compare(
        "multiplier module",
        &module,
        &multiplier_module_via_resolution(x, a, c)?,
        out,
    );
    let fan = log_resolution_2d(x, a)?;
    if !fan.is_smooth() {
        out.push("log resolution is not smooth".into());
    }
    let finer = fan.blow_up((fan.rays().len() - 1) / 2);
    compare(
        "multiplier ideal after blow-up",
        &ideal,
        &multiplier_ideal_on_fan(&pair, a, c, &finer)?,
        out,
    );
    compare(
        "multiplier module after blow-up",
        &module,
        &multiplier_module_on_fan(x, a, c, &finer)?,
        out,
    );
    Ok(())
}

fn howald_check(inst: &Instance, out: &mut Vec<String>) -> Result<()> {
    let pair = inst.pair()?;
    let engine = multiplier_ideal(&pair, &inst.ideal, &inst.c)?.generators;
    let oracle = howald_generators(inst, 30)?;
    let engine = in_ray_coordinates(&inst.variety, &engine);
    if engine != oracle {
        out.push(format!("howald: engine {engine:?} vs box scan {oracle:?}"));
    }
    Ok(())
}

/// Discrepancies between the engines and one oracle on one instance.
///
/// An instance outside the oracle's scope is a [`Error::Precondition`].
pub fn check_instance(oracle: Oracle, inst: &Instance, seed: u64) -> Result<Vec<String>> {
    let mut out = Vec::new();
    match oracle {
        Oracle::Resolution2d => resolution_check(inst, &mut out)?,
        Oracle::Howald => howald_check(inst, &mut out)?,
        Oracle::Brute => brute_check(inst, &mut out)?,
        Oracle::Corollary => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = corollary_check(&inst.variety, &inst.ideal, &inst.c, 20, &mut rng)?;
            out.extend(r.counterexamples);
        }
    }
    Ok(out)
}

/// Result of running one oracle over many instances.
#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub checked: usize,
    /// `(instance line, discrepancy)` pairs.
    pub failures: Vec<(String, String)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_suite(oracle: Oracle, instances: &[Instance], seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    for (i, inst) in instances.iter().enumerate() {
        for d in check_instance(oracle, inst, seed.wrapping_add(i as u64))? {
            report.failures.push((inst.to_string(), d));
        }
        report.checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::instance;
    use crate::exact::rat;
    use crate::ideal::make_ideal;
    use crate::toric::{make_variety, QDivisor};
    use std::sync::Arc;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    fn cusp() -> Instance {
        let x = Arc::new(make_variety(2, vec![lv(&[1, 0]), lv(&[0, 1])]).unwrap());
        Instance {
            ideal: make_ideal(x.clone(), vec![lv(&[2, 0]), lv(&[0, 3])]).unwrap(),
            variety: x,
            delta: QDivisor::zero(2),
            c: rat(5, 6),
        }
    }

    #[test]
    fn normals_of_the_cusp() {
        let dirs = vec![vec![2, -3], vec![1, 0], vec![0, 1]];
        let mut n = candidate_normals(&dirs, 2);
        n.sort();
        assert_eq!(n, vec![vec![0, 1], vec![1, 0], vec![3, 2]]);
    }

    #[test]
    fn howald_box_scan_on_the_cusp() {
        assert_eq!(
            howald_generators(&cusp(), 30).unwrap(),
            vec![vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn all_oracles_agree_on_the_cusp() {
        for o in Oracle::ALL {
            assert!(check_instance(o, &cusp(), 0).unwrap().is_empty(), "{o}");
        }
    }

    #[test]
    fn oracle_names_round_trip() {
        for o in Oracle::ALL {
            assert_eq!(o.name().parse::<Oracle>().unwrap(), o);
        }
        assert!("nope".parse::<Oracle>().is_err());
    }

    #[test]
    fn scope_is_enforced() {
        let three = instance(Family::AffineSpace, 0, 1);
        assert_eq!(three.variety.rank(), 3);
        assert!(matches!(
            check_instance(Oracle::Resolution2d, &three, 0),
            Err(Error::Precondition(_))
        ));
        let quadric = Arc::new(make_variety(2, vec![lv(&[1, 0]), lv(&[1, 2])]).unwrap());
        let inst = Instance {
            ideal: make_ideal(quadric.clone(), vec![lv(&[1, 0])]).unwrap(),
            variety: quadric,
            delta: QDivisor::zero(2),
            c: rat(1, 1),
        };
        assert!(matches!(
            check_instance(Oracle::Howald, &inst, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn small_corpora_agree() {
        for o in Oracle::ALL {
            let insts: Vec<Instance> = (0..6).map(|i| instance(o.family(), 5, i)).collect();
            let r = run_suite(o, &insts, 5).unwrap();
            assert!(r.passed(), "{o}: {:?}", r.failures);
        }
    }
}
