//! Affine toric varieties, torus-invariant divisors and pairs.
//!
//! A variety is given by the rays `v_1..v_s` of a pointed full-dimensional
//! cone σ in `N`. The torus-invariant prime divisors `D_i` are indexed by the
//! rays, `ord_{D_i}(x^m) = (m, v_i)`, and the canonical divisor is
//! `K_X = -Σ D_i`.
//!
//! Pairs use the weight convention `K_X + Δ = -div(x^w)`, i.e.
//! `(w, v_i) = 1 - δ_i` for every ray. On affine space with `Δ = 0` this is
//! `w = (1, …, 1)`.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{solve_linear, Int, LatticeVector, Rational, RationalVector};
use crate::polyhedral::{
    hilbert_basis, minimal_lattice_generators, strict_to_lattice_closed, Cone, HilbertBasis,
};

#[derive(Clone, Debug)]
pub struct ToricVariety {
    sigma: Cone,
    sigma_dual: Cone,
    dual_hilbert_basis: HilbertBasis,
    primitivized: bool,
}

impl ToricVariety {
    pub fn rank(&self) -> usize {
        self.sigma.rank()
    }

    /// The primitive ray generators `v_i`, in input order.
    pub fn rays(&self) -> &[LatticeVector] {
        self.sigma.rays()
    }

    pub fn sigma(&self) -> &Cone {
        &self.sigma
    }

    pub fn sigma_dual(&self) -> &Cone {
        &self.sigma_dual
    }

    pub fn dual_hilbert_basis(&self) -> &HilbertBasis {
        &self.dual_hilbert_basis
    }

    /// True when some input ray had to be divided by its content.
    pub fn was_primitivized(&self) -> bool {
        self.primitivized
    }

    /// Smooth iff σ is spanned by part of a lattice basis; σ being
    /// full-dimensional, that means `n` rays with determinant ±1.
    pub fn is_smooth(&self) -> bool {
        let rays = self.rays();
        rays.len() == self.rank() && determinant(rays).abs() == Int::one()
    }

    /// `m ∈ σ∨`, i.e. `x^m` is a monomial of the coordinate ring.
    pub fn in_semigroup(&self, m: &LatticeVector) -> bool {
        self.rays().iter().all(|v| v.dot(m) >= Int::zero())
    }

    /// Sum of the rays: strictly positive on σ∨ minus the origin.
    pub fn grading(&self) -> LatticeVector {
        self.rays()
            .iter()
            .fold(LatticeVector::zero(self.rank()), |a, v| &a + v)
    }
}

/// Integer determinant by cofactor expansion (desk-scale ranks only).
pub(crate) fn determinant(rows: &[LatticeVector]) -> Int {
    let n = rows.len();
    let m: Vec<Vec<Int>> = rows.iter().map(|r| r.coords().to_vec()).collect();
    fn det(m: &[Vec<Int>], cols: &[usize]) -> Int {
        let k = m.len() - cols.len();
        if cols.len() == 1 {
            return m[k][cols[0]].clone();
        }
        let mut total = Int::zero();
        for (i, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = &m[k][c] * det(m, &rest);
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }
    if n == 0 {
        return Int::one();
    }
    det(&m, &(0..n).collect::<Vec<_>>())
}

/// Builds `X_σ` from ray generators.
///
/// Non-primitive rays are divided by their content (see
/// [`ToricVariety::was_primitivized`]); a ray that is not extremal is an
/// error because divisor coefficients are aligned with the ray list.
pub fn make_variety(rank: usize, rays: Vec<LatticeVector>) -> Result<ToricVariety> {
    let mut primitivized = false;
    for r in &rays {
        if r.rank() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                found: r.rank(),
            });
        }
        let (_, g) = r.primitive()?;
        primitivized |= !g.is_one();
    }
    let sigma = Cone::new(rank, rays)?;
    if !sigma.is_full_dimensional() {
        return Err(Error::TorusFactor);
    }
    let sigma_dual = sigma.dual()?;
    let dual_hilbert_basis = hilbert_basis(&sigma_dual)?;
    Ok(ToricVariety {
        sigma,
        sigma_dual,
        dual_hilbert_basis,
        primitivized,
    })
}

/// A torus-invariant ℚ-divisor `Σ d_i D_i`, aligned with the rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDivisor(pub Vec<Rational>);

impl QDivisor {
    pub fn zero(s: usize) -> Self {
        QDivisor(vec![Rational::zero(); s])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|d| *d >= Rational::zero())
    }
}

pub fn canonical_divisor(x: &ToricVariety) -> QDivisor {
    QDivisor(vec![-Rational::one(); x.rays().len()])
}

fn check_len(x: &ToricVariety, d: &QDivisor) -> Result<()> {
    if d.0.len() != x.rays().len() {
        return Err(Error::DimensionMismatch {
            expected: x.rays().len(),
            found: d.0.len(),
        });
    }
    Ok(())
}

/// Some `w ∈ M_ℚ` with `(w, v_i) = d_i` for all rays, if `d` is ℚ-Cartier.
pub fn q_cartier_witness(x: &ToricVariety, d: &QDivisor) -> Result<Option<RationalVector>> {
    check_len(x, d)?;
    solve_linear(x.rays(), &d.0)
}

/// A pair `(X, Δ)` with its weight `w`: `(w, v_i) = 1 - δ_i`.
#[derive(Clone, Debug)]
pub struct Pair {
    pub variety: Arc<ToricVariety>,
    pub delta: QDivisor,
    pub weight: RationalVector,
}

/// Attaches `Δ` to `X`; fails when `K_X + Δ` is not ℚ-Cartier.
/// Δ need not be effective.
pub fn make_pair(x: Arc<ToricVariety>, delta: QDivisor) -> Result<Pair> {
    check_len(&x, &delta)?;
    let target = QDivisor(delta.0.iter().map(|d| Rational::one() - d).collect());
    let weight = q_cartier_witness(&x, &target)?.ok_or(Error::NotQCartier)?;
    Ok(Pair {
        variety: x,
        delta,
        weight,
    })
}

/// `(w_0, r)` with `(w_0, v_i) = 1` for all rays and `r` the least positive
/// integer with `r·w_0 ∈ M`; `None` when X is not ℚ-Gorenstein.
pub fn q_gorenstein_weight(x: &ToricVariety) -> Option<(RationalVector, Int)> {
    let ones = vec![Rational::one(); x.rays().len()];
    let w0 = solve_linear(x.rays(), &ones).ok()??;
    let index = w0.coords().iter().fold(Int::one(), |l, q| l.lcm(q.denom()));
    Some((w0, index))
}

/// Minimal monomial generators of ω_X: lattice points with `(m, v_i) >= 1`.
pub fn omega_generators(x: &ToricVariety) -> Result<Vec<LatticeVector>> {
    let mut h = crate::polyhedral::HalfspaceSystem::new(x.rank());
    for v in x.rays() {
        h.push_lattice(v, Rational::zero(), true);
    }
    minimal_lattice_generators(
        &strict_to_lattice_closed(&h),
        x.sigma_dual(),
        x.dual_hilbert_basis(),
    )
}
