//! Exact scalars, lattice vectors and rational linear algebra.
//!
//! Everything downstream works over `BigInt` / `BigRational`; there is no
//! floating point anywhere in the crate.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

/// Builds a rational `num/den` from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(Int::from(num), Int::from(den))
}

pub fn int_rat(n: &Int) -> Rational {
    Rational::from_integer(n.clone())
}

/// Least integer strictly greater than `rho`.
///
/// Strict integer bounds are turned into closed ones with this:
/// `t > rho` holds for an integer `t` exactly when `t >= floor(rho) + 1`.
pub fn floor_strict_bound(rho: &Rational) -> Int {
    rho.floor().to_integer() + Int::one()
}

/// Least integer `t` with `t >= rho`.
pub fn ceil_int(rho: &Rational) -> Int {
    rho.ceil().to_integer()
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Int = n.trim().parse().map_err(|_| bad())?;
            let d: Int = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `"p/q"`, or `"p"` when integral.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A point of the lattice `M` or `N`; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<Int>);

impl LatticeVector {
    pub fn new(coords: Vec<Int>) -> Self {
        LatticeVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        LatticeVector(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![Int::zero(); rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Int::one();
        v
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Int> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// The integer pairing `(self, other)`.
    pub fn dot(&self, other: &LatticeVector) -> Int {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn dot_rational(&self, other: &RationalVector) -> Rational {
        debug_assert_eq!(self.rank(), other.rank());
        self.0
            .iter()
            .zip(other.coords())
            .map(|(a, b)| b * a)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, k: &Int) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().map(int_rat).collect())
    }

    /// Splits `self` into `(self / g, g)` with `g` the gcd of the coordinates.
    pub fn primitive(&self) -> Result<(LatticeVector, Int)> {
        let g = self.0.iter().fold(Int::zero(), |g, a| g.gcd(a));
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok((LatticeVector(self.0.iter().map(|a| a / &g).collect()), g))
    }

    pub(crate) fn primitive_part(&self) -> LatticeVector {
        match self.primitive() {
            Ok((p, _)) => p,
            Err(_) => self.clone(),
        }
    }
}

impl Index<usize> for LatticeVector {
    type Output = Int;
    fn index(&self, i: usize) -> &Int {
        &self.0[i]
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of `M_Q` or `N_Q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        RationalVector(vec![Rational::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn scale(&self, k: &Rational) -> RationalVector {
        RationalVector(self.0.iter().map(|a| a * k).collect())
    }

    pub fn add_lattice(&self, v: &LatticeVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(v.coords())
                .map(|(a, b)| a + int_rat(b))
                .collect(),
        )
    }

    /// Least common multiple of the denominators.
    pub fn denominator_lcm(&self) -> Int {
        self.0.iter().fold(Int::one(), |l, q| l.lcm(q.denom()))
    }

    /// Positive multiple with coprime integer coordinates, or `None` for zero.
    pub fn integer_direction(&self) -> Option<LatticeVector> {
        if self.is_zero() {
            return None;
        }
        let l = self.denominator_lcm();
        let v = LatticeVector(
            self.0
                .iter()
                .map(|q| (q * int_rat(&l)).to_integer())
                .collect(),
        );
        Some(v.primitive_part())
    }

    /// The lattice vector with these coordinates, if they are all integers.
    pub fn to_lattice(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(a))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Solves `(rows[i], w) = rhs[i]` exactly.
///
/// Returns `None` when the system is inconsistent. Underdetermined systems
/// get their free variables set to zero, so the answer is deterministic.
pub fn solve_linear(rows: &[LatticeVector], rhs: &[Rational]) -> Result<Option<RationalVector>> {
    if rows.len() != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            found: rhs.len(),
        });
    }
    let Some(first) = rows.first() else {
        return Ok(Some(RationalVector(Vec::new())));
    };
    let n = first.rank();
    if let Some(bad) = rows.iter().find(|r| r.rank() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.rank(),
        });
    }

    // Augmented matrix, reduced to row echelon form.
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row: Vec<Rational> = r.coords().iter().map(int_rat).collect();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..n {
        let Some(p) = (pr..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].recip();
        for x in m[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != pr && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let d = &m[pr][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == m.len() {
            break;
        }
    }
    if m[pr..].iter().any(|row| !row[n].is_zero()) {
        return Ok(None);
    }
    let mut w = vec![Rational::zero(); n];
    for (i, &col) in pivots.iter().enumerate() {
        w[col] = m[i][n].clone();
    }
    Ok(Some(RationalVector(w)))
}

/// Rank of a list of integer vectors.
pub fn rank_of(vectors: &[LatticeVector]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let n = first.rank();
    let mut m: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.coords().iter().map(int_rat).collect())
        .collect();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for j in col..n {
                    let d = &m[rank][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Integer basis of the rational null space `{x : (v, x) = 0 for all v}`.
pub fn null_space(vectors: &[LatticeVector], n: usize) -> Vec<LatticeVector> {
    let mut m: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.coords().iter().map(int_rat).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..n {
        let Some(p) = (pr..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].recip();
        for x in m[pr].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != pr && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..n {
                    let d = &m[pr][j] * &f;
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![Rational::zero(); n];
        x[free] = Rational::one();
        for (i, &col) in pivots.iter().enumerate() {
            x[col] = -m[i][free].clone();
        }
        if let Some(v) = RationalVector(x).integer_direction() {
            basis.push(v);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64s(c)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(
            lv(&[2, 4]).primitive().unwrap(),
            (lv(&[1, 2]), Int::from(2))
        );
        assert_eq!(
            lv(&[1, 0]).primitive().unwrap(),
            (lv(&[1, 0]), Int::from(1))
        );
        assert_eq!(
            lv(&[-6, 9, 3]).primitive().unwrap(),
            (lv(&[-2, 3, 1]), Int::from(3))
        );
        assert!(matches!(lv(&[0, 0]).primitive(), Err(Error::ZeroVector)));
    }

    #[test]
    fn solve_identity() {
        let w = solve_linear(&[lv(&[1, 0]), lv(&[0, 1])], &[rat(1, 1), rat(1, 1)])
            .unwrap()
            .unwrap();
        assert_eq!(w, RationalVector::new(vec![rat(1, 1), rat(1, 1)]));
    }

    #[test]
    fn solve_quadric_rows() {
        let w = solve_linear(&[lv(&[1, 0]), lv(&[1, 2])], &[rat(1, 1), rat(1, 1)])
            .unwrap()
            .unwrap();
        assert_eq!(w, RationalVector::new(vec![rat(1, 1), rat(0, 1)]));
    }

    #[test]
    fn solve_inconsistent() {
        let rows = [
            lv(&[0, 0, 1]),
            lv(&[1, 0, 1]),
            lv(&[0, 1, 1]),
            lv(&[1, 1, -2]),
        ];
        let rhs = vec![rat(1, 1); 4];
        assert_eq!(solve_linear(&rows, &rhs).unwrap(), None);
    }

    #[test]
    fn solve_underdetermined_sets_free_to_zero() {
        let w = solve_linear(&[lv(&[1, 1])], &[rat(3, 2)]).unwrap().unwrap();
        assert_eq!(w, RationalVector::new(vec![rat(3, 2), rat(0, 1)]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        assert!(solve_linear(&[lv(&[1, 0])], &[]).is_err());
        assert!(solve_linear(&[lv(&[1, 0]), lv(&[1])], &[rat(1, 1), rat(1, 1)]).is_err());
    }

    #[test]
    fn strict_bound_examples() {
        assert_eq!(floor_strict_bound(&rat(5, 6)), Int::from(1));
        assert_eq!(floor_strict_bound(&rat(-1, 1)), Int::from(0));
        assert_eq!(floor_strict_bound(&rat(-7, 3)), Int::from(-2));
    }

    #[test]
    fn rational_text_round_trip() {
        for s in ["5/6", "-7/3", "4", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn null_space_of_plane() {
        let ns = null_space(&[lv(&[1, 1, 1])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(v.dot(&lv(&[1, 1, 1])).is_zero());
        }
        assert_eq!(rank_of(&ns), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_rat() -> impl Strategy<Value = Rational> {
            (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
        }

        proptest! {
            #[test]
            fn field_round_trips(a in arb_rat(), b in arb_rat()) {
                prop_assert_eq!(&(&a + &b) - &b, a.clone());
                if !a.is_zero() {
                    prop_assert_eq!(&a * &a.recip(), Rational::one());
                }
            }

            #[test]
            fn strict_bound_brackets(a in arb_rat()) {
                let t = int_rat(&floor_strict_bound(&a));
                prop_assert!(&t - Rational::one() <= a && a < t);
                if a.is_integer() {
                    prop_assert_eq!(t, &a + Rational::one());
                }
            }

            #[test]
            fn solutions_resubstitute(
                rows in proptest::collection::vec(proptest::collection::vec(-5i64..5, 3), 1..5),
                rhs in proptest::collection::vec(arb_rat(), 5),
            ) {
                let rows: Vec<_> = rows.iter().map(|r| lv(r)).collect();
                let rhs = &rhs[..rows.len()];
                if let Some(w) = solve_linear(&rows, rhs).unwrap() {
                    for (r, b) in rows.iter().zip(rhs) {
                        prop_assert_eq!(&r.dot_rational(&w), b);
                    }
                }
            }
        }
    }
}
