//! Fourier–Motzkin elimination with strictness tracking.
//!
//! Rows are kept as integer vectors `(a, y) >= b` (or `>`). Combining a row
//! with a positive and one with a negative coefficient on the eliminated
//! variable gives a row that is strict iff either parent is strict; the
//! projection of the solution set is exact, strict rows included.
//!
//! Each row remembers which input rows it was combined from. After `k`
//! eliminations a row built from more than `k + 1` inputs is a nonnegative
//! combination of rows with smaller histories and is dropped (Chernikov's
//! rule). Because the combination is exact, strictness is carried by one of
//! the smaller rows, so the rule is also sound for strict systems. Rows are
//! otherwise only deduplicated when both the row and its history agree.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dd::Bits;
use super::{Halfspace, HalfspaceSystem};
use crate::exact::{ceil_int, floor_strict_bound, int_rat, Int, Rational, RationalVector};

#[derive(Clone, PartialEq, Eq, Hash)]
struct Row {
    a: Vec<Int>,
    b: Int,
    strict: bool,
    hist: Bits,
}

enum Constant {
    True,
    False,
    NotConstant,
}

impl Row {
    fn constant(&self) -> Constant {
        if !self.a.iter().all(Zero::is_zero) {
            return Constant::NotConstant;
        }
        let ok = if self.strict {
            self.b.is_negative()
        } else {
            !self.b.is_positive()
        };
        if ok {
            Constant::True
        } else {
            Constant::False
        }
    }

    fn reduce(mut self) -> Row {
        let g = self.a.iter().fold(self.b.clone(), |g, x| g.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in self.a.iter_mut() {
                *x = &*x / &g;
            }
            self.b = &self.b / &g;
        }
        self
    }
}

fn to_rows(h: &HalfspaceSystem) -> Option<Vec<Row>> {
    let total = h.rows().len();
    let mut rows = Vec::new();
    for (i, r) in h.rows().iter().enumerate() {
        let mut l = r.normal.denominator_lcm();
        l = l.lcm(r.offset.denom());
        let lq = int_rat(&l);
        let row = Row {
            a: r.normal
                .coords()
                .iter()
                .map(|q| (q * &lq).to_integer())
                .collect(),
            b: (&r.offset * &lq).to_integer(),
            strict: r.strict,
            hist: {
                let mut b = Bits::new(total);
                b.set(i);
                b
            },
        }
        .reduce();
        match row.constant() {
            Constant::True => {}
            Constant::False => return None,
            Constant::NotConstant => rows.push(row),
        }
    }
    Some(rows)
}

/// One elimination step; `None` signals a contradiction.
fn eliminate_var(rows: Vec<Row>, var: usize, eliminated: usize) -> Option<Vec<Row>> {
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for r in rows {
        if r.a[var].is_positive() {
            pos.push(r);
        } else if r.a[var].is_negative() {
            neg.push(r);
        } else {
            out.push(r);
        }
    }
    let mut seen: HashSet<Row> = out.iter().cloned().collect();
    for p in &pos {
        for q in &neg {
            let hist = p.hist.or(&q.hist);
            if hist.count() > eliminated + 1 {
                continue;
            }
            let sp = &p.a[var];
            let sq = -&q.a[var];
            let a: Vec<Int> =
                p.a.iter()
                    .zip(&q.a)
                    .map(|(x, y)| x * &sq + y * sp)
                    .collect();
            let row = Row {
                a,
                b: &p.b * &sq + &q.b * sp,
                strict: p.strict || q.strict,
                hist,
            }
            .reduce();
            match row.constant() {
                Constant::True => {}
                Constant::False => return None,
                Constant::NotConstant => {
                    if seen.insert(row.clone()) {
                        out.push(row);
                    }
                }
            }
        }
    }
    Some(out)
}

/// Projects out the variables in `drop`.
///
/// The result lives in the remaining coordinates, in their original order.
/// An empty projection is reported as the single row `0 > 0`; a
/// projection onto zero coordinates is either that marker or no rows.
pub fn eliminate(h: &HalfspaceSystem, drop: &[usize]) -> HalfspaceSystem {
    let mut drop: Vec<usize> = drop.to_vec();
    drop.sort_unstable();
    drop.dedup();
    let keep: Vec<usize> = (0..h.rank()).filter(|i| !drop.contains(i)).collect();

    let Some(mut rows) = to_rows(h) else {
        return HalfspaceSystem::infeasible(keep.len());
    };
    for (k, &var) in drop.iter().enumerate() {
        match eliminate_var(rows, var, k + 1) {
            Some(r) => rows = r,
            None => return HalfspaceSystem::infeasible(keep.len()),
        }
    }
    let out = rows
        .into_iter()
        .map(|r| Halfspace {
            normal: RationalVector::new(keep.iter().map(|&i| int_rat(&r.a[i])).collect()),
            offset: int_rat(&r.b),
            strict: r.strict,
        })
        .collect();
    HalfspaceSystem::from_rows(keep.len(), out).canonical()
}

/// Some rational solution of `h`, or `None` if it has none.
///
/// Variables are eliminated from the last to the first, then assigned in
/// order by back-substitution. Each variable takes the least integer its
/// bounds allow when one exists, otherwise the midpoint of its interval.
pub fn feasible_point(h: &HalfspaceSystem) -> Option<RationalVector> {
    let n = h.rank();
    let mut stages: Vec<Vec<Row>> = vec![to_rows(h)?];
    for (k, var) in (0..n).rev().enumerate() {
        let next = eliminate_var(stages.last().unwrap().clone(), var, k + 1)?;
        stages.push(next);
    }
    // stages[n - k] mentions only x_0..x_{k-1}
    let mut x: Vec<Rational> = Vec::with_capacity(n);
    for k in 0..n {
        let rows = &stages[n - k - 1];
        let mut lo: Option<(Rational, bool)> = None;
        let mut hi: Option<(Rational, bool)> = None;
        for r in rows {
            let coef = &r.a[k];
            if coef.is_zero() {
                continue;
            }
            let rest: Rational = (0..k)
                .map(|j| &x[j] * int_rat(&r.a[j]))
                .fold(int_rat(&r.b), |acc, t| acc - t);
            let bound = rest / int_rat(coef);
            if coef.is_positive() {
                let tighter = match &lo {
                    None => true,
                    Some((v, s)) => bound > *v || (bound == *v && r.strict && !s),
                };
                if tighter {
                    lo = Some((bound, r.strict));
                }
            } else {
                let tighter = match &hi {
                    None => true,
                    Some((v, s)) => bound < *v || (bound == *v && r.strict && !s),
                };
                if tighter {
                    hi = Some((bound, r.strict));
                }
            }
        }
        let fits_hi = |t: &Rational| match &hi {
            None => true,
            Some((v, s)) => {
                if *s {
                    t < v
                } else {
                    t <= v
                }
            }
        };
        let value = match (&lo, &hi) {
            (None, None) => Rational::zero(),
            (Some((l, s)), _) => {
                let t = int_rat(&if *s {
                    floor_strict_bound(l)
                } else {
                    ceil_int(l)
                });
                if fits_hi(&t) {
                    t
                } else {
                    let (u, _) = hi.clone().unwrap();
                    if l == &u {
                        l.clone()
                    } else {
                        (l + u) / Rational::from_integer(Int::from(2))
                    }
                }
            }
            (None, Some((u, s))) => {
                let f = u.floor();
                if *s && f == *u {
                    f - Rational::one()
                } else {
                    f
                }
            }
        };
        x.push(value);
    }
    let x = RationalVector::new(x);
    debug_assert!(h.contains(&x));
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, LatticeVector};

    fn rv(c: &[i64]) -> RationalVector {
        LatticeVector::from_i64s(c).to_rational()
    }

    fn sys(rank: usize, rows: &[(&[i64], Rational, bool)]) -> HalfspaceSystem {
        let mut h = HalfspaceSystem::new(rank);
        for (n, b, s) in rows {
            h.push(rv(n), b.clone(), *s);
        }
        h
    }

    #[test]
    fn eliminate_examples() {
        let h = sys(
            2,
            &[(&[1, 1], rat(0, 1), false), (&[0, -1], rat(-1, 1), false)],
        );
        assert_eq!(eliminate(&h, &[1]), sys(1, &[(&[1], rat(-1, 1), false)]));

        let h = sys(1, &[(&[1], rat(0, 1), true), (&[-1], rat(-1, 1), false)]);
        let e = eliminate(&h, &[0]);
        assert_eq!(e.rank(), 0);
        assert!(e.rows().is_empty());

        let h = sys(1, &[(&[1], rat(0, 1), true), (&[-1], rat(0, 1), true)]);
        let e = eliminate(&h, &[0]);
        assert!(e.is_marked_infeasible());
        assert_eq!(e, HalfspaceSystem::infeasible(0));
    }

    #[test]
    fn strictness_combines() {
        // x >= y, y > 1/2  ==>  x > 1/2
        let h = sys(
            2,
            &[(&[1, -1], rat(0, 1), false), (&[0, 1], rat(1, 2), true)],
        );
        let e = eliminate(&h, &[1]);
        assert_eq!(e, sys(1, &[(&[2], rat(1, 1), true)]).canonical());
    }

    #[test]
    fn witness_prefers_integers() {
        // w1 <= 1, w2 <= 1, w1 > 1/2, w2 > 0
        let h = sys(
            2,
            &[
                (&[-1, 0], rat(-1, 1), false),
                (&[0, -1], rat(-1, 1), false),
                (&[1, 0], rat(1, 2), true),
                (&[0, 1], rat(0, 1), true),
            ],
        );
        assert_eq!(feasible_point(&h), Some(rv(&[1, 1])));
    }

    #[test]
    fn witness_in_open_interval() {
        let h = sys(1, &[(&[1], rat(1, 3), true), (&[-1], rat(-2, 3), true)]);
        let p = feasible_point(&h).unwrap();
        assert!(h.contains(&p));
        let h = sys(1, &[(&[1], rat(1, 3), true), (&[-1], rat(-1, 3), false)]);
        assert_eq!(feasible_point(&h), None);
    }
}
