//! Double description over the integers.
//!
//! [`cone_generators`] turns `{y : (a, y) >= 0 for every row a}` into a
//! lineality basis plus the extreme rays of the pointed part. Rows are
//! processed one at a time; lineality directions that a new row does not
//! annihilate are converted into rays first, after which the usual
//! positive/negative split with the combinatorial adjacency test applies.

use num_traits::{Signed, Zero};

use crate::exact::{Int, LatticeVector};

#[derive(Clone, Debug, Default)]
pub(crate) struct ConeGenerators {
    pub lineality: Vec<LatticeVector>,
    pub rays: Vec<LatticeVector>,
}

/// Small growable bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits(Vec<u64>);

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    pub(crate) fn or(&self, other: &Bits) -> Bits {
        let n = self.0.len().max(other.0.len());
        Bits(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) | other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
    pub(crate) fn set(&mut self, i: usize) {
        if i / 64 >= self.0.len() {
            self.0.resize(i / 64 + 1, 0);
        }
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    pub(crate) fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn subset_of(&self, other: &Bits) -> bool {
        self.0
            .iter()
            .zip(other.0.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: LatticeVector,
    tight: Bits,
}

fn combine(s: &Int, r: &LatticeVector, t: &Int, l: &LatticeVector) -> LatticeVector {
    // s*r - t*l, primitive
    let v = &r.scale(s) - &l.scale(t);
    v.primitive_part()
}

pub(crate) fn cone_generators(rows: &[LatticeVector], n: usize) -> ConeGenerators {
    let mut lineality: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();
    let mut processed = 0usize;

    for a in rows.iter().filter(|a| !a.is_zero()) {
        let idx = processed;
        processed += 1;

        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut s = a.dot(&l0);
            if s.is_negative() {
                l0 = -&l0;
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = a.dot(l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = a.dot(&r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l0);
                }
                r.tight.set(idx);
            }
            let mut tight = Bits::new(processed);
            for j in 0..idx {
                tight.set(j);
            }
            rays.push(Ray { v: l0, tight });
            continue;
        }

        let vals: Vec<Int> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.tight.set(idx);
                }
            }
            continue;
        }

        // Adjacent pairs need at least (pointed dimension - 2) common tight rows.
        let pointed_dim = n - lineality.len();
        let need = pointed_dim.saturating_sub(2);
        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if common.count() < need {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !common.subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                let v = (&rays[q].v.scale(&vals[p]) - &rays[p].v.scale(&vals[q])).primitive_part();
                let mut tight = common;
                tight.set(idx);
                new_rays.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (r, v) in rays.into_iter().zip(&vals) {
            if v.is_negative() {
                continue;
            }
            let mut r = r;
            if v.is_zero() {
                r.tight.set(idx);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<LatticeVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    ConeGenerators {
        lineality,
        rays: out,
    }
}
