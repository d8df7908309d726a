//! Correction terms of lens spaces and their connected sums.
//!
//! Lens spaces use the standard recursion
//!
//! ```text
//! d(L(p,q), i) = (pq - (2i + 1 - p - q)^2) / (4pq) - d(L(q, p mod q), i mod q)
//! ```
//!
//! with L(p,q) the boundary of the negative-definite linear plumbing, so
//! that d(L(p,1), .) agrees with the characteristic-covector maximization in
//! [`crate::lattice`]. The recursion labels `0..p` are the Spin^c labels used
//! throughout the crate; this is the only place the two are identified.

use num_integer::Integer;

use crate::error::{input, Result};
use crate::homology::{H1Class, LensSpace, Manifold, SpincIndex};
use crate::rational::{q, Q};

/// d(L(p,q), i) for `0 <= i < p`.
pub fn d_lens(p: u64, q_: u64, i: u64) -> Result<Q> {
    if p == 0 {
        return input("p must be positive");
    }
    if p > 1 && q_.gcd(&p) != 1 {
        return input(format!("L({p},{q_}): gcd(p,q) must be 1"));
    }
    if i >= p {
        return input(format!("Spin^c label {i} out of range for L({p},{q_})"));
    }
    Ok(d_lens_unchecked(p, q_ % p.max(1), i))
}

fn d_lens_unchecked(mut p: u64, mut qq: u64, mut i: u64) -> Q {
    let mut acc = Q::from_integer(0);
    let mut sign = 1i64;
    // q mod p strictly decreases, so this terminates in O(log p) steps.
    while p > 1 {
        let (pi, qi, ii) = (p as i64, qq as i64, i as i64);
        let t = 2 * ii + 1 - pi - qi;
        acc += q(sign * (pi * qi - t * t), 4 * pi * qi);
        sign = -sign;
        let r = p % qq;
        i %= qq;
        p = qq;
        qq = r;
    }
    acc
}

/// All correction terms of one lens space, indexed by label.
pub fn d_lens_all(l: &LensSpace) -> Vec<Q> {
    (0..l.p()).map(|i| d_lens_unchecked(l.p(), l.q() % l.p(), i)).collect()
}

/// Correction terms of a connected sum, tabulated per summand.
#[derive(Debug, Clone)]
pub struct CorrectionTerms {
    manifold: Manifold,
    tables: Vec<Vec<Q>>,
}

impl CorrectionTerms {
    pub fn new(manifold: &Manifold) -> Self {
        let tables = manifold.summands().iter().map(d_lens_all).collect();
        CorrectionTerms { manifold: manifold.clone(), tables }
    }

    pub fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    /// d(Y, s): the sum of the summand terms.
    pub fn d(&self, s: &SpincIndex) -> Result<Q> {
        self.manifold.check_spinc(s)?;
        Ok(self.d_unchecked(s))
    }

    pub(crate) fn d_unchecked(&self, s: &SpincIndex) -> Q {
        s.0.iter().zip(&self.tables).map(|(i, t)| t[*i as usize]).sum()
    }

    /// Values in the lexicographic Spin^c order of the manifold.
    pub fn values(&self) -> Vec<Q> {
        self.manifold.spinc_structures().map(|s| self.d_unchecked(&s)).collect()
    }

    /// `d(Y,s) - d(Y, s + PD[a])` for every `s`, in Spin^c order.
    pub fn differences(&self, a: &H1Class) -> Result<Vec<Q>> {
        self.manifold.check_class(a)?;
        Ok(self
            .manifold
            .spinc_structures()
            .map(|s| {
                let t = self.manifold.translate_unchecked(&s, a);
                self.d_unchecked(&s) - self.d_unchecked(&t)
            })
            .collect())
    }

    /// `max_s d(Y,s) - d(Y,s+PD[a])`.
    pub fn d_gap(&self, a: &H1Class) -> Result<Q> {
        let diffs = self.differences(a)?;
        Ok(diffs.into_iter().max().expect("every manifold has a Spin^c structure"))
    }
}

pub fn d(y: &Manifold, s: &SpincIndex) -> Result<Q> {
    CorrectionTerms::new(y).d(s)
}

pub fn d_gap(y: &Manifold, a: &H1Class) -> Result<Q> {
    CorrectionTerms::new(y).d_gap(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sorted(mut v: Vec<Q>) -> Vec<Q> {
        v.sort();
        v
    }

    #[test]
    fn sphere_is_zero() {
        assert_eq!(d_lens(1, 1, 0).unwrap(), int(0));
        assert_eq!(d(&Manifold::sphere(), &SpincIndex(vec![])).unwrap(), int(0));
    }

    #[test]
    fn small_lens_values() {
        let l21 = LensSpace::new(2, 1).unwrap();
        assert_eq!(sorted(d_lens_all(&l21)), vec![q(-1, 4), q(1, 4)]);
        let v = d_lens_all(&LensSpace::new(3, 1).unwrap());
        let (mx, mn) = (v.iter().max().unwrap(), v.iter().min().unwrap());
        assert_eq!(*mx - *mn, q(2, 3));
    }

    #[test]
    fn input_errors() {
        assert!(d_lens(4, 2, 0).is_err());
        assert!(d_lens(5, 2, 5).is_err());
        assert!(d_lens(0, 1, 0).is_err());
        let y = Manifold::lens(5, 2).unwrap();
        assert!(d(&y, &SpincIndex(vec![7])).is_err());
    }

    #[test]
    fn connected_sum_is_additive() {
        let y: Manifold = "L(2,1)#L(2,1)".parse().unwrap();
        let v = sorted(CorrectionTerms::new(&y).values());
        assert_eq!(v, vec![q(-1, 2), int(0), int(0), q(1, 2)]);
    }

    #[test]
    fn d_gap_examples() {
        let y = Manifold::lens(2, 1).unwrap();
        assert_eq!(d_gap(&y, &H1Class(vec![1])).unwrap(), q(1, 2));
        for y in ["L(7,3)", "L(3,1)#L(4,3)", "S3"] {
            let y: Manifold = y.parse().unwrap();
            assert_eq!(d_gap(&y, &H1Class::zero(&y)).unwrap(), int(0));
        }
    }

    #[test]
    fn conjugation_symmetry_and_denominators() {
        for p in 1..=60u64 {
            for qq in LensSpace::valid_q(p) {
                let y = Manifold::lens(p, qq as i64).unwrap();
                let ct = CorrectionTerms::new(&y);
                for s in y.spinc_structures() {
                    let ds = ct.d(&s).unwrap();
                    assert_eq!(ds, ct.d(&y.conjugate(&s).unwrap()).unwrap(), "{y} {s}");
                    assert_eq!((4 * p as i64) % ds.denom(), 0, "{y} {s} {ds}");
                }
            }
        }
    }

    #[test]
    fn d_gap_is_even_under_negation() {
        for y in ["L(40,9)", "L(5,2)#L(8,3)", "L(6,1)#L(6,5)", "L(2,1)#L(3,1)#L(5,4)"] {
            let y: Manifold = y.parse().unwrap();
            let ct = CorrectionTerms::new(&y);
            for a in y.classes() {
                let g = ct.d_gap(&a).unwrap();
                assert!(g >= int(0));
                assert_eq!(g, ct.d_gap(&y.negate_class(&a).unwrap()).unwrap(), "{y} {a}");
                let mn = ct.differences(&a).unwrap().into_iter().min().unwrap();
                assert_eq!(mn, -g);
            }
        }
    }
}
