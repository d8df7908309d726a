//! Lens spaces, their connected sums, Spin^c labels and first homology.
//!
//! Each lens summand L(p,q) carries the labels `0..p` of the correction-term
//! recursion. Spin^c structures and homology classes of a connected sum are
//! residue tuples, one residue per summand, and every operation acts
//! componentwise. H_1 acts on Spin^c labels by residue addition.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LensSpace {
    p: u64,
    q: u64,
}

impl LensSpace {
    /// `q` may be any integer coprime to `p`; it is reduced into `0 < q < p`.
    /// `p = 1` is S^3 and normalizes `q` to 1.
    pub fn new(p: u64, q: i64) -> Result<Self> {
        if p == 0 {
            return input("lens space order p must be positive");
        }
        if p == 1 {
            return Ok(LensSpace { p: 1, q: 1 });
        }
        let q = q.rem_euclid(p as i64) as u64;
        if q.gcd(&p) != 1 {
            return input(format!("L({p},{q}): gcd(p,q) must be 1"));
        }
        Ok(LensSpace { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    /// Conjugation on the recursion labels, `i -> (p + q - 1 - i) mod p`.
    pub fn conjugate_label(&self, i: u64) -> u64 {
        (self.p + self.q - 1 - i % self.p) % self.p
    }

    /// All `q` with `0 < q < p` and `gcd(p,q) = 1`; `[1]` for `p = 1`.
    pub fn valid_q(p: u64) -> Vec<u64> {
        if p == 1 {
            return vec![1];
        }
        (1..p).filter(|q| q.gcd(&p) == 1).collect()
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl FromStr for LensSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix("L(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Input(format!("expected L(p,q), got `{s}`")))?;
        let (p, q) = parse_pair(inner)?;
        if p < 1 {
            return input(format!("lens space order must be positive in `{s}`"));
        }
        LensSpace::new(p as u64, q)
    }
}

/// Parses `"a,b"` into two integers.
pub fn parse_pair(s: &str) -> Result<(i64, i64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Input(format!("expected `a,b`, got `{s}`")))?;
    let a = a.trim().parse().map_err(|_| Error::Input(format!("bad integer in `{s}`")))?;
    let b = b.trim().parse().map_err(|_| Error::Input(format!("bad integer in `{s}`")))?;
    Ok((a, b))
}

/// Spin^c label: one residue per lens summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpincIndex(pub Vec<u64>);

/// Class in H_1: one residue per lens summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct H1Class(pub Vec<u64>);

impl H1Class {
    pub fn zero(y: &Manifold) -> Self {
        H1Class(vec![0; y.summands.len()])
    }
}

fn fmt_residues(f: &mut fmt::Formatter<'_>, r: &[u64]) -> fmt::Result {
    let parts: Vec<String> = r.iter().map(u64::to_string).collect();
    write!(f, "{}", parts.join(","))
}

fn parse_residues(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    if s.is_empty() || s == "()" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Input(format!("bad residue `{t}` in `{s}`")))
        })
        .collect()
}

impl fmt::Display for SpincIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_residues(f, &self.0)
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_residues(f, &self.0)
    }
}

impl FromStr for H1Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_residues(s).map(H1Class)
    }
}

impl FromStr for SpincIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_residues(s).map(SpincIndex)
    }
}

/// Ordered connected sum of lens spaces; the empty sum is S^3.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Manifold {
    summands: Vec<LensSpace>,
}

impl Manifold {
    /// S^3 summands are dropped, so `L(1,1)` and the empty sum agree.
    pub fn new(summands: Vec<LensSpace>) -> Self {
        Manifold { summands: summands.into_iter().filter(|l| !l.is_sphere()).collect() }
    }

    pub fn sphere() -> Self {
        Manifold::default()
    }

    pub fn lens(p: u64, q: i64) -> Result<Self> {
        Ok(Manifold::new(vec![LensSpace::new(p, q)?]))
    }

    pub fn summands(&self) -> &[LensSpace] {
        &self.summands
    }

    /// `self # other`, summands in order.
    pub fn connect_sum(&self, other: &Manifold) -> Manifold {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        Manifold { summands: s }
    }

    /// |H_1|, which is also the number of Spin^c structures.
    pub fn order(&self) -> u64 {
        self.summands.iter().map(LensSpace::p).product()
    }

    fn check_residues(&self, r: &[u64], what: &str) -> Result<()> {
        if r.len() != self.summands.len() {
            return input(format!(
                "{what} has {} residues but {self} has {} summands",
                r.len(),
                self.summands.len()
            ));
        }
        for (x, l) in r.iter().zip(&self.summands) {
            if *x >= l.p {
                return input(format!("{what} residue {x} out of range for {l}"));
            }
        }
        Ok(())
    }

    pub fn check_spinc(&self, s: &SpincIndex) -> Result<()> {
        self.check_residues(&s.0, "Spin^c index")
    }

    pub fn check_class(&self, a: &H1Class) -> Result<()> {
        self.check_residues(&a.0, "homology class")
    }

    /// Position of `s` in the lexicographic enumeration (first summand most significant).
    pub fn spinc_position(&self, s: &SpincIndex) -> usize {
        s.0.iter()
            .zip(&self.summands)
            .fold(0u64, |acc, (x, l)| acc * l.p + x) as usize
    }

    pub fn spinc_at(&self, mut pos: usize) -> SpincIndex {
        let mut r = vec![0; self.summands.len()];
        for (slot, l) in r.iter_mut().zip(&self.summands).rev() {
            *slot = pos as u64 % l.p;
            pos /= l.p as usize;
        }
        SpincIndex(r)
    }

    /// All Spin^c structures in lexicographic order.
    pub fn spinc_structures(&self) -> impl Iterator<Item = SpincIndex> + '_ {
        (0..self.order() as usize).map(|i| self.spinc_at(i))
    }

    /// All classes of H_1 in lexicographic order.
    pub fn classes(&self) -> impl Iterator<Item = H1Class> + '_ {
        self.spinc_structures().map(|s| H1Class(s.0))
    }

    pub fn conjugate(&self, s: &SpincIndex) -> Result<SpincIndex> {
        self.check_spinc(s)?;
        Ok(SpincIndex(
            s.0.iter().zip(&self.summands).map(|(i, l)| l.conjugate_label(*i)).collect(),
        ))
    }

    /// `s + PD[a]`.
    pub fn translate(&self, s: &SpincIndex, a: &H1Class) -> Result<SpincIndex> {
        self.check_spinc(s)?;
        self.check_class(a)?;
        Ok(self.translate_unchecked(s, a))
    }

    pub(crate) fn translate_unchecked(&self, s: &SpincIndex, a: &H1Class) -> SpincIndex {
        SpincIndex(
            s.0.iter()
                .zip(&a.0)
                .zip(&self.summands)
                .map(|((x, y), l)| (x + y) % l.p)
                .collect(),
        )
    }

    pub fn add_classes(&self, a: &H1Class, b: &H1Class) -> Result<H1Class> {
        self.check_class(a)?;
        self.check_class(b)?;
        Ok(H1Class(
            a.0.iter().zip(&b.0).zip(&self.summands).map(|((x, y), l)| (x + y) % l.p).collect(),
        ))
    }

    pub fn negate_class(&self, a: &H1Class) -> Result<H1Class> {
        self.check_class(a)?;
        Ok(H1Class(a.0.iter().zip(&self.summands).map(|(x, l)| (l.p - x) % l.p).collect()))
    }

    /// Additive order of `a`: lcm over summands of `p_i / gcd(p_i, a_i)`.
    pub fn order_of_class(&self, a: &H1Class) -> Result<u64> {
        self.check_class(a)?;
        Ok(a.0
            .iter()
            .zip(&self.summands)
            .map(|(x, l)| l.p / x.gcd(&l.p))
            .fold(1, |acc, m| acc.lcm(&m)))
    }
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "S3");
        }
        let parts: Vec<String> = self.summands.iter().map(LensSpace::to_string).collect();
        write!(f, "{}", parts.join("#"))
    }
}

impl FromStr for Manifold {
    type Err = Error;

    /// `L(p,q)#L(p,q)#...`; `S3` or the empty string is the 3-sphere.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("S3") {
            return Ok(Manifold::sphere());
        }
        let summands = s.split('#').map(str::parse).collect::<Result<Vec<LensSpace>>>()?;
        Ok(Manifold::new(summands))
    }
}

impl TryFrom<String> for Manifold {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Manifold> for String {
    fn from(m: Manifold) -> String {
        m.to_string()
    }
}

/// Rational longitude `lambda_r = p' lambda + q' mu` with `k = p / p'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Longitude {
    pub p_prime: u64,
    pub q_prime: i64,
    pub k: u64,
}

impl Longitude {
    /// `p' = 1`: the rational longitude is a framing.
    pub fn is_framing(&self) -> bool {
        self.p_prime == 1
    }
}

pub fn rational_longitude(order_p: u64, p_prime: u64, q_prime: i64) -> Result<Longitude> {
    if order_p == 0 || p_prime == 0 {
        return input("order and p' must be positive");
    }
    if order_p % p_prime != 0 {
        return Err(Error::Inconsistent(format!("p' = {p_prime} does not divide the order {order_p}")));
    }
    if p_prime > 1 && (q_prime.unsigned_abs()).gcd(&p_prime) != 1 {
        return input(format!("gcd(p', q') = gcd({p_prime}, {q_prime}) must be 1"));
    }
    Ok(Longitude { p_prime, q_prime, k: order_p / p_prime })
}

/// A torsion class together with its order and rational-longitude data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotClass {
    pub ambient: Manifold,
    pub cls: H1Class,
    pub order_p: u64,
    pub longitude: Longitude,
}

impl KnotClass {
    pub fn new(ambient: Manifold, cls: H1Class, p_prime: u64, q_prime: i64) -> Result<Self> {
        let order_p = ambient.order_of_class(&cls)?;
        let longitude = rational_longitude(order_p, p_prime, q_prime)?;
        Ok(KnotClass { ambient, cls, order_p, longitude })
    }

    /// A class whose rational longitude is a framing (`p' = 1`, `q' = 0`).
    pub fn framed(ambient: Manifold, cls: H1Class) -> Result<Self> {
        KnotClass::new(ambient, cls, 1, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(y: &Manifold, a: &H1Class) -> u64 {
        let zero = H1Class::zero(y);
        let mut acc = a.clone();
        let mut m = 1;
        while acc != zero {
            acc = y.add_classes(&acc, a).unwrap();
            m += 1;
        }
        m
    }

    #[test]
    fn order_examples() {
        let y = Manifold::lens(5, 1).unwrap();
        assert_eq!(y.order_of_class(&H1Class(vec![0])).unwrap(), 1);
        let y = Manifold::lens(6, 1).unwrap();
        assert_eq!(y.order_of_class(&H1Class(vec![4])).unwrap(), 3);
        let y: Manifold = "L(2,1)#L(3,1)".parse().unwrap();
        let a = H1Class(vec![1, 1]);
        assert_eq!(y.order_of_class(&a).unwrap(), 6);
        assert_eq!(brute_order(&y, &a), 6);
    }

    #[test]
    fn order_matches_brute_force_and_divides() {
        for y in ["L(12,5)", "L(4,1)#L(6,1)", "L(2,1)#L(2,1)#L(3,2)", "S3"] {
            let y: Manifold = y.parse().unwrap();
            for a in y.classes() {
                let o = y.order_of_class(&a).unwrap();
                assert_eq!(o, brute_order(&y, &a), "{y} {a}");
                assert_eq!(y.order() % o, 0);
            }
        }
    }

    #[test]
    fn malformed_tuples_are_rejected() {
        let y = Manifold::lens(5, 2).unwrap();
        assert!(y.order_of_class(&H1Class(vec![5])).is_err());
        assert!(y.order_of_class(&H1Class(vec![1, 0])).is_err());
        assert!(y.translate(&SpincIndex(vec![]), &H1Class(vec![1])).is_err());
    }

    #[test]
    fn conjugation_is_involution_with_expected_fixed_points() {
        let y = Manifold::lens(7, 2).unwrap();
        for s in y.spinc_structures() {
            assert_eq!(y.conjugate(&y.conjugate(&s).unwrap()).unwrap(), s);
        }
        for p in 1..=30u64 {
            for q in LensSpace::valid_q(p) {
                let l = LensSpace::new(p, q as i64).unwrap();
                let fixed = (0..p).filter(|&i| l.conjugate_label(i) == i).count();
                assert_eq!(fixed, if p % 2 == 1 { 1 } else { 2 }, "{l}");
            }
        }
    }

    #[test]
    fn translation_examples() {
        let y = Manifold::lens(5, 1).unwrap();
        let s = SpincIndex(vec![2]);
        assert_eq!(y.translate(&s, &H1Class(vec![0])).unwrap(), s);
        assert_eq!(y.translate(&s, &H1Class(vec![4])).unwrap(), SpincIndex(vec![1]));

        let y = Manifold::lens(6, 1).unwrap();
        let a = H1Class(vec![4]);
        for s in y.spinc_structures() {
            let mut orbit = vec![s.clone()];
            let mut t = y.translate(&s, &a).unwrap();
            while t != s {
                orbit.push(t.clone());
                t = y.translate(&t, &a).unwrap();
            }
            assert_eq!(orbit.len(), 3);
        }
    }

    #[test]
    fn longitude_examples() {
        assert_eq!(rational_longitude(6, 3, 7).unwrap(), Longitude { p_prime: 3, q_prime: 7, k: 2 });
        assert_eq!(rational_longitude(5, 1, 0).unwrap(), Longitude { p_prime: 1, q_prime: 0, k: 5 });
        assert!(matches!(rational_longitude(4, 3, 1), Err(Error::Inconsistent(_))));
        assert!(matches!(rational_longitude(6, 3, 6), Err(Error::Input(_))));
        assert!(matches!(rational_longitude(6, 3, 0), Err(Error::Input(_))));
    }

    #[test]
    fn manifold_strings() {
        let y: Manifold = "L(2,1)#L(7,9)".parse().unwrap();
        assert_eq!(y.to_string(), "L(2,1)#L(7,2)");
        assert_eq!(y.order(), 14);
        assert_eq!("S3".parse::<Manifold>().unwrap(), Manifold::sphere());
        assert_eq!("L(1,1)".parse::<Manifold>().unwrap().spinc_structures().count(), 1);
        assert!("L(4,2)".parse::<Manifold>().is_err());
        assert!("L(0,1)".parse::<Manifold>().is_err());
        assert!("M(3,1)".parse::<Manifold>().is_err());
        assert_eq!("1,2".parse::<H1Class>().unwrap(), H1Class(vec![1, 2]));
    }

    #[test]
    fn spinc_positions_roundtrip() {
        let y: Manifold = "L(3,1)#L(4,1)#L(2,1)".parse().unwrap();
        for (i, s) in y.spinc_structures().enumerate() {
            assert_eq!(y.spinc_position(&s), i);
        }
    }
}
