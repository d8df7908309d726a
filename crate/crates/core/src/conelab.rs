//! Circular mapping cones for rational-longitude surgery.
//!
//! A cone is a cyclic row of `p` cells `(V_i, H_i)`. The map sends the tower
//! `A_i` to `B_i` by `U^{V_i}` and to `B_{i+1}` by `U^{H_i}`. Two independent
//! checks decide whether it can be onto: a symbolic scan of the labels, and
//! linear elimination over F_2 on a truncated copy of the towers.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::rational::{q, serde_q, Q};
use crate::vhprofile::{label_string, Label};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConeJson", into = "ConeJson")]
pub struct CircularCone {
    cells: Vec<(u32, u32)>,
    a_cone: Option<Q>,
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    length: usize,
    cells: Vec<(u32, u32)>,
    #[serde(rename = "A", default, with = "serde_q::option", skip_serializing_if = "Option::is_none")]
    a: Option<Q>,
}

impl TryFrom<ConeJson> for CircularCone {
    type Error = Error;
    fn try_from(j: ConeJson) -> Result<Self> {
        if j.length != j.cells.len() {
            return input(format!("length {} but {} cells", j.length, j.cells.len()));
        }
        CircularCone::new(j.cells, j.a)
    }
}

impl From<CircularCone> for ConeJson {
    fn from(c: CircularCone) -> Self {
        ConeJson { length: c.cells.len(), cells: c.cells, a: c.a_cone }
    }
}

impl CircularCone {
    pub fn new(cells: Vec<(u32, u32)>, a_cone: Option<Q>) -> Result<Self> {
        if cells.is_empty() {
            return input("a cone needs at least one cell");
        }
        Ok(CircularCone { cells, a_cone })
    }

    /// Cone with representative cells for the given labels: `o -> (0,0)`,
    /// `+ -> (0,1)`, `- -> (1,0)`, `* -> (1,1)`.
    pub fn from_labels(labels: &str, a_cone: Option<Q>) -> Result<Self> {
        let cells = labels
            .chars()
            .map(|c| match Label::from_char(c) {
                Some(Label::Circle) => Ok((0, 0)),
                Some(Label::Plus) => Ok((0, 1)),
                Some(Label::Minus) => Ok((1, 0)),
                Some(Label::Star) => Ok((1, 1)),
                None => input(format!("unknown label {c:?}")),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(cells, a_cone)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cells(&self) -> &[(u32, u32)] {
        &self.cells
    }

    pub fn a_cone(&self) -> Option<Q> {
        self.a_cone
    }

    pub fn labels(&self) -> Vec<Label> {
        self.cells.iter().map(|&(v, h)| Label::from_vh(v, h)).collect()
    }

    pub fn label_string(&self) -> String {
        label_string(&self.labels())
    }

    fn sums(&self) -> (usize, usize) {
        let sv = self.cells.iter().map(|c| c.0 as usize).sum();
        let sh = self.cells.iter().map(|c| c.1 as usize).sum();
        (sv, sh)
    }

    fn max_vh(&self) -> usize {
        self.cells.iter().map(|&(v, h)| v.max(h) as usize).max().unwrap_or(0)
    }
}

impl fmt::Display for CircularCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|(v, h)| format!("({v},{h})")).collect();
        write!(f, "[{}] {}", self.label_string(), cells.join(""))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalKind {
    StarStar,
    PlusMinus,
    PlusStar,
    StarMinus,
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalKind::StarStar => "[*,*]",
            IntervalKind::PlusMinus => "[+,-]",
            IntervalKind::PlusStar => "[+,*]",
            IntervalKind::StarMinus => "[*,-]",
        })
    }
}

/// Cyclic stretch from `start` forward to `end` (0-based, possibly equal,
/// possibly wrapping) whose endpoints are non-`o` and whose interior is all `o`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
    pub kind: IntervalKind,
}

fn bad_kind(a: Label, b: Label) -> Option<IntervalKind> {
    use Label::*;
    match (a, b) {
        (Star, Star) => Some(IntervalKind::StarStar),
        (Plus, Minus) => Some(IntervalKind::PlusMinus),
        (Plus, Star) => Some(IntervalKind::PlusStar),
        (Star, Minus) => Some(IntervalKind::StarMinus),
        _ => None,
    }
}

/// First obstructing interval by start position, if any.
pub fn find_nonsurjective_interval(cone: &CircularCone) -> Option<Interval> {
    let labels = cone.labels();
    let marked: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] != Label::Circle).collect();
    (0..marked.len()).find_map(|k| {
        let (i, j) = (marked[k], marked[(k + 1) % marked.len()]);
        bad_kind(labels[i], labels[j]).map(|kind| Interval { start: i, end: j, kind })
    })
}

pub fn star_nonsurjective(cone: &CircularCone) -> bool {
    cone.labels().contains(&Label::Star)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    Pattern,
    Oracle,
}

/// Target basis vector `U^degree` in tower `B_tower`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Uncovered {
    pub tower: usize,
    pub degree: usize,
}

impl fmt::Display for Uncovered {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U^{} in B_{}", self.degree, self.tower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityVerdict {
    pub surjective: bool,
    pub witness: Option<Uncovered>,
    pub interval: Option<Interval>,
    pub method: Method,
    pub depth: Option<usize>,
}

/// Verdict from the label scan alone: `None` when neither test fires.
pub fn pattern_verdict(cone: &CircularCone) -> Option<SurjectivityVerdict> {
    let interval = find_nonsurjective_interval(cone);
    (interval.is_some() || star_nonsurjective(cone)).then_some(SurjectivityVerdict {
        surjective: false,
        witness: None,
        interval,
        method: Method::Pattern,
        depth: None,
    })
}

/// Smallest depth the oracle accepts is `min_depth`; `default_depth` is one more.
pub fn min_depth(cone: &CircularCone) -> usize {
    let (sv, sh) = cone.sums();
    sv + sh + 2
}

pub fn default_depth(cone: &CircularCone) -> usize {
    min_depth(cone)
}

struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }
    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }
    fn xor(&mut self, o: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&o.words) {
            *a ^= b;
        }
    }
    fn lowest(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, w)| **w != 0).map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }
}

/// Echelon basis keyed by lowest set bit.
struct Basis {
    pivots: Vec<Option<Bits>>,
    rank: usize,
}

impl Basis {
    fn new(n: usize) -> Self {
        Basis { pivots: (0..n).map(|_| None).collect(), rank: 0 }
    }

    /// Reduces `v`; returns it if it was independent of the basis.
    fn reduce(&self, mut v: Bits) -> Option<(usize, Bits)> {
        while let Some(lead) = v.lowest() {
            match &self.pivots[lead] {
                Some(b) => v.xor(b),
                None => return Some((lead, v)),
            }
        }
        None
    }

    fn insert(&mut self, v: Bits) {
        if let Some((lead, v)) = self.reduce(v) {
            self.pivots[lead] = Some(v);
            self.rank += 1;
        }
    }
}

/// Decides surjectivity of the cone map on towers truncated to `F_2[U]/U^depth`,
/// looking at the image projected to degrees below `depth - max(V,H)`.
pub fn oracle_surjective(cone: &CircularCone, depth: usize) -> Result<SurjectivityVerdict> {
    let bound = min_depth(cone) - 1;
    if depth <= bound {
        return Err(Error::TooShallow { depth, bound });
    }
    let p = cone.len();
    let low = depth - cone.max_vh();
    let dim = p * low;
    // coordinate of U^t in B_i is t * p + i
    let mut basis = Basis::new(dim);
    for t in 0..depth {
        for (i, &(v, h)) in cone.cells.iter().enumerate() {
            let mut col = Bits::new(dim);
            let tv = t + v as usize;
            if tv < low {
                col.flip(tv * p + i);
            }
            let th = t + h as usize;
            if th < low {
                col.flip(th * p + (i + 1) % p);
            }
            basis.insert(col);
        }
    }
    let witness = if basis.rank == dim {
        None
    } else {
        (0..dim).find_map(|c| {
            let mut e = Bits::new(dim);
            e.flip(c);
            basis.reduce(e).map(|_| Uncovered { tower: c % p, degree: c / p })
        })
    };
    Ok(SurjectivityVerdict { surjective: witness.is_none(), witness, interval: None, method: Method::Oracle, depth: Some(depth) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GateOutcome {
    Consistent,
    Contradiction,
}

/// A surface of genus `g` capping the cone's knot forces the cone map onto
/// whenever `A_cone >= g / p`; a non-surjective cone at such a level is a
/// contradiction.
pub fn adjunction_gate(cone: &CircularCone, genus: u64) -> Result<GateOutcome> {
    let a = cone.a_cone.ok_or_else(|| Error::Input("cone has no Alexander grading".into()))?;
    if a < q(genus as i64, cone.len() as i64) {
        return Ok(GateOutcome::Consistent);
    }
    let surjective = match pattern_verdict(cone) {
        Some(v) => v.surjective,
        None => oracle_surjective(cone, default_depth(cone))?.surjective,
    };
    Ok(if surjective { GateOutcome::Consistent } else { GateOutcome::Contradiction })
}

/// Random cone with `1..=max_len` cells and entries in `0..=max_vh`. No
/// profile law is imposed.
pub fn random_cone<R: Rng>(rng: &mut R, max_len: usize, max_vh: u32) -> CircularCone {
    let len = rng.gen_range(1..=max_len.max(1));
    let cells = (0..len).map(|_| (rng.gen_range(0..=max_vh), rng.gen_range(0..=max_vh))).collect();
    let a = q(rng.gen_range(-12..=12), len as i64 * 2);
    CircularCone { cells, a_cone: Some(a) }
}

/// Per-cone comparison of the two methods.
#[derive(Debug, Clone, Serialize)]
pub struct ConeCheck {
    pub index: usize,
    pub labels: String,
    pub interval: Option<Interval>,
    pub star: bool,
    pub oracle: Option<SurjectivityVerdict>,
    pub oracle_deeper: Option<SurjectivityVerdict>,
    pub refused: bool,
    /// A pattern fired but the oracle found the map onto.
    pub soundness_violation: bool,
    /// Oracle verdict changed between `depth` and `depth + 3`.
    pub unstable: bool,
}

/// Runs both methods; the oracle at `depth` (or the default) and at `depth + 3`.
pub fn check_cone(index: usize, cone: &CircularCone, depth: Option<usize>) -> ConeCheck {
    let interval = find_nonsurjective_interval(cone);
    let star = star_nonsurjective(cone);
    let n = depth.unwrap_or_else(|| default_depth(cone));
    let oracle = oracle_surjective(cone, n).ok();
    let oracle_deeper = oracle.as_ref().and_then(|_| oracle_surjective(cone, n + 3).ok());
    let refused = oracle.is_none();
    let fired = interval.is_some() || star;
    let soundness_violation = fired && oracle.as_ref().is_some_and(|v| v.surjective);
    let unstable = match (&oracle, &oracle_deeper) {
        (Some(a), Some(b)) => a.surjective != b.surjective,
        _ => false,
    };
    ConeCheck { index, labels: cone.label_string(), interval, star, oracle, oracle_deeper, refused, soundness_violation, unstable }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cone(labels: &str) -> CircularCone {
        CircularCone::from_labels(labels, None).unwrap()
    }

    /// Over F_2[[U]] the map is a p x p matrix with determinant
    /// `U^{sum V} + U^{sum H}`; it is onto iff that is a unit.
    fn determinant_unit(c: &CircularCone) -> bool {
        let (sv, sh) = c.sums();
        (sv == 0) != (sh == 0)
    }

    #[test]
    fn interval_examples() {
        let iv = find_nonsurjective_interval(&cone("+o-o")).unwrap();
        assert_eq!((iv.start, iv.end, iv.kind), (0, 2, IntervalKind::PlusMinus));
        let iv = find_nonsurjective_interval(&cone("*")).unwrap();
        assert_eq!((iv.start, iv.end, iv.kind), (0, 0, IntervalKind::StarStar));
        assert!(find_nonsurjective_interval(&cone("++++")).is_none());
        assert!(find_nonsurjective_interval(&cone("oooo")).is_none());
        assert!(find_nonsurjective_interval(&cone("-o-")).is_none());
    }

    #[test]
    fn star_examples() {
        let c = cone("*oo");
        assert!(star_nonsurjective(&c));
        assert_eq!(find_nonsurjective_interval(&c).unwrap().kind, IntervalKind::StarStar);
        let c = cone("*++-");
        assert!(star_nonsurjective(&c));
        let kind = find_nonsurjective_interval(&c).unwrap().kind;
        assert!(matches!(kind, IntervalKind::PlusMinus | IntervalKind::StarMinus));
        let c = cone("+o-");
        assert!(!star_nonsurjective(&c));
        assert!(find_nonsurjective_interval(&c).is_some());
    }

    #[test]
    fn oracle_examples() {
        for p in 1..6 {
            let c = CircularCone::new(vec![(0, 0); p], None).unwrap();
            assert!(!oracle_surjective(&c, 4).unwrap().surjective);
            for h in 1..4 {
                let c = CircularCone::new(vec![(0, h); p], None).unwrap();
                let n = p * h as usize + 2;
                assert!(oracle_surjective(&c, n).unwrap().surjective, "p={p} h={h}");
            }
        }
        let c = CircularCone::new(vec![(0, 1), (2, 3), (0, 0)], None).unwrap();
        let v = oracle_surjective(&c, default_depth(&c)).unwrap();
        assert!(!v.surjective);
        assert!(v.witness.is_some());
    }

    #[test]
    fn oracle_refuses_shallow_depth() {
        let c = CircularCone::new(vec![(1, 2), (0, 3)], None).unwrap();
        assert_eq!(oracle_surjective(&c, 7), Err(Error::TooShallow { depth: 7, bound: 7 }));
        assert!(oracle_surjective(&c, 8).is_ok());
    }

    #[test]
    fn gate_examples() {
        let c = CircularCone::from_labels("*o", Some(int(1))).unwrap();
        assert_eq!(adjunction_gate(&c, 1).unwrap(), GateOutcome::Contradiction);
        let c = CircularCone::from_labels("*o", Some(int(-1))).unwrap();
        assert_eq!(adjunction_gate(&c, 0).unwrap(), GateOutcome::Consistent);
        let c = CircularCone::from_labels("+++", Some(int(5))).unwrap();
        assert_eq!(adjunction_gate(&c, 0).unwrap(), GateOutcome::Consistent);
        assert!(adjunction_gate(&cone("*"), 0).is_err());
    }

    #[test]
    fn random_cones_agree_with_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for i in 0..300 {
            let c = random_cone(&mut rng, 12, 5);
            let chk = check_cone(i, &c, None);
            assert!(!chk.soundness_violation && !chk.unstable, "{c}");
            assert_eq!(chk.oracle.unwrap().surjective, determinant_unit(&c), "{c}");
            if chk.star {
                assert!(chk.interval.is_some());
            }
        }
    }

    #[test]
    fn json_shape() {
        let c = CircularCone::new(vec![(1, 0), (0, 2)], Some(q(1, 2))).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"length":2,"cells":[[1,0],[0,2]],"A":"1/2"}"#);
        assert_eq!(serde_json::from_str::<CircularCone>(&s).unwrap(), c);
        assert!(serde_json::from_str::<CircularCone>(r#"{"length":3,"cells":[[1,0]]}"#).is_err());
    }
}
