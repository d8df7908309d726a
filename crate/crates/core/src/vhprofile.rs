//! V/H profiles over relative Spin^c structures.
//!
//! A profile has one column per underlying Spin^c structure. A column is a
//! finite window of `(V, H)` pairs at consecutive offsets (multiples of
//! PD[mu]); the grading at offset `m` is `anchor + m`. Outside the window
//! the tails are forced: above it `V = 0` and `H` grows by one per step,
//! below it `H = 0` and `V` grows by one per step.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{H1Class, Manifold, SpincIndex};
use crate::rational::{int, q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Circle,
    Plus,
    Minus,
    Star,
}

impl Label {
    pub fn from_vh(v: u32, h: u32) -> Label {
        match (v > 0, h > 0) {
            (false, false) => Label::Circle,
            (false, true) => Label::Plus,
            (true, false) => Label::Minus,
            (true, true) => Label::Star,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Label::Circle => 'o',
            Label::Plus => '+',
            Label::Minus => '-',
            Label::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Label> {
        Some(match c {
            'o' => Label::Circle,
            '+' => Label::Plus,
            '-' => Label::Minus,
            '*' => Label::Star,
            _ => return None,
        })
    }

    /// Label of the conjugate structure: `+` and `-` swap.
    pub fn conjugate(self) -> Label {
        match self {
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
            l => l,
        }
    }
}

pub fn label_string(labels: &[Label]) -> String {
    labels.iter().map(|l| l.as_char()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelSpincIndex {
    pub base: SpincIndex,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub base: SpincIndex,
    /// Grading at offset 0.
    pub anchor: Q,
    /// Offset of `cells[0]`.
    pub start: i64,
    /// `(V, H)` at offsets `start, start + 1, ...`.
    pub cells: Vec<(u32, u32)>,
}

impl Column {
    pub fn end(&self) -> i64 {
        self.start + self.cells.len() as i64 - 1
    }

    pub fn labels(&self) -> Vec<Label> {
        self.cells.iter().map(|&(v, h)| Label::from_vh(v, h)).collect()
    }

    fn offsets(&self) -> impl Iterator<Item = (i64, (u32, u32))> + '_ {
        self.cells.iter().enumerate().map(|(i, c)| (self.start + i as i64, *c))
    }

    /// `(V, H)` at any offset, extending the window by its forced tails.
    pub fn vh_at(&self, offset: i64) -> (u32, u32) {
        if offset < self.start {
            let (v, _) = self.cells[0];
            (v + (self.start - offset) as u32, 0)
        } else if offset > self.end() {
            let (_, h) = *self.cells.last().unwrap();
            (0, h + (offset - self.end()) as u32)
        } else {
            self.cells[(offset - self.start) as usize]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VHProfile {
    pub columns: Vec<Column>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Law {
    EmptyWindow,
    DuplicateBase,
    /// `V(xi) >= V(xi + PD[mu]) >= V(xi) - 1`
    VMonotone,
    /// `H(xi) <= H(xi + PD[mu]) <= H(xi) + 1`
    HMonotone,
    /// `(V - H)(xi + PD[mu]) - (V - H)(xi) = -1`
    DifferenceStep,
    /// `V = 0` at the top of the window.
    UpperTail,
    /// `H = 0` at the bottom of the window.
    LowerTail,
    /// Column is neither a single `o` without `*` nor a contiguous `*` block without `o`.
    LabelPattern,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::EmptyWindow => "empty window",
            Law::DuplicateBase => "duplicate base",
            Law::VMonotone => "V(xi) >= V(xi+PD[mu]) >= V(xi)-1",
            Law::HMonotone => "H(xi) <= H(xi+PD[mu]) <= H(xi)+1",
            Law::DifferenceStep => "(V-H)(xi+PD[mu]) - (V-H)(xi) = -1",
            Law::UpperTail => "V vanishes at the top of the window",
            Law::LowerTail => "H vanishes at the bottom of the window",
            Law::LabelPattern => "column label pattern",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub column: usize,
    pub base: SpincIndex,
    pub offset: i64,
    pub law: Law,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {} (base {}) at offset {}: {}", self.column, self.base, self.offset, self.law)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ColumnType {
    /// Exactly one `o`, everything else `+` or `-`.
    SingleCircle,
    /// A nonempty contiguous block of `*`, everything else `+` or `-`.
    StarBlock { stars: usize },
}

fn check_column(idx: usize, c: &Column) -> std::result::Result<(), Violation> {
    let fail = |offset, law| Violation { column: idx, base: c.base.clone(), offset, law };
    let Some(&(_, h0)) = c.cells.first() else {
        return Err(fail(c.start, Law::EmptyWindow));
    };
    if h0 != 0 {
        return Err(fail(c.start, Law::LowerTail));
    }
    for (i, w) in c.cells.windows(2).enumerate() {
        let off = c.start + i as i64;
        let ((v0, h0), (v1, h1)) = (w[0], w[1]);
        if !(v1 <= v0 && v1 + 1 >= v0) {
            return Err(fail(off, Law::VMonotone));
        }
        if !(h1 >= h0 && h1 <= h0 + 1) {
            return Err(fail(off, Law::HMonotone));
        }
        if (v1 as i64 - h1 as i64) - (v0 as i64 - h0 as i64) != -1 {
            return Err(fail(off, Law::DifferenceStep));
        }
    }
    if c.cells.last().unwrap().0 != 0 {
        return Err(fail(c.end(), Law::UpperTail));
    }
    Ok(())
}

impl VHProfile {
    /// Accepts iff every column satisfies the monotonicity, difference and
    /// tail laws; reports the first offending column, offset and law.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, c) in self.columns.iter().enumerate() {
            if self.columns[..i].iter().any(|d| d.base == c.base) {
                return Err(Violation { column: i, base: c.base.clone(), offset: c.start, law: Law::DuplicateBase });
            }
            check_column(i, c)?;
        }
        Ok(())
    }

    fn column_index(&self, base: &SpincIndex) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| &c.base == base)
            .ok_or_else(|| Error::Input(format!("no column for base {base}")))
    }

    pub fn column(&self, base: &SpincIndex) -> Result<&Column> {
        Ok(&self.columns[self.column_index(base)?])
    }

    fn valid_column(&self, base: &SpincIndex) -> Result<&Column> {
        let i = self.column_index(base)?;
        let c = &self.columns[i];
        check_column(i, c).map_err(|v| Error::Input(v.to_string()))?;
        Ok(c)
    }

    pub fn grading(&self, xi: &RelSpincIndex) -> Result<Q> {
        Ok(self.column(&xi.base)?.anchor + int(xi.offset))
    }

    /// The unique structure over `base` with `V = H`.
    pub fn middle_structure(&self, base: &SpincIndex) -> Result<RelSpincIndex> {
        let c = self.valid_column(base)?;
        let mut hits = c.offsets().filter(|(_, (v, h))| v == h).map(|(o, _)| o);
        let offset = hits.next().ok_or_else(|| Error::Consistency(format!("no V = H cell over {base}")))?;
        if hits.next().is_some() {
            return Err(Error::Consistency(format!("several V = H cells over {base}")));
        }
        Ok(RelSpincIndex { base: base.clone(), offset })
    }

    /// The structure realizing `nu^+` over `base`: least grading with `V = 0`.
    pub fn nu_witness(&self, base: &SpincIndex) -> Result<RelSpincIndex> {
        let c = self.valid_column(base)?;
        let offset = c.offsets().find(|(_, (v, _))| *v == 0).map(|(o, _)| o).expect("V vanishes at the top");
        Ok(RelSpincIndex { base: base.clone(), offset })
    }

    pub fn nu_plus(&self, base: &SpincIndex) -> Result<Q> {
        self.grading(&self.nu_witness(base)?)
    }

    /// `nu^+` maximized over bases, with the supporting structure. Ties go
    /// to the smallest base.
    pub fn nu_plus_overall(&self) -> Result<(Q, RelSpincIndex)> {
        let mut best: Option<(Q, RelSpincIndex)> = None;
        for c in &self.columns {
            let w = self.nu_witness(&c.base)?;
            let a = self.grading(&w)?;
            let better = match &best {
                None => true,
                Some((b, bw)) => a > *b || (a == *b && w.base < bw.base),
            };
            if better {
                best = Some((a, w));
            }
        }
        best.ok_or_else(|| Error::Input("profile has no columns".into()))
    }

    pub fn classify_column(&self, base: &SpincIndex) -> std::result::Result<ColumnType, Violation> {
        let i = self.column_index(base).map_err(|_| Violation {
            column: self.columns.len(),
            base: base.clone(),
            offset: 0,
            law: Law::LabelPattern,
        })?;
        let c = &self.columns[i];
        check_column(i, c)?;
        let labels = c.labels();
        let circles = labels.iter().filter(|l| **l == Label::Circle).count();
        let star_pos: Vec<usize> =
            labels.iter().enumerate().filter(|(_, l)| **l == Label::Star).map(|(i, _)| i).collect();
        let contiguous = star_pos.windows(2).all(|w| w[1] == w[0] + 1);
        match (circles, star_pos.len()) {
            (1, 0) => Ok(ColumnType::SingleCircle),
            (0, n) if n > 0 && contiguous => Ok(ColumnType::StarBlock { stars: n }),
            _ => Err(Violation { column: i, base: base.clone(), offset: c.start, law: Law::LabelPattern }),
        }
    }

    /// Mirror profile: the structure `J~xi` gets `V' = H(xi)`, `H' = V(xi)`
    /// and grading `-A(xi)`; `base_map` sends the base of `xi` to the base
    /// of `J~xi`.
    pub fn conjugate_with(&self, base_map: impl Fn(&SpincIndex) -> SpincIndex) -> VHProfile {
        let columns = self
            .columns
            .iter()
            .map(|c| Column {
                base: base_map(&c.base),
                anchor: -c.anchor,
                start: -c.end(),
                cells: c.cells.iter().rev().map(|&(v, h)| (h, v)).collect(),
            })
            .collect();
        VHProfile { columns }
    }

    /// Conjugation for a knot in class `a` of `y`: bases map by `s -> J s - PD[K]`.
    pub fn conjugate_in(&self, y: &Manifold, a: &H1Class) -> Result<VHProfile> {
        let neg = y.negate_class(a)?;
        for c in &self.columns {
            y.check_spinc(&c.base)?;
        }
        Ok(self.conjugate_with(|s| {
            let js = y.conjugate(s).expect("checked above");
            y.translate(&js, &neg).expect("checked above")
        }))
    }
}

/// Runs every law a valid profile must satisfy and lists the ones that
/// fail. Conjugation uses `s -> J s - PD[K]` when `knot` is given and keeps
/// bases otherwise.
pub fn law_exceptions(prof: &VHProfile, knot: Option<(&Manifold, &H1Class)>) -> Vec<String> {
    let mut out = Vec::new();
    if let Err(v) = prof.validate() {
        out.push(format!("validation: {v}"));
        return out;
    }
    for c in &prof.columns {
        let b = &c.base;
        if c.cells.windows(2).any(|w| (w[1].0 as i64 - w[1].1 as i64) - (w[0].0 as i64 - w[0].1 as i64) != -1) {
            out.push(format!("{b}: V-H does not step by -1"));
        }
        let a0 = match prof.middle_structure(b).and_then(|m| prof.grading(&m)) {
            Ok(a0) => a0,
            Err(e) => {
                out.push(format!("{b}: middle structure: {e}"));
                continue;
            }
        };
        match prof.nu_witness(b) {
            Ok(w) => {
                let nu = c.anchor + int(w.offset);
                let h = c.vh_at(w.offset).1;
                if nu < a0 || (nu == a0) != (h == 0) {
                    out.push(format!("{b}: nu+ = {nu}, A(xi0) = {a0}, H at witness = {h}"));
                }
            }
            Err(e) => out.push(format!("{b}: nu+: {e}")),
        }
        let labels = c.labels();
        match prof.classify_column(b) {
            Ok(ColumnType::SingleCircle) if labels.contains(&Label::Star) => {
                out.push(format!("{b}: single-circle column contains *"))
            }
            Ok(ColumnType::StarBlock { .. }) if labels.contains(&Label::Circle) => {
                out.push(format!("{b}: star column contains o"))
            }
            Ok(_) => {}
            Err(v) => out.push(format!("classification: {v}")),
        }
    }
    let conj = match knot {
        Some((y, a)) => prof.conjugate_in(y, a).and_then(|c| Ok((c.conjugate_in(y, a)?, c))),
        None => {
            let c = prof.conjugate_with(|s| s.clone());
            Ok((c.conjugate_with(|s| s.clone()), c))
        }
    };
    match conj {
        Err(e) => out.push(format!("conjugation: {e}")),
        Ok((twice, once)) => {
            if &twice != prof {
                out.push("conjugation is not an involution".into());
            }
            if let Err(v) = once.validate() {
                out.push(format!("conjugate fails validation: {v}"));
            }
            for (c, d) in prof.columns.iter().zip(&once.columns) {
                let mut swapped: Vec<Label> = c.labels().into_iter().map(Label::conjugate).collect();
                swapped.reverse();
                if d.labels() != swapped || d.anchor != -c.anchor {
                    out.push(format!("{}: conjugate labels or grading do not mirror", c.base));
                }
            }
        }
    }
    out
}

/// Random valid profile over every Spin^c structure of `y`. Windows have
/// between 1 and `max_len` cells; anchors are arbitrary small rationals.
pub fn random_profile<R: Rng>(rng: &mut R, y: &Manifold, max_len: usize) -> VHProfile {
    let columns = y
        .spinc_structures()
        .map(|base| {
            let len = rng.gen_range(1..=max_len.max(1));
            let v0 = rng.gen_range(0..len) as u32;
            // choose which of the len-1 steps drop V; the rest raise H
            let mut drops: Vec<bool> = (0..len - 1).map(|i| i < v0 as usize).collect();
            for i in (1..drops.len()).rev() {
                let j = rng.gen_range(0..=i);
                drops.swap(i, j);
            }
            let mut cells = vec![(v0, 0u32)];
            for d in drops {
                let (v, h) = *cells.last().unwrap();
                cells.push(if d { (v - 1, h) } else { (v, h + 1) });
            }
            let den = [1, 2, 3, 4, 6, 10][rng.gen_range(0..6)];
            Column {
                base,
                anchor: q(rng.gen_range(-20..=20), den),
                start: rng.gen_range(-6..=6),
                cells,
            }
        })
        .collect();
    VHProfile { columns }
}

// JSON: {"columns":[{"base":[..],"anchor":"n/d","cells":[[offset,V,H],..],"labels":"--*++"}]}

#[derive(Serialize, Deserialize)]
struct ColumnJson {
    base: SpincIndex,
    #[serde(with = "crate::rational::serde_q")]
    anchor: Q,
    cells: Vec<(i64, u32, u32)>,
    #[serde(default, skip_deserializing)]
    labels: String,
}

#[derive(Serialize, Deserialize)]
struct ProfileJson {
    columns: Vec<ColumnJson>,
}

impl Serialize for VHProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileJson {
            columns: self
                .columns
                .iter()
                .map(|c| ColumnJson {
                    base: c.base.clone(),
                    anchor: c.anchor,
                    cells: c.offsets().map(|(o, (v, h))| (o, v, h)).collect(),
                    labels: label_string(&c.labels()),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for VHProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ProfileJson::deserialize(d)?;
        let mut columns = Vec::new();
        for c in raw.columns {
            let start = c.cells.first().map(|x| x.0).unwrap_or(0);
            for (i, (o, _, _)) in c.cells.iter().enumerate() {
                if *o != start + i as i64 {
                    return Err(D::Error::custom(format!(
                        "column {}: offsets must be consecutive, found {o} at position {i}",
                        c.base
                    )));
                }
            }
            columns.push(Column {
                base: c.base,
                anchor: c.anchor,
                start,
                cells: c.cells.into_iter().map(|(_, v, h)| (v, h)).collect(),
            });
        }
        Ok(VHProfile { columns })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(cells: &[(u32, u32)], start: i64) -> VHProfile {
        VHProfile {
            columns: vec![Column { base: SpincIndex(vec![0]), anchor: int(0), start, cells: cells.to_vec() }],
        }
    }

    fn base0() -> SpincIndex {
        SpincIndex(vec![0])
    }

    const STAIR: [(u32, u32); 5] = [(2, 0), (1, 0), (1, 1), (0, 1), (0, 2)];

    #[test]
    fn validate_examples() {
        single(&STAIR, -2).validate().unwrap();
        let v = single(&[(2, 0), (0, 0)], 0).validate().unwrap_err();
        assert_eq!(v.law, Law::VMonotone);
        let v = single(&[(2, 0), (1, 0), (0, 1)], 0).validate().unwrap_err();
        assert_eq!((v.law, v.offset), (Law::DifferenceStep, 1));
        assert_eq!(single(&[(1, 1), (0, 1)], 0).validate().unwrap_err().law, Law::LowerTail);
        assert_eq!(single(&[(1, 0)], 0).validate().unwrap_err().law, Law::UpperTail);
        assert_eq!(single(&[], 0).validate().unwrap_err().law, Law::EmptyWindow);
    }

    #[test]
    fn stair_profile() {
        let p = single(&STAIR, -2);
        let mid = p.middle_structure(&base0()).unwrap();
        assert_eq!(p.grading(&mid).unwrap(), int(0));
        assert_eq!(p.nu_plus(&base0()).unwrap(), int(1));
        assert_eq!(p.classify_column(&base0()).unwrap(), ColumnType::StarBlock { stars: 1 });
        assert_eq!(label_string(&p.columns[0].labels()), "--*++");
    }

    #[test]
    fn trivial_profile() {
        let p = single(&[(0, 0)], 0);
        let mid = p.middle_structure(&base0()).unwrap();
        assert_eq!(mid.offset, 0);
        assert_eq!(p.nu_plus(&base0()).unwrap(), p.grading(&mid).unwrap());
        assert_eq!(p.classify_column(&base0()).unwrap(), ColumnType::SingleCircle);
        assert_eq!(p.conjugate_with(|s| s.clone()), p);
    }

    #[test]
    fn conjugate_label_sequence() {
        // (+, o, -) in descending A; read ascending it is (-, o, +).
        let p = single(&[(1, 0), (0, 0), (0, 1)], -1);
        let c = p.conjugate_with(|s| s.clone());
        assert_eq!(label_string(&c.columns[0].labels()), "-o+");
        assert_eq!(c.columns[0].start, -1);
        let p = single(&STAIR, -2);
        let c = p.conjugate_with(|s| s.clone());
        assert_eq!(c.columns[0].cells, vec![(2, 0), (1, 0), (1, 1), (0, 1), (0, 2)]);
    }

    #[test]
    fn tails_extend_window() {
        let c = &single(&STAIR, -2).columns[0];
        assert_eq!(c.vh_at(-4), (4, 0));
        assert_eq!(c.vh_at(5), (0, 5));
        assert_eq!(c.vh_at(0), (1, 1));
    }

    #[test]
    fn json_roundtrip_and_rejects_gaps() {
        let p = single(&STAIR, -2);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"labels\":\"--*++\""));
        let back: VHProfile = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"columns":[{"base":[0],"anchor":"0/1","cells":[[0,0,0],[2,0,1]]}]}"#;
        assert!(serde_json::from_str::<VHProfile>(bad).is_err());
    }

    #[test]
    fn nu_ties_pick_smallest_base() {
        let col = |b: u64| Column { base: SpincIndex(vec![b]), anchor: q(1, 2), start: 0, cells: vec![(0, 0)] };
        let p = VHProfile { columns: vec![col(2), col(0), col(1)] };
        let (nu, w) = p.nu_plus_overall().unwrap();
        assert_eq!(nu, q(1, 2));
        assert_eq!(w.base, base0());
    }
}
