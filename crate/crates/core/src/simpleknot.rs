//! Alexander gradings and genus data for Floer simple knots.
//!
//! For a Floer simple knot each Spin^c structure carries a single generator,
//! sitting in the middle relative structure, whose grading is
//! `d(Y,s)/2 - d(Y,s+PD[K])/2`. U-knots additionally have a closed form,
//! which serves as an independent check of the d-invariant route.

use num_integer::Integer;
use serde::Serialize;

use crate::dinvariant::CorrectionTerms;
use crate::error::{input, Error, Result};
use crate::homology::{H1Class, LensSpace, Manifold};
use crate::rational::{as_integer, int, q, serde_q, Q};
use crate::vhprofile::{Column, VHProfile};

/// A Floer simple knot, identified by its ambient manifold and class.
///
/// Simple knots in lens spaces, and connected sums of them, are Floer simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleKnot {
    ambient: Manifold,
    cls: H1Class,
    order_p: u64,
}

impl SimpleKnot {
    pub fn new(ambient: Manifold, cls: H1Class) -> Result<Self> {
        let order_p = ambient.order_of_class(&cls)?;
        Ok(SimpleKnot { ambient, cls, order_p })
    }

    /// The simple knot `K(p,q,k)` in `L(p,q)`.
    pub fn in_lens(p: u64, q_: i64, k: u64) -> Result<Self> {
        let l = LensSpace::new(p, q_)?;
        let cls = if l.is_sphere() && k == 0 { vec![] } else { vec![k] };
        SimpleKnot::new(Manifold::new(vec![l]), H1Class(cls))
    }

    pub fn ambient(&self) -> &Manifold {
        &self.ambient
    }

    pub fn class(&self) -> &H1Class {
        &self.cls
    }

    pub fn order(&self) -> u64 {
        self.order_p
    }
}

/// Alexander gradings of a knot's Floer generators.
///
/// `entries[i]` belongs to the `i`-th Spin^c structure when the multiset
/// comes from [`gradings_via_d`]; closed-form multisets are listed ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingMultiset {
    pub order_p: u64,
    #[serde(serialize_with = "ser_vec_q")]
    pub entries: Vec<Q>,
}

fn ser_vec_q<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::rational::fmt_q))
}

impl GradingMultiset {
    pub fn a_max(&self) -> Q {
        *self.entries.iter().max().expect("grading multisets are nonempty")
    }

    pub fn a_min(&self) -> Q {
        *self.entries.iter().min().expect("grading multisets are nonempty")
    }

    pub fn sorted(&self) -> Vec<Q> {
        let mut v = self.entries.clone();
        v.sort();
        v
    }

    /// The multiset equals its negation.
    pub fn is_symmetric(&self) -> bool {
        let mut neg: Vec<Q> = self.entries.iter().map(|a| -*a).collect();
        neg.sort();
        neg == self.sorted()
    }

    /// `2pA` for every entry, if all are integers.
    fn doubled(&self) -> Option<Vec<i64>> {
        let two_p = int(2 * self.order_p as i64);
        self.entries.iter().map(|a| as_integer(&(two_p * a))).collect()
    }

    /// Literal reading of the parity law: every `2pA` is an integer of the
    /// parity of `p`. Holds exactly when the boundary count `k` is even; the
    /// general law is [`GradingMultiset::boundary_parity_holds`].
    pub fn parity_matches_order(&self) -> bool {
        let p = self.order_p as i64;
        self.doubled().is_some_and(|v| v.iter().all(|x| (x - p).rem_euclid(2) == 0))
    }

    /// `<c_1(xi), [S]> = 2pA - p` has the parity of the number `k` of
    /// boundary components of a minimal rational Seifert surface, with
    /// `chi(S) = 2 - 2g - k = -2p ||K||` fixed by the genus identity.
    pub fn boundary_parity_holds(&self) -> bool {
        let Some(v) = self.doubled() else { return false };
        let p = self.order_p as i64;
        // -chi(S) = 2p||K|| = p (A_max - A_min - 1) must be an integer, and
        // k has its parity.
        let Some(neg_chi) = as_integer(&(int(p) * (self.a_max() - self.a_min() - int(1)))) else {
            return false;
        };
        v.iter().all(|x| (x - p - neg_chi).rem_euclid(2) == 0)
    }
}

/// Gradings of the Floer simple knot in `K`'s class, one per Spin^c structure.
pub fn gradings_via_d(k: &SimpleKnot) -> GradingMultiset {
    gradings_with(&CorrectionTerms::new(&k.ambient), k)
}

pub(crate) fn gradings_with(ct: &CorrectionTerms, k: &SimpleKnot) -> GradingMultiset {
    let half = q(1, 2);
    let entries = ct
        .differences(&k.cls)
        .expect("class validated at construction")
        .into_iter()
        .map(|x| half * x)
        .collect();
    GradingMultiset { order_p: k.order_p, entries }
}

/// Closed form for the U-knot in `L(p', n)`: the arithmetic progression
/// `(2j - (p' - 1)) / (2p')`, `j = 0..p'`.
pub fn u_knot_gradings(p_prime: u64, n: i64) -> Result<GradingMultiset> {
    if p_prime == 0 {
        return input("p' must be positive");
    }
    if p_prime > 1 && n.unsigned_abs().gcd(&p_prime) != 1 {
        return input(format!("gcd(p', n) = gcd({p_prime}, {n}) must be 1"));
    }
    let pp = p_prime as i64;
    let entries = (0..pp).map(|j| q(2 * j - (pp - 1), 2 * pp)).collect();
    Ok(GradingMultiset { order_p: p_prime, entries })
}

/// Classes of L(p', n) realizing the U-knot gradings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UKnotMatch {
    pub lens: LensSpace,
    /// Smallest matching residue; the representative used elsewhere.
    pub class: u64,
    pub all_matches: Vec<u64>,
}

/// Finds the classes of order `p'` in `L(p', n)` whose d-route gradings
/// coincide with the closed form.
pub fn u_knot_class(p_prime: u64, n: i64) -> Result<UKnotMatch> {
    let target = u_knot_gradings(p_prime, n)?.sorted();
    let lens = LensSpace::new(p_prime, n)?;
    let y = Manifold::new(vec![lens]);
    let ct = CorrectionTerms::new(&y);
    let mut all_matches = Vec::new();
    for a in 0..p_prime {
        let cls = H1Class(if p_prime == 1 { vec![] } else { vec![a] });
        let k = SimpleKnot::new(y.clone(), cls)?;
        if k.order_p != p_prime {
            continue;
        }
        if gradings_with(&ct, &k).sorted() == target {
            all_matches.push(a);
        }
    }
    let class = *all_matches.first().ok_or_else(|| {
        Error::Consistency(format!("no class of L({p_prime},{n}) matches the U-knot gradings"))
    })?;
    Ok(UKnotMatch { lens, class, all_matches })
}

/// `||K|| = (A_max - A_min - 1) / 2`, from `2||K|| + 1 = A_max - A_min`.
pub fn seifert_genus(g: &GradingMultiset) -> Q {
    (g.a_max() - g.a_min() - int(1)) / int(2)
}

/// One row of the Turaev function table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaRow {
    pub class: H1Class,
    pub order_p: u64,
    #[serde(with = "serde_q")]
    pub theta: Q,
    #[serde(with = "serde_q")]
    pub d_gap: Q,
    #[serde(with = "serde_q")]
    pub a_max: Q,
    pub parity_ok: bool,
    pub symmetry_ok: bool,
}

/// Θ(a) as twice the genus of the Floer simple representative, checked
/// against `d_gap - 1` computed directly from the correction terms.
pub fn theta(y: &Manifold, a: &H1Class) -> Result<ThetaRow> {
    theta_with(&CorrectionTerms::new(y), a)
}

pub fn theta_with(ct: &CorrectionTerms, a: &H1Class) -> Result<ThetaRow> {
    let k = SimpleKnot::new(ct.manifold().clone(), a.clone())?;
    let g = gradings_with(ct, &k);
    let theta = int(2) * seifert_genus(&g);
    let d_gap = ct.d_gap(a)?;
    if theta != d_gap - int(1) {
        return Err(Error::Consistency(format!(
            "Θ({a}) in {}: genus route gives {theta}, d route gives {}",
            ct.manifold(),
            d_gap - int(1)
        )));
    }
    Ok(ThetaRow {
        class: a.clone(),
        order_p: k.order_p,
        theta,
        d_gap,
        a_max: g.a_max(),
        parity_ok: g.boundary_parity_holds(),
        symmetry_ok: g.is_symmetric() && g.a_min() == -g.a_max(),
    })
}

/// Θ for every class of `y`, in class order.
pub fn theta_table(y: &Manifold) -> Result<Vec<ThetaRow>> {
    let ct = CorrectionTerms::new(y);
    y.classes().map(|a| theta_with(&ct, &a)).collect()
}

/// The V/H profile of a Floer simple knot: one column per Spin^c structure,
/// anchored at the middle grading, with `V = max(0, -m)` and `H = max(0, m)`
/// at offset `m`, over offsets `-half_width..=half_width`.
pub fn floer_simple_profile(k: &SimpleKnot, half_width: u32) -> VHProfile {
    let g = gradings_via_d(k);
    let w = half_width as i64;
    let columns = k
        .ambient
        .spinc_structures()
        .zip(g.entries)
        .map(|(base, anchor)| Column {
            base,
            anchor,
            start: -w,
            cells: (-w..=w).map(|m| ((-m).max(0) as u32, m.max(0) as u32)).collect(),
        })
        .collect();
    VHProfile { columns }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn null_class_is_the_unknot() {
        let k = SimpleKnot::in_lens(7, 3, 0).unwrap();
        let g = gradings_via_d(&k);
        assert_eq!(k.order(), 1);
        assert!(g.entries.iter().all(|a| *a == int(0)));
        assert_eq!(seifert_genus(&g), q(-1, 2));
    }

    #[test]
    fn l21_core() {
        let g = gradings_via_d(&SimpleKnot::in_lens(2, 1, 1).unwrap());
        assert_eq!(g.sorted(), vec![q(-1, 4), q(1, 4)]);
        assert_eq!(seifert_genus(&g), q(-1, 4));
    }

    #[test]
    fn l5_classes_are_symmetric() {
        for k in 0..5 {
            let g = gradings_via_d(&SimpleKnot::in_lens(5, 1, k).unwrap());
            assert!(g.is_symmetric(), "k = {k}");
        }
    }

    #[test]
    fn u_knot_closed_form() {
        let g = u_knot_gradings(5, 1).unwrap();
        assert_eq!(g.sorted(), vec![q(-2, 5), q(-1, 5), int(0), q(1, 5), q(2, 5)]);
        assert_eq!(g.a_max(), q(2, 5));
        assert_eq!(seifert_genus(&g), q(-1, 10));
        assert_eq!(u_knot_gradings(1, 0).unwrap().entries, vec![int(0)]);
        assert_eq!(u_knot_gradings(2, 1).unwrap().sorted(), vec![q(-1, 4), q(1, 4)]);
        assert!(u_knot_gradings(6, 3).is_err());
    }

    #[test]
    fn u_knot_class_is_found() {
        let m = u_knot_class(5, 2).unwrap();
        assert_eq!(m.class, 1);
        assert_eq!(m.all_matches, vec![1, 2, 3, 4]);
        assert_eq!(u_knot_class(1, 0).unwrap().class, 0);
        assert_eq!(u_knot_class(6, 1).unwrap().all_matches, vec![1, 5]);
    }

    #[test]
    fn theta_examples() {
        for (p, qq) in [(1, 1), (5, 2), (12, 7)] {
            let y = Manifold::lens(p, qq).unwrap();
            assert_eq!(theta(&y, &H1Class::zero(&y)).unwrap().theta, int(-1));
        }
        let y = Manifold::lens(2, 1).unwrap();
        assert_eq!(theta(&y, &H1Class(vec![1])).unwrap().theta, q(-1, 2));
    }

    #[test]
    fn theta_is_reflection_symmetric() {
        for p in 2..=40u64 {
            for qq in LensSpace::valid_q(p) {
                let y = Manifold::lens(p, qq as i64).unwrap();
                let rows = theta_table(&y).unwrap();
                for a in 1..p as usize {
                    assert_eq!(rows[a].theta, rows[p as usize - a].theta, "L({p},{qq}) a={a}");
                }
            }
        }
    }

    #[test]
    fn parity_law_readings() {
        // Core of L(2,1): one boundary component, so 2pA is odd while p is even.
        let g = gradings_via_d(&SimpleKnot::in_lens(2, 1, 1).unwrap());
        assert!(g.boundary_parity_holds());
        assert!(!g.parity_matches_order());
        // Class 2 in L(8,3) bounds an annulus: k = 2, both readings agree.
        let g = gradings_via_d(&SimpleKnot::in_lens(8, 3, 2).unwrap());
        assert!(g.boundary_parity_holds());
        assert!(g.parity_matches_order());
    }

    #[test]
    fn floer_simple_profile_middle_matches_d() {
        let k = SimpleKnot::in_lens(9, 2, 3).unwrap();
        let prof = floer_simple_profile(&k, 3);
        prof.validate().unwrap();
        let g = gradings_via_d(&k);
        for (col, a) in prof.columns.iter().zip(&g.entries) {
            let mid = prof.middle_structure(&col.base).unwrap();
            assert_eq!(prof.grading(&mid).unwrap(), *a);
        }
    }
}
