//! Genus bounds from correction terms, the Morse-surgery reduction to a
//! framed longitude, and Euler-characteristic conversions between the
//! normalizations of rational genus.

use num_integer::Integer;
use serde::Serialize;

use crate::dinvariant::CorrectionTerms;
use crate::error::{input, Error, Result};
use crate::homology::{H1Class, KnotClass, LensSpace, Longitude, Manifold};
use crate::rational::{int, q, serde_q, Q};
use crate::simpleknot::{floer_simple_profile, gradings_with, seifert_genus, u_knot_class, SimpleKnot};

/// Writes `q'/p' = m - n/p'` with `0 <= n < p'`.
pub fn slam_dunk(p_prime: u64, q_prime: i64) -> Result<(i64, i64)> {
    if p_prime == 0 {
        return input("p' must be positive");
    }
    if p_prime > 1 && q_prime.unsigned_abs().gcd(&p_prime) != 1 {
        return input(format!("gcd(p', q') = gcd({p_prime}, {q_prime}) must be 1"));
    }
    let pp = p_prime as i64;
    let m = Integer::div_ceil(&q_prime, &pp);
    Ok((m, m * pp - q_prime))
}

/// `K' = K # O_{p'/n}` in `Y' = Y # L(p', n)`, whose rational longitude is a framing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub ambient: Manifold,
    pub class: H1Class,
    pub order_p: u64,
    pub m: i64,
    pub n: i64,
    /// Class of the U-knot in `L(p', n)`; absent when `p' = 1`.
    pub u_knot_class: Option<u64>,
    #[serde(with = "serde_q")]
    pub shift: Q,
}

pub fn morse_reduce(k: &KnotClass) -> Result<Reduction> {
    let Longitude { p_prime, q_prime, .. } = k.longitude;
    let (m, n) = slam_dunk(p_prime, q_prime)?;
    if p_prime == 1 {
        return Ok(Reduction {
            ambient: k.ambient.clone(),
            class: k.cls.clone(),
            order_p: k.order_p,
            m,
            n,
            u_knot_class: None,
            shift: int(0),
        });
    }
    let u = u_knot_class(p_prime, n)?;
    let ambient = k.ambient.connect_sum(&Manifold::new(vec![LensSpace::new(p_prime, n)?]));
    let mut residues = k.cls.0.clone();
    residues.push(u.class);
    let class = H1Class(residues);
    let order_p = ambient.order_of_class(&class)?;
    if order_p != k.order_p {
        return Err(Error::Consistency(format!(
            "reduction changed the order from {} to {order_p}",
            k.order_p
        )));
    }
    Ok(Reduction {
        ambient,
        class,
        order_p,
        m,
        n,
        u_knot_class: Some(u.class),
        shift: q(p_prime as i64 - 1, 2 * p_prime as i64),
    })
}

/// Lower bound `(d_gap - 1)/2` for `||K||_Y` over knots in class `a`.
pub fn seifert_bound(y: &Manifold, a: &H1Class) -> Result<Q> {
    let gap = CorrectionTerms::new(y).d_gap(a)?;
    Ok((gap - int(1)) / int(2))
}

/// Lower bound for the slice normalization; the same number as [`seifert_bound`].
pub fn slice_bound(y: &Manifold, a: &H1Class) -> Result<Q> {
    seifert_bound(y, a)
}

/// Lower bound `nu^+ - 1/2` for the slice normalization.
pub fn nu_slice_bound(nu: Q) -> Q {
    nu - q(1, 2)
}

/// `||F|| + 1/2` for a surface of genus `g` in a knot of order `p` whose
/// rational longitude has `p'`, in both normalizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Conversions {
    /// `(g + p - 1)/p`, present when `p' = 1`.
    #[serde(with = "serde_q::option")]
    pub framing: Option<Q>,
    /// `g/p + (p'+1)/(2p') - 1/p`.
    #[serde(with = "serde_q")]
    pub general: Q,
}

pub fn genus_conversions(g: u64, p: u64, p_prime: u64) -> Result<Conversions> {
    if p == 0 || p_prime == 0 || p % p_prime != 0 {
        return input(format!("p' = {p_prime} must divide p = {p}"));
    }
    let (g, p, pp) = (g as i64, p as i64, p_prime as i64);
    let general = q(g, p) + q(pp + 1, 2 * pp) - q(1, p);
    let framing = (pp == 1).then(|| q(g + p - 1, p));
    Ok(Conversions { framing, general })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub manifold: Manifold,
    pub class: H1Class,
    pub order_p: u64,
    /// Lower bound for `2||K|| + 1`, shared by the Seifert and slice sides.
    #[serde(with = "serde_q")]
    pub d_gap_bound: Q,
    #[serde(with = "serde_q")]
    pub theta: Q,
    #[serde(with = "serde_q")]
    pub seifert_bound: Q,
    #[serde(with = "serde_q")]
    pub slice_bound: Q,
    /// The slice quantity is only ever bounded, never computed.
    pub slice_lower_bound_only: bool,
    /// The Floer simple representative attains the slice bound.
    pub slice_equality: bool,
    #[serde(with = "serde_q")]
    pub nu_bound: Q,
    #[serde(with = "serde_q")]
    pub nu_slice_bound: Q,
    pub nu_equality: bool,
    /// `||K||` of the Floer simple representative.
    #[serde(with = "serde_q::option")]
    pub seifert_value: Option<Q>,
    pub seifert_equality: bool,
    pub reduction: Option<Reduction>,
    pub trail: Vec<String>,
}

fn consistency(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Consistency(what()))
    }
}

/// Full bound report for class `a` of `y`; `longitude` adds the Morse
/// reduction. Every equality the Floer simple representative should attain
/// is checked and a mismatch is a consistency error.
pub fn bound_report(y: &Manifold, a: &H1Class, longitude: Option<(u64, i64)>) -> Result<BoundReport> {
    let ct = CorrectionTerms::new(y);
    bound_report_with(&ct, a, longitude)
}

pub fn bound_report_with(ct: &CorrectionTerms, a: &H1Class, longitude: Option<(u64, i64)>) -> Result<BoundReport> {
    let y = ct.manifold();
    let knot = SimpleKnot::new(y.clone(), a.clone())?;
    let d_gap = ct.d_gap(a)?;
    let bound = (d_gap - int(1)) / int(2);
    let mut trail = vec![
        format!("d_gap = max_s (d(Y,s) - d(Y,s+a)) = {d_gap}"),
        format!("2||K||_Y + 1 >= d_gap, so ||K||_Y >= {bound}"),
        format!("2||K||^d_(YxI) + 1 >= d_gap, so ||K||^d >= {bound}"),
    ];

    let grades = gradings_with(ct, &knot);
    let value = seifert_genus(&grades);
    trail.push(format!("Floer simple representative: 2||K|| + 1 = A_max - A_min, ||K|| = {value}"));

    let profile = floer_simple_profile(&knot, 1);
    let (nu, witness) = profile.nu_plus_overall()?;
    let nu_slice = nu_slice_bound(nu);
    trail.push(format!("nu+ = max_s min{{A : V = 0}} = {nu} at base {}", witness.base));
    trail.push(format!("nu+ <= ||K||^d + 1/2, so ||K||^d >= {nu_slice}"));

    consistency(nu >= d_gap / int(2), || format!("nu+ = {nu} below d_gap/2 = {}", d_gap / int(2)))?;
    consistency(value + q(1, 2) >= nu, || format!("||K|| + 1/2 = {} below nu+ = {nu}", value + q(1, 2)))?;
    consistency(value == bound, || format!("simple knot genus {value} differs from the d_gap bound {bound}"))?;
    consistency(nu == grades.a_max(), || format!("nu+ = {nu} but A_max = {}", grades.a_max()))?;
    consistency(nu_slice == bound, || format!("nu+ - 1/2 = {nu_slice} differs from {bound}"))?;
    trail.push("Floer simple knots attain the equality".to_string());

    let reduction = match longitude {
        None => None,
        Some((pp, qq)) => {
            let kc = KnotClass::new(y.clone(), a.clone(), pp, qq)?;
            let r = morse_reduce(&kc)?;
            if pp > 1 {
                // nu+ of the reduced simple knot shifts by (p'-1)/(2p')
                let reduced = SimpleKnot::new(r.ambient.clone(), r.class.clone())?;
                let (nu_r, _) = floer_simple_profile(&reduced, 1).nu_plus_overall()?;
                consistency(nu_r == nu + r.shift, || {
                    format!("reduced nu+ = {nu_r}, expected {nu} + {}", r.shift)
                })?;
            }
            trail.push(format!(
                "q'/p' = {qq}/{pp} = {} - {}/{pp}; K' = K # O_({pp}/{}) in Y # L({pp},{}), nu+ shifted by {}",
                r.m, r.n, r.n, r.n, r.shift
            ));
            trail.push("min g(F') <= min g(F) by band-summing k copies of the U-knot disk".to_string());
            Some(r)
        }
    };

    Ok(BoundReport {
        manifold: y.clone(),
        class: a.clone(),
        order_p: knot.order(),
        d_gap_bound: d_gap,
        theta: d_gap - int(1),
        seifert_bound: bound,
        slice_bound: bound,
        slice_lower_bound_only: true,
        slice_equality: true,
        nu_bound: nu,
        nu_slice_bound: nu_slice,
        nu_equality: nu_slice == bound,
        seifert_value: Some(value),
        seifert_equality: value == bound,
        reduction,
        trail,
    })
}

/// One line of the lens-space bound sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub p: u64,
    pub q: u64,
    pub a: u64,
    #[serde(with = "serde_q")]
    pub d_gap: Q,
    #[serde(with = "serde_q")]
    pub theta: Q,
    #[serde(with = "serde_q")]
    pub nu: Q,
    pub seifert_equality: bool,
    pub slice_equality: bool,
    pub nu_equality: bool,
}

/// Rows for every class of `L(p,q)`.
pub fn lens_bound_rows(p: u64, q_: u64) -> Result<Vec<BoundRow>> {
    let y = Manifold::lens(p, q_ as i64)?;
    let ct = CorrectionTerms::new(&y);
    y.classes()
        .map(|a| {
            let r = bound_report_with(&ct, &a, None)?;
            Ok(BoundRow {
                p,
                q: q_,
                a: a.0.first().copied().unwrap_or(0),
                d_gap: r.d_gap_bound,
                theta: r.theta,
                nu: r.nu_bound,
                seifert_equality: r.seifert_equality,
                slice_equality: r.slice_equality,
                nu_equality: r.nu_equality,
            })
        })
        .collect()
}
