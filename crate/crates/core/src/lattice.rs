//! Correction terms from a negative-definite linear plumbing, by brute-force
//! maximization of `(c^2 + rank) / 4` over characteristic covectors in each
//! Spin^c class. Independent of the recursion in [`crate::dinvariant`]; used
//! to validate it.

use std::collections::BTreeMap;

use crate::error::{input, Error, Result};
use crate::rational::Q;

/// Hirzebruch-Jung continued fraction `p/q = [a_1, ..., a_n]`, all `a_i >= 2`.
pub fn hirzebruch_jung(mut p: i64, mut q: i64) -> Vec<i64> {
    let mut a = Vec::new();
    while q > 0 {
        let c = (p + q - 1) / q;
        a.push(c);
        (p, q) = (q, c * q - p);
    }
    a
}

/// Inverse of a symmetric integer matrix over the rationals.
fn inverse(m: &[Vec<i64>]) -> Result<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|x| Q::from_integer(*x)).collect();
            r.extend((0..n).map(|j| Q::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Q::from_integer(0))
            .ok_or_else(|| Error::Input("singular intersection form".into()))?;
        a.swap(col, piv);
        let inv = Q::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && a[r][col] != Q::from_integer(0) {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The multiset of d-invariants of the boundary of the linear plumbing for
/// `p/q`, sorted ascending. Characteristic covectors are enumerated in the
/// box `|c_i| <= a_i`; an error is returned if the box misses a class.
pub fn plumbing_d_multiset(p: i64, q: i64) -> Result<Vec<Q>> {
    if p < 1 {
        return input("p must be positive");
    }
    if p == 1 {
        return Ok(vec![Q::from_integer(0)]);
    }
    let a = hirzebruch_jung(p, q.rem_euclid(p));
    let n = a.len();
    let form: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => -a[i],
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let inv = inverse(&form)?;

    let ranges: Vec<Vec<i64>> =
        a.iter().map(|&ai| (-ai..=ai).filter(|c| (c - ai).rem_euclid(2) == 0).collect()).collect();
    let mut best: BTreeMap<Vec<Q>, Q> = BTreeMap::new();
    let mut idx = vec![0usize; n];
    loop {
        let c: Vec<i64> = idx.iter().zip(&ranges).map(|(k, r)| r[*k]).collect();
        // y = Q^{-1} c; two covectors lie in one class iff (y - y')/2 is integral.
        let y: Vec<Q> = inv
            .iter()
            .map(|row| row.iter().zip(&c).map(|(m, ci)| *m * Q::from_integer(*ci)).sum())
            .collect();
        let square: Q = y.iter().zip(&c).map(|(yi, ci)| *yi * Q::from_integer(*ci)).sum();
        let value = (square + Q::from_integer(n as i64)) / Q::from_integer(4);
        let key: Vec<Q> = y.iter().map(|yi| (yi / Q::from_integer(2)).fract()).map(|f| {
            if f < Q::from_integer(0) { f + Q::from_integer(1) } else { f }
        }).collect();
        best.entry(key).and_modify(|b| *b = (*b).max(value)).or_insert(value);

        let mut k = 0;
        loop {
            if k == n {
                let mut out: Vec<Q> = best.into_values().collect();
                if out.len() as i64 != p {
                    return Err(Error::Inconsistent(format!(
                        "enumeration box reached {} of {p} classes",
                        out.len()
                    )));
                }
                out.sort();
                return Ok(out);
            }
            idx[k] += 1;
            if idx[k] < ranges[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
