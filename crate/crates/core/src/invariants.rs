//! Cohomology invariants of the polygon space of a chamber, computed from
//! its short-set family `S`: Betti numbers (two ways), `r_∪`, `s(α)`, and a
//! brute-force graded dimension count of the presented ring over GF(2).
//!
//! Throughout, `S_m` is the part of `S` containing `m` and `NS_i` counts its
//! members of size `i + 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{ns_counts, NsVector, ShortFamily};

/// Polynomial with integer coefficients; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial { coeffs: Vec::new() }
    }

    fn trimmed(mut coeffs: Vec<i64>) -> Polynomial {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    f.write_str("t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn top_ns(s: &ShortFamily) -> NsVector {
    ns_counts(s.m(), s.top_members())
}

/// `(1/(1 − t²)) Σ_{J ∈ S_m} (t^{2(|J|−1)} − t^{2(m−1−|J|)})`, divided out
/// exactly.
pub fn poincare_direct(s: &ShortFamily) -> Result<Polynomial> {
    let m = s.m() as usize;
    // numerator in u = t²
    let mut num = vec![0i64; m];
    for j in s.top_members() {
        num[j.len() - 1] += 1;
        num[m - 1 - j.len()] -= 1;
    }
    // num = (1 − u)·q  ⇒  q_k = num_0 + … + num_k
    let mut q = Vec::with_capacity(m);
    let mut acc = 0;
    for &c in &num {
        acc += c;
        q.push(acc);
    }
    let remainder = q.pop().unwrap_or(0);
    if remainder != 0 {
        return Err(Error::Inconsistency(format!(
            "Poincaré numerator is not divisible by 1 - t^2 (remainder {remainder})"
        )));
    }
    let mut coeffs = vec![0i64; 2 * q.len()];
    for (k, c) in q.into_iter().enumerate() {
        coeffs[2 * k] = c;
    }
    Ok(Polynomial::trimmed(coeffs))
}

/// `(b_0, b_2, …, b_{2(m−3)})` from `b_{2i} − b_{2i−2} = NS_i − NS_{m−2−i}`.
pub fn betti_recurrence(s: &ShortFamily) -> Vec<i64> {
    let m = s.m() as i64;
    let ns = top_ns(s);
    let mut b = Vec::with_capacity((m - 2) as usize);
    let mut prev = 0;
    for i in 0..=m - 3 {
        prev += ns.get(i) - ns.get(m - 2 - i);
        b.push(prev);
    }
    b
}

/// Rank of squaring `H² → H⁴` over GF(2): `1 + NS_1 − NS_{m−3} − NS_{m−4}`,
/// and 0 for the empty space.
pub fn r_cup(s: &ShortFamily) -> i64 {
    let m = s.m() as i64;
    let ns = top_ns(s);
    if ns.total() == 0 {
        return 0;
    }
    1 + ns.get(1) - ns.get(m - 3) - ns.get(m - 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Gf2,
    Rationals,
}

/// Which relators enter the count of `s(α)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolOptions {
    pub field: Field,
    /// The linear relators `R + Σ V_i` coming from long pairs.
    pub linear_relators: bool,
}

impl Default for SolOptions {
    fn default() -> Self {
        SolOptions {
            field: Field::Gf2,
            linear_relators: true,
        }
    }
}

/// Low-degree relators, with `r` already set to −1 and subsets of
/// `{1..m−1}` as bit masks.
struct LowRelators {
    /// `v_i = 0` or `v_i v_j = 0`.
    vanishing: Vec<u32>,
    /// `r + Σ_{i∈singles} v_i`, from long pairs.
    linear: Vec<u32>,
    /// `r² + r Σ singles + Σ pairs v_i v_j`, from long triples.
    quadratic: Vec<(u32, Vec<u32>)>,
}

fn low_relators(s: &ShortFamily) -> Result<LowRelators> {
    let m = s.m();
    let top = 1u32 << (m - 1);
    let short_with_top = |l: u32| s.contains_mask(l | top);
    let n = m as u32 - 1;
    let mut out = LowRelators {
        vanishing: Vec::new(),
        linear: Vec::new(),
        quadratic: Vec::new(),
    };
    for l in 1u32..(1 << n) {
        let size = l.count_ones();
        if size > 3 {
            continue;
        }
        if size <= 2 && !short_with_top(l) {
            out.vanishing.push(l);
        }
        if s.contains_mask(l) {
            continue;
        }
        let singles: u32 = (0..n).map(|i| 1 << i).filter(|&b| l & b != 0 && short_with_top(b)).sum();
        match size {
            1 => {
                return Err(Error::Inconsistency(format!(
                    "singleton {{{}}} is long although {{{m}}} is short",
                    l.trailing_zeros() + 1
                )))
            }
            2 => out.linear.push(singles),
            _ => {
                let pairs = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| 1 << i | 1 << j))
                    .filter(|&p| p & l == p && short_with_top(p))
                    .collect();
                out.quadratic.push((singles, pairs));
            }
        }
    }
    Ok(out)
}

/// `s(α)`: the number of `v ∈ {0,1}^{m−1}` at which every relator of degree
/// at most 2 vanishes once `r = −1`.
pub fn s_alpha(s: &ShortFamily) -> Result<u64> {
    s_alpha_with(s, SolOptions::default())
}

pub fn s_alpha_with(s: &ShortFamily, opts: SolOptions) -> Result<u64> {
    let m = s.m();
    if !s.contains_mask(1 << (m - 1)) {
        return Ok(0);
    }
    let rel = low_relators(s)?;
    let reduce = |x: i64| match opts.field {
        Field::Gf2 => x.rem_euclid(2),
        Field::Rationals => x,
    };
    let ones = |v: u32, mask: u32| (v & mask).count_ones() as i64;
    let mut count = 0;
    for v in 0u32..(1 << (m - 1)) {
        if rel.vanishing.iter().any(|&l| v & l == l) {
            continue;
        }
        if opts.linear_relators && rel.linear.iter().any(|&sg| reduce(-1 + ones(v, sg)) != 0) {
            continue;
        }
        let quad_fails = rel.quadratic.iter().any(|(sg, pairs)| {
            let pair_terms = pairs.iter().filter(|&&p| v & p == p).count() as i64;
            reduce(1 - ones(v, *sg) + pair_terms) != 0
        });
        if !quad_fails {
            count += 1;
        }
    }
    Ok(count)
}

/// A homogeneous relator: degree and the set of `T` with a nonzero
/// `R^{deg−|T|} V_T` term (GF(2) coefficients).
struct Relator {
    degree: u32,
    terms: Vec<u32>,
}

fn all_relators(s: &ShortFamily) -> Vec<Relator> {
    let m = s.m();
    let top = 1u32 << (m - 1);
    let mut out = Vec::new();
    for l in 0u32..top {
        if !s.contains_mask(l | top) {
            out.push(Relator {
                degree: l.count_ones(),
                terms: vec![l],
            });
        }
        if !s.contains_mask(l) {
            let terms: Vec<u32> = (0..top)
                .filter(|&t| t & l == t && t != l && s.contains_mask(t | top))
                .collect();
            if !terms.is_empty() {
                out.push(Relator {
                    degree: l.count_ones() - 1,
                    terms,
                });
            }
        }
    }
    out
}

/// Insert into a GF(2) row-echelon basis keyed by leading bit; returns
/// whether the rank grew.
fn insert_row(basis: &mut BTreeMap<usize, Vec<u64>>, mut row: Vec<u64>) -> bool {
    loop {
        let Some(lead) = row
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + 63 - w.leading_zeros() as usize)
        else {
            return false;
        };
        match basis.get(&lead) {
            Some(b) => {
                for (x, y) in row.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            None => {
                basis.insert(lead, row);
                return true;
            }
        }
    }
}

/// Graded dimensions of `GF(2)[R, V_1..V_{m−1}] / I(α)` in degrees
/// `0..=max_degree`, by linear algebra on the square-free monomials
/// `R^{d−|T|} V_T` (after `V_i² = R V_i`).
pub fn ring_oracle(s: &ShortFamily, max_degree: u32) -> Vec<usize> {
    let m = s.m();
    let cols = 1usize << (m - 1);
    let words = cols.div_ceil(64);
    let relators = all_relators(s);
    (0..=max_degree)
        .map(|d| {
            let monomials = (0..cols).filter(|t| t.count_ones() <= d).count();
            let mut basis = BTreeMap::new();
            let mut rank = 0;
            for rel in relators.iter().filter(|r| r.degree <= d) {
                let free = d - rel.degree;
                for u in (0..cols as u32).filter(|u| u.count_ones() <= free) {
                    let mut row = vec![0u64; words];
                    for &t in &rel.terms {
                        let k = (t | u) as usize;
                        row[k / 64] ^= 1 << (k % 64);
                    }
                    if insert_row(&mut basis, row) {
                        rank += 1;
                    }
                }
            }
            monomials - rank
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    /// `(b_0, b_2, …, b_{2(m−3)})`.
    pub betti: Vec<i64>,
    pub poincare: Polynomial,
    pub r_cup: i64,
    pub s: u64,
}

impl InvariantBundle {
    pub fn key(&self) -> (Vec<i64>, i64, u64) {
        (self.betti.clone(), self.r_cup, self.s)
    }
}

/// All invariants, cross-checked against each other; a disagreement is an
/// `Inconsistency` error.
pub fn invariant_bundle(s: &ShortFamily) -> Result<InvariantBundle> {
    let m = s.m() as usize;
    if !s.contains_mask(1 << (m - 1)) {
        return Ok(InvariantBundle {
            betti: vec![0; m - 2],
            poincare: Polynomial::zero(),
            r_cup: 0,
            s: 0,
        });
    }
    let betti = betti_recurrence(s);
    let poincare = poincare_direct(s)?;
    let from_poly: Vec<i64> = (0..m - 2).map(|i| poincare.coeff(2 * i)).collect();
    if from_poly != betti || poincare.coeffs.len() > 2 * (m - 2) {
        return Err(Error::Inconsistency(format!(
            "Poincaré polynomial {poincare} disagrees with Betti numbers {betti:?}"
        )));
    }
    if betti.iter().ne(betti.iter().rev()) {
        return Err(Error::Inconsistency(format!("Betti numbers {betti:?} violate duality")));
    }
    let r = r_cup(s);
    let s_gf2 = s_alpha(s)?;
    let s_q = s_alpha_with(
        s,
        SolOptions {
            field: Field::Rationals,
            linear_relators: true,
        },
    )?;
    if s_gf2 != s_q {
        return Err(Error::Inconsistency(format!(
            "s(α) depends on the field: {s_gf2} over GF(2), {s_q} over Q"
        )));
    }
    Ok(InvariantBundle {
        betti,
        poincare,
        r_cup: r,
        s: s_gf2,
    })
}

/// Groups of codes sharing the same `(betti, r_cup, s)`; only groups with
/// two or more members are returned, each sorted, in key order.
pub fn distinguish<'a>(
    items: impl IntoIterator<Item = (&'a str, &'a InvariantBundle)>,
) -> Vec<(InvariantBundle, Vec<String>)> {
    let mut groups: BTreeMap<(Vec<i64>, i64, u64), (InvariantBundle, Vec<String>)> = BTreeMap::new();
    for (code, b) in items {
        groups
            .entry(b.key())
            .or_insert_with(|| (b.clone(), Vec::new()))
            .1
            .push(code.to_string());
    }
    groups
        .into_values()
        .filter(|(_, codes)| codes.len() > 1)
        .map(|(b, mut codes)| {
            codes.sort();
            (b, codes)
        })
        .collect()
}
