//! Realizability of genetic codes through the shifted polytope `P₁`, the
//! minimal integral point `a_min`, and the `α ↦ α⁺` correspondence between
//! strata of `ℝ^{m−1}` and chambers of `ℝ^m`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::code::{Gene, GeneticCode, Mark};
use crate::enumerate::enumerate_codes;
use crate::error::{Error, Result};
use crate::invariants::InvariantBundle;
use crate::lp::{rat, LpProblem, Rational, Solver, VertexEnumeration};
use crate::ratio::{self, clear_denominators, is_integral, JsonRational};
use crate::subset::{check_m, ShortFamily, Subset, MAX_M};

/// Which members of `S` contribute a slack-one row to `P₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum P1Rows {
    /// Only the `↪`-maximal members; the others are implied on `x₁ ≤ … ≤ x_m`.
    #[default]
    Maximal,
    /// One row per member of `S`.
    All,
}

/// `x₁ ≥ 0`, `x_{i+1} − x_i ≥ 0`, and `Σ_{i∉I} x_i − Σ_{i∈I} x_i ≥ 1` for the
/// selected `I ∈ S`; the objective is `Σ x_i`.
pub fn build_p1(code: &GeneticCode) -> Result<LpProblem> {
    build_p1_with(code, P1Rows::Maximal)
}

pub fn build_p1_with(code: &GeneticCode, rows: P1Rows) -> Result<LpProblem> {
    Ok(p1_from_family(&code.short_family()?, rows))
}

pub fn p1_from_family(s: &ShortFamily, rows: P1Rows) -> LpProblem {
    let m = s.m() as usize;
    let mut p = LpProblem::new(m);
    let mut e = vec![0i64; m];
    e[0] = 1;
    p.add_ge_int(&e, 0).expect("row length is m");
    for i in 0..m - 1 {
        let mut r = vec![0i64; m];
        r[i] = -1;
        r[i + 1] = 1;
        p.add_ge_int(&r, 0).expect("row length is m");
    }
    let members: Vec<Subset> = match rows {
        P1Rows::Maximal => s.maximal_members(),
        P1Rows::All => s.iter().collect(),
    };
    for i in members {
        let r: Vec<i64> = (1..=m as u32).map(|k| if i.contains(k) { -1 } else { 1 }).collect();
        p.add_ge_int(&r, 1).expect("row length is m");
    }
    p.set_objective_int(&vec![1; m]).expect("row length is m");
    p
}

fn unit(m: usize, j: usize) -> Vec<Rational> {
    (0..m).map(|k| if k == j { rat(1) } else { rat(0) }).collect()
}

fn ones(m: usize) -> Vec<Rational> {
    vec![rat(1); m]
}

/// Objectives `first`, then `Σx`, then `x₁, …, x_m`.
fn refined(m: usize, first: Vec<Rational>) -> Vec<Vec<Rational>> {
    let mut objs = vec![first, ones(m)];
    objs.extend((0..m).map(|j| unit(m, j)));
    objs
}

/// The short family of a point: `I` is short iff `Σ_I a < Σ_{∉I} a`.
/// Returns `None` when some subset is on a wall (`Σ_I a = Σ_{∉I} a`).
pub fn family_of_point(a: &[Rational]) -> Result<Option<ShortFamily>> {
    let m = check_m(a.len() as u32)?;
    let (_, ints) = clear_denominators(a);
    let ints: Vec<i128> = ints
        .iter()
        .map(|v| v.to_i128().ok_or_else(|| Error::Inconsistency("point too large".into())))
        .collect::<Result<_>>()?;
    let total: i128 = ints.iter().sum();
    let n = 1usize << m;
    let mut sums = vec![0i128; n];
    let mut family = ShortFamily::new(m)?;
    for mask in 1..n {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + ints[low];
    }
    for (mask, &inside) in sums.iter().enumerate() {
        let outside = total - inside;
        if inside == outside {
            return Ok(None);
        }
        if inside < outside {
            family.insert(&Subset::new(m, mask as u32)?)?;
        }
    }
    Ok(Some(family))
}

/// The marked code of any nondecreasing point: genes are the `↪`-maximal
/// subsets containing `m` that are short or on a wall, the latter marked
/// almost short.
pub fn stratum_code_of_point(a: &[Rational]) -> Result<GeneticCode> {
    let m = check_m(a.len() as u32)?;
    if a.windows(2).any(|w| w[0] > w[1]) || a[0].is_negative() {
        return Err(Error::Inconsistency(format!(
            "point {} is not nondecreasing and nonnegative",
            a.iter().map(ratio::format_rational).collect::<Vec<_>>().join(",")
        )));
    }
    let total: Rational = a.iter().sum();
    let top = 1u32 << (m - 1);
    let mut candidates = Vec::new();
    for mask in (0..top).map(|low| low | top) {
        let inside: Rational = (0..m as usize).filter(|&k| mask >> k & 1 == 1).map(|k| &a[k]).sum();
        let outside = &total - &inside;
        if inside < outside {
            candidates.push(Gene::short(Subset::new(m, mask)?));
        } else if inside == outside {
            candidates.push(Gene::almost_short(Subset::new(m, mask)?));
        }
    }
    let mut genes = Vec::new();
    for g in &candidates {
        let mut maximal = true;
        for h in &candidates {
            if h.set != g.set && g.set.embeds_into(&h.set)? {
                maximal = false;
                break;
            }
        }
        if maximal {
            genes.push(*g);
        }
    }
    GeneticCode::new(m, genes)
}

/// Side conditions observed while realizing one chamber; these record
/// conjectured properties rather than assume them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberChecks {
    pub a_min_integral: bool,
    pub l1_odd: bool,
    /// The `Σx` optimum over `P₁` was a single point.
    pub a_min_unique: bool,
    /// When `min_x1 = 1`: the refined minimizer is integral with odd sum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus_witness_ok: Option<bool>,
    /// Integral point of the chamber with `a_m ≥ Σ_{i≤m−5} a_i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub toric_witness: Option<Vec<JsonRational>>,
    /// Whether `a_min` itself satisfies the toric inequality.
    pub toric_at_a_min: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberRecord {
    pub m: u8,
    pub code: GeneticCode,
    pub realizable: bool,
    pub a_min: Option<Vec<Rational>>,
    pub l1: Option<Rational>,
    pub min_x1: Option<Rational>,
    pub in_plus_image: bool,
    pub toric_criterion: bool,
    pub checks: Option<ChamberChecks>,
    pub invariants: Option<InvariantBundle>,
}

/// On-disk form; field order fixes the JSONL layout.
#[derive(Serialize, Deserialize)]
struct ChamberJson {
    m: u8,
    code: String,
    realizable: bool,
    a_min: Option<Vec<JsonRational>>,
    l1: Option<JsonRational>,
    #[serde(with = "ratio::as_string")]
    min_x1: Option<Rational>,
    in_plus_image: bool,
    toric: bool,
    #[serde(default, skip_serializing_if = "Option::is_none", flatten)]
    checks: Option<ChamberChecks>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    invariants: Option<InvariantBundle>,
}

impl Serialize for ChamberRecord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChamberJson {
            m: self.m,
            code: self.code.to_string(),
            realizable: self.realizable,
            a_min: self
                .a_min
                .as_ref()
                .map(|v| v.iter().cloned().map(JsonRational).collect()),
            l1: self.l1.clone().map(JsonRational),
            min_x1: self.min_x1.clone(),
            in_plus_image: self.in_plus_image,
            toric: self.toric_criterion,
            checks: self.checks.clone(),
            invariants: self.invariants.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChamberRecord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ChamberJson::deserialize(d)?;
        let code = GeneticCode::parse(&j.code, j.m).map_err(D::Error::custom)?;
        let a_min: Option<Vec<Rational>> = j.a_min.map(|v| v.into_iter().map(|r| r.0).collect());
        if let Some(a) = &a_min {
            if a.len() != j.m as usize {
                return Err(D::Error::custom(format!("a_min has {} entries, expected {}", a.len(), j.m)));
            }
        }
        Ok(ChamberRecord {
            m: j.m,
            code,
            realizable: j.realizable,
            a_min,
            l1: j.l1.map(|r| r.0),
            min_x1: j.min_x1,
            in_plus_image: j.in_plus_image,
            toric_criterion: j.toric,
            checks: j.checks,
            invariants: j.invariants,
        })
    }
}

impl ChamberRecord {
    fn unrealizable(code: &GeneticCode) -> ChamberRecord {
        ChamberRecord {
            m: code.m(),
            code: code.clone(),
            realizable: false,
            a_min: None,
            l1: None,
            min_x1: None,
            in_plus_image: false,
            toric_criterion: false,
            checks: None,
            invariants: None,
        }
    }

    /// `a_min` as integers, when it is integral.
    pub fn a_min_integers(&self) -> Option<Vec<i64>> {
        self.a_min
            .as_ref()?
            .iter()
            .map(|r| r.is_integer().then(|| r.numer().to_i64()).flatten())
            .collect()
    }

    pub fn l1_integer(&self) -> Option<i64> {
        let l1 = self.l1.as_ref()?;
        l1.is_integer().then(|| l1.numer().to_i64()).flatten()
    }
}

fn toric_row(m: usize) -> Vec<Rational> {
    let mut r = vec![rat(0); m];
    r[m - 1] = rat(1);
    for c in r.iter_mut().take(m.saturating_sub(5)) {
        *c = rat(-1);
    }
    r
}

fn satisfies_toric(a: &[Rational]) -> bool {
    let row = toric_row(a.len());
    row.iter().zip(a).fold(Rational::zero(), |acc, (c, x)| acc + c * x) >= Rational::zero()
}

/// Decide realizability and compute `a_min`, `min x₁`, the in-image test
/// and the toric criterion.
pub fn realize(code: &GeneticCode) -> Result<ChamberRecord> {
    code.require_chamber()?;
    let m = code.m() as usize;
    let s = code.short_family()?;
    let p = p1_from_family(&s, P1Rows::Maximal);
    let solver = Solver::new(&p);
    if !solver.is_feasible() {
        return Ok(ChamberRecord::unrealizable(code));
    }
    let best = solver.lex_min_vertex_for(&ones(m));
    let a = best
        .vertex
        .ok_or_else(|| Error::Inconsistency(format!("{code}: no l1 minimizer on a nonempty P1")))?;
    let unique = best.unique.unwrap_or(false);
    if !unique {
        log::warn!("{code}: the l1 optimum over P1 is not a single point");
    }
    match family_of_point(&a)? {
        Some(f) if f == s => {}
        _ => {
            return Err(Error::Inconsistency(format!(
                "{code}: a_min = {a:?} does not reproduce the short family"
            )))
        }
    }
    let l1: Rational = a.iter().sum();
    let integral = is_integral(&a);
    let l1_odd = l1.is_integer() && l1.numer().is_odd();

    let low = solver
        .minimize_lex(&refined(m, unit(m, 0)))
        .vertex
        .ok_or_else(|| Error::Inconsistency(format!("{code}: no x1 minimizer on a nonempty P1")))?;
    let min_x1 = low[0].clone();
    let in_plus_image = min_x1 <= Rational::one();
    let plus_witness_ok = min_x1.is_one().then(|| {
        let sum: Rational = low.iter().sum();
        let ok = is_integral(&low) && sum.numer().is_odd();
        if !ok {
            log::warn!("{code}: min x1 = 1 but the minimizer {low:?} is not integral with odd sum");
        }
        ok
    });

    let toric_at_a_min = satisfies_toric(&a);
    let toric_witness = if toric_at_a_min {
        Some(clear_denominators(&a).1)
    } else {
        toric_witness_lp(&p)
    }
    .map(|w| w.into_iter().map(|x| JsonRational(Rational::from_integer(x))).collect());
    Ok(ChamberRecord {
        m: code.m(),
        code: code.clone(),
        realizable: true,
        a_min: Some(a),
        l1: Some(l1),
        min_x1: Some(min_x1),
        in_plus_image,
        toric_criterion: toric_witness.is_some(),
        checks: Some(ChamberChecks {
            a_min_integral: integral,
            l1_odd,
            a_min_unique: unique,
            plus_witness_ok,
            toric_witness,
            toric_at_a_min,
        }),
        invariants: None,
    })
}

/// `P₁` plus `x_m − Σ_{i≤m−5} x_i ≥ 0`; a feasible point scaled to integers.
fn toric_witness_lp(p: &LpProblem) -> Option<Vec<BigInt>> {
    let m = p.n_vars();
    let mut q = p.clone();
    q.add_ge(toric_row(m), rat(0)).expect("row length is m");
    let out = Solver::new(&q).minimize_lex(&refined(m, ones(m)));
    out.vertex.map(|x| clear_denominators(&x).1)
}

/// Result of the toric test on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricResult {
    pub holds: bool,
    pub witness: Option<Vec<BigInt>>,
}

pub fn toric_criterion(code: &GeneticCode) -> Result<ToricResult> {
    let p = build_p1(code)?;
    if !Solver::new(&p).is_feasible() {
        return Err(Error::NotRealizable(code.to_string()));
    }
    let witness = toric_witness_lp(&p);
    Ok(ToricResult {
        holds: witness.is_some(),
        witness,
    })
}

/// Exact minimum of `x₁` over `P₁`.
pub fn min_first_coord(code: &GeneticCode) -> Result<Rational> {
    let p = build_p1(code)?;
    let m = p.n_vars();
    let out = Solver::new(&p).minimize_lex(&[unit(m, 0)]);
    out.value.ok_or_else(|| Error::NotRealizable(code.to_string()))
}

/// `min x₁ ≤ 1` on a realizable chamber.
pub fn in_plus_image(record: &ChamberRecord) -> bool {
    record.realizable && record.min_x1.as_ref().is_some_and(|v| *v <= Rational::one())
}

/// All vertices of `P₁`, or `None` when it is empty.
pub fn p1_vertices(code: &GeneticCode, max_bases: usize) -> Result<Option<VertexEnumeration>> {
    Ok(Solver::new(&build_p1(code)?).vertices(max_bases))
}

/// Lexicographically smallest and largest `Σx`-minimizers over `P₁`; they
/// coincide exactly when the optimum is a single point, and otherwise the
/// largest may not exist because the face is unbounded in some coordinate.
pub fn l1_face_extremes(code: &GeneticCode) -> Result<Option<(Vec<Rational>, Option<Vec<Rational>>)>> {
    let p = build_p1(code)?;
    let m = p.n_vars();
    let solver = Solver::new(&p);
    let Some(low) = solver.lex_min_vertex_for(&ones(m)).vertex else {
        return Ok(None);
    };
    let high = solver.optimal_face_extremes(&ones(m)).map(|(_, hi)| hi);
    Ok(Some((low, high)))
}

/// Smallest `Σ a_i` over integral points of `P₁`, with a minimizer, by
/// branch and bound on the exact LP. Meant for the few chambers whose LP
/// optimum is fractional.
pub fn integral_l1_minimum(code: &GeneticCode) -> Result<Option<(Rational, Vec<Rational>)>> {
    let root = build_p1(code)?;
    let m = root.n_vars();
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    let mut stack = vec![root];
    while let Some(p) = stack.pop() {
        let out = Solver::new(&p).minimize_lex(&refined(m, ones(m)));
        let (Some(x), Some(v)) = (out.vertex, out.value) else {
            continue;
        };
        if best.as_ref().is_some_and(|(b, _)| v.ceil() >= *b) {
            continue;
        }
        match x.iter().position(|c| !c.is_integer()) {
            None => best = Some((v, x)),
            Some(j) => {
                let mut down = p.clone();
                down.add_le(unit(m, j), x[j].floor()).expect("row length is m");
                let mut up = p;
                up.add_ge(unit(m, j), x[j].ceil()).expect("row length is m");
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(best)
}

/// Every integral point of `P₁` with `Σ a_i = l1`, by exhaustive search in
/// the bounding box of `P₁ ∩ {Σx ≤ l1}`.
pub fn integral_points_with_l1(code: &GeneticCode, l1: i64) -> Result<Vec<Vec<i64>>> {
    let mut p = build_p1(code)?;
    let m = p.n_vars();
    p.add_le(ones(m), rat(l1)).expect("row length is m");
    let solver = Solver::new(&p);
    let mut lo = Vec::with_capacity(m);
    let mut hi = Vec::with_capacity(m);
    for j in 0..m {
        let neg: Vec<Rational> = unit(m, j).into_iter().map(|c| -c).collect();
        let (Some(a), Some(b)) = (
            solver.minimize_lex(&[unit(m, j)]).value,
            solver.minimize_lex(&[neg]).value,
        ) else {
            return Ok(Vec::new());
        };
        let a = a.ceil().to_integer().to_i64().ok_or_else(|| Error::Inconsistency("bound too large".into()))?;
        let b = (-b).floor().to_integer().to_i64().ok_or_else(|| Error::Inconsistency("bound too large".into()))?;
        lo.push(a);
        hi.push(b);
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn dfs(j: usize, lo: &[i64], hi: &[i64], l1: i64, p: &LpProblem, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = lo.len();
        let used: i64 = cur.iter().sum();
        if j == m {
            let x: Vec<Rational> = cur.iter().map(|&v| rat(v)).collect();
            if used == l1 && p.is_feasible_point(&x) {
                out.push(cur.clone());
            }
            return;
        }
        let start = cur.last().map_or(lo[j], |&prev| prev.max(lo[j]));
        for v in start..=hi[j] {
            // the remaining coordinates are at least v each
            if used + v * (m - j) as i64 > l1 {
                break;
            }
            cur.push(v);
            dfs(j + 1, lo, hi, l1, p, cur, out);
            cur.pop();
        }
    }
    dfs(0, &lo, &hi, l1, &p, &mut cur, &mut out);
    Ok(out)
}

fn shift_up(s: &Subset, m: u8) -> Result<Subset> {
    let elems: Vec<u32> = s.elements().iter().map(|e| e + 1).collect();
    Subset::from_elements(m, &elems)
}

/// `α ↦ α⁺` on codes of type `m`: a short gene `P` becomes `P + 1 ∪ {1}`,
/// an almost-short gene becomes `P + 1`. The result is a chamber code.
pub fn plus_map(code: &GeneticCode) -> Result<GeneticCode> {
    let m = code.m() + 1;
    if m > MAX_M {
        return Err(Error::AmbientOutOfRange(m as u32));
    }
    let genes = code
        .genes()
        .iter()
        .map(|g| {
            let up = shift_up(&g.set, m)?;
            match g.mark {
                Mark::Short => up.with(1),
                Mark::AlmostShort => Ok(up),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    GeneticCode::chamber(m, genes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumKind {
    Chamber,
    Lower,
}

/// A stratum of `ℝ^m` given by its marked code and its image chamber in
/// `ℝ^{m+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub m: u8,
    pub code: GeneticCode,
    pub kind: StratumKind,
    pub plus_image: GeneticCode,
}

/// Inverse of [`plus_map`]: genes containing 1 lose it and become short,
/// the others become almost short; everything shifts down by one.
pub fn minus_map(code: &GeneticCode) -> Result<StratumRecord> {
    code.require_chamber()?;
    let m = code.m();
    let not_image = |why: &str| Error::NotInPlusImage(format!("{code}: {why}"));
    if m <= 3 {
        return Err(not_image("no codes of type m - 1 < 3"));
    }
    let genes = code
        .genes()
        .iter()
        .map(|g| {
            let short = g.set.contains(1);
            let down: Vec<u32> = g.set.elements().iter().filter(|&&e| e != 1).map(|e| e - 1).collect();
            let set = Subset::from_elements(m - 1, &down)?;
            Ok(if short { Gene::short(set) } else { Gene::almost_short(set) })
        })
        .collect::<Result<Vec<_>>>()?;
    let lower = GeneticCode::new(m - 1, genes).map_err(|e| not_image(&e.to_string()))?;
    if plus_map(&lower)? != *code {
        return Err(not_image("the pre-image does not map back"));
    }
    Ok(StratumRecord {
        m: m - 1,
        kind: if lower.is_chamber() {
            StratumKind::Chamber
        } else {
            StratumKind::Lower
        },
        code: lower,
        plus_image: code.clone(),
    })
}

/// `realize` on every code of `G_m`, in enumeration order.
pub fn realize_all(m: u8) -> Result<Vec<ChamberRecord>> {
    let codes = enumerate_codes(m)?;
    codes.codes.par_iter().map(realize).collect()
}

/// The realizable codes of `G_m`, i.e. the chambers of `ℝ^m`.
pub fn enumerate_chambers(m: u8) -> Result<Vec<ChamberRecord>> {
    Ok(realize_all(m)?.into_iter().filter(|r| r.realizable).collect())
}

/// Strata of `ℝ^m`, counted as the chambers of `ℝ^{m+1}` in the `α⁺` image.
pub fn count_strata(m: u8) -> Result<usize> {
    let up = check_m(m as u32 + 1)?;
    Ok(enumerate_chambers(up)?.iter().filter(|r| in_plus_image(r)).count())
}

/// Strata of `ℝ^{m−1}` from the chambers of `ℝ^m`, via `minus_map`.
pub fn strata_from_chambers(records: &[ChamberRecord]) -> Result<Vec<StratumRecord>> {
    records
        .iter()
        .filter(|r| in_plus_image(r))
        .map(|r| minus_map(&r.code))
        .collect()
}

/// Largest absolute coordinate, for reports.
pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve, Status};

    fn code(text: &str, m: u8) -> GeneticCode {
        GeneticCode::parse(text, m).unwrap()
    }

    fn a_min(text: &str, m: u8) -> Vec<i64> {
        realize(&code(text, m)).unwrap().a_min_integers().unwrap()
    }

    fn row_text(p: &LpProblem) -> Vec<String> {
        p.rows().iter().map(|r| format!("{:?}>={}", r.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), r.rhs)).collect()
    }

    #[test]
    fn p1_rows() {
        let full = build_p1_with(&code("<3>", 3), P1Rows::All).unwrap();
        let rows = row_text(&full);
        for want in [r#"["-1", "1", "1"]>=1"#, r#"["1", "-1", "1"]>=1"#, r#"["1", "1", "-1"]>=1"#] {
            assert!(rows.iter().any(|r| r == want), "{want} missing from {rows:?}");
        }
        let empty = build_p1_with(&code("<>", 3), P1Rows::All).unwrap();
        let rows = row_text(&empty);
        assert!(rows.iter().any(|r| r == r#"["1", "1", "1"]>=1"#));
        assert!(rows.iter().any(|r| r == r#"["-1", "-1", "1"]>=1"#));
        let reduced = build_p1(&code("<>", 3)).unwrap();
        assert_eq!(reduced.rows().len(), 3 + 1);
        for m in 3..=6 {
            for c in enumerate_codes(m).unwrap().iter() {
                let n = c.short_family().unwrap().len();
                assert!(build_p1_with(c, P1Rows::All).unwrap().rows().len() <= m as usize + n);
            }
        }
    }

    #[test]
    fn lp_examples() {
        let out = solve(&build_p1(&code("<3>", 3)).unwrap());
        assert_eq!(out.value, Some(rat(3)));
        assert_eq!(out.vertex.unwrap(), vec![rat(1); 3]);
        assert_eq!(solve(&build_p1(&code("<9642>", 9)).unwrap()).status, Status::Infeasible);
    }

    #[test]
    fn realize_examples() {
        assert_eq!(a_min("<5>", 5), [1, 1, 1, 1, 3]);
        assert_eq!(a_min("<521>", 5), [0, 0, 1, 1, 1]);
        let r = realize(&code("<63>", 6)).unwrap();
        assert_eq!(r.a_min_integers().unwrap(), [1, 1, 1, 2, 2, 4]);
        assert_eq!(r.l1_integer(), Some(11));
        assert!(!realize(&code("<9642>", 9)).unwrap().realizable);
        assert!(realize(&code("<41=>", 4)).is_err());
    }

    #[test]
    fn record_json() {
        let r = realize(&code("<63>", 6)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.starts_with(
            r#"{"m":6,"code":"<63>","realizable":true,"a_min":[1,1,1,2,2,4],"l1":11,"min_x1":"1","in_plus_image":true,"toric":true"#
        ), "{text}");
        let back: ChamberRecord = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let none = realize(&code("<9642>", 9)).unwrap();
        let text = serde_json::to_string(&none).unwrap();
        assert_eq!(
            text,
            r#"{"m":9,"code":"<9642>","realizable":false,"a_min":null,"l1":null,"min_x1":null,"in_plus_image":false,"toric":false}"#
        );
        assert_eq!(serde_json::from_str::<ChamberRecord>(&text).unwrap(), none);
    }

    #[test]
    fn min_first_coord_examples() {
        assert_eq!(min_first_coord(&code("<41>", 4)).unwrap(), rat(0));
        assert!(min_first_coord(&code("<764>", 7)).unwrap() > rat(1));
        for m in 4..=9 {
            let top = Subset::from_elements(m, &[m as u32]).unwrap();
            let c = GeneticCode::chamber(m, [top]).unwrap();
            assert_eq!(min_first_coord(&c).unwrap(), rat(1), "m = {m}");
        }
        assert!(min_first_coord(&code("<9642>", 9)).is_err());
    }

    #[test]
    fn plus_and_minus() {
        assert_eq!(plus_map(&code("<3>", 3)).unwrap(), code("<41>", 4));
        assert_eq!(plus_map(&code("<3=>", 3)).unwrap(), code("<4>", 4));
        assert_eq!(plus_map(&code("<41=>", 4)).unwrap(), code("<52>", 5));
        // (0,0,1,1,1) is (1,1,1) with two tiny edges prepended
        let twice = plus_map(&plus_map(&code("<3>", 3)).unwrap()).unwrap();
        assert_eq!(twice, code("<521>", 5));
        assert!(GeneticCode::parse("<321>", 3).is_err());
        assert_eq!(minus_map(&code("<53>", 5)).unwrap().code, code("<42=>", 4));
        let s = minus_map(&code("<521>", 5)).unwrap();
        assert_eq!((s.code.clone(), s.kind), (code("<41>", 4), StratumKind::Chamber));
        assert_eq!(minus_map(&code("<4>", 4)).unwrap().code, code("<3=>", 3));
    }

    #[test]
    fn point_families() {
        let a: Vec<Rational> = [1, 1, 1, 2, 2, 4].map(rat).to_vec();
        assert_eq!(family_of_point(&a).unwrap().unwrap(), code("<63>", 6).short_family().unwrap());
        // (1,1,2) lies on the wall {3} = {1,2}
        assert!(family_of_point(&[rat(1), rat(1), rat(2)]).unwrap().is_none());
    }
}
