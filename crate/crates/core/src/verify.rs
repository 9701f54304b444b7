//! The verification suite: reference counts and tables, property suites and
//! conjecture monitors, reported line by line.
//!
//! A check whose result differs from the reference value in a way that has
//! been reproduced independently is reported as `FAIL (known)`. It still
//! counts as a failure; it is only separated from unexpected ones.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::code::GeneticCode;
use crate::error::{Error, Result};
use crate::golden;
use crate::invariants::{
    betti_recurrence, distinguish, invariant_bundle, poincare_direct, r_cup, ring_oracle, s_alpha_with, Field,
    InvariantBundle, SolOptions,
};
use crate::lp::{rat, Rational, Solver};
use crate::ratio::format_rational;
use crate::realize::{
    build_p1, build_p1_with, in_plus_image, integral_l1_minimum, integral_points_with_l1, l1_face_extremes,
    minus_map, p1_vertices, plus_map, realize, realize_all, stratum_code_of_point, ChamberRecord, P1Rows,
};
use crate::subset::{dominates, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Differs from the reference in the documented, reproduced way.
    Known,
    /// A monitored conjecture has a counterexample; not a failure.
    Warn,
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Known => "FAIL (known)",
            Status::Warn => "WARN",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Item {
    pub criterion: u8,
    pub label: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub items: Vec<Item>,
    /// Conjecture counterexamples and other results worth a second look.
    pub findings: Vec<String>,
}

impl Report {
    fn push(&mut self, criterion: u8, label: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.items.push(Item {
            criterion,
            label: label.into(),
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, criterion: u8, label: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.push(criterion, label, status, detail);
    }

    /// `got == expected` passes; `got == known` is a known failure.
    fn count<T: PartialEq + fmt::Display>(
        &mut self,
        criterion: u8,
        label: impl Into<String>,
        got: T,
        expected: T,
        known: Option<T>,
    ) {
        let status = if got == expected {
            Status::Pass
        } else if known.as_ref() == Some(&got) {
            Status::Known
        } else {
            Status::Fail
        };
        self.push(criterion, label, status, format!("expected {expected}, got {got}"));
    }

    /// True when nothing failed, known failures included.
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| !matches!(i.status, Status::Fail | Status::Known))
    }

    pub fn unexpected_failures(&self) -> Vec<&Item> {
        self.items.iter().filter(|i| i.status == Status::Fail).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.items {
            writeln!(f, "{:<12} [{}] {}: {}", i.status, i.criterion, i.label, i.detail)?;
        }
        let fails = self.items.iter().filter(|i| i.status == Status::Fail).count();
        let known = self.items.iter().filter(|i| i.status == Status::Known).count();
        let passes = self.items.iter().filter(|i| i.status == Status::Pass).count();
        writeln!(f, "{passes} passed, {fails} failed, {known} known failures")?;
        writeln!(f, "noteworthy findings: {}", self.findings.len())?;
        for n in &self.findings {
            writeln!(f, "  ! {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Largest ambient dimension to check.
    pub m: u8,
    /// Required for `m = 9`.
    pub long: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { m: 8, long: false }
    }
}

const BUDGET_UP_TO_7: Duration = Duration::from_secs(60);
const BUDGET_8: Duration = Duration::from_secs(600);
const SPOT_CHECK_BUDGET: Duration = Duration::from_secs(1);
const VERTEX_BASIS_BUDGET: usize = 200_000;
/// Coordinate bound for the strata sweep; large enough to hit every stratum
/// for `k ≤ 6`.
const SWEEP_BOUND: i64 = 14;

/// Realized records of all of `G_m`, for each checked `m`.
type Records = BTreeMap<u8, Vec<ChamberRecord>>;

pub fn verify(opts: &VerifyOptions) -> Result<Report> {
    let top = opts.m;
    if !(3..=9).contains(&top) {
        return Err(Error::AmbientOutOfRange(top as u32));
    }
    if top == 9 && !opts.long {
        return Err(Error::parse("verify options", "m = 9", "m = 9 takes minutes; pass --long"));
    }
    let mut r = Report::default();
    let records = chamber_counts(&mut r, top)?;
    spot_check(&mut r)?;
    a_min_tables(&mut r, &records)?;
    correspondences(&mut r, &records)?;
    strata(&mut r, &records)?;
    toric(&mut r, &records)?;
    invariants(&mut r, &records)?;
    properties(&mut r, &records)?;
    monitors(&mut r, &records)?;
    Ok(r)
}

fn chambers(records: &[ChamberRecord]) -> impl Iterator<Item = &ChamberRecord> {
    records.iter().filter(|c| c.realizable)
}

fn find<'a>(records: &'a Records, m: u8, code: &str) -> Result<Option<&'a ChamberRecord>> {
    let Some(recs) = records.get(&m) else {
        return Ok(None);
    };
    let code = GeneticCode::parse(code, m)?;
    Ok(recs.iter().find(|c| c.code == code))
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(","))
}

fn chamber_counts(r: &mut Report, top: u8) -> Result<Records> {
    let mut records = Records::new();
    let mut up_to_7 = Duration::ZERO;
    for m in 3..=top {
        let start = Instant::now();
        let recs = realize_all(m)?;
        let took = start.elapsed();
        let n = chambers(&recs).count();
        if m <= 7 {
            up_to_7 += took;
        }
        if let Some(&(_, expected)) = golden::CHAMBER_COUNTS.iter().find(|(k, _)| *k == m) {
            r.count(1, format!("chambers of R^{m}"), n, expected, None);
        } else {
            r.count(2, format!("codes of G_{m}"), recs.len(), golden::CODES_M9, None);
            r.count(2, format!("realizable codes of G_{m}"), n, golden::CHAMBERS_M9, None);
            r.push(2, format!("runtime m = {m}"), Status::Info, format!("{:.1} s", took.as_secs_f64()));
        }
        if m == 8 {
            r.check(1, "runtime m = 8", took < BUDGET_8, format!("{:.2} s, budget {} s", took.as_secs_f64(), BUDGET_8.as_secs()));
        }
        records.insert(m, recs);
    }
    r.check(
        1,
        format!("runtime m <= {}", top.min(7)),
        up_to_7 < BUDGET_UP_TO_7,
        format!("{:.2} s, budget {} s", up_to_7.as_secs_f64(), BUDGET_UP_TO_7.as_secs()),
    );
    Ok(records)
}

fn spot_check(r: &mut Report) -> Result<()> {
    let start = Instant::now();
    let code = GeneticCode::parse(golden::UNREALIZABLE_M9, 9)?;
    let rec = realize(&code)?;
    let took = start.elapsed();
    r.check(
        2,
        format!("{} has no realization", golden::UNREALIZABLE_M9),
        !rec.realizable && took < SPOT_CHECK_BUDGET,
        format!("realizable = {}, {:.1} ms", rec.realizable, took.as_secs_f64() * 1e3),
    );
    Ok(())
}

/// l1-minimum over the chamber restricted to `a₁ ≥ 1`.
fn positive_representative(code: &GeneticCode) -> Result<Option<Vec<Rational>>> {
    let mut p = build_p1(code)?;
    let m = p.n_vars();
    let mut e = vec![0; m];
    e[0] = 1;
    p.add_ge_int(&e, 1)?;
    let out = Solver::new(&p).lex_min_vertex_for(&vec![rat(1); m]);
    Ok(out.vertex.filter(|_| out.unique == Some(true)))
}

fn a_min_tables(r: &mut Report, records: &Records) -> Result<()> {
    let mut tables: Vec<(u8, Vec<(&str, Vec<i64>, Option<i64>)>)> = vec![
        (3, golden::A_MIN_M3.iter().map(|(c, a)| (*c, a.to_vec(), None)).collect()),
        (4, golden::A_MIN_M4.iter().map(|(c, a)| (*c, a.to_vec(), None)).collect()),
        (5, golden::A_MIN_M5.iter().map(|(c, a, l)| (*c, a.to_vec(), Some(*l))).collect()),
    ];
    tables.push((6, golden::HEXAGONS.iter().map(|h| (h.code, h.a_min.to_vec(), Some(h.l1))).collect()));
    for (m, rows) in tables {
        if !records.contains_key(&m) {
            continue;
        }
        let mut bad = Vec::new();
        let mut positive_only = true;
        for (code, a, l1) in &rows {
            let rec = find(records, m, code)?;
            let got = rec.and_then(|c| c.a_min.clone());
            let l1_ok = l1.is_none_or(|l| rec.and_then(|c| c.l1_integer()) == Some(l));
            if got.as_deref() == Some(&ints(a)[..]) && l1_ok {
                continue;
            }
            let got_text = got.as_deref().map_or("none".into(), show);
            // The reference may list the l1-minimal point with a₁ ≥ 1.
            let parsed = GeneticCode::parse(code, m)?;
            let positive = positive_representative(&parsed)?;
            if positive.as_deref() != Some(&ints(a)[..]) {
                positive_only = false;
            }
            bad.push(format!("{code}: expected {}, got {got_text}", show(&ints(a))));
        }
        let status = match (bad.is_empty(), positive_only) {
            (true, _) => Status::Pass,
            (false, true) => Status::Known,
            (false, false) => Status::Fail,
        };
        let detail = if bad.is_empty() {
            format!("{} rows match", rows.len())
        } else {
            bad.join("; ")
        };
        r.push(3, format!("a_min reference values, m = {m}"), status, detail);
        if status == Status::Known {
            r.push(
                3,
                format!("a_min reference values, m = {m}, read as l1-minimum with a_1 >= 1"),
                Status::Pass,
                "each mismatched row is the unique such point",
            );
        }
    }
    Ok(())
}

fn correspondences(r: &mut Report, records: &Records) -> Result<()> {
    for (m, rows) in [(4u8, &golden::MINUS_M4[..]), (5, &golden::MINUS_M5[..])] {
        if !records.contains_key(&m) {
            continue;
        }
        let mut bad = Vec::new();
        for &(alpha, a, lower, b) in rows {
            let code = GeneticCode::parse(alpha, m)?;
            let lower_code = GeneticCode::parse(lower, m - 1)?;
            let got_a = find(records, m, alpha)?.and_then(|c| c.a_min.clone());
            if got_a.as_deref() != Some(&ints(a)[..]) {
                bad.push(format!("a_min{alpha} = {:?}", got_a.as_deref().map(show)));
            }
            let down = minus_map(&code)?;
            if down.code != lower_code {
                bad.push(format!("{alpha}^- = {}, expected {lower}", down.code));
            }
            if plus_map(&lower_code)? != code {
                bad.push(format!("{lower}^+ != {alpha}"));
            }
            if a[1..] != *b {
                bad.push(format!("a_min{lower} is not a_min{alpha} without its first entry"));
            }
            let at_b = stratum_code_of_point(&ints(b))?;
            if at_b != lower_code {
                bad.push(format!("{} lies in {at_b}, not {lower}", show(&ints(b))));
            }
        }
        let detail = if bad.is_empty() {
            format!("{} rows match", rows.len())
        } else {
            bad.join("; ")
        };
        r.check(4, format!("chambers of R^{m} against strata of R^{}", m - 1), bad.is_empty(), detail);
    }
    for (&m, recs) in records.iter().filter(|(&m, _)| m >= 4) {
        let mut images = HashSet::new();
        let mut ok = true;
        for c in chambers(recs).filter(|c| in_plus_image(c)) {
            let s = minus_map(&c.code)?;
            ok &= plus_map(&s.code)? == c.code;
            ok &= images.insert(s.code);
        }
        r.check(4, format!("minus_map is injective and inverts plus_map, m = {m}"), ok, format!("{} strata", images.len()));
    }
    Ok(())
}

/// Chambers of `ℝ^m` hit by `(1/2, b)` over integral nondecreasing
/// `b ∈ [1, bound]^{m−1}`; every one lies in the `α⁺` image.
pub fn strata_sweep(m: u8, bound: i64) -> Result<BTreeSet<String>> {
    fn rec(b: &mut Vec<i64>, len: usize, bound: i64, out: &mut BTreeSet<String>) -> Result<()> {
        if b.len() == len {
            let point: Vec<Rational> = std::iter::once(rat(1)).chain(b.iter().map(|&x| rat(2 * x))).collect();
            out.insert(stratum_code_of_point(&point)?.to_string());
            return Ok(());
        }
        for v in b.last().copied().unwrap_or(1)..=bound {
            b.push(v);
            rec(b, len, bound, out)?;
            b.pop();
        }
        Ok(())
    }
    let mut out = BTreeSet::new();
    rec(&mut Vec::new(), m as usize - 1, bound, &mut out)?;
    Ok(out)
}

fn strata(r: &mut Report, records: &Records) -> Result<()> {
    for &(k, expected) in &golden::STRATA_COUNTS {
        let Some(recs) = records.get(&(k + 1)) else {
            continue;
        };
        let image: BTreeSet<String> = chambers(recs).filter(|c| in_plus_image(c)).map(|c| c.code.to_string()).collect();
        let known = golden::STRATA_COUNTS_COMPUTED.iter().find(|(j, _)| *j == k).map(|&(_, n)| n);
        r.count(5, format!("strata of R^{k}"), image.len(), expected, known);
        if k <= 6 {
            let swept = strata_sweep(k + 1, SWEEP_BOUND)?;
            r.check(
                5,
                format!("strata of R^{k} by direct sweep"),
                swept == image,
                format!("{} chambers hit, {} by the min x1 test", swept.len(), image.len()),
            );
        }
        if k + 1 == 7 {
            let outside = chambers(recs).count() - image.len();
            r.count(
                5,
                "chambers of R^7 outside the image",
                outside,
                golden::NOT_IN_IMAGE_M7,
                Some(golden::NOT_IN_IMAGE_M7_COMPUTED),
            );
        }
    }
    Ok(())
}

fn toric(r: &mut Report, records: &Records) -> Result<()> {
    if let Some(recs) = records.get(&7) {
        let failing: BTreeSet<String> = chambers(recs)
            .filter(|c| !c.toric_criterion)
            .map(|c| c.code.to_string())
            .collect();
        let listed: BTreeSet<String> = golden::TORIC_FAILURES_M7.iter().map(|(c, _)| c.to_string()).collect();
        // The listed a_min values pick out the chambers they belong to.
        let by_a_min: BTreeSet<String> = golden::TORIC_FAILURES_M7
            .iter()
            .filter_map(|(_, a)| {
                chambers(recs)
                    .find(|c| c.a_min.as_deref() == Some(&ints(a)[..]))
                    .map(|c| c.code.to_string())
            })
            .collect();
        let detail = format!("expected {listed:?}, got {failing:?}");
        let status = if failing == listed {
            Status::Pass
        } else if failing == by_a_min {
            Status::Known
        } else {
            Status::Fail
        };
        r.push(6, "toric test fails on R^7 exactly on the listed codes", status, detail);
        r.check(
            6,
            "toric test fails on R^7 exactly on the chambers of the listed a_min",
            by_a_min.len() == 3 && failing == by_a_min,
            format!("{by_a_min:?}"),
        );
    }
    for &(m, expected) in &golden::TORIC_FAILURE_COUNTS {
        let Some(recs) = records.get(&m) else {
            continue;
        };
        let lp = chambers(recs).filter(|c| !c.toric_criterion).count();
        let at_a_min = chambers(recs)
            .filter(|c| !c.checks.as_ref().is_some_and(|k| k.toric_at_a_min))
            .count();
        r.count(6, format!("chambers of R^{m} failing the toric test at a_min"), at_a_min, expected, None);
        let known = (m == 8).then_some(213);
        if m == 8 {
            r.count(6, format!("chambers of R^{m} with no integral toric point"), lp, expected, known);
        } else {
            r.push(6, format!("chambers of R^{m} with no integral toric point"), Status::Info, lp.to_string());
        }
    }
    Ok(())
}

fn bundles(recs: &[ChamberRecord]) -> Result<Vec<(String, InvariantBundle)>> {
    chambers(recs)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|c| Ok((c.code.to_string(), invariant_bundle(&c.code.short_family()?)?)))
        .collect()
}

fn invariants(r: &mut Report, records: &Records) -> Result<()> {
    if records.contains_key(&5) {
        for (code, expected) in golden::R_CUP_M5 {
            let got = r_cup(&GeneticCode::parse(code, 5)?.short_family()?);
            r.count(7, format!("r_cup{code}"), got, expected, None);
        }
    }
    if records.contains_key(&6) {
        let mut bad = Vec::new();
        for h in &golden::HEXAGONS {
            let b = invariant_bundle(&GeneticCode::parse(h.code, 6)?.short_family()?)?;
            let got = (b.betti.get(1).copied().unwrap_or(0), b.r_cup, b.s);
            if got != (h.b, h.r_cup, h.s) {
                bad.push(format!("{}: expected {:?}, got {got:?}", h.code, (h.b, h.r_cup, h.s)));
            }
        }
        let detail = if bad.is_empty() { "21 rows match".to_string() } else { bad.join("; ") };
        r.check(7, "(b, r_cup, s) of the chambers of R^6", bad.is_empty(), detail);
    }
    for (&m, recs) in records.range(5..) {
        let all = bundles(recs)?;
        let dups = distinguish(all.iter().map(|(c, b)| (c.as_str(), b)));
        let detail = match dups.first() {
            None => format!("{} chambers, all tuples distinct", all.len()),
            Some((_, codes)) => format!(
                "{} chambers, {} shared tuples, e.g. {codes:?}",
                all.len(),
                dups.len()
            ),
        };
        let label = format!("(betti, r_cup, s) separates the chambers of R^{m}");
        if m <= 7 {
            r.check(7, label, dups.is_empty(), detail);
        } else {
            // no reference claim beyond m = 7
            r.push(7, label, Status::Info, detail);
        }
    }
    Ok(())
}

/// `a ↪ b` by searching injective maps `φ: a → b` with `φ(x) ≥ x`.
pub fn dominates_by_search(a: &[u32], b: &[u32]) -> bool {
    fn go(a: &[u32], b: &[u32], used: &mut Vec<bool>) -> bool {
        let Some((&x, rest)) = a.split_first() else {
            return true;
        };
        for (j, &y) in b.iter().enumerate() {
            if !used[j] && y >= x {
                used[j] = true;
                if go(rest, b, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        false
    }
    go(a, b, &mut vec![false; b.len()])
}

fn properties(r: &mut Report, records: &Records) -> Result<()> {
    let mut cut_codes = 0;
    let mut cut_bad = Vec::new();
    for (&m, recs) in records.iter().filter(|(&m, _)| m <= 8) {
        for c in recs {
            let s = c.code.short_family()?;
            cut_codes += 1;
            if !s.is_cut() || s.len() != 1 << (m - 1) {
                cut_bad.push(c.code.to_string());
            }
        }
    }
    r.check(8, "every code yields a cut of size 2^(m-1)", cut_bad.is_empty(), format!("{cut_codes} codes, bad: {cut_bad:?}"));

    let mut n = 0;
    let mut bad = Vec::new();
    let mut div_bad = Vec::new();
    let mut field_bad = Vec::new();
    let mut relator_changes = Vec::new();
    let mut rank_bad = Vec::new();
    for recs in records.values() {
        for c in chambers(recs) {
            let s = c.code.short_family()?;
            n += 1;
            let betti = betti_recurrence(&s);
            if r_cup(&s) > betti.get(1).copied().unwrap_or(0) {
                rank_bad.push(c.code.to_string());
            }
            if betti.iter().ne(betti.iter().rev()) {
                bad.push(c.code.to_string());
            }
            match poincare_direct(&s) {
                Ok(p) if (0..betti.len()).all(|i| p.coeff(2 * i) == betti[i]) => {}
                _ => div_bad.push(c.code.to_string()),
            }
            let value = |field, linear_relators| s_alpha_with(&s, SolOptions { field, linear_relators });
            let (on, off) = (value(Field::Gf2, true)?, value(Field::Gf2, false)?);
            if on != value(Field::Rationals, true)? || off != value(Field::Rationals, false)? {
                field_bad.push(c.code.to_string());
            }
            if on != off {
                relator_changes.push((c.code.clone(), on, off));
            }
        }
    }
    r.check(8, "Betti numbers satisfy Poincaré duality", bad.is_empty(), format!("{n} chambers, bad: {bad:?}"));
    r.check(
        8,
        "Poincaré polynomial divides exactly and matches the Betti numbers",
        div_bad.is_empty(),
        format!("{n} chambers, bad: {div_bad:?}"),
    );
    r.check(
        8,
        "s is the same over GF(2) and Q",
        field_bad.is_empty(),
        format!("{n} chambers, bad: {field_bad:?}"),
    );
    r.check(8, "r_cup never exceeds b2", rank_bad.is_empty(), format!("{n} chambers, bad: {rank_bad:?}"));
    // Where the degree-one relators change s, the reference values decide
    // which count is meant.
    let mut confirmed = true;
    for (code, on, _) in &relator_changes {
        if code.m() == 6 {
            let h = golden::HEXAGONS.iter().find(|h| h.code == code.to_string());
            confirmed &= h.is_some_and(|h| h.s == *on);
        }
    }
    let status = match (relator_changes.is_empty(), confirmed) {
        (true, _) => Status::Pass,
        (false, true) => Status::Known,
        (false, false) => Status::Fail,
    };
    let listed: Vec<String> = relator_changes
        .iter()
        .map(|(c, on, off)| format!("{c}: {on} with, {off} without"))
        .collect();
    r.push(
        8,
        "degree-one relators never change s",
        status,
        format!("{n} chambers, changed on {}: {}", relator_changes.len(), listed.join("; ")),
    );

    let mut n = 0;
    let mut bad = Vec::new();
    for recs in records.values().filter(|v| v.first().is_some_and(|c| c.m <= 6)) {
        for c in chambers(recs) {
            let s = c.code.short_family()?;
            let betti = betti_recurrence(&s);
            let top = betti.len().saturating_sub(1) as u32;
            let dims: Vec<i64> = ring_oracle(&s, top).into_iter().map(|d| d as i64).collect();
            n += 1;
            if dims != betti {
                bad.push(format!("{}: ring {dims:?}, formula {betti:?}", c.code));
            }
        }
    }
    r.check(8, "ring dimensions equal the Betti numbers, m <= 6", bad.is_empty(), format!("{n} chambers, bad: {bad:?}"));

    let dom_top = records.keys().copied().filter(|&m| m <= 7).max().unwrap_or(3);
    let mut pairs = 0u64;
    let mut bad = Vec::new();
    for m in 3..=dom_top {
        let all: Vec<Subset> = (0..1u32 << m).map(|mask| Subset::new(m, mask)).collect::<Result<_>>()?;
        for a in &all {
            let ae = a.elements();
            for b in &all {
                pairs += 1;
                if dominates(a, b)? != dominates_by_search(&ae, &b.elements()) {
                    bad.push(format!("{a} vs {b}"));
                }
            }
        }
    }
    r.check(
        8,
        format!("dominates agrees with injective-map search, m <= {dom_top}"),
        bad.is_empty(),
        format!("{pairs} pairs, bad: {bad:?}"),
    );

    let mut n = 0;
    let mut bad = Vec::new();
    for recs in records.values().filter(|v| v.first().is_some_and(|c| c.m <= 6)) {
        for c in recs {
            let ones = vec![rat(1); c.m as usize];
            let reduced = Solver::new(&build_p1_with(&c.code, P1Rows::Maximal)?).lex_min_vertex_for(&ones);
            let full = Solver::new(&build_p1_with(&c.code, P1Rows::All)?).lex_min_vertex_for(&ones);
            n += 1;
            if reduced.status != full.status || reduced.vertex != full.vertex {
                bad.push(c.code.to_string());
            }
        }
    }
    r.check(8, "reduced and full P1 agree, m <= 6", bad.is_empty(), format!("{n} codes, bad: {bad:?}"));
    Ok(())
}

/// What the l1 optimum of a flagged chamber looks like, plus the integral
/// minimum's value and number of minimizers when found.
fn describe_minimizers(c: &ChamberRecord) -> Result<(String, Option<(Rational, usize)>)> {
    let mut parts = Vec::new();
    if let Some((lo, hi)) = l1_face_extremes(&c.code)? {
        match hi {
            Some(hi) if hi != lo => parts.push(format!("l1 optimum is a face from {} to {}", show(&lo), show(&hi))),
            Some(_) => parts.push(format!("l1 optimum is the single point {}", show(&lo))),
            None => parts.push(format!("l1 optimum is an unbounded face from {}", show(&lo))),
        }
    }
    let mut integral = None;
    if let Some((l1, point)) = integral_l1_minimum(&c.code)? {
        let count = match l1.to_integer().to_i64() {
            Some(l) => Some(integral_points_with_l1(&c.code, l)?.len()),
            None => None,
        };
        parts.push(format!(
            "integral l1 minimum {} at {}, integral minimizers: {}",
            format_rational(&l1),
            show(&point),
            count.map_or("?".into(), |n| n.to_string())
        ));
        integral = count.map(|n| (l1, n));
    }
    Ok((parts.join("; "), integral))
}

fn monitors(r: &mut Report, records: &Records) -> Result<()> {
    for (&m, recs) in records {
        let ch: Vec<&ChamberRecord> = chambers(recs).collect();
        let checks = |f: &dyn Fn(&crate::realize::ChamberChecks) -> bool| {
            ch.iter().filter(|c| !c.checks.as_ref().is_some_and(f)).copied().collect::<Vec<_>>()
        };
        let odd = checks(&|k| k.a_min_integral && k.l1_odd);
        let unique = checks(&|k| k.a_min_unique);
        let witness = checks(&|k| k.plus_witness_ok != Some(false));
        let n = ch.len();
        let monitor = |r: &mut Report, label: String, bad: &[&ChamberRecord]| {
            let status = if bad.is_empty() { Status::Pass } else { Status::Warn };
            r.push(9, label, status, format!("{} of {n} chambers violate", bad.len()));
        };
        monitor(r, format!("a_min integral with odd l1, m = {m}"), &odd);
        monitor(r, format!("l1 optimum is a single point, m = {m}"), &unique);
        monitor(r, format!("min x1 = 1 has an integral odd witness, m = {m}"), &witness);
        let mut flagged: Vec<&ChamberRecord> = odd.iter().chain(&unique).chain(&witness).copied().collect();
        flagged.sort_by_key(|c| c.code.to_string());
        flagged.dedup_by_key(|c| c.code.to_string());
        let mut integral_ok = 0;
        let n_flagged = flagged.len();
        for c in flagged {
            let a = c.a_min.as_deref().map_or("none".into(), show);
            let l1 = c.l1.as_ref().map_or("none".into(), format_rational);
            let (text, integral) = describe_minimizers(c)?;
            if integral.is_some_and(|(l, n)| n == 1 && l.to_integer().is_odd()) {
                integral_ok += 1;
            }
            r.findings.push(format!("{}: a_min {a}, l1 {l1}; {text}", c.code));
        }
        if n_flagged > 0 {
            let status = if integral_ok == n_flagged { Status::Pass } else { Status::Warn };
            r.push(
                9,
                format!("flagged chambers still have a unique integral l1 minimizer with odd l1, m = {m}"),
                status,
                format!("{integral_ok} of {n_flagged}"),
            );
        }
        if m <= 8 {
            let results: Vec<(String, Option<bool>)> = ch
                .par_iter()
                .map(|c| {
                    let v = p1_vertices(&c.code, VERTEX_BASIS_BUDGET)?;
                    let integral = v.filter(|e| e.complete).map(|e| {
                        e.vertices.iter().all(|x| x.iter().all(|q| q.denom().is_one()))
                    });
                    Ok((c.code.to_string(), integral))
                })
                .collect::<Result<_>>()?;
            let fractional: Vec<&String> = results.iter().filter(|(_, v)| *v == Some(false)).map(|(c, _)| c).collect();
            let incomplete = results.iter().filter(|(_, v)| v.is_none()).count();
            let status = if fractional.is_empty() && incomplete == 0 { Status::Pass } else { Status::Warn };
            r.push(
                9,
                format!("all vertices of P1 integral, m = {m}"),
                status,
                format!("{} fractional, {incomplete} not fully enumerated, of {n}", fractional.len()),
            );
            for c in fractional {
                r.findings.push(format!("{c}: P1 has a fractional vertex"));
            }
        }
    }
    Ok(())
}
