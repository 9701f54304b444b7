//! Realization against exhaustive integer search and direct sweeps of
//! nondecreasing points.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use chamberscope::lp::{rat, Rational, Solver};
use chamberscope::realize::{
    build_p1_with, family_of_point, in_plus_image, minus_map, plus_map, realize, realize_all, stratum_code_of_point,
    ChamberRecord, P1Rows,
};
use chamberscope::{enumerate_codes, GeneticCode};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn embeds(a: u32, b: u32) -> bool {
    // k-th largest of a is at most k-th largest of b
    let desc = |x: u32| (0..32).rev().filter(|i| x >> i & 1 == 1).collect::<Vec<u32>>();
    let (a, b) = (desc(a), desc(b));
    a.len() <= b.len() && a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// Gene masks of the chamber of a point, or `None` on a wall.
fn genes_of_point(a: &[i64]) -> Option<Vec<u32>> {
    let m = a.len();
    let total: i64 = a.iter().sum();
    let top = 1u32 << (m - 1);
    let mut short_top = Vec::new();
    for mask in 0..1u32 << m {
        let inside: i64 = (0..m).filter(|&k| mask >> k & 1 == 1).map(|k| a[k]).sum();
        if 2 * inside == total {
            return None;
        }
        if 2 * inside < total && mask & top != 0 {
            short_top.push(mask);
        }
    }
    let mut genes: Vec<u32> = short_top
        .iter()
        .copied()
        .filter(|&g| !short_top.iter().any(|&h| h != g && embeds(g, h)))
        .collect();
    genes.sort_unstable();
    Some(genes)
}

fn key(code: &GeneticCode) -> Vec<u32> {
    let mut g = code.gene_masks();
    g.sort_unstable();
    g
}

/// Nondecreasing sequences of length `len` with entries in `lo..=hi` and
/// sum at most `budget`.
fn sequences(len: usize, lo: i64, hi: i64, budget: i64, f: &mut impl FnMut(&[i64])) {
    fn go(cur: &mut Vec<i64>, len: usize, hi: i64, budget: i64, f: &mut impl FnMut(&[i64])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        let start = *cur.last().unwrap();
        let left = (len - cur.len()) as i64;
        for v in start..=hi {
            if cur.iter().sum::<i64>() + v * left > budget {
                break;
            }
            cur.push(v);
            go(cur, len, hi, budget, f);
            cur.pop();
        }
    }
    for first in lo..=hi {
        if first * len as i64 > budget {
            break;
        }
        let mut cur = vec![first];
        go(&mut cur, len, hi, budget, f);
    }
}

fn l1_of(r: &ChamberRecord) -> i64 {
    r.l1_integer().expect("integral l1 for m <= 8")
}

#[test]
fn a_min_is_the_unique_integral_minimum() {
    // m = 8 takes a couple of minutes
    let top = if std::env::var_os("CHAMBERSCOPE_LONG").is_some() { 8 } else { 7 };
    for m in 3..=top {
        let chambers: Vec<ChamberRecord> = realize_all(m).unwrap().into_iter().filter(|r| r.realizable).collect();
        let budget = chambers.iter().map(l1_of).max().unwrap();
        // for every chamber, the minimal l1 over its generic integral points
        // and all points attaining it
        let mut best: BTreeMap<Vec<u32>, (i64, Vec<Vec<i64>>)> = BTreeMap::new();
        sequences(m as usize, 0, budget, budget, &mut |a| {
            let Some(genes) = genes_of_point(a) else {
                return;
            };
            let l1: i64 = a.iter().sum();
            let e = best.entry(genes).or_insert((l1, Vec::new()));
            if l1 < e.0 {
                *e = (l1, Vec::new());
            }
            if l1 == e.0 {
                e.1.push(a.to_vec());
            }
        });
        let keys: BTreeSet<Vec<u32>> = chambers.iter().map(|r| key(&r.code)).collect();
        let hit: BTreeSet<Vec<u32>> = best.keys().cloned().collect();
        assert!(hit.is_subset(&keys), "m={m}: a point lies in an unrealized chamber");
        for r in &chambers {
            let (l1, points) = best.get(&key(&r.code)).unwrap_or_else(|| panic!("{}: no integral point", r.code));
            assert_eq!(*l1, l1_of(r), "{}", r.code);
            assert_eq!(points.len(), 1, "{}: several integral minimizers", r.code);
            assert_eq!(Some(points[0].clone()), r.a_min_integers(), "{}", r.code);
            assert_eq!(l1 % 2, 1, "{}", r.code);
        }
    }
}

#[test]
fn strata_match_a_sweep_of_shifted_points() {
    let long = std::env::var_os("CHAMBERSCOPE_LONG").is_some();
    let cases: &[(u8, i64)] = if long { &[(4, 6), (5, 8), (6, 10), (7, 14), (8, 30)] } else { &[(4, 6), (5, 8), (6, 10), (7, 14)] };
    for &(m, bound) in cases {
        // (1/2, b) with b integral, scaled by two; the total is odd so the
        // point is never on a wall
        let mut swept = BTreeSet::new();
        sequences(m as usize - 1, 1, bound, i64::MAX, &mut |b| {
            let a: Vec<i64> = std::iter::once(1).chain(b.iter().map(|x| 2 * x)).collect();
            swept.insert(genes_of_point(&a).expect("odd total"));
        });
        let image: BTreeSet<Vec<u32>> = realize_all(m)
            .unwrap()
            .iter()
            .filter(|r| in_plus_image(r))
            .map(|r| key(&r.code))
            .collect();
        assert_eq!(swept, image, "m={m}");
    }
}

#[test]
fn minus_inverts_plus_on_every_stratum() {
    for m in 4..=8u8 {
        let mut seen = HashSet::new();
        for r in realize_all(m).unwrap().iter().filter(|r| in_plus_image(r)) {
            let s = minus_map(&r.code).unwrap();
            assert_eq!(plus_map(&s.code).unwrap(), r.code);
            assert!(seen.insert(s.code.clone()), "{} hit twice", s.code);
            // a_min(α) without its first entry lies in the stratum
            let tail: Vec<Rational> = r.a_min.as_ref().unwrap()[1..].to_vec();
            if r.min_x1.as_ref().unwrap() == &rat(0) || r.a_min.as_ref().unwrap()[0] <= rat(1) {
                let _ = stratum_code_of_point(&tail).unwrap();
            }
        }
    }
}

#[test]
fn reduced_and_full_p1_agree_up_to_m6() {
    for m in 3..=6u8 {
        for c in enumerate_codes(m).unwrap().iter() {
            let ones = vec![rat(1); m as usize];
            let a = Solver::new(&build_p1_with(c, P1Rows::Maximal).unwrap()).lex_min_vertex_for(&ones);
            let b = Solver::new(&build_p1_with(c, P1Rows::All).unwrap()).lex_min_vertex_for(&ones);
            assert_eq!((a.status, a.vertex), (b.status, b.vertex), "{c}");
        }
    }
    let c = GeneticCode::parse("<9642>", 9).unwrap();
    for rows in [P1Rows::Maximal, P1Rows::All] {
        assert!(!Solver::new(&build_p1_with(&c, rows).unwrap()).is_feasible());
    }
}

#[test]
fn records_round_trip_through_json() {
    for m in 3..=7u8 {
        for r in realize_all(m).unwrap() {
            let text = serde_json::to_string(&r).unwrap();
            let back: ChamberRecord = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(GeneticCode::parse(&r.code.to_string(), m).unwrap(), r.code);
        }
    }
}

fn point() -> impl Strategy<Value = Vec<i64>> {
    (3usize..=8).prop_flat_map(|m| prop::collection::vec(1i64..=25, m)).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generic_points_are_realized_and_bound_a_min(a in point(), k in 1i64..=6) {
        let Some(genes) = genes_of_point(&a) else { return Ok(()) };
        let q: Vec<Rational> = a.iter().map(|&x| rat(x)).collect();
        let code = stratum_code_of_point(&q).unwrap();
        prop_assert_eq!(key(&code), genes);
        // the chamber does not depend on scale
        let scaled: Vec<Rational> = a.iter().map(|&x| rat(k * x)).collect();
        prop_assert_eq!(family_of_point(&scaled).unwrap(), family_of_point(&q).unwrap());
        let r = realize(&code).unwrap();
        prop_assert!(r.realizable);
        // the point is integral and strictly inside, hence in P1
        prop_assert!(r.l1.unwrap() <= rat(a.iter().sum()));
        prop_assert!(r.min_x1.unwrap() <= rat(a[0]));
        let a_min = r.a_min.unwrap();
        prop_assert_eq!(family_of_point(&a_min).unwrap(), family_of_point(&q).unwrap());
    }

    #[test]
    fn rational_text_round_trips(p in -10_000i64..10_000, q in 1i64..1000) {
        use chamberscope::ratio::{format_rational, parse_rational};
        let r = Rational::new(p.into(), q.into());
        let text = format_rational(&r);
        prop_assert_eq!(parse_rational(&text).unwrap(), r.clone());
        prop_assert!(!text.contains('/') || r.denom().to_i64().unwrap() > 1);
    }
}
