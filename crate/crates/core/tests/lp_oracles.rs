//! The exact simplex against brute-force vertex enumeration and
//! Fourier–Motzkin elimination on small random problems.

use std::collections::BTreeSet;

use chamberscope::lp::{lex_min_vertex, rat, solve, LpProblem, Rational, Solver, Status};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug)]
enum Kind {
    Ge,
    Le,
    Eq,
}

#[derive(Clone, Debug)]
struct Row {
    a: Vec<i64>,
    b: i64,
    kind: Kind,
}

/// Rows as `a·x ≥ b`, with equalities split in two and `x ≥ 0` added.
fn as_ge(rows: &[Row], n: usize) -> Vec<(Vec<Rational>, Rational)> {
    let mut out = Vec::new();
    for r in rows {
        let a: Vec<Rational> = r.a.iter().map(|&v| rat(v)).collect();
        let neg: Vec<Rational> = a.iter().map(|v| -v).collect();
        match r.kind {
            Kind::Ge => out.push((a, rat(r.b))),
            Kind::Le => out.push((neg, rat(-r.b))),
            Kind::Eq => {
                out.push((a, rat(r.b)));
                out.push((neg, rat(-r.b)));
            }
        }
    }
    for j in 0..n {
        out.push(((0..n).map(|k| rat((k == j) as i64)).collect(), rat(0)));
    }
    out
}

fn problem(n: usize, rows: &[Row], c: &[i64]) -> LpProblem {
    let mut p = LpProblem::new(n);
    for r in rows {
        let a: Vec<Rational> = r.a.iter().map(|&v| rat(v)).collect();
        match r.kind {
            Kind::Ge => p.add_ge(a, rat(r.b)).unwrap(),
            Kind::Le => p.add_le(a, rat(r.b)).unwrap(),
            Kind::Eq => p.add_eq(a, rat(r.b)).unwrap(),
        }
    }
    p.set_objective_int(c).unwrap();
    p
}

/// Unique solution of a square system, by Gauss–Jordan elimination.
fn solve_square(mut m: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                for k in 0..n {
                    let d = &f * &m[col][k];
                    m[r][k] -= d;
                }
                let d = &f * &rhs[col];
                rhs[r] -= d;
            }
        }
    }
    Some((0..n).map(|i| &rhs[i] / &m[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Every vertex: a feasible point where `n` independent rows are tight.
fn brute_vertices(ge: &[(Vec<Rational>, Rational)], n: usize) -> BTreeSet<Vec<Rational>> {
    let mut out = BTreeSet::new();
    for pick in combinations(ge.len(), n) {
        let m = pick.iter().map(|&i| ge[i].0.clone()).collect();
        let rhs = pick.iter().map(|&i| ge[i].1.clone()).collect();
        if let Some(x) = solve_square(m, rhs) {
            let feasible = ge.iter().all(|(a, b)| dot(a, &x) >= *b);
            if feasible {
                out.insert(x);
            }
        }
    }
    out
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    a.iter().zip(x).map(|(a, x)| a * x).sum()
}

/// Feasibility of `a·x ≥ b` by eliminating one variable at a time.
fn fourier_motzkin(mut rows: Vec<(Vec<Rational>, Rational)>, n: usize) -> bool {
    for j in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[j].is_positive() {
                pos.push(r);
            } else if r.0[j].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                // scale both so that x_j cancels
                let (sp, sn) = (-&na[j], pa[j].clone());
                let a: Vec<Rational> = pa.iter().zip(na).map(|(p, q)| p * &sp + q * &sn).collect();
                rest.push((a, pb * &sp + nb * &sn));
            }
        }
        rows = rest;
    }
    rows.iter().all(|(_, b)| !b.is_positive())
}

fn kind() -> impl Strategy<Value = Kind> {
    prop_oneof![4 => Just(Kind::Ge), 3 => Just(Kind::Le), 1 => Just(Kind::Eq)]
}

fn rows(n: usize, max: usize) -> impl Strategy<Value = Vec<Row>> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, n), -4i64..=6, kind()).prop_map(|(a, b, kind)| Row { a, b, kind }),
        1..=max,
    )
}

/// Random rows plus the box `x_j ≤ 6`, so every feasible problem is bounded.
fn bounded_case() -> impl Strategy<Value = (usize, Vec<Row>, Vec<i64>)> {
    (2usize..=3).prop_flat_map(|n| {
        (Just(n), rows(n, 4), prop::collection::vec(-3i64..=3, n)).prop_map(|(n, mut rows, c)| {
            for j in 0..n {
                let a = (0..n).map(|k| (k == j) as i64).collect();
                rows.push(Row { a, b: 6, kind: Kind::Le });
            }
            (n, rows, c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn optimum_matches_vertex_enumeration((n, rows, c) in bounded_case()) {
        let p = problem(n, &rows, &c);
        let ge = as_ge(&rows, n);
        let vertices = brute_vertices(&ge, n);
        let solver = Solver::new(&p);
        prop_assert_eq!(solver.is_feasible(), !vertices.is_empty());
        let out = lex_min_vertex(&p);
        if vertices.is_empty() {
            prop_assert_eq!(out.status, Status::Infeasible);
            return Ok(());
        }
        let c_rat: Vec<Rational> = c.iter().map(|&v| rat(v)).collect();
        let best = vertices.iter().map(|v| dot(&c_rat, v)).min().unwrap();
        let optimal: Vec<&Vec<Rational>> = vertices.iter().filter(|v| dot(&c_rat, v) == best).collect();
        prop_assert_eq!(out.status, Status::Optimal);
        prop_assert_eq!(out.value.as_ref(), Some(&best));
        prop_assert_eq!(solve(&p).value, Some(best.clone()));
        // on a polytope the lexicographic minimum of a face is a vertex
        prop_assert_eq!(out.vertex.as_ref(), optimal.iter().min().copied());
        prop_assert_eq!(out.unique, Some(optimal.len() == 1));

        let found = solver.vertices(100_000).unwrap();
        prop_assert!(found.complete);
        let found: BTreeSet<Vec<Rational>> = found.vertices.into_iter().collect();
        prop_assert_eq!(found, vertices);
    }

    #[test]
    fn feasibility_matches_fourier_motzkin(n in 2usize..=3, seed_rows in rows(3, 6)) {
        let rows: Vec<Row> = seed_rows
            .into_iter()
            .map(|mut r| { r.a.truncate(n); r })
            .collect();
        let p = problem(n, &rows, &vec![0; n]);
        let ge = as_ge(&rows, n);
        let solver = Solver::new(&p);
        prop_assert_eq!(solver.is_feasible(), fourier_motzkin(ge.clone(), n));
        if let Some(x) = solver.feasible_point() {
            prop_assert!(p.is_feasible_point(&x));
            prop_assert!(ge.iter().all(|(a, b)| dot(a, &x) >= *b));
        }
    }
}

#[test]
fn unbounded_direction_is_reported() {
    // x1 − x2 ≥ −1 with objective −x1 − x2 runs off along (1, 1)
    let rows = [Row { a: vec![1, -1], b: -1, kind: Kind::Ge }];
    let out = solve(&problem(2, &rows, &[-1, -1]));
    assert_eq!(out.status, Status::Unbounded);
}

#[test]
fn oracles_themselves_on_fixed_cases() {
    let unit = |j: usize| (0..2).map(|k| rat((k == j) as i64)).collect::<Vec<_>>();
    // x1 ≥ 2 and −x1 ≥ −1
    let neg: Vec<Rational> = unit(0).iter().map(|v| -v).collect();
    assert!(!fourier_motzkin(vec![(unit(0), rat(2)), (neg, rat(-1))], 2));
    let square = [
        Row { a: vec![1, 0], b: 1, kind: Kind::Le },
        Row { a: vec![0, 1], b: 1, kind: Kind::Le },
    ];
    let ge = as_ge(&square, 2);
    assert!(fourier_motzkin(ge.clone(), 2));
    assert_eq!(brute_vertices(&ge, 2).len(), 4);
}
