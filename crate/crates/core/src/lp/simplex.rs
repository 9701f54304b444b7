//! Dense two-phase primal simplex with Bland's rule on an integer tableau.
//!
//! The tableau is kept fraction free: every stored entry is an integer and
//! the true value is `entry / det`, where `det` is the determinant of the
//! current basis. A pivot on `(r, c)` replaces each non-pivot entry by
//! `(t[i][j] * p - t[i][c] * t[r][j]) / det` with `p = t[r][c]`; the
//! division is exact, and `p` becomes the new `det`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::int::{Checked, Overflow, TabInt};
use super::problem::{LpOutcome, LpProblem, Rational, Status};

/// Scale a rational vector to coprime integers by a positive factor.
pub(crate) fn integerize(coeffs: &[Rational], extra: Option<&Rational>) -> (Vec<BigInt>, Option<BigInt>) {
    let mut l = <BigInt as One>::one();
    for c in coeffs.iter().chain(extra) {
        l = l.lcm(c.denom());
    }
    let scale = |c: &Rational| c.numer() * (&l / c.denom());
    (coeffs.iter().map(scale).collect(), extra.map(scale))
}

#[derive(Clone)]
pub(crate) struct Tableau<I> {
    n_vars: usize,
    /// Structural, then slack or surplus, then artificial columns.
    n_cols: usize,
    art_start: usize,
    /// Each row holds `n_cols` entries followed by the right-hand side.
    rows: Vec<Vec<I>>,
    basis: Vec<usize>,
    det: I,
    banned: Vec<bool>,
    pub(crate) pivots: usize,
}

enum StageEnd {
    Optimal,
    Unbounded,
}

impl<I: TabInt> Tableau<I> {
    /// Slack-or-artificial starting basis for `a·x ≥ b`.
    fn build(p: &LpProblem) -> Checked<Self> {
        let n = p.n_vars();
        let m = p.rows().len();
        let mut ints = Vec::with_capacity(m);
        let mut n_art = 0;
        for row in p.rows() {
            let (a, b) = integerize(&row.coeffs, Some(&row.rhs));
            let b = b.expect("rhs present");
            if Signed::is_positive(&b) {
                n_art += 1;
            }
            ints.push((a, b));
        }
        let art_start = n + m;
        let n_cols = art_start + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut next_art = art_start;
        for (i, (a, b)) in ints.into_iter().enumerate() {
            let mut r = vec![I::zero(); n_cols + 1];
            if Signed::is_positive(&b) {
                // a·x - e + art = b
                for (j, v) in a.iter().enumerate() {
                    r[j] = I::from_big(v)?;
                }
                r[n + i] = I::one().neg()?;
                r[next_art] = I::one();
                r[n_cols] = I::from_big(&b)?;
                basis.push(next_art);
                next_art += 1;
            } else {
                // -a·x + s = -b
                for (j, v) in a.iter().enumerate() {
                    r[j] = I::from_big(&-v)?;
                }
                r[n + i] = I::one();
                r[n_cols] = I::from_big(&-b)?;
                basis.push(n + i);
            }
            rows.push(r);
        }
        Ok(Tableau {
            n_vars: n,
            n_cols,
            art_start,
            rows,
            basis,
            det: I::one(),
            banned: vec![false; n_cols],
            pivots: 0,
        })
    }

    fn rhs(&self, i: usize) -> &I {
        &self.rows[i][self.n_cols]
    }

    /// Reduced costs scaled by `det`: `c_j·det - Σ_i c_{B_i}·t[i][j]`.
    fn reduced_costs(&self, cost: &[I]) -> Checked<Vec<I>> {
        let mut out = Vec::with_capacity(self.n_cols);
        for j in 0..self.n_cols {
            let mut acc = cost[j].mul(&self.det)?;
            for (i, row) in self.rows.iter().enumerate() {
                let cb = &cost[self.basis[i]];
                if !cb.is_zero() && !row[j].is_zero() {
                    acc = acc.sub(&cb.mul(&row[j])?)?;
                }
            }
            out.push(acc);
        }
        Ok(out)
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: Option<&mut Vec<I>>) -> Checked<()> {
        let p = self.rows[r][c].clone();
        let det = self.det.clone();
        let pivot_row = self.rows[r].clone();
        let unit_det = det.is_one();
        // a row of the reduced costs carries no rhs entry; zip stops early
        let update = |row: &mut [I]| -> Checked<()> {
            let f = row[c].clone();
            if f.is_zero() {
                if !p.is_one() || !unit_det {
                    for v in row.iter_mut() {
                        if !v.is_zero() {
                            let w = v.mul(&p)?;
                            *v = if unit_det { w } else { w.div_exact(&det) };
                        }
                    }
                }
            } else {
                for (v, pr) in row.iter_mut().zip(&pivot_row) {
                    let w = v.mul_sub(&p, &f, pr)?;
                    *v = if unit_det { w } else { w.div_exact(&det) };
                }
            }
            Ok(())
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                update(row)?;
            }
        }
        let mut reduced = reduced;
        if let Some(red) = reduced.as_deref_mut() {
            update(red)?;
        }
        self.det = p;
        self.basis[r] = c;
        self.pivots += 1;
        if self.det.is_negative() {
            self.det = self.det.neg()?;
            for row in self.rows.iter_mut() {
                for v in row.iter_mut() {
                    *v = v.neg()?;
                }
            }
            if let Some(red) = reduced {
                for v in red.iter_mut() {
                    *v = v.neg()?;
                }
            }
        }
        log::trace!("pivot ({r}, {c}), det {}\n{self}", self.det);
        Ok(())
    }

    /// Ratio test with Bland's tie-break on the leaving basic index.
    fn leaving_row(&self, c: usize) -> Checked<Option<usize>> {
        let mut best: Option<usize> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(k) => {
                    // rhs_i / a_i  vs  rhs_k / a_k
                    let lhs = self.rhs(i).mul(&self.rows[k][c])?;
                    let rhs = self.rhs(k).mul(a)?;
                    if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[k]) {
                        Some(i)
                    } else {
                        Some(k)
                    }
                }
            };
        }
        Ok(best)
    }

    /// Minimize with the given column costs, entering by Bland's rule.
    fn run_stage(&mut self, cost: &[I]) -> Checked<(StageEnd, Vec<I>)> {
        let mut reduced = self.reduced_costs(cost)?;
        loop {
            let entering = (0..self.n_cols).find(|&j| !self.banned[j] && reduced[j].is_negative());
            let Some(c) = entering else {
                return Ok((StageEnd::Optimal, reduced));
            };
            let Some(r) = self.leaving_row(c)? else {
                return Ok((StageEnd::Unbounded, reduced));
            };
            self.pivot(r, c, Some(&mut reduced))?;
        }
    }

    /// Phase one. Returns `false` when the system is infeasible; otherwise
    /// artificials are pivoted out, redundant rows dropped and the
    /// artificial columns removed.
    fn phase_one(&mut self) -> Checked<bool> {
        if self.art_start < self.n_cols {
            let mut cost = vec![I::zero(); self.n_cols];
            for c in cost.iter_mut().skip(self.art_start) {
                *c = I::one();
            }
            let (end, _) = self.run_stage(&cost)?;
            debug_assert!(matches!(end, StageEnd::Optimal));
            let infeasible = (0..self.rows.len())
                .any(|i| self.basis[i] >= self.art_start && !self.rhs(i).is_zero());
            if infeasible {
                return Ok(false);
            }
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.art_start {
                    match (0..self.art_start).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => {
                            self.pivot(i, j, None)?;
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
            let n_cols = self.art_start;
            for row in self.rows.iter_mut() {
                row.drain(n_cols..self.n_cols);
            }
            self.n_cols = n_cols;
            self.banned.truncate(n_cols);
        }
        Ok(true)
    }

    fn cost_vector(&self, objective: &[Rational]) -> Checked<Vec<I>> {
        let (ints, _) = integerize(objective, None);
        let mut cost = vec![I::zero(); self.n_cols];
        for (j, v) in ints.iter().enumerate() {
            cost[j] = I::from_big(v)?;
        }
        Ok(cost)
    }

    /// Optimize each objective in turn over the optimal face of the previous
    /// ones. `Ok(None)` means some stage was unbounded.
    fn lex_stages(&mut self, objectives: &[Vec<Rational>]) -> Checked<Option<()>> {
        for obj in objectives {
            let cost = self.cost_vector(obj)?;
            let (end, reduced) = self.run_stage(&cost)?;
            if let StageEnd::Unbounded = end {
                return Ok(None);
            }
            for (j, r) in reduced.iter().enumerate() {
                if r.is_positive() {
                    self.banned[j] = true;
                }
            }
        }
        Ok(Some(()))
    }

    /// Whether some non-banned nonbasic column has zero reduced cost, i.e.
    /// a pivot could move along the current optimal face.
    fn has_free_direction(&self, objective: &[Rational]) -> Checked<bool> {
        let cost = self.cost_vector(objective)?;
        let reduced = self.reduced_costs(&cost)?;
        let mut basic = vec![false; self.n_cols];
        for &b in &self.basis {
            basic[b] = true;
        }
        Ok((0..self.n_cols).any(|j| !basic[j] && !self.banned[j] && reduced[j].is_zero()))
    }

    fn vertex(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.n_vars];
        let det = self.det.to_big();
        for (i, &b) in self.basis.iter().enumerate() {
            if b < self.n_vars {
                x[b] = BigRational::new(self.rhs(i).to_big(), det.clone());
            }
        }
        x
    }
}

impl<I: TabInt> fmt::Display for Tableau<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            write!(f, "[b={:>3}]", self.basis[i])?;
            for v in row {
                write!(f, " {v:>4}")?;
            }
            writeln!(f)?;
        }
        write!(f, "det = {}", self.det)
    }
}

fn unit(n: usize, j: usize, sign: i64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[j] = Rational::from_integer(BigInt::from(sign));
    v
}

#[derive(Clone)]
enum Backend {
    Small(Tableau<i128>),
    Big(Tableau<BigInt>),
}

/// A problem after phase one, ready for any number of objectives.
#[derive(Clone)]
pub struct Solver {
    problem: LpProblem,
    state: Option<Backend>,
}

impl Solver {
    pub fn new(problem: &LpProblem) -> Solver {
        let state = match phase_one::<i128>(problem) {
            Ok(s) => s.map(Backend::Small),
            Err(Overflow) => phase_one::<BigInt>(problem)
                .expect("BigInt arithmetic does not overflow")
                .map(Backend::Big),
        };
        Solver {
            problem: problem.clone(),
            state,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.state.is_some()
    }

    /// A basic feasible point from phase one.
    pub fn feasible_point(&self) -> Option<Vec<Rational>> {
        match self.state.as_ref()? {
            Backend::Small(t) => Some(t.vertex()),
            Backend::Big(t) => Some(t.vertex()),
        }
    }

    fn with_backend<R>(
        &self,
        small: impl FnOnce(Tableau<i128>) -> Checked<R>,
        big: impl FnOnce(Tableau<BigInt>) -> Checked<R>,
    ) -> Option<R> {
        let state = self.state.as_ref()?;
        if let Backend::Small(t) = state {
            if let Ok(r) = small(t.clone()) {
                return Some(r);
            }
        }
        let t = match state {
            Backend::Big(t) => t.clone(),
            Backend::Small(_) => phase_one::<BigInt>(&self.problem)
                .expect("BigInt arithmetic does not overflow")
                .expect("feasibility does not depend on the backend"),
        };
        Some(big(t).expect("BigInt arithmetic does not overflow"))
    }

    /// Lexicographic minimization of `objectives`; the outcome's value is
    /// that of the first objective.
    pub fn minimize_lex(&self, objectives: &[Vec<Rational>]) -> LpOutcome {
        fn run<I: TabInt>(mut t: Tableau<I>, objs: &[Vec<Rational>]) -> Checked<Option<Vec<Rational>>> {
            Ok(t.lex_stages(objs)?.map(|_| t.vertex()))
        }
        match self.with_backend(|t| run(t, objectives), |t| run(t, objectives)) {
            None => LpOutcome::infeasible(),
            Some(None) => LpOutcome::unbounded(),
            Some(Some(x)) => self.optimal(x, objectives.first(), None),
        }
    }

    fn optimal(&self, x: Vec<Rational>, objective: Option<&Vec<Rational>>, unique: Option<bool>) -> LpOutcome {
        let value = objective
            .map(|c| c.iter().zip(&x).fold(Rational::zero(), |a, (c, v)| a + c * v))
            .unwrap_or_else(Rational::zero);
        LpOutcome {
            status: Status::Optimal,
            vertex: Some(x),
            value: Some(value),
            unique,
        }
    }

    /// Minimize `objective`, then refine to the lexicographically smallest
    /// point of the optimal face; also decide whether that face is a point.
    pub fn lex_min_vertex_for(&self, objective: &[Rational]) -> LpOutcome {
        fn run<I: TabInt>(
            mut t: Tableau<I>,
            objective: &[Rational],
        ) -> Checked<Option<(Vec<Rational>, bool)>> {
            let n = t.n_vars;
            if t.lex_stages(std::slice::from_ref(&objective.to_vec()))?.is_none() {
                return Ok(None);
            }
            let face = t.clone();
            let mins: Vec<_> = (0..n).map(|j| unit(n, j, 1)).collect();
            t.lex_stages(&mins)?.expect("coordinates are bounded below on x >= 0");
            let low = t.vertex();
            if !face.has_free_direction(objective)? {
                return Ok(Some((low, true)));
            }
            let mut hi = face;
            let maxs: Vec<_> = (0..n).map(|j| unit(n, j, -1)).collect();
            let unique = match hi.lex_stages(&maxs)? {
                None => false,
                Some(()) => hi.vertex() == low,
            };
            Ok(Some((low, unique)))
        }
        match self.with_backend(|t| run(t, objective), |t| run(t, objective)) {
            None => LpOutcome::infeasible(),
            Some(None) => LpOutcome::unbounded(),
            Some(Some((x, unique))) => self.optimal(x, Some(&objective.to_vec()), Some(unique)),
        }
    }
}

/// All vertices reachable from the phase-one basis by feasible pivots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexEnumeration {
    pub vertices: Vec<Vec<Rational>>,
    pub bases: usize,
    /// False when the basis budget ran out before the search finished.
    pub complete: bool,
}

impl<I: TabInt> Tableau<I> {
    fn basis_key(&self) -> Vec<usize> {
        let mut k = self.basis.clone();
        k.sort_unstable();
        k
    }

    /// Breadth-first search of the feasible-basis graph. Every pivot that
    /// keeps feasibility is followed, degenerate ones included, so all
    /// vertices of the polyhedron are visited.
    fn enumerate_vertices(self, max_bases: usize) -> Checked<VertexEnumeration> {
        use std::collections::{BTreeSet, HashSet, VecDeque};
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut vertices = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.basis_key());
        queue.push_back(self);
        while let Some(t) = queue.pop_front() {
            vertices.insert(t.vertex());
            let mut basic = vec![false; t.n_cols];
            for &b in &t.basis {
                basic[b] = true;
            }
            for c in (0..t.n_cols).filter(|&c| !basic[c]) {
                let Some(best) = t.leaving_row(c)? else {
                    continue;
                };
                for r in 0..t.rows.len() {
                    let a = &t.rows[r][c];
                    if !a.is_positive() {
                        continue;
                    }
                    let tie = r == best
                        || t.rhs(r).mul(&t.rows[best][c])? == t.rhs(best).mul(a)?;
                    if !tie {
                        continue;
                    }
                    let mut key = t.basis.clone();
                    key[r] = c;
                    key.sort_unstable();
                    if seen.contains(&key) {
                        continue;
                    }
                    if seen.len() >= max_bases {
                        return Ok(VertexEnumeration {
                            vertices: vertices.into_iter().collect(),
                            bases: seen.len(),
                            complete: false,
                        });
                    }
                    let mut next = t.clone();
                    next.pivot(r, c, None)?;
                    seen.insert(key);
                    queue.push_back(next);
                }
            }
        }
        Ok(VertexEnumeration {
            vertices: vertices.into_iter().collect(),
            bases: seen.len(),
            complete: true,
        })
    }
}

impl Solver {
    /// Vertices of the feasible region; `None` when it is empty.
    pub fn vertices(&self, max_bases: usize) -> Option<VertexEnumeration> {
        self.with_backend(
            |t| t.enumerate_vertices(max_bases),
            |t| t.enumerate_vertices(max_bases),
        )
    }
}

impl Solver {
    /// Lexicographically smallest and largest points of the optimal face of
    /// `objective`; `None` when infeasible or unbounded.
    pub fn optimal_face_extremes(&self, objective: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
        fn run<I: TabInt>(
            mut t: Tableau<I>,
            objective: &[Rational],
        ) -> Checked<Option<(Vec<Rational>, Vec<Rational>)>> {
            let n = t.n_vars;
            if t.lex_stages(std::slice::from_ref(&objective.to_vec()))?.is_none() {
                return Ok(None);
            }
            let mut hi = t.clone();
            let mins: Vec<_> = (0..n).map(|j| unit(n, j, 1)).collect();
            t.lex_stages(&mins)?.expect("coordinates are bounded below on x >= 0");
            let maxs: Vec<_> = (0..n).map(|j| unit(n, j, -1)).collect();
            Ok(hi.lex_stages(&maxs)?.map(|()| (t.vertex(), hi.vertex())))
        }
        self.with_backend(|t| run(t, objective), |t| run(t, objective)).flatten()
    }
}

fn phase_one<I: TabInt>(p: &LpProblem) -> Checked<Option<Tableau<I>>> {
    let mut t = Tableau::<I>::build(p)?;
    Ok(t.phase_one()?.then_some(t))
}

/// Minimize the problem's objective.
pub fn solve(p: &LpProblem) -> LpOutcome {
    Solver::new(p).minimize_lex(std::slice::from_ref(&p.objective().to_vec()))
}

/// Minimize the objective, then pick the lexicographically smallest optimal
/// point `(x_1, ..., x_n)`; `unique` reports whether the optimum was a
/// single point before that refinement.
pub fn lex_min_vertex(p: &LpProblem) -> LpOutcome {
    Solver::new(p).lex_min_vertex_for(p.objective())
}

/// Tableau dump of the phase-one result, for debugging.
pub fn dump_phase_one(p: &LpProblem) -> String {
    match Tableau::<BigInt>::build(p) {
        Ok(mut t) => {
            let feasible = t.phase_one().expect("no overflow");
            format!("feasible: {feasible}\n{t}")
        }
        Err(_) => unreachable!("BigInt does not overflow"),
    }
}
