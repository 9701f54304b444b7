use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.lhs(x) >= self.rhs
    }

    pub fn is_tight_at(&self, x: &[Rational]) -> bool {
        self.lhs(x) == self.rhs
    }
}

/// Minimize `objective · x` subject to `≥` rows over nonnegative variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    n_vars: usize,
    rows: Vec<Constraint>,
    objective: Vec<Rational>,
}

impl LpProblem {
    pub fn new(n_vars: usize) -> LpProblem {
        LpProblem {
            n_vars,
            rows: Vec::new(),
            objective: vec![Rational::zero(); n_vars],
        }
    }

    fn check_len(&self, coeffs: &[Rational]) -> Result<()> {
        if coeffs.len() != self.n_vars {
            return Err(Error::Inconsistency(format!(
                "row has {} coefficients, problem has {} variables",
                coeffs.len(),
                self.n_vars
            )));
        }
        Ok(())
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.check_len(&coeffs)?;
        self.rows.push(Constraint { coeffs, rhs });
        Ok(())
    }

    /// Stored as the negated `≥` row.
    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.add_ge(coeffs.into_iter().map(|c| -c).collect(), -rhs)
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.add_ge(coeffs.clone(), rhs.clone())?;
        self.add_le(coeffs, rhs)
    }

    pub fn add_ge_int(&mut self, coeffs: &[i64], rhs: i64) -> Result<()> {
        self.add_ge(coeffs.iter().map(|&c| rat(c)).collect(), rat(rhs))
    }

    pub fn set_objective(&mut self, objective: Vec<Rational>) -> Result<()> {
        self.check_len(&objective)?;
        self.objective = objective;
        Ok(())
    }

    pub fn set_objective_int(&mut self, objective: &[i64]) -> Result<()> {
        self.set_objective(objective.iter().map(|&c| rat(c)).collect())
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn value_at(&self, x: &[Rational]) -> Rational {
        self.objective
            .iter()
            .zip(x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    pub fn is_feasible_point(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars
            && x.iter().all(|v| !v.is_negative())
            && self.rows.iter().all(|r| r.is_satisfied_by(x))
    }
}

impl fmt::Display for LpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "min {}", linear_form(&self.objective))?;
        for r in &self.rows {
            writeln!(f, "  {} >= {}", linear_form(&r.coeffs), r.rhs)?;
        }
        write!(f, "  x >= 0")
    }
}

fn linear_form(coeffs: &[Rational]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&a.to_string());
        }
        out.push_str(&format!("x{}", j + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: Status,
    pub vertex: Option<Vec<Rational>>,
    pub value: Option<Rational>,
    /// From `lex_min_vertex`: whether the optimal face was a single point.
    pub unique: Option<bool>,
}

impl LpOutcome {
    pub(crate) fn infeasible() -> Self {
        LpOutcome {
            status: Status::Infeasible,
            vertex: None,
            value: None,
            unique: None,
        }
    }

    pub(crate) fn unbounded() -> Self {
        LpOutcome {
            status: Status::Unbounded,
            vertex: None,
            value: None,
            unique: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}
