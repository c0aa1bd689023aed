//! Exact linear programming with a vertex guarantee.
//!
//! A problem is always a maximization over finitely many rational variables,
//! each either bounded below or free, subject to `<=` / `==` / `>=` rows.
//! [`solve`] runs a two-phase dense simplex over [`Rational`] entries using
//! Bland's smallest-index pivot rule, so it terminates on every input and is
//! fully deterministic: the same problem yields the same optimal point,
//! which is always a basic feasible solution (a vertex of the feasible
//! region in standard form). Callers that need a vertex of a particular
//! optimal face can pin the objective with [`maximize_over_face`].
//!
//! Sizes here are tiny (a handful of variables and rows), so the solver
//! favours clarity over sparse-matrix machinery.

use crate::rational::Rational;
use crate::simplex;
use num_traits::Zero;

/// Direction of a single linear constraint row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One constraint row `coeffs . x  (relation)  rhs`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Domain of a single variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarBound {
    /// `x >= bound`.
    AtLeast(Rational),
    /// Unrestricted in sign.
    Free,
}

/// A linear maximization problem.
#[derive(Debug, Clone)]
pub struct LpProblem {
    num_vars: usize,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    bounds: Vec<VarBound>,
}

impl LpProblem {
    /// New problem with a zero objective and every variable bounded `>= 0`.
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![VarBound::AtLeast(Rational::zero()); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[VarBound] {
        &self.bounds
    }

    /// Sets the maximization objective. Panics if the length is wrong.
    pub fn set_objective(&mut self, coeffs: Vec<Rational>) {
        assert_eq!(coeffs.len(), self.num_vars, "objective length");
        self.objective = coeffs;
    }

    /// Marks one variable as free (unrestricted in sign).
    pub fn set_free(&mut self, var: usize) {
        assert!(var < self.num_vars, "variable index");
        self.bounds[var] = VarBound::Free;
    }

    /// Sets an explicit lower bound for one variable.
    pub fn set_lower_bound(&mut self, var: usize, bound: Rational) {
        assert!(var < self.num_vars, "variable index");
        self.bounds[var] = VarBound::AtLeast(bound);
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Le, rhs);
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Ge, rhs);
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Eq, rhs);
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars {
            return Err(LpError::ObjectiveLength { expected: self.num_vars, found: self.objective.len() });
        }
        if self.bounds.len() != self.num_vars {
            return Err(LpError::BoundsLength { expected: self.num_vars, found: self.bounds.len() });
        }
        for (index, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != self.num_vars {
                return Err(LpError::ConstraintLength { index, expected: self.num_vars, found: c.coeffs.len() });
            }
        }
        Ok(())
    }
}

/// Structural problem defects detected before solving.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("objective has {found} coefficients, problem has {expected} variables")]
    ObjectiveLength { expected: usize, found: usize },
    #[error("bounds list has {found} entries, problem has {expected} variables")]
    BoundsLength { expected: usize, found: usize },
    #[error("constraint {index} has {found} coefficients, problem has {expected} variables")]
    ConstraintLength { index: usize, expected: usize, found: usize },
}

/// An optimal basic feasible solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Optimal objective value.
    pub value: Rational,
    /// Optimal point in the original variables.
    pub point: Vec<Rational>,
    /// Basic columns of the internal standard form, sorted. The labels are
    /// solver-internal but stable, so equal problems report equal bases.
    pub basis: Vec<usize>,
}

/// Result of a solve on a structurally valid problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    /// The solution, for callers that have already established feasibility
    /// and boundedness. Panics otherwise.
    pub fn expect_optimal(self, context: &str) -> Solution {
        match self {
            LpOutcome::Optimal(s) => s,
            other => panic!("{context}: expected optimal solution, got {other:?}"),
        }
    }
}

/// Solves the problem exactly. See the module docs for guarantees.
pub fn solve(problem: &LpProblem) -> Result<LpOutcome, LpError> {
    problem.validate()?;
    Ok(simplex::run(problem, None))
}

/// Re-optimizes a second objective over the optimal face of a solved
/// problem.
///
/// `optimal_value` must be the optimal value of `problem` as returned by
/// [`solve`]; the face `{x feasible : objective(x) = optimal_value}` is then
/// nonempty and the returned point is one of its vertices. Passing an
/// unattainable value yields `Infeasible`.
pub fn maximize_over_face(
    problem: &LpProblem,
    optimal_value: &Rational,
    new_objective: &[Rational],
) -> Result<LpOutcome, LpError> {
    let mut pinned = problem.clone();
    pinned.add_eq(problem.objective.to_vec(), optimal_value.clone());
    pinned.set_objective(new_objective.to_vec());
    solve(&pinned)
}
