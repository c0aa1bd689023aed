//! Two-phase dense simplex over exact rationals, internal to the crate.
//!
//! The public face is [`crate::lp`]. Bounded variables are shifted so their
//! lower bound becomes zero, free variables are split into a difference of
//! two nonnegative parts, and inequality rows receive slack columns. Rows
//! that cannot start from a slack basis get artificial columns, which phase
//! one drives to zero. Both phases pivot with Bland's smallest-index rule:
//! the entering column is the lowest-numbered improving column and ratio
//! ties leave the row whose basic column has the lowest number. That rule
//! excludes cycling, so every run terminates, and it makes the produced
//! vertex a deterministic function of the problem.

use crate::lp::{LpOutcome, LpProblem, Relation, Solution, VarBound};
use crate::rational::Rational;
use num_traits::{One, Zero};

#[derive(Debug, Clone)]
enum VarMap {
    /// Original variable is `column + offset`.
    Shifted { col: usize, offset: Rational },
    /// Original variable is `pos - neg`.
    Split { pos: usize, neg: usize },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    /// Basic column of each row; `rows[i][basis[i]]` is one and the rest of
    /// that column is zero.
    basis: Vec<usize>,
}

enum Phase {
    Optimal,
    Unbounded,
}

/// Bases visited by each optimization phase, for the anti-cycling tests.
pub(crate) type BasisTrace = Vec<Vec<Vec<usize>>>;

pub(crate) fn run(problem: &LpProblem, mut trace: Option<&mut BasisTrace>) -> LpOutcome {
    let (mut tableau, var_map, width, art_start) = standard_form(problem);

    if art_start < width {
        let mut phase_one = vec![Rational::zero(); width];
        for cost in phase_one.iter_mut().skip(art_start) {
            *cost = -Rational::one();
        }
        let (end, infeasibility) = optimize(&mut tableau, &phase_one, trace.as_deref_mut());
        assert!(matches!(end, Phase::Optimal), "phase one is bounded by zero");
        if !infeasibility.is_zero() {
            return LpOutcome::Infeasible;
        }
        evict_artificials(&mut tableau, art_start);
        for row in &mut tableau.rows {
            row.truncate(art_start);
        }
    }

    let mut objective = vec![Rational::zero(); art_start];
    for (var, coeff) in problem.objective().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        match &var_map[var] {
            VarMap::Shifted { col, .. } => objective[*col] += coeff,
            VarMap::Split { pos, neg } => {
                objective[*pos] += coeff;
                objective[*neg] -= coeff;
            }
        }
    }

    let (end, _) = optimize(&mut tableau, &objective, trace.as_deref_mut());
    if matches!(end, Phase::Unbounded) {
        return LpOutcome::Unbounded;
    }

    let mut standard_point = vec![Rational::zero(); art_start];
    for (row, &col) in tableau.basis.iter().enumerate() {
        standard_point[col] = tableau.rhs[row].clone();
    }
    let point: Vec<Rational> = var_map
        .iter()
        .map(|vm| match vm {
            VarMap::Shifted { col, offset } => &standard_point[*col] + offset,
            VarMap::Split { pos, neg } => &standard_point[*pos] - &standard_point[*neg],
        })
        .collect();
    let value = dot(problem.objective(), &point);
    let mut basis = tableau.basis;
    basis.sort_unstable();
    LpOutcome::Optimal(Solution { value, point, basis })
}

/// Builds the standard-form tableau. Returns the tableau with an initial
/// feasible basis, the variable mapping, the total column count, and the
/// index of the first artificial column (equal to the column count when no
/// artificials were needed).
fn standard_form(problem: &LpProblem) -> (Tableau, Vec<VarMap>, usize, usize) {
    let mut var_map = Vec::with_capacity(problem.num_vars());
    let mut next_col = 0;
    for bound in problem.bounds() {
        match bound {
            VarBound::AtLeast(lb) => {
                var_map.push(VarMap::Shifted { col: next_col, offset: lb.clone() });
                next_col += 1;
            }
            VarBound::Free => {
                var_map.push(VarMap::Split { pos: next_col, neg: next_col + 1 });
                next_col += 2;
            }
        }
    }
    let structural = next_col;
    let num_slacks = problem.constraints().iter().filter(|c| c.relation != Relation::Eq).count();
    let slack_end = structural + num_slacks;

    let mut rows = Vec::with_capacity(problem.constraints().len());
    let mut rhs = Vec::with_capacity(problem.constraints().len());
    let mut slack_of_row = Vec::with_capacity(problem.constraints().len());
    let mut next_slack = structural;
    for constraint in problem.constraints() {
        let mut row = vec![Rational::zero(); slack_end];
        let mut b = constraint.rhs.clone();
        for (var, coeff) in constraint.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            match &var_map[var] {
                VarMap::Shifted { col, offset } => {
                    row[*col] += coeff;
                    if !offset.is_zero() {
                        b -= coeff * offset;
                    }
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] += coeff;
                    row[*neg] -= coeff;
                }
            }
        }
        let slack = match constraint.relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                Some(next_slack - 1)
            }
            Relation::Eq => None,
        };
        if b < Rational::zero() {
            for entry in &mut row {
                if !entry.is_zero() {
                    *entry = -entry.clone();
                }
            }
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        slack_of_row.push(slack);
    }

    // Rows whose slack survived with a +1 coefficient start basic on it;
    // the rest get an artificial column apiece.
    let mut basis = vec![usize::MAX; rows.len()];
    let mut needs_artificial = Vec::new();
    for (i, slack) in slack_of_row.iter().enumerate() {
        match slack {
            Some(col) if rows[i][*col].is_one() => basis[i] = *col,
            _ => needs_artificial.push(i),
        }
    }
    let width = slack_end + needs_artificial.len();
    for row in &mut rows {
        row.resize(width, Rational::zero());
    }
    for (offset, &i) in needs_artificial.iter().enumerate() {
        let col = slack_end + offset;
        rows[i][col] = Rational::one();
        basis[i] = col;
    }

    (Tableau { rows, rhs, basis }, var_map, width, slack_end)
}

/// Runs Bland-rule pivots until the objective row has no improving column
/// or an unbounded ray appears. Returns the end state and the final
/// objective value of the standard-form point.
fn optimize(tableau: &mut Tableau, objective: &[Rational], trace: Option<&mut BasisTrace>) -> (Phase, Rational) {
    let width = objective.len();
    let mut reduced = Vec::with_capacity(width);
    for j in 0..width {
        let mut z = -objective[j].clone();
        for (i, row) in tableau.rows.iter().enumerate() {
            let basic_cost = &objective[tableau.basis[i]];
            if !basic_cost.is_zero() && !row[j].is_zero() {
                z += basic_cost * &row[j];
            }
        }
        reduced.push(z);
    }
    let mut value = Rational::zero();
    for (i, b) in tableau.rhs.iter().enumerate() {
        let basic_cost = &objective[tableau.basis[i]];
        if !basic_cost.is_zero() {
            value += basic_cost * b;
        }
    }

    let mut phase_trace = trace.map(|t| {
        t.push(Vec::new());
        t.last_mut().expect("just pushed")
    });

    loop {
        if let Some(tr) = phase_trace.as_deref_mut() {
            let mut snapshot = tableau.basis.clone();
            snapshot.sort_unstable();
            tr.push(snapshot);
        }

        let entering = match (0..width).find(|&j| reduced[j] < Rational::zero()) {
            Some(j) => j,
            None => return (Phase::Optimal, value),
        };

        let mut leaving: Option<(usize, Rational)> = None;
        for (i, row) in tableau.rows.iter().enumerate() {
            if row[entering] <= Rational::zero() {
                continue;
            }
            let ratio = &tableau.rhs[i] / &row[entering];
            let better = match &leaving {
                None => true,
                Some((best_row, best_ratio)) => {
                    ratio < *best_ratio
                        || (ratio == *best_ratio && tableau.basis[i] < tableau.basis[*best_row])
                }
            };
            if better {
                leaving = Some((i, ratio));
            }
        }
        let Some((pivot_row, _)) = leaving else {
            return (Phase::Unbounded, value);
        };

        pivot(tableau, pivot_row, entering, Some((&mut reduced, &mut value)));
    }
}

/// Pivots `col` into the basis at `row`, optionally carrying the reduced
/// cost row and objective value along.
fn pivot(
    tableau: &mut Tableau,
    row: usize,
    col: usize,
    cost_row: Option<(&mut Vec<Rational>, &mut Rational)>,
) {
    let pivot_element = tableau.rows[row][col].clone();
    assert!(!pivot_element.is_zero(), "pivot on zero element");
    if !pivot_element.is_one() {
        for entry in &mut tableau.rows[row] {
            if !entry.is_zero() {
                *entry /= &pivot_element;
            }
        }
        tableau.rhs[row] /= &pivot_element;
    }

    let pivot_row_data = tableau.rows[row].clone();
    let pivot_rhs = tableau.rhs[row].clone();
    for i in 0..tableau.rows.len() {
        if i == row || tableau.rows[i][col].is_zero() {
            continue;
        }
        let factor = std::mem::replace(&mut tableau.rows[i][col], Rational::zero());
        for (j, entry) in tableau.rows[i].iter_mut().enumerate() {
            if j != col && !pivot_row_data[j].is_zero() {
                *entry -= &factor * &pivot_row_data[j];
            }
        }
        if !pivot_rhs.is_zero() {
            tableau.rhs[i] -= &factor * &pivot_rhs;
        }
    }
    if let Some((reduced, value)) = cost_row {
        let factor = std::mem::replace(&mut reduced[col], Rational::zero());
        if !factor.is_zero() {
            for (j, entry) in reduced.iter_mut().enumerate() {
                if j != col && !pivot_row_data[j].is_zero() {
                    *entry -= &factor * &pivot_row_data[j];
                }
            }
            if !pivot_rhs.is_zero() {
                *value -= &factor * &pivot_rhs;
            }
        }
    }
    tableau.basis[row] = col;
}

/// After a feasible phase one, removes artificial columns from the basis.
/// Rows that cannot trade their artificial for a real column are redundant
/// and get dropped.
fn evict_artificials(tableau: &mut Tableau, art_start: usize) {
    let mut drop_rows = Vec::new();
    for i in 0..tableau.rows.len() {
        if tableau.basis[i] < art_start {
            continue;
        }
        debug_assert!(tableau.rhs[i].is_zero(), "basic artificial at nonzero level");
        match (0..art_start).find(|&j| !tableau.rows[i][j].is_zero()) {
            Some(j) => pivot(tableau, i, j, None),
            None => drop_rows.push(i),
        }
    }
    for &i in drop_rows.iter().rev() {
        tableau.rows.remove(i);
        tableau.rhs.remove(i);
        tableau.basis.remove(i);
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut total = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            total += x * y;
        }
    }
    total
}

/// Test-only entry that records the bases each phase visits.
#[cfg(test)]
pub(crate) fn run_traced(problem: &LpProblem) -> (LpOutcome, BasisTrace) {
    let mut trace = BasisTrace::new();
    let outcome = run(problem, Some(&mut trace));
    (outcome, trace)
}
