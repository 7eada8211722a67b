//! Dense exact-rational simplex for the small feasibility problems behind
//! the axiom checks. Phase 1 drives artificial variables out, phase 2
//! minimizes the caller's objective. Bland's rule is used for both entering
//! and leaving choices, so the method terminates on every input.

use num::rational::BigRational;
use num::{One, Signed, Zero};

#[derive(Debug)]
pub(crate) enum Lp {
    Infeasible,
    Optimal(Vec<BigRational>),
}

/// Minimize `c . x` subject to `A x = b`, `x >= 0`, in exact arithmetic.
///
/// `c` must be componentwise nonnegative; every objective used here is
/// either zero (pure feasibility) or a coordinate sum, so the problem is
/// never unbounded.
pub(crate) fn minimize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> Lp {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert!(c.iter().all(|x| !x.is_negative()));

    if m == 0 {
        return Lp::Optimal(vec![BigRational::zero(); n]);
    }

    // Tableau columns: 0..n structural, n..n+m artificial, last = rhs.
    // Rows are sign-normalized so the rhs is nonnegative and the artificial
    // block starts as an identity basis.
    let cols = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let flip = b[i].is_negative();
        let mut r: Vec<BigRational> = Vec::with_capacity(cols);
        for x in row {
            r.push(if flip { -x.clone() } else { x.clone() });
        }
        for j in 0..m {
            r.push(if j == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        r.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the artificial sum. Reduced costs relative to the
    // artificial basis are the negated column sums; the last cell holds -z.
    let mut cost = vec![BigRational::zero(); cols];
    for j in 0..n {
        let mut s = BigRational::zero();
        for row in &t {
            s += &row[j];
        }
        cost[j] = -s;
    }
    let mut z0 = BigRational::zero();
    for row in &t {
        z0 += &row[cols - 1];
    }
    cost[cols - 1] = -z0;

    pivot_to_optimum(&mut t, &mut cost, &mut basis, n + m);
    if !cost[cols - 1].is_zero() {
        return Lp::Infeasible;
    }

    // Phase 2: rebuild reduced costs from `c`; artificial columns may stay
    // basic at zero but are never allowed to enter again.
    let mut cost2 = vec![BigRational::zero(); cols];
    cost2[..n].clone_from_slice(c);
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n && !c[bv].is_zero() {
            let f = c[bv].clone();
            for j in 0..cols {
                let d = &t[i][j] * &f;
                cost2[j] -= d;
            }
        }
    }
    pivot_to_optimum(&mut t, &mut cost2, &mut basis, n);

    let mut x = vec![BigRational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][cols - 1].clone();
        }
    }
    Lp::Optimal(x)
}

/// Run Bland pivots until no entering column below `allowed` has negative
/// reduced cost.
fn pivot_to_optimum(
    t: &mut [Vec<BigRational>],
    cost: &mut [BigRational],
    basis: &mut [usize],
    allowed: usize,
) {
    let cols = cost.len();
    loop {
        let Some(e) = (0..allowed).find(|&j| cost[j].is_negative()) else {
            return;
        };
        // Ratio test; ties resolved toward the smallest basis variable.
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..t.len() {
            if t[i][e].is_positive() {
                let ratio = &t[i][cols - 1] / &t[i][e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            unreachable!("LP with nonnegative objective cannot be unbounded");
        };

        let piv = t[r][e].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[e].is_zero() {
                let f = row[e].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(p * &f);
                }
            }
        }
        if !cost[e].is_zero() {
            let f = cost[e].clone();
            for (x, p) in cost.iter_mut().zip(&pivot_row) {
                *x = &*x - &(p * &f);
            }
        }
        basis[r] = e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn solves_tiny_feasible_system() {
        // x1 + x2 = 2, x1 - x2 = 0 -> x = (1, 1); minimize x1 + x2.
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        let b = vec![q(2), q(0)];
        let c = vec![q(1), q(1)];
        match minimize(&a, &b, &c) {
            Lp::Optimal(x) => assert_eq!(x, vec![q(1), q(1)]),
            Lp::Infeasible => panic!("feasible system reported infeasible"),
        }
    }

    #[test]
    fn detects_infeasible_system() {
        // x1 = 1 and x1 = 2 with x1 >= 0.
        let a = vec![vec![q(1)], vec![q(1)]];
        let b = vec![q(1), q(2)];
        let c = vec![q(0)];
        assert!(matches!(minimize(&a, &b, &c), Lp::Infeasible));
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        // -x1 = -3 -> x1 = 3.
        let a = vec![vec![q(-1)]];
        let b = vec![q(-3)];
        let c = vec![q(1)];
        match minimize(&a, &b, &c) {
            Lp::Optimal(x) => assert_eq!(x, vec![q(3)]),
            Lp::Infeasible => panic!("feasible system reported infeasible"),
        }
    }

    #[test]
    fn no_structural_columns_means_infeasible_unless_zero_rhs() {
        let a = vec![vec![], vec![]];
        let b = vec![q(1), q(0)];
        assert!(matches!(minimize(&a, &b, &[]), Lp::Infeasible));
        let a2: Vec<Vec<BigRational>> = vec![vec![]];
        assert!(matches!(minimize(&a2, &[q(0)], &[]), Lp::Optimal(_)));
    }

    #[test]
    fn minimization_picks_the_cheap_vertex() {
        // x1 + x2 - s = 1, minimize x1 + 2 x2 -> x = (1, 0).
        let a = vec![vec![q(1), q(1), q(-1)]];
        let b = vec![q(1)];
        let c = vec![q(1), q(2), q(0)];
        match minimize(&a, &b, &c) {
            Lp::Optimal(x) => assert_eq!(x, vec![q(1), q(0), q(0)]),
            Lp::Infeasible => panic!("feasible system reported infeasible"),
        }
    }
}
