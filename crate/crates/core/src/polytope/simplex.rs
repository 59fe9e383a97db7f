//! Phase-one simplex over a dense tableau, shared by the exact-rational and
//! the floating-point membership modes.
//!
//! Finds `x ≥ 0` with `A x = b` (`b ≥ 0`) by minimising the sum of one
//! artificial variable per row. Entering columns follow Dantzig's rule until
//! a run of degenerate pivots, after which Bland's rule takes over for good.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Scalar field the tableau is built over.
pub(crate) trait LpScalar: Clone + PartialOrd + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    /// Strictly positive beyond the pivot tolerance.
    fn is_pos(&self) -> bool;
    /// Strictly negative beyond the pivot tolerance.
    fn is_neg(&self) -> bool;
    /// Whether a phase-one objective value counts as zero.
    fn is_feasible_residual(&self) -> bool;
    fn sub_mul(&mut self, a: &Self, b: &Self);
    fn div_by(&mut self, d: &Self);
    fn neg(&self) -> Self;
}

/// Pivot tolerance of the floating mode.
const FLOAT_PIVOT_EPS: f64 = 1e-11;
/// Phase-one objective accepted as feasible in floating mode.
pub(crate) const FLOAT_FEASIBILITY_TOL: f64 = 1e-8;

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_PIVOT_EPS
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_PIVOT_EPS
    }
    fn is_feasible_residual(&self) -> bool {
        self.abs() <= FLOAT_FEASIBILITY_TOL
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn div_by(&mut self, d: &Self) {
        *self /= d;
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_feasible_residual(&self) -> bool {
        self.is_zero()
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }
    fn div_by(&mut self, d: &Self) {
        *self /= d;
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
}

/// Exact rational value of a finite `f64`.
pub(crate) fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

pub(crate) fn rational_to_f64(x: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

const DEGENERATE_STREAK_FOR_BLAND: usize = 50;

/// Solves `A x = b, x ≥ 0` for `A` given column by column (each of length `b.len()`).
///
/// Returns `None` when the system is infeasible.
pub(crate) fn find_feasible_point<T: LpScalar>(columns: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let m = b.len();
    let n = columns.len();
    let width = n + m;

    // Row-major tableau; row m is the phase-one reduced-cost row.
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    let mut rhs: Vec<T> = Vec::with_capacity(m + 1);
    for i in 0..m {
        assert!(!b[i].is_neg(), "phase one needs b >= 0");
        let mut row = Vec::with_capacity(width);
        row.extend(columns.iter().map(|c| c[i].clone()));
        row.extend((0..m).map(|a| if a == i { T::one() } else { T::zero() }));
        rows.push(row);
        rhs.push(b[i].clone());
    }
    let mut cost = vec![T::zero(); width];
    let mut neg_objective = T::zero();
    for i in 0..m {
        for j in 0..n {
            cost[j].sub_mul(&rows[i][j], &T::one());
        }
        neg_objective.sub_mul(&rhs[i], &T::one());
    }
    rows.push(cost);
    rhs.push(neg_objective);

    let mut basis: Vec<usize> = (n..width).collect();
    let mut degenerate_streak = 0usize;
    let mut bland = false;

    loop {
        let cost = &rows[m];
        let entering = if bland {
            (0..width).find(|&j| cost[j].is_neg())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..width {
                if cost[j].is_neg() && best.is_none_or(|q| cost[j] < cost[q]) {
                    best = Some(j);
                }
            }
            best
        };
        let Some(q) = entering else { break };

        let mut leaving: Option<usize> = None;
        let mut best_ratio: Option<T> = None;
        for i in 0..m {
            if !rows[i][q].is_pos() {
                continue;
            }
            let mut ratio = rhs[i].clone();
            ratio.div_by(&rows[i][q]);
            let better = match &best_ratio {
                None => true,
                Some(r) => ratio < *r || (ratio == *r && basis[i] < basis[leaving.unwrap()]),
            };
            if better {
                best_ratio = Some(ratio);
                leaving = Some(i);
            }
        }
        // The phase-one objective is bounded below by zero, so a column with
        // negative reduced cost always has a blocking row.
        let r = leaving.expect("phase one is bounded");
        let ratio = best_ratio.unwrap();
        if ratio.is_pos() {
            degenerate_streak = 0;
        } else {
            degenerate_streak += 1;
            if degenerate_streak > DEGENERATE_STREAK_FOR_BLAND {
                bland = true;
            }
        }
        pivot(&mut rows, &mut rhs, r, q);
        basis[r] = q;
    }

    if !rhs[m].neg().is_feasible_residual() {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = rhs[i].clone();
        }
    }
    Some(x)
}

fn pivot<T: LpScalar>(rows: &mut [Vec<T>], rhs: &mut [T], r: usize, q: usize) {
    let p = rows[r][q].clone();
    for v in rows[r].iter_mut() {
        v.div_by(&p);
    }
    rhs[r].div_by(&p);
    let (pivot_row, pivot_rhs) = (rows[r].clone(), rhs[r].clone());
    for (i, row) in rows.iter_mut().enumerate() {
        if i == r {
            continue;
        }
        let factor = row[q].clone();
        if factor == T::zero() {
            continue;
        }
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            v.sub_mul(&factor, pv);
        }
        rhs[i].sub_mul(&factor, &pivot_rhs);
    }
}
