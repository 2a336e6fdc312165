//! Interpolation by polynomials on a monomial ladder.

use crate::error::{EmaError, Result};
use crate::foundations::{FieldElement as F, Matrix};

use super::laurent::LaurentFunction;
use super::point::Point;

fn monomials_of_degree(nvars: usize, d: i64) -> Vec<Vec<i64>> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Returns f with f(x) = v for each assignment. Monomials t^a (a ≥ 0) are
/// taken by total degree, then lexicographically descending, keeping those
/// that raise the rank of the evaluation matrix; the square system on the
/// kept monomials is then solved.
pub fn interpolate(assignments: &[(Point, F)]) -> Result<LaurentFunction> {
    let Some((first, _)) = assignments.first() else {
        return Err(EmaError::Input("nothing to interpolate".into()));
    };
    let nvars = first.dim();
    for i in 0..assignments.len() {
        for j in (i + 1)..assignments.len() {
            if assignments[i].0 == assignments[j].0 {
                return Err(EmaError::DuplicatePoint(assignments[i].0.to_string()));
            }
        }
    }
    let k = assignments.len();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    let mut columns: Vec<Vec<F>> = Vec::new();
    let mut degree = 0;
    while chosen.len() < k {
        for mono in monomials_of_degree(nvars, degree) {
            if chosen.len() == k {
                break;
            }
            let col: Vec<F> = assignments
                .iter()
                .map(|(p, _)| LaurentFunction::monomial(nvars, mono.clone(), F::one()).eval(p))
                .collect();
            let mut trial = columns.clone();
            trial.push(col.clone());
            if Matrix::from_columns(k, &trial).rank() == trial.len() {
                columns.push(col);
                chosen.push(mono);
            }
        }
        degree += 1;
    }
    let m = Matrix::from_columns(k, &columns);
    let rhs: Vec<F> = assignments.iter().map(|(_, v)| v.clone()).collect();
    let coeffs = m.solve(&rhs).vector().expect("square system of full rank");
    let mut f = LaurentFunction::zero(nvars);
    for (mono, c) in chosen.into_iter().zip(coeffs) {
        f = f.add(&LaurentFunction::monomial(nvars, mono, c));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_on_a_line() {
        let f = interpolate(&[(Point::from_ints(&[1]), F::zero()), (Point::from_ints(&[-1]), F::int(-1))])
            .unwrap();
        let expect = LaurentFunction::var(1, 0)
            .sub(&LaurentFunction::one(1))
            .scale(&F::rat(1, 2));
        assert_eq!(f, expect);
    }

    #[test]
    fn constant_and_duplicates() {
        let f = interpolate(&[(Point::from_ints(&[1]), F::int(5))]).unwrap();
        assert_eq!(f, LaurentFunction::constant(1, F::int(5)));
        let dup = interpolate(&[(Point::from_ints(&[1]), F::one()), (Point::from_ints(&[1]), F::zero())]);
        assert!(matches!(dup, Err(EmaError::DuplicatePoint(_))));
    }

    #[test]
    fn two_variables() {
        let f = interpolate(&[
            (Point::from_ints(&[1, 1]), F::one()),
            (Point::from_ints(&[1, -1]), F::zero()),
        ])
        .unwrap();
        let expect = LaurentFunction::one(2).add(&LaurentFunction::var(2, 1)).scale(&F::rat(1, 2));
        assert_eq!(f, expect);
    }
}
