//! Exact comparisons involving square roots of nonnegative rationals.

use num_traits::Signed;

use crate::rational::Rational;

/// `x <= c * sqrt(a)` for `c, a >= 0`.
pub fn le_sqrt(x: &Rational, c: &Rational, a: &Rational) -> bool {
    if !x.is_positive() {
        return true;
    }
    x * x <= c * c * a
}

/// `x <= c1 * sqrt(a) + c2 * sqrt(b)` for nonnegative `c1, c2, a, b`.
pub fn le_sqrt_sum(x: &Rational, c1: &Rational, a: &Rational, c2: &Rational, b: &Rational) -> bool {
    if !x.is_positive() {
        return true;
    }
    let y = x * x - c1 * c1 * a - c2 * c2 * b;
    if !y.is_positive() {
        return true;
    }
    let rhs = Rational::from_integer(4.into()) * c1 * c1 * c2 * c2 * a * b;
    y.clone() * y <= rhs
}

/// `sqrt(a) == q` for `a >= 0`.
pub fn sqrt_eq(a: &Rational, q: &Rational) -> bool {
    !q.is_negative() && q * q == *a
}
