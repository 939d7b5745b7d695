//! The Monster fusion law over the eigenvalues 1, 0, 1/4, 1/32.

use crate::linalg::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigen {
    One,
    Zero,
    Quarter,
    ThirtySecond,
}

impl Eigen {
    pub const ALL: [Eigen; 4] = [Eigen::One, Eigen::Zero, Eigen::Quarter, Eigen::ThirtySecond];

    pub fn value(self) -> Rational {
        match self {
            Eigen::One => Rational::ONE,
            Eigen::Zero => Rational::ZERO,
            Eigen::Quarter => q(1, 4),
            Eigen::ThirtySecond => q(1, 32),
        }
    }

    pub fn from_value(r: &Rational) -> Option<Eigen> {
        Eigen::ALL.into_iter().find(|e| e.value() == *r)
    }

    /// Position in `ALL`.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The Z2-grading: only the 1/32 part is odd.
    pub fn is_odd(self) -> bool {
        self == Eigen::ThirtySecond
    }
}

/// Eigenvalues allowed in the product of a `x`-eigenvector and a
/// `y`-eigenvector.
pub fn fuse(x: Eigen, y: Eigen) -> &'static [Eigen] {
    use Eigen::*;
    match (x, y) {
        (ThirtySecond, ThirtySecond) => &[One, Zero, Quarter],
        (ThirtySecond, _) | (_, ThirtySecond) => &[ThirtySecond],
        (Quarter, Quarter) => &[One, Zero],
        (Quarter, _) | (_, Quarter) => &[Quarter],
        (One, One) => &[One],
        (Zero, Zero) => &[Zero],
        (One, Zero) | (Zero, One) => &[],
    }
}

/// Coefficients `c` of the polynomial `sum c_k t^k` that vanishes on every
/// eigenvalue except `target` and equals 1 there.
pub fn projection_poly(target: Eigen, among: &[Eigen]) -> Vec<Rational> {
    let mut poly = vec![Rational::ONE];
    let t = target.value();
    for &e in among {
        if e == target {
            continue;
        }
        let v = e.value();
        let denom = (&t - &v).recip();
        // poly *= (x - v) / (t - v)
        let mut next = vec![Rational::ZERO; poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += &(c * &denom);
            next[k] -= &(&(c * &v) * &denom);
        }
        poly = next;
    }
    poly
}
