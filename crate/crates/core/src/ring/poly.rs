use std::fmt;

use crate::ideal::Ideal;

use super::{fmt_poly_in, Elem, FiniteRing};

/// A polynomial over a finite ring, coefficients low degree first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: FiniteRing,
    coeffs: Vec<Elem>,
}

impl Polynomial {
    pub fn new(ring: &FiniteRing, mut coeffs: Vec<Elem>) -> Polynomial {
        while coeffs.last() == Some(&Elem::ZERO) {
            coeffs.pop();
        }
        Polynomial { ring: ring.clone(), coeffs }
    }

    /// Integer coefficients, each mapped through `n * 1`.
    pub fn from_ints(ring: &FiniteRing, coeffs: &[i64]) -> Polynomial {
        Polynomial::new(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    /// `X^degree`.
    pub fn monomial(ring: &FiniteRing, degree: usize) -> Polynomial {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = ring.one();
        Polynomial::new(ring, coeffs)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Polynomial, i: usize| p.coeffs.get(i).copied().unwrap_or(Elem::ZERO);
        let coeffs = (0..n).map(|i| self.ring.add(get(self, i), get(other, i))).collect();
        Polynomial::new(&self.ring, coeffs)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::new(&self.ring, Vec::new());
        }
        let r = &self.ring;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = r.add(out[i + j], r.mul(a, b));
            }
        }
        Polynomial::new(r, out)
    }

    /// Evaluates at a ring element by Horner's rule.
    pub fn eval(&self, x: Elem) -> Elem {
        let r = &self.ring;
        self.coeffs.iter().rev().fold(r.zero(), |acc, &c| r.add(r.mul(acc, x), c))
    }

    /// The content ideal: the ideal generated by the coefficients.
    pub fn content(&self) -> Ideal {
        Ideal::generated(&self.ring, &self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // over a ring that already has an X, the polynomial variable is Y
        let var = if self.ring.indeterminate().is_some() { "Y" } else { "X" };
        f.write_str(&fmt_poly_in(&self.ring, &self.coeffs, var))
    }
}
