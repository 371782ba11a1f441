use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::Rational;

/// Truncated power series: coefficients `0..=order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Panics on an empty coefficient list; a series always has term 0.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        Series { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        Series {
            coeffs: alloc::vec![Rational::zero(); order + 1],
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Truncation order `K` (index of the last stored term).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    /// Term-wise product, truncated to the shorter input.
    pub fn hadamard(&self, other: &Series) -> Series {
        Series::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }

    /// `c(k) = 1 - sum_{i<=k} a(i)`: survival probabilities for a first-passage
    /// distribution `a`.
    pub fn survival(&self) -> Series {
        let mut acc = Rational::one();
        Series::new(
            self.coeffs
                .iter()
                .map(|a| {
                    acc -= a;
                    acc.clone()
                })
                .collect(),
        )
    }

    /// Shift right by one, inserting `head` as term 0 and dropping the last term.
    pub fn delay(&self, head: Rational) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(head);
        coeffs.extend(self.coeffs[..self.coeffs.len() - 1].iter().cloned());
        Series::new(coeffs)
    }

    pub fn sum(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, c| acc + c)
    }
}
