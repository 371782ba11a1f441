//! Shift-operator annihilators of moment sequences, in `n` (operator `N`) or
//! in `s` (operator `S`), plus the product identity that the moment system
//! inherits from `G_n G_{n-2} = q x G_n G_{n-1} + p x G_{n-1} G_{n-2}`.

use alloc::vec::Vec;

use num_traits::{One, Pow, Zero};

use super::moments::{moment_table, straight_moments};
use super::solve::solve_gf;
use super::spec::GameSpec;
use crate::algebra::{binomial, Poly, Rational};
use crate::cfinite::{apply_shift_annihilator, CFiniteError, ShiftOpPoly};

/// Which index the sequence runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// `n = s, s + 1, ...` with the start fixed.
    N { s: usize },
    /// `s = 0, 1, ...` with the target fixed.
    S { n: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    pub data: Vec<Rational>,
    pub residuals: Vec<Rational>,
}

impl AnnihilatorReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(Zero::is_zero)
    }
}

/// `E[X^r]` along `axis` for `window` consecutive indices.
pub fn moment_sequence(
    spec: &GameSpec,
    axis: Axis,
    r: usize,
    window: usize,
) -> Result<Vec<Rational>, CFiniteError> {
    match axis {
        Axis::S { n } => {
            if window > n + 1 {
                return Err(CFiniteError::WindowTooShort {
                    degree: window,
                    have: n + 1,
                });
            }
            let table = solve_gf(spec, n)?;
            Ok(moment_table(&table, r)?
                .into_iter()
                .take(window)
                .map(|m| m.straight[r].clone())
                .collect())
        }
        Axis::N { s } => (s..s + window)
            .map(|n| {
                let table = solve_gf(spec, n)?;
                Ok(straight_moments(table.get(s), r)?[r].clone())
            })
            .collect(),
    }
}

/// Applies `op` to the `r`-th moment sequence along `axis` on a window of
/// `window` values.
pub fn annihilator_check(
    op: &ShiftOpPoly,
    axis: Axis,
    spec: &GameSpec,
    r: usize,
    window: usize,
) -> Result<AnnihilatorReport, CFiniteError> {
    if window <= op.degree() {
        return Err(CFiniteError::WindowTooShort {
            degree: op.degree(),
            have: window,
        });
    }
    let data = moment_sequence(spec, axis, r, window)?;
    let residuals = apply_shift_annihilator(op, &data)?;
    Ok(AnnihilatorReport { data, residuals })
}

fn op(coeffs: &[Rational]) -> ShiftOpPoly {
    ShiftOpPoly::new(coeffs.to_vec()).expect("nonzero operator")
}

/// `(E - 1)^2 (p E^u - q (E^{u-1} + ... + 1))`, the mean annihilator of the
/// `{1, -u}` game in either index.
pub fn mean_annihilator(p: &Rational, u: u32) -> ShiftOpPoly {
    let q = Rational::one() - p;
    let mut tail: Vec<Rational> = (0..u).map(|_| -q.clone()).collect();
    tail.push(p.clone());
    ShiftOpPoly::difference().pow(2) * op(&tail)
}

/// `(N-1)^3 (pN + q) (p^2 N^2 - (p+1) q N + q^2) (p N^2 - q N - q)^2`: second
/// moments of `{1, -2}` in `n`.
pub fn second_moment_annihilator_n_one_minus_two(p: &Rational) -> ShiftOpPoly {
    let q = Rational::one() - p;
    let quad = op(&[-q.clone(), -q.clone(), p.clone()]);
    ShiftOpPoly::difference().pow(3)
        * op(&[q.clone(), p.clone()])
        * op(&[&q * &q, -(p + Rational::one()) * &q, p * p])
        * quad.pow(2)
}

/// `(S-1)^3 (p S^2 - q S - q)^2`: second moments of `{1, -2}` in `s`.
pub fn second_moment_annihilator_s_one_minus_two(p: &Rational) -> ShiftOpPoly {
    let q = Rational::one() - p;
    ShiftOpPoly::difference().pow(3) * op(&[-q.clone(), -q.clone(), p.clone()]).pow(2)
}

/// The annihilator as a polynomial in the shift variable, for display.
pub fn as_poly(op: &ShiftOpPoly) -> &Poly {
    op.as_poly()
}

/// For the `{1, -u}` game with `u = 1`: the identity
/// `D(r, n, n-2) = sum_k binom(r, k) [q D(k, n, n-1) + p D(k, n-1, n-2)]`,
/// `D(r, a, b) = sum_i binom(r, i) E[X_{a,s}^i] E[X_{b,s}^{r-i}]`.
/// Returns the orders `r <= r_max` at which it fails (expected: none).
pub fn product_identity_failures(
    p: &Rational,
    n: usize,
    s: usize,
    r_max: usize,
) -> Result<Vec<usize>, CFiniteError> {
    assert!(n >= 2 && s + 2 <= n);
    let q = Rational::one() - p;
    let spec = GameSpec::plus_minus_one(p.clone()).expect("0 < p < 1");
    let m = |target: usize| -> Result<Vec<Rational>, CFiniteError> {
        Ok(straight_moments(solve_gf(&spec, target)?.get(s), r_max)?)
    };
    let (top, mid, low) = (m(n)?, m(n - 1)?, m(n - 2)?);
    let c = |r: usize, i: usize| Rational::from_integer(binomial(r as u64, i as i64).into());
    let delta = |r: usize, a: &[Rational], b: &[Rational]| {
        (0..=r).fold(Rational::zero(), |acc, i| acc + c(r, i) * &a[i] * &b[r - i])
    };
    Ok((0..=r_max)
        .filter(|&r| {
            let lhs = delta(r, &top, &low);
            let rhs = (0..=r).fold(Rational::zero(), |acc, k| {
                acc + c(r, k) * (&q * delta(k, &top, &mid) + p * delta(k, &mid, &low))
            });
            lhs != rhs
        })
        .collect())
}

/// `p^k` helper for building operators with symbolic-looking coefficients.
pub fn power(p: &Rational, k: u32) -> Rational {
    p.clone().pow(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn mean_annihilator_for_u_two_at_two_thirds() {
        // (S-1)^3 (2S+1) up to the constant factor 1/3
        let expected = ShiftOpPoly::difference().pow(3) * op(&[rat(1, 3), rat(2, 3)]);
        assert_eq!(mean_annihilator(&rat(2, 3), 2), expected);
    }

    #[test]
    fn biased_mean_annihilated_in_n() {
        let p = rat(1, 3);
        let spec = GameSpec::plus_minus_one(p.clone()).unwrap();
        let rep =
            annihilator_check(&mean_annihilator(&p, 1), Axis::N { s: 0 }, &spec, 1, 13).unwrap();
        assert!(rep.all_zero(), "{rep:?}");
    }

    #[test]
    fn difference_on_constant_data() {
        let spec = GameSpec::fair();
        let rep =
            annihilator_check(&ShiftOpPoly::difference(), Axis::N { s: 0 }, &spec, 0, 5).unwrap();
        assert!(rep.all_zero());
    }

    #[test]
    fn short_window_rejected() {
        let spec = GameSpec::fair();
        let op = mean_annihilator(&rat(1, 2), 1);
        assert!(matches!(
            annihilator_check(&op, Axis::S { n: 5 }, &spec, 1, 3),
            Err(CFiniteError::WindowTooShort { .. })
        ));
    }

    #[test]
    fn product_identity_holds() {
        for p in [rat(1, 2), rat(1, 3)] {
            assert!(product_identity_failures(&p, 5, 1, 4).unwrap().is_empty());
        }
    }
}
