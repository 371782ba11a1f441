//! Closed forms for turn-count moments, checked against the exact
//! generating-function moments.

use alloc::vec::Vec;

use num_traits::{One, Pow, Zero};

use super::moments::moment_table;
use super::solve::solve_gf;
use super::spec::GameSpec;
use crate::algebra::{rat, AlgebraError, Rational};

fn r(v: usize) -> Rational {
    Rational::from_integer(v.into())
}

/// Fair `{1, -1}`: `E[X] = n(n+1) - s(s+1)`.
pub fn fair_mean(n: usize, s: usize) -> Rational {
    r(n * (n + 1)) - r(s * (s + 1))
}

/// Fair `{1, -1}`: `E[X^2]`.
pub fn fair_second_moment(n: usize, s: usize) -> Rational {
    let (n, s) = (r(n), r(s));
    let base = (&n - &s) * (&n + &s + rat(1, 1));
    base * (rat(5, 1) * &n * &n + rat(5, 1) * &n - &s * &s - &s - rat(1, 1)) / rat(3, 1)
}

/// Fair `{1, -1}`: `E[X^3]` in its published form, whose linear-in-`n` term
/// reads `-(14s^2 + 14s - 23) n`. This disagrees with the exact moments; see
/// [`fair_third_moment_corrected`].
pub fn fair_third_moment(n: usize, s: usize) -> Rational {
    third_moment_with_linear_constant(n, s, rat(-23, 1))
}

/// Fair `{1, -1}`: `E[X^3]` with the linear term `-(14s^2 + 14s + 23) n`, the
/// form implied by the variance and third central moment.
pub fn fair_third_moment_corrected(n: usize, s: usize) -> Rational {
    third_moment_with_linear_constant(n, s, rat(23, 1))
}

fn third_moment_with_linear_constant(n: usize, s: usize, linear: Rational) -> Rational {
    let (n, s) = (r(n), r(s));
    let base = (&n - &s) * (&n + &s + rat(1, 1));
    let s2 = &s * &s;
    let n2 = &n * &n;
    let poly = rat(61, 1) * &n2 * &n2 + rat(122, 1) * &n2 * &n
        - (rat(14, 1) * &s2 + rat(14, 1) * &s - rat(38, 1)) * &n2
        - (rat(14, 1) * &s2 + rat(14, 1) * &s + linear) * &n
        + &s2 * &s2
        + rat(2, 1) * &s2 * &s
        + rat(8, 1) * &s2
        + rat(7, 1) * &s
        - rat(3, 1);
    base * poly / rat(15, 1)
}

/// Fair `{1, -1}`: `Var[X]`.
pub fn fair_variance(n: usize, s: usize) -> Rational {
    let (n, s) = (r(n), r(s));
    let base = (&n - &s) * (&n + &s + rat(1, 1));
    base * (rat(2, 1) * &n * &n + rat(2, 1) * &n + rat(2, 1) * &s * &s + rat(2, 1) * &s - rat(1, 1))
        / rat(3, 1)
}

/// Fair `{1, -1}`: `E[(X - mu)^3]`.
pub fn fair_third_central(n: usize, s: usize) -> Rational {
    let (n, s) = (r(n), r(s));
    let base = (&n - &s) * (&n + &s + rat(1, 1));
    let s2 = &s * &s;
    let n2 = &n * &n;
    let poly = rat(16, 1) * &n2 * &n2
        + rat(32, 1) * &n2 * &n
        + rat(8, 1) * &n2 * (rat(2, 1) * &s2 + rat(2, 1) * &s + rat(1, 1))
        + rat(8, 1) * &n * (rat(2, 1) * &s2 + rat(2, 1) * &s - rat(1, 1))
        + rat(16, 1) * &s2 * &s2
        + rat(32, 1) * &s2 * &s
        + rat(8, 1) * &s2
        - rat(8, 1) * &s
        - rat(3, 1);
    base * poly / rat(15, 1)
}

/// Biased `{1, -1}` mean, `p != 1/2`:
/// `((2p-1) n + q (q/p)^n - [(2p-1) s + q (q/p)^s]) / (2p-1)^2`.
pub fn biased_mean(p: &Rational, n: usize, s: usize) -> Rational {
    let q = Rational::one() - p;
    let drift = rat(2, 1) * p - rat(1, 1);
    let ratio = &q / p;
    let part = |m: usize| &drift * r(m) + &q * ratio.clone().pow(m as u32);
    (part(n) - part(s)) / (&drift * &drift)
}

/// `C_u(m) = 2 C_u(m-1) + 1 - C_u(m-u-1)`, zero for `m <= 0`. Returns `m = 0..=n`.
pub fn c_u_sequence(u: usize, n: usize) -> Vec<Rational> {
    let mut c: Vec<Rational> = Vec::with_capacity(n + 1);
    c.push(Rational::zero());
    for m in 1..=n {
        let back = if m > u {
            c[m - u - 1].clone()
        } else {
            Rational::zero()
        };
        c.push(rat(2, 1) * &c[m - 1] + rat(1, 1) - back);
    }
    c
}

/// Fair `{1, -u}` mean: `2 (C_u(n) - C_u(s))`.
pub fn fair_one_minus_u_mean(u: usize, n: usize, s: usize) -> Rational {
    let c = c_u_sequence(u, n.max(s));
    rat(2, 1) * (&c[n] - &c[s])
}

/// `{1, -2}` with `p = 2/3` mean:
/// `n(3n+5)/6 - (1/9)(-1/2)^n - [s(3s+5)/6 - (1/9)(-1/2)^s]`.
pub fn one_minus_two_mean(n: usize, s: usize) -> Rational {
    let part = |m: usize| r(m * (3 * m + 5)) / rat(6, 1) - rat(1, 9) * rat(-1, 2).pow(m as u32);
    part(n) - part(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    /// Fair `{1, -1}` mean.
    FairMean,
    /// Fair `{1, -1}` second and third straight moments (published third-moment
    /// polynomial).
    FairHigherMoments,
    /// As [`ClosedForm::FairHigherMoments`] with the corrected third moment.
    FairHigherMomentsCorrected,
    /// Fair `{1, -1}` variance and third central moment.
    FairCentralMoments,
    /// Biased `{1, -1}` mean at the given `p`.
    BiasedMean(Rational),
    /// Fair `{1, -u}` mean through `C_u`.
    FairOneMinusU(u32),
    /// `{1, -2}`, `p = 2/3` mean.
    OneMinusTwoMean,
}

impl ClosedForm {
    fn spec(&self) -> GameSpec {
        match self {
            ClosedForm::BiasedMean(p) => GameSpec::plus_minus_one(p.clone()).expect("0 < p < 1"),
            ClosedForm::FairOneMinusU(u) => GameSpec::one_minus(rat(1, 2), *u).expect("valid"),
            ClosedForm::OneMinusTwoMean => GameSpec::one_minus(rat(2, 3), 2).expect("valid"),
            _ => GameSpec::fair(),
        }
    }

    /// `(moment order, central?, closed-form value)` triples to compare at `(n, s)`.
    fn expectations(&self, n: usize, s: usize) -> Vec<(usize, bool, Rational)> {
        match self {
            ClosedForm::FairMean => alloc::vec![(1, false, fair_mean(n, s))],
            ClosedForm::FairHigherMoments => alloc::vec![
                (2, false, fair_second_moment(n, s)),
                (3, false, fair_third_moment(n, s)),
            ],
            ClosedForm::FairHigherMomentsCorrected => alloc::vec![
                (2, false, fair_second_moment(n, s)),
                (3, false, fair_third_moment_corrected(n, s)),
            ],
            ClosedForm::FairCentralMoments => alloc::vec![
                (2, true, fair_variance(n, s)),
                (3, true, fair_third_central(n, s)),
            ],
            ClosedForm::BiasedMean(p) => alloc::vec![(1, false, biased_mean(p, n, s))],
            ClosedForm::FairOneMinusU(u) => {
                alloc::vec![(1, false, fair_one_minus_u_mean(*u as usize, n, s))]
            }
            ClosedForm::OneMinusTwoMean => alloc::vec![(1, false, one_minus_two_mean(n, s))],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormMismatch {
    pub n: usize,
    pub s: usize,
    pub order: usize,
    pub central: bool,
    pub closed_form: Rational,
    pub computed: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub which: ClosedForm,
    pub cases: usize,
    pub mismatches: Vec<ClosedFormMismatch>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the closed form with generating-function moments for every
/// `0 <= s <= n <= n_max`. Mismatches are reported, not raised.
pub fn closed_form_check(
    which: ClosedForm,
    n_max: usize,
) -> Result<ClosedFormReport, AlgebraError> {
    if let ClosedForm::BiasedMean(p) = &which {
        assert!(p != &rat(1, 2), "biased closed form divides by 2p - 1");
    }
    let spec = which.spec();
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for n in 0..=n_max {
        let table = solve_gf(&spec, n)?;
        for report in moment_table(&table, 3)? {
            for (order, central, closed) in which.expectations(n, report.s) {
                cases += 1;
                let computed = if central {
                    &report.central[order]
                } else {
                    &report.straight[order]
                };
                if computed != &closed {
                    mismatches.push(ClosedFormMismatch {
                        n,
                        s: report.s,
                        order,
                        central,
                        closed_form: closed,
                        computed: computed.clone(),
                    });
                }
            }
        }
    }
    Ok(ClosedFormReport {
        which,
        cases,
        mismatches,
    })
}
