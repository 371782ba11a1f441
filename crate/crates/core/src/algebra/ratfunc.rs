use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::forward_owned;
use super::{AlgebraError, Poly, Rational, Series};

/// Reduced rational function `num / den` over Q.
///
/// Invariants: `den != 0`, `gcd(num, den) = 1`, and the lowest-order nonzero
/// coefficient of `den` is 1. Zero is `0 / 1`. The form is canonical, so
/// derived equality is equality of rational functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = Poly::gcd(&num, &den)?;
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let low = den.low_order().expect("nonzero denominator");
        let scale = den.coeffs()[low].recip();
        if !scale.is_one() {
            num = num.scale(&scale);
            den = den.scale(&scale);
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Cross-multiplication test `a.num * b.den == b.num * a.den`; does not rely
    /// on normalization, so it also compares unreduced display forms.
    pub fn cross_eq(a_num: &Poly, a_den: &Poly, b: &RatFunc) -> bool {
        a_num * &b.den == &b.num * a_den
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, AlgebraError> {
        if rhs.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `x^k * self`.
    pub fn mul_x_pow(&self, k: usize) -> Self {
        self * &RatFunc::from_poly(Poly::monomial(Rational::one(), k))
    }

    /// `self / x`.
    pub fn div_x(&self) -> Self {
        RatFunc::new(self.num.clone(), self.den.shift(1)).expect("nonzero denominator")
    }

    /// `self(x^k)`.
    pub fn compose_power(&self, k: usize) -> Self {
        RatFunc::new(self.num.compose_power(k), self.den.compose_power(k))
            .expect("nonzero denominator")
    }

    /// Formal derivative by the quotient rule.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    /// `x * f'(x)`, the operator whose powers at `x = 1` give moments.
    pub fn x_derivative(&self) -> Self {
        self.derivative().mul_x_pow(1)
    }

    pub fn eval(&self, x0: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(x0);
        if d.is_zero() {
            return Err(AlgebraError::Pole(x0.clone()));
        }
        Ok(self.num.eval(x0) / d)
    }

    /// Maclaurin coefficients `0..=order`, computed with the linear recurrence
    /// read off the denominator.
    pub fn series(&self, order: usize) -> Result<Series, AlgebraError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(AlgebraError::ZeroConstantTerm);
        }
        // den(0) is the lowest nonzero coefficient, hence 1 after normalization.
        debug_assert!(d0.is_one());
        let den = self.den.coeffs();
        let mut out: alloc::vec::Vec<Rational> = alloc::vec::Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut a = self.num.coeff(k);
            for j in 1..den.len().min(k + 1) {
                a -= &den[j] * &out[k - j];
            }
            out.push(a);
        }
        Ok(Series::new(out))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `(num)/(den)`, or just the numerator when the denominator is 1.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

forward_owned!(RatFunc, Add::add, Sub::sub, Mul::mul);

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}
