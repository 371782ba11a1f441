//! C-finite sequences: guessing constant-coefficient recurrences from data,
//! converting them to rational generating functions, Hadamard products and
//! shift-operator annihilators.
//!
//! Recurrences use the convention
//! `a(n) + c_1 a(n-1) + ... + c_L a(n-L) = 0`, so the generating function
//! denominator is `1 + c_1 x + ... + c_L x^L`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Poly, RatFunc, Rational, Series};

/// Extra terms, beyond `2 * max_order`, that a guess must be given.
pub const GUESS_MARGIN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CFiniteError {
    #[error("need at least {need} terms for this order bound, got {have}")]
    InsufficientData { need: usize, have: usize },
    #[error("annihilator of degree {degree} needs more than {have} data points")]
    WindowTooShort { degree: usize, have: usize },
    #[error("invalid recurrence: {0}")]
    Invalid(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A sequence given by `offset` leading zeros, then `initials`, then the
/// recurrence with `coeffs` for every later index.
///
/// `initials.len() >= order`; extra initial terms encode a transient (a
/// numerator of degree at least the denominator's).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFiniteRec {
    coeffs: Vec<Rational>,
    initials: Vec<Rational>,
    offset: usize,
}

impl CFiniteRec {
    pub fn new(
        coeffs: Vec<Rational>,
        initials: Vec<Rational>,
        offset: usize,
    ) -> Result<Self, CFiniteError> {
        if coeffs.last().is_some_and(Zero::is_zero) {
            return Err(CFiniteError::Invalid(
                "trailing coefficient c_L must be nonzero",
            ));
        }
        if initials.len() < coeffs.len() {
            return Err(CFiniteError::Invalid("fewer initial terms than the order"));
        }
        Ok(CFiniteRec {
            coeffs,
            initials,
            offset,
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn initials(&self) -> &[Rational] {
        &self.initials
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// `1 + c_1 x + ... + c_L x^L`.
    pub fn characteristic_denominator(&self) -> Poly {
        let mut c = vec![Rational::one()];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c)
    }

    /// Terms `0..len` of the sequence.
    pub fn terms(&self, len: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.offset.min(len)];
        let mut body: Vec<Rational> = Vec::with_capacity(len.saturating_sub(self.offset));
        while out.len() + body.len() < len {
            let m = body.len();
            let next = if m < self.initials.len() {
                self.initials[m].clone()
            } else {
                let mut acc = Rational::zero();
                for (j, c) in self.coeffs.iter().enumerate() {
                    acc -= c * &body[m - 1 - j];
                }
                acc
            };
            body.push(next);
        }
        out.extend(body);
        out
    }

    /// The generating function `x^offset * P(x) / Q(x)`, reduced.
    pub fn to_ratfunc(&self) -> RatFunc {
        let q = self.characteristic_denominator();
        let head = Poly::new(self.initials.clone());
        let p = (&q * &head)
            .truncate(self.initials.len())
            .shift(self.offset);
        RatFunc::new(p, q).expect("denominator has constant term 1")
    }
}

/// Minimal shift-register synthesis over Q (Berlekamp–Massey).
///
/// Returns the connection polynomial `1 + c_1 x + ... ` (possibly with
/// trailing zeros up to the register length) and the register length `L`:
/// the least `L` such that `a(n) + sum c_j a(n-j) = 0` for all `L <= n < len`.
fn berlekamp_massey(seq: &[Rational]) -> (Vec<Rational>, usize) {
    let mut conn = vec![Rational::one()];
    let mut prev = vec![Rational::one()];
    let mut len = 0usize;
    let mut gap = 1usize;
    let mut prev_disc = Rational::one();
    for n in 0..seq.len() {
        let mut disc = seq[n].clone();
        for i in 1..=len.min(conn.len() - 1) {
            disc += &conn[i] * &seq[n - i];
        }
        if disc.is_zero() {
            gap += 1;
            continue;
        }
        let factor = &disc / &prev_disc;
        let mut next = conn.clone();
        if next.len() < prev.len() + gap {
            next.resize(prev.len() + gap, Rational::zero());
        }
        for (i, b) in prev.iter().enumerate() {
            next[i + gap] -= &factor * b;
        }
        if 2 * len <= n {
            prev = core::mem::replace(&mut conn, next);
            len = n + 1 - len;
            prev_disc = disc;
            gap = 1;
        } else {
            conn = next;
            gap += 1;
        }
    }
    conn.resize(len + 1, Rational::zero());
    (conn, len)
}

/// Finds the minimal-order C-finite recurrence of order at most `max_order`
/// reproducing every supplied term, or `None` when there is none.
///
/// At least `2 * max_order + GUESS_MARGIN` terms are required. Leading zeros
/// are stripped into the offset first. A fit is accepted only if at least one
/// term beyond the `2L` fitting window remains to confirm it.
pub fn guess_recurrence(
    terms: &[Rational],
    max_order: usize,
) -> Result<Option<CFiniteRec>, CFiniteError> {
    let need = 2 * max_order + GUESS_MARGIN;
    if terms.len() < need {
        return Err(CFiniteError::InsufficientData {
            need,
            have: terms.len(),
        });
    }
    let Some(offset) = terms.iter().position(|t| !t.is_zero()) else {
        return Ok(Some(CFiniteRec {
            coeffs: Vec::new(),
            initials: Vec::new(),
            offset: 0,
        }));
    };
    let data = &terms[offset..];
    let (conn, len) = berlekamp_massey(data);
    if len > max_order || data.len() <= 2 * len {
        return Ok(None);
    }
    let mut coeffs: Vec<Rational> = conn[1..].to_vec();
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    // The recurrence holds from index `len`; shrink the initial segment to the
    // first index from which it holds throughout.
    let holds_from = |start: usize| {
        (start..data.len()).all(|m| {
            let mut acc = data[m].clone();
            for (j, c) in coeffs.iter().enumerate() {
                acc += c * &data[m - 1 - j];
            }
            acc.is_zero()
        })
    };
    let mut start = len.max(coeffs.len());
    while start > coeffs.len() && holds_from(start - 1) {
        start -= 1;
    }
    Ok(Some(CFiniteRec {
        coeffs,
        initials: data[..start].to_vec(),
        offset,
    }))
}

/// Generating function of the sequence `rec` describes.
pub fn rec_to_ratfunc(rec: &CFiniteRec) -> RatFunc {
    rec.to_ratfunc()
}

/// Guesses the rational generating function of the term-wise product `a * b`
/// with denominator degree bounded by `degree_bound`.
pub fn hadamard_guess(
    a: &Series,
    b: &Series,
    degree_bound: usize,
) -> Result<Option<RatFunc>, CFiniteError> {
    let product = a.hadamard(b);
    Ok(guess_recurrence(product.coeffs(), degree_bound)?.map(|r| r.to_ratfunc()))
}

/// `(1 - g) / (1 - x)`: generating function of `1 - sum_{i<=k} [x^i] g`.
pub fn partial_sum_complement(g: &RatFunc) -> Result<RatFunc, AlgebraError> {
    if g.den().coeff(0).is_zero() {
        return Err(AlgebraError::Pole(Rational::zero()));
    }
    (RatFunc::one() - g).checked_div(&RatFunc::from_poly(Poly::from_i64s(&[1, -1])))
}

/// Polynomial in a shift operator (`N` or `S`), ascending powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOpPoly(Poly);

impl ShiftOpPoly {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, CFiniteError> {
        Self::from_poly(Poly::new(coeffs))
    }

    pub fn from_poly(p: Poly) -> Result<Self, CFiniteError> {
        if p.is_zero() {
            return Err(CFiniteError::Invalid("shift operator must be nonzero"));
        }
        Ok(ShiftOpPoly(p))
    }

    /// `E - 1`.
    pub fn difference() -> Self {
        ShiftOpPoly(Poly::from_i64s(&[-1, 1]))
    }

    /// `lead * E - constant`.
    pub fn linear(lead: Rational, constant: Rational) -> Self {
        ShiftOpPoly(Poly::new(vec![-constant, lead]))
    }

    pub fn degree(&self) -> usize {
        self.0.degree().expect("nonzero")
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.0.coeffs()
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn compose(&self, other: &ShiftOpPoly) -> Self {
        ShiftOpPoly(&self.0 * &other.0)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(ShiftOpPoly(Poly::one()), |acc, _| acc.compose(self))
    }
}

impl core::ops::Mul for ShiftOpPoly {
    type Output = ShiftOpPoly;
    fn mul(self, rhs: ShiftOpPoly) -> ShiftOpPoly {
        self.compose(&rhs)
    }
}

/// Residuals `r(n) = sum_j op_j * data(n + j)` for every `n` the window allows.
pub fn apply_shift_annihilator(
    op: &ShiftOpPoly,
    data: &[Rational],
) -> Result<Vec<Rational>, CFiniteError> {
    let d = op.degree();
    if data.len() <= d {
        return Err(CFiniteError::WindowTooShort {
            degree: d,
            have: data.len(),
        });
    }
    Ok((0..data.len() - d)
        .map(|n| {
            op.coeffs()
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (j, c)| acc + c * &data[n + j])
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat(a, 1)).collect()
    }

    #[test]
    fn fibonacci_is_order_two() {
        let rec = guess_recurrence(&ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]), 3)
            .unwrap()
            .unwrap();
        assert_eq!(rec.coeffs(), &ints(&[-1, -1])[..]);
        assert_eq!(rec.offset(), 0);
        let f = rec.to_ratfunc();
        assert_eq!(f.den(), &Poly::from_i64s(&[1, -1, -1]));
        assert_eq!(
            f.series(5).unwrap().coeffs(),
            &ints(&[1, 1, 2, 3, 5, 8])[..]
        );
    }

    #[test]
    fn constant_sequence_is_order_one() {
        let rec = guess_recurrence(&ints(&[7; 7]), 1).unwrap().unwrap();
        assert_eq!(rec.coeffs(), &ints(&[-1])[..]);
    }

    #[test]
    fn insufficient_data_is_an_error() {
        assert_eq!(
            guess_recurrence(&ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55]), 3),
            Err(CFiniteError::InsufficientData { need: 11, have: 10 })
        );
    }

    #[test]
    fn geometric_rec_gives_reduced_gf() {
        // a(n) - q a(n-1) = 0 from n = 2, a(0) = 0, a(1) = p, p = q = 1/2
        let rec = CFiniteRec::new(vec![rat(-1, 2)], vec![rat(0, 1), rat(1, 2)], 0).unwrap();
        let expected = RatFunc::new(
            Poly::monomial(rat(1, 2), 1),
            Poly::new(vec![rat(1, 1), rat(-1, 2)]),
        )
        .unwrap();
        assert_eq!(rec.to_ratfunc(), expected);
        let one = CFiniteRec::new(vec![], vec![rat(1, 1)], 0).unwrap();
        assert!(one.to_ratfunc().is_one());
    }

    #[test]
    fn rejects_malformed_recurrences() {
        assert!(CFiniteRec::new(vec![rat(1, 1), rat(0, 1)], ints(&[1, 2]), 0).is_err());
        assert!(CFiniteRec::new(ints(&[1, 1]), ints(&[1]), 0).is_err());
    }

    #[test]
    fn transient_terms_are_kept_as_initials() {
        // 3, then 1, 1/2, 1/4, ...: GF 3 + x/(1 - x/2)
        let mut t = vec![rat(3, 1)];
        t.extend((0..12).map(|k| rat(1, 1 << k)));
        let rec = guess_recurrence(&t, 3).unwrap().unwrap();
        assert_eq!(rec.order(), 1);
        assert_eq!(rec.initials().len(), 2);
        assert_eq!(rec.terms(t.len()), t);
    }

    #[test]
    fn leading_zeros_become_offset() {
        let mut t = vec![rat(0, 1); 3];
        t.extend(ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
        let rec = guess_recurrence(&t, 3).unwrap().unwrap();
        assert_eq!(rec.offset(), 3);
        assert_eq!(rec.terms(t.len()), t);
        assert!(guess_recurrence(&vec![rat(0, 1); 6], 0)
            .unwrap()
            .unwrap()
            .to_ratfunc()
            .is_zero());
    }

    #[test]
    fn hadamard_of_ones_is_ones() {
        let ones = RatFunc::new(Poly::one(), Poly::from_i64s(&[1, -1])).unwrap();
        let s = ones.series(12).unwrap();
        assert_eq!(hadamard_guess(&s, &s, 1).unwrap().unwrap(), ones);
    }

    #[test]
    fn partial_sum_complement_edges() {
        assert!(partial_sum_complement(&RatFunc::one()).unwrap().is_zero());
        let ones = RatFunc::new(Poly::one(), Poly::from_i64s(&[1, -1])).unwrap();
        assert_eq!(partial_sum_complement(&RatFunc::zero()).unwrap(), ones);
        let g = RatFunc::new(
            Poly::monomial(rat(1, 2), 1),
            Poly::new(vec![rat(1, 1), rat(-1, 2)]),
        )
        .unwrap();
        let h = partial_sum_complement(&g).unwrap();
        let expected: Vec<_> = (0..8).map(|k| rat(1, 1 << k)).collect();
        assert_eq!(h.series(7).unwrap().coeffs(), &expected[..]);
    }

    #[test]
    fn annihilator_residuals() {
        let diff = ShiftOpPoly::difference();
        assert!(apply_shift_annihilator(&diff, &ints(&[4; 5]))
            .unwrap()
            .iter()
            .all(Zero::is_zero));
        // (N-1)^2 (N/2 - 1/2) on n(n+1)
        let op = diff.pow(2) * ShiftOpPoly::linear(rat(1, 2), rat(1, 2));
        let data: Vec<_> = (0..=10).map(|n| rat(n * (n + 1), 1)).collect();
        let r = apply_shift_annihilator(&op, &data).unwrap();
        assert_eq!(r.len(), 8);
        assert!(r.iter().all(Zero::is_zero));
        assert_eq!(
            apply_shift_annihilator(&op, &data[..3]),
            Err(CFiniteError::WindowTooShort { degree: 3, have: 3 })
        );
    }
}
